//! Small tables for each number family, each value computed twice:
//! once from the closed form and once from the generating function.

use special_numbers::families::{default_lambdas, gf_value};
use special_numbers::{Family, FamilySpec, Rational};

fn main() -> Result<(), special_numbers::Error> {
    let lambda = Rational::new(1, 2)?;
    let x = Rational::new(1, 2)?;
    for family in Family::ALL {
        let ks: Vec<i64> = if family.signed_index() {
            (-2..=2).collect()
        } else {
            (0..=3).collect()
        };
        println!(
            "{} (x = {}, lambda = {})",
            family.label(),
            if family.uses_x() {
                x.to_string()
            } else {
                "-".into()
            },
            if family.uses_lambda() {
                lambda.to_string()
            } else {
                "-".into()
            }
        );
        for n in 0..=5u32 {
            let mut cells = Vec::new();
            for &k in &ks {
                let spec = FamilySpec::new(family, n, k, x.clone(), lambda.clone())?;
                let closed = spec.evaluate()?;
                assert_eq!(closed, gf_value(&spec, spec.required_order())?);
                cells.push(format!("{:>10}", closed.to_string()));
            }
            println!("  n={n}: {}", cells.join(" "));
        }
    }

    println!("\nS2(4, 2; lambda) over the default lambda grid:");
    for l in default_lambdas() {
        let spec = FamilySpec::new(Family::Stirling2Lambda, 4, 2, Rational::zero(), l.clone())?;
        println!("  lambda = {:>4}: {}", l.to_string(), spec.evaluate()?);
    }
    Ok(())
}
