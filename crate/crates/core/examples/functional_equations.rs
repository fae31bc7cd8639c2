//! Series-level checks of the generating-function equations. Prints the
//! verdicts, then both sides of the first failing equation.

use special_numbers::audit::{check_functional_equation, functional_equation_sides, registry};
use special_numbers::Rational;

fn main() -> Result<(), special_numbers::Error> {
    let order = 20;
    for id in registry()
        .into_iter()
        .filter(|id| id.identity.is_functional_equation())
    {
        let report = check_functional_equation(id, order)?;
        match &report.counterexample {
            None => println!(
                "{:<14} holds to order {order} ({} checks)",
                id.to_string(),
                report.checked
            ),
            Some(c) => println!(
                "{:<14} differs at {}: {} vs {}",
                id.to_string(),
                c.params,
                c.lhs,
                c.rhs
            ),
        }
    }

    let fe3 = "FE3".parse()?;
    let (lhs, rhs) = functional_equation_sides(fe3, 1, &Rational::one(), 6)?;
    println!("\nFE3 at k=1, left side:\n{}", lhs.dump());
    println!("right side:\n{}", rhs.dump());
    Ok(())
}
