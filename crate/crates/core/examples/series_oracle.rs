//! Truncated power series: Euler numbers from the reciprocal of cosh.

use special_numbers::series::exp_series;
use special_numbers::{Rational, Series};

fn main() -> Result<(), special_numbers::Error> {
    let order = 14;
    let one = Rational::one();
    let cosh = Series::add(
        &exp_series(&one, order),
        &exp_series(&-one.clone(), order),
        &Rational::new(1, 2)?,
        &Rational::new(1, 2)?,
    );
    let sech = cosh.reciprocal()?;

    let euler: Vec<String> = (0..=order)
        .map(|n| sech.egf_coeff(n).map(|c| c.to_string()))
        .collect::<Result<_, _>>()?;
    println!("Euler numbers: {}", euler.join(", "));
    println!("sech is even: {}", sech.is_even());
    println!(
        "cosh * sech == 1: {}",
        cosh.mul(&sech).agrees_with(&Series::one(order))
    );

    println!("\nraw coefficients of 2/(e^t + 1):");
    let half_sum = Series::add(
        &exp_series(&one, 5),
        &Series::one(5),
        &Rational::new(1, 2)?,
        &Rational::new(1, 2)?,
    );
    print!("{}", half_sum.reciprocal()?.dump());

    if let Err(e) = sech.egf_coeff(order + 1) {
        println!("\nasking past the truncation order: {e}");
    }
    Ok(())
}
