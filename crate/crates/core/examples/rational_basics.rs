//! Exact rationals, binomials and factorials.

use special_numbers::{binomial, factorial, Rational};

fn main() -> Result<(), special_numbers::Error> {
    let a: Rational = "6/4".parse()?;
    let b = Rational::new(-1, 3)?;
    println!("a = {a}, b = {b}");
    println!("a + b = {}", &a + &b);
    println!("a * b = {}", &a * &b);
    println!("a / b = {}", a.checked_div(&b)?);
    println!("b^-3 = {}", b.powi(-3)?);
    println!("0^0 = {}", Rational::zero().pow(0));

    match a.checked_div(&Rational::zero()) {
        Err(e) => println!("a / 0 -> {e}"),
        Ok(q) => println!("a / 0 = {q}?"),
    }

    println!(
        "C(10, 4) = {}, C(5, -1) = {}",
        binomial(10, 4),
        binomial(5, -1)
    );
    println!("25! = {}", factorial(25));
    Ok(())
}
