//! Brute-force counts of set partitions and subset functions next to
//! their closed forms.

use special_numbers::families::{b_num, stirling2_lambda};
use special_numbers::oracles::{bell_numbers, count_subset_functions, partition_counts_by_blocks};
use special_numbers::Rational;

fn main() -> Result<(), special_numbers::Error> {
    let one = Rational::one();
    for n in 0..=7u32 {
        let counts = partition_counts_by_blocks(n)?;
        let closed: Vec<Rational> = (0..=n).map(|v| stirling2_lambda(n, v, &one)).collect();
        let counts: Vec<Rational> = counts.into_iter().map(Rational::from).collect();
        assert_eq!(counts, closed);
        println!(
            "n={n}: {}",
            counts
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    println!(
        "Bell: {:?}",
        bell_numbers(10)
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );

    println!("\nfunctions [n] -> subsets of [k] covering [k]:");
    for k in 0..=4u32 {
        let row: Vec<String> = (0..=5u32)
            .map(|n| {
                let brute = count_subset_functions(n, k)?;
                assert_eq!(brute, b_num(n, k));
                Ok(brute.to_string())
            })
            .collect::<Result<_, special_numbers::Error>>()?;
        println!("k={k}: {}", row.join(" "));
    }
    Ok(())
}
