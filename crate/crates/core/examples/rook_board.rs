//! Rook placements on the three-dimensional triangle board, compared
//! with central factorial numbers.

use special_numbers::families::central_factorial;
use special_numbers::oracles::{count_rook_placements, count_with_rule, AttackRule, TriangleBoard};
use special_numbers::Rational;

fn main() -> Result<(), special_numbers::Error> {
    for m in 1..=4u32 {
        let row: Vec<String> = (0..=m)
            .map(|k| {
                let rooks = count_rook_placements(m, k)?;
                let t = central_factorial(m + 1, m + 1 - k);
                Ok(format!(
                    "{rooks}{}",
                    if t == Rational::from(rooks.clone()) {
                        ""
                    } else {
                        "!"
                    }
                ))
            })
            .collect::<Result<_, special_numbers::Error>>()?;
        println!("m={m}: {}", row.join(" "));
    }

    let board = TriangleBoard::new(2)?;
    println!("\nm=2 board has {} cells", board.cells().len());
    for rule in [AttackRule::AnyCoordinate, AttackRule::TwoCoordinates] {
        println!(
            "  {rule:?}: placements of 2 rooks = {}",
            count_with_rule(&board, 2, rule)
        );
    }
    Ok(())
}
