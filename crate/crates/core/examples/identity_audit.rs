//! Runs the identity audit on the default grid and prints a one-line
//! verdict per registry entry, with the first counterexample if any.

use special_numbers::audit::{audit_all, ParamGrid};

fn main() -> Result<(), special_numbers::Error> {
    let grid = ParamGrid::default();
    println!(
        "grid: n <= {}, k <= {}, {} lambdas, series order {}",
        grid.n_max,
        grid.k_max,
        grid.lambdas.len(),
        grid.series_order
    );
    for report in audit_all(&grid)? {
        let verdict = if report.passed() { "pass" } else { "FAIL" };
        print!(
            "{:<20} {verdict} checked={:<5} skipped={}",
            report.identity.to_string(),
            report.checked,
            report.skipped
        );
        if let Some(c) = &report.counterexample {
            print!("  at {}: {} vs {}", c.params, c.lhs, c.rhs);
        }
        println!();
    }
    Ok(())
}
