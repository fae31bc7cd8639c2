//! Brute-force enumerators used as ground truth for the combinatorial
//! readings of `S2`, `T` and `B`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::binomial;
use crate::{Error, Result};

pub const ROOK_BUDGET: u32 = 5;
pub const PARTITION_BUDGET: u32 = 12;
pub const SUBSET_FUNCTION_BUDGET: u32 = 8;

/// A cell `(x, y, z)` of the three-dimensional triangle board.
pub type Cell = (u32, u32, u32);

/// Size-`m` triangle board: cells `(x, y, z)` with `1 <= x, y <= z <= m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleBoard {
    m: u32,
    cells: Vec<Cell>,
}

impl TriangleBoard {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter(
                "board size must be positive".into(),
            ));
        }
        let mut cells = Vec::new();
        for x in 1..=m {
            for y in 1..=m {
                for z in x.max(y)..=m {
                    cells.push((x, y, z));
                }
            }
        }
        let expected: u32 = (1..=m).map(|z| z * z).sum();
        assert_eq!(
            cells.len(),
            expected as usize,
            "triangle board has Σ z² cells"
        );
        Ok(TriangleBoard { m, cells })
    }

    pub fn size(&self) -> u32 {
        self.m
    }

    /// Cells in lexicographic order.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }
}

/// When two rooks attack each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttackRule {
    /// Sharing any one coordinate (the rule matching central factorial numbers).
    AnyCoordinate,
    /// Sharing at least two coordinates, i.e. lying on a common axis line.
    TwoCoordinates,
}

impl AttackRule {
    pub fn attacks(self, a: Cell, b: Cell) -> bool {
        let shared = u8::from(a.0 == b.0) + u8::from(a.1 == b.1) + u8::from(a.2 == b.2);
        match self {
            AttackRule::AnyCoordinate => shared >= 1,
            AttackRule::TwoCoordinates => shared >= 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Placement {
    pub rooks: Vec<Cell>,
}

impl Placement {
    pub fn is_non_attacking(&self, rule: AttackRule) -> bool {
        self.rooks
            .iter()
            .enumerate()
            .all(|(i, &a)| self.rooks[i + 1..].iter().all(|&b| !rule.attacks(a, b)))
    }
}

/// Number of non-attacking placements of `k` rooks on the size-`m` board.
pub fn count_rook_placements(m: u32, k: u32) -> Result<BigInt> {
    count_rook_placements_with_budget(m, k, ROOK_BUDGET)
}

/// [`count_rook_placements`] with an explicit board-size budget.
pub fn count_rook_placements_with_budget(m: u32, k: u32, max_m: u32) -> Result<BigInt> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "board size must be positive".into(),
        ));
    }
    if m > max_m {
        return Err(Error::BudgetExceeded(format!(
            "rook board size {m} exceeds {max_m}"
        )));
    }
    if k > m {
        return Err(Error::InvalidParameter(format!(
            "k = {k} exceeds board size m = {m}"
        )));
    }
    let board = TriangleBoard::new(m)?;
    Ok(BigInt::from(count_with_rule(
        &board,
        k,
        AttackRule::AnyCoordinate,
    )))
}

/// Backtracking count over cells in lexicographic order.
pub fn count_with_rule(board: &TriangleBoard, k: u32, rule: AttackRule) -> u64 {
    fn go(
        cells: &[Cell],
        start: usize,
        left: u32,
        placed: &mut Vec<Cell>,
        rule: AttackRule,
    ) -> u64 {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for i in start..cells.len() {
            let c = cells[i];
            if placed.iter().any(|&p| rule.attacks(p, c)) {
                continue;
            }
            placed.push(c);
            total += go(cells, i + 1, left - 1, placed, rule);
            placed.pop();
        }
        total
    }
    go(
        board.cells(),
        0,
        k,
        &mut Vec::with_capacity(k as usize),
        rule,
    )
}

/// Number of partitions of an `n`-set into exactly `v` non-empty blocks.
pub fn count_partitions(n: u32, v: u32) -> Result<BigInt> {
    let counts = partition_counts_by_blocks(n)?;
    Ok(counts.get(v as usize).cloned().unwrap_or_else(BigInt::zero))
}

/// `counts[b]` = number of partitions of an `n`-set with `b` blocks, by
/// enumerating every restricted growth string of length `n`.
pub fn partition_counts_by_blocks(n: u32) -> Result<Vec<BigInt>> {
    if n > PARTITION_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "partition enumeration for n = {n} exceeds {PARTITION_BUDGET}"
        )));
    }
    fn go(pos: u32, n: u32, blocks: u32, counts: &mut [u64]) {
        if pos == n {
            counts[blocks as usize] += 1;
            return;
        }
        // a[pos] ranges over existing blocks 0..blocks, or opens block `blocks`.
        for label in 0..=blocks {
            go(pos + 1, n, blocks.max(label + 1), counts);
        }
    }
    let mut counts = vec![0u64; n as usize + 1];
    go(0, n, 0, &mut counts);
    Ok(counts.into_iter().map(BigInt::from).collect())
}

/// Bell numbers `Bell(0..=n)` by `Bell(i+1) = Σ C(i,j) Bell(j)`.
pub fn bell_numbers(n: u32) -> Vec<BigInt> {
    let mut bell = vec![BigInt::one()];
    for i in 0..n {
        let next = (0..=i)
            .map(|j| binomial(i as u64, j as i64) * &bell[j as usize])
            .sum();
        bell.push(next);
    }
    bell
}

/// Number of pairs `(S, f)` with `S ⊆ {1..k}` and `f: {1..n} → S`, by
/// enumerating every subset and every function into it.
pub fn count_subset_functions(n: u32, k: u32) -> Result<BigInt> {
    if n > SUBSET_FUNCTION_BUDGET || k > SUBSET_FUNCTION_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "subset-function enumeration for n = {n}, k = {k} exceeds {SUBSET_FUNCTION_BUDGET}"
        )));
    }
    let mut total: u64 = 0;
    let mut digits = vec![0u32; n as usize];
    for mask in 0u32..(1 << k) {
        let size = mask.count_ones();
        if size == 0 {
            total += u64::from(n == 0);
            continue;
        }
        // Odometer over all size^n functions.
        digits.iter_mut().for_each(|d| *d = 0);
        loop {
            total += 1;
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if digits[i] < size {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
    }
    Ok(BigInt::from(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;
    use crate::families::{b_num, central_factorial, stirling2_lambda};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn board_construction() {
        for m in 1..=6 {
            let board = TriangleBoard::new(m).unwrap();
            assert_eq!(
                board.cells().len() as u32,
                (1..=m).map(|z| z * z).sum::<u32>()
            );
            assert!(board.cells().windows(2).all(|w| w[0] < w[1]));
        }
        assert!(TriangleBoard::new(0).is_err());
    }

    #[test]
    fn rook_examples() {
        assert_eq!(count_rook_placements(1, 1).unwrap(), big(1));
        assert_eq!(count_rook_placements(2, 1).unwrap(), big(5));
        assert_eq!(count_rook_placements(2, 2).unwrap(), big(1));
        assert_eq!(central_factorial(3, 2), Rational::from(5));
        assert_eq!(central_factorial(3, 1), Rational::from(1));
        assert!(matches!(
            count_rook_placements(6, 1),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(matches!(
            count_rook_placements(2, 3),
            Err(Error::InvalidParameter(_))
        ));
        assert_eq!(count_rook_placements_with_budget(6, 6, 6).unwrap(), big(1));
    }

    #[test]
    fn attack_rule_is_the_one_matching_central_factorials() {
        let board = TriangleBoard::new(2).unwrap();
        assert_eq!(count_with_rule(&board, 2, AttackRule::AnyCoordinate), 1);
        assert_eq!(count_with_rule(&board, 2, AttackRule::TwoCoordinates), 5);
        assert_ne!(Rational::from(5), central_factorial(3, 1));
    }

    #[test]
    fn placements_agree_with_central_factorials() {
        for m in 1..=4u32 {
            for k in 0..=m {
                let count = count_rook_placements(m, k).unwrap();
                assert_eq!(
                    Rational::from(count),
                    central_factorial(m + 1, m + 1 - k),
                    "m={m} k={k}"
                );
            }
        }
    }

    #[test]
    fn placement_validity() {
        let p = Placement {
            rooks: vec![(1, 1, 1), (2, 2, 2)],
        };
        assert!(p.is_non_attacking(AttackRule::AnyCoordinate));
        let p = Placement {
            rooks: vec![(1, 1, 2), (2, 2, 2)],
        };
        assert!(!p.is_non_attacking(AttackRule::AnyCoordinate));
        assert!(p.is_non_attacking(AttackRule::TwoCoordinates));
    }

    #[test]
    fn partition_examples() {
        assert_eq!(count_partitions(3, 2).unwrap(), big(3));
        assert_eq!(count_partitions(4, 2).unwrap(), big(7));
        for n in 1..=10 {
            assert_eq!(count_partitions(n, 1).unwrap(), big(1));
        }
        assert_eq!(count_partitions(0, 0).unwrap(), big(1));
        assert!(matches!(
            count_partitions(13, 2),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn partitions_agree_with_stirling_and_bell() {
        let bell = bell_numbers(10);
        for n in 0..=10u32 {
            let counts = partition_counts_by_blocks(n).unwrap();
            assert_eq!(counts.iter().sum::<BigInt>(), bell[n as usize]);
            for v in 0..=n {
                assert_eq!(
                    Rational::from(counts[v as usize].clone()),
                    stirling2_lambda(n, v, &Rational::one())
                );
            }
        }
        assert_eq!(bell[10], big(115_975));
    }

    #[test]
    fn subset_function_examples() {
        assert_eq!(count_subset_functions(0, 5).unwrap(), big(32));
        assert_eq!(count_subset_functions(2, 3).unwrap(), big(24));
        assert_eq!(count_subset_functions(3, 2).unwrap(), big(10));
        assert_eq!(count_subset_functions(0, 0).unwrap(), big(1));
        assert_eq!(count_subset_functions(2, 0).unwrap(), big(0));
        assert!(matches!(
            count_subset_functions(9, 1),
            Err(Error::BudgetExceeded(_))
        ));
        for n in 0..=6 {
            for k in 0..=6 {
                assert_eq!(count_subset_functions(n, k).unwrap(), b_num(n, k));
            }
        }
    }
}
