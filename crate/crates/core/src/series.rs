//! Truncated formal power series over [`Rational`].
//!
//! A [`Series`] of order `N` stores the coefficients of `t^0 ..= t^N`. Binary
//! operations truncate to the smaller of the two orders, so results are only
//! ever claimed where both inputs are known.

use std::fmt::Write as _;

use crate::exact::{factorial, Rational};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Builds a series from `coeffs[i] = [t^i] f`. An empty vector is treated
    /// as the order-0 zero series.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        Series { coeffs }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = c;
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series::constant(Rational::zero(), order)
    }

    pub fn one(order: usize) -> Self {
        Series::constant(Rational::one(), order)
    }

    /// Builds a series from exponential-generating-function values `a_i`, i.e.
    /// `coeffs[i] = a_i / i!`.
    pub fn from_egf(values: &[Rational]) -> Self {
        let coeffs = values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.checked_div(&Rational::from(factorial(i as u64)))
                    .expect("i! > 0")
            })
            .collect();
        Series::new(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `[t^i] f`, or zero past the truncation order.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `n! * [t^n] f`.
    pub fn egf_coeff(&self, n: usize) -> Result<Rational> {
        let c = self.coeffs.get(n).ok_or(Error::OrderExceeded {
            index: n,
            order: self.order(),
        })?;
        Ok(c * Rational::from(factorial(n as u64)))
    }

    pub fn truncate(&self, order: usize) -> Series {
        let mut coeffs: Vec<Rational> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, Rational::zero());
        Series { coeffs }
    }

    /// `cf * f + cg * g` at the smaller order.
    pub fn add(f: &Series, g: &Series, cf: &Rational, cg: &Rational) -> Series {
        let order = f.order().min(g.order());
        let coeffs = (0..=order)
            .map(|i| cf * &f.coeffs[i] + cg * &g.coeffs[i])
            .collect();
        Series { coeffs }
    }

    pub fn plus(&self, other: &Series) -> Series {
        Series::add(self, other, &Rational::one(), &Rational::one())
    }

    pub fn minus(&self, other: &Series) -> Series {
        Series::add(self, other, &Rational::one(), &-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Cauchy product at the smaller order.
    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + a * b;
            }
        }
        Series { coeffs }
    }

    /// `f^m` by repeated squaring; `f^0` is the constant 1.
    pub fn pow_int(&self, m: u32) -> Series {
        let mut result = Series::one(self.order());
        let mut base = self.clone();
        let mut m = m;
        while m > 0 {
            if m & 1 == 1 {
                result = result.mul(&base);
            }
            m >>= 1;
            if m > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse up to the same order.
    pub fn reciprocal(&self) -> Result<Series> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv_c0 = c0.recip()?;
        let order = self.order();
        let mut g: Vec<Rational> = Vec::with_capacity(order + 1);
        g.push(inv_c0.clone());
        for n in 1..=order {
            let acc: Rational = (1..=n).map(|i| &self.coeffs[i] * &g[n - i]).sum();
            g.push(-(acc * &inv_c0));
        }
        Ok(Series { coeffs: g })
    }

    /// The series of `f(a t)`: `coeffs[i] -> a^i coeffs[i]`.
    pub(crate) fn rescale(&self, a: &Rational) -> Series {
        let mut power = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c * &power;
                power = &power * a;
                out
            })
            .collect();
        Series { coeffs }
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Rational::is_zero)
    }

    /// Index of the first coefficient where the two series differ, comparing
    /// only up to the smaller order.
    pub fn first_difference(&self, other: &Series) -> Option<usize> {
        let order = self.order().min(other.order());
        (0..=order).find(|&i| self.coeffs[i] != other.coeffs[i])
    }

    /// Equality on the shared truncation.
    pub fn agrees_with(&self, other: &Series) -> bool {
        self.first_difference(other).is_none()
    }

    /// One `i: num/den` line per coefficient.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let _ = writeln!(out, "{i}: {c}");
        }
        out
    }
}

/// `e^{a t}` truncated at order `order`.
pub fn exp_series(a: &Rational, order: usize) -> Series {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = Rational::one();
    coeffs.push(term.clone());
    for i in 1..=order {
        term = (&term * a)
            .checked_div(&Rational::from(i as i64))
            .expect("i > 0");
        coeffs.push(term.clone());
    }
    Series { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn qs(v: &[&str]) -> Vec<Rational> {
        v.iter().map(|s| q(s)).collect()
    }

    #[test]
    fn exp_examples() {
        assert_eq!(
            exp_series(&q("1"), 3).coeffs(),
            qs(&["1", "1", "1/2", "1/6"]).as_slice()
        );
        assert_eq!(
            exp_series(&q("0"), 2).coeffs(),
            qs(&["1", "0", "0"]).as_slice()
        );
        assert_eq!(
            exp_series(&q("-1"), 3).coeffs(),
            qs(&["1", "-1", "1/2", "-1/6"]).as_slice()
        );
    }

    #[test]
    fn add_examples() {
        let e = exp_series(&q("1"), 4);
        let em = exp_series(&q("-1"), 4);
        let one = q("1");
        let cosh2 = Series::add(&e, &em, &one, &one);
        assert_eq!(cosh2.coeffs(), qs(&["2", "0", "1", "0", "1/12"]).as_slice());
        assert_eq!(Series::add(&e, &e, &one, &q("-1")), Series::zero(4));
        let em1 = Series::add(&e, &Series::one(4), &one, &q("-1"));
        assert_eq!(&em1.coeffs()[..3], qs(&["0", "1", "1/2"]).as_slice());
    }

    #[test]
    fn add_truncates_to_min_order() {
        let f = exp_series(&q("1"), 6);
        let g = exp_series(&q("2"), 3);
        assert_eq!(f.plus(&g).order(), 3);
    }

    #[test]
    fn mul_examples() {
        let e = exp_series(&q("1"), 6);
        let em = exp_series(&q("-1"), 6);
        assert_eq!(e.mul(&em), Series::one(6));

        // (e^t - 1)^2 = e^{2t} - 2e^t + 1: coefficients 0, 0, (4-2)/2, (8-2)/6
        let em1 = exp_series(&q("1"), 3).minus(&Series::one(3));
        assert_eq!(em1.mul(&em1).coeffs(), qs(&["0", "0", "1", "1"]).as_slice());
        assert_eq!(e.mul(&Series::one(6)), e);
    }

    #[test]
    fn pow_examples() {
        let f = exp_series(&q("3/2"), 5);
        assert_eq!(f.pow_int(0), Series::one(5));
        let cosh_kernel = exp_series(&q("1"), 4)
            .plus(&exp_series(&q("-1"), 4))
            .minus(&Series::constant(q("2"), 4));
        assert_eq!(
            cosh_kernel.pow_int(1).coeffs(),
            qs(&["0", "0", "1", "0", "1/12"]).as_slice()
        );
        let em1 = exp_series(&q("1"), 6).minus(&Series::one(6));
        assert_eq!(em1.pow_int(2), em1.mul(&em1));
        assert_eq!(em1.pow_int(5), em1.mul(&em1).mul(&em1).mul(&em1).mul(&em1));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(
            Series::constant(q("2"), 3).reciprocal().unwrap(),
            Series::constant(q("1/2"), 3)
        );
        // (e^t + 1)/2 = 1 + t/2 + t^2/4 + t^3/12; solving g0 = 1, g1 = -1/2,
        // g2 = -(1/2 g1 + 1/4 g0) = 0, g3 = -(1/2 g2 + 1/4 g1 + 1/12 g0) = 1/24.
        let half = q("1/2");
        let kernel = Series::add(&exp_series(&q("1"), 3), &Series::one(3), &half, &half);
        let inv = kernel.reciprocal().unwrap();
        assert_eq!(inv.coeffs(), qs(&["1", "-1/2", "0", "1/24"]).as_slice());
        let egf: Vec<Rational> = (0..=3).map(|n| inv.egf_coeff(n).unwrap()).collect();
        assert_eq!(egf, qs(&["1", "-1/2", "0", "1/4"]));

        let em1 = exp_series(&q("1"), 3).minus(&Series::one(3));
        assert_eq!(em1.reciprocal(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn egf_coeff_examples() {
        assert_eq!(exp_series(&q("2"), 5).egf_coeff(3).unwrap(), q("8"));
        let c = exp_series(&q("1"), 4).plus(&exp_series(&q("-1"), 4));
        assert_eq!(c.egf_coeff(2).unwrap(), q("2"));
        assert_eq!(
            c.egf_coeff(5),
            Err(Error::OrderExceeded { index: 5, order: 4 })
        );
    }

    #[test]
    fn from_egf_inverts_egf_coeff() {
        let f = exp_series(&q("-3/4"), 7);
        let vals: Vec<Rational> = (0..=7).map(|n| f.egf_coeff(n).unwrap()).collect();
        assert_eq!(Series::from_egf(&vals), f);
    }

    #[test]
    fn exponential_pairs_cancel() {
        for a in ["1", "2", "-3", "1/2"] {
            for n in 0..=16 {
                let a = q(a);
                assert_eq!(exp_series(&a, n).mul(&exp_series(&-&a, n)), Series::one(n));
            }
        }
    }

    #[test]
    fn rescale_matches_exp_argument() {
        let e = exp_series(&q("3"), 8);
        assert_eq!(e.rescale(&q("-1/2")), exp_series(&q("-3/2"), 8));
    }

    #[test]
    fn dump_format() {
        let s = Series::new(qs(&["1", "-1/2", "0"]));
        assert_eq!(s.dump(), "0: 1\n1: -1/2\n2: 0\n");
    }

    fn arb_series(order: usize) -> impl Strategy<Value = Series> {
        proptest::collection::vec((-20i64..20, 1i64..6), order + 1).prop_map(|v| {
            Series::new(
                v.into_iter()
                    .map(|(n, d)| Rational::new(n, d).unwrap())
                    .collect(),
            )
        })
    }

    fn arb_even_series(order: usize) -> impl Strategy<Value = Series> {
        arb_series(order).prop_map(|s| {
            let coeffs = s
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    if i % 2 == 1 {
                        Rational::zero()
                    } else {
                        c.clone()
                    }
                })
                .collect();
            Series::new(coeffs)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_laws((f, g, h) in (0usize..=12).prop_flat_map(|o| (arb_series(o), arb_series(o), arb_series(o)))) {
            prop_assert_eq!(f.mul(&g), g.mul(&f));
            prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
            prop_assert_eq!(f.mul(&g.plus(&h)), f.mul(&g).plus(&f.mul(&h)));
        }

        #[test]
        fn reciprocal_is_inverse(f in arb_series(10)) {
            prop_assume!(!f.coeffs()[0].is_zero());
            let g = f.reciprocal().unwrap();
            prop_assert_eq!(f.mul(&g), Series::one(10));
        }

        #[test]
        fn even_series_closed_under_product(f in arb_even_series(12), g in arb_even_series(12)) {
            prop_assert!(f.mul(&g).is_even());
        }
    }
}
