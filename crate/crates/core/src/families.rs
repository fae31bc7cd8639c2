//! Closed-form evaluators for each number family, and the generating-function
//! route that serves as their independent oracle.
//!
//! Generating functions (all exponential, in `t`):
//!
//! | family | kernel | normalization |
//! |---|---|---|
//! | `S2(n,v;λ)` | `(λe^t − 1)^v / v!` | `t^n/n!` |
//! | `S_v^n(x;λ)` | `(λe^t − 1)^v e^{xt} / v!` | `t^n/n!` |
//! | `T(n,k)` | `(e^t + e^{−t} − 2)^k / (2k)!` | `t^{2n}/(2n)!` |
//! | `y1(n,k;λ)` | `(λe^t + 1)^k / k!` | `t^n/n!` |
//! | `y2(n,k;λ)` | `(λe^t + λ^{−1}e^{−t} + 2)^k / (2k)!` | `t^n/n!` |
//! | `B(n,k)` | `(e^t + 1)^k` | `t^n/n!` |
//! | `E_n^{(k)}(x;λ)` | `(2/(λe^t + 1))^k e^{xt}` | `t^n/n!` |
//! | `E*_n^{(−k)}` | `((e^t + e^{−t})/2)^k` | `t^n/n!` |
//!
//! The closed forms expand each kernel binomially into a finite sum of
//! exponentials, so every value except positive-order Apostol-Euler is a short
//! exact sum. Positive orders go through series inversion.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exact::{binomial, factorial, sign, Rational};
use crate::series::{exp_series, Series};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Stirling2Lambda,
    ArrayPoly,
    CentralFactorial,
    Y1,
    Y2,
    BNum,
    ApostolEuler,
    Euler2Neg,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Stirling2Lambda,
        Family::ArrayPoly,
        Family::CentralFactorial,
        Family::Y1,
        Family::Y2,
        Family::BNum,
        Family::ApostolEuler,
        Family::Euler2Neg,
    ];

    /// Short label used in tables and on the command line.
    pub fn label(self) -> &'static str {
        match self {
            Family::Stirling2Lambda => "S2",
            Family::ArrayPoly => "A",
            Family::CentralFactorial => "T",
            Family::Y1 => "y1",
            Family::Y2 => "y2",
            Family::BNum => "B",
            Family::ApostolEuler => "E",
            Family::Euler2Neg => "Estar",
        }
    }

    pub fn uses_x(self) -> bool {
        matches!(self, Family::ArrayPoly | Family::ApostolEuler)
    }

    pub fn uses_lambda(self) -> bool {
        matches!(
            self,
            Family::Stirling2Lambda
                | Family::ArrayPoly
                | Family::Y1
                | Family::Y2
                | Family::ApostolEuler
        )
    }

    /// Whether the second index may be negative (the Apostol-Euler order).
    pub fn signed_index(self) -> bool {
        self == Family::ApostolEuler
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let family = match s.to_ascii_lowercase().as_str() {
            "s2" | "stirling2" | "stirling2lambda" => Family::Stirling2Lambda,
            "a" | "array" | "arraypoly" => Family::ArrayPoly,
            "t" | "central" | "centralfactorial" => Family::CentralFactorial,
            "y1" => Family::Y1,
            "y2" => Family::Y2,
            "b" | "bnum" => Family::BNum,
            "e" | "apostol" | "apostoleuler" => Family::ApostolEuler,
            "estar" | "e*" | "euler2" | "euler2neg" => Family::Euler2Neg,
            _ => return Err(Error::InvalidParameter(format!("unknown family {s:?}"))),
        };
        Ok(family)
    }
}

/// A family together with all of its parameters. Unused parameters are
/// normalized to `x = 0`, `λ = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub n: u32,
    pub k_or_v: i64,
    pub x: Rational,
    pub lambda: Rational,
}

impl FamilySpec {
    pub fn new(family: Family, n: u32, k_or_v: i64, x: Rational, lambda: Rational) -> Result<Self> {
        if !family.signed_index() && k_or_v < 0 {
            return Err(Error::InvalidParameter(format!(
                "{family}: second index must be non-negative, got {k_or_v}"
            )));
        }
        if u32::try_from(k_or_v.unsigned_abs()).is_err() {
            return Err(Error::InvalidParameter(format!(
                "{family}: second index {k_or_v} out of range"
            )));
        }
        let x = if family.uses_x() { x } else { Rational::zero() };
        let lambda = if family.uses_lambda() {
            lambda
        } else {
            Rational::one()
        };
        if family == Family::Y2 && lambda.is_zero() {
            return Err(Error::LambdaZero);
        }
        if family == Family::ApostolEuler && k_or_v > 0 && lambda == -1 {
            return Err(Error::SingularKernel);
        }
        Ok(FamilySpec {
            family,
            n,
            k_or_v,
            x,
            lambda,
        })
    }

    fn index(&self) -> u32 {
        self.k_or_v.unsigned_abs() as u32
    }

    /// Series order needed to read this value off its generating function.
    pub fn required_order(&self) -> usize {
        match self.family {
            Family::CentralFactorial => 2 * self.n as usize,
            _ => self.n as usize,
        }
    }

    /// The closed-form value.
    pub fn evaluate(&self) -> Result<Rational> {
        let (n, k) = (self.n, self.index());
        Ok(match self.family {
            Family::Stirling2Lambda => stirling2_lambda(n, k, &self.lambda),
            Family::ArrayPoly => array_poly(n, k, &self.x, &self.lambda),
            Family::CentralFactorial => central_factorial(n, k),
            Family::Y1 => y1_num(n, k, &self.lambda),
            Family::Y2 => y2_num(n, k, &self.lambda)?,
            Family::BNum => b_num(n, k).into(),
            Family::ApostolEuler => apostol_euler(n, self.k_or_v, &self.x, &self.lambda)?,
            Family::Euler2Neg => euler2_neg(n, k),
        })
    }
}

/// `Σ_{j=0}^{m} C(m,j) s_j λ^j (base + step·j)^n`, where `s_j = (−1)^{m−j}`
/// when `alternate` is set and 1 otherwise. `0^0 = 1`.
fn binomial_power_sum(
    m: u32,
    lambda: &Rational,
    alternate: bool,
    base: &Rational,
    step: i64,
    n: u32,
) -> Rational {
    let mut lambda_pow = Rational::one();
    let mut total = Rational::zero();
    for j in 0..=m {
        let mut term = Rational::from(binomial(m as u64, j as i64)) * &lambda_pow;
        if alternate && (m - j) % 2 == 1 {
            term = -term;
        }
        let point = base + Rational::from(step * j as i64);
        total = total + term * point.pow(n);
        lambda_pow = &lambda_pow * lambda;
    }
    total
}

fn over_factorial(value: Rational, m: u64) -> Rational {
    value
        .checked_div(&factorial(m).into())
        .expect("factorial is positive")
}

fn two_pow(exp: i64) -> Rational {
    Rational::from(2).powi(exp).expect("2 is nonzero")
}

/// λ-Stirling numbers of the second kind, `(1/v!) Σ C(v,j)(−1)^{v−j} λ^j j^n`.
pub fn stirling2_lambda(n: u32, v: u32, lambda: &Rational) -> Rational {
    over_factorial(
        binomial_power_sum(v, lambda, true, &Rational::zero(), 1, n),
        v as u64,
    )
}

/// λ-array polynomials `S_v^n(x;λ)` evaluated at `x`.
pub fn array_poly(n: u32, v: u32, x: &Rational, lambda: &Rational) -> Rational {
    over_factorial(binomial_power_sum(v, lambda, true, x, 1, n), v as u64)
}

/// Central factorial numbers `T(n,k) = (1/(2k)!) Σ_{j=0}^{2k} C(2k,j)(−1)^j (k−j)^{2n}`.
pub fn central_factorial(n: u32, k: u32) -> Rational {
    // (−1)^j = (−1)^{2k−j}, so the alternating helper applies directly.
    let sum = binomial_power_sum(
        2 * k,
        &Rational::one(),
        true,
        &Rational::from(k as i64),
        -1,
        2 * n,
    );
    over_factorial(sum, 2 * k as u64)
}

pub fn y1_num(n: u32, k: u32, lambda: &Rational) -> Rational {
    over_factorial(
        binomial_power_sum(k, lambda, false, &Rational::zero(), 1, n),
        k as u64,
    )
}

/// `y2(n,k;λ) = (λ^{−k}/(2k)!) Σ_{j=0}^{2k} C(2k,j) λ^j (j−k)^n`, from
/// `λe^t + λ^{−1}e^{−t} + 2 = λ^{−1}e^{−t}(λe^t + 1)^2`.
pub fn y2_num(n: u32, k: u32, lambda: &Rational) -> Result<Rational> {
    if lambda.is_zero() {
        return Err(Error::LambdaZero);
    }
    let sum = binomial_power_sum(2 * k, lambda, false, &Rational::from(-(k as i64)), 1, n);
    Ok(over_factorial(
        sum * lambda.powi(-(k as i64))?,
        2 * k as u64,
    ))
}

/// `B(n,k) = Σ C(k,j) j^n`.
pub fn b_num(n: u32, k: u32) -> BigInt {
    binomial_power_sum(k, &Rational::one(), false, &Rational::zero(), 1, n)
        .to_integer()
        .expect("B(n,k) is a sum of integers")
}

/// Apostol-Euler polynomials `E_n^{(order)}(x;λ)` for any integer order.
///
/// Non-positive orders `−k` use `2^{−k} Σ C(k,j) λ^j (x+j)^n`. Positive orders
/// invert `(λe^t + 1)/2` as a series and raise the inverse to `order`.
pub fn apostol_euler(n: u32, order: i64, x: &Rational, lambda: &Rational) -> Result<Rational> {
    if order <= 0 {
        let k = u32::try_from(-order)
            .map_err(|_| Error::InvalidParameter(format!("order {order} out of range")))?;
        return Ok(binomial_power_sum(k, lambda, false, x, 1, n) * two_pow(-(k as i64)));
    }
    let k = u32::try_from(order)
        .map_err(|_| Error::InvalidParameter(format!("order {order} out of range")))?;
    let n_usize = n as usize;
    let inverse = half_apostol_kernel(lambda, n_usize)
        .reciprocal()
        .map_err(|_| Error::SingularKernel)?;
    inverse
        .pow_int(k)
        .mul(&exp_series(x, n_usize))
        .egf_coeff(n_usize)
}

/// Second-kind Euler numbers of negative order, `2^{−k} Σ C(k,j)(k−2j)^n`.
pub fn euler2_neg(n: u32, k: u32) -> Rational {
    binomial_power_sum(k, &Rational::one(), false, &Rational::from(k as i64), -2, n)
        * two_pow(-(k as i64))
}

// ---------------------------------------------------------------------------
// Generating functions

/// `(λe^t + 1)/2`.
fn half_apostol_kernel(lambda: &Rational, order: usize) -> Series {
    let half = Rational::new(1, 2).expect("nonzero");
    Series::add(
        &exp_series(&Rational::one(), order),
        &Series::one(order),
        &(lambda * &half),
        &half,
    )
}

/// `λe^t + c` for a constant `c`.
fn shifted_exp(lambda: &Rational, c: i64, order: usize) -> Series {
    Series::add(
        &exp_series(&Rational::one(), order),
        &Series::one(order),
        lambda,
        &Rational::from(c),
    )
}

fn inv_factorial(m: u64) -> Rational {
    Rational::from(factorial(m))
        .recip()
        .expect("factorial is positive")
}

/// `F_S(t, v; λ) = (λe^t − 1)^v / v!`.
pub fn stirling2_gf(v: u32, lambda: &Rational, order: usize) -> Series {
    shifted_exp(lambda, -1, order)
        .pow_int(v)
        .scale(&inv_factorial(v as u64))
}

/// `F_A(t, x, v; λ) = (λe^t − 1)^v e^{xt} / v!`.
pub fn array_gf(v: u32, x: &Rational, lambda: &Rational, order: usize) -> Series {
    stirling2_gf(v, lambda, order).mul(&exp_series(x, order))
}

/// `F_T(t, k) = (e^t + e^{−t} − 2)^k / (2k)!`.
pub fn central_factorial_gf(k: u32, order: usize) -> Series {
    let one = Rational::one();
    let kernel = Series::add(
        &exp_series(&one, order),
        &exp_series(&-&one, order),
        &one,
        &one,
    )
    .minus(&Series::constant(Rational::from(2), order));
    kernel.pow_int(k).scale(&inv_factorial(2 * k as u64))
}

/// `F_{y1}(t, k; λ) = (λe^t + 1)^k / k!`.
pub fn y1_gf(k: u32, lambda: &Rational, order: usize) -> Series {
    shifted_exp(lambda, 1, order)
        .pow_int(k)
        .scale(&inv_factorial(k as u64))
}

/// `F_{y2}(t, k; λ) = (λe^t + λ^{−1}e^{−t} + 2)^k / (2k)!`.
pub fn y2_gf(k: u32, lambda: &Rational, order: usize) -> Result<Series> {
    let inv = lambda.recip().map_err(|_| Error::LambdaZero)?;
    let one = Rational::one();
    let kernel = Series::add(
        &exp_series(&one, order),
        &exp_series(&-&one, order),
        lambda,
        &inv,
    )
    .plus(&Series::constant(Rational::from(2), order));
    Ok(kernel.pow_int(k).scale(&inv_factorial(2 * k as u64)))
}

/// `(e^t + 1)^k`, whose `n`-th derivative at 0 is `B(n,k)`.
pub fn b_gf(k: u32, order: usize) -> Series {
    shifted_exp(&Rational::one(), 1, order).pow_int(k)
}

/// `F_{P1}(t, x; k, λ) = (2/(λe^t + 1))^k e^{xt}` for any integer order `k`.
///
/// Positive orders raise the kernel to the power first and invert once, which
/// is a different route from [`apostol_euler`].
pub fn apostol_euler_gf(
    order_k: i64,
    x: &Rational,
    lambda: &Rational,
    order: usize,
) -> Result<Series> {
    let power = u32::try_from(order_k.unsigned_abs())
        .map_err(|_| Error::InvalidParameter(format!("order {order_k} out of range")))?;
    let kernel = half_apostol_kernel(lambda, order).pow_int(power);
    let kernel = if order_k > 0 {
        kernel.reciprocal().map_err(|_| Error::SingularKernel)?
    } else {
        kernel
    };
    Ok(kernel.mul(&exp_series(x, order)))
}

/// `F_{E2}(t, k) = ((e^t + e^{−t})/2)^k` (the negative-order kernel).
pub fn euler2_gf(k: u32, order: usize) -> Series {
    let half = Rational::new(1, 2).expect("nonzero");
    let one = Rational::one();
    Series::add(
        &exp_series(&one, order),
        &exp_series(&-&one, order),
        &half,
        &half,
    )
    .pow_int(k)
}

/// The generating function of `spec`'s family with `spec`'s parameters
/// (the sequence index `spec.n` is ignored).
pub fn gf_series(spec: &FamilySpec, order: usize) -> Result<Series> {
    let k = spec.index();
    Ok(match spec.family {
        Family::Stirling2Lambda => stirling2_gf(k, &spec.lambda, order),
        Family::ArrayPoly => array_gf(k, &spec.x, &spec.lambda, order),
        Family::CentralFactorial => central_factorial_gf(k, order),
        Family::Y1 => y1_gf(k, &spec.lambda, order),
        Family::Y2 => y2_gf(k, &spec.lambda, order)?,
        Family::BNum => b_gf(k, order),
        Family::ApostolEuler => apostol_euler_gf(spec.k_or_v, &spec.x, &spec.lambda, order)?,
        Family::Euler2Neg => euler2_gf(k, order),
    })
}

/// Reads the value of `spec` off a generating function already built by
/// [`gf_series`] for the same family parameters.
pub fn extract(spec: &FamilySpec, series: &Series) -> Result<Rational> {
    series.egf_coeff(spec.required_order())
}

/// The value of `spec` computed from its generating function truncated at
/// `order`, under the family's own normalization.
pub fn gf_value(spec: &FamilySpec, order: usize) -> Result<Rational> {
    let needed = spec.required_order();
    if order < needed {
        return Err(Error::OrderExceeded {
            index: needed,
            order,
        });
    }
    extract(spec, &gf_series(spec, order)?)
}

/// `λ`-grid shared by the oracle sweeps and the audit.
pub fn default_lambdas() -> Vec<Rational> {
    ["1", "-1", "2", "1/2", "-2", "-1/2", "3/5"]
        .iter()
        .map(|s| s.parse().expect("literal"))
        .collect()
}

/// `x`-grid shared by the oracle sweeps.
pub fn default_xs() -> Vec<Rational> {
    ["0", "1", "-1", "1/2"]
        .iter()
        .map(|s| s.parse().expect("literal"))
        .collect()
}

/// `(−1)^e` as a rational.
pub(crate) fn sign_q(e: u64) -> Rational {
    Rational::from(sign(e))
}
