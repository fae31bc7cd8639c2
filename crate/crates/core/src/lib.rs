//! Exact computation of λ-Stirling numbers, array polynomials, central factorial
//! numbers, Apostol-Euler polynomials of any integer order, second-kind Euler
//! numbers of negative order, and the `y1`, `y2`, `B` families.
//!
//! Every family has two independent evaluation paths: a closed-form finite sum
//! ([`families`]) and coefficient extraction from its exponential generating
//! function built out of truncated power series ([`series`]). On top of these
//! sit brute-force combinatorial counters ([`oracles`]) and an identity audit
//! ([`audit`]) that checks a registry of published identities and functional
//! equations over parameter grids and reports exact counterexamples.
//!
//! ```
//! use special_numbers::{families, Rational};
//!
//! let one = Rational::one();
//! assert_eq!(families::stirling2_lambda(3, 2, &one), Rational::from(3));
//! assert_eq!(families::central_factorial(3, 2), Rational::from(5));
//! ```
//!
//! The `specnum` binary wraps the library (see [`cli`]); the crate's `examples/`
//! directory has one runnable program per capability.

pub mod audit;
pub mod cli;
pub mod exact;
pub mod families;
pub mod oracles;
pub mod series;

pub use exact::{binomial, factorial, Rational};
pub use families::{Family, FamilySpec};
pub use series::Series;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("exponent {0} out of range")]
    ExponentTooLarge(i64),
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("coefficient index {index} exceeds series order {order}")]
    OrderExceeded { index: usize, order: usize },
    #[error("singular kernel: lambda = -1 makes lambda*e^t + 1 vanish at t = 0")]
    SingularKernel,
    #[error("lambda must be nonzero (LambdaZero)")]
    LambdaZero,
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid parameter grid: {0}")]
    GridInvalid(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
