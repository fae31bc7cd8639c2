//! A registry of identities and functional equations, each checked exactly
//! over a parameter grid.
//!
//! Every entry exists in an as-stated form. For `T2`, `T4`, `T5`, `T6` and
//! `FE6` there is also a corrected form derived from a functional equation that
//! holds coefficient by coefficient. Failures are ordinary outcomes and carry the
//! lexicographically smallest failing instance in `(n, k, λ-index)` order
//! (`(k, λ-index, coefficient)` for functional equations; `(m, k)` for `RookT`).
//!
//! Literal readings pinned for the as-stated forms:
//!
//! * `T2`: `y2(n−l, k; 1)` is the `t^{n−l}/(n−l)!` coefficient of `F_{y2}`.
//! * `T3`: `S_{k−l}^{n−2j}(l/2, 1)` is the array polynomial at `x = l/2`, `λ = 1`;
//!   the even-`n` statement is `T3`, the odd-`n` vanishing statement is `T3_OddCase`.
//! * `T4`: `E*_n^{(−2j)}` is the `t^n/n!` coefficient of `F_{E2}(t, −2j)`.
//! * `T6`: the summand does not depend on `j`, so the sum contributes `2^k`.
//! * `FE6`: `F_{P1}(2t, k/2; j, λ²)` has positive order `j`.
//!
//! No identity has a free polynomial argument, so every entry has degree 0 in
//! `x` and the `x` grid only feeds the family sweeps.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exact::{binomial, factorial, Rational};
use crate::families::{
    self, apostol_euler_gf, array_gf, central_factorial_gf, euler2_gf, sign_q, stirling2_gf, y1_gf,
    y2_gf, Family, FamilySpec,
};
use crate::oracles;
use crate::series::Series;
use crate::{Error, Result};

/// Largest rook board the audit enumerates.
pub const AUDIT_ROOK_MAX: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    I1Gl,
    I2SpiveyValues,
    I3Bs1,
    I4Y1Stirling,
    RookT,
    FE1,
    FE2,
    FE3,
    FE4,
    FE5,
    FE6,
    T1,
    T2,
    T3,
    T3OddCase,
    T4,
    T5,
    T6,
}

impl Identity {
    pub const ALL: [Identity; 18] = [
        Identity::I1Gl,
        Identity::I2SpiveyValues,
        Identity::I3Bs1,
        Identity::I4Y1Stirling,
        Identity::RookT,
        Identity::FE1,
        Identity::FE2,
        Identity::FE3,
        Identity::FE4,
        Identity::FE5,
        Identity::FE6,
        Identity::T1,
        Identity::T2,
        Identity::T3,
        Identity::T3OddCase,
        Identity::T4,
        Identity::T5,
        Identity::T6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::I1Gl => "I1_Gl",
            Identity::I2SpiveyValues => "I2_SpiveyValues",
            Identity::I3Bs1 => "I3_Bs1",
            Identity::I4Y1Stirling => "I4_Y1Stirling",
            Identity::RookT => "RookT",
            Identity::FE1 => "FE1",
            Identity::FE2 => "FE2",
            Identity::FE3 => "FE3",
            Identity::FE4 => "FE4",
            Identity::FE5 => "FE5",
            Identity::FE6 => "FE6",
            Identity::T1 => "T1",
            Identity::T2 => "T2",
            Identity::T3 => "T3",
            Identity::T3OddCase => "T3_OddCase",
            Identity::T4 => "T4",
            Identity::T5 => "T5",
            Identity::T6 => "T6",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Identity::I1Gl => "B(n,k) = k! y1(n,k;1) = sum C(k,j) j^n = d^n/dt^n (e^t+1)^k at 0",
            Identity::I2SpiveyValues => "B(0,k) = 2^k, B(1,k) = k 2^(k-1), B(2,k) = k(k+1) 2^(k-2)",
            Identity::I3Bs1 => "B(m,n) = sum_j C(n,j) j! 2^(n-j) S2(m,j)",
            Identity::I4Y1Stirling => "S2(n,k) = (-1)^k y1(n,k;-1)",
            Identity::RookT => "k-rook placements on the size-m 3D triangle board = T(m+1, m+1-k)",
            Identity::FE1 => "F_y1(2t,k;-l^2) = (-1)^k k! F_y1(t,k;l) F_S(t,k;l)",
            Identity::FE2 => "F_A(2t,-k,2k;1) = (2k)! F_T(t,k) F_y2(t,k;1)",
            Identity::FE3 => "F_T(t,k) = k!/(2k)! sum_l (2l)!/l! F_T(t/2,l) F_A(-t/2,l/2,k-l;1)",
            Identity::FE4 => "F_T(2t,k) = 2^(2k)/(2k)! sum_j C(k,j) (-1)^(k-j) F_E2(t,-2j)",
            Identity::FE5 => "F_y2(t,k;-l) = k!/(2k)! sum_j (-1)^k F_S(t,j;l) F_S(-t,k-j;1/l)",
            Identity::FE6 => "F_y2(t,k;l) = l^(-k)/(2k)! sum_j C(k,j) F_P1(2t,k/2;j,l^2)",
            Identity::T1 => "y1(n,k;-l^2) = (-1)^k k! 2^(-n) sum_l C(n,l) S2(l,k;l) y1(n-l,k;l)",
            Identity::T2 => "S_{2k}^{2n}(-k) = (2k)! 2^(-2n) sum_l C(n,l) T(l,k) y2(n-l,k;1)",
            Identity::T3 => "T(n,k) for even n via T(j,l) and S_{k-l}^{n-2j}(l/2,1)",
            Identity::T3OddCase => "odd-n vanishing sum of T(j,l) S_{k-l}^{n-2j}(l/2,1)",
            Identity::T4 => "T(n,k) = 2^(2k-n)/(2k)! sum_j C(k,j) (-1)^(k-j) E*_n^(-2j)",
            Identity::T5 => {
                "y2(n,k;l) = k!/(2k)! sum_j sum_d (-1)^(k+n-d) C(n,d) S2(d,j;l) S2(n-d,k-j;1/l)"
            }
            Identity::T6 => "y2(n,k;l) = 2^n l^(-k)/(2k)! sum_j C(k,j) E_n^(-k)(k/2; l^2)",
        }
    }

    pub fn is_functional_equation(self) -> bool {
        matches!(
            self,
            Identity::FE1
                | Identity::FE2
                | Identity::FE3
                | Identity::FE4
                | Identity::FE5
                | Identity::FE6
        )
    }

    pub fn has_corrected(self) -> bool {
        matches!(
            self,
            Identity::T2 | Identity::T4 | Identity::T5 | Identity::T6 | Identity::FE6
        )
    }

    fn uses_lambda(self) -> bool {
        matches!(
            self,
            Identity::T1
                | Identity::T5
                | Identity::T6
                | Identity::FE1
                | Identity::FE5
                | Identity::FE6
        )
    }

    /// Degree in the polynomial argument `x`; zero for every registered identity.
    pub fn x_degree(self) -> u32 {
        0
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    AsStated,
    Corrected,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::AsStated => "as_stated",
            Variant::Corrected => "corrected",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdentityId {
    pub identity: Identity,
    pub variant: Variant,
}

impl IdentityId {
    pub fn new(identity: Identity, variant: Variant) -> Result<Self> {
        if variant == Variant::Corrected && !identity.has_corrected() {
            return Err(Error::InvalidParameter(format!(
                "{identity} has no corrected variant"
            )));
        }
        Ok(IdentityId { identity, variant })
    }

    pub fn as_stated(identity: Identity) -> Self {
        IdentityId {
            identity,
            variant: Variant::AsStated,
        }
    }

    pub fn corrected(identity: Identity) -> Result<Self> {
        IdentityId::new(identity, Variant::Corrected)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant {
            Variant::AsStated => write!(f, "{}", self.identity),
            Variant::Corrected => write!(f, "{}:corrected", self.identity),
        }
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    /// `"T4"`, `"T4:corrected"`, `"T4:as_stated"`; names are case-insensitive
    /// and `I1`..`I4` abbreviate the `I*` entries.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::InvalidParameter(format!("unknown identity {s:?}"));
        let (name, variant) = match s.split_once(':') {
            None => (s, Variant::AsStated),
            Some((name, v)) => {
                let variant = match v.to_ascii_lowercase().as_str() {
                    "corrected" | "c" => Variant::Corrected,
                    "as_stated" | "asstated" | "as-stated" => Variant::AsStated,
                    _ => return Err(unknown()),
                };
                (name, variant)
            }
        };
        let lower = name.trim().to_ascii_lowercase();
        let identity = Identity::ALL
            .into_iter()
            .find(|id| {
                let full = id.name().to_ascii_lowercase();
                full == lower
                    || full.split('_').next() == Some(lower.as_str()) && id.name().starts_with('I')
            })
            .ok_or_else(unknown)?;
        IdentityId::new(identity, variant)
    }
}

/// Every registry entry in report order.
pub fn registry() -> Vec<IdentityId> {
    use Identity::*;
    let mut out = Vec::new();
    for id in [I1Gl, I2SpiveyValues, I3Bs1, I4Y1Stirling, RookT] {
        out.push(IdentityId::as_stated(id));
    }
    let groups: [&[Identity]; 6] = [
        &[FE1, T1],
        &[FE2, T2],
        &[FE3, T3, T3OddCase],
        &[FE4, T4],
        &[FE5, T5],
        &[FE6, T6],
    ];
    for group in groups {
        for &id in group {
            out.push(IdentityId::as_stated(id));
            if id.has_corrected() {
                out.push(IdentityId {
                    identity: id,
                    variant: Variant::Corrected,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamGrid {
    pub n_max: u32,
    pub k_max: u32,
    pub lambdas: Vec<Rational>,
    pub xs: Vec<Rational>,
    pub series_order: usize,
}

impl ParamGrid {
    /// `series_order` defaults to `2·n_max + 4`.
    pub fn new(
        n_max: u32,
        k_max: u32,
        lambdas: Vec<Rational>,
        xs: Vec<Rational>,
        series_order: Option<usize>,
    ) -> Result<Self> {
        let grid = ParamGrid {
            n_max,
            k_max,
            lambdas,
            xs,
            series_order: series_order.unwrap_or(2 * n_max as usize + 4),
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        let guard = 2 * self.n_max as usize + 4;
        if self.series_order < guard {
            return Err(Error::GridInvalid(format!(
                "series order {} is below 2*n_max+4 = {guard}",
                self.series_order
            )));
        }
        if self.lambdas.is_empty() {
            return Err(Error::GridInvalid("empty lambda list".into()));
        }
        if self.xs.is_empty() {
            return Err(Error::GridInvalid("empty x list".into()));
        }
        Ok(())
    }
}

impl Default for ParamGrid {
    /// `n <= 12`, `k <= 6`, the shared λ and x grids, series order 28.
    fn default() -> Self {
        ParamGrid::new(
            12,
            6,
            families::default_lambdas(),
            families::default_xs(),
            None,
        )
        .expect("default grid is valid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

/// Coordinates of one checked instance. Only the fields an identity uses are set.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct InstanceParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<usize>,
}

impl fmt::Display for InstanceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        if let Some(m) = self.m {
            parts.push(format!("m={m}"));
        }
        if let Some(k) = self.k {
            parts.push(format!("k={k}"));
        }
        if let Some(l) = &self.lambda {
            parts.push(format!("lambda={l}"));
        }
        if let Some(c) = self.coefficient {
            parts.push(format!("coefficient={c}"));
        }
        f.write_str(&parts.join(";"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub params: InstanceParams,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub grid: ParamGrid,
    pub status: Status,
    pub checked: u64,
    pub skipped: u64,
    pub counterexample: Option<Counterexample>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl Serialize for IdentityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("IdentityReport", 6)?;
        s.serialize_field("identity", self.identity.identity.name())?;
        s.serialize_field("variant", &self.identity.variant)?;
        s.serialize_field("status", &self.status)?;
        s.serialize_field("checked", &self.checked)?;
        s.serialize_field("skipped", &self.skipped)?;
        s.serialize_field("counterexample", &self.counterexample)?;
        s.end()
    }
}

/// One CSV summary row per report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct SummaryRow {
    pub identity: String,
    pub variant: String,
    pub status: String,
    pub checked: u64,
    pub skipped: u64,
    pub params: String,
    pub lhs: String,
    pub rhs: String,
}

impl From<&IdentityReport> for SummaryRow {
    fn from(r: &IdentityReport) -> Self {
        let (params, lhs, rhs) = match &r.counterexample {
            Some(c) => (c.params.to_string(), c.lhs.to_string(), c.rhs.to_string()),
            None => (String::new(), String::new(), String::new()),
        };
        SummaryRow {
            identity: r.identity.identity.name().to_string(),
            variant: r.identity.variant.name().to_string(),
            status: match r.status {
                Status::Pass => "pass".into(),
                Status::Fail => "fail".into(),
            },
            checked: r.checked,
            skipped: r.skipped,
            params,
            lhs,
            rhs,
        }
    }
}

// ---------------------------------------------------------------------------
// Value sources

/// Where family values come from when evaluating identity sides.
pub trait FamilyValues: Sync {
    fn value(&self, spec: &FamilySpec) -> Result<Rational>;
}

/// Closed-form evaluators.
#[derive(Debug, Default, Clone, Copy)]
pub struct ClosedForms;

impl FamilyValues for ClosedForms {
    fn value(&self, spec: &FamilySpec) -> Result<Rational> {
        spec.evaluate()
    }
}

type GfKey = (Family, i64, Rational, Rational);

/// Coefficient extraction from generating functions, with each generating
/// function built once per family parameter set.
#[derive(Debug, Default)]
pub struct SeriesOracle {
    cache: Mutex<HashMap<GfKey, Arc<Series>>>,
}

impl SeriesOracle {
    pub fn new() -> Self {
        SeriesOracle::default()
    }
}

/// Orders are rounded up to a multiple of this so nearby requests share a cache entry.
const ORACLE_ORDER_STEP: usize = 16;

impl FamilyValues for SeriesOracle {
    fn value(&self, spec: &FamilySpec) -> Result<Rational> {
        let key = (
            spec.family,
            spec.k_or_v,
            spec.x.clone(),
            spec.lambda.clone(),
        );
        let needed = spec.required_order();
        let cached = self
            .cache
            .lock()
            .expect("oracle cache poisoned")
            .get(&key)
            .cloned();
        let series = match cached {
            Some(s) if s.order() >= needed => s,
            _ => {
                let order = needed.div_ceil(ORACLE_ORDER_STEP).max(1) * ORACLE_ORDER_STEP;
                let s = Arc::new(families::gf_series(spec, order)?);
                self.cache
                    .lock()
                    .expect("oracle cache poisoned")
                    .insert(key, Arc::clone(&s));
                s
            }
        };
        families::extract(spec, &series)
    }
}

struct Eval<'a>(&'a dyn FamilyValues);

impl Eval<'_> {
    fn get(
        &self,
        family: Family,
        n: u32,
        k: i64,
        x: Rational,
        lambda: &Rational,
    ) -> Result<Rational> {
        self.0
            .value(&FamilySpec::new(family, n, k, x, lambda.clone())?)
    }
    fn s2(&self, n: u32, v: u32, lambda: &Rational) -> Result<Rational> {
        self.get(
            Family::Stirling2Lambda,
            n,
            v as i64,
            Rational::zero(),
            lambda,
        )
    }
    fn array(&self, n: u32, v: u32, x: Rational, lambda: &Rational) -> Result<Rational> {
        self.get(Family::ArrayPoly, n, v as i64, x, lambda)
    }
    fn t(&self, n: u32, k: u32) -> Result<Rational> {
        self.get(
            Family::CentralFactorial,
            n,
            k as i64,
            Rational::zero(),
            &Rational::one(),
        )
    }
    fn y1(&self, n: u32, k: u32, lambda: &Rational) -> Result<Rational> {
        self.get(Family::Y1, n, k as i64, Rational::zero(), lambda)
    }
    fn y2(&self, n: u32, k: u32, lambda: &Rational) -> Result<Rational> {
        self.get(Family::Y2, n, k as i64, Rational::zero(), lambda)
    }
    fn b(&self, n: u32, k: u32) -> Result<Rational> {
        self.get(
            Family::BNum,
            n,
            k as i64,
            Rational::zero(),
            &Rational::one(),
        )
    }
    fn apostol(&self, n: u32, order: i64, x: Rational, lambda: &Rational) -> Result<Rational> {
        self.get(Family::ApostolEuler, n, order, x, lambda)
    }
    fn euler2(&self, n: u32, k: u32) -> Result<Rational> {
        self.get(
            Family::Euler2Neg,
            n,
            k as i64,
            Rational::zero(),
            &Rational::one(),
        )
    }
}

fn q(n: i64) -> Rational {
    Rational::from(n)
}

fn fact(n: u32) -> Rational {
    factorial(n as u64).into()
}

fn binom(n: u32, k: u32) -> Rational {
    binomial(n as u64, k as i64).into()
}

fn pow2(e: i64) -> Rational {
    q(2).powi(e).expect("2 is nonzero")
}

fn half_of(n: u32) -> Rational {
    Rational::new(n, 2).expect("nonzero")
}

fn ratio(a: Rational, b: Rational) -> Result<Rational> {
    a.checked_div(&b)
}

// ---------------------------------------------------------------------------
// Pointwise identities

fn instances(id: Identity, grid: &ParamGrid) -> Vec<InstanceParams> {
    let mut out = Vec::new();
    let ks = 0..=grid.k_max;
    let lambda_slots: Vec<Option<Rational>> = if id.uses_lambda() {
        grid.lambdas.iter().cloned().map(Some).collect()
    } else {
        vec![None]
    };
    let ns: Vec<u32> = match id {
        Identity::I2SpiveyValues => (0..=grid.n_max.min(2)).collect(),
        Identity::T3 => (0..=grid.n_max).filter(|n| n % 2 == 0).collect(),
        Identity::T3OddCase => (0..=grid.n_max).filter(|n| n % 2 == 1).collect(),
        _ => (0..=grid.n_max).collect(),
    };
    if id == Identity::RookT {
        for m in 1..=grid.n_max.clamp(1, AUDIT_ROOK_MAX) {
            for k in 0..=m {
                out.push(InstanceParams {
                    m: Some(m),
                    k: Some(k),
                    ..Default::default()
                });
            }
        }
        return out;
    }
    for &n in &ns {
        for k in ks.clone() {
            for lambda in &lambda_slots {
                out.push(InstanceParams {
                    n: Some(n),
                    k: Some(k),
                    lambda: lambda.clone(),
                    ..Default::default()
                });
            }
        }
    }
    out
}

fn evaluate(
    id: IdentityId,
    p: &InstanceParams,
    values: &dyn FamilyValues,
) -> Result<(Rational, Rational)> {
    let e = Eval(values);
    let n = p.n.unwrap_or(0);
    let k = p.k.unwrap_or(0);
    let one = Rational::one();
    let lambda = p.lambda.clone().unwrap_or_else(Rational::one);
    let corrected = id.variant == Variant::Corrected;
    match id.identity {
        Identity::I1Gl => {
            let sum = e.b(n, k)?;
            let via_y1 = fact(k) * e.y1(n, k, &one)?;
            if via_y1 != sum {
                return Ok((sum, via_y1));
            }
            let via_derivative = families::b_gf(k, n as usize).egf_coeff(n as usize)?;
            Ok((sum, via_derivative))
        }
        Identity::I2SpiveyValues => {
            let kq = q(k as i64);
            let closed = match n {
                0 => pow2(k as i64),
                1 => &kq * pow2(k as i64 - 1),
                _ => &kq * (&kq + q(1)) * pow2(k as i64 - 2),
            };
            Ok((e.b(n, k)?, closed))
        }
        Identity::I3Bs1 => {
            let rhs = (0..=k)
                .map(|j| Ok(binom(k, j) * fact(j) * pow2((k - j) as i64) * e.s2(n, j, &one)?))
                .sum::<Result<Rational>>()?;
            Ok((e.b(n, k)?, rhs))
        }
        Identity::I4Y1Stirling => Ok((e.s2(n, k, &one)?, sign_q(k as u64) * e.y1(n, k, &-&one)?)),
        Identity::RookT => {
            let m = p.m.expect("rook instance has m");
            let count = oracles::count_rook_placements_with_budget(m, k, AUDIT_ROOK_MAX)?;
            Ok((count.into(), e.t(m + 1, m + 1 - k)?))
        }
        Identity::T1 => {
            let lhs = e.y1(n, k, &-(&lambda * &lambda))?;
            let sum = (0..=n)
                .map(|l| Ok(binom(n, l) * e.s2(l, k, &lambda)? * e.y1(n - l, k, &lambda)?))
                .sum::<Result<Rational>>()?;
            Ok((lhs, sign_q(k as u64) * fact(k) * pow2(-(n as i64)) * sum))
        }
        Identity::T2 => {
            let lhs = e.array(2 * n, 2 * k, q(-(k as i64)), &one)?;
            let sum = if corrected {
                (0..=n)
                    .map(|l| Ok(binom(2 * n, 2 * l) * e.t(l, k)? * e.y2(2 * (n - l), k, &one)?))
                    .sum::<Result<Rational>>()?
            } else {
                (0..=n)
                    .map(|l| Ok(binom(n, l) * e.t(l, k)? * e.y2(n - l, k, &one)?))
                    .sum::<Result<Rational>>()?
            };
            Ok((lhs, fact(2 * k) * pow2(-2 * n as i64) * sum))
        }
        Identity::T3 | Identity::T3OddCase => {
            let mut sum = Rational::zero();
            for l in 0..=k {
                for j in 0..=n / 2 {
                    let weight =
                        ratio(binom(n, 2 * j) * fact(2 * l), pow2(2 * j as i64) * fact(l))?;
                    sum =
                        sum + weight * e.t(j, l)? * e.array(n - 2 * j, k - l, half_of(l), &one)?;
                }
            }
            if id.identity == Identity::T3OddCase {
                return Ok((sum, Rational::zero()));
            }
            let prefactor = ratio(fact(2 * n) * fact(k), fact(2 * k) * fact(n))?;
            Ok((e.t(n, k)?, prefactor * sum))
        }
        Identity::T4 => {
            let (index, exponent) = if corrected {
                (2 * n, 2 * k as i64 - 2 * n as i64)
            } else {
                (n, 2 * k as i64 - n as i64)
            };
            let sum = (0..=k)
                .map(|j| Ok(binom(k, j) * sign_q((k - j) as u64) * e.euler2(index, 2 * j)?))
                .sum::<Result<Rational>>()?;
            Ok((e.t(n, k)?, ratio(pow2(exponent) * sum, fact(2 * k))?))
        }
        Identity::T5 => {
            let inv = lambda.recip().map_err(|_| Error::LambdaZero)?;
            let lhs = if corrected {
                e.y2(n, k, &-&lambda)?
            } else {
                e.y2(n, k, &lambda)?
            };
            let mut sum = Rational::zero();
            for j in 0..=k {
                for d in 0..=n {
                    let term = binom(n, d) * e.s2(d, j, &lambda)? * e.s2(n - d, k - j, &inv)?;
                    sum = sum + sign_q((k + n - d) as u64) * term;
                }
            }
            Ok((lhs, ratio(fact(k) * sum, fact(2 * k))?))
        }
        Identity::T6 => {
            let lhs = e.y2(n, k, &lambda)?;
            let lambda_pow = lambda.powi(-(k as i64))?;
            let rhs = if corrected {
                let value = e.apostol(n, -2 * k as i64, q(-(k as i64)), &lambda)?;
                ratio(pow2(2 * k as i64) * lambda_pow * value, fact(2 * k))?
            } else {
                let lambda_sq = &lambda * &lambda;
                let sum = (0..=k)
                    .map(|j| Ok(binom(k, j) * e.apostol(n, -(k as i64), half_of(k), &lambda_sq)?))
                    .sum::<Result<Rational>>()?;
                ratio(pow2(n as i64) * lambda_pow * sum, fact(2 * k))?
            };
            Ok((lhs, rhs))
        }
        fe => unreachable!("{fe} is a functional equation"),
    }
}

fn sweep<F>(
    id: IdentityId,
    grid: &ParamGrid,
    points: Vec<InstanceParams>,
    eval: F,
) -> IdentityReport
where
    F: Fn(&InstanceParams) -> Result<(Rational, Rational, InstanceParams)> + Sync,
{
    let outcomes: Vec<_> = points.par_iter().map(&eval).collect();
    let mut checked = 0;
    let mut skipped = 0;
    let mut counterexample = None;
    for outcome in outcomes {
        match outcome {
            Err(_) => skipped += 1,
            Ok((lhs, rhs, params)) => {
                checked += 1;
                if lhs != rhs && counterexample.is_none() {
                    counterexample = Some(Counterexample { params, lhs, rhs });
                }
            }
        }
    }
    IdentityReport {
        identity: id,
        grid: grid.clone(),
        status: if counterexample.is_some() {
            Status::Fail
        } else {
            Status::Pass
        },
        checked,
        skipped,
        counterexample,
    }
}

/// Checks `id` over `grid` using closed-form family values.
pub fn check_identity(id: IdentityId, grid: &ParamGrid) -> Result<IdentityReport> {
    check_identity_with(id, grid, &ClosedForms)
}

/// Checks `id` over `grid` with family values taken from `values`.
/// Functional equations are always built from series.
pub fn check_identity_with(
    id: IdentityId,
    grid: &ParamGrid,
    values: &dyn FamilyValues,
) -> Result<IdentityReport> {
    grid.validate()?;
    IdentityId::new(id.identity, id.variant)?;
    if id.identity.is_functional_equation() {
        return check_functional_equation_on(id, grid, grid.series_order);
    }
    let points = instances(id.identity, grid);
    Ok(sweep(id, grid, points, |p| {
        evaluate(id, p, values).map(|(l, r)| (l, r, p.clone()))
    }))
}

// ---------------------------------------------------------------------------
// Functional equations

/// Both sides of a functional equation as series truncated at `order`.
pub fn functional_equation_sides(
    id: IdentityId,
    k: u32,
    lambda: &Rational,
    order: usize,
) -> Result<(Series, Series)> {
    let one = Rational::one();
    let corrected = id.variant == Variant::Corrected;
    let inv_fact = |m: u32| fact(m).recip().expect("factorial is positive");
    let sides = match id.identity {
        Identity::FE1 => {
            let lhs = y1_gf(k, &-(lambda * lambda), order).rescale(&q(2));
            let rhs = y1_gf(k, lambda, order)
                .mul(&stirling2_gf(k, lambda, order))
                .scale(&(sign_q(k as u64) * fact(k)));
            (lhs, rhs)
        }
        Identity::FE2 => {
            let lhs = array_gf(2 * k, &q(-(k as i64)), &one, order).rescale(&q(2));
            let rhs = central_factorial_gf(k, order)
                .mul(&y2_gf(k, &one, order)?)
                .scale(&fact(2 * k));
            (lhs, rhs)
        }
        Identity::FE3 => {
            let half = Rational::new(1, 2)?;
            let mut rhs = Series::zero(order);
            for l in 0..=k {
                let weight = ratio(fact(2 * l), fact(l))?;
                let term = central_factorial_gf(l, order)
                    .rescale(&half)
                    .mul(&array_gf(k - l, &half_of(l), &one, order).rescale(&-&half));
                rhs = Series::add(&rhs, &term, &one, &weight);
            }
            (
                central_factorial_gf(k, order),
                rhs.scale(&ratio(fact(k), fact(2 * k))?),
            )
        }
        Identity::FE4 => {
            let mut rhs = Series::zero(order);
            for j in 0..=k {
                let weight = binom(k, j) * sign_q((k - j) as u64);
                rhs = Series::add(&rhs, &euler2_gf(2 * j, order), &one, &weight);
            }
            let lhs = central_factorial_gf(k, order).rescale(&q(2));
            (lhs, rhs.scale(&(pow2(2 * k as i64) * inv_fact(2 * k))))
        }
        Identity::FE5 => {
            let inv = lambda.recip().map_err(|_| Error::LambdaZero)?;
            let mut rhs = Series::zero(order);
            for j in 0..=k {
                let term = stirling2_gf(j, lambda, order)
                    .mul(&stirling2_gf(k - j, &inv, order).rescale(&q(-1)));
                rhs = rhs.plus(&term);
            }
            let lhs = y2_gf(k, &-lambda, order)?;
            (
                lhs,
                rhs.scale(&(sign_q(k as u64) * ratio(fact(k), fact(2 * k))?)),
            )
        }
        Identity::FE6 => {
            let lhs = y2_gf(k, lambda, order)?;
            let lambda_pow = lambda.powi(-(k as i64))?;
            let rhs = if corrected {
                apostol_euler_gf(-2 * k as i64, &q(-(k as i64)), lambda, order)?
                    .scale(&(pow2(2 * k as i64) * lambda_pow * inv_fact(2 * k)))
            } else {
                let lambda_sq = lambda * lambda;
                let mut rhs = Series::zero(order);
                for j in 0..=k {
                    let term =
                        apostol_euler_gf(j as i64, &half_of(k), &lambda_sq, order)?.rescale(&q(2));
                    rhs = Series::add(&rhs, &term, &one, &binom(k, j));
                }
                rhs.scale(&(lambda_pow * inv_fact(2 * k)))
            };
            (lhs, rhs)
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "{other} is not a functional equation"
            )))
        }
    };
    Ok(sides)
}

/// Checks a functional equation coefficient by coefficient up to `order`
/// for every `k <= 6` and every λ of the default grid.
pub fn check_functional_equation(id: IdentityId, order: usize) -> Result<IdentityReport> {
    let base = ParamGrid::default();
    let grid = ParamGrid {
        series_order: order.max(base.series_order),
        ..base
    };
    check_functional_equation_on(id, &grid, order)
}

/// As [`check_functional_equation`], over `grid`'s `k` range and λ list.
pub fn check_functional_equation_on(
    id: IdentityId,
    grid: &ParamGrid,
    order: usize,
) -> Result<IdentityReport> {
    if !id.identity.is_functional_equation() {
        return Err(Error::InvalidParameter(format!(
            "{} is not a functional equation",
            id.identity
        )));
    }
    IdentityId::new(id.identity, id.variant)?;
    if order < 4 {
        return Err(Error::GridInvalid(format!(
            "functional equation order {order} is below 4"
        )));
    }
    let mut points = Vec::new();
    for k in 0..=grid.k_max {
        if id.identity.uses_lambda() {
            for l in &grid.lambdas {
                points.push(InstanceParams {
                    k: Some(k),
                    lambda: Some(l.clone()),
                    ..Default::default()
                });
            }
        } else {
            points.push(InstanceParams {
                k: Some(k),
                ..Default::default()
            });
        }
    }
    Ok(sweep(id, grid, points, |p| {
        let lambda = p.lambda.clone().unwrap_or_else(Rational::one);
        let (lhs, rhs) = functional_equation_sides(id, p.k.unwrap_or(0), &lambda, order)?;
        let mut params = p.clone();
        match lhs.first_difference(&rhs) {
            None => Ok((Rational::zero(), Rational::zero(), params)),
            Some(i) => {
                params.coefficient = Some(i);
                Ok((lhs.egf_coeff(i)?, rhs.egf_coeff(i)?, params))
            }
        }
    }))
}

/// Runs every registry entry, in registry order.
pub fn audit_all(grid: &ParamGrid) -> Result<Vec<IdentityReport>> {
    grid.validate()?;
    registry()
        .into_par_iter()
        .map(|id| check_identity(id, grid))
        .collect()
}
