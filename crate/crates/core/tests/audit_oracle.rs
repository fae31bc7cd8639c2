//! Audit properties that need the series oracle or several audit runs.

use proptest::prelude::*;
use special_numbers::audit::{
    self, check_identity, check_identity_with, registry, Identity, IdentityId, ParamGrid,
    SeriesOracle,
};
use special_numbers::families::{self, b_gf, b_num, y1_num};
use special_numbers::Rational;

#[test]
fn corrected_variants_hold_on_the_series_route() {
    let grid = ParamGrid::default();
    let oracle = SeriesOracle::new();
    for id in registry()
        .into_iter()
        .filter(|id| id.variant == audit::Variant::Corrected)
    {
        let via_series = check_identity_with(id, &grid, &oracle).unwrap();
        assert!(via_series.passed(), "{id}: {:?}", via_series.counterexample);
        let via_closed = check_identity(id, &grid).unwrap();
        assert_eq!(via_series.checked, via_closed.checked);
    }
}

#[test]
fn as_stated_failures_agree_across_routes() {
    let grid = ParamGrid::new(
        6,
        3,
        families::default_lambdas(),
        families::default_xs(),
        None,
    )
    .unwrap();
    let oracle = SeriesOracle::new();
    for id in ["T2", "T3", "T3_OddCase", "T4", "T5", "T6", "T1", "I3", "I4"] {
        let id: IdentityId = id.parse().unwrap();
        let a = check_identity(id, &grid).unwrap();
        let b = check_identity_with(id, &grid, &oracle).unwrap();
        assert_eq!(a, b, "{id}");
    }
}

#[test]
fn counterexamples_are_minimal() {
    let grid = ParamGrid::default();
    for report in audit::audit_all(&grid).unwrap() {
        let Some(c) = &report.counterexample else {
            continue;
        };
        let id = report.identity;
        if id.identity.is_functional_equation() {
            let k = c.params.k.unwrap();
            if k > 0 {
                let smaller = ParamGrid {
                    k_max: k - 1,
                    ..grid.clone()
                };
                assert!(
                    check_identity(id, &smaller).unwrap().passed(),
                    "{id} below k={k}"
                );
            }
            continue;
        }
        let n = c.params.n.unwrap();
        if n > 0 {
            let smaller = ParamGrid::new(
                n - 1,
                grid.k_max,
                grid.lambdas.clone(),
                grid.xs.clone(),
                None,
            )
            .unwrap();
            assert!(
                check_identity(id, &smaller).unwrap().passed(),
                "{id} below n={n}"
            );
        }
        let k = c.params.k.unwrap();
        if k > 0 {
            let smaller =
                ParamGrid::new(n, k - 1, grid.lambdas.clone(), grid.xs.clone(), None).unwrap();
            assert!(
                check_identity(id, &smaller).unwrap().passed(),
                "{id} at n<={n}, k<{k}"
            );
        }
    }
}

#[test]
fn report_serialization_is_deterministic() {
    let grid = ParamGrid::new(
        5,
        3,
        families::default_lambdas(),
        families::default_xs(),
        None,
    )
    .unwrap();
    let a = serde_json::to_string(&audit::audit_all(&grid).unwrap()).unwrap();
    let b = serde_json::to_string(&audit::audit_all(&grid).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn b_three_ways() {
    let one = Rational::one();
    for k in 0..=8 {
        let series = b_gf(k, 12);
        for n in 0..=12 {
            let sum = Rational::from(b_num(n, k));
            assert_eq!(
                sum,
                y1_num(n, k, &one) * Rational::from(special_numbers::factorial(k as u64))
            );
            assert_eq!(sum, series.egf_coeff(n as usize).unwrap());
        }
    }
}

#[test]
fn rook_identity_covers_m_up_to_five() {
    let report = check_identity(
        IdentityId::as_stated(Identity::RookT),
        &ParamGrid::default(),
    )
    .unwrap();
    assert!(report.passed());
    assert_eq!(report.checked, (1..=5).map(|m| m + 1).sum::<u64>());
}

fn lambda_strategy() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_filter_map("nonzero", |(n, d)| {
        (n != 0).then(|| Rational::new(n, d).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The corrected and always-true entries hold for λ off the default grid too.
    #[test]
    fn true_identities_hold_for_random_lambda(lambda in lambda_strategy()) {
        let grid = ParamGrid::new(6, 3, vec![lambda], families::default_xs(), None).unwrap();
        for id in ["T1", "T5:corrected", "T6:corrected", "FE1", "FE5", "FE6:corrected"] {
            let report = check_identity(id.parse().unwrap(), &grid).unwrap();
            prop_assert!(report.passed(), "{}: {:?}", id, report.counterexample);
        }
    }
}
