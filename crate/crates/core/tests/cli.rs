use special_numbers::cli::{self, TableRow, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
use special_numbers::families::{Family, FamilySpec};
use special_numbers::Rational;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("specnum").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn table_central_factorial_row() {
    let (code, out, _) = run(&["table", "--family", "T", "--n", "0..4", "--k", "0..3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("family,n,k_or_v,x,lambda,value\n"));
    assert!(out.lines().any(|l| l == "T,3,2,0,1,5"), "{out}");
    assert_eq!(out.lines().count(), 1 + 5 * 4);
}

#[test]
fn table_b_values() {
    let (code, out, _) = run(&["table", "--family", "B", "--n", "0..2", "--k", "3"]);
    assert_eq!(code, EXIT_OK);
    let values: Vec<&str> = out
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(values, ["8", "12", "24"]);
}

#[test]
fn table_rejects_bad_parameters() {
    let (code, _, err) = run(&["table", "--family", "y2", "--lambda", "0/1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(
        err.contains("--lambda") && err.contains("LambdaZero"),
        "{err}"
    );

    let (code, _, err) = run(&["table", "--family", "Q"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--family"));

    let (code, _, err) = run(&["table", "--family", "S2", "--k", "-2..1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--k"));

    let (code, _, err) = run(&["table", "--family", "E", "--k", "1", "--lambda", "-1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--lambda"));

    let (code, _, _) = run(&[
        "table", "--family", "E", "--k", "-2..0", "--lambda", "-1", "--n", "3",
    ]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn table_csv_round_trips_to_library_values() {
    let (code, out, _) = run(&[
        "table", "--family", "E", "--n", "0..6", "--k", "-2..2", "--x", "0,1/2", "--lambda",
        "2,-1/2",
    ]);
    assert_eq!(code, EXIT_OK);
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let rows: Vec<TableRow> = reader.deserialize().collect::<Result<_, _>>().unwrap();
    assert_eq!(rows.len(), 7 * 5 * 2 * 2);
    for row in rows {
        let spec = FamilySpec::new(
            Family::ApostolEuler,
            row.n,
            row.k_or_v,
            row.x.clone(),
            row.lambda.clone(),
        )
        .unwrap();
        assert_eq!(row.value, spec.evaluate().unwrap());
    }
}

#[test]
fn table_json_mirrors_csv_fields() {
    let (code, out, _) = run(&[
        "table", "--family", "y2", "--n", "1", "--k", "1", "--lambda", "2", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        json,
        serde_json::json!([{"family": "y2", "n": 1, "k_or_v": 1, "x": "0", "lambda": "2", "value": "3/4"}])
    );
}

#[test]
fn table_writes_to_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s2.csv");
    let (code, out, _) = run(&[
        "table",
        "--family",
        "S2",
        "--n",
        "3",
        "--k",
        "2",
        "--lambda",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    assert_eq!(
        std::fs::read_to_string(path).unwrap(),
        "family,n,k_or_v,x,lambda,value\nS2,3,2,0,1,3\n"
    );
}

#[test]
fn verify_exit_codes() {
    let (code, out, _) = run(&["verify", "--identity", "T1"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out, _) = run(&["verify", "--identity", "T4", "--format", "json"]);
    assert_eq!(code, EXIT_FAIL);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        json["counterexample"]["params"],
        serde_json::json!({"n": 1, "k": 1})
    );
    let (code, _, _) = run(&["verify", "--identity", "T4:corrected"]);
    assert_eq!(code, EXIT_OK);
    let (code, _, err) = run(&["verify", "--identity", "T9"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--identity"));
    let (code, _, _) = run(&["verify", "--identity", "T1:corrected"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn verify_dump_series_prints_both_sides() {
    let (code, out, err) = run(&[
        "verify",
        "--identity",
        "FE3",
        "--n-max",
        "2",
        "--k-max",
        "2",
        "--dump-series",
    ]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("FE3,as_stated,fail"));
    assert!(
        err.contains("# FE3 k=1;coefficient=1 lhs\n0: 0\n1: 0\n"),
        "{err}"
    );
    assert!(
        err.contains("# FE3 k=1;coefficient=1 rhs\n0: 0\n1: -1/4\n"),
        "{err}"
    );
}

#[test]
fn audit_minimal_grid_all_pass() {
    let (code, out, _) = run(&["audit", "--n-max", "0", "--k-max", "0", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    let reports = json.as_array().unwrap();
    assert_eq!(reports.len(), 23);
    for r in reports {
        assert_eq!(r["status"], "pass", "{r}");
        assert!(r["counterexample"].is_null());
    }
}

#[test]
fn audit_expect_detects_drift_and_bad_manifests() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("golden.json");
    let args = ["audit", "--n-max", "3", "--k-max", "2", "--format", "json"];
    let (code, out, _) = run(&args);
    assert_eq!(code, EXIT_OK);
    std::fs::write(&manifest, &out).unwrap();

    let mut with_expect = args.to_vec();
    with_expect.extend(["--expect", manifest.to_str().unwrap()]);
    assert_eq!(run(&with_expect).0, EXIT_OK);

    std::fs::write(&manifest, out.replacen("\"pass\"", "\"fail\"", 1)).unwrap();
    let (code, _, err) = run(&with_expect);
    assert_eq!(code, EXIT_FAIL);
    assert!(err.contains("audit drift"));

    std::fs::write(&manifest, "not json").unwrap();
    assert_eq!(run(&with_expect).0, EXIT_USAGE);
    let missing = dir.path().join("missing.json");
    assert_eq!(
        run(&[
            "audit",
            "--n-max",
            "0",
            "--expect",
            missing.to_str().unwrap()
        ])
        .0,
        EXIT_USAGE
    );
}

#[test]
fn audit_rejects_zero_lambda_and_short_series() {
    let (code, _, err) = run(&["audit", "--lambda", "1,0"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--lambda"));
    let (code, _, err) = run(&["audit", "--n-max", "4", "--series-order", "11"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--series-order"));
}

#[test]
fn rook_command() {
    let (code, out, _) = run(&["rook", "--m", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "k,placements,central_factorial,match\n0,1,1,✓\n1,5,5,✓\n2,1,1,✓\n"
    );
    let (code, out, _) = run(&["rook", "--m", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "k,placements,central_factorial,match\n0,1,1,✓\n1,1,1,✓\n"
    );
    let (code, _, err) = run(&["rook", "--m", "9"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--m"));
    assert_eq!(run(&["rook", "--m", "0"]).0, EXIT_USAGE);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["table"]).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn lambda_values_parse_as_rationals() {
    let (code, out, _) = run(&[
        "table", "--family", "y1", "--n", "0", "--k", "2", "--lambda", "-1/2,3/5",
    ]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    let expected = |l: &str| {
        let l: Rational = l.parse().unwrap();
        ((&l + Rational::one()).pow(2))
            .checked_div(&Rational::from(2))
            .unwrap()
            .to_string()
    };
    assert_eq!(
        rows,
        [
            format!("y1,0,2,0,-1/2,{}", expected("-1/2")),
            format!("y1,0,2,0,3/5,{}", expected("3/5"))
        ]
    );
}
