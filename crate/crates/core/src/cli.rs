//! The `specnum` command line.
//!
//! Exit codes: 0 on success or a passing check, 1 on a failing check or audit
//! drift, 2 on usage errors.

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::audit::{self, IdentityId, IdentityReport, ParamGrid, SummaryRow};
use crate::exact::Rational;
use crate::families::{self, Family, FamilySpec};
use crate::oracles;
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "specnum",
    version,
    about = "Exact special-number tables, identity checks and rook cross-checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a table of family values.
    Table(TableArgs),
    /// Check one identity or functional equation.
    Verify(VerifyArgs),
    /// Check every registry entry.
    Audit(AuditArgs),
    /// Compare rook placement counts with central factorial numbers.
    Rook(RookArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// S2, A, T, y1, y2, B, E or Estar.
    #[arg(long)]
    pub family: String,
    /// Sequence index range, `a..b` (inclusive) or a single value.
    #[arg(long, default_value = "0..12", allow_hyphen_values = true)]
    pub n: String,
    /// Second index (v, k, or Apostol-Euler order) range.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// Comma-separated x values for polynomial families.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Vec<String>,
    /// Comma-separated lambda values, `num/den`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Vec<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long = "n-max", alias = "n", default_value_t = 12)]
    pub n_max: u32,
    #[arg(long = "k-max", alias = "k", default_value_t = 6)]
    pub k_max: u32,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Vec<String>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Vec<String>,
    /// Truncation order for series checks (default 2*n_max+4).
    #[arg(long = "series-order")]
    pub series_order: Option<usize>,
    /// Print both sides of failing functional equations to stderr.
    #[arg(long = "dump-series")]
    pub dump_series: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Registry id, e.g. `T1`, `T4:corrected`, `FE3`.
    #[arg(long)]
    pub identity: String,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Compare against a stored JSON audit and exit 1 on any difference.
    #[arg(long)]
    pub expect: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct RookArgs {
    #[arg(long)]
    pub m: u32,
    #[command(flatten)]
    pub output: Output,
}

/// One row of `table` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub family: String,
    pub n: u32,
    pub k_or_v: i64,
    pub x: Rational,
    pub lambda: Rational,
    pub value: Rational,
}

/// One row of `rook` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RookRow {
    pub k: u32,
    pub placements: String,
    pub central_factorial: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

struct Usage(String);

impl Usage {
    fn flag(flag: &str, err: impl std::fmt::Display) -> Self {
        Usage(format!("{flag}: {err}"))
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Table(args) => cmd_table(&args, stdout),
        Command::Verify(args) => cmd_verify(&args, stdout, stderr),
        Command::Audit(args) => cmd_audit(&args, stdout, stderr),
        Command::Rook(args) => cmd_rook(&args, stdout),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn parse_range_u32(flag: &str, s: &str) -> Result<RangeInclusive<u32>, Usage> {
    let r = parse_range(flag, s)?;
    let lo = u32::try_from(*r.start())
        .map_err(|_| Usage::flag(flag, format!("{} is negative or too large", r.start())))?;
    let hi = u32::try_from(*r.end())
        .map_err(|_| Usage::flag(flag, format!("{} is negative or too large", r.end())))?;
    Ok(lo..=hi)
}

/// `"a..b"` inclusive on both ends, or a single integer.
pub fn parse_range_str(s: &str) -> Result<RangeInclusive<i64>, String> {
    let int = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| format!("cannot parse {t:?} as an integer"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (int(a)?, int(b)?),
        None => {
            let v = int(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

fn parse_range(flag: &str, s: &str) -> Result<RangeInclusive<i64>, Usage> {
    parse_range_str(s).map_err(|e| Usage::flag(flag, e))
}

fn parse_rationals(flag: &str, values: &[String]) -> Result<Vec<Rational>, Usage> {
    values
        .iter()
        .map(|v| v.parse::<Rational>().map_err(|e| Usage::flag(flag, e)))
        .collect()
}

fn open_output(output: &Output) -> Result<Option<fs::File>, Usage> {
    output
        .out
        .as_ref()
        .map(|p| {
            fs::File::create(p).map_err(|e| Usage::flag("--out", format!("{}: {e}", p.display())))
        })
        .transpose()
}

fn emit(output: &Output, stdout: &mut dyn Write, text: &str) -> Result<(), Usage> {
    let written = match open_output(output)? {
        Some(mut f) => f.write_all(text.as_bytes()),
        None => stdout.write_all(text.as_bytes()),
    };
    written.map_err(|e| Usage(format!("write failed: {e}")))
}

fn to_csv<R: Serialize>(rows: &[R]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("csv rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 csv")
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Builds the rows of `table` for the given selectors.
pub fn table_rows(
    family: Family,
    ns: RangeInclusive<u32>,
    ks: RangeInclusive<i64>,
    xs: &[Rational],
    lambdas: &[Rational],
) -> Result<Vec<TableRow>, Error> {
    let xs = if family.uses_x() {
        xs.to_vec()
    } else {
        vec![Rational::zero()]
    };
    let lambdas = if family.uses_lambda() {
        lambdas.to_vec()
    } else {
        vec![Rational::one()]
    };
    let mut rows = Vec::new();
    for n in ns {
        for k in ks.clone() {
            for x in &xs {
                for lambda in &lambdas {
                    let spec = FamilySpec::new(family, n, k, x.clone(), lambda.clone())?;
                    rows.push(TableRow {
                        family: family.label().to_string(),
                        n,
                        k_or_v: k,
                        x: spec.x.clone(),
                        lambda: spec.lambda.clone(),
                        value: spec.evaluate()?,
                    });
                }
            }
        }
    }
    Ok(rows)
}

pub fn cmd_table_rows(args: &TableArgs) -> Result<Vec<TableRow>, String> {
    table_inner(args).map_err(|Usage(m)| m)
}

fn table_inner(args: &TableArgs) -> Result<Vec<TableRow>, Usage> {
    let family: Family = args
        .family
        .parse()
        .map_err(|e| Usage::flag("--family", e))?;
    let ns = parse_range_u32("--n", &args.n)?;
    let default_k = if family.signed_index() {
        "-6..6"
    } else {
        "0..6"
    };
    let ks = parse_range("--k", args.k.as_deref().unwrap_or(default_k))?;
    if !family.signed_index() && *ks.start() < 0 {
        return Err(Usage::flag(
            "--k",
            format!("family {family} needs a non-negative second index"),
        ));
    }
    let xs = if args.x.is_empty() {
        families::default_xs()
    } else {
        parse_rationals("--x", &args.x)?
    };
    let lambdas = if args.lambda.is_empty() {
        families::default_lambdas()
    } else {
        parse_rationals("--lambda", &args.lambda)?
    };
    if family.uses_lambda() {
        if family == Family::Y2 && lambdas.iter().any(Rational::is_zero) {
            return Err(Usage::flag("--lambda", Error::LambdaZero));
        }
        if family == Family::ApostolEuler && *ks.end() > 0 && lambdas.iter().any(|l| *l == -1) {
            return Err(Usage::flag("--lambda", Error::SingularKernel));
        }
    }
    table_rows(family, ns, ks, &xs, &lambdas).map_err(|e| Usage::flag("--k", e))
}

fn cmd_table(args: &TableArgs, stdout: &mut dyn Write) -> Result<i32, Usage> {
    let rows = table_inner(args)?;
    let text = match args.output.format {
        Format::Csv => to_csv(&rows),
        Format::Json => to_json(&rows),
    };
    emit(&args.output, stdout, &text)?;
    Ok(EXIT_OK)
}

fn build_grid(args: &GridArgs) -> Result<ParamGrid, Usage> {
    let lambdas = if args.lambda.is_empty() {
        families::default_lambdas()
    } else {
        parse_rationals("--lambda", &args.lambda)?
    };
    if lambdas.iter().any(Rational::is_zero) {
        return Err(Usage::flag("--lambda", Error::LambdaZero));
    }
    let xs = if args.x.is_empty() {
        families::default_xs()
    } else {
        parse_rationals("--x", &args.x)?
    };
    ParamGrid::new(args.n_max, args.k_max, lambdas, xs, args.series_order)
        .map_err(|e| Usage::flag("--series-order", e))
}

fn dump_failing_series(report: &IdentityReport, stderr: &mut dyn Write) {
    let (Some(c), true) = (
        &report.counterexample,
        report.identity.identity.is_functional_equation(),
    ) else {
        return;
    };
    let lambda = c.params.lambda.clone().unwrap_or_else(Rational::one);
    let k = c.params.k.unwrap_or(0);
    if let Ok((lhs, rhs)) =
        audit::functional_equation_sides(report.identity, k, &lambda, report.grid.series_order)
    {
        let _ = writeln!(stderr, "# {} {} lhs", report.identity, c.params);
        let _ = write!(stderr, "{}", lhs.dump());
        let _ = writeln!(stderr, "# {} {} rhs", report.identity, c.params);
        let _ = write!(stderr, "{}", rhs.dump());
    }
}

fn render_reports(reports: &[IdentityReport], format: Format, single: bool) -> String {
    match format {
        Format::Csv => to_csv(&reports.iter().map(SummaryRow::from).collect::<Vec<_>>()),
        Format::Json if single => to_json(&reports[0]),
        Format::Json => to_json(reports),
    }
}

fn cmd_verify(
    args: &VerifyArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Usage> {
    let id: IdentityId = args
        .identity
        .parse()
        .map_err(|e| Usage::flag("--identity", e))?;
    let grid = build_grid(&args.grid)?;
    let report = audit::check_identity(id, &grid).map_err(|e| Usage::flag("--identity", e))?;
    if args.grid.dump_series {
        dump_failing_series(&report, stderr);
    }
    let code = if report.passed() { EXIT_OK } else { EXIT_FAIL };
    emit(
        &args.output,
        stdout,
        &render_reports(std::slice::from_ref(&report), args.output.format, true),
    )?;
    Ok(code)
}

fn cmd_audit(
    args: &AuditArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Usage> {
    let grid = build_grid(&args.grid)?;
    let expected = match &args.expect {
        None => None,
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Usage::flag("--expect", format!("{}: {e}", path.display())))?;
            let value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Usage::flag("--expect", format!("{}: {e}", path.display())))?;
            Some(value)
        }
    };
    let reports = audit::audit_all(&grid).map_err(|e| Usage(e.to_string()))?;
    if args.grid.dump_series {
        reports.iter().for_each(|r| dump_failing_series(r, stderr));
    }
    emit(
        &args.output,
        stdout,
        &render_reports(&reports, args.output.format, false),
    )?;
    if let Some(expected) = expected {
        let actual = serde_json::to_value(&reports).expect("reports serialize");
        if actual != expected {
            let _ = writeln!(
                stderr,
                "audit drift: output differs from {}",
                args.expect.as_ref().expect("set").display()
            );
            if let (Some(a), Some(e)) = (actual.as_array(), expected.as_array()) {
                for (i, (x, y)) in a.iter().zip(e).enumerate().filter(|(_, (x, y))| x != y) {
                    let _ = writeln!(stderr, "  entry {i}: expected {y}, got {x}");
                }
                if a.len() != e.len() {
                    let _ = writeln!(stderr, "  expected {} entries, got {}", e.len(), a.len());
                }
            }
            return Ok(EXIT_FAIL);
        }
    }
    Ok(EXIT_OK)
}

/// Rows of `rook --m M`.
pub fn rook_rows(m: u32) -> Result<Vec<RookRow>, Error> {
    (0..=m)
        .map(|k| {
            let count = oracles::count_rook_placements(m, k)?;
            let t = families::central_factorial(m + 1, m + 1 - k);
            Ok(RookRow {
                k,
                matches: Rational::from(count.clone()) == t,
                placements: count.to_string(),
                central_factorial: t.to_string(),
            })
        })
        .collect()
}

fn cmd_rook(args: &RookArgs, stdout: &mut dyn Write) -> Result<i32, Usage> {
    if args.m == 0 || args.m > oracles::ROOK_BUDGET {
        return Err(Usage::flag(
            "--m",
            format!("board size must be in 1..={}", oracles::ROOK_BUDGET),
        ));
    }
    let rows = rook_rows(args.m).map_err(|e| Usage::flag("--m", e))?;
    let text = match args.output.format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut s = String::from("k,placements,central_factorial,match\n");
            for r in &rows {
                let mark = if r.matches { "✓" } else { "✗" };
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    r.k, r.placements, r.central_factorial, mark
                ));
            }
            s
        }
    };
    emit(&args.output, stdout, &text)?;
    Ok(if rows.iter().all(|r| r.matches) {
        EXIT_OK
    } else {
        EXIT_FAIL
    })
}
