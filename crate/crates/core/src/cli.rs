//! Command-line front end: `bound`, `table`, `verify` and `scan`.
//!
//! Every command writes either one JSON [`OutputRecord`] or CSV with a
//! header row to stdout. Diagnostics go to stderr. Exit codes are
//! [`EXIT_OK`], [`EXIT_FAILURE`], [`EXIT_VALIDITY`] and [`EXIT_USAGE`].

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::bounds::{
    explicit_bound_table, kahler_dirichlet_bound, kahler_neumann_bound, lichnerowicz_comparison,
    riemannian_dirichlet_bound, riemannian_neumann_bound, BoundResult, SolverConfig,
};
use crate::coefficients::CurvatureParams;
use crate::error::Error;
use crate::verification::suites::{run_suite, Suite, DEFAULT_SEED};

pub const SCHEMA_VERSION: &str = "1.0";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_VALIDITY: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Largest accepted `|computed/expected − 1|` in `table prop13`.
pub const TABLE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub warnings: Vec<String>,
}

#[derive(Parser, Debug)]
#[command(name = "kahler-bounds", version, about = "Model eigenvalue bounds under Kähler and Riemannian curvature conditions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one model bound.
    Bound {
        #[arg(value_enum)]
        theorem: BoundKind,
        #[command(flatten)]
        params: Params,
    },
    /// Computed-versus-closed-form tables.
    Table {
        #[arg(value_enum)]
        table: TableKind,
        #[command(flatten)]
        params: Params,
        /// Diameter grid `lo:hi:step` for the Lichnerowicz table.
        #[arg(long = "D-grid", allow_hyphen_values = true)]
        d_grid: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Bound as a function of one parameter, as plot data.
    Scan {
        #[arg(long, value_enum)]
        param: ScanParam,
        /// `lo:hi:step`, inclusive of `hi`.
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BoundKind {
    KahlerNeumann,
    KahlerDirichlet,
    RiemannianNeumann,
    RiemannianDirichlet,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableKind {
    #[value(name = "prop13")]
    ClosedForms,
    Lichnerowicz,
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum ScanParam {
    #[value(name = "D")]
    D,
    K1,
    K2,
    Lambda,
    #[value(name = "R")]
    R,
}

impl ScanParam {
    fn label(self) -> &'static str {
        match self {
            ScanParam::D => "D",
            ScanParam::K1 => "k1",
            ScanParam::K2 => "k2",
            ScanParam::Lambda => "lambda",
            ScanParam::R => "R",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Copy)]
struct SolverArgs {
    /// Shooting tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Finite-difference grid size.
    #[arg(long, default_value_t = 2000)]
    grid: usize,
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig, String> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(format!("--tol must lie in (0, 1), got {}", self.tol));
        }
        if self.grid < 16 {
            return Err(format!("--grid must be at least 16, got {}", self.grid));
        }
        Ok(SolverConfig {
            shoot_tol: self.tol,
            fd_grid: self.grid,
            ..SolverConfig::default()
        })
    }
}

#[derive(Args, Debug, Clone)]
#[command(allow_negative_numbers = true)]
struct Params {
    /// Complex dimension m.
    #[arg(long)]
    m: Option<u32>,
    /// Holomorphic sectional curvature bound κ₁ (H ≥ 4κ₁).
    #[arg(long, allow_hyphen_values = true)]
    k1: Option<f64>,
    /// Orthogonal Ricci bound κ₂ (Ric⊥ ≥ 2(m−1)κ₂).
    #[arg(long, allow_hyphen_values = true)]
    k2: Option<f64>,
    /// Diameter D.
    #[arg(long = "D", allow_hyphen_values = true)]
    d: Option<f64>,
    /// Boundary second fundamental form bound Λ.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    /// Inradius R.
    #[arg(long = "R", allow_hyphen_values = true)]
    r: Option<f64>,
    /// Real dimension n.
    #[arg(long)]
    n: Option<u32>,
    /// Ricci bound κ (Ric ≥ (n−1)κ).
    #[arg(long, allow_hyphen_values = true)]
    k: Option<f64>,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

impl Params {
    fn inputs(&self) -> Map<String, Value> {
        let mut map = Map::new();
        let mut put = |key: &str, v: Option<Value>| {
            if let Some(v) = v {
                map.insert(key.to_string(), v);
            }
        };
        put("m", self.m.map(Value::from));
        put("k1", self.k1.map(Value::from));
        put("k2", self.k2.map(Value::from));
        put("D", self.d.map(Value::from));
        put("lambda", self.lambda.map(Value::from));
        put("R", self.r.map(Value::from));
        put("n", self.n.map(Value::from));
        put("k", self.k.map(Value::from));
        put("tol", Some(self.solver.tol.into()));
        put("grid", Some(self.solver.grid.into()));
        map
    }
}

/// Failure of a command, carrying the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_validity() {
            EXIT_VALIDITY
        } else if matches!(e, Error::Domain(_) | Error::InvalidInput(_)) {
            EXIT_USAGE
        } else {
            EXIT_FAILURE
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = std::result::Result<Output, Failure>;

/// Rendered command output plus the exit code to return after printing.
struct Output {
    text: String,
    code: i32,
    diagnostics: Vec<String>,
}

fn require<T: Copy>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::usage(format!("missing required flag --{flag}")))
}

fn json_text(command: &str, inputs: Value, results: Value, warnings: Vec<String>) -> String {
    let record = OutputRecord {
        schema_version: SCHEMA_VERSION.to_string(),
        command: command.to_string(),
        inputs,
        results,
        warnings,
    };
    let mut s = serde_json::to_string_pretty(&record).expect("output record serializes");
    s.push('\n');
    s
}

/// Parses `lo:hi:step` into the inclusive grid `lo, lo + step, …, ≤ hi`.
pub fn parse_range(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("range '{text}' is not of the form lo:hi:step"));
    }
    let mut nums = [0.0; 3];
    for (slot, p) in nums.iter_mut().zip(&parts) {
        *slot = p
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("range '{text}': '{p}' is not a number"))?;
        if !slot.is_finite() {
            return Err(format!("range '{text}' contains a non-finite value"));
        }
    }
    let [lo, hi, step] = nums;
    if step <= 0.0 {
        return Err(format!("range '{text}': step must be positive"));
    }
    if hi < lo {
        return Err(format!("range '{text}': hi is below lo"));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if count > 100_000 {
        return Err(format!("range '{text}' has {count} points; at most 100000 are allowed"));
    }
    Ok((0..count).map(|i| lo + i as f64 * step).collect())
}

fn kahler_params(p: &Params) -> Result<CurvatureParams, Failure> {
    Ok(CurvatureParams::new(
        require(p.m, "m")?,
        p.k1.unwrap_or(0.0),
        p.k2.unwrap_or(0.0),
    )?)
}

fn evaluate_bound(kind: BoundKind, p: &Params, config: &SolverConfig) -> Result<BoundResult, Failure> {
    Ok(match kind {
        BoundKind::KahlerNeumann => kahler_neumann_bound(&kahler_params(p)?, require(p.d, "D")?, config)?,
        BoundKind::KahlerDirichlet => kahler_dirichlet_bound(
            &kahler_params(p)?,
            p.lambda.unwrap_or(0.0),
            require(p.r, "R")?,
            config,
        )?,
        BoundKind::RiemannianNeumann => {
            riemannian_neumann_bound(require(p.n, "n")?, p.k.unwrap_or(0.0), require(p.d, "D")?, config)?
        }
        BoundKind::RiemannianDirichlet => riemannian_dirichlet_bound(
            require(p.n, "n")?,
            p.k.unwrap_or(0.0),
            p.lambda.unwrap_or(0.0),
            require(p.r, "R")?,
            config,
        )?,
    })
}

fn limit_warning(b: &BoundResult) -> Option<String> {
    b.limit.then(|| {
        format!(
            "interval endpoint {} is a zero of the weight; value obtained by the limit procedure",
            b.problem.length
        )
    })
}

fn cmd_bound(kind: BoundKind, p: &Params) -> CmdResult {
    let config = p.solver.config().map_err(Failure::usage)?;
    let b = evaluate_bound(kind, p, &config)?;
    let warnings: Vec<String> = limit_warning(&b).into_iter().collect();
    let name = kind.to_possible_value().expect("named variant").get_name().to_string();
    let text = match p.format {
        Format::Json => json_text(
            &format!("bound {name}"),
            Value::Object(p.inputs()),
            serde_json::to_value(&b).expect("bound serializes"),
            warnings,
        ),
        Format::Csv => format!(
            "theorem,value,shooting,finite_difference,fd_error_estimate,method_agreement,limit\n{name},{},{},{},{},{},{}\n",
            b.value, b.shooting, b.finite_difference, b.fd_error_estimate, b.method_agreement, b.limit
        ),
    };
    Ok(Output {
        text,
        code: EXIT_OK,
        diagnostics: Vec::new(),
    })
}

fn cmd_table(kind: TableKind, p: &Params, d_grid: Option<&str>) -> CmdResult {
    let config = p.solver.config().map_err(Failure::usage)?;
    match kind {
        TableKind::ClosedForms => {
            let rows = explicit_bound_table(&config)?;
            let bad: Vec<String> = rows
                .iter()
                .filter(|r| !((r.ratio - 1.0).abs() <= TABLE_TOLERANCE))
                .map(|r| format!("{} m = {}: ratio {} deviates beyond {TABLE_TOLERANCE}", r.family, r.m, r.ratio))
                .collect();
            let text = match p.format {
                Format::Json => json_text(
                    "table prop13",
                    json!({ "tol": p.solver.tol, "grid": p.solver.grid, "row_tolerance": TABLE_TOLERANCE }),
                    serde_json::to_value(&rows).expect("rows serialize"),
                    bad.clone(),
                ),
                Format::Csv => {
                    let mut s = String::from("family,m,k1,k2,D,computed,expected,ratio,limit\n");
                    for r in &rows {
                        s.push_str(&format!(
                            "{},{},{},{},{},{},{},{},{}\n",
                            r.family, r.m, r.kappa1, r.kappa2, r.diameter, r.computed, r.expected, r.ratio, r.limit
                        ));
                    }
                    s
                }
            };
            Ok(Output {
                text,
                code: if bad.is_empty() { EXIT_OK } else { EXIT_FAILURE },
                diagnostics: bad,
            })
        }
        TableKind::Lichnerowicz => {
            let params = kahler_params(p)?;
            let grid = parse_range(require(d_grid, "D-grid")?).map_err(Failure::usage)?;
            let mut rows = Vec::with_capacity(grid.len());
            for d in grid {
                rows.push(lichnerowicz_comparison(&params, d, &config)?);
            }
            let bad: Vec<String> = rows
                .iter()
                .filter(|r| r.margin < -1e-9 * r.reference_bound)
                .map(|r| format!("negative margin {} at D = {}", r.margin, r.bound.problem.length * 2.0))
                .collect();
            let text = match p.format {
                Format::Json => {
                    let mut inputs = p.inputs();
                    inputs.insert("D_grid".into(), Value::from(d_grid.unwrap_or_default()));
                    let results: Vec<Value> = rows
                        .iter()
                        .map(|r| {
                            json!({
                                "D": r.bound.problem.length * 2.0,
                                "bound": r.bound.value,
                                "reference": r.reference_bound,
                                "reference_name": r.reference_name,
                                "margin": r.margin,
                                "limit": r.bound.limit,
                            })
                        })
                        .collect();
                    json_text("table lichnerowicz", Value::Object(inputs), Value::from(results), bad.clone())
                }
                Format::Csv => {
                    let mut s = String::from("D,bound,reference,margin\n");
                    for r in &rows {
                        s.push_str(&format!(
                            "{},{},{},{}\n",
                            r.bound.problem.length * 2.0,
                            r.bound.value,
                            r.reference_bound,
                            r.margin
                        ));
                    }
                    s
                }
            };
            Ok(Output {
                text,
                code: if bad.is_empty() { EXIT_OK } else { EXIT_FAILURE },
                diagnostics: bad,
            })
        }
    }
}

fn cmd_verify(suite: &str, seed: u64, solver: &SolverArgs, format: Format) -> CmdResult {
    let mut config = solver.config().map_err(Failure::usage)?;
    // suites pin their own tolerances; only tighten the shooting tolerance
    config.shoot_tol = config.shoot_tol.min(SolverConfig::default().shoot_tol);
    let suite: Suite = suite.parse().map_err(|e: Error| Failure::usage(e.to_string()))?;
    let report = run_suite(suite, seed, &config);
    let failures: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} / {} failed: {}", c.suite, c.check, c.computed))
        .collect();
    let text = match format {
        Format::Json => json_text(
            &format!("verify {suite}"),
            json!({ "suite": suite.to_string(), "seed": seed, "grid": config.fd_grid }),
            serde_json::to_value(&report).expect("report serializes"),
            failures.clone(),
        ),
        Format::Csv => {
            let mut s = String::from("suite,check,passed,margin\n");
            for c in &report.checks {
                s.push_str(&format!("{},{},{},{}\n", c.suite, c.check, c.passed, c.margin));
            }
            s
        }
    };
    Ok(Output {
        text,
        code: if report.all_passed() { EXIT_OK } else { EXIT_FAILURE },
        diagnostics: failures,
    })
}

fn scan_point(param: ScanParam, x: f64, p: &Params, config: &SolverConfig) -> crate::Result<f64> {
    let m = p.m.ok_or_else(|| Error::InvalidInput("missing required flag --m".into()))?;
    let mut k1 = p.k1.unwrap_or(0.0);
    let mut k2 = p.k2.unwrap_or(0.0);
    let mut lambda = p.lambda.unwrap_or(0.0);
    let mut d = p.d;
    let mut r = p.r;
    match param {
        ScanParam::D => d = Some(x),
        ScanParam::K1 => k1 = x,
        ScanParam::K2 => k2 = x,
        ScanParam::Lambda => lambda = x,
        ScanParam::R => r = Some(x),
    }
    let params = CurvatureParams::new(m, k1, k2)?;
    let dirichlet = matches!(param, ScanParam::Lambda | ScanParam::R) || (d.is_none() && r.is_some());
    if dirichlet {
        let r = r.ok_or_else(|| Error::InvalidInput("missing required flag --R".into()))?;
        Ok(kahler_dirichlet_bound(&params, lambda, r, config)?.value)
    } else {
        let d = d.ok_or_else(|| Error::InvalidInput("missing required flag --D".into()))?;
        Ok(kahler_neumann_bound(&params, d, config)?.value)
    }
}

fn cmd_scan(param: ScanParam, range: &str, p: &Params) -> CmdResult {
    let config = p.solver.config().map_err(Failure::usage)?;
    let grid = parse_range(range).map_err(Failure::usage)?;
    let mut rows = Vec::with_capacity(grid.len());
    let mut warnings = Vec::new();
    for &x in &grid {
        match scan_point(param, x, p, &config) {
            Ok(v) => rows.push((x, v)),
            Err(e) if e.is_validity() => {
                warnings.push(format!(
                    "{} = {x}: {e}; {} of {} rows truncated",
                    param.label(),
                    grid.len() - rows.len(),
                    grid.len()
                ));
                break;
            }
            Err(e) => return Err(e.into()),
        }
    }
    if rows.is_empty() {
        let message = warnings.pop().unwrap_or_else(|| "scan produced no rows".into());
        return Err(Failure {
            code: EXIT_VALIDITY,
            message,
        });
    }
    let mut code = EXIT_OK;
    if param == ScanParam::D && rows.windows(2).any(|w| !(w[1].1 < w[0].1)) {
        warnings.push("bound is not strictly decreasing in D over the scanned range".into());
        code = EXIT_FAILURE;
    }
    let label = param.label();
    let text = match p.format {
        Format::Csv => {
            let mut s = format!("{label},bound\n");
            for (x, v) in &rows {
                s.push_str(&format!("{x},{v}\n"));
            }
            s
        }
        Format::Json => {
            let mut inputs = p.inputs();
            inputs.insert("param".into(), label.into());
            inputs.insert("range".into(), range.into());
            let results: Vec<Value> = rows.iter().map(|(x, v)| json!({ label: x, "bound": v })).collect();
            json_text("scan", Value::Object(inputs), Value::from(results), warnings.clone())
        }
    };
    Ok(Output {
        text,
        code,
        diagnostics: warnings,
    })
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{text}");
                EXIT_OK
            } else {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            };
        }
    };
    let result = match &cli.command {
        Command::Bound { theorem, params } => cmd_bound(*theorem, params),
        Command::Table { table, params, d_grid } => cmd_table(*table, params, d_grid.as_deref()),
        Command::Verify {
            suite,
            seed,
            solver,
            format,
        } => cmd_verify(suite, *seed, solver, *format),
        Command::Scan { param, range, params } => cmd_scan(*param, range, params),
    };
    match result {
        Ok(output) => {
            for d in &output.diagnostics {
                let _ = writeln!(err, "warning: {d}");
            }
            if out.write_all(output.text.as_bytes()).is_err() {
                return EXIT_FAILURE;
            }
            output.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0:1:0.5").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_range("-1:0.9:0.1").unwrap().len(), 20);
        assert_eq!(parse_range("0.5:3:0.25").unwrap().len(), 11);
        assert!(parse_range("1:0:0.1").is_err());
        assert!(parse_range("0:1:0").is_err());
        assert!(parse_range("0:1").is_err());
        assert!(parse_range("a:1:0.1").is_err());
    }

    #[test]
    fn help_exits_zero() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["kahler-bounds", "--help"], &mut out, &mut err), EXIT_OK);
        assert!(String::from_utf8(out).unwrap().contains("bound"));
    }
}
