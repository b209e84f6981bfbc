//! Command-line front end: argument parsing, dispatch, JSON/CSV output.

use crate::bounds::{
    bound_report_with, c_order, derive_inequality_constants, lemma3_property_check, theorem1_bound, BoundConstants,
    C_EXP, C_EXP_REMARK, C_LIN, PRIME_CEILING,
};
use crate::error::Error;
use crate::explicit_formula::{verify_34_35, weil_residual, EULER_GAMMA, I_CEILING, J_CEILING};
use crate::fields::{alpha, parse_field_spec, quadratic_disc_of_x2_plus, KroneckerCharacter, NumberField};
use crate::lfunctions::{hardy_z, LFunctionSpec, DEFAULT_TOL};
use crate::primes::{
    chebyshev_psi, lambda_weighted_bound, lambda_weighted_sum, mangoldt_sieve_with_cap, quadratic_prime_sum,
    verify_lambda_sum_bound, weighted_prime_sum_with_f, DEFAULT_SIEVE_CAP, ROSSER_PSI_CONSTANT,
};
use crate::zeros::{scan_zeros, tau_quadratic, LowestZeroResult, DEFAULT_GRID_STEP};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::time::Instant;

pub const SCHEMA_VERSION: u32 = 1;
pub const SIEVE_CAP_ENV: &str = "LOWZERO_SIEVE_CAP";
pub const THREADS_ENV: &str = "LOWZERO_THREADS";
/// Scan ceiling for τ(K); above τ₀ so ζ alone always supplies a zero.
pub const TAU_CEILING: f64 = 15.0;

#[derive(Debug, Parser)]
#[command(name = "lowzero", version, about = "Lowest zeros of Dedekind zeta functions: bounds and computation")]
pub struct Cli {
    /// Output format; csv is available for table1 and zeros.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    /// Record wall-clock seconds in the output.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reproduce the seven-row comparison table.
    Table1 {
        /// Also compute τ for the two largest conductors (minutes).
        #[arg(long)]
        slow: bool,
    },
    /// Upper bounds for τ(K).
    Bound(BoundArgs),
    /// Lowest zero τ(K) of a quadratic field.
    Tau(TauArgs),
    /// Critical-line zeros of ζ or L(s, χ_d).
    Zeros(ZerosArgs),
    /// The real completed function at 1/2 + it.
    Lvalue(LvalueArgs),
    /// Prime sums.
    #[command(subcommand)]
    Primes(PrimesCommand),
    /// Verification suites.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Field given as x^k+c.
    #[arg(long, conflicts_with_all = ["disc", "degree", "r1"])]
    pub spec: Option<String>,
    /// Field discriminant, any size.
    #[arg(long, allow_hyphen_values = true, requires_all = ["degree", "r1"])]
    pub disc: Option<String>,
    #[arg(long)]
    pub degree: Option<u32>,
    /// Number of real places.
    #[arg(long)]
    pub r1: Option<u32>,
    /// ζ_K(1/2) = 0.
    #[arg(long)]
    pub central_zero: bool,
    /// Use constants assembled from the numerically observed suprema.
    #[arg(long)]
    pub recomputed_constants: bool,
}

#[derive(Debug, Args)]
pub struct TauArgs {
    /// The field Q(√−m), given as in x^2+m.
    #[arg(long, conflicts_with = "d")]
    pub quadratic_m: Option<u64>,
    /// Fundamental discriminant.
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<i64>,
    /// Give up above this height.
    #[arg(long, default_value_t = TAU_CEILING)]
    pub max_height: f64,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    /// Fundamental discriminant of the character.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "zeta")]
    pub d: Option<i64>,
    /// Riemann ζ instead.
    #[arg(long)]
    pub zeta: bool,
    #[arg(long)]
    pub max_height: f64,
    #[arg(long, default_value_t = DEFAULT_GRID_STEP)]
    pub grid_step: f64,
}

#[derive(Debug, Args)]
pub struct LvalueArgs {
    /// Fundamental discriminant of the character.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "zeta")]
    pub d: Option<i64>,
    /// Riemann ζ instead.
    #[arg(long)]
    pub zeta: bool,
    /// Height on the critical line.
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
}

#[derive(Debug, Subcommand)]
pub enum PrimesCommand {
    /// Chebyshev ψ(x).
    Psi {
        #[arg(long)]
        x: f64,
    },
    /// Σ Λ(n)/√n and the F_T-weighted prime sum up to e^T.
    Sum {
        #[arg(long = "T")]
        t: f64,
        /// Sum over prime ideals of this quadratic field instead of ℚ.
        #[arg(long, allow_hyphen_values = true)]
        quadratic_d: Option<i64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Both sides of the explicit formula for F_T.
    ExplicitFormula {
        /// Only `Q` is accepted.
        #[arg(long, conflicts_with = "quadratic_d")]
        field: Option<String>,
        /// Use ζ(s)L(s, χ_d) for this fundamental discriminant.
        #[arg(long, allow_hyphen_values = true)]
        quadratic_d: Option<i64>,
        /// Support parameter of F_T.
        #[arg(long = "T")]
        t: f64,
        /// Zeros up to this height enter the zero sum.
        #[arg(long, default_value_t = 100.0)]
        zero_height: f64,
    },
    /// J(F_T) and I(F_T) against their exponential ceilings.
    Integrals {
        #[arg(long, value_delimiter = ',', default_values_t = [0.314, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0])]
        grid: Vec<f64>,
    },
    /// Re-derive the constants of the bounds.
    Constants {
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Random instances of the threshold implication.
    Lemma3 {
        #[arg(long, default_value_t = 10_000)]
        instances: usize,
        #[arg(long, default_value_t = 20_240_601)]
        seed: u64,
    },
    /// Σ_{n ≤ e^T} Λ(n)/√n against 1.0389(2e^{T/2} − 1).
    LambdaSum {
        /// Comma-separated T values; defaults to a grid up to ln 1e8.
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<f64>>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Compute(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::FieldSpec { .. } | Error::NotFundamental(_) | Error::DegenerateField(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Compute(other),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Round every float to 15 significant digits.
pub fn round_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            let r: f64 = format!("{x:.14e}").parse().unwrap_or(x);
            serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_numbers).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_numbers(v))).collect()),
        other => other,
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

pub fn constants_block() -> Value {
    json!({
        "c_lin": C_LIN,
        "c_exp": C_EXP,
        "c_exp_remark": C_EXP_REMARK,
        "c_order": c_order(),
        "prime_ceiling": PRIME_CEILING,
        "j_ceiling": J_CEILING,
        "i_ceiling": I_CEILING,
        "rosser_psi": ROSSER_PSI_CONSTANT,
        "euler_gamma": EULER_GAMMA,
    })
}

struct Report {
    command: String,
    inputs: Value,
    results: Value,
    diagnostics: Vec<String>,
    tolerance: f64,
    csv: Option<String>,
}

impl Report {
    fn new(command: &str, inputs: Value, results: Value) -> Self {
        Self {
            command: command.into(),
            inputs,
            results,
            diagnostics: Vec::new(),
            tolerance: DEFAULT_TOL,
            csv: None,
        }
    }
}

/// Run a parsed command; returns the text for stdout.
pub fn run(cli: &Cli) -> CliResult<String> {
    let start = Instant::now();
    let report = dispatch(&cli.command)?;
    if cli.format == Format::Csv {
        return report
            .csv
            .ok_or_else(|| usage(format!("csv output is not available for `{}`", report.command)));
    }
    let seconds = cli.timing.then(|| start.elapsed().as_secs_f64());
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": report.command,
        "inputs": report.inputs,
        "results": report.results,
        "diagnostics": report.diagnostics,
        "constants_used": constants_block(),
        "tolerance": report.tolerance,
        "seconds": seconds,
    });
    let mut out = serde_json::to_string_pretty(&round_numbers(doc)).unwrap_or_default();
    out.push('\n');
    Ok(out)
}

fn dispatch(cmd: &Command) -> CliResult<Report> {
    match cmd {
        Command::Table1 { slow } => cmd_table1(*slow),
        Command::Bound(a) => cmd_bound(a),
        Command::Tau(a) => cmd_tau(a),
        Command::Zeros(a) => cmd_zeros(a),
        Command::Lvalue(a) => cmd_lvalue(a),
        Command::Primes(p) => cmd_primes(p),
        Command::Verify(v) => cmd_verify(v),
    }
}

/// One line of the comparison table: spec, α, τ (rows with a quadratic field), bound.
#[derive(Debug, Clone, Copy)]
pub struct Table1Reference {
    pub spec: &'static str,
    pub alpha: f64,
    pub tau: Option<f64>,
    pub bound: f64,
    /// τ needs a conductor beyond 10¹⁰ and is skipped without `--slow`.
    pub slow: bool,
}

pub const TABLE1: [Table1Reference; 7] = [
    Table1Reference { spec: "x^2+510510", alpha: 7.26472993307674, tau: Some(0.195366057287247), bound: 22.2098243056698, slow: false },
    Table1Reference { spec: "x^2+9699690", alpha: 8.73694942265996, tau: Some(0.250485767971509), bound: 6.93766313396318, slow: false },
    Table1Reference { spec: "x^2+223092870", alpha: 10.3046965306245, tau: Some(0.282126995483731), bound: 4.34561699877460, slow: false },
    Table1Reference { spec: "x^2+6469693230", alpha: 11.9883444456178, tau: Some(0.223870166465309), bound: 3.25543786648311, slow: true },
    Table1Reference { spec: "x^2+200560490130", alpha: 13.7053380478603, tau: Some(0.0869456767128933), bound: 2.67260773966497, slow: true },
    Table1Reference { spec: "x^3+30030", alpha: 7.97191372931969, tau: None, bound: 10.4864035098435, slow: false },
    Table1Reference { spec: "x^4+30030", alpha: 9.11875848185292, tau: None, bound: 6.00093283699129, slow: false },
];

pub const ALPHA_REL_TOL: f64 = 1e-9;
pub const BOUND_REL_TOL: f64 = 1e-3;
pub const TAU_ABS_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    OutOfScopeTau,
    SlowSkipped,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Row {
    pub spec: String,
    pub disc: String,
    pub alpha_computed: f64,
    pub alpha_reference: f64,
    pub tau_computed: Option<f64>,
    pub tau_reference: Option<f64>,
    pub tau_bracket_width: Option<f64>,
    pub bound_computed: Option<f64>,
    pub bound_reference: f64,
    pub tau_below_bound: Option<bool>,
    pub status: RowStatus,
    pub diagnostics: Vec<String>,
}

fn rel_err(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// τ(K) for a Table-1 style quadratic spec.
pub fn tau_for_spec(spec: &str) -> crate::Result<LowestZeroResult> {
    let field = parse_field_spec(spec)?;
    let d = field
        .disc_i64()
        .ok_or_else(|| crate::error::domain("discriminant exceeds i64"))?;
    tau_quadratic(d, TAU_CEILING)
}

pub fn table1_row(r: &Table1Reference, compute_tau: bool) -> Table1Row {
    let mut row = Table1Row {
        spec: r.spec.into(),
        disc: String::new(),
        alpha_computed: f64::NAN,
        alpha_reference: r.alpha,
        tau_computed: None,
        tau_reference: r.tau,
        tau_bracket_width: None,
        bound_computed: None,
        bound_reference: r.bound,
        tau_below_bound: None,
        status: RowStatus::Mismatch,
        diagnostics: Vec::new(),
    };
    let field = match parse_field_spec(r.spec).and_then(|f| alpha(&f).map(|a| (f, a))) {
        Ok((f, a)) => {
            row.disc = f.disc.to_string();
            row.alpha_computed = a;
            f
        }
        Err(e) => {
            row.diagnostics.push(e.to_string());
            return row;
        }
    };
    if !field.disc_is_field_disc {
        row.diagnostics
            .push("polynomial discriminant; maximality of the order is not checked".into());
    }
    row.bound_computed = theorem1_bound(row.alpha_computed);
    let mut ok = rel_err(row.alpha_computed, r.alpha) <= ALPHA_REL_TOL
        && row.bound_computed.is_some_and(|b| rel_err(b, r.bound) <= BOUND_REL_TOL);
    let mut status = RowStatus::Ok;
    match r.tau {
        None => status = RowStatus::OutOfScopeTau,
        Some(_) if r.slow && !compute_tau => status = RowStatus::SlowSkipped,
        Some(tau_ref) => match field.disc_i64().map(|d| tau_quadratic(d, TAU_CEILING)) {
            Some(Ok(res)) => {
                row.tau_computed = res.tau;
                row.tau_bracket_width = res.bracket_width;
                for dip in &res.suspected_even_order {
                    row.diagnostics
                        .push(format!("suspected even-order zero near t = {}", dip.t));
                }
                ok &= res.tau.is_some_and(|t| (t - tau_ref).abs() <= TAU_ABS_TOL);
                row.tau_below_bound = match (res.tau, row.bound_computed) {
                    (Some(t), Some(b)) => Some(t < b),
                    _ => None,
                };
            }
            Some(Err(e)) => {
                row.diagnostics.push(e.to_string());
                ok = false;
            }
            None => {
                row.diagnostics.push("discriminant exceeds i64".into());
                ok = false;
            }
        },
    }
    row.status = if ok { status } else { RowStatus::Mismatch };
    row
}

fn cmd_table1(slow: bool) -> CliResult<Report> {
    let mut rows = Vec::new();
    for r in &TABLE1 {
        if r.tau.is_some() && (!r.slow || slow) {
            eprintln!("table1: computing τ for {}", r.spec);
        }
        rows.push(table1_row(r, slow));
    }
    let all_ok = rows.iter().all(|r| r.status != RowStatus::Mismatch);
    let mut csv = String::from(
        "spec,disc,alpha_computed,alpha_reference,tau_computed,tau_reference,bound_computed,bound_reference,status\n",
    );
    let opt = |x: Option<f64>| x.map_or(String::new(), |v| format!("{v}"));
    for r in &rows {
        let status = serde_json::to_value(r.status)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default();
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{}",
            r.spec,
            r.disc,
            r.alpha_computed,
            r.alpha_reference,
            opt(r.tau_computed),
            opt(r.tau_reference),
            opt(r.bound_computed),
            r.bound_reference,
            status
        );
    }
    let mut report = Report::new("table1", json!({ "slow": slow }), json!({ "rows": to_value(&rows), "all_ok": all_ok }));
    report.diagnostics = rows
        .iter()
        .flat_map(|r| r.diagnostics.iter().map(move |d| format!("{}: {d}", r.spec)))
        .collect();
    report.csv = Some(csv);
    Ok(report)
}

fn field_from_bound_args(a: &BoundArgs) -> CliResult<NumberField> {
    if let Some(spec) = &a.spec {
        return Ok(parse_field_spec(spec)?);
    }
    match (&a.disc, a.degree, a.r1) {
        (Some(d), Some(n), Some(r1)) => {
            let disc: BigInt = d
                .parse()
                .map_err(|_| usage(format!("--disc `{d}` is not an integer")))?;
            if r1 > n || (n - r1) % 2 != 0 {
                return Err(usage(format!("r1 = {r1} is incompatible with degree {n}")));
            }
            Ok(NumberField::new(n, r1, (n - r1) / 2, disc)?)
        }
        _ => Err(usage("give --spec or all of --disc, --degree, --r1")),
    }
}

fn cmd_bound(a: &BoundArgs) -> CliResult<Report> {
    let field = field_from_bound_args(a)?;
    let mut diagnostics = Vec::new();
    let constants = if a.recomputed_constants {
        let audit = derive_inequality_constants(1e-8)?;
        diagnostics.push(format!(
            "recomputed constants: c_exp = {}, c_lin = {}",
            audit.sharp_exp_const, audit.sharp_lin_const
        ));
        BoundConstants::recomputed(&audit)
    } else {
        BoundConstants::published()
    };
    let report = bound_report_with(&field, a.central_zero, &constants)?;
    let inputs = json!({
        "spec": a.spec,
        "disc": field.disc.to_string(),
        "degree": field.degree,
        "r1": field.r1,
        "central_zero": a.central_zero,
        "recomputed_constants": a.recomputed_constants,
    });
    let mut r = Report::new("bound", inputs, to_value(&report));
    r.diagnostics = diagnostics;
    Ok(r)
}

fn cmd_tau(a: &TauArgs) -> CliResult<Report> {
    let d = match (a.quadratic_m, a.d) {
        (Some(m), None) => quadratic_disc_of_x2_plus(m)?,
        (None, Some(d)) => d,
        _ => return Err(usage("give --quadratic-m or --d")),
    };
    let res = tau_quadratic(d, a.max_height)?;
    let mut r = Report::new(
        "tau",
        json!({ "quadratic_m": a.quadratic_m, "d": d, "max_height": a.max_height }),
        to_value(&res),
    );
    r.diagnostics = res
        .suspected_even_order
        .iter()
        .map(|dip| format!("suspected even-order zero near t = {}", dip.t))
        .collect();
    Ok(r)
}

fn l_spec(d: Option<i64>, zeta: bool) -> CliResult<LFunctionSpec> {
    match (d, zeta) {
        (Some(d), false) => Ok(LFunctionSpec::from_discriminant(d)?),
        (None, true) => Ok(LFunctionSpec::riemann_zeta()),
        _ => Err(usage("give --d or --zeta")),
    }
}

fn cmd_zeros(a: &ZerosArgs) -> CliResult<Report> {
    let spec = l_spec(a.d, a.zeta)?;
    let scan = scan_zeros(&spec, a.max_height, a.grid_step)?;
    let mut csv = String::from("gamma,bracket_width\n");
    for z in &scan.zeros {
        let _ = writeln!(csv, "{:.12},{:.1e}", z.gamma, z.bracket_width);
    }
    let mut r = Report::new(
        "zeros",
        json!({ "d": a.d, "zeta": a.zeta, "max_height": a.max_height, "grid_step": a.grid_step }),
        to_value(&scan),
    );
    r.diagnostics = scan
        .suspected_even_order
        .iter()
        .map(|dip| format!("suspected even-order zero near t = {} (|Z| = {:e})", dip.t, dip.normalized))
        .collect();
    r.csv = Some(csv);
    Ok(r)
}

fn cmd_lvalue(a: &LvalueArgs) -> CliResult<Report> {
    let spec = l_spec(a.d, a.zeta)?;
    let v = hardy_z(&spec, a.t, DEFAULT_TOL)?;
    Ok(Report::new(
        "lvalue",
        json!({ "d": a.d, "zeta": a.zeta, "t": a.t }),
        json!({ "spec": to_value(&spec), "value": to_value(&v) }),
    ))
}

/// Sieve cap from the environment, defaulting to 10⁸.
pub fn sieve_cap() -> CliResult<u64> {
    match std::env::var(SIEVE_CAP_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| usage(format!("{SIEVE_CAP_ENV}=`{s}` is not a positive integer"))),
        Err(_) => Ok(DEFAULT_SIEVE_CAP),
    }
}

fn sieve_for(x: f64) -> CliResult<crate::primes::MangoldtTable> {
    let x_max = (x.floor() as u64).max(2);
    Ok(mangoldt_sieve_with_cap(x_max, sieve_cap()?)?)
}

fn cmd_primes(p: &PrimesCommand) -> CliResult<Report> {
    match p {
        PrimesCommand::Psi { x } => {
            let table = sieve_for(*x)?;
            let psi = chebyshev_psi(*x, &table)?;
            Ok(Report::new(
                "primes psi",
                json!({ "x": x }),
                json!({ "psi": psi, "rosser_bound": ROSSER_PSI_CONSTANT * x }),
            ))
        }
        PrimesCommand::Sum { t, quadratic_d } => {
            if !(*t > 0.0) {
                return Err(usage("--T must be positive"));
            }
            let table = sieve_for(t.exp())?;
            let weighted = match quadratic_d {
                None => weighted_prime_sum_with_f(*t, &table)?,
                Some(d) => quadratic_prime_sum(&KroneckerCharacter::new(*d)?, *t, &table)?,
            };
            Ok(Report::new(
                "primes sum",
                json!({ "T": t, "quadratic_d": quadratic_d }),
                json!({
                    "lambda_weighted_sum": lambda_weighted_sum(*t, &table)?,
                    "lambda_weighted_bound": lambda_weighted_bound(*t),
                    "f_weighted_prime_sum": weighted,
                }),
            ))
        }
    }
}

/// Grid for the Λ-sum check: T = 0.5, 1, …, 18 and ln 10⁸.
pub fn default_lambda_grid() -> Vec<f64> {
    let mut g: Vec<f64> = (1..=36).map(|k| 0.5 * k as f64).collect();
    g.push(1e8f64.ln() - 1e-12);
    g
}

fn cmd_verify(v: &VerifyCommand) -> CliResult<Report> {
    match v {
        VerifyCommand::ExplicitFormula {
            field,
            quadratic_d,
            t,
            zero_height,
        } => {
            let (k, chi) = match (field.as_deref(), quadratic_d) {
                (Some("Q") | Some("q"), None) => (NumberField::rationals(), None),
                (None, Some(d)) => (NumberField::quadratic(*d)?, Some(KroneckerCharacter::new(*d)?)),
                (Some(other), _) => return Err(usage(format!("--field accepts only Q, got `{other}`"))),
                _ => return Err(usage("give --field Q or --quadratic-d")),
            };
            let b = weil_residual(&k, chi.as_ref(), *t, *zero_height)?;
            let mut r = Report::new(
                "verify explicit-formula",
                json!({ "field": field, "quadratic_d": quadratic_d, "T": t, "zero_height": zero_height }),
                to_value(&b),
            );
            if let (Some(res), Some(tail)) = (b.residual, b.tail_estimate) {
                r.diagnostics.push(format!(
                    "residual {res:e} against an estimated omitted-zero tail of {tail:e}"
                ));
            }
            Ok(r)
        }
        VerifyCommand::Integrals { grid } => {
            let rep = verify_34_35(grid)?;
            Ok(Report::new("verify integrals", json!({ "grid": grid }), to_value(&rep)))
        }
        VerifyCommand::Constants { tol } => {
            let audit = derive_inequality_constants(*tol)?;
            let mut r = Report::new("verify constants", json!({ "tol": tol }), to_value(&audit));
            r.tolerance = *tol;
            Ok(r)
        }
        VerifyCommand::Lemma3 { instances, seed } => {
            let rep = lemma3_property_check(*instances, *seed)?;
            Ok(Report::new(
                "verify lemma3",
                json!({ "instances": instances, "seed": seed }),
                json!({ "report": to_value(&rep), "pass": rep.violations == 0 }),
            ))
        }
        VerifyCommand::LambdaSum { grid } => {
            let grid = grid.clone().unwrap_or_else(default_lambda_grid);
            let t_max = grid.iter().copied().fold(0.0, f64::max);
            let table = sieve_for(t_max.exp())?;
            let rows = verify_lambda_sum_bound(&grid, &table)?;
            let pass = rows.iter().all(|r| r.holds);
            Ok(Report::new(
                "verify lambda-sum",
                json!({ "grid": grid }),
                json!({ "rows": to_value(&rows), "pass": pass }),
            ))
        }
    }
}
