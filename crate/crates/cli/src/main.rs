//! `bnsum`: evaluate, sweep and validate `S_{a,beta,m,m'}(r) = sum_{l>=1} J_{l+m'}(r) J_{l+m}(r) (l+beta)^a`.
//!
//! `--a` is the signed exponent of the weight `(l+beta)^a`; the integral
//! representations are written for `alpha = -a > 0`.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use bnsum_core::harness::{format_g17, run_suite, Suite};
use bnsum_core::quadrature::eval_exp2d;
use bnsum_core::{
    eval_asymptotic, eval_hankel, eval_lifted, leading_form, sum_series, Error, EvalResult,
    QuadratureConfig, SeriesSpec,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

/// Above this `r` the `auto` method switches from direct summation to the expansion.
const AUTO_SWITCH_R: f64 = 50.0;

#[derive(Parser)]
#[command(name = "bnsum", version, about = "Weighted Neumann series of Bessel products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one value and print it as a JSON line.
    Eval(EvalArgs),
    /// Tabulate several methods over an r-grid as CSV.
    Sweep(SweepArgs),
    /// Print the large-r expansion at one r.
    Asym(AsymArgs),
    /// Run a validation suite and write a JSON report.
    Validate(ValidateArgs),
}

#[derive(Args, Clone, Copy)]
struct SeriesArgs {
    /// Exponent of the weight (l+beta)^a.
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    /// Shift of the weight, > -1.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
    #[arg(long, default_value_t = 0)]
    m: u32,
    #[arg(long, default_value_t = 0)]
    mprime: u32,
}

impl SeriesArgs {
    fn spec(&self) -> Result<SeriesSpec<f64>, Error> {
        SeriesSpec::new(self.a, self.beta, self.m, self.mprime)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Oracle,
    Hankel,
    Exp2d,
    Lifted,
    Asym,
    Auto,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    series: SeriesArgs,
    #[arg(long, allow_hyphen_values = true)]
    r: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Absolute tolerance.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    series: SeriesArgs,
    #[arg(long)]
    r_start: f64,
    #[arg(long)]
    r_end: f64,
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// Geometric instead of uniform spacing.
    #[arg(long)]
    log_grid: bool,
    /// Comma-separated subset of oracle,hankel,lifted,asym.
    #[arg(long, value_delimiter = ',', default_value = "oracle,hankel,lifted,asym")]
    methods: Vec<SweepMethod>,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepMethod {
    Oracle,
    Hankel,
    Lifted,
    Asym,
}

#[derive(Args)]
struct AsymArgs {
    #[command(flatten)]
    series: SeriesArgs,
    #[arg(long)]
    r: f64,
    /// Also list the terms of the expansion.
    #[arg(long)]
    show_terms: bool,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long, default_value = "all")]
    suite: Suite,
    /// Report path; the report goes to standard output when omitted.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Also write the fitted conventions as a constants file (asymptotics and all suites).
    #[arg(long)]
    constants: Option<PathBuf>,
}

/// Failure with its exit code: 1 validation, 2 usage, 3 numeric, 4 I/O.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(path: &std::path::Path, e: std::io::Error) -> Failure {
        Failure { code: 4, message: format!("cannot write {}: {e}", path.display()) }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Domain { .. } | Error::RegimeMismatch(_) | Error::Pole { .. } => 2,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

fn quad_config(tol: f64) -> QuadratureConfig<f64> {
    QuadratureConfig { abs_tol: tol.max(1e-15), ..QuadratureConfig::default() }
}

fn evaluate(spec: &SeriesSpec<f64>, r: f64, method: MethodArg, tol: f64) -> Result<EvalResult<f64>, Error> {
    let method = match method {
        MethodArg::Auto if r <= AUTO_SWITCH_R => MethodArg::Oracle,
        MethodArg::Auto => MethodArg::Asym,
        m => m,
    };
    let cfg = quad_config(tol);
    match method {
        MethodArg::Oracle => sum_series(spec, r, tol),
        MethodArg::Hankel => eval_hankel(spec, r, &cfg),
        MethodArg::Exp2d => eval_exp2d(spec, r, &cfg),
        MethodArg::Lifted => eval_lifted(spec, r, &cfg),
        MethodArg::Asym | MethodArg::Auto => eval_asymptotic(spec, r),
    }
}

fn eval_json(res: &EvalResult<f64>) -> String {
    format!(
        "{{\"value\":{},\"err_est\":{},\"method\":\"{}\",\"work\":{}}}",
        format_g17(res.value),
        format_g17(res.err_est),
        res.method,
        res.work
    )
}

fn cmd_eval(args: &EvalArgs) -> Result<(), Failure> {
    if !(args.tol > 0.0) {
        return Err(Error::domain("eval", "tol must be positive").into());
    }
    let spec = args.series.spec()?;
    let res = evaluate(&spec, args.r, args.method, args.tol)?;
    println!("{}", eval_json(&res));
    Ok(())
}

fn grid(args: &SweepArgs) -> Result<Vec<f64>, Error> {
    let (lo, hi, n) = (args.r_start, args.r_end, args.points);
    if !(lo >= 0.0) || !(hi >= lo) || !hi.is_finite() || n == 0 {
        return Err(Error::domain("sweep", "need 0 <= r-start <= r-end and points >= 1"));
    }
    if args.log_grid && !(lo > 0.0) {
        return Err(Error::domain("sweep", "a log grid needs r-start > 0"));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n)
        .map(|k| {
            let t = k as f64 / (n - 1) as f64;
            if args.log_grid {
                lo * (hi / lo).powf(t)
            } else {
                lo + (hi - lo) * t
            }
        })
        .collect())
}

/// One CSV row; methods not requested or not applicable stay empty.
fn sweep_row(args: &SweepArgs, spec: &SeriesSpec<f64>, r: f64) -> Result<String, Error> {
    let wants = |m: SweepMethod| args.methods.contains(&m);
    let cfg = quad_config(args.tol);
    let oracle = if wants(SweepMethod::Oracle) { Some(sum_series(spec, r, args.tol)?.value) } else { None };
    let hankel =
        if wants(SweepMethod::Hankel) && spec.a < 0.0 { Some(eval_hankel(spec, r, &cfg)?.value) } else { None };
    let lifted = if wants(SweepMethod::Lifted) && spec.a >= 0.0 && r > 0.0 {
        Some(eval_lifted(spec, r, &cfg)?.value)
    } else {
        None
    };
    let asym = if wants(SweepMethod::Asym) && r > 0.0 { Some(eval_asymptotic(spec, r)?.value) } else { None };
    let diff = |x: Option<f64>| match (oracle, x) {
        (Some(o), Some(v)) => Some((o - v).abs()),
        _ => None,
    };
    let cell = |x: Option<f64>| x.map(format_g17).unwrap_or_default();
    Ok([Some(r), oracle, hankel, lifted, asym, diff(hankel), diff(asym)]
        .into_iter()
        .map(cell)
        .collect::<Vec<_>>()
        .join(","))
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), Failure> {
    if !(args.tol > 0.0) {
        return Err(Error::domain("sweep", "tol must be positive").into());
    }
    let spec = args.series.spec()?;
    let rows: Vec<String> = grid(args)?
        .into_par_iter()
        .map(|r| sweep_row(args, &spec, r))
        .collect::<Result<_, _>>()?;
    let mut out = String::from("r,oracle,hankel,lifted,asym,diff_oracle_hankel,diff_oracle_asym\n");
    for row in rows {
        let _ = writeln!(out, "{row}");
    }
    fs::write(&args.out, out).map_err(|e| Failure::io(&args.out, e))
}

fn cmd_asym(args: &AsymArgs) -> Result<(), Failure> {
    let spec = args.series.spec()?;
    let res = eval_asymptotic(&spec, args.r)?;
    let form = leading_form(spec.a, spec.beta, spec.m, spec.m_prime)?;
    let mut line = format!(
        "{{\"value\":{},\"gamma_err\":{},\"strict\":{}",
        format_g17(res.value),
        format_g17(form.gamma_err),
        form.strict
    );
    if args.show_terms {
        let terms: Vec<String> = form
            .terms
            .iter()
            .map(|t| {
                format!(
                    "{{\"coeff\":{},\"power\":{},\"osc\":\"{}\",\"phase\":{},\"value\":{}}}",
                    format_g17(t.coeff),
                    format_g17(t.power),
                    serde_json::to_value(t.osc).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
                    format_g17(t.phase),
                    format_g17(t.eval(args.r))
                )
            })
            .collect();
        let _ = write!(line, ",\"terms\":[{}]", terms.join(","));
    }
    line.push('}');
    println!("{line}");
    Ok(())
}

fn cmd_validate(args: &ValidateArgs) -> Result<(), Failure> {
    let report = run_suite(args.suite, &QuadratureConfig::default())?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    match &args.report {
        Some(path) => fs::write(path, &json).map_err(|e| Failure::io(path, e))?,
        None => print!("{json}"),
    }
    if let Some(path) = &args.constants {
        let res = report.phase_resolution.as_ref().ok_or_else(|| Failure {
            code: 2,
            message: "--constants needs the asymptotics or all suite".into(),
        })?;
        let text = serde_json::to_string_pretty(&res.conventions()).expect("constants serialize") + "\n";
        fs::write(path, text).map_err(|e| Failure::io(path, e))?;
    }
    for c in report.checks.iter().filter(|c| !c.passed()) {
        eprintln!("FAIL {}: residual {} tolerance {} ({})", c.name, format_g17(c.residual), format_g17(c.tolerance), c.detail);
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure { code: 1, message: "validation failed".into() })
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("BNSUM_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| Failure {
        code: 2,
        message: format!("BNSUM_THREADS must be a positive integer, got `{v}`"),
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure { code: 2, message: e.to_string() })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = configure_threads().and_then(|_| match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Asym(a) => cmd_asym(a),
        Command::Validate(a) => cmd_validate(a),
    });
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("bnsum: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
