//! Validation checks: evaluators against the direct sum, exact identities, and
//! asymptotic forms against the direct sum over windows of `r`.
//!
//! Everything here runs in `f64`. Checks are independent and run on the rayon
//! pool; reports keep the order in which checks are listed.

use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{
    derivative_series_form_with, eval_form, leading_integer_with, leading_noninteger,
    leading_nonneg, Conventions, OscTerm, PhaseConvention, Regime, TableSign,
};
use crate::direct::{
    sum_derivative_series, sum_series, turan_difference, turan_series, DerivKind, SeriesSpec,
};
use crate::error::{Error, Result};
use crate::quadrature::{eval_exp2d_detailed, eval_hankel, eval_lifted, hankel_full_range, QuadratureConfig};
use crate::specfun::{
    bessel_j, bessel_j_row, digamma, gamma, hurwitz_zeta, lerch_unit_quadrature, lerch_unit_series,
    phi_minus_one, reciprocal_gamma, EULER_GAMMA,
};

/// Absolute tolerance of every direct sum used as a reference.
pub const ORACLE_TOL: f64 = 1e-12;

/// Sample spacing used for envelopes: 16 points per period of `sin(2r)`.
pub const SAMPLE_STEP: f64 = PI / 16.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub residual: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Check {
    /// Passes when `residual <= tolerance`.
    pub fn at_most(name: &str, residual: f64, tolerance: f64, detail: String) -> Check {
        let ok = residual.is_finite() && residual <= tolerance;
        Check::build(name, ok, residual, tolerance, detail)
    }

    /// Passes when `residual >= tolerance`.
    pub fn at_least(name: &str, residual: f64, tolerance: f64, detail: String) -> Check {
        let ok = residual.is_finite() && residual >= tolerance;
        Check::build(name, ok, residual, tolerance, detail)
    }

    /// A check whose computation failed.
    pub fn errored(name: &str, tolerance: f64, err: &Error) -> Check {
        Check::build(name, false, f64::MAX, tolerance, format!("error: {err}"))
    }

    fn build(name: &str, ok: bool, residual: f64, tolerance: f64, detail: String) -> Check {
        let residual = if residual.is_finite() { residual } else { f64::MAX };
        Check {
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual,
            tolerance,
            detail,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn settle(name: &str, tolerance: f64, r: Result<Check>) -> Check {
    r.unwrap_or_else(|e| Check::errored(name, tolerance, &e))
}

/// Fitted conventions and the scores that decided them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseResolution {
    pub oscillation_phase: PhaseConvention,
    /// Largest `r |S - form|` per candidate.
    pub phase_scores: BTreeMap<String, f64>,
    pub phase_ratio: f64,
    pub log_case_oscillation: OscTerm,
    /// Band width of `pi r (S - form)` per candidate.
    pub log_case_scores: BTreeMap<String, f64>,
    pub log_case_ratio: f64,
    pub mixed_second_sign: TableSign,
    /// Largest `r |S - form|` per candidate.
    pub mixed_second_scores: BTreeMap<String, f64>,
    pub mixed_second_ratio: f64,
}

impl PhaseResolution {
    pub fn conventions(&self) -> Conventions {
        Conventions {
            oscillation_phase: self.oscillation_phase,
            log_case_oscillation: self.log_case_oscillation,
            mixed_second_sign: self.mixed_second_sign,
            notes: format!(
                "Fitted against direct summation: phase scores {:?} (ratio {}), \
                 log-case band widths {:?} (ratio {}), mixed second-derivative scores {:?} (ratio {}).",
                self.phase_scores,
                self.phase_ratio,
                self.log_case_scores,
                self.log_case_ratio,
                self.mixed_second_scores,
                self.mixed_second_ratio
            ),
        }
    }
}

/// Tolerances and grids a report was produced with.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub tolerances: BTreeMap<String, f64>,
    pub grids: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub phase_resolution: Option<PhaseResolution>,
    pub environment: Environment,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Kernel,
    Representations,
    Asymptotics,
    Identities,
    All,
}

impl Suite {
    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Kernel => "kernel",
            Suite::Representations => "representations",
            Suite::Asymptotics => "asymptotics",
            Suite::Identities => "identities",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "kernel" => Ok(Suite::Kernel),
            "representations" => Ok(Suite::Representations),
            "asymptotics" => Ok(Suite::Asymptotics),
            "identities" => Ok(Suite::Identities),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite `{other}`")),
        }
    }
}

/// `S_{a,beta,m,m'}(r)` by direct summation at [`ORACLE_TOL`].
pub fn oracle(a: f64, beta: f64, m: u32, m_prime: u32, r: f64) -> Result<f64> {
    Ok(sum_series(&SeriesSpec::new(a, beta, m, m_prime)?, r, ORACLE_TOL)?.value)
}

/// Formats like C's `%.17g`.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        strip_zeros(&fixed)
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", strip_zeros(mantissa), sign, exp.abs())
    }
}

fn strip_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Points `lo, lo + step, ...` up to and including `hi`.
pub fn sample_points(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).ceil().max(1.0) as usize;
    let mut pts: Vec<f64> = (0..n).map(|k| lo + k as f64 * step).collect();
    pts.push(hi);
    pts
}

/// Maximum of `|f|` over one window `[r_lo, r_hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub r_lo: f64,
    pub r_hi: f64,
    pub envelope: f64,
}

/// Envelopes of `|f|` over windows `[r_k, ratio r_k]`, `r_k = r_start ratio^k`,
/// for every window inside `[r_start, r_end]`, sampled every `step`.
pub fn window_envelopes<F>(r_start: f64, r_end: f64, ratio: f64, step: f64, f: F) -> Result<Vec<Window>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let mut bounds = Vec::new();
    let mut lo = r_start;
    while lo * ratio <= r_end * (1.0 + 1e-12) {
        bounds.push((lo, lo * ratio));
        lo *= ratio;
    }
    bounds
        .into_par_iter()
        .map(|(lo, hi)| {
            let env = sample_points(lo, hi, step)
                .into_par_iter()
                .map(|r| f(r).map(f64::abs))
                .try_reduce(|| 0.0, |x, y| Ok(x.max(y)))?;
            Ok(Window { r_lo: lo, r_hi: hi, envelope: env })
        })
        .collect()
}

/// Least-squares slope of `log envelope` against `log r` at window midpoints.
pub fn loglog_slope(windows: &[Window]) -> f64 {
    let pts: Vec<(f64, f64)> = windows
        .iter()
        .map(|w| ((w.r_lo * w.r_hi).sqrt().ln(), w.envelope.ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Largest `env[k+1] / env[k]`; below 1 iff the envelopes strictly decrease.
pub fn max_successive_ratio(windows: &[Window]) -> f64 {
    windows
        .windows(2)
        .map(|w| w[1].envelope / w[0].envelope)
        .fold(0.0, f64::max)
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

// ---------------------------------------------------------------- kernel

const SPOT_TOL: f64 = 1e-12;

/// `Gamma(1/2) = sqrt(pi)`, `psi(1/2) = -gamma - 2 ln 2`, `zeta(2,1) = pi^2/6`,
/// `Phi(-1,1,1) = ln 2`.
pub fn check_kernel_spot_values() -> Vec<Check> {
    let cases: [(&str, Result<f64>, f64); 4] = [
        ("gamma_half", gamma(0.5), PI.sqrt()),
        ("digamma_half", digamma(0.5), -EULER_GAMMA - 2.0 * LN_2),
        ("hurwitz_zeta_2_1", hurwitz_zeta(2.0, 1.0), PI * PI / 6.0),
        ("phi_minus_one_1_1", phi_minus_one(1.0, 1.0), LN_2),
    ];
    cases
        .into_iter()
        .map(|(name, got, want)| match got {
            Ok(v) => Check::at_most(name, (v - want).abs(), SPOT_TOL, format!("value {}", format_g17(v))),
            Err(e) => Check::errored(name, SPOT_TOL, &e),
        })
        .collect()
}

/// `Gamma(x) / Gamma(x)` through the reciprocal, across the reflection region.
pub fn check_reciprocal_gamma() -> Check {
    let xs: [f64; 8] = [-3.7, -1.2, -0.5, 0.3, 1.0, 2.5, 7.25, 20.0];
    let worst = xs
        .iter()
        .map(|&x| gamma(x).map(|g| (g * reciprocal_gamma(x) - 1.0).abs()))
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().fold(0.0, f64::max));
    settle("reciprocal_gamma_product", 1e-13, worst.map(|w| {
        Check::at_most("reciprocal_gamma_product", w, 1e-13, format!("x in {{{}}}", join(&xs)))
    }))
}

/// Lerch transcendent on the unit circle: quadrature against the accelerated series.
pub fn check_lerch_routes() -> Check {
    let name = "lerch_routes_agree";
    let tol = 1e-10;
    let res = (|| {
        let mut worst: f64 = 0.0;
        for &phi in &[1.2, 2.0, 2.8] {
            for &alpha in &[0.5, 1.0, 2.5] {
                let q = lerch_unit_quadrature::<f64>(phi, alpha, 1.5)?;
                let (s, _) = lerch_unit_series(phi, alpha, 1.5)?;
                worst = worst.max((q - s).norm() / q.norm().max(1.0));
            }
        }
        Ok(Check::at_most(name, worst, tol, "phi in {1.2,2,2.8}, alpha in {0.5,1,2.5}, v = 1.5".into()))
    })();
    settle(name, tol, res)
}

/// `J_0^2 + 2 sum J_k^2 = 1` from the backward recurrence row.
pub fn check_bessel_normalization() -> Check {
    let name = "bessel_row_normalization";
    let tol = 1e-13;
    let res = (|| {
        let mut worst: f64 = 0.0;
        for &r in &[0.1, 1.0, 10.0, 100.0, 1000.0] {
            let row = bessel_j_row::<f64>((1.5 * r) as usize + 40, r)?;
            worst = worst.max(row.normalization_residual().abs());
        }
        Ok(Check::at_most(name, worst, tol, "r in {0.1,1,10,100,1000}".into()))
    })();
    settle(name, tol, res)
}

pub fn kernel_checks() -> Vec<Box<dyn Fn() -> Vec<Check> + Send + Sync>> {
    vec![
        Box::new(check_kernel_spot_values),
        Box::new(|| vec![check_reciprocal_gamma()]),
        Box::new(|| vec![check_lerch_routes()]),
        Box::new(|| vec![check_bessel_normalization()]),
    ]
}

// ---------------------------------------------------------------- representations

pub const HANKEL_A: [f64; 4] = [-2.5, -1.5, -1.0, -0.5];
pub const GRID_BETA: [f64; 3] = [0.0, 0.5, 1.0];
pub const GRID_ORDERS: [(u32, u32); 3] = [(0, 0), (1, 0), (2, 1)];
pub const HANKEL_R: [f64; 4] = [1.0, 5.0, 10.0, 30.0];
pub const EXP2D_R: [f64; 3] = [1.0, 5.0, 10.0];
pub const LIFTED_A: [f64; 4] = [0.0, 0.5, 1.0, 2.0];
pub const LIFTED_R: [f64; 3] = [2.0, 10.0, 30.0];

type GridPoint = (f64, f64, (u32, u32), f64);

fn grid(a: &[f64], r: &[f64]) -> Vec<GridPoint> {
    let mut pts = Vec::new();
    for &a in a {
        for &b in &GRID_BETA {
            for &mm in &GRID_ORDERS {
                for &r in r {
                    pts.push((a, b, mm, r));
                }
            }
        }
    }
    pts
}

/// Largest `|x - y| / max(|y|, floor)` over a grid, with the worst point.
fn worst_relative<F>(pts: Vec<GridPoint>, floor: f64, f: F) -> Result<(f64, String)>
where
    F: Fn(&SeriesSpec<f64>, f64) -> Result<(f64, f64)> + Sync,
{
    let rows: Vec<(f64, String)> = pts
        .into_par_iter()
        .map(|(a, b, (m, mp), r)| {
            let spec = SeriesSpec::new(a, b, m, mp)?;
            let (x, y) = f(&spec, r)?;
            Ok(((x - y).abs() / y.abs().max(floor), format!("a={a} beta={b} m={m} m'={mp} r={r}")))
        })
        .collect::<Result<_>>()?;
    Ok(rows
        .into_iter()
        .fold((-1.0, String::new()), |acc, row| if row.0 > acc.0 { row } else { acc }))
}

/// Hankel quadrature against the direct sum over the `a < 0` grid.
pub fn check_hankel_vs_oracle(cfg: &QuadratureConfig<f64>) -> Check {
    let name = "hankel_vs_oracle";
    let tol = 1e-6;
    let res = worst_relative(grid(&HANKEL_A, &HANKEL_R), 1e-2, |s, r| {
        Ok((eval_hankel(s, r, cfg)?.value, sum_series(s, r, ORACLE_TOL)?.value))
    })
    .map(|(w, at)| Check::at_most(name, w, tol, format!("relative to max(|S|, 1e-2); worst at {at}")));
    settle(name, tol, res)
}

/// Double integral against the direct sum for `r <= 10`.
pub fn check_exp2d_vs_oracle(cfg: &QuadratureConfig<f64>) -> Check {
    let name = "exp2d_vs_oracle";
    let tol = 1e-5;
    let res = worst_relative(grid(&HANKEL_A, &EXP2D_R), 1e-2, |s, r| {
        Ok((eval_exp2d_detailed(s, r, cfg)?.result.value, sum_series(s, r, ORACLE_TOL)?.value))
    })
    .map(|(w, at)| Check::at_most(name, w, tol, format!("relative to max(|S|, 1e-2); worst at {at}")));
    settle(name, tol, res)
}

/// Double integral against the Hankel form for `r <= 10`.
pub fn check_exp2d_vs_hankel(cfg: &QuadratureConfig<f64>) -> Check {
    let name = "exp2d_vs_hankel";
    let tol = 1e-6;
    let res = worst_relative(grid(&HANKEL_A, &EXP2D_R), 1e-2, |s, r| {
        Ok((eval_exp2d_detailed(s, r, cfg)?.result.value, eval_hankel(s, r, cfg)?.value))
    })
    .map(|(w, at)| Check::at_most(name, w, tol, format!("relative to max(|S|, 1e-2); worst at {at}")));
    settle(name, tol, res)
}

/// Imaginary part left over by the double integral.
pub fn check_exp2d_imaginary(cfg: &QuadratureConfig<f64>) -> Check {
    let name = "exp2d_imaginary_residue";
    let tol = 1e-8;
    let res = (|| {
        let spec = SeriesSpec::new(-1.5, 0.0, 2, 0)?;
        let out = eval_exp2d_detailed(&spec, 1.0, cfg)?;
        Ok(Check::at_most(name, out.imag_residue.abs(), tol, "a=-1.5 beta=0 m=2 m'=0 r=1".into()))
    })();
    settle(name, tol, res)
}

/// Lifted evaluator against the direct sum over the `a >= 0` grid.
pub fn check_lifted_vs_oracle(cfg: &QuadratureConfig<f64>) -> Check {
    let name = "lifted_vs_oracle";
    let tol = 1e-5;
    let res = worst_relative(grid(&LIFTED_A, &LIFTED_R), 1e-1, |s, r| {
        Ok((eval_lifted(s, r, cfg)?.value, sum_series(s, r, ORACLE_TOL)?.value))
    })
    .map(|(w, at)| Check::at_most(name, w, tol, format!("relative to max(|S|, 1e-1); worst at {at}")));
    settle(name, tol, res)
}

/// Integral over `[0, pi]` against twice the folded half.
pub fn check_parity_reduction(cfg: &QuadratureConfig<f64>) -> Check {
    let name = "hankel_parity_reduction";
    let tol = 1e-9;
    let pts: Vec<GridPoint> = grid(&[-1.5, -0.5], &[1.0, 10.0]);
    let res = worst_relative(pts, 1.0, |s, r| {
        Ok((hankel_full_range(s, r, cfg)?.value, eval_hankel(s, r, cfg)?.value))
    })
    .map(|(w, at)| Check::at_most(name, w, tol, format!("relative to max(|S|, 1); worst at {at}")));
    settle(name, tol, res)
}

pub fn representation_checks(cfg: QuadratureConfig<f64>) -> Vec<Box<dyn Fn() -> Vec<Check> + Send + Sync>> {
    vec![
        Box::new(move || vec![check_hankel_vs_oracle(&cfg)]),
        Box::new(move || vec![check_exp2d_vs_oracle(&cfg)]),
        Box::new(move || vec![check_exp2d_vs_hankel(&cfg)]),
        Box::new(move || vec![check_exp2d_imaginary(&cfg)]),
        Box::new(move || vec![check_lifted_vs_oracle(&cfg)]),
        Box::new(move || vec![check_parity_reduction(&cfg)]),
    ]
}

// ---------------------------------------------------------------- identities

pub const NEUMANN_R: [f64; 7] = [0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0];

/// `sum_{l>=1} J_l^2 = (1 - J_0^2)/2` and, for `m = 2n`, `m' = 0`,
/// `sum_{l>=1} J_l J_{l+2n} = -(1/2) sum_{k=0}^{2n} (-1)^k J_k J_{2n-k}`.
pub fn check_neumann_identities() -> Check {
    let name = "neumann_identities";
    let tol = 1e-11;
    let res = (|| {
        let mut worst: f64 = 0.0;
        for &r in &NEUMANN_R {
            let j0 = bessel_j(0, r);
            worst = worst.max((oracle(0.0, 0.0, 0, 0, r)? - (1.0 - j0 * j0) / 2.0).abs());
            for n in 1..=3u32 {
                let closed: f64 = (0..=2 * n as i64)
                    .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } * bessel_j(k, r) * bessel_j(2 * n as i64 - k, r))
                    .sum::<f64>()
                    * -0.5;
                for &beta in &[0.0, 0.7] {
                    let s = oracle(0.0, beta, 2 * n, 0, r)?;
                    worst = worst.max((s - closed).abs());
                }
            }
        }
        Ok(Check::at_most(name, worst, tol, format!("r in {{{}}}, n in {{1,2,3}}", join(&NEUMANN_R))))
    })();
    settle(name, tol, res)
}

/// `J_1^2 + 2 sum_{l>=1} J'_l^2 = 1/2`.
pub fn check_derivative_neumann() -> Check {
    let name = "derivative_neumann_identity";
    let tol = 1e-11;
    let res = (|| {
        let mut worst: f64 = 0.0;
        for &r in &[1.0, 5.0, 10.0, 40.0] {
            let s = sum_derivative_series(DerivKind::dJdJ, 0.0, 0.0, r, ORACLE_TOL)?.value;
            let j1 = bessel_j(1, r);
            worst = worst.max((j1 * j1 + 2.0 * s - 0.5).abs());
        }
        Ok(Check::at_most(name, worst, tol, "r in {1,5,10,40}".into()))
    })();
    settle(name, tol, res)
}

/// `J_nu^2 - J_{nu-1} J_{nu+1}` over `nu = 1..5`, `x = 0.1 k`, `k = 1..300`.
pub fn check_turan_inequality() -> Check {
    let name = "turan_inequality";
    let tol = -1e-14;
    let res = (|| {
        let mut lowest = f64::INFINITY;
        for nu in 1..=5u32 {
            for k in 1..=300 {
                lowest = lowest.min(turan_difference(nu, 0.1 * k as f64)?);
            }
        }
        Ok(Check::at_least(name, lowest, tol, "minimum over nu in 1..5, x in (0, 30]".into()))
    })();
    settle(name, tol, res)
}

/// Series form of the Turán difference against the direct difference.
pub fn check_turan_series() -> Check {
    let name = "turan_series_form";
    let tol = 1e-10;
    let res = (|| {
        let mut worst: f64 = 0.0;
        for nu in 1..=5u32 {
            for k in 1..=30 {
                let x = 1.0 * k as f64;
                worst = worst.max((turan_series(nu, x, ORACLE_TOL)? - turan_difference(nu, x)?).abs());
            }
        }
        Ok(Check::at_most(name, worst, tol, "nu in 1..5, x in {1,...,30}".into()))
    })();
    settle(name, tol, res)
}

/// Swapping `m` and `m'` leaves the direct sum unchanged.
pub fn check_swap_symmetry() -> Check {
    let name = "order_swap_symmetry";
    let tol = 1e-14;
    let res = (|| {
        let mut worst: f64 = 0.0;
        for &(a, b, m, mp, r) in &[(-1.5, 0.0, 3, 1, 7.0), (0.5, 0.3, 0, 2, 12.0), (2.0, 1.0, 4, 1, 25.0)] {
            let x = oracle(a, b, m, mp, r)?;
            let y = oracle(a, b, mp, m, r)?;
            worst = worst.max((x - y).abs() / x.abs().max(f64::MIN_POSITIVE));
        }
        Ok(Check::at_most(name, worst, tol, "relative difference".into()))
    })();
    settle(name, tol, res)
}

pub fn identity_checks() -> Vec<Box<dyn Fn() -> Vec<Check> + Send + Sync>> {
    vec![
        Box::new(|| vec![check_neumann_identities()]),
        Box::new(|| vec![check_derivative_neumann()]),
        Box::new(|| vec![check_turan_inequality()]),
        Box::new(|| vec![check_turan_series()]),
        Box::new(|| vec![check_swap_symmetry()]),
    ]
}

// ---------------------------------------------------------------- asymptotics

/// Score of one phase candidate for `a = -2`, `beta = 0`, `m = m' = 1`:
/// the largest `r |S - form|` over `r in [50, 400]`.
pub fn phase_score(conv: PhaseConvention) -> Result<f64> {
    let c = Conventions { oscillation_phase: conv, ..Conventions::resolved().clone() };
    let form = leading_integer_with(2, 0.0, 1, 1, &c)?;
    sample_points(50.0, 400.0, SAMPLE_STEP)
        .into_par_iter()
        .map(|r| Ok(r * (oracle(-2.0, 0.0, 1, 1, r)? - eval_form(&form, r)).abs()))
        .try_reduce(|| 0.0, |x, y| Ok(x.max(y)))
}

/// Values of `pi r (S - form)` over `r in [200, 1000]` for `a = -1`, `beta = 0`,
/// `m = m' = 0`, with or without the oscillatory term.
pub fn log_case_residuals(osc: OscTerm) -> Result<Vec<f64>> {
    let c = Conventions { log_case_oscillation: osc, ..Conventions::resolved().clone() };
    let form = derivative_series_form_with(DerivKind::JJ, Regime::MinusOne, -1.0, 0.0, &c)?;
    sample_points(200.0, 1000.0, SAMPLE_STEP)
        .into_par_iter()
        .map(|r| Ok(PI * r * (oracle(-1.0, 0.0, 0, 0, r)? - eval_form(&form, r))))
        .collect()
}

/// Score of one sign candidate for `sum J_l J''_l / (l+beta)^2`, `beta = 0`:
/// the largest `r |S - form|` over `r in [100, 200]`.
pub fn mixed_second_score(sign: TableSign) -> Result<f64> {
    let c = Conventions { mixed_second_sign: sign, ..Conventions::resolved().clone() };
    let form = derivative_series_form_with(DerivKind::JddJ, Regime::BelowMinusOne, -2.0, 0.0, &c)?;
    sample_points(100.0, 200.0, SAMPLE_STEP)
        .into_par_iter()
        .map(|r| {
            let s = sum_derivative_series(DerivKind::JddJ, -2.0, 0.0, r, ORACLE_TOL)?.value;
            Ok(r * (s - eval_form(&form, r)).abs())
        })
        .try_reduce(|| 0.0, |x, y| Ok(x.max(y)))
}

/// `2 max |x - mean|`: width of the smallest band centred on the mean holding every value.
pub fn band_width(xs: &[f64]) -> f64 {
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    2.0 * xs.iter().map(|x| (x - mean).abs()).fold(0.0, f64::max)
}

/// Fits both open conventions against the direct sum.
pub fn resolve_phases() -> Result<PhaseResolution> {
    let mu = phase_score(PhaseConvention::Mu)?;
    let nu = phase_score(PhaseConvention::Nu)?;
    let present = band_width(&log_case_residuals(OscTerm::Present)?);
    let absent = band_width(&log_case_residuals(OscTerm::Absent)?);
    let (phase, phase_ratio) = if mu <= nu { (PhaseConvention::Mu, nu / mu) } else { (PhaseConvention::Nu, mu / nu) };
    let (osc, log_ratio) =
        if present <= absent { (OscTerm::Present, absent / present) } else { (OscTerm::Absent, present / absent) };
    let tab = mixed_second_score(TableSign::Tabulated)?;
    let neg = mixed_second_score(TableSign::Negated)?;
    let (sign, sign_ratio) =
        if neg <= tab { (TableSign::Negated, tab / neg) } else { (TableSign::Tabulated, neg / tab) };
    Ok(PhaseResolution {
        oscillation_phase: phase,
        phase_scores: BTreeMap::from([("mu".to_string(), mu), ("nu".to_string(), nu)]),
        phase_ratio,
        log_case_oscillation: osc,
        log_case_scores: BTreeMap::from([("present".to_string(), present), ("absent".to_string(), absent)]),
        log_case_ratio: log_ratio,
        mixed_second_sign: sign,
        mixed_second_scores: BTreeMap::from([("tabulated".to_string(), tab), ("negated".to_string(), neg)]),
        mixed_second_ratio: sign_ratio,
    })
}

/// Checks that both fits are decisive (ratio at least 2).
pub fn resolution_checks(res: &PhaseResolution) -> Vec<Check> {
    vec![
        Check::at_least(
            "phase_fit_ratio",
            res.phase_ratio,
            2.0,
            format!("selected {}; scores {:?}", res.oscillation_phase, res.phase_scores),
        ),
        Check::at_least(
            "log_case_fit_ratio",
            res.log_case_ratio,
            2.0,
            format!("selected {}; band widths {:?}", res.log_case_oscillation, res.log_case_scores),
        ),
        Check::at_least(
            "mixed_second_sign_fit_ratio",
            res.mixed_second_ratio,
            2.0,
            format!("selected {}; scores {:?}", res.mixed_second_sign, res.mixed_second_scores),
        ),
    ]
}

/// Band width of `pi r S - log r` after removing the fitted oscillation,
/// for `a = -1`, `beta = 0`, `nu = 0` over `r in [200, 1000]`.
pub fn check_log_case_band(osc: OscTerm) -> Check {
    let name = "log_case_band";
    let tol = 0.1;
    let res = log_case_residuals(osc).map(|xs| {
        Check::at_most(name, band_width(&xs), tol, format!("oscillatory term {osc}; r in [200, 1000]"))
    });
    settle(name, tol, res)
}

/// Log-log slope of the residual envelope of the non-integer form,
/// `alpha = 0.5`, `beta = 0`, `m = m' = 0`, windows `[r, 1.1 r]` in `[100, 800]`.
pub fn check_noninteger_decay() -> Check {
    let name = "noninteger_residual_slope";
    let tol = -1.25;
    let res = (|| {
        let form = leading_noninteger(0.5, 0.0, 0, 0)?;
        let w = window_envelopes(100.0, 800.0, 1.1, SAMPLE_STEP, |r| {
            Ok(oracle(-0.5, 0.0, 0, 0, r)? - eval_form(&form, r))
        })?;
        let slope = loglog_slope(&w);
        Ok(Check::at_most(name, slope, tol, format!("{} windows; expected slope -1.5", w.len())))
    })();
    settle(name, tol, res)
}

/// Ratio of `S(500)` to its leading growth, as `|ratio - 1|`, or `|S(500)|` when
/// the leading coefficient vanishes.
pub fn check_leading_growth(a: f64, m: u32, m_prime: u32, tol: f64) -> Check {
    let name = format!("leading_growth_a{a}_m{m}_mp{m_prime}");
    let res = (|| {
        let r = 500.0;
        let s = oracle(a, 0.0, m, m_prime, r)?;
        let lead = eval_form(&leading_nonneg(a, m, m_prime)?, r);
        Ok(if lead == 0.0 {
            Check::at_most(&name, s.abs(), tol, "leading coefficient zero; |S(500)|".into())
        } else {
            Check::at_most(&name, (s / lead - 1.0).abs(), tol, format!("S(500) = {}", format_g17(s)))
        })
    })();
    settle(&name, tol, res)
}

/// Sampled `(a, beta)` per regime for the derivative tables.
pub const DERIVATIVE_SAMPLES: [(f64, f64); 8] = [
    (0.0, 0.0),
    (0.5, 0.5),
    (-0.5, 0.0),
    (-1.0, 0.0),
    (-1.0, 0.5),
    (-1.5, 0.0),
    (-2.0, 0.5),
    (-3.0, 0.0),
];

/// Residual of a derivative-table form, scaled by `r^p` where `r^{-p}` is the
/// form's leading order (`p = -a` above `-1`, `p = 1` otherwise).
pub fn derivative_residual(kind: DerivKind, a: f64, beta: f64, r: f64, conv: &Conventions) -> Result<f64> {
    let regime = Regime::of(a);
    let form = derivative_series_form_with(kind, regime, a, beta, conv)?;
    let p = if regime == Regime::AboveMinusOne { -a } else { 1.0 };
    let s = sum_derivative_series(kind, a, beta, r, ORACLE_TOL)?.value;
    Ok((s - eval_form(&form, r)) * r.powf(p))
}

/// Scaled residual envelopes strictly decrease over windows `[r, 1.1 r]` in `[100, 600]`.
pub fn check_derivative_table(kind: DerivKind, a: f64, beta: f64, conv: &Conventions) -> Check {
    let name = format!("derivative_table_{}_a{a}_beta{beta}", kind.as_str());
    let tol = 1.0;
    let res = window_envelopes(100.0, 600.0, 1.1, SAMPLE_STEP, |r| derivative_residual(kind, a, beta, r, conv))
        .map(|w| {
            let ratio = max_successive_ratio(&w);
            let ok = ratio < tol;
            let mut c = Check::at_most(
                &name,
                ratio,
                tol,
                format!(
                    "largest successive envelope ratio; first {} last {}",
                    format_g17(w[0].envelope),
                    format_g17(w[w.len() - 1].envelope)
                ),
            );
            if !ok {
                c.status = Status::Fail;
            }
            c
        });
    settle(&name, tol, res)
}

/// Envelope of `pi r S + Phi(-1,1,beta+1) cos 2r` over the last window below 600
/// for `sum J_l J'_l / (l+beta)`.
pub fn check_log_case_cosine(beta: f64) -> Check {
    let name = format!("log_case_cosine_beta{beta}");
    let tol = 0.05;
    let res = (|| {
        let phi = phi_minus_one(1.0, beta + 1.0)?;
        let w = window_envelopes(100.0, 600.0, 1.1, SAMPLE_STEP, |r| {
            let s = sum_derivative_series(DerivKind::JdJ, -1.0, beta, r, ORACLE_TOL)?.value;
            Ok(PI * r * s + phi * (2.0 * r).cos())
        })?;
        let last = w[w.len() - 1];
        Ok(Check::at_most(
            &name,
            last.envelope,
            tol,
            format!("window [{}, {}]; decreasing ratio {}", format_g17(last.r_lo), format_g17(last.r_hi), format_g17(max_successive_ratio(&w))),
        ))
    })();
    settle(&name, tol, res)
}

/// Asymptotic checks under the given conventions.
pub fn asymptotic_checks(conv: &Conventions) -> Vec<Box<dyn Fn() -> Vec<Check> + Send + Sync>> {
    let osc = conv.log_case_oscillation;
    let mut v: Vec<Box<dyn Fn() -> Vec<Check> + Send + Sync>> = vec![
        Box::new(|| vec![check_noninteger_decay()]),
        Box::new(move || vec![check_log_case_band(osc)]),
        Box::new(|| vec![check_leading_growth(1.0, 0, 0, 0.02)]),
        Box::new(|| vec![check_leading_growth(2.0, 0, 0, 0.02)]),
        Box::new(|| vec![check_leading_growth(0.0, 2, 0, 0.05)]),
        Box::new(|| vec![check_log_case_cosine(0.0)]),
        Box::new(|| vec![check_log_case_cosine(0.5)]),
    ];
    for kind in DerivKind::ALL {
        for (a, beta) in DERIVATIVE_SAMPLES {
            let conv = conv.clone();
            v.push(Box::new(move || vec![check_derivative_table(kind, a, beta, &conv)]));
        }
    }
    v
}

// ---------------------------------------------------------------- suites

fn environment(suite: Suite, cfg: &QuadratureConfig<f64>) -> Environment {
    let mut env = Environment::default();
    env.tolerances.insert("oracle_abs".into(), ORACLE_TOL);
    env.tolerances.insert("quadrature_abs".into(), cfg.abs_tol);
    env.tolerances.insert("quadrature_rel".into(), cfg.rel_tol);
    env.tolerances.insert("sample_step".into(), SAMPLE_STEP);
    if matches!(suite, Suite::Representations | Suite::All) {
        env.grids.insert("hankel".into(), format!(
            "a {{{}}} x beta {{{}}} x (m,m') {{(0,0),(1,0),(2,1)}} x r {{{}}}",
            join(&HANKEL_A), join(&GRID_BETA), join(&HANKEL_R)
        ));
        env.grids.insert("exp2d".into(), format!("hankel grid with r {{{}}}", join(&EXP2D_R)));
        env.grids.insert("lifted".into(), format!(
            "a {{{}}} x beta {{{}}} x (m,m') {{(0,0),(1,0),(2,1)}} x r {{{}}}",
            join(&LIFTED_A), join(&GRID_BETA), join(&LIFTED_R)
        ));
    }
    if matches!(suite, Suite::Identities | Suite::All) {
        env.grids.insert("neumann".into(), format!("r {{{}}}", join(&NEUMANN_R)));
        env.grids.insert("turan".into(), "nu 1..5, x = 0.1k, k = 1..300".into());
    }
    if matches!(suite, Suite::Asymptotics | Suite::All) {
        env.grids.insert("windows".into(), "[r, 1.1r], r = r0 1.1^k".into());
        env.grids.insert("phase_fit".into(), "a=-2 beta=0 m=m'=1, r in [50, 400]".into());
        env.grids.insert("log_case_fit".into(), "a=-1 beta=0 m=m'=0, r in [200, 1000]".into());
    }
    env
}

/// Runs a suite on the current rayon pool.
pub fn run_suite(suite: Suite, cfg: &QuadratureConfig<f64>) -> Result<ValidationReport> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    if matches!(suite, Suite::Kernel | Suite::All) {
        jobs.extend(kernel_checks());
    }
    if matches!(suite, Suite::Identities | Suite::All) {
        jobs.extend(identity_checks());
    }
    if matches!(suite, Suite::Representations | Suite::All) {
        jobs.extend(representation_checks(*cfg));
    }
    // the asymptotic checks use the conventions fitted in this run
    let phase_resolution = if matches!(suite, Suite::Asymptotics | Suite::All) {
        let res = resolve_phases()?;
        jobs.extend(asymptotic_checks(&res.conventions()));
        Some(res)
    } else {
        None
    };
    let mut checks: Vec<Check> = jobs.par_iter().map(|job| job()).collect::<Vec<_>>().concat();
    if let Some(res) = &phase_resolution {
        checks.extend(resolution_checks(res));
    }
    Ok(ValidationReport { suite, checks, phase_resolution, environment: environment(suite, cfg) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g17_formatting() {
        assert_eq!(format_g17(0.0), "0");
        assert_eq!(format_g17(0.1), "0.10000000000000001");
        assert_eq!(format_g17(1.0), "1");
        assert_eq!(format_g17(-2.5), "-2.5");
        assert_eq!(format_g17(1e20), "1e+20");
        assert_eq!(format_g17(1.5e-7), "1.4999999999999999e-07");
        assert_eq!(format_g17(123456.0), "123456");
        assert_eq!(format_g17(0.4749364595077652), "0.4749364595077652");
    }

    #[test]
    fn slope_of_power_law() {
        let w: Vec<Window> = (0..10)
            .map(|k| {
                let lo = 100.0 * 1.1f64.powi(k);
                Window { r_lo: lo, r_hi: 1.1 * lo, envelope: (lo * 1.1f64.sqrt()).powf(-1.5) }
            })
            .collect();
        assert!((loglog_slope(&w) + 1.5).abs() < 1e-12);
        assert!(max_successive_ratio(&w) < 1.0);
    }

    #[test]
    fn window_layout() {
        let w = window_envelopes(100.0, 121.0, 1.1, 1.0, |r| Ok(1.0 / r)).unwrap();
        assert_eq!(w.len(), 2);
        assert!((w[0].envelope - 0.01).abs() < 1e-15);
        assert!((w[1].r_hi - 121.0).abs() < 1e-9);
    }

    #[test]
    fn band_width_is_twice_max_deviation() {
        assert_eq!(band_width(&[1.0, 2.0, 3.0]), 2.0);
    }

    #[test]
    fn kernel_suite_passes() {
        let rep = run_suite(Suite::Kernel, &QuadratureConfig::default()).unwrap();
        for c in &rep.checks {
            assert!(c.passed(), "{c:?}");
        }
        assert!(rep.phase_resolution.is_none());
    }
}
