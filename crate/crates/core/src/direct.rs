//! Direct summation of `S_{a,beta,m,m'}(r) = sum_{l>=1} J_{l+m'}(r) J_{l+m}(r) (l+beta)^a`
//! and of the quadratic derivative series, with a certified truncation bound.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;
use crate::specfun::{bessel_j_row, ln_gamma, BesselRow};

/// Hard cap on the number of summed terms.
pub const MAX_TERMS: usize = 1_000_000;

/// Default absolute tolerance of the direct sum.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Parameters `(a, beta, m, m')` of the series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesSpec<T> {
    /// Signed weight exponent of `(l + beta)^a`.
    pub a: T,
    pub beta: T,
    pub m: u32,
    pub m_prime: u32,
}

impl<T: Real> SeriesSpec<T> {
    pub fn new(a: T, beta: T, m: u32, m_prime: u32) -> Result<Self> {
        let s = SeriesSpec { a, beta, m, m_prime };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.a.is_finite() {
            return Err(Error::domain("SeriesSpec", "a must be finite"));
        }
        if !(self.beta > -T::one()) || !self.beta.is_finite() {
            return Err(Error::domain("SeriesSpec", "beta must exceed -1"));
        }
        Ok(())
    }

    /// `m + m'`.
    pub fn mu(&self) -> u32 {
        self.m + self.m_prime
    }

    /// `m - m'`.
    pub fn nu(&self) -> i64 {
        self.m as i64 - self.m_prime as i64
    }

    /// Same series with `m >= m'`, so that `nu >= 0`.
    pub fn canonical(&self) -> Self {
        if self.m >= self.m_prime {
            *self
        } else {
            SeriesSpec { m: self.m_prime, m_prime: self.m, ..*self }
        }
    }
}

/// Evaluation method tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Oracle,
    Hankel,
    Exp2d,
    Lifted,
    Asym,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Hankel => "hankel",
            Method::Exp2d => "exp2d",
            Method::Lifted => "lifted",
            Method::Asym => "asym",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "oracle" => Ok(Method::Oracle),
            "hankel" => Ok(Method::Hankel),
            "exp2d" => Ok(Method::Exp2d),
            "lifted" => Ok(Method::Lifted),
            "asym" => Ok(Method::Asym),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

/// A value with its error estimate and the work spent on it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult<T> {
    pub value: T,
    pub err_est: T,
    pub method: Method,
    /// Terms summed or integrand evaluations.
    pub work: u64,
}

/// Quadratic series `sum (l+beta)^a X_l Y_l` with `X, Y` among `J_l, J'_l, J''_l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DerivKind {
    JJ,
    JdJ,
    #[allow(non_camel_case_types)]
    dJdJ,
    JddJ,
    #[allow(non_camel_case_types)]
    dJddJ,
    #[allow(non_camel_case_types)]
    ddJddJ,
}

impl DerivKind {
    pub const ALL: [DerivKind; 6] = [
        DerivKind::JJ,
        DerivKind::JdJ,
        DerivKind::dJdJ,
        DerivKind::JddJ,
        DerivKind::dJddJ,
        DerivKind::ddJddJ,
    ];

    /// Derivative orders of the two factors.
    pub fn orders(&self) -> (u32, u32) {
        match self {
            DerivKind::JJ => (0, 0),
            DerivKind::JdJ => (0, 1),
            DerivKind::dJdJ => (1, 1),
            DerivKind::JddJ => (0, 2),
            DerivKind::dJddJ => (1, 2),
            DerivKind::ddJddJ => (2, 2),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            DerivKind::JJ => "JJ",
            DerivKind::JdJ => "JdJ",
            DerivKind::dJdJ => "dJdJ",
            DerivKind::JddJ => "JddJ",
            DerivKind::dJddJ => "dJddJ",
            DerivKind::ddJddJ => "ddJddJ",
        }
    }
}

impl fmt::Display for DerivKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Compensated (Neumaier) running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum<T> {
    sum: T,
    comp: T,
    abs: T,
}

impl<T: Real> KahanSum<T> {
    pub(crate) fn new() -> Self {
        KahanSum { sum: T::zero(), comp: T::zero(), abs: T::zero() }
    }

    pub(crate) fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
        self.abs = self.abs + x.abs();
    }

    pub(crate) fn value(&self) -> T {
        self.sum + self.comp
    }

    /// Sum of absolute values, a scale for rounding error.
    pub(crate) fn magnitude(&self) -> T {
        self.abs
    }
}

/// Truncation plan for `sum_l (l+beta)^a X_l Y_l` where `|X_l| <= (r/2)^{l+p}/(l+p)!`
/// and `|Y_l| <= (r/2)^{l+q}/(l+q)!`.
struct Truncation {
    last: usize,
    tail_bound: f64,
}

fn ln_term_bound(l: usize, p: i64, q: i64, a: f64, beta: f64, ln_half_r: f64) -> f64 {
    let l = l as f64;
    let np = l + p as f64;
    let nq = l + q as f64;
    (np + nq) * ln_half_r - ln_gamma(np + 1.0).unwrap_or(f64::INFINITY)
        - ln_gamma(nq + 1.0).unwrap_or(f64::INFINITY)
        + a * (l + beta).ln()
}

fn truncation(r: f64, p: i64, q: i64, a: f64, beta: f64, mu: i64, tol: f64) -> Result<Truncation> {
    let half_r = r / 2.0;
    let ln_half_r = half_r.ln();
    let grow = a.max(0.0);
    let mut l = ((std::f64::consts::E * half_r).ceil() as i64 + mu.max(0) + 10) as usize;
    let ln_tol = tol.ln();
    loop {
        if l > MAX_TERMS {
            return Err(Error::ToleranceUnreachable { tol, cap: MAX_TERMS });
        }
        // ratio of consecutive bounds past l; decreasing in l
        let lf = l as f64;
        let ratio = half_r * half_r / ((lf + p as f64 + 1.0) * (lf + q as f64 + 1.0))
            * ((lf + 1.0 + beta) / (lf + beta)).powf(grow);
        if ratio <= 0.5 {
            let ln_next = ln_term_bound(l + 1, p, q, a, beta, ln_half_r);
            let tail = 2.0 * ln_next.exp();
            if ln_next + std::f64::consts::LN_2 <= ln_tol {
                return Ok(Truncation { last: l, tail_bound: tail });
            }
        }
        l += (l / 8).max(4);
    }
}

fn check_args<T: Real>(function: &'static str, r: T, tol: T) -> Result<()> {
    if !(r >= T::zero()) || !r.is_finite() {
        return Err(Error::domain(function, "r must be finite and nonnegative"));
    }
    if !(tol > T::zero()) {
        return Err(Error::domain(function, "tol must be positive"));
    }
    Ok(())
}

/// Direct sum of `S_{a,beta,m,m'}(r)` with `|value - S| <= tol` from the tail bound.
///
/// Summation runs to the first index past `ceil(e r / 2) + mu + 10` at which the
/// ratio of consecutive term bounds is at most 1/2 and twice the next bound is
/// below `tol`. `err_est` adds that tail bound to a rounding estimate.
pub fn sum_series<T: Real>(spec: &SeriesSpec<T>, r: T, tol: T) -> Result<EvalResult<T>> {
    spec.validate()?;
    check_args("sum_series", r, tol)?;
    if r == T::zero() {
        return Ok(EvalResult { value: T::zero(), err_est: T::zero(), method: Method::Oracle, work: 0 });
    }
    let m = spec.m as i64;
    let mp = spec.m_prime as i64;
    let plan = truncation(
        r.as_f64(),
        m,
        mp,
        spec.a.as_f64(),
        spec.beta.as_f64(),
        spec.mu() as i64,
        tol.as_f64(),
    )?;
    let row = bessel_j_row(plan.last + m.max(mp) as usize, r)?;
    let mut acc = KahanSum::new();
    for l in 1..=plan.last {
        let w = (T::from_int(l as i64) + spec.beta).powf(spec.a);
        acc.add(row.values[l + spec.m_prime as usize] * row.values[l + spec.m as usize] * w);
    }
    let err = T::lit(plan.tail_bound) + T::epsilon() * T::lit(4.0) * acc.magnitude();
    Ok(EvalResult { value: acc.value(), err_est: err, method: Method::Oracle, work: plan.last as u64 })
}

/// `J_l^{(k)}(r)` for `k <= 2` from the row, using the three-term derivative identities.
fn derivative<T: Real>(row: &BesselRow<T>, l: i64, k: u32) -> T {
    let li = l;
    match k {
        0 => row.get(li),
        1 => (row.get(li - 1) - row.get(li + 1)) * T::lit(0.5),
        _ => (row.get(li + 2) + row.get(li - 2) - T::lit(2.0) * row.get(li)) * T::lit(0.25),
    }
}

/// Direct sum of `sum_{l>=1} (l+beta)^a X_l(r) Y_l(r)` for a derivative kind.
///
/// `J'_l = (J_{l-1} - J_{l+1})/2`, `J''_l = (J_{l+2} + J_{l-2} - 2 J_l)/4`, with
/// `J_{-n} = (-1)^n J_n`. The kind `JJ` is exactly [`sum_series`] with `m = m' = 0`.
pub fn sum_derivative_series<T: Real>(
    kind: DerivKind,
    a: T,
    beta: T,
    r: T,
    tol: T,
) -> Result<EvalResult<T>> {
    let spec = SeriesSpec::new(a, beta, 0, 0)?;
    if kind == DerivKind::JJ {
        return sum_series(&spec, r, tol);
    }
    check_args("sum_derivative_series", r, tol)?;
    if r == T::zero() {
        // J_l^{(k)}(0) vanishes for l > k; the l = 1 and l = 2 terms are exact
        let row = bessel_j_row(4, r)?;
        let (p, q) = kind.orders();
        let mut acc = T::zero();
        for l in 1..=2i64 {
            let w = (T::from_int(l) + beta).powf(a);
            acc = acc + w * derivative(&row, l, p) * derivative(&row, l, q);
        }
        return Ok(EvalResult { value: acc, err_est: T::zero(), method: Method::Oracle, work: 2 });
    }
    let (p, q) = kind.orders();
    let plan = truncation(
        r.as_f64(),
        -(p as i64),
        -(q as i64),
        a.as_f64(),
        beta.as_f64(),
        0,
        tol.as_f64(),
    )?;
    let row = bessel_j_row(plan.last + 2, r)?;
    let mut acc = KahanSum::new();
    for l in 1..=plan.last as i64 {
        let w = (T::from_int(l) + beta).powf(a);
        acc.add(w * derivative(&row, l, p) * derivative(&row, l, q));
    }
    let err = T::lit(plan.tail_bound) + T::epsilon() * T::lit(4.0) * acc.magnitude();
    Ok(EvalResult { value: acc.value(), err_est: err, method: Method::Oracle, work: plan.last as u64 })
}

/// `J_nu(x)^2 - J_{nu-1}(x) J_{nu+1}(x)`.
pub fn turan_difference<T: Real>(nu: u32, x: T) -> Result<T> {
    let row = bessel_j_row(nu as usize + 1, x.abs())?;
    let n = nu as i64;
    Ok(row.get(n) * row.get(n) - row.get(n - 1) * row.get(n + 1))
}

/// The series form of the Turán difference,
/// `J_nu^2/(nu+1) + 2 J_{nu+1}^2/(nu+2) + 2 nu sum_{n>=2} J_{nu+n}^2 / ((nu+n-1)(nu+n+1))`,
/// with the tail assembled from two weighted series through partial fractions.
pub fn turan_series<T: Real>(nu: u32, x: T, tol: T) -> Result<T> {
    let row = bessel_j_row(nu as usize + 1, x.abs())?;
    let n = nu as i64;
    let jn = row.get(n);
    let jn1 = row.get(n + 1);
    let nf = T::from_int(n);
    // sum_{n>=2} J_{nu+n}^2 / ((nu+n-1)(nu+n+1)) with l = n - 1:
    // (1/2) [sum J_{l+nu+1}^2 / (l+nu) - sum J_{l+nu+1}^2 / (l+nu+2)]
    let first = sum_series(&SeriesSpec::new(-T::one(), nf, nu + 1, nu + 1)?, x.abs(), tol)?;
    let second =
        sum_series(&SeriesSpec::new(-T::one(), nf + T::lit(2.0), nu + 1, nu + 1)?, x.abs(), tol)?;
    let tail = (first.value - second.value) * T::lit(0.5);
    Ok(jn * jn / (nf + T::one())
        + T::lit(2.0) * jn1 * jn1 / (nf + T::lit(2.0))
        + T::lit(2.0) * nf * tail)
}
