//! Large-`r` expansions of `S_{a,beta,m,m'}(r)` and of the quadratic derivative series.
//!
//! Forms are sums of `coeff * r^{-power} * osc(r)`. For `a < 0` the exponent is
//! written `alpha = -a`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::direct::{DerivKind, EvalResult, Method, SeriesSpec};
use crate::error::{Error, Result};
use crate::real::Real;
use crate::specfun::{
    digamma, gamma, harmonic_extended, hurwitz_zeta, phi_minus_one, reciprocal_gamma, EULER_GAMMA,
};

/// Oscillatory factor of a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Osc {
    Const,
    LogR,
    Sin2r,
    Cos2r,
}

/// One term `coeff * r^{-power} * osc(r)`; `phase` shifts `sin`/`cos(2r + phase)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term<T> {
    pub coeff: T,
    pub power: T,
    pub osc: Osc,
    pub phase: T,
}

impl<T: Real> Term<T> {
    pub fn new(coeff: T, power: T, osc: Osc) -> Self {
        Term { coeff, power, osc, phase: T::zero() }
    }

    pub fn with_phase(mut self, phase: T) -> Self {
        self.phase = phase;
        self
    }

    pub fn eval(&self, r: T) -> T {
        let osc = match self.osc {
            Osc::Const => T::one(),
            Osc::LogR => r.ln(),
            Osc::Sin2r => (T::lit(2.0) * r + self.phase).sin(),
            Osc::Cos2r => (T::lit(2.0) * r + self.phase).cos(),
        };
        self.coeff * r.powf(-self.power) * osc
    }
}

/// Truncated expansion with the exponent of its remainder `O(r^{-gamma_err})`.
///
/// `strict` marks remainders that are only `o(r^{-gamma_err})` or
/// `O(r^{-gamma_err + eps})` for every `eps > 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticForm<T> {
    pub terms: Vec<Term<T>>,
    pub gamma_err: T,
    pub strict: bool,
}

impl<T: Real> AsymptoticForm<T> {
    /// Exponent `p` of the dominant term `r^{-p}` (`None` for an empty form).
    pub fn leading_power(&self) -> Option<T> {
        self.terms.iter().map(|t| t.power).fold(None, |acc, p| match acc {
            None => Some(p),
            Some(q) => Some(q.min(p)),
        })
    }
}

/// Value of a form at `r > 0`.
pub fn eval_form<T: Real>(form: &AsymptoticForm<T>, r: T) -> T {
    form.terms.iter().fold(T::zero(), |acc, t| acc + t.eval(r))
}

/// Phase of the `sin(2r - pi X / 2)` term for integer `alpha > 1`: `X = mu` or `X = nu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseConvention {
    Mu,
    Nu,
}

/// Whether the `1/r` oscillation `-Phi(-1,1,beta+1) sin(2r)` is kept in the
/// `a = -1`, `m = m' = 0` derivative-table form (with sign `+` for `J'J'` and
/// `JJ''`, `-` for `J''J''`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OscTerm {
    Present,
    Absent,
}

impl fmt::Display for PhaseConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhaseConvention::Mu => "mu",
            PhaseConvention::Nu => "nu",
        })
    }
}

impl fmt::Display for OscTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OscTerm::Present => "present",
            OscTerm::Absent => "absent",
        })
    }
}

/// Overall sign of the `sum (l+beta)^a J_l J''_l` form for `a < -1`: the
/// tabulated `(zeta - Phi sin 2r)/(pi r)` or its negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableSign {
    Tabulated,
    Negated,
}

impl fmt::Display for TableSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableSign::Tabulated => "tabulated",
            TableSign::Negated => "negated",
        })
    }
}

/// Conventions fixed by fitting the expansions against direct summation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub oscillation_phase: PhaseConvention,
    /// Also governs the `Phi sin 2r` terms of the `J'J'`, `JJ''` and `J''J''` forms at `a = -1`.
    pub log_case_oscillation: OscTerm,
    pub mixed_second_sign: TableSign,
    #[serde(default)]
    pub notes: String,
}

static RESOLVED: OnceLock<Conventions> = OnceLock::new();

impl Conventions {
    /// Conventions shipped in `data/phase_conventions.json`.
    pub fn resolved() -> &'static Conventions {
        RESOLVED.get_or_init(|| {
            serde_json::from_str(include_str!("../data/phase_conventions.json"))
                .expect("embedded constants file is valid")
        })
    }
}

/// Regime of the derivative-series tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    AboveMinusOne,
    MinusOne,
    BelowMinusOne,
}

impl Regime {
    pub fn of<T: Real>(a: T) -> Regime {
        if a > -T::one() {
            Regime::AboveMinusOne
        } else if a == -T::one() {
            Regime::MinusOne
        } else {
            Regime::BelowMinusOne
        }
    }
}

fn check_beta<T: Real>(function: &'static str, beta: T) -> Result<()> {
    if !(beta > -T::one()) || !beta.is_finite() {
        return Err(Error::domain(function, "beta must exceed -1"));
    }
    Ok(())
}

/// `(mu, nu)` with `nu >= 0`.
fn orders(m: u32, m_prime: u32) -> (i64, i64) {
    let mu = m as i64 + m_prime as i64;
    let nu = (m as i64 - m_prime as i64).abs();
    (mu, nu)
}

fn lit<T: Real>(x: f64) -> T {
    T::lit(x)
}

/// `2^{-alpha} (zeta(alpha, (beta+2)/2) - zeta(alpha, (beta+1)/2)) = -Phi(-1, alpha, beta+1)`.
fn alternating_amplitude<T: Real>(alpha: T, beta: T) -> Result<T> {
    Ok(-phi_minus_one(alpha, beta + T::one())?)
}

fn phase_of<T: Real>(conv: PhaseConvention, mu: i64, nu: i64) -> T {
    let x = match conv {
        PhaseConvention::Mu => mu,
        PhaseConvention::Nu => nu,
    };
    T::zero() - T::from_int(x) * lit::<T>(PI / 2.0)
}

/// Expansion for non-integer `alpha > 0` using the resolved conventions.
pub fn leading_noninteger<T: Real>(alpha: T, beta: T, m: u32, m_prime: u32) -> Result<AsymptoticForm<T>> {
    leading_noninteger_with(alpha, beta, m, m_prime, Conventions::resolved())
}

/// Expansion for non-integer `alpha > 0`:
///
/// `2^{alpha-1} Gamma(1-alpha) / (Gamma((nu-alpha+2)/2) Gamma((-nu-alpha+2)/2)) r^{-alpha}
/// + (1/(pi r)) [cos(pi nu/2) zeta(alpha, beta+1) + 2^{-alpha}(zeta(alpha,(beta+2)/2) - zeta(alpha,(beta+1)/2)) sin(2r - pi mu/2)]`,
/// remainder `O(r^{-min(alpha+1, 2)})`.
pub fn leading_noninteger_with<T: Real>(
    alpha: T,
    beta: T,
    m: u32,
    m_prime: u32,
    conv: &Conventions,
) -> Result<AsymptoticForm<T>> {
    if !(alpha > T::zero()) || alpha.is_integer() {
        return Err(Error::domain("leading_noninteger", "alpha must be positive and non-integer"));
    }
    check_beta("leading_noninteger", beta)?;
    let (mu, nu) = orders(m, m_prime);
    let nu_t = T::from_int(nu);
    let two = lit::<T>(2.0);
    let c1 = two.powf(alpha - T::one())
        * gamma(T::one() - alpha)?
        * reciprocal_gamma((nu_t - alpha + two) / two)
        * reciprocal_gamma((-nu_t - alpha + two) / two);
    let inv_pi = T::one() / T::PI();
    let c2 = inv_pi * (T::PI() * nu_t / two).cos() * hurwitz_zeta(alpha, beta + T::one())?;
    let c3 = inv_pi * alternating_amplitude(alpha, beta)?;
    Ok(AsymptoticForm {
        terms: vec![
            Term::new(c1, alpha, Osc::Const),
            Term::new(c2, T::one(), Osc::Const),
            Term::new(c3, T::one(), Osc::Sin2r).with_phase(phase_of(conv.oscillation_phase, mu, nu)),
        ],
        gamma_err: (alpha + T::one()).min(two),
        strict: false,
    })
}

/// Expansion for integer `alpha >= 1` using the resolved conventions.
pub fn leading_integer<T: Real>(alpha: u32, beta: T, m: u32, m_prime: u32) -> Result<AsymptoticForm<T>> {
    leading_integer_with(alpha, beta, m, m_prime, Conventions::resolved())
}

/// Expansion for integer `alpha >= 1`, with `nu >= 0`.
///
/// `alpha = 1`: `(1/(pi r)) [cos(pi nu/2) log r - cos(pi nu/2)(H_beta + psi((nu+1)/2) + log 2)
/// + (pi/2) sin(pi nu/2) - Phi(-1,1,beta+1) sin(2r - pi mu/2)] + o(1/r)`.
///
/// `alpha > 1`: `(1/(pi r)) [cos(pi nu/2) zeta(alpha,beta+1) - Phi(-1,alpha,beta+1) sin(2r + phase)]`
/// with remainder `O(r^{-2+eps})`; the phase is `-pi mu/2` or `-pi nu/2` per `conv`.
pub fn leading_integer_with<T: Real>(
    alpha: u32,
    beta: T,
    m: u32,
    m_prime: u32,
    conv: &Conventions,
) -> Result<AsymptoticForm<T>> {
    if alpha == 0 {
        return Err(Error::domain("leading_integer", "alpha must be a positive integer"));
    }
    check_beta("leading_integer", beta)?;
    let (mu, nu) = orders(m, m_prime);
    let nu_t = T::from_int(nu);
    let two = lit::<T>(2.0);
    let inv_pi = T::one() / T::PI();
    let cos_nu = crate::specfun::cos_pi(nu_t / two);
    let sin_nu = crate::specfun::sin_pi(nu_t / two);
    let alpha_t = T::from_int(alpha as i64);
    if alpha == 1 {
        let mut constant = T::FRAC_PI_2() * sin_nu;
        if cos_nu != T::zero() {
            let h = harmonic_extended(beta)?;
            let psi = digamma((nu_t + T::one()) / two)?;
            constant = constant - cos_nu * (h + psi + T::LN_2());
        }
        let osc = -phi_minus_one(T::one(), beta + T::one())?;
        return Ok(AsymptoticForm {
            terms: vec![
                Term::new(inv_pi * cos_nu, T::one(), Osc::LogR),
                Term::new(inv_pi * constant, T::one(), Osc::Const),
                Term::new(inv_pi * osc, T::one(), Osc::Sin2r)
                    .with_phase(phase_of(PhaseConvention::Mu, mu, nu)),
            ],
            gamma_err: T::one(),
            strict: true,
        });
    }
    let c2 = inv_pi * cos_nu * hurwitz_zeta(alpha_t, beta + T::one())?;
    let c3 = inv_pi * alternating_amplitude(alpha_t, beta)?;
    Ok(AsymptoticForm {
        terms: vec![
            Term::new(c2, T::one(), Osc::Const),
            Term::new(c3, T::one(), Osc::Sin2r).with_phase(phase_of(conv.oscillation_phase, mu, nu)),
        ],
        gamma_err: two,
        strict: true,
    })
}

/// Coefficient `2^{-a-1} Gamma(a+1) / (Gamma((a-nu+2)/2) Gamma((a+nu+2)/2))`, continuous in `a`.
pub fn nonneg_coefficient<T: Real>(a: T, nu: i64) -> Result<T> {
    if !(a >= T::zero()) || !a.is_finite() {
        return Err(Error::domain("nonneg_coefficient", "a must be nonnegative"));
    }
    let two = lit::<T>(2.0);
    let nu_t = T::from_int(nu);
    Ok(two.powf(-a - T::one())
        * gamma(a + T::one())?
        * reciprocal_gamma((a - nu_t + two) / two)
        * reciprocal_gamma((a + nu_t + two) / two))
}

/// Leading growth `c r^a + o(r^a)` for `a >= 0`.
pub fn leading_nonneg<T: Real>(a: T, m: u32, m_prime: u32) -> Result<AsymptoticForm<T>> {
    let (_, nu) = orders(m, m_prime);
    let c = nonneg_coefficient(a, nu)?;
    Ok(AsymptoticForm {
        terms: vec![Term::new(c, -a, Osc::Const)],
        gamma_err: -a,
        strict: true,
    })
}

/// Expansion of `S_{a,beta,m,m'}` for any real `a`, picking the matching regime.
pub fn leading_form<T: Real>(a: T, beta: T, m: u32, m_prime: u32) -> Result<AsymptoticForm<T>> {
    if a >= T::zero() {
        return leading_nonneg(a, m, m_prime);
    }
    let alpha = -a;
    if alpha.is_integer() {
        let n = alpha
            .to_u32()
            .ok_or_else(|| Error::domain("leading_form", "exponent out of range"))?;
        leading_integer(n, beta, m, m_prime)
    } else {
        leading_noninteger(alpha, beta, m, m_prime)
    }
}

/// Value of [`leading_form`] as an evaluation; `err_est` is `r^{-gamma_err}`,
/// the order of the remainder, and `work` the number of terms.
pub fn eval_asymptotic<T: Real>(spec: &SeriesSpec<T>, r: T) -> Result<EvalResult<T>> {
    spec.validate()?;
    if !(r > T::zero()) || !r.is_finite() {
        return Err(Error::domain("eval_asymptotic", "r must be positive and finite"));
    }
    let form = leading_form(spec.a, spec.beta, spec.m, spec.m_prime)?;
    Ok(EvalResult {
        value: eval_form(&form, r),
        err_est: r.powf(-form.gamma_err),
        method: Method::Asym,
        work: form.terms.len() as u64,
    })
}

/// Derivative-table form using the resolved conventions.
pub fn derivative_series_form<T: Real>(
    kind: DerivKind,
    regime: Regime,
    a: T,
    beta: T,
) -> Result<AsymptoticForm<T>> {
    derivative_series_form_with(kind, regime, a, beta, Conventions::resolved())
}

/// Leading form of `sum_{l>=1} (l+beta)^a X_l(r) Y_l(r)` for the given kind and regime.
pub fn derivative_series_form_with<T: Real>(
    kind: DerivKind,
    regime: Regime,
    a: T,
    beta: T,
    conv: &Conventions,
) -> Result<AsymptoticForm<T>> {
    check_beta("derivative_series_form", beta)?;
    if Regime::of(a) != regime {
        return Err(Error::RegimeMismatch(format!(
            "a = {} does not belong to regime {:?}",
            a.as_f64(),
            regime
        )));
    }
    let one = T::one();
    let two = lit::<T>(2.0);
    let inv_pi = one / T::PI();
    match regime {
        Regime::AboveMinusOne => {
            let sqrt_pi = T::PI().sqrt();
            let half_a = a / two;
            let first = gamma((a + one) / two)? / (lit::<T>(4.0) * sqrt_pi * gamma(half_a + two)?);
            let coeff = match kind {
                DerivKind::JJ => {
                    two.powf(-a - one) * gamma(a + one)? / gamma(half_a + one)?.powi(2)
                }
                DerivKind::JdJ | DerivKind::dJddJ => T::zero(),
                DerivKind::dJdJ => first,
                DerivKind::JddJ => -first,
                DerivKind::ddJddJ => {
                    lit::<T>(3.0) * two.powf(-a - lit::<T>(5.0))
                        * (a + two)
                        * (a + lit::<T>(4.0))
                        * gamma(a + one)?
                        / gamma(half_a + lit::<T>(3.0))?.powi(2)
                }
            };
            let terms = if coeff == T::zero() { Vec::new() } else { vec![Term::new(coeff, -a, Osc::Const)] };
            Ok(AsymptoticForm { terms, gamma_err: -a, strict: true })
        }
        Regime::MinusOne => {
            let phi = phi_minus_one(one, beta + one)?;
            let psi = digamma(beta + one)?;
            let h = psi + lit::<T>(EULER_GAMMA);
            let euler = lit::<T>(EULER_GAMMA);
            let ln2 = T::LN_2();
            let c = |x: T| x * inv_pi;
            let osc = conv.log_case_oscillation == OscTerm::Present;
            let mut terms = Vec::new();
            match kind {
                DerivKind::JJ => {
                    // (-H_beta + log(2r) + gamma) / (pi r)
                    terms.push(Term::new(c(one), one, Osc::LogR));
                    terms.push(Term::new(c(-h + ln2 + euler), one, Osc::Const));
                    if osc {
                        terms.push(Term::new(c(-phi), one, Osc::Sin2r));
                    }
                }
                DerivKind::JdJ => terms.push(Term::new(c(-phi), one, Osc::Cos2r)),
                DerivKind::dJdJ => {
                    terms.push(Term::new(c(one), one, Osc::LogR));
                    terms.push(Term::new(c(-h + euler - one + ln2), one, Osc::Const));
                    if osc {
                        terms.push(Term::new(c(phi), one, Osc::Sin2r));
                    }
                }
                DerivKind::JddJ => {
                    terms.push(Term::new(c(-one), one, Osc::LogR));
                    terms.push(Term::new(c(psi - ln2 + one), one, Osc::Const));
                    if osc {
                        terms.push(Term::new(c(phi), one, Osc::Sin2r));
                    }
                }
                DerivKind::dJddJ => terms.push(Term::new(c(phi), one, Osc::Cos2r)),
                DerivKind::ddJddJ => {
                    let three = lit::<T>(3.0);
                    terms.push(Term::new(c(one), one, Osc::LogR));
                    terms.push(Term::new(
                        c((-three * psi - lit::<T>(4.0) + lit::<T>(8.0).ln()) / three),
                        one,
                        Osc::Const,
                    ));
                    if osc {
                        terms.push(Term::new(c(-phi), one, Osc::Sin2r));
                    }
                }
            }
            Ok(AsymptoticForm { terms, gamma_err: one, strict: true })
        }
        Regime::BelowMinusOne => {
            let alpha = -a;
            let z = hurwitz_zeta(alpha, beta + one)?;
            // 2^a (zeta(alpha, (beta+1)/2) - zeta(alpha, (beta+2)/2)) = Phi(-1, alpha, beta+1)
            let d = phi_minus_one(alpha, beta + one)?;
            let c = |x: T| x * inv_pi;
            let terms = match kind {
                DerivKind::JJ | DerivKind::ddJddJ => vec![
                    Term::new(c(z), one, Osc::Const),
                    Term::new(c(-d), one, Osc::Sin2r),
                ],
                DerivKind::JdJ => vec![Term::new(c(-d), one, Osc::Cos2r)],
                DerivKind::dJdJ => vec![
                    Term::new(c(z), one, Osc::Const),
                    Term::new(c(d), one, Osc::Sin2r),
                ],
                DerivKind::JddJ => {
                    let s = match conv.mixed_second_sign {
                        TableSign::Tabulated => one,
                        TableSign::Negated => -one,
                    };
                    vec![Term::new(c(s * z), one, Osc::Const), Term::new(c(-s * d), one, Osc::Sin2r)]
                }
                DerivKind::dJddJ => vec![Term::new(c(d), one, Osc::Cos2r)],
            };
            Ok(AsymptoticForm { terms, gamma_err: two, strict: true })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direct::{sum_series, SeriesSpec};

    fn form_value(form: &AsymptoticForm<f64>, r: f64) -> f64 {
        eval_form(form, r)
    }

    #[test]
    fn eval_form_basics() {
        let form = AsymptoticForm { terms: vec![Term::new(1.0, 1.0, Osc::Const)], gamma_err: 2.0, strict: false };
        assert!((form_value(&form, 10.0) - 0.1).abs() < 1e-16);
        let r = (PI / 2.0 + PI / 2.0) / 2.0 + PI;
        let t = Term::new(3.0, 0.5, Osc::Sin2r).with_phase(-PI / 2.0);
        assert!((t.eval(r) - 3.0 / r.sqrt()).abs() < 1e-12);
        let empty: AsymptoticForm<f64> = AsymptoticForm { terms: vec![], gamma_err: 1.0, strict: false };
        assert_eq!(eval_form(&empty, 5.0), 0.0);
    }

    #[test]
    fn noninteger_leading_coefficients() {
        let f = leading_noninteger(0.5, 0.0, 0, 0).unwrap();
        let want = (PI / 2.0).sqrt() / gamma(0.75_f64).unwrap().powi(2);
        assert!((f.terms[0].coeff - want).abs() < 1e-13);
        assert!((f.terms[0].coeff - 0.834_626_841_674_073).abs() < 1e-12);
        assert_eq!(f.gamma_err, 1.5);
        let g = leading_noninteger(0.5, 0.0, 2, 0).unwrap();
        let want = 2f64.powf(-0.5) * gamma(0.5_f64).unwrap()
            / (gamma(1.75_f64).unwrap() * gamma(-0.25_f64).unwrap());
        assert!((g.terms[0].coeff - want).abs() < 1e-13);
        assert!(g.terms[0].coeff < 0.0);
        let tiny = leading_noninteger(1e-9_f64, 0.0, 0, 0).unwrap();
        assert!((tiny.terms[0].coeff - 0.5_f64).abs() < 1e-8);
        assert!(leading_noninteger(2.0, 0.0, 0, 0).is_err());
    }

    #[test]
    fn integer_forms() {
        let f = leading_integer(1, 0.0, 0, 0).unwrap();
        let inv_pi = 1.0 / PI;
        assert!((f.terms[0].coeff - inv_pi).abs() < 1e-15);
        assert!((f.terms[1].coeff - inv_pi * (EULER_GAMMA + 2f64.ln())).abs() < 1e-14);
        assert!((f.terms[2].coeff + inv_pi * 2f64.ln()).abs() < 1e-14);
        assert!(f.strict);

        let g = leading_integer(2, 0.0, 0, 0).unwrap();
        assert!((g.terms[0].coeff - inv_pi * PI * PI / 6.0).abs() < 1e-14);
        assert!((g.terms[1].coeff - inv_pi * (0.5 - 1.0) * PI * PI / 6.0).abs() < 1e-14);

        // nu odd: the logarithm and harmonic terms vanish
        let h = leading_integer(1, 0.0_f64, 2, 1).unwrap();
        assert_eq!(h.terms[0].coeff, 0.0);
        assert!((h.terms[1].coeff - 0.5_f64).abs() < 1e-15);
        assert!((h.terms[2].phase + 1.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn nonneg_coefficients() {
        assert_eq!(leading_nonneg(0.0, 0, 0).unwrap().terms[0].coeff, 0.5);
        assert_eq!(leading_nonneg(0.0, 2, 0).unwrap().terms[0].coeff, 0.0);
        assert_eq!(leading_nonneg(0.0, 0, 4).unwrap().terms[0].coeff, 0.0);
        assert!((leading_nonneg(2.0, 0, 0).unwrap().terms[0].coeff - 0.25_f64).abs() < 1e-15);
        for nu in [1i64, 3, 5] {
            let c = nonneg_coefficient(0.0, nu).unwrap();
            let want = (nu as f64 * PI / 2.0).sin() / (PI * nu as f64);
            assert!((c - want).abs() < 1e-12, "nu={nu}");
        }
        for a in [1.0_f64, 2.0, 3.0] {
            for nu in [0i64, 1, 2] {
                let lhs: f64 = nonneg_coefficient(a, nu).unwrap();
                let rhs = 0.5
                    * (nonneg_coefficient(a - 1.0, (nu - 1).abs()).unwrap()
                        + nonneg_coefficient(a - 1.0, nu + 1).unwrap());
                assert!((lhs - rhs).abs() < 1e-12, "a={a} nu={nu}");
            }
        }
    }

    #[test]
    fn derivative_table_constants() {
        let f = derivative_series_form(DerivKind::dJdJ, Regime::AboveMinusOne, 0.0, 0.3).unwrap();
        assert!((f.terms[0].coeff - 0.25_f64).abs() < 1e-15);
        let z = derivative_series_form(DerivKind::JdJ, Regime::AboveMinusOne, 0.7, 0.0).unwrap();
        assert!(z.terms.is_empty());
        let conv = Conventions {
            oscillation_phase: PhaseConvention::Mu,
            log_case_oscillation: OscTerm::Absent,
            mixed_second_sign: TableSign::Negated,
            notes: String::new(),
        };
        let g = derivative_series_form_with(DerivKind::JJ, Regime::MinusOne, -1.0, 0.0, &conv).unwrap();
        let r = 37.0_f64;
        let want = ((2.0 * r).ln() + EULER_GAMMA) / (PI * r);
        assert!((eval_form(&g, r) - want).abs() < 1e-15);
        assert!(matches!(
            derivative_series_form(DerivKind::JJ, Regime::MinusOne, -2.0, 0.0),
            Err(Error::RegimeMismatch(_))
        ));
    }

    #[test]
    fn theorem_growth_against_oracle() {
        // sum l^2 J_l(r)^2 * 4 / r^2 -> 1
        let spec = SeriesSpec::new(2.0, 0.0, 0, 0).unwrap();
        let r = 300.0_f64;
        let s = sum_series(&spec, r, 1e-10).unwrap().value;
        let f = leading_nonneg(2.0, 0, 0).unwrap();
        assert!((s / eval_form(&f, r) - 1.0).abs() < 0.01);
    }

    #[test]
    fn resolved_conventions_load() {
        let c = Conventions::resolved();
        assert_eq!(c.oscillation_phase, PhaseConvention::Mu);
        assert_eq!(c.log_case_oscillation, OscTerm::Present);
        assert_eq!(c.mixed_second_sign, TableSign::Negated);
    }
}
