//! Amplitude function `F_{alpha,beta,mu}(phi) = sum_{l>=1} (-1)^l cos((mu + 2l) phi) / (l + beta)^alpha`
//! evaluated through the Lerch transcendent on the unit circle.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;
use crate::specfun::{gamma, lerch_unit_offset, ComplexValue};

/// Parameters of the amplitude function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FParams<T> {
    /// Decay exponent, `alpha > 0`.
    pub alpha: T,
    /// Shift, `beta > -1`.
    pub beta: T,
    /// Order sum `m + m'`.
    pub mu: u32,
}

impl<T: Real> FParams<T> {
    pub fn new(alpha: T, beta: T, mu: u32) -> Result<Self> {
        let p = FParams { alpha, beta, mu };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > T::zero()) || !self.alpha.is_finite() {
            return Err(Error::domain("FParams", "alpha must be positive"));
        }
        if !(self.beta > -T::one()) || !self.beta.is_finite() {
            return Err(Error::domain("FParams", "beta must exceed -1"));
        }
        Ok(())
    }
}

/// Which side of `phi = pi/2` a local model describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Below,
    Above,
}

/// `i^mu e^{-i d (mu + 2)}`.
fn phase_factor<T: Real>(mu: u32, d: T) -> Complex<T> {
    let quarter = match mu % 4 {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    };
    let angle = -d * T::from_int(mu as i64 + 2);
    quarter * Complex::new(angle.cos(), angle.sin())
}

/// `F_{alpha,beta,mu}(phi)` for `phi` in `[0, pi]`.
pub fn f_eval<T: Real>(p: &FParams<T>, phi: T) -> Result<T> {
    if !(phi >= T::zero() && phi <= T::PI()) {
        return Err(Error::domain("f_eval", "phi must lie in [0, pi]"));
    }
    f_eval_offset(p, T::FRAC_PI_2() - phi)
}

/// `F` at `phi = pi/2 - d`, `d` in `[-pi/2, pi/2]`.
///
/// With `z = e^{-2id}` this is `Re(i^mu e^{-id(mu+2)} Phi(z, alpha, beta+1))`.
pub fn f_eval_offset<T: Real>(p: &FParams<T>, d: T) -> Result<T> {
    p.validate()?;
    let lerch = lerch_unit_offset(d, p.alpha, p.beta + T::one())?;
    Ok((phase_factor(p.mu, d) * lerch).re)
}

/// Two-sided definition of `F` built from two independent Lerch evaluations.
///
/// The real part equals [`f_eval`]; the imaginary part should vanish and is
/// reported as a consistency diagnostic.
pub fn f_symmetrized<T: Real>(p: &FParams<T>, phi: T) -> Result<ComplexValue<T>> {
    if !(phi >= T::zero() && phi <= T::PI()) {
        return Err(Error::domain("f_symmetrized", "phi must lie in [0, pi]"));
    }
    p.validate()?;
    let d = T::FRAC_PI_2() - phi;
    let v = p.beta + T::one();
    let forward = lerch_unit_offset(d, p.alpha, v)?;
    let backward = lerch_unit_offset(-d, p.alpha, v)?;
    // -(1/2) e^{-i phi (mu+2)} (e^{2 i phi (mu+2)} Phi(-e^{2i phi}) + Phi(-e^{-2i phi}))
    let k = T::from_int(p.mu as i64 + 2);
    let e = Complex::new(T::zero(), phi * k).exp();
    Ok((e * forward + e.conj() * backward) * (-T::lit(0.5)))
}

/// Leading local behaviour of `F` next to `phi = pi/2` for `0 < alpha < 1`.
///
/// Below: `Gamma(1-alpha) (pi - 2 phi)^{alpha-1} sin(pi (mu + alpha) / 2)`.
/// Above: `-Gamma(1-alpha) (2 phi - pi)^{alpha-1} sin(pi (mu - alpha) / 2)`.
pub fn f_singular_model<T: Real>(p: &FParams<T>, phi: T, side: Side) -> Result<T> {
    p.validate()?;
    if !(p.alpha < T::one()) {
        return Err(Error::domain("f_singular_model", "model requires alpha < 1"));
    }
    let gap = T::PI() - T::lit(2.0) * phi;
    let below = gap > T::zero();
    if gap == T::zero() || below != (side == Side::Below) {
        return Err(Error::domain("f_singular_model", "phi is not on the requested side of pi/2"));
    }
    let g = gamma(T::one() - p.alpha)?;
    let mu = T::from_int(p.mu as i64);
    let half_pi = T::FRAC_PI_2();
    let value = match side {
        Side::Below => g * gap.powf(p.alpha - T::one()) * (half_pi * (mu + p.alpha)).sin(),
        Side::Above => -g * (-gap).powf(p.alpha - T::one()) * (half_pi * (mu - p.alpha)).sin(),
    };
    Ok(value)
}

/// `F_{0,mu}(phi) = -cos((mu + 1) phi) / (2 cos phi)`, the formal `alpha = 0` member.
pub fn f_alpha_zero_closed_form<T: Real>(mu: u32, phi: T) -> Result<T> {
    let c = phi.cos();
    if (phi - T::FRAC_PI_2()).abs() <= T::epsilon() * T::lit(4.0) || c == T::zero() {
        return Err(Error::Singularity("F_{0,mu} is singular at phi = pi/2".into()));
    }
    Ok(-(T::from_int(mu as i64 + 1) * phi).cos() / (T::lit(2.0) * c))
}
