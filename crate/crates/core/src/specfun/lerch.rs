//! Lerch transcendent `Phi(z, s, v)` on the unit circle, `z = -e^{2i phi}`.
//!
//! Points are addressed either by the angle `phi` in `[0, pi]` or by the offset
//! `d = pi/2 - phi`, in which `z = e^{-2id}`. The offset form keeps full relative
//! precision close to the branch point `z = 1`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::integrate::{adaptive, tanh_sinh_left};
use crate::real::Real;

use super::accel::levin_u;
use super::gamma::{digamma, gamma};
use super::zeta::{hurwitz_zeta, phi_minus_one};

/// Complex value of a Lerch evaluation.
pub type ComplexValue<T> = Complex<T>;

/// Offsets with `|2d|` below this use the expansion around `z = 1`.
const LOCAL_RADIUS: f64 = 0.5;

fn work_tol<T: Real>() -> T {
    T::lit(1e-13).max(T::epsilon() * T::lit(100.0))
}

fn check_params<T: Real>(function: &'static str, alpha: T, v: T) -> Result<()> {
    if !(alpha > T::zero()) || !alpha.is_finite() {
        return Err(Error::domain(function, "alpha must be positive"));
    }
    if !(v > T::zero()) || !v.is_finite() {
        return Err(Error::domain(function, "v must be positive"));
    }
    Ok(())
}

fn check_angle<T: Real>(function: &'static str, phi: T) -> Result<()> {
    if !(phi >= T::zero() && phi <= T::PI()) {
        return Err(Error::domain(function, "phi must lie in [0, pi]"));
    }
    Ok(())
}

fn check_offset<T: Real>(function: &'static str, d: T) -> Result<()> {
    if !(d.abs() <= T::FRAC_PI_2()) {
        return Err(Error::domain(function, "offset must lie in [-pi/2, pi/2]"));
    }
    Ok(())
}

fn ensure_finite<T: Real>(function: &'static str, z: Complex<T>) -> Result<Complex<T>> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::domain(function, "non-finite result"))
    }
}

/// `e^w - 1` for complex `w` without cancellation at small `|w|`.
pub(crate) fn expm1_complex<T: Real>(w: Complex<T>) -> Complex<T> {
    // e^{x+iy} - 1 = expm1(x) cos y + (cos y - 1) + i e^x sin y
    let (s, c) = w.im.sin_cos();
    let half = w.im * T::lit(0.5);
    let cos_m1 = -T::lit(2.0) * half.sin() * half.sin();
    Complex::new(w.re.exp_m1() * c + cos_m1, w.re.exp() * s)
}

/// `Phi(-e^{2i phi}, alpha, v)` for `phi` in `[0, pi]`, `alpha > 0`, `v > 0`.
///
/// Quadrature of the Laplace-type integral is the main route; within `0.25`
/// of `phi = pi/2` the expansion in powers of `log z` is used instead.
pub fn lerch_unit<T: Real>(phi: T, alpha: T, v: T) -> Result<ComplexValue<T>> {
    check_angle("lerch_unit", phi)?;
    check_params("lerch_unit", alpha, v)?;
    if phi == T::zero() || phi == T::PI() {
        return Ok(Complex::new(phi_minus_one(alpha, v)?, T::zero()));
    }
    lerch_unit_offset(T::FRAC_PI_2() - phi, alpha, v)
}

/// `Phi(e^{-2id}, alpha, v)` addressed by the offset `d = pi/2 - phi` in `[-pi/2, pi/2]`.
pub fn lerch_unit_offset<T: Real>(d: T, alpha: T, v: T) -> Result<ComplexValue<T>> {
    check_offset("lerch_unit", d)?;
    check_params("lerch_unit", alpha, v)?;
    if d.abs() == T::FRAC_PI_2() {
        return Ok(Complex::new(phi_minus_one(alpha, v)?, T::zero()));
    }
    if (T::lit(2.0) * d).abs() < T::lit(LOCAL_RADIUS) {
        local_expansion(d, alpha, v)
    } else {
        quadrature(d, alpha, v)
    }
}

/// Quadrature route at angle `phi`; rejects `phi = pi/2`.
pub fn lerch_unit_quadrature<T: Real>(phi: T, alpha: T, v: T) -> Result<ComplexValue<T>> {
    check_angle("lerch_unit_quadrature", phi)?;
    check_params("lerch_unit_quadrature", alpha, v)?;
    let d = T::FRAC_PI_2() - phi;
    if d == T::zero() {
        return Err(Error::Singularity("z = 1 is not reachable by the integral route".into()));
    }
    quadrature(d, alpha, v)
}

/// Expansion around `z = 1` at angle `phi`.
///
/// Converges for every `phi` in `(0, pi)`; accurate to working precision
/// while `|pi - 2 phi|` stays below about 1.
pub fn lerch_unit_local<T: Real>(phi: T, alpha: T, v: T) -> Result<ComplexValue<T>> {
    check_angle("lerch_unit_local", phi)?;
    check_params("lerch_unit_local", alpha, v)?;
    local_expansion(T::FRAC_PI_2() - phi, alpha, v)
}

/// Direct series `sum z^n (n + v)^-alpha` with Levin u acceleration.
///
/// Returns the estimate and the Levin error estimate. Unreliable close to
/// `phi = pi/2`, where the terms barely rotate.
pub fn lerch_unit_series<T: Real>(phi: T, alpha: T, v: T) -> Result<(ComplexValue<T>, T)> {
    check_angle("lerch_unit_series", phi)?;
    check_params("lerch_unit_series", alpha, v)?;
    let d = T::FRAC_PI_2() - phi;
    if d == T::zero() && alpha <= T::one() {
        return Err(Error::Singularity("series diverges at z = 1 for alpha <= 1".into()));
    }
    let z = Complex::new(T::zero(), -T::lit(2.0) * d).exp();
    let mut zn = Complex::new(T::one(), T::zero());
    let order = if T::epsilon() < T::lit(1e-10) { 40 } else { 16 };
    let (value, err) = levin_u(order, |n| {
        let t = zn * (T::from_int(n as i64) + v).powf(-alpha);
        zn = zn * z;
        t
    });
    Ok((ensure_finite("lerch_unit_series", value)?, err))
}

fn quadrature<T: Real>(d: T, alpha: T, v: T) -> Result<ComplexValue<T>> {
    let tol = work_tol::<T>();
    let two_id = Complex::new(T::zero(), T::lit(2.0) * d);
    // 1 - z e^{-t} = -(e^{-(t + 2id)} - 1)
    let kernel = |t: T| -> Complex<T> {
        let den = -expm1_complex(-(Complex::new(t, T::zero()) + two_id));
        Complex::new((-v * t).exp(), T::zero()) / den
    };
    let b1 = d.abs().min(T::one());
    let scale = gamma(alpha)? * v.powf(-alpha);

    // t = b1 s^{1/alpha} absorbs t^{alpha-1} into the Jacobian
    let inv_alpha = T::one() / alpha;
    let jac = b1.powf(alpha) * inv_alpha;
    let head = tanh_sinh_left(
        |s: T| kernel(b1 * s.powf(inv_alpha)) * jac,
        T::one(),
        tol * T::lit(1e-2) * scale,
        tol,
        12,
    );

    // tail panels grow geometrically, capped at 8/v, until t^{alpha-1} e^{-vt} is negligible
    let cutoff = T::lit(1e-18) * scale;
    let cap = T::lit(8.0) / v;
    let mut breaks = vec![b1];
    let mut t = b1;
    loop {
        let step = t.min(cap);
        t = t + step;
        breaks.push(t);
        let size = t.powf(alpha - T::one()) * (-v * t).exp() * t;
        if size < cutoff || breaks.len() > 400 {
            break;
        }
    }
    let tail = adaptive(
        |t: T| kernel(t) * t.powf(alpha - T::one()),
        &breaks,
        tol * T::lit(1e-2) * scale,
        tol,
        2000,
    );
    if !head.converged && head.err_est > T::lit(1e-8) * scale {
        return Err(Error::NonConvergence {
            method: "lerch_unit quadrature",
            err_est: head.err_est.as_f64(),
            work: head.evals,
        });
    }
    if !tail.converged && tail.err_est > T::lit(1e-8) * scale {
        return Err(Error::NonConvergence {
            method: "lerch_unit quadrature",
            err_est: tail.err_est.as_f64(),
            work: tail.evals,
        });
    }
    let value = (head.value + tail.value) / Complex::new(gamma(alpha)?, T::zero());
    ensure_finite("lerch_unit", value)
}

fn local_expansion<T: Real>(d: T, s: T, v: T) -> Result<ComplexValue<T>> {
    let two_d = T::lit(2.0) * d;
    if d == T::zero() {
        if s > T::one() {
            return Ok(Complex::new(hurwitz_zeta(s, v)?, T::zero()));
        }
        return Err(Error::Singularity(format!(
            "Phi(1, {}, v) diverges for order <= 1",
            s.as_f64()
        )));
    }
    // log z = -2id; -log z = 2id with principal argument +-pi/2
    let log_z = Complex::new(T::zero(), -two_d);
    let ln_abs = two_d.abs().ln();
    let arg = if d > T::zero() { T::FRAC_PI_2() } else { -T::FRAC_PI_2() };
    let log_minus_log_z = Complex::new(ln_abs, arg);

    let integer_order = if s.is_integer() { s.to_i64() } else { None };
    let mut sum = match integer_order {
        Some(_) => Complex::new(T::zero(), T::zero()),
        None => {
            // Gamma(1-s) (-log z)^{s-1}
            let pow = (log_minus_log_z * (s - T::one())).exp();
            pow * gamma(T::one() - s)?
        }
    };

    let eps = T::epsilon() * T::lit(0.1);
    let mut power = Complex::new(T::one(), T::zero()); // (log z)^k / k!
    let mut small_run = 0;
    for k in 0..200usize {
        let kk = T::from_int(k as i64);
        let term = if integer_order == Some(k as i64 + 1) {
            let psi_n = digamma(s)?;
            let psi_v = digamma(v)?;
            power * (Complex::new(psi_n - psi_v, T::zero()) - log_minus_log_z)
        } else {
            power * hurwitz_zeta(s - kk, v)?
        };
        sum = sum + term;
        if term.norm() <= eps * sum.norm() {
            small_run += 1;
            if small_run >= 2 {
                break;
            }
        } else {
            small_run = 0;
        }
        power = power * log_z / (kk + T::one());
    }
    // z^{-v} = e^{2idv}
    let z_pow = Complex::new(T::zero(), two_d * v).exp();
    ensure_finite("lerch_unit", z_pow * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn close(a: Complex<f64>, b: Complex<f64>, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    fn log_series(phi: f64) -> Complex<f64> {
        let e = Complex::new(0.0, 2.0 * phi).exp();
        (Complex::new(1.0, 0.0) + e).ln() / e
    }

    #[test]
    fn phi_zero_is_alternating_value() {
        for &(s, v) in &[(0.5_f64, 1.0_f64), (2.0, 0.7), (3.0, 2.0)] {
            let got = lerch_unit(0.0, s, v).unwrap();
            assert_eq!(got.im, 0.0);
            assert!((got.re - phi_minus_one(s, v).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn logarithm_closed_form() {
        for &phi in &[0.1, 0.4, 0.8, 1.2, 1.4, 1.5, 1.56] {
            let got = lerch_unit(phi, 1.0, 1.0).unwrap();
            assert!(close(got, log_series(phi), 1e-11), "phi={phi} got={got}");
        }
    }

    #[test]
    fn quarter_turn_against_partial_sums() {
        // sum (-1)^n i^n / (n+1)^2, terms decay like n^-2: average two
        // consecutive partial sums after pairing to get well below 1e-10
        let z = Complex::new(0.0, -1.0);
        let mut zn = Complex::new(1.0, 0.0);
        let mut acc = Complex::new(0.0, 0.0);
        let n_terms = 4_000_000usize;
        for n in 0..n_terms {
            acc += zn / ((n as f64 + 1.0) * (n as f64 + 1.0));
            zn *= z;
        }
        // remainder of a period-4 series with n^-2 decay is O(n^-2); the bound is loose
        let got = lerch_unit(FRAC_PI_4, 2.0, 1.0).unwrap();
        assert!((got - acc).norm() < 1e-12, "got={got} acc={acc}");
    }

    #[test]
    fn routes_agree() {
        for &alpha in &[0.3, 0.5, 1.0, 1.5, 2.0, 3.5] {
            for &v in &[0.2, 1.0, 2.5] {
                for &phi in &[0.3, 0.9, 1.2, 1.35] {
                    let quad = lerch_unit_quadrature(phi, alpha, v).unwrap();
                    let (series, _) = lerch_unit_series(phi, alpha, v).unwrap();
                    assert!(close(quad, series, 1e-9), "alpha={alpha} v={v} phi={phi}");
                    if phi > 1.0 {
                        let local = lerch_unit_local(phi, alpha, v).unwrap();
                        assert!(close(quad, local, 1e-10), "local alpha={alpha} v={v} phi={phi}");
                    }
                }
            }
        }
    }

    #[test]
    fn shift_identity() {
        for &alpha in &[0.5, 1.0, 2.0, 2.5] {
            for &phi in &[0.2, 1.0, 1.5, 1.58, 2.5] {
                let v = 0.75_f64;
                let z = -Complex::new(0.0, 2.0 * phi).exp();
                let lhs = lerch_unit(phi, alpha, v).unwrap();
                let rhs = z * lerch_unit(phi, alpha, v + 1.0).unwrap() + v.powf(-alpha);
                assert!(close(lhs, rhs, 1e-10), "alpha={alpha} phi={phi}");
            }
        }
    }

    #[test]
    fn branch_point() {
        let got = lerch_unit(FRAC_PI_2, 2.0, 1.0).unwrap();
        assert!((got.re - PI * PI / 6.0).abs() < 1e-13);
        assert!(matches!(lerch_unit(FRAC_PI_2, 1.0, 1.0), Err(Error::Singularity(_))));
        assert!(matches!(lerch_unit(FRAC_PI_2, 0.5, 1.0), Err(Error::Singularity(_))));
        assert!(matches!(lerch_unit(-0.1, 2.0, 1.0), Err(Error::Domain { .. })));
        assert!(matches!(lerch_unit(1.0, 0.0, 1.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn conjugate_symmetry() {
        for &phi in &[0.3, 1.1, 1.5] {
            let a = lerch_unit(phi, 1.5, 1.3).unwrap();
            let b = lerch_unit(PI - phi, 1.5, 1.3).unwrap();
            assert!(close(a, b.conj(), 1e-12));
        }
    }

    #[test]
    fn single_precision() {
        let got = lerch_unit(0.7_f32, 1.0, 1.0).unwrap();
        let want = log_series(0.7);
        assert!((got.re as f64 - want.re).abs() < 1e-5);
        assert!((got.im as f64 - want.im).abs() < 1e-5);
    }
}
