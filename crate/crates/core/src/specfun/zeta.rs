//! Hurwitz zeta function and the alternating Lerch value `Phi(-1, s, a)`.

use crate::error::{Error, Result};
use crate::real::Real;

use super::accel::{alternating_sum, alternating_terms};

/// `B_2, B_4, ..., B_32`.
const BERNOULLI_EVEN: [f64; 16] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
];

/// Euler–Maclaurin tail is applied once the shifted argument reaches this value.
const SHIFT_TARGET: f64 = 15.0;

/// Hurwitz zeta `zeta(s, a) = sum_{n>=0} (n + a)^-s`, analytically continued in `s`.
///
/// Euler–Maclaurin summation: the argument is shifted to `a + N >= 15` and the
/// tail is closed with the Bernoulli numbers `B_2..B_32`. Accurate to about
/// `1e-14` relative for `s > 0`; for negative `s` the direct part grows like
/// `15^(1-s)`, so precision degrades gradually below `s = -15`.
pub fn hurwitz_zeta<T: Real>(s: T, a: T) -> Result<T> {
    if s.is_nan() || a.is_nan() {
        return Err(Error::domain("hurwitz_zeta", "NaN argument"));
    }
    if s == T::one() {
        return Err(Error::Pole { function: "hurwitz_zeta", at: 1.0 });
    }
    if !(a > T::zero()) {
        return Err(Error::domain("hurwitz_zeta", "a must be positive"));
    }
    let target = T::lit(SHIFT_TARGET);
    let mut direct = T::zero();
    let mut x = a;
    while x < target {
        direct = direct + x.powf(-s);
        x = x + T::one();
    }
    let x_pow = x.powf(-s);
    let mut tail = x * x_pow / (s - T::one()) + T::lit(0.5) * x_pow;

    // B_2k/(2k)! * s (s+1) ... (s+2k-2) * x^(-s-2k+1)
    let inv_x2 = T::one() / (x * x);
    let mut rising = s; // s (s+1) ... (s+2k-2)
    let mut fact = T::lit(2.0); // (2k)!
    let mut power = x_pow / x; // x^(-s-2k+1)
    let mut last = T::infinity();
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = T::lit(*b) / fact * rising * power;
        if term.abs() > last && k > 2 {
            // asymptotic series started to diverge
            break;
        }
        tail = tail + term;
        last = term.abs();
        if term.abs() <= T::epsilon() * T::lit(1e-3) * (direct + tail).abs() {
            break;
        }
        let k2 = T::from_int(2 * k as i64 + 2);
        rising = rising * (s + k2 - T::one()) * (s + k2);
        fact = fact * (k2 + T::one()) * (k2 + T::lit(2.0));
        power = power * inv_x2;
    }
    Ok(direct + tail)
}

/// Riemann zeta `zeta(s) = zeta(s, 1)`.
pub fn riemann_zeta<T: Real>(s: T) -> Result<T> {
    hurwitz_zeta(s, T::one())
}

/// `Phi(-1, s, a) = sum_{n>=0} (-1)^n (n + a)^-s`.
///
/// Near `s = 1` (and always at `s = 1`) the accelerated alternating series is
/// used; elsewhere the zeta difference `(zeta(s, a/2) - zeta(s, (a+1)/2)) / 2^s`.
pub fn phi_minus_one<T: Real>(s: T, a: T) -> Result<T> {
    if !(a > T::zero()) {
        return Err(Error::domain("phi_minus_one", "a must be positive"));
    }
    if s > T::zero() && (s - T::one()).abs() < T::lit(0.25) {
        return phi_minus_one_series(s, a);
    }
    phi_minus_one_zeta(s, a)
}

/// Zeta-difference route for `Phi(-1, s, a)`, `s != 1`.
pub fn phi_minus_one_zeta<T: Real>(s: T, a: T) -> Result<T> {
    let half = T::lit(0.5);
    let lo = hurwitz_zeta(s, a * half)?;
    let hi = hurwitz_zeta(s, (a + T::one()) * half)?;
    Ok((lo - hi) / T::lit(2.0).powf(s))
}

/// Accelerated alternating-series route for `Phi(-1, s, a)`, `s > 0`.
pub fn phi_minus_one_series<T: Real>(s: T, a: T) -> Result<T> {
    if !(s > T::zero()) {
        return Err(Error::domain("phi_minus_one_series", "series route needs s > 0"));
    }
    if !(a > T::zero()) {
        return Err(Error::domain("phi_minus_one_series", "a must be positive"));
    }
    let n = alternating_terms::<T>();
    Ok(alternating_sum(n, |k| (T::from_int(k as i64) + a).powf(-s)))
}
