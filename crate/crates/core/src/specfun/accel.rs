//! Convergence acceleration for slowly convergent series.

use num_complex::Complex;

use crate::real::Real;

/// Sum `sum_{k>=0} (-1)^k a_k` for a totally monotone sequence `a_k`
/// with the Cohen–Rodriguez Villegas–Zagier weights.
///
/// The error after `n` terms is about `5.83^-n` times `a_0`.
pub fn alternating_sum<T: Real>(n: usize, mut term: impl FnMut(usize) -> T) -> T {
    let nn = T::from_int(n as i64);
    let base = T::lit(3.0) + T::lit(8.0).sqrt();
    let mut d = base.powf(nn);
    d = (d + T::one() / d) * T::lit(0.5);
    let mut b = -T::one();
    let mut c = -d;
    let mut s = T::zero();
    for k in 0..n {
        c = b - c;
        s = s + c * term(k);
        let kk = T::from_int(k as i64);
        b = (kk + nn) * (kk - nn) * b / ((kk + T::lit(0.5)) * (kk + T::one()));
    }
    s / d
}

/// Number of CVZ terms that exhausts the precision of `T`.
pub(crate) fn alternating_terms<T: Real>() -> usize {
    let digits = -T::epsilon().log10().as_f64();
    (digits / 0.765).ceil() as usize + 2
}

/// Levin u-transform of a complex series given by its terms.
///
/// Returns the best estimate together with the difference between the
/// last two transforms, which serves as an error estimate.
pub fn levin_u<T: Real>(
    max_order: usize,
    mut term: impl FnMut(usize) -> Complex<T>,
) -> (Complex<T>, T) {
    let beta = T::one();
    let mut numer: Vec<Complex<T>> = Vec::with_capacity(max_order + 1);
    let mut denom: Vec<Complex<T>> = Vec::with_capacity(max_order + 1);
    let mut partial = Complex::new(T::zero(), T::zero());
    let mut best = Complex::new(T::zero(), T::zero());
    let mut prev = Complex::new(T::nan(), T::nan());
    let mut best_err = T::infinity();

    for n in 0..=max_order {
        let a = term(n);
        partial = partial + a;
        let nn = T::from_int(n as i64);
        let omega = a * (beta + nn);
        if omega.norm() == T::zero() {
            return (partial, T::zero());
        }
        let inv = Complex::new(T::one(), T::zero()) / omega;
        numer.push(partial * inv);
        denom.push(inv);
        // Walk the anti-diagonal: afterwards numer[0] holds the order-n transform.
        for k in 1..=n {
            let idx = n - k;
            let kk = T::from_int(k as i64);
            let base = beta + T::from_int(idx as i64);
            let c = base / (base + kk - T::one())
                * ((base + kk - T::one()) / (base + kk)).powf(kk - T::one());
            numer[idx] = numer[idx + 1] - numer[idx] * c;
            denom[idx] = denom[idx + 1] - denom[idx] * c;
        }
        if n >= 2 {
            let est = numer[0] / denom[0];
            if est.re.is_finite() && est.im.is_finite() {
                let err = (est - prev).norm();
                if err < best_err {
                    best_err = err;
                    best = est;
                }
                prev = est;
            }
        } else {
            prev = partial;
        }
    }
    (best, best_err)
}
