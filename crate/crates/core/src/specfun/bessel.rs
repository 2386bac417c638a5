//! Integer-order Bessel functions of the first kind by backward recurrence.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::real::{sign_pow, Real};

/// `J_0(r), ..., J_{order_max}(r)` at one argument.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BesselRow<T> {
    pub order_max: usize,
    pub argument: T,
    pub values: Vec<T>,
}

impl<T: Real> BesselRow<T> {
    /// `J_n(r)` for any integer `n` (reflection for negative orders), zero past `order_max`.
    pub fn get(&self, n: i64) -> T {
        if n < 0 {
            return sign_pow::<T>(n) * self.get(-n);
        }
        self.values.get(n as usize).copied().unwrap_or_else(T::zero)
    }

    /// `|J_0^2 + 2 sum_{k>=1} J_k^2 - 1|` over the stored orders.
    pub fn normalization_residual(&self) -> T {
        let mut acc = T::zero();
        for (k, v) in self.values.iter().enumerate() {
            let w = if k == 0 { T::one() } else { T::lit(2.0) };
            acc = acc + w * *v * *v;
        }
        (acc - T::one()).abs()
    }
}

/// Start order for the backward recurrence.
fn start_order(order_max: usize, r: f64) -> usize {
    let top = (order_max as f64).max(r.ceil());
    let n = top + 10.0 + 10.0 * top.max(1.0).sqrt();
    let n = n.ceil() as usize;
    n + (n & 1)
}

/// All of `J_0(r)..J_{order_max}(r)` for `r >= 0`.
///
/// Miller recurrence started well above `max(order_max, r)`; the magnitude is
/// fixed by `J_0^2 + 2 sum J_k^2 = 1` and the sign by `J_0 + 2 sum J_2k = 1`.
pub fn bessel_j_row<T: Real>(order_max: usize, r: T) -> Result<BesselRow<T>> {
    if !(r >= T::zero()) || !r.is_finite() {
        return Err(Error::domain("bessel_j_row", "argument must be finite and nonnegative"));
    }
    let mut values = vec![T::zero(); order_max + 1];
    if r == T::zero() {
        values[0] = T::one();
        return Ok(BesselRow { order_max, argument: r, values });
    }

    if r < T::lit(1e-5) {
        // three terms of the power series are exact to rounding here
        let h = r * T::lit(0.5);
        let h2 = h * h;
        let mut lead = T::one();
        for (n, v) in values.iter_mut().enumerate() {
            let n1 = T::from_int(n as i64 + 1);
            *v = lead * (T::one() - h2 / n1 + h2 * h2 / (T::lit(2.0) * n1 * (n1 + T::one())));
            lead = lead * h / n1;
        }
        return Ok(BesselRow { order_max, argument: r, values });
    }

    let start = start_order(order_max, r.as_f64());
    let big = T::max_value().powf(T::lit(0.25));
    let inv_big = T::one() / big;
    let two_over_r = T::lit(2.0) / r;

    let mut above = T::zero(); // j_{k+1}
    let mut cur = T::one(); // j_k
    let mut sum_sq = T::zero();
    let mut sum_even = T::zero();
    let mut k = start;
    loop {
        if k <= order_max {
            values[k] = cur;
        }
        let weight = if k == 0 { T::one() } else { T::lit(2.0) };
        sum_sq = sum_sq + weight * cur * cur;
        if k % 2 == 0 {
            sum_even = sum_even + weight * cur;
        }
        if k == 0 {
            break;
        }
        let below = T::from_int(k as i64) * two_over_r * cur - above;
        above = cur;
        cur = below;
        k -= 1;
        if cur.abs() > big {
            cur = cur * inv_big;
            above = above * inv_big;
            sum_sq = sum_sq * inv_big * inv_big;
            sum_even = sum_even * inv_big;
            for v in values.iter_mut().skip(k + 1) {
                *v = *v * inv_big;
            }
        }
    }
    let mut scale = T::one() / sum_sq.sqrt();
    if sum_even < T::zero() {
        scale = -scale;
    }
    for v in values.iter_mut() {
        *v = *v * scale;
    }
    Ok(BesselRow { order_max, argument: r, values })
}

/// `J_n(x)` for integer `n` and real `x` of either sign.
pub fn bessel_j<T: Real>(n: i64, x: T) -> T {
    let order = n.unsigned_abs() as usize;
    let mut sign = if n < 0 { sign_pow::<T>(n) } else { T::one() };
    if x < T::zero() {
        sign = sign * sign_pow::<T>(n);
    }
    match bessel_j_row(order, x.abs()) {
        Ok(row) => sign * row.values[order],
        Err(_) => T::nan(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Power series of J_n, summed until terms vanish (oracle for moderate x).
    fn series_j(n: u32, x: f64) -> f64 {
        let half = x / 2.0;
        let mut term = half.powi(n as i32);
        for k in 1..=n {
            term /= k as f64;
        }
        let mut acc = term;
        let mut k = 0.0;
        loop {
            k += 1.0;
            term *= -half * half / (k * (k + n as f64));
            acc += term;
            if term.abs() < 1e-18 * acc.abs().max(1e-300) {
                break;
            }
        }
        acc
    }

    #[test]
    fn origin_row() {
        let row = bessel_j_row(3, 0.0_f64).unwrap();
        assert_eq!(row.values, vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn agrees_with_power_series() {
        let row = bessel_j_row(0, 2.0_f64).unwrap();
        assert_relative_eq!(row.values[0], 0.223_890_779_141_235_67, epsilon = 1e-15);
        for &x in &[0.1, 0.7, 1.0, 2.5, 5.0, 8.0] {
            let row = bessel_j_row(12, x).unwrap();
            for n in 0..=12u32 {
                assert!((row.values[n as usize] - series_j(n, x)).abs() < 1e-13, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn normalization_and_bound() {
        let row = bessel_j_row(40, 10.0_f64).unwrap();
        assert!(row.normalization_residual() < 1e-12);
        let mut bound = 1.0_f64;
        for (l, v) in row.values.iter().enumerate() {
            if l > 0 {
                bound *= 5.0 / l as f64;
            }
            assert!(v.abs() <= bound * (1.0 + 1e-12) + 1e-300);
        }
    }

    #[test]
    fn three_term_recurrence() {
        for &r in &[0.5_f64, 1.0, 3.3, 10.0, 27.0, 50.0] {
            let row = bessel_j_row(80, r).unwrap();
            for l in 1..79 {
                let lhs = row.values[l - 1] + row.values[l + 1];
                let rhs = 2.0 * l as f64 / r * row.values[l];
                let scale = lhs.abs().max(rhs.abs()).max(1e-300);
                if row.values[l].abs() > 1e-250 {
                    assert!((lhs - rhs).abs() <= 1e-11 * scale + 1e-15, "r={r} l={l}");
                }
            }
        }
    }

    #[test]
    fn large_argument_known_values() {
        // J_0(100), J_1(100) reference values
        let row = bessel_j_row(1, 100.0_f64).unwrap();
        assert_relative_eq!(row.values[0], 0.019_985_850_304_223_122, epsilon = 1e-14);
        assert_relative_eq!(row.values[1], -0.077_145_352_014_112_16, epsilon = 1e-14);
        let row = bessel_j_row(0, 1000.0_f64).unwrap();
        assert_relative_eq!(row.values[0], 0.024_786_686_152_420_174, epsilon = 1e-13);
    }

    #[test]
    fn tiny_argument_is_stable() {
        let row = bessel_j_row(20, 1e-6_f64).unwrap();
        assert!(bessel_j_row(3, 1e-290_f64).unwrap().values.iter().all(|v| v.is_finite()));
        assert_relative_eq!(row.values[0], 1.0 - 2.5e-13, epsilon = 1e-15);
        assert_relative_eq!(row.values[1], 5e-7, max_relative = 1e-12);
        assert!(row.values[20].is_finite());
    }

    #[test]
    fn reflection_and_sign() {
        let x = 3.7_f64;
        assert_relative_eq!(bessel_j(-3, x), -bessel_j(3, x), epsilon = 1e-16);
        assert_relative_eq!(bessel_j(2, -x), bessel_j(2, x), epsilon = 1e-16);
        assert_relative_eq!(bessel_j(1, -x), -bessel_j(1, x), epsilon = 1e-16);
    }

    #[test]
    fn single_precision_row() {
        let row = bessel_j_row(5, 2.0_f32).unwrap();
        assert!((row.values[0] - 0.223_890_78).abs() < 1e-6);
        assert!(row.normalization_residual() < 1e-5);
    }
}
