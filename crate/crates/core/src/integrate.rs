//! Quadrature primitives: 21-point Gauss–Kronrod panels, a globally adaptive
//! bisection driver and a tanh-sinh rule for endpoint singularities.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::real::Real;

/// Values a quadrature rule can accumulate: real or complex.
pub trait QuadValue<T>:
    Copy + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<T, Output = Self>
{
    fn magnitude(&self) -> T;
}

impl<T: Real> QuadValue<T> for T {
    #[inline]
    fn magnitude(&self) -> T {
        self.abs()
    }
}

impl<T: Real> QuadValue<T> for Complex<T> {
    #[inline]
    fn magnitude(&self) -> T {
        self.norm()
    }
}

/// Outcome of a numerical integration.
#[derive(Debug, Clone, Copy)]
pub struct Integral<T, V> {
    pub value: V,
    pub err_est: T,
    pub evals: usize,
    pub converged: bool,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// One 21-point Kronrod panel on `[a, b]`; returns `(kronrod, |kronrod - gauss|)`.
pub fn gk21<T: Real, V: QuadValue<T>>(f: &mut impl FnMut(T) -> V, a: T, b: T) -> (V, T) {
    let center = (a + b) * T::lit(0.5);
    let half = (b - a) * T::lit(0.5);
    let fc = f(center);
    let mut kronrod = fc * T::lit(WGK[10]);
    let mut gauss = V::zero();
    for j in 0..10 {
        let dx = half * T::lit(XGK[j]);
        let s = f(center - dx) + f(center + dx);
        kronrod = kronrod + s * T::lit(WGK[j]);
        if j % 2 == 1 {
            gauss = gauss + s * T::lit(WG[j / 2]);
        }
    }
    let k = kronrod * half;
    let g = gauss * half;
    (k, (k - g).magnitude())
}

struct Panel<T, V> {
    a: T,
    b: T,
    value: V,
    err: T,
}

impl<T: Real, V> PartialEq for Panel<T, V> {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl<T: Real, V> Eq for Panel<T, V> {}
impl<T: Real, V> PartialOrd for Panel<T, V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real, V> Ord for Panel<T, V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(Ordering::Equal)
    }
}

/// Globally adaptive Gauss–Kronrod integration over the partition `breaks`.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below `max(abs_tol, rel_tol * |I|)` or `max_panels` is hit.
pub fn adaptive<T: Real, V: QuadValue<T>>(
    mut f: impl FnMut(T) -> V,
    breaks: &[T],
    abs_tol: T,
    rel_tol: T,
    max_panels: usize,
) -> Integral<T, V> {
    let mut heap = BinaryHeap::new();
    let mut total = V::zero();
    let mut err = T::zero();
    let mut evals = 0;
    for w in breaks.windows(2) {
        let (v, e) = gk21(&mut f, w[0], w[1]);
        evals += 21;
        total = total + v;
        err = err + e;
        heap.push(Panel { a: w[0], b: w[1], value: v, err: e });
    }
    let floor = T::epsilon() * T::lit(50.0);
    loop {
        let target = abs_tol.max(rel_tol * total.magnitude());
        if err <= target {
            return Integral { value: total, err_est: err, evals, converged: true };
        }
        if heap.len() >= max_panels {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = (worst.a + worst.b) * T::lit(0.5);
        if (worst.b - worst.a).abs() <= floor * worst.a.abs().max(worst.b.abs()) {
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk21(&mut f, worst.a, mid);
        let (v2, e2) = gk21(&mut f, mid, worst.b);
        evals += 42;
        total = total - worst.value + v1 + v2;
        err = err - worst.err + e1 + e2;
        heap.push(Panel { a: worst.a, b: mid, value: v1, err: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, err: e2 });
    }
    // recompute the sum to shed accumulated cancellation
    let mut value = V::zero();
    let mut e = T::zero();
    for p in heap.iter() {
        value = value + p.value;
        e = e + p.err;
    }
    Integral { value, err_est: e, evals, converged: false }
}

/// Fixed composite 21-point Kronrod rule on `panels` equal subintervals.
pub fn composite_gk21<T: Real, V: QuadValue<T>>(
    mut f: impl FnMut(T) -> V,
    a: T,
    b: T,
    panels: usize,
) -> (V, T) {
    let n = panels.max(1);
    let h = (b - a) / T::from_int(n as i64);
    let mut value = V::zero();
    let mut err = T::zero();
    for i in 0..n {
        let lo = a + h * T::from_int(i as i64);
        let hi = if i + 1 == n { b } else { lo + h };
        let (v, e) = gk21(&mut f, lo, hi);
        value = value + v;
        err = err + e;
    }
    (value, err)
}

/// Tanh-sinh quadrature on `(0, len]`, resolving an integrable singularity at 0.
///
/// The integrand is called with the abscissa measured from the left endpoint,
/// which is never rounded to zero. Levels halve the step until two successive
/// estimates agree within `max(abs_tol, rel_tol * |I|)`.
pub fn tanh_sinh_left<T: Real, V: QuadValue<T>>(
    mut f: impl FnMut(T) -> V,
    len: T,
    abs_tol: T,
    rel_tol: T,
    max_level: usize,
) -> Integral<T, V> {
    let half_pi = T::FRAC_PI_2();
    let t_max = T::lit(6.0);
    let min_x = T::min_positive_value() * T::lit(1e20);

    // contribution of node t (paired with -t for t > 0)
    let node = |t: T, f: &mut dyn FnMut(T) -> V| -> V {
        let u = half_pi * t.sinh();
        let du = half_pi * t.cosh();
        // nodes len / (1 + e^{-2u}) and its mirror len e^{-2u} / (1 + e^{-2u})
        let e = (-T::lit(2.0) * u).exp();
        let left = len / (T::one() + e);
        let right = len * e / (T::one() + e);
        // dx/dt = len * du / (2 cosh^2 u) = len * du * e / (1 + e)^2 * 2
        let w = len * du * T::lit(2.0) * e / ((T::one() + e) * (T::one() + e));
        if !w.is_finite() || w == T::zero() {
            return V::zero();
        }
        let mut acc = V::zero();
        if left > min_x && left < len {
            acc = acc + f(left) * w;
        }
        if t > T::zero() && right > min_x {
            acc = acc + f(right) * w;
        }
        acc
    };

    let mut h = T::lit(0.5);
    let mut evals = 0usize;
    let mut sum = node(T::zero(), &mut f);
    evals += 1;
    let mut k = 1;
    loop {
        let t = h * T::from_int(k);
        if t > t_max {
            break;
        }
        sum = sum + node(t, &mut f);
        evals += 2;
        k += 1;
    }
    let mut estimate = sum * h;
    let mut err = T::infinity();
    for _level in 1..=max_level {
        h = h * T::lit(0.5);
        let mut k = 1;
        loop {
            let t = h * T::from_int(k);
            if t > t_max {
                break;
            }
            sum = sum + node(t, &mut f);
            evals += 2;
            k += 2;
        }
        let next = sum * h;
        err = (next - estimate).magnitude();
        estimate = next;
        if err <= abs_tol.max(rel_tol * estimate.magnitude()) {
            return Integral { value: estimate, err_est: err, evals, converged: true };
        }
    }
    Integral { value: estimate, err_est: err, evals, converged: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn kronrod_is_exact_for_polynomials() {
        let (v, e) = gk21(&mut |x: f64| x.powi(18), -1.0, 1.0);
        assert_relative_eq!(v, 2.0 / 19.0, max_relative = 1e-14);
        assert!(e < 1e-10);
    }

    #[test]
    fn adaptive_oscillatory() {
        // int_0^{20} cos(7x) dx = sin(140)/7
        let breaks: Vec<f64> = (0..=10).map(|i| 2.0 * i as f64).collect();
        let r = adaptive(|x: f64| (7.0 * x).cos(), &breaks, 1e-14, 1e-13, 500);
        assert!(r.converged);
        assert_relative_eq!(r.value, 140f64.sin() / 7.0, epsilon = 1e-13);
    }

    #[test]
    fn adaptive_complex() {
        let r = adaptive(
            |x: f64| Complex::new(0.0, x).exp(),
            &[0.0, std::f64::consts::PI],
            1e-14,
            1e-13,
            100,
        );
        assert!((r.value - Complex::new(0.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn tanh_sinh_endpoint_singularities() {
        // int_0^1 x^{-0.7} dx = 1/0.3
        let r = tanh_sinh_left(|x: f64| x.powf(-0.7), 1.0, 1e-15, 1e-13, 10);
        assert_relative_eq!(r.value, 1.0 / 0.3, max_relative = 1e-10);
        // int_0^2 ln(x) dx = 2 ln 2 - 2
        let r = tanh_sinh_left(|x: f64| x.ln(), 2.0, 1e-15, 1e-13, 10);
        assert_relative_eq!(r.value, 2.0 * 2f64.ln() - 2.0, max_relative = 1e-12);
        // smooth integrand
        let r = tanh_sinh_left(|x: f64| x.exp(), 1.0, 1e-15, 1e-14, 10);
        assert_relative_eq!(r.value, std::f64::consts::E - 1.0, max_relative = 1e-13);
    }
}
