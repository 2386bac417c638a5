//! Fixed values: classical constants, values frozen from independent
//! arbitrary-precision evaluations (mpmath, 40 digits), and exact identities.

use std::f64::consts::{LN_2, PI};

use approx::assert_relative_eq;
use bnsum_core::asymptotics::{
    derivative_series_form, leading_integer, leading_noninteger, leading_nonneg, nonneg_coefficient,
};
use bnsum_core::direct::turan_difference;
use bnsum_core::fseries::{f_alpha_zero_closed_form, f_eval, FParams};
use bnsum_core::quadrature::{eval_exp2d, eval_exp2d_detailed, eval_hankel, eval_lifted};
use bnsum_core::specfun::{
    bessel_j_row, digamma, gamma, harmonic_extended, hurwitz_zeta, lerch_unit, phi_minus_one,
    reciprocal_gamma, EULER_GAMMA,
};
use bnsum_core::{
    eval_form, sum_derivative_series, sum_series, DerivKind, Error, QuadratureConfig, Regime, SeriesSpec,
};

const ZETA3_MINUS_ONE: f64 = 0.202_056_903_159_594_285_4;
const J0_AT_2: f64 = 0.223_890_779_141_235_668_1;
const LERCH_QUARTER_TURN: (f64, f64) = (0.915_965_594_177_219_015_1, -0.205_616_758_356_028_304_6);
const F_ALPHA_1_5_AT_0_3: f64 = -0.696_244_738_828_611_558_2;
const NEUMANN_A0_R2: f64 = 0.474_936_459_507_765_2;
const DJDJ_A0_R5: f64 = 0.196_345_954_307_415_948_3;

fn spec(a: f64, beta: f64, m: u32, mp: u32) -> SeriesSpec<f64> {
    SeriesSpec::new(a, beta, m, mp).unwrap()
}

#[test]
fn gamma_classical_values() {
    assert_relative_eq!(gamma(1.0_f64).unwrap(), 1.0, max_relative = 1e-15);
    assert_relative_eq!(gamma(0.5_f64).unwrap(), PI.sqrt(), max_relative = 1e-14);
    assert_relative_eq!(gamma(5.0_f64).unwrap(), 24.0, max_relative = 1e-14);
    assert!(matches!(gamma(-2.0_f64), Err(Error::Pole { .. })));
}

#[test]
fn reciprocal_gamma_vanishes_at_poles() {
    assert_eq!(reciprocal_gamma(0.0_f64), 0.0);
    assert_eq!(reciprocal_gamma(-1.0_f64), 0.0);
    assert_relative_eq!(reciprocal_gamma(2.0_f64), 1.0, max_relative = 1e-15);
}

#[test]
fn digamma_classical_values() {
    assert_relative_eq!(digamma(1.0_f64).unwrap(), -EULER_GAMMA, max_relative = 1e-14);
    assert_relative_eq!(digamma(2.0_f64).unwrap(), 1.0 - EULER_GAMMA, max_relative = 1e-14);
    assert_relative_eq!(digamma(0.5_f64).unwrap(), -EULER_GAMMA - 2.0 * LN_2, max_relative = 1e-14);
}

#[test]
fn harmonic_numbers_extended() {
    assert!(harmonic_extended(0.0_f64).unwrap().abs() < 1e-15);
    assert_relative_eq!(harmonic_extended(1.0_f64).unwrap(), 1.0, max_relative = 1e-14);
    assert_relative_eq!(harmonic_extended(0.5_f64).unwrap(), 2.0 - 2.0 * LN_2, max_relative = 1e-13);
}

#[test]
fn hurwitz_zeta_values() {
    assert_relative_eq!(hurwitz_zeta(2.0_f64, 1.0).unwrap(), PI * PI / 6.0, max_relative = 1e-14);
    assert_relative_eq!(hurwitz_zeta(3.0_f64, 2.0).unwrap(), ZETA3_MINUS_ONE, max_relative = 1e-13);
    for a in [0.5_f64, 1.0, 2.0] {
        assert!((hurwitz_zeta(0.0, a).unwrap() - (0.5 - a)).abs() < 1e-13, "a={a}");
    }
}

#[test]
fn alternating_zeta_values() {
    assert_relative_eq!(phi_minus_one(1.0_f64, 1.0).unwrap(), LN_2, max_relative = 1e-13);
    assert_relative_eq!(phi_minus_one(2.0_f64, 1.0).unwrap(), PI * PI / 12.0, max_relative = 1e-13);
    let z3 = hurwitz_zeta(3.0_f64, 1.0).unwrap();
    assert_relative_eq!(phi_minus_one(3.0_f64, 1.0).unwrap(), (1.0 - 0.25) * z3, max_relative = 1e-13);
}

#[test]
fn lerch_on_unit_circle() {
    for (alpha, v) in [(0.5_f64, 1.0_f64), (2.0, 0.5)] {
        let at_zero = lerch_unit(0.0, alpha, v).unwrap();
        assert!((at_zero.re - phi_minus_one(alpha, v).unwrap()).abs() < 1e-13);
        assert!(at_zero.im.abs() < 1e-15);
    }
    let q = lerch_unit(PI / 4.0, 2.0_f64, 1.0).unwrap();
    assert!((q.re - LERCH_QUARTER_TURN.0).abs() < 1e-12);
    assert!((q.im - LERCH_QUARTER_TURN.1).abs() < 1e-12);
    for phi in [0.2_f64, 0.7, 1.3] {
        // Phi(z,1,1) = -log(1-z)/z with z = -e^{2i phi}
        let z = num_complex::Complex::from_polar(1.0, 2.0 * phi) * -1.0;
        let want = -(num_complex::Complex::new(1.0, 0.0) - z).ln() / z;
        let got = lerch_unit(phi, 1.0, 1.0).unwrap();
        assert!((got - want).norm() < 1e-12, "phi={phi}");
    }
}

#[test]
fn bessel_rows() {
    let row = bessel_j_row(3, 0.0_f64).unwrap();
    assert_eq!(row.values, vec![1.0, 0.0, 0.0, 0.0]);
    let row = bessel_j_row(0, 2.0_f64).unwrap();
    assert_relative_eq!(row.values[0], J0_AT_2, max_relative = 1e-14);
    let row = bessel_j_row(40, 10.0_f64).unwrap();
    assert!(row.normalization_residual() <= 1e-12);
}

#[test]
fn amplitude_function_values() {
    let p = FParams::new(2.0_f64, 0.0, 0).unwrap();
    assert_relative_eq!(f_eval(&p, PI / 2.0).unwrap(), PI * PI / 6.0, max_relative = 1e-10);
    let p = FParams::new(1.5_f64, 0.0, 0).unwrap();
    assert!((f_eval(&p, 0.3).unwrap() - F_ALPHA_1_5_AT_0_3).abs() < 1e-10);
    for mu in [0u32, 1, 4] {
        let p = FParams::new(0.7_f64, 0.2, mu).unwrap();
        let sign = if mu % 2 == 0 { 1.0 } else { -1.0 };
        let x = f_eval(&p, 0.4).unwrap();
        let y = f_eval(&p, PI - 0.4).unwrap();
        assert!((y - sign * x).abs() < 1e-9, "mu={mu}");
    }
    assert_eq!(f_alpha_zero_closed_form(0, 0.0_f64).unwrap(), -0.5);
    assert!((f_alpha_zero_closed_form(0, PI / 4.0).unwrap() + 0.5_f64).abs() < 1e-15);
    assert_eq!(f_alpha_zero_closed_form(2, 0.0_f64).unwrap(), -0.5);
}

#[test]
fn direct_sum_values() {
    for m in [0u32, 3] {
        assert_eq!(sum_series(&spec(-1.0, 0.0, m, 1), 0.0, 1e-12).unwrap().value, 0.0);
    }
    let s = sum_series(&spec(0.0, 0.0, 0, 0), 2.0, 1e-12).unwrap();
    assert!((s.value - NEUMANN_A0_R2).abs() < 1e-15);
    assert!((s.value - (1.0 - J0_AT_2 * J0_AT_2) / 2.0).abs() < 1e-15);
    for beta in [0.0, 2.5] {
        for n in 1..=2u32 {
            let row = bessel_j_row(2 * n as usize, 3.0_f64).unwrap();
            let closed: f64 = (0..=2 * n as i64)
                .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } * row.get(k) * row.get(2 * n as i64 - k))
                .sum::<f64>()
                * -0.5;
            let got = sum_series(&spec(0.0, beta, 2 * n, 0), 3.0, 1e-13).unwrap().value;
            assert!((got - closed).abs() < 1e-13, "beta={beta} n={n}");
        }
    }
}

#[test]
fn derivative_sum_values() {
    let s = sum_derivative_series(DerivKind::dJdJ, 0.0, 0.0, 5.0, 1e-13).unwrap();
    assert!((s.value - DJDJ_A0_R5).abs() < 1e-13);
    for a in [-1.0, 0.0, 2.0] {
        assert_eq!(sum_derivative_series(DerivKind::JdJ, a, 0.3, 0.0, 1e-12).unwrap().value, 0.0);
    }
    let plain = sum_series(&spec(2.0, 0.0, 0, 0), 10.0, 1e-12).unwrap().value;
    let kind = sum_derivative_series(DerivKind::JJ, 2.0, 0.0, 10.0, 1e-12).unwrap().value;
    assert_eq!(plain, kind);
}

#[test]
fn turan_difference_positive_on_grid() {
    for nu in 1..=5u32 {
        for k in 1..=300 {
            assert!(turan_difference(nu, 0.1 * k as f64).unwrap() >= -1e-14);
        }
    }
}

#[test]
fn integral_representations_match_direct_sum() {
    let cfg = QuadratureConfig::default();
    let s = spec(-2.0, 0.0, 0, 0);
    let oracle = sum_series(&s, 3.0, 1e-12).unwrap().value;
    let h = eval_hankel(&s, 3.0, &cfg).unwrap().value;
    assert!((h - oracle).abs() < 1e-8);
    let e = eval_exp2d(&s, 3.0, &cfg).unwrap().value;
    assert!((e - h).abs() < 1e-6);

    assert!(eval_hankel(&spec(-1.5, 0.5, 1, 0), 0.0, &cfg).unwrap().value.abs() < 1e-14);
    assert!(eval_hankel(&spec(-0.5, 0.0, 1, 1), 0.0, &cfg).unwrap().value.abs() < 1e-10);
    let imag = eval_exp2d_detailed(&spec(-1.5, 0.0, 2, 0), 1.0, &cfg).unwrap().imag_residue;
    assert!(imag.abs() <= 1e-8);
    for m in [0u32, 2] {
        assert!(eval_exp2d(&spec(-1.5, 0.0, m, 0), 0.0, &cfg).unwrap().value.abs() < 1e-10);
    }
    assert!(matches!(eval_hankel(&spec(0.5, 0.0, 0, 0), 1.0, &cfg), Err(Error::Domain { .. })));
}

#[test]
fn lifted_evaluation_matches_direct_sum() {
    let cfg = QuadratureConfig::default();
    let j0 = bessel_j_row(0, 5.0_f64).unwrap().values[0];
    let v = eval_lifted(&spec(0.0, 0.0, 0, 0), 5.0, &cfg).unwrap().value;
    assert!((v - (1.0 - j0 * j0) / 2.0).abs() < 1e-7);
    let s = spec(1.0, 0.0, 1, 0);
    let v = eval_lifted(&s, 10.0, &cfg).unwrap().value;
    assert!((v - sum_series(&s, 10.0, 1e-12).unwrap().value).abs() < 1e-6);
    let v = eval_lifted(&spec(0.0, 0.5, 2, 0), 1e-6, &cfg).unwrap().value;
    assert!(v.abs() < 1e-10);
}

#[test]
fn asymptotic_coefficients() {
    let f = leading_noninteger(0.5_f64, 0.0, 0, 0).unwrap();
    assert_relative_eq!(f.terms[0].coeff, (PI / 2.0).sqrt() / gamma(0.75_f64).unwrap().powi(2), max_relative = 1e-13);
    let g = leading_noninteger(0.5_f64, 0.0, 2, 0).unwrap();
    assert!(g.terms[0].coeff.is_finite() && g.terms[0].coeff < 0.0);

    // (log r + gamma + log 2 - ln 2 sin 2r) / (pi r)
    let f = leading_integer(1, 0.0_f64, 0, 0).unwrap();
    for r in [50.0_f64, 123.4] {
        let want = (r.ln() + EULER_GAMMA + LN_2 - LN_2 * (2.0 * r).sin()) / (PI * r);
        assert!((eval_form(&f, r) - want).abs() < 1e-15);
    }
    // alpha = 2, beta = 0: (zeta(2) + (2^{-1} - 1) zeta(2) sin 2r) / (pi r) with mu = 0
    let f = leading_integer(2, 0.0_f64, 0, 0).unwrap();
    let z2 = PI * PI / 6.0;
    let r = 77.0;
    assert!((eval_form(&f, r) - (z2 - 0.5 * z2 * (2.0 * r).sin()) / (PI * r)).abs() < 1e-15);
    // nu odd: ((pi/2) sin(pi nu/2) - ln 2 sin(2r - pi mu/2)) / (pi r)
    let f = leading_integer(1, 0.0_f64, 2, 1).unwrap();
    let want = (PI / 2.0 * (PI / 2.0_f64).sin() - LN_2 * (2.0 * r - 1.5 * PI).sin()) / (PI * r);
    assert!((eval_form(&f, r) - want).abs() < 1e-15);

    assert_eq!(leading_nonneg(0.0_f64, 0, 0).unwrap().terms[0].coeff, 0.5);
    assert_eq!(leading_nonneg(0.0_f64, 2, 0).unwrap().terms[0].coeff, 0.0);
    assert_relative_eq!(nonneg_coefficient(2.0_f64, 0).unwrap(), 0.25, max_relative = 1e-14);

    let d = derivative_series_form(DerivKind::dJdJ, Regime::AboveMinusOne, 0.0_f64, 0.4).unwrap();
    assert_relative_eq!(d.terms[0].coeff, 0.25, max_relative = 1e-14);
    let z = derivative_series_form(DerivKind::JdJ, Regime::AboveMinusOne, 1.3_f64, 0.0).unwrap();
    assert_eq!(eval_form(&z, 10.0), 0.0);
    let j = derivative_series_form(DerivKind::JdJ, Regime::MinusOne, -1.0_f64, 0.0).unwrap();
    assert!((eval_form(&j, 40.0) + LN_2 * 80.0_f64.cos() / (PI * 40.0)).abs() < 1e-16);
}
