//! Special functions: gamma family, Hurwitz zeta, Lerch transcendent on the
//! unit circle and integer-order Bessel functions.

mod accel;
mod bessel;
mod gamma;
mod lerch;
mod zeta;

pub use accel::{alternating_sum, levin_u};
pub use bessel::{bessel_j, bessel_j_row, BesselRow};
pub use gamma::{digamma, gamma, harmonic_extended, ln_gamma, reciprocal_gamma, EULER_GAMMA};
pub use lerch::{
    lerch_unit, lerch_unit_local, lerch_unit_offset, lerch_unit_quadrature, lerch_unit_series,
    ComplexValue,
};
pub use zeta::{hurwitz_zeta, phi_minus_one, phi_minus_one_series, phi_minus_one_zeta, riemann_zeta};

#[allow(unused_imports)]
pub(crate) use gamma::{cos_pi, sin_pi};
