//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar the kernels are written against.
///
/// Implemented for `f32` and `f64`. Accuracy targets quoted in the docs refer
/// to `f64`; the `f32` instantiation is accurate to a few ulps of `f32`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    /// Converts an integer into `Self`.
    #[inline]
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("representable integer")
    }

    /// Lossy conversion to `f64`, used for bookkeeping and reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `true` when `self` is an integer (within exact representation).
    #[inline]
    fn is_integer(self) -> bool {
        self.is_finite() && self == self.round()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `(-1)^n` for an integer `n`.
#[inline]
pub(crate) fn sign_pow<T: Real>(n: i64) -> T {
    if n.rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    }
}
