use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst};

/// Floating point scalar usable by the closed-form geometry: `f32` or `f64`.
pub trait Scalar: Float + FloatConst + Debug + Display + Default + Send + Sync + 'static {
    /// Converts an `f64` literal. Every `Float` can represent (a rounding of) any `f64`.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).unwrap()
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap()
    }

    /// Absolute tolerance for "the same point" checks, 1e-12 in `f64`.
    #[inline]
    fn closure_tolerance() -> Self {
        Self::lit(1e-12).max(Self::epsilon() * Self::lit(64.0))
    }

    #[inline]
    fn sqrt3() -> Self {
        Self::lit(3.0).sqrt()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
