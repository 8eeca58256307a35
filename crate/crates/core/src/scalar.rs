//! Scalar abstraction shared by the numerical modules.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the quadrature and series code is written against.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal. Every supported type represents all finite
    /// `f64` values up to rounding.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    /// Whole number as a scalar.
    #[inline]
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer representable")
    }

    /// Lossy conversion used for reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
