//! Scalar abstraction: the numeric core is generic over the floating-point
//! type via `num-traits`. The pipeline, I/O and CLI layers use the `f64`
//! aliases exported from the crate root.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating-point scalar usable throughout the numeric core.
pub trait Scalar:
    Float + FloatConst + NumAssignOps + FromPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float
        + FloatConst
        + NumAssignOps
        + FromPrimitive
        + Sum
        + Debug
        + Display
        + Default
        + Send
        + Sync
        + 'static
{
}

/// Shorthand for converting an `f64` literal into `T`.
#[inline]
pub(crate) fn lit<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("literal not representable in scalar type")
}

/// 2π f, in rad/s.
#[inline]
pub fn hz_to_rad<T: Scalar>(f_hz: T) -> T {
    T::TAU() * f_hz
}

/// Ω / 2π, in Hz.
#[inline]
pub fn rad_to_hz<T: Scalar>(omega: T) -> T {
    omega / T::TAU()
}
