use std::iter::Sum;

use num_traits::{Float, FloatConst};
use rustfft::FftNum;

/// Floating-point scalar the whole crate is generic over: `f32` or `f64`.
///
/// `FftNum` brings `FromPrimitive`, `Signed`, `Send + Sync + 'static`;
/// `Float + FloatConst` supply the usual arithmetic and `PI`. Conversions
/// from counts and literals go through `num_traits::NumCast`
/// (`S::from(x).unwrap()`), which is infallible for the values used here.
pub trait Scalar: Float + FloatConst + FftNum + Sum + for<'a> Sum<&'a Self> {}

impl<T> Scalar for T where T: Float + FloatConst + FftNum + Sum + for<'a> Sum<&'a T> {}
