//! Scalar abstraction for the floating-point side of the crate.
//!
//! Numeric modules are generic over [`Real`] so the whole analytic stack can
//! be instantiated at `f32` or `f64`. The crate-root aliases pin `f64` as the
//! default; tests that probe tolerance scaling can swap in `f32`.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};
use rustfft::FftNum;
use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

/// Floating-point scalar usable everywhere in the numeric stack.
///
/// `FftNum` brings `Copy + Send + Sync + Debug + 'static` plus the FFT
/// requirements; the rest is ordinary float arithmetic and formatting.
pub trait Real:
    Float
    + FloatConst
    + FftNum
    + FromPrimitive
    + Sum<Self>
    + for<'a> Sum<&'a Self>
    + Display
    + LowerExp
    + Debug
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FftNum
        + FromPrimitive
        + Sum<T>
        + for<'a> Sum<&'a T>
        + Display
        + LowerExp
        + Debug
{
}

/// Shorthand for writing literals in generic code: `rl::<T>(0.5)`.
#[inline]
pub fn rl<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal out of range for scalar type")
}

/// Complex number over the generic scalar.
pub type C<T> = Complex<T>;

/// Sum of `|z|^2` over a complex slice.
pub fn norm_sqr_sum<T: Real>(v: &[C<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic_pi<T: Real>() -> T {
        T::PI()
    }

    #[test]
    fn instantiates_at_both_widths() {
        assert!((generic_pi::<f64>() - std::f64::consts::PI).abs() < 1e-15);
        assert!((generic_pi::<f32>() - std::f32::consts::PI).abs() < 1e-6);
        assert_eq!(rl::<f64>(0.25), 0.25);
    }
}
