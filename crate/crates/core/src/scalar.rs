use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point scalar used throughout the crate.
///
/// Implemented for `f32` and `f64`. Every model quantity (rates, queue
/// lengths, times) is carried in the same scalar type so the whole pipeline
/// can run in either precision.
pub trait Real:
    'static
    + Send
    + Sync
    + Float
    + FloatConst
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + LowerExp
{
    /// Converts an `f64` literal. Panics only if the literal is not
    /// representable, which cannot happen for `f32`/`f64`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `sech(x)^2`, evaluated without overflowing `cosh` for large `|x|`.
    #[inline]
    fn sech2(self) -> Self {
        let e = (-(self.abs() + self.abs())).exp();
        let four = Self::lit(4.0);
        four * e / ((Self::one() + e) * (Self::one() + e))
    }
}

impl Real for f32 {}
impl Real for f64 {}
