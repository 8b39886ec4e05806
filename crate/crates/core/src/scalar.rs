//! Scalar abstraction shared by every numerical routine in the crate.

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

/// Real floating-point scalar the toolkit is generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// A tolerance given in f64 units, floored at 64 machine epsilons of `Self`.
    #[inline]
    fn tol(x: f64) -> Self {
        let floor = Self::epsilon() * Self::lit(64.0);
        Self::lit(x).max(floor)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `-x log2 x` with `0 log 0 = 0`.
#[inline]
pub fn xlog2x_neg<T: Real>(x: T) -> T {
    if x <= T::zero() {
        T::zero()
    } else {
        -x * x.log2()
    }
}
