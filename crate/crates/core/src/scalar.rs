//! Scalar abstraction shared by the numerical kernels.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating point type the kernels are generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + Sum + Default + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal; infallible for the supported float types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex scalar over a [`Real`].
pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn czero<T: Real>() -> C<T> {
    C::new(T::zero(), T::zero())
}

#[inline]
pub(crate) fn cone<T: Real>() -> C<T> {
    C::new(T::one(), T::zero())
}

#[inline]
pub(crate) fn creal<T: Real>(x: T) -> C<T> {
    C::new(x, T::zero())
}

/// e^{iα}
#[inline]
pub(crate) fn cis<T: Real>(alpha: T) -> C<T> {
    C::new(alpha.cos(), alpha.sin())
}
