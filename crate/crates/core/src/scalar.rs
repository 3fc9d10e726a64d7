//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
///
/// Tolerances quoted throughout the crate are calibrated for `f64`; the
/// algorithms themselves run unchanged at single precision.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// Converts a count into `T`.
#[inline]
pub fn count<T: Scalar>(n: usize) -> T {
    T::from_usize(n).expect("count representable in scalar type")
}

/// Neumaier-compensated running sum.
///
/// Row sums of the double integrals are accumulated with this and then
/// combined in a fixed order, so results do not depend on how rows were
/// distributed across threads.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedSum<T> {
    sum: T,
    compensation: T,
}

impl<T: Scalar> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            compensation: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, value: T) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation = self.compensation + ((self.sum - t) + value);
        } else {
            self.compensation = self.compensation + ((value - t) + self.sum);
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> T {
        self.sum + self.compensation
    }
}

impl<T: Scalar> FromIterator<T> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated sum of an iterator.
pub fn compensated_sum<T: Scalar, I: IntoIterator<Item = T>>(values: I) -> T {
    values.into_iter().collect::<CompensatedSum<T>>().total()
}

/// Fifth-order accurate centered first derivative (five-point stencil).
pub(crate) fn centered_derivative<T: Scalar, F: FnMut(T) -> T>(mut f: F, x: T, h: T) -> T {
    let two = lit::<T>(2.0);
    let eight = lit::<T>(8.0);
    let twelve = lit::<T>(12.0);
    (f(x - two * h) - eight * f(x - h) + eight * f(x + h) - f(x + two * h)) / (twelve * h)
}

/// Same stencil for fallible functions.
pub(crate) fn try_centered_derivative<T, E, F>(mut f: F, x: T, h: T) -> Result<T, E>
where
    T: Scalar,
    F: FnMut(T) -> Result<T, E>,
{
    let two = lit::<T>(2.0);
    let eight = lit::<T>(8.0);
    let twelve = lit::<T>(12.0);
    Ok((f(x - two * h)? - eight * f(x - h)? + eight * f(x + h)? - f(x + two * h)?) / (twelve * h))
}
