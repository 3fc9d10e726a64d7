//! Small fixed-size vectors in the plane and in three-space.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

/// Point (or free vector) of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2<T> {
    pub x1: T,
    pub x2: T,
}

impl<T: Scalar> Point2<T> {
    pub const fn new(x1: T, x2: T) -> Self {
        Self { x1, x2 }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn dot(self, other: Self) -> T {
        self.x1 * other.x1 + self.x2 * other.x2
    }

    /// `det(a, b) = a1 b2 - a2 b1`.
    pub fn det(self, other: Self) -> T {
        self.x1 * other.x2 - self.x2 * other.x1
    }

    pub fn norm_squared(self) -> T {
        self.dot(self)
    }

    pub fn norm(self) -> T {
        self.x1.hypot(self.x2)
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(self) -> Self {
        Self::new(-self.x2, self.x1)
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    pub fn rotated(self, angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x1 - s * self.x2, s * self.x1 + c * self.x2)
    }

    pub fn lerp(self, other: Self, s: T) -> Self {
        self + (other - self) * s
    }

    pub fn to_array(self) -> [T; 2] {
        [self.x1, self.x2]
    }
}

impl<T: Scalar> Add for Point2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x1 + rhs.x1, self.x2 + rhs.x2)
    }
}

impl<T: Scalar> Sub for Point2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x1 - rhs.x1, self.x2 - rhs.x2)
    }
}

impl<T: Scalar> Mul<T> for Point2<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        Self::new(self.x1 * rhs, self.x2 * rhs)
    }
}

impl<T: Scalar> Neg for Point2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x1, -self.x2)
    }
}

impl<T: Scalar> From<[T; 2]> for Point2<T> {
    fn from(a: [T; 2]) -> Self {
        Self::new(a[0], a[1])
    }
}

/// Unit vector of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitVector2<T>(Point2<T>);

impl<T: Scalar> UnitVector2<T> {
    /// Normalizes `v`; fails on the zero or a non-finite vector.
    pub fn normalize(v: Point2<T>) -> Result<Self> {
        let n = v.norm();
        if !(n.is_finite() && n > T::zero()) {
            return Err(Error::InvalidArgument("cannot normalize a zero or non-finite vector".into()));
        }
        Ok(Self(v * (T::one() / n)))
    }

    /// Accepts `v` only if it already has unit length within `1e-12`.
    pub fn try_new(v: Point2<T>) -> Result<Self> {
        let defect = (v.norm_squared() - T::one()).abs();
        if !(defect <= lit(1e-12)) {
            return Err(Error::InvalidArgument(format!(
                "vector is not of unit length (|v|^2 - 1 = {defect})"
            )));
        }
        Ok(Self(v))
    }

    pub(crate) fn new_unchecked(v: Point2<T>) -> Self {
        Self(v)
    }

    pub fn from_angle(angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        Self(Point2::new(c, s))
    }

    pub fn e1() -> Self {
        Self(Point2::new(T::one(), T::zero()))
    }

    pub fn e2() -> Self {
        Self(Point2::new(T::zero(), T::one()))
    }

    pub fn get(self) -> Point2<T> {
        self.0
    }

    pub fn u1(self) -> T {
        self.0.x1
    }

    pub fn u2(self) -> T {
        self.0.x2
    }

    pub fn reversed(self) -> Self {
        Self(-self.0)
    }

    pub fn rotated(self, angle: T) -> Self {
        Self(self.0.rotated(angle))
    }
}

/// Point (or free vector) of three-space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3<T> {
    pub x1: T,
    pub x2: T,
    pub x3: T,
}

impl<T: Scalar> Point3<T> {
    pub const fn new(x1: T, x2: T, x3: T) -> Self {
        Self { x1, x2, x3 }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn dot(self, o: Self) -> T {
        self.x1 * o.x1 + self.x2 * o.x2 + self.x3 * o.x3
    }

    /// Minkowski form `a1 b1 + a2 b2 - a3 b3`.
    pub fn minkowski_dot(self, o: Self) -> T {
        self.x1 * o.x1 + self.x2 * o.x2 - self.x3 * o.x3
    }

    pub fn cross(self, o: Self) -> Self {
        Self::new(
            self.x2 * o.x3 - self.x3 * o.x2,
            self.x3 * o.x1 - self.x1 * o.x3,
            self.x1 * o.x2 - self.x2 * o.x1,
        )
    }

    pub fn norm_squared(self) -> T {
        self.dot(self)
    }

    pub fn norm(self) -> T {
        self.norm_squared().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    pub fn to_array(self) -> [T; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn component(self, i: usize) -> T {
        match i {
            0 => self.x1,
            1 => self.x2,
            2 => self.x3,
            _ => panic!("component index {i} out of range"),
        }
    }

    pub fn basis(i: usize) -> Self {
        let mut a = [T::zero(); 3];
        a[i] = T::one();
        a.into()
    }
}

/// `det[a; b; c]` with the vectors as rows.
pub fn det3<T: Scalar>(a: Point3<T>, b: Point3<T>, c: Point3<T>) -> T {
    a.dot(b.cross(c))
}

impl<T: Scalar> Add for Point3<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x1 + rhs.x1, self.x2 + rhs.x2, self.x3 + rhs.x3)
    }
}

impl<T: Scalar> Sub for Point3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x1 - rhs.x1, self.x2 - rhs.x2, self.x3 - rhs.x3)
    }
}

impl<T: Scalar> Mul<T> for Point3<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        Self::new(self.x1 * rhs, self.x2 * rhs, self.x3 * rhs)
    }
}

impl<T: Scalar> Neg for Point3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x1, -self.x2, -self.x3)
    }
}

impl<T: Scalar> From<[T; 3]> for Point3<T> {
    fn from(a: [T; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}
