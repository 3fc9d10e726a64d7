use crate::error::Result;
use crate::scalar::{lit, try_centered_derivative, Scalar};

use super::lagrangian::{Lagrangian, DERIVATIVE_STEP};
use super::path::{shoot, Path};

/// One-parameter family of extremals `u(s, t)`, `s` in `parameters()`,
/// `t` in `times()`, with `u(base(), .)` the distinguished extremal `f_o`.
pub trait SolutionFamily<T: Scalar>: Sync {
    fn leaf(&self, s: T, t: T) -> Result<T>;
    fn parameters(&self) -> (T, T);
    fn times(&self) -> (T, T);
    fn base(&self) -> T;

    /// `du/dt`.
    fn leaf_velocity(&self, s: T, t: T) -> Result<T> {
        try_centered_derivative(|t| self.leaf(s, t), t, lit(DERIVATIVE_STEP))
    }

    /// `du/ds`.
    fn leaf_spread(&self, s: T, t: T) -> Result<T> {
        try_centered_derivative(|s| self.leaf(s, t), s, lit(DERIVATIVE_STEP))
    }
}

type Fn2<T> = Box<dyn Fn(T, T) -> T + Send + Sync>;

/// Family given by a closure `u(s, t)`, optionally with its time derivative.
pub struct FnFamily<T> {
    u: Fn2<T>,
    u_t: Option<Fn2<T>>,
    parameters: (T, T),
    times: (T, T),
    base: T,
}

impl<T: Scalar> FnFamily<T> {
    pub fn new(
        u: impl Fn(T, T) -> T + Send + Sync + 'static,
        parameters: (T, T),
        times: (T, T),
        base: T,
    ) -> Self {
        Self {
            u: Box::new(u),
            u_t: None,
            parameters,
            times,
            base,
        }
    }

    pub fn with_velocity(mut self, u_t: impl Fn(T, T) -> T + Send + Sync + 'static) -> Self {
        self.u_t = Some(Box::new(u_t));
        self
    }

    /// Parallel lines `u = s + c t`; extremals of any `L(qdot)`.
    pub fn free(c: T) -> Self {
        let big = lit::<T>(10.0);
        Self::new(move |s, t| s + c * t, (-big, big), (T::zero(), T::one()), T::zero())
            .with_velocity(move |_, _| c)
    }

    /// `u = s sin t` on `0.5 < t < 2.5`, `|s| < 3`, with `f_o = 0.5 sin t`.
    pub fn oscillator() -> Self {
        let three = lit::<T>(3.0);
        Self::new(
            |s, t: T| s * t.sin(),
            (-three, three),
            (lit(0.5), lit(2.5)),
            lit(0.5),
        )
        .with_velocity(|s, t: T| s * t.cos())
    }
}

impl<T: Scalar> SolutionFamily<T> for FnFamily<T> {
    fn leaf(&self, s: T, t: T) -> Result<T> {
        Ok((self.u)(s, t))
    }

    fn parameters(&self) -> (T, T) {
        self.parameters
    }

    fn times(&self) -> (T, T) {
        self.times
    }

    fn base(&self) -> T {
        self.base
    }

    fn leaf_velocity(&self, s: T, t: T) -> Result<T> {
        match &self.u_t {
            Some(u_t) => Ok(u_t(s, t)),
            None => try_centered_derivative(|t| self.leaf(s, t), t, lit(DERIVATIVE_STEP)),
        }
    }
}

/// Number of Runge-Kutta steps per leaf evaluation of a [`ShootingFamily`].
pub const SHOOTING_STEPS: usize = 400;

/// Extremals launched from a line of initial conditions `(q0(s), qdot0(s))`
/// at time `t0`.
pub struct ShootingFamily<T, L> {
    lagrangian: L,
    t0: T,
    initial: Box<dyn Fn(T) -> (T, T) + Send + Sync>,
    parameters: (T, T),
    times: (T, T),
    base: T,
}

impl<T: Scalar, L: Lagrangian<T>> ShootingFamily<T, L> {
    pub fn new(
        lagrangian: L,
        t0: T,
        initial: impl Fn(T) -> (T, T) + Send + Sync + 'static,
        parameters: (T, T),
        times: (T, T),
        base: T,
    ) -> Self {
        Self {
            lagrangian,
            t0,
            initial: Box::new(initial),
            parameters,
            times,
            base,
        }
    }

    fn state(&self, s: T, t: T) -> Result<(T, T)> {
        let (q0, v0) = (self.initial)(s);
        shoot(&self.lagrangian, self.t0, q0, v0, t, SHOOTING_STEPS)
    }
}

impl<T: Scalar, L: Lagrangian<T>> SolutionFamily<T> for ShootingFamily<T, L> {
    fn leaf(&self, s: T, t: T) -> Result<T> {
        Ok(self.state(s, t)?.0)
    }

    fn parameters(&self) -> (T, T) {
        self.parameters
    }

    fn times(&self) -> (T, T) {
        self.times
    }

    fn base(&self) -> T {
        self.base
    }

    fn leaf_velocity(&self, s: T, t: T) -> Result<T> {
        Ok(self.state(s, t)?.1)
    }
}

/// The leaf `t -> u(s, t)` of a family.
pub fn leaf<T: Scalar, F: SolutionFamily<T>>(family: &F, s: T) -> LeafPath<'_, T, F> {
    LeafPath { family, s }
}

/// Path over the family's time interval; see [`leaf`].
pub struct LeafPath<'a, T, F> {
    family: &'a F,
    s: T,
}

impl<T: Scalar, F: SolutionFamily<T>> Path<T> for LeafPath<'_, T, F> {
    fn interval(&self) -> (T, T) {
        self.family.times()
    }

    fn eval(&self, t: T) -> Result<(T, T)> {
        Ok((self.family.leaf(self.s, t)?, self.family.leaf_velocity(self.s, t)?))
    }
}
