use crate::scalar::{centered_derivative, lit, Scalar};

/// Step for finite-difference partials of Lagrangians and fields.
pub const DERIVATIVE_STEP: f64 = 1e-3;
/// Step for finite-difference second derivatives.
const SECOND_DERIVATIVE_STEP: f64 = 1e-2;

/// Scalar Lagrangian `L(t, q, qdot)` with the partials the Euler-Lagrange
/// machinery needs. Mixed partials default to finite differences.
pub trait Lagrangian<T: Scalar>: Sync {
    fn value(&self, t: T, q: T, qdot: T) -> T;
    fn d_q(&self, t: T, q: T, qdot: T) -> T;
    fn d_qdot(&self, t: T, q: T, qdot: T) -> T;
    fn d2_qdot(&self, t: T, q: T, qdot: T) -> T;

    fn d2_qdot_q(&self, t: T, q: T, qdot: T) -> T {
        centered_derivative(|q| self.d_qdot(t, q, qdot), q, lit(DERIVATIVE_STEP))
    }

    fn d2_qdot_t(&self, t: T, q: T, qdot: T) -> T {
        centered_derivative(|t| self.d_qdot(t, q, qdot), t, lit(DERIVATIVE_STEP))
    }

    /// Time interval on which `L` is defined.
    fn domain(&self) -> (T, T) {
        (T::neg_infinity(), T::infinity())
    }
}

type Fn3<T> = Box<dyn Fn(T, T, T) -> T + Send + Sync>;

/// Lagrangian assembled from closures.
pub struct Lagrangian1D<T> {
    value: Fn3<T>,
    d_q: Fn3<T>,
    d_qdot: Fn3<T>,
    d2_qdot: Fn3<T>,
    mixed: Option<(Fn3<T>, Fn3<T>)>,
    domain: (T, T),
}

impl<T: Scalar> Lagrangian1D<T> {
    pub fn new(
        value: impl Fn(T, T, T) -> T + Send + Sync + 'static,
        d_q: impl Fn(T, T, T) -> T + Send + Sync + 'static,
        d_qdot: impl Fn(T, T, T) -> T + Send + Sync + 'static,
        d2_qdot: impl Fn(T, T, T) -> T + Send + Sync + 'static,
    ) -> Self {
        Self {
            value: Box::new(value),
            d_q: Box::new(d_q),
            d_qdot: Box::new(d_qdot),
            d2_qdot: Box::new(d2_qdot),
            mixed: None,
            domain: (T::neg_infinity(), T::infinity()),
        }
    }

    /// All partials by finite differences of `value`.
    pub fn from_value(value: impl Fn(T, T, T) -> T + Send + Sync + Clone + 'static) -> Self {
        let h = lit::<T>(DERIVATIVE_STEP);
        let (v1, v2, v3) = (value.clone(), value.clone(), value.clone());
        Self::new(
            value,
            move |t, q, qd| centered_derivative(|q| v1(t, q, qd), q, h),
            move |t, q, qd| centered_derivative(|qd| v2(t, q, qd), qd, h),
            move |t, q, qd| second_derivative(|qd| v3(t, q, qd), qd, lit(SECOND_DERIVATIVE_STEP)),
        )
    }

    /// Supplies `d2L/dqdot dq` and `d2L/dqdot dt` analytically.
    pub fn with_mixed(
        mut self,
        d2_qdot_q: impl Fn(T, T, T) -> T + Send + Sync + 'static,
        d2_qdot_t: impl Fn(T, T, T) -> T + Send + Sync + 'static,
    ) -> Self {
        self.mixed = Some((Box::new(d2_qdot_q), Box::new(d2_qdot_t)));
        self
    }

    pub fn on_domain(mut self, a: T, b: T) -> Self {
        self.domain = (a, b);
        self
    }

    /// `qdot^2 / 2`.
    pub fn free_particle() -> Self {
        let half = lit::<T>(0.5);
        Self::new(
            move |_, _, qd| half * qd * qd,
            |_, _, _| T::zero(),
            |_, _, qd| qd,
            |_, _, _| T::one(),
        )
        .with_mixed(|_, _, _| T::zero(), |_, _, _| T::zero())
    }

    /// `(qdot^2 - q^2) / 2`.
    pub fn harmonic_oscillator() -> Self {
        let half = lit::<T>(0.5);
        Self::new(
            move |_, q, qd| half * (qd * qd - q * q),
            |_, q, _| -q,
            |_, _, qd| qd,
            |_, _, _| T::one(),
        )
        .with_mixed(|_, _, _| T::zero(), |_, _, _| T::zero())
    }

    /// `cosh(qdot)`.
    pub fn cosh() -> Self {
        Self::new(
            |_, _, qd: T| qd.cosh(),
            |_, _, _| T::zero(),
            |_, _, qd: T| qd.sinh(),
            |_, _, qd: T| qd.cosh(),
        )
        .with_mixed(|_, _, _| T::zero(), |_, _, _| T::zero())
    }

    /// Largest relative mismatch `|supplied - fd| / max(1, |fd|)` between the
    /// supplied partials and finite differences of `value`.
    pub fn partials_defect(&self, t: T, q: T, qdot: T) -> T {
        let h = lit::<T>(DERIVATIVE_STEP);
        let fd_q = centered_derivative(|q| self.value(t, q, qdot), q, h);
        let fd_qdot = centered_derivative(|qd| self.value(t, q, qd), qdot, h);
        let fd_qq = centered_derivative(|qd| self.d_qdot(t, q, qd), qdot, h);
        [
            (self.d_q(t, q, qdot), fd_q),
            (self.d_qdot(t, q, qdot), fd_qdot),
            (self.d2_qdot(t, q, qdot), fd_qq),
        ]
        .into_iter()
        .map(|(a, b)| (a - b).abs() / b.abs().max(T::one()))
        .fold(T::zero(), T::max)
    }
}

impl<T: Scalar> Lagrangian<T> for Lagrangian1D<T> {
    fn value(&self, t: T, q: T, qdot: T) -> T {
        (self.value)(t, q, qdot)
    }

    fn d_q(&self, t: T, q: T, qdot: T) -> T {
        (self.d_q)(t, q, qdot)
    }

    fn d_qdot(&self, t: T, q: T, qdot: T) -> T {
        (self.d_qdot)(t, q, qdot)
    }

    fn d2_qdot(&self, t: T, q: T, qdot: T) -> T {
        (self.d2_qdot)(t, q, qdot)
    }

    fn d2_qdot_q(&self, t: T, q: T, qdot: T) -> T {
        match &self.mixed {
            Some((dq, _)) => dq(t, q, qdot),
            None => centered_derivative(|q| self.d_qdot(t, q, qdot), q, lit(DERIVATIVE_STEP)),
        }
    }

    fn d2_qdot_t(&self, t: T, q: T, qdot: T) -> T {
        match &self.mixed {
            Some((_, dt)) => dt(t, q, qdot),
            None => centered_derivative(|t| self.d_qdot(t, q, qdot), t, lit(DERIVATIVE_STEP)),
        }
    }

    fn domain(&self) -> (T, T) {
        self.domain
    }
}

fn second_derivative<T: Scalar, F: Fn(T) -> T>(f: F, x: T, h: T) -> T {
    let (two, sixteen, thirty) = (lit::<T>(2.0), lit::<T>(16.0), lit::<T>(30.0));
    (-f(x + two * h) + sixteen * f(x + h) - thirty * f(x) + sixteen * f(x - h) - f(x - two * h))
        / (lit::<T>(12.0) * h * h)
}
