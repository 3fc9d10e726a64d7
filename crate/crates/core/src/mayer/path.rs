use crate::error::{f, Error, Result};
use crate::scalar::{count, lit, try_centered_derivative, Scalar};

use super::lagrangian::Lagrangian;

/// Overflow guard for the Euler-Lagrange integrator.
pub const BLOWUP_GUARD: f64 = 1e12;
/// Smallest admissible `|d2L/dqdot2|`.
pub const LEGENDRE_FLOOR: f64 = 1e-10;

/// A path `t -> (q(t), qdot(t))` on a time interval.
pub trait Path<T: Scalar>: Sync {
    fn interval(&self) -> (T, T);
    fn eval(&self, t: T) -> Result<(T, T)>;

    /// Step of the finite-difference stencil used along the path.
    fn stencil_step(&self) -> T {
        lit(1e-3)
    }
}

type Fn1<T> = Box<dyn Fn(T) -> T + Send + Sync>;

/// Path from closures for `q` and `qdot`.
pub struct FnPath<T> {
    q: Fn1<T>,
    qdot: Fn1<T>,
    interval: (T, T),
}

impl<T: Scalar> FnPath<T> {
    pub fn new(
        q: impl Fn(T) -> T + Send + Sync + 'static,
        qdot: impl Fn(T) -> T + Send + Sync + 'static,
        a: T,
        b: T,
    ) -> Self {
        Self {
            q: Box::new(q),
            qdot: Box::new(qdot),
            interval: (a, b),
        }
    }
}

impl<T: Scalar> Path<T> for FnPath<T> {
    fn interval(&self) -> (T, T) {
        self.interval
    }

    fn eval(&self, t: T) -> Result<(T, T)> {
        Ok(((self.q)(t), (self.qdot)(t)))
    }
}

/// Numerical solution of an Euler-Lagrange equation on a uniform grid,
/// evaluated between nodes by cubic Hermite interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct Extremal<T> {
    start: T,
    step: T,
    q: Vec<T>,
    qdot: Vec<T>,
}

impl<T: Scalar> Extremal<T> {
    pub fn times(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.q.len()).map(move |i| self.time(i))
    }

    pub fn time(&self, i: usize) -> T {
        self.start + self.step * count::<T>(i)
    }

    pub fn values(&self) -> &[T] {
        &self.q
    }

    pub fn derivatives(&self) -> &[T] {
        &self.qdot
    }

    /// Signed grid step.
    pub fn step(&self) -> T {
        self.step
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }
}

impl<T: Scalar> Path<T> for Extremal<T> {
    fn interval(&self) -> (T, T) {
        let end = self.time(self.q.len() - 1);
        (self.start.min(end), self.start.max(end))
    }

    fn eval(&self, t: T) -> Result<(T, T)> {
        let (a, b) = self.interval();
        let slack = self.step.abs() * lit(1e-9);
        if !(t >= a - slack && t <= b + slack) {
            return Err(Error::OutsideDomain(f(t), f(a), f(b)));
        }
        let last = self.q.len() - 1;
        let tau = ((t - self.start) / self.step).max(T::zero()).min(count(last));
        let i = tau.floor().to_usize().unwrap_or(0).min(last - 1);
        let s = tau - count::<T>(i);
        let h = self.step;
        let (q0, q1, d0, d1) = (self.q[i], self.q[i + 1], self.qdot[i], self.qdot[i + 1]);
        let (s2, s3) = (s * s, s * s * s);
        let two = lit::<T>(2.0);
        let three = lit::<T>(3.0);
        let h00 = two * s3 - three * s2 + T::one();
        let h10 = s3 - two * s2 + s;
        let h01 = three * s2 - two * s3;
        let h11 = s3 - s2;
        let q = h00 * q0 + h10 * h * d0 + h01 * q1 + h11 * h * d1;
        let six = lit::<T>(6.0);
        let dh00 = six * s2 - six * s;
        let dh10 = three * s2 - lit::<T>(4.0) * s + T::one();
        let dh11 = three * s2 - two * s;
        let qdot = (dh00 * q0 - dh00 * q1) / h + dh10 * d0 + dh11 * d1;
        Ok((q, qdot))
    }

    fn stencil_step(&self) -> T {
        self.step.abs()
    }
}

/// `qddot` from the Euler-Lagrange equation solved for the highest derivative.
pub(crate) fn acceleration<T: Scalar, L: Lagrangian<T> + ?Sized>(l: &L, t: T, q: T, v: T) -> Result<T> {
    let a = l.d2_qdot(t, q, v);
    if !(a.abs() >= lit(LEGENDRE_FLOOR)) {
        return Err(Error::DegenerateLegendre(f(a)));
    }
    Ok((l.d_q(t, q, v) - l.d2_qdot_t(t, q, v) - l.d2_qdot_q(t, q, v) * v) / a)
}

pub(crate) fn rk4_step<T: Scalar, L: Lagrangian<T> + ?Sized>(l: &L, t: T, q: T, v: T, h: T) -> Result<(T, T)> {
    let half = lit::<T>(0.5);
    let a1 = acceleration(l, t, q, v)?;
    let (q2, v2) = (q + half * h * v, v + half * h * a1);
    let a2 = acceleration(l, t + half * h, q2, v2)?;
    let (q3, v3) = (q + half * h * v2, v + half * h * a2);
    let a3 = acceleration(l, t + half * h, q3, v3)?;
    let (q4, v4) = (q + h * v3, v + h * a3);
    let a4 = acceleration(l, t + h, q4, v4)?;
    let sixth = h / lit(6.0);
    let two = lit::<T>(2.0);
    let q_next = q + sixth * (v + two * v2 + two * v3 + v4);
    let v_next = v + sixth * (a1 + two * a2 + two * a3 + a4);
    let guard = lit::<T>(BLOWUP_GUARD);
    if !(q_next.abs() <= guard && v_next.abs() <= guard) {
        return Err(Error::BlowUp(f(t + h)));
    }
    Ok((q_next, v_next))
}

/// Classical fourth-order Runge-Kutta integration of the Euler-Lagrange
/// equation from `(t0, q0, qdot0)` to `t1` in `steps` equal steps.
pub fn solve_el<T: Scalar, L: Lagrangian<T> + ?Sized>(
    l: &L,
    t0: T,
    q0: T,
    qdot0: T,
    t1: T,
    steps: usize,
) -> Result<Extremal<T>> {
    if steps < 4 {
        return Err(Error::InvalidArgument(format!("need at least 4 steps, got {steps}")));
    }
    if !(t1 != t0 && t0.is_finite() && t1.is_finite()) {
        return Err(Error::InvalidArgument("empty time interval".into()));
    }
    let (a, b) = l.domain();
    for t in [t0, t1] {
        if !(t >= a && t <= b) {
            return Err(Error::OutsideDomain(f(t), f(a), f(b)));
        }
    }
    let h = (t1 - t0) / count(steps);
    let mut q = Vec::with_capacity(steps + 1);
    let mut qdot = Vec::with_capacity(steps + 1);
    let (mut qc, mut vc) = (q0, qdot0);
    q.push(qc);
    qdot.push(vc);
    for i in 0..steps {
        (qc, vc) = rk4_step(l, t0 + h * count::<T>(i), qc, vc, h)?;
        q.push(qc);
        qdot.push(vc);
    }
    acceleration(l, t1, qc, vc)?;
    Ok(Extremal {
        start: t0,
        step: h,
        q,
        qdot,
    })
}

/// Endpoint state of the Euler-Lagrange flow, integrated in a fixed number of
/// steps so that it depends smoothly on `t1`.
pub(crate) fn shoot<T: Scalar, L: Lagrangian<T> + ?Sized>(
    l: &L,
    t0: T,
    q0: T,
    qdot0: T,
    t1: T,
    steps: usize,
) -> Result<(T, T)> {
    let h = (t1 - t0) / count(steps);
    let (mut q, mut v) = (q0, qdot0);
    if h == T::zero() {
        return Ok((q, v));
    }
    for i in 0..steps {
        (q, v) = rk4_step(l, t0 + h * count::<T>(i), q, v, h)?;
    }
    Ok((q, v))
}

fn ensure_interior<T: Scalar>(interval: (T, T), t: T, h: T) -> Result<()> {
    let (a, b) = interval;
    let two_h = lit::<T>(2.0) * h;
    let slack = h * lit(1e-9);
    if !(t - two_h >= a - slack && t + two_h <= b + slack) {
        return Err(Error::OutsideDomain(f(t), f(a), f(b)));
    }
    Ok(())
}

/// `d/dt [dL/dqdot] - dL/dq` along the path at `t`, with the time derivative
/// taken by the five-point stencil at the path's stencil step.
pub fn el_residual<T: Scalar, L: Lagrangian<T> + ?Sized, P: Path<T> + ?Sized>(l: &L, path: &P, t: T) -> Result<T> {
    el_residual_with(path, t, |t, q, qd| Ok(l.d_qdot(t, q, qd)), |t, q, qd| Ok(l.d_q(t, q, qd)))
}

pub(crate) fn el_residual_with<T: Scalar, P, Fp, Fq>(path: &P, t: T, mut momentum: Fp, mut force: Fq) -> Result<T>
where
    P: Path<T> + ?Sized,
    Fp: FnMut(T, T, T) -> Result<T>,
    Fq: FnMut(T, T, T) -> Result<T>,
{
    let h = path.stencil_step();
    ensure_interior(path.interval(), t, h)?;
    let dp = try_centered_derivative(
        |s| {
            let (q, qd) = path.eval(s)?;
            momentum(s, q, qd)
        },
        t,
        h,
    )?;
    let (q, qd) = path.eval(t)?;
    Ok(dp - force(t, q, qd)?)
}
