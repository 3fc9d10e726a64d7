use std::marker::PhantomData;

use crate::error::{f, Error, Result};
use crate::gauss;
use crate::scalar::{count, lit, try_centered_derivative, Scalar};

use super::family::SolutionFamily;
use super::lagrangian::{Lagrangian, DERIVATIVE_STEP};
use super::path::{el_residual_with, Extremal, Path, LEGENDRE_FLOOR};

/// Width in `s` at which the foliation bisection stops.
pub const SLOPE_TOL: f64 = 1e-12;
/// Samples in `s` used to confirm monotonicity of the foliation.
pub const MONOTONE_SAMPLES: usize = 16;
/// Required `|dL/dqdot(q_hat) - p|`.
pub const LEGENDRE_TOL: f64 = 1e-10;
/// Largest `|qdot|` searched by the Legendre bracket.
pub const BRACKET_LIMIT: f64 = 1e8;
/// Gauss-Legendre panels for action integrals.
pub const ACTION_PANELS: usize = 64;
/// Allowed endpoint mismatch between compared paths.
pub const ENDPOINT_TOL: f64 = 1e-10;

/// The leaf parameter `s` with `u(s, t) = q`.
pub fn foliation_parameter<T: Scalar, F: SolutionFamily<T> + ?Sized>(family: &F, t: T, q: T) -> Result<T> {
    let (ta, tb) = family.times();
    if !(t >= ta && t <= tb) {
        return Err(Error::OutsideDomain(f(t), f(ta), f(tb)));
    }
    let (s_lo, s_hi) = family.parameters();
    let n = MONOTONE_SAMPLES;
    let ss: Vec<T> = (0..=n)
        .map(|k| s_lo + (s_hi - s_lo) * count::<T>(k) / count::<T>(n))
        .collect();
    let us = ss.iter().map(|&s| family.leaf(s, t)).collect::<Result<Vec<T>>>()?;
    let increasing = us[n] > us[0];
    let strictly = |a: T, b: T| if increasing { b > a } else { b < a };
    if !us.windows(2).all(|w| strictly(w[0], w[1])) {
        return Err(Error::NotMonotone(f(t)));
    }
    let (u_min, u_max) = if increasing { (us[0], us[n]) } else { (us[n], us[0]) };
    if !(q >= u_min && q <= u_max) {
        return Err(Error::OutsideFoliation(f(t), f(q)));
    }
    // g(s) = u(s, t) - q changes sign in exactly one sampled cell.
    let k = us
        .windows(2)
        .position(|w| (w[0] - q) * (w[1] - q) <= T::zero())
        .unwrap_or(n - 1);
    let (mut lo, mut hi) = (ss[k], ss[k + 1]);
    let sign = |u: T| if increasing { u - q } else { q - u };
    let tol = lit::<T>(SLOPE_TOL);
    for _ in 0..200 {
        if hi - lo <= tol * lo.abs().max(hi.abs()).max(T::one()) {
            break;
        }
        let mid = (lo + hi) * lit(0.5);
        if sign(family.leaf(mid, t)?) < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s = (lo + hi) * lit(0.5);
    let slope = family.leaf_spread(s, t)?;
    if slope != T::zero() && slope.is_finite() {
        let newton = s - (family.leaf(s, t)? - q) / slope;
        if newton >= lo && newton <= hi {
            return Ok(newton);
        }
    }
    Ok(s)
}

/// Slope `psi(t, q) = du/dt(s, t)` of the leaf through `(t, q)`.
pub fn mayer_slope<T: Scalar, F: SolutionFamily<T> + ?Sized>(family: &F, t: T, q: T) -> Result<T> {
    let s = foliation_parameter(family, t, q)?;
    family.leaf_velocity(s, t)
}

/// `q_hat` with `dL/dqdot(t, q, q_hat) = p`: expanding bracket, then Newton
/// safeguarded by bisection.
pub fn legendre_inverse<T: Scalar, L: Lagrangian<T> + ?Sized>(l: &L, t: T, q: T, p: T) -> Result<T> {
    let g = |v: T| l.d_qdot(t, q, v) - p;
    let limit = lit::<T>(BRACKET_LIMIT);
    let (mut lo, mut hi) = (-T::one(), T::one());
    let mut reach = T::one();
    loop {
        let (g_lo, g_hi) = (g(lo), g(hi));
        if g_lo <= T::zero() && g_hi >= T::zero() {
            break;
        }
        if reach > limit || g_lo.is_nan() || g_hi.is_nan() {
            return Err(Error::NoBracket(f(p), BRACKET_LIMIT));
        }
        reach = reach + reach;
        if g_lo > T::zero() {
            hi = lo;
            lo = -reach;
        } else {
            lo = hi;
            hi = reach;
        }
    }
    let mut v = (lo + hi) * lit(0.5);
    let eps = T::epsilon() * lit(4.0);
    for _ in 0..200 {
        let gv = g(v);
        if gv == T::zero() {
            break;
        }
        if gv < T::zero() {
            lo = v;
        } else {
            hi = v;
        }
        let d = l.d2_qdot(t, q, v);
        let newton = v - gv / d;
        let next = if d > T::zero() && newton > lo && newton < hi {
            newton
        } else {
            (lo + hi) * lit(0.5)
        };
        let done = (next - v).abs() <= eps * v.abs().max(T::one()) || hi - lo <= eps * v.abs().max(T::one());
        v = next;
        if done {
            break;
        }
    }
    let curvature = l.d2_qdot(t, q, v);
    if !(curvature.abs() >= lit(LEGENDRE_FLOOR)) {
        return Err(Error::DegenerateLegendre(f(curvature)));
    }
    let residual = g(v).abs();
    if !(residual <= lit::<T>(LEGENDRE_TOL) * p.abs().max(T::one())) {
        return Err(Error::InvalidArgument(format!(
            "Legendre inverse did not converge (residual {:e})",
            f(residual)
        )));
    }
    Ok(v)
}

/// `H(t, q, p) = p q_hat - L(t, q, q_hat)`.
pub fn hamiltonian<T: Scalar, L: Lagrangian<T> + ?Sized>(l: &L, t: T, q: T, p: T) -> Result<T> {
    let v = legendre_inverse(l, t, q, p)?;
    Ok(p * v - l.value(t, q, v))
}

/// `|q_hat(t, q, p_hat(t, q, qdot)) - qdot|`.
pub fn legendre_roundtrip_defect<T: Scalar, L: Lagrangian<T> + ?Sized>(l: &L, t: T, q: T, qdot: T) -> Result<T> {
    Ok((legendre_inverse(l, t, q, l.d_qdot(t, q, qdot))? - qdot).abs())
}

/// `(|dH/dp - q_hat|, |dH/dq + dL/dq(q_hat)|)` at `(t, q, p)`, both partials
/// of `H` by finite differences.
pub fn hamiltonian_partials_defect<T: Scalar, L: Lagrangian<T> + ?Sized>(l: &L, t: T, q: T, p: T) -> Result<(T, T)> {
    let h = lit::<T>(DERIVATIVE_STEP);
    let v = legendre_inverse(l, t, q, p)?;
    let h_p = try_centered_derivative(|p| hamiltonian(l, t, q, p), p, h)?;
    let h_q = try_centered_derivative(|q| hamiltonian(l, t, q, p), q, h)?;
    Ok(((h_p - v).abs(), (h_q + l.d_q(t, q, v)).abs()))
}

/// Largest residuals of `qdot = dH/dp` and `pdot = -dH/dq` over the interior
/// nodes of an extremal; `pdot` by the five-point stencil on the grid.
pub fn hamilton_residuals<T: Scalar, L: Lagrangian<T> + ?Sized>(l: &L, extremal: &Extremal<T>) -> Result<(T, T)> {
    let n = extremal.len();
    if n < 5 {
        return Err(Error::InvalidArgument("extremal too short".into()));
    }
    let h = lit::<T>(DERIVATIVE_STEP);
    let (q, v) = (extremal.values(), extremal.derivatives());
    let p: Vec<T> = (0..n).map(|i| l.d_qdot(extremal.time(i), q[i], v[i])).collect();
    let step = extremal.step();
    let (mut worst_q, mut worst_p) = (T::zero(), T::zero());
    for i in 2..n - 2 {
        let t = extremal.time(i);
        let h_p = try_centered_derivative(|p| hamiltonian(l, t, q[i], p), p[i], h)?;
        let h_q = try_centered_derivative(|q| hamiltonian(l, t, q, p[i]), q[i], h)?;
        let p_dot = (p[i - 2] - lit::<T>(8.0) * p[i - 1] + lit::<T>(8.0) * p[i + 1] - p[i + 2]) / (lit::<T>(12.0) * step);
        worst_q = worst_q.max((v[i] - h_p).abs());
        worst_p = worst_p.max((p_dot + h_q).abs());
    }
    Ok((worst_q, worst_p))
}

/// Null Lagrangian `Lambda(t, q, qdot) = p_hat(t, q, psi) qdot - E(t, q, psi)`
/// built from a Lagrangian and a foliation by its extremals.
pub struct NullLagrangianField<'a, T, L, F> {
    pub lagrangian: &'a L,
    pub family: &'a F,
    scalar: PhantomData<T>,
}

/// Times at which [`null_lagrangian`] confirms the foliation.
const VALIDATION_TIMES: usize = 5;

/// Builds the field after confirming the foliation covers the distinguished
/// extremal at a few sample times.
pub fn null_lagrangian<'a, T: Scalar, L: Lagrangian<T>, F: SolutionFamily<T>>(
    lagrangian: &'a L,
    family: &'a F,
) -> Result<NullLagrangianField<'a, T, L, F>> {
    let (ta, tb) = family.times();
    for k in 0..VALIDATION_TIMES {
        let t = ta + (tb - ta) * count::<T>(2 * k + 1) / count::<T>(2 * VALIDATION_TIMES);
        let q = family.leaf(family.base(), t)?;
        foliation_parameter(family, t, q)?;
    }
    Ok(NullLagrangianField {
        lagrangian,
        family,
        scalar: PhantomData,
    })
}

impl<T: Scalar, L: Lagrangian<T>, F: SolutionFamily<T>> NullLagrangianField<'_, T, L, F> {
    pub fn psi(&self, t: T, q: T) -> Result<T> {
        mayer_slope(self.family, t, q)
    }

    /// Impulsion `dL/dqdot`.
    pub fn p_hat(&self, t: T, q: T, qdot: T) -> T {
        self.lagrangian.d_qdot(t, q, qdot)
    }

    /// Energy `qdot dL/dqdot - L`.
    pub fn energy(&self, t: T, q: T, qdot: T) -> T {
        qdot * self.lagrangian.d_qdot(t, q, qdot) - self.lagrangian.value(t, q, qdot)
    }

    pub fn hamiltonian(&self, t: T, q: T, p: T) -> Result<T> {
        hamiltonian(self.lagrangian, t, q, p)
    }

    /// Coefficients `(a, b)` of the one-form `a dq + b dt` whose pull-back
    /// along a path is `Lambda dt`.
    pub fn form(&self, t: T, q: T) -> Result<(T, T)> {
        let psi = self.psi(t, q)?;
        Ok((self.p_hat(t, q, psi), -self.energy(t, q, psi)))
    }

    pub fn lambda(&self, t: T, q: T, qdot: T) -> Result<T> {
        let (a, b) = self.form(t, q)?;
        Ok(a * qdot + b)
    }

    /// Euler-Lagrange residual of `Lambda` along an arbitrary path.
    pub fn el_residual<P: Path<T> + ?Sized>(&self, path: &P, t: T) -> Result<T> {
        let h = lit::<T>(DERIVATIVE_STEP);
        el_residual_with(
            path,
            t,
            |t, q, _| Ok(self.form(t, q)?.0),
            |t, q, qd| try_centered_derivative(|q| self.lambda(t, q, qd), q, h),
        )
    }

    /// `d a/dt - d b/dq` for the form `a dq + b dt`; zero when closed.
    pub fn closedness_defect(&self, t: T, q: T, h: T) -> Result<T> {
        let a_t = try_centered_derivative(|t| Ok(self.form(t, q)?.0), t, h)?;
        let b_q = try_centered_derivative(|q| Ok(self.form(t, q)?.1), q, h)?;
        Ok(a_t - b_q)
    }

    /// `int Lambda(t, f, f') dt` over the path's interval.
    pub fn action<P: Path<T> + ?Sized>(&self, path: &P) -> Result<T> {
        let (a, b) = path.interval();
        gauss::composite(
            |t| {
                let (q, qd) = path.eval(t)?;
                self.lambda(t, q, qd)
            },
            a,
            b,
            ACTION_PANELS,
        )
    }
}

/// Excess `L - Lambda` at `(t, q, qdot)`.
pub fn weierstrass_gap<T: Scalar, L: Lagrangian<T>, F: SolutionFamily<T>>(
    l: &L,
    family: &F,
    t: T,
    q: T,
    qdot: T,
) -> Result<T> {
    let field = NullLagrangianField {
        lagrangian: l,
        family,
        scalar: PhantomData,
    };
    Ok(l.value(t, q, qdot) - field.lambda(t, q, qdot)?)
}

/// `int L(t, f, f') dt` over the path's interval.
pub fn action<T: Scalar, L: Lagrangian<T> + ?Sized, P: Path<T> + ?Sized>(l: &L, path: &P) -> Result<T> {
    let (a, b) = path.interval();
    gauss::composite(
        |t| {
            let (q, qd) = path.eval(t)?;
            Ok(l.value(t, q, qd))
        },
        a,
        b,
        ACTION_PANELS,
    )
}

fn ensure_same_endpoints<T: Scalar, P1, P2>(f1: &P1, f2: &P2) -> Result<()>
where
    P1: Path<T> + ?Sized,
    P2: Path<T> + ?Sized,
{
    let tol = lit::<T>(ENDPOINT_TOL);
    let (a1, b1) = f1.interval();
    let (a2, b2) = f2.interval();
    if !((a1 - a2).abs() <= tol && (b1 - b2).abs() <= tol) {
        return Err(Error::EndpointMismatch(format!(
            "intervals ({}, {}) and ({}, {})",
            f(a1),
            f(b1),
            f(a2),
            f(b2)
        )));
    }
    for (t, name) in [(a1, "initial"), (b1, "final")] {
        let (q1, q2) = (f1.eval(t)?.0, f2.eval(t)?.0);
        if !((q1 - q2).abs() <= tol) {
            return Err(Error::EndpointMismatch(format!(
                "{name} values {} and {} at t = {}",
                f(q1),
                f(q2),
                f(t)
            )));
        }
    }
    Ok(())
}

/// Both action integrals of `Lambda`; equal for paths with common endpoints.
pub fn path_independence_check<T, L, F, P1, P2>(
    field: &NullLagrangianField<'_, T, L, F>,
    f1: &P1,
    f2: &P2,
) -> Result<(T, T)>
where
    T: Scalar,
    L: Lagrangian<T>,
    F: SolutionFamily<T>,
    P1: Path<T> + ?Sized,
    P2: Path<T> + ?Sized,
{
    ensure_same_endpoints(f1, f2)?;
    Ok((field.action(f1)?, field.action(f2)?))
}

/// Samples along a path at which [`minimality_gap`] confirms it stays in the
/// foliated region.
const REGION_SAMPLES: usize = 32;

/// `action(f) - action(f_o)` for a competitor `f` with the endpoints of `f_o`.
pub fn minimality_gap<T, L, F, P1, P2>(l: &L, family: &F, path: &P1, f_o: &P2) -> Result<T>
where
    T: Scalar,
    L: Lagrangian<T>,
    F: SolutionFamily<T>,
    P1: Path<T> + ?Sized,
    P2: Path<T> + ?Sized,
{
    ensure_same_endpoints(path, f_o)?;
    let (a, b) = path.interval();
    for k in 0..=REGION_SAMPLES {
        let t = a + (b - a) * count::<T>(k) / count::<T>(REGION_SAMPLES);
        foliation_parameter(family, t, path.eval(t)?.0)?;
    }
    Ok(action(l, path)? - action(l, f_o)?)
}

/// Coefficient `v_t u_s - v_s u_t + w_s` of the pull-back of
/// `dp ^ dq - de ^ dt` by `(s, t) -> (t, u, w, v)`, where `v = p_hat(t, u, u_t)`
/// and `w = H(t, u, v)`, the energy at `qdot = u_t`. Derivatives are
/// five-point differences with step `h`.
pub fn lagrangian_submanifold_check<T: Scalar, L: Lagrangian<T>, F: SolutionFamily<T>>(
    l: &L,
    family: &F,
    s: T,
    t: T,
    h: T,
) -> Result<T> {
    let v = |s: T, t: T| -> Result<T> {
        let (u, u_t) = (family.leaf(s, t)?, family.leaf_velocity(s, t)?);
        Ok(l.d_qdot(t, u, u_t))
    };
    let w = |s: T, t: T| -> Result<T> {
        let (u, u_t) = (family.leaf(s, t)?, family.leaf_velocity(s, t)?);
        Ok(u_t * l.d_qdot(t, u, u_t) - l.value(t, u, u_t))
    };
    let u_s = try_centered_derivative(|s| family.leaf(s, t), s, h)?;
    let u_t = try_centered_derivative(|t| family.leaf(s, t), t, h)?;
    let v_s = try_centered_derivative(|s| v(s, t), s, h)?;
    let v_t = try_centered_derivative(|t| v(s, t), t, h)?;
    let w_s = try_centered_derivative(|s| w(s, t), s, h)?;
    Ok(v_t * u_s - v_s * u_t + w_s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mayer::{leaf, FnFamily, FnPath, Lagrangian1D};

    #[test]
    fn free_family_slope_is_constant() {
        let fam = FnFamily::free(0.7f64);
        for &(t, q) in &[(0.1, -3.0), (0.5, 0.0), (0.9, 4.2)] {
            assert!((mayer_slope(&fam, t, q).unwrap() - 0.7).abs() < 1e-14);
        }
    }

    #[test]
    fn oscillator_slope() {
        let fam = FnFamily::<f64>::oscillator();
        for &(t, q) in &[(0.6f64, 0.1f64), (1.5, -2.0), (2.4, 0.5)] {
            let expected = q / t.tan();
            assert!((mayer_slope(&fam, t, q).unwrap() - expected).abs() < 1e-8);
        }
        assert!(matches!(mayer_slope(&fam, 1.5, 5.0), Err(Error::OutsideFoliation(..))));
        assert!(matches!(mayer_slope(&fam, 3.0, 0.0), Err(Error::OutsideDomain(..))));
    }

    #[test]
    fn fold_is_not_monotone() {
        let fam = FnFamily::new(|s: f64, t: f64| s * s + t, (-1.0, 1.0), (0.0, 1.0), 0.5);
        assert!(matches!(mayer_slope(&fam, 0.5, 0.7), Err(Error::NotMonotone(_))));
    }

    #[test]
    fn decreasing_family() {
        let fam = FnFamily::new(|s: f64, t: f64| -s + 2.0 * t, (-1.0, 1.0), (0.0, 1.0), 0.0);
        assert!((foliation_parameter(&fam, 0.5, 0.3).unwrap() - 0.7).abs() < 1e-12);
        assert!((mayer_slope(&fam, 0.5, 0.3).unwrap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn legendre_examples() {
        let free = Lagrangian1D::<f64>::free_particle();
        for p in [-7.5f64, 0.0, 0.3, 12.0] {
            assert!((legendre_inverse(&free, 0.0, 0.0, p).unwrap() - p).abs() <= 1e-15 * p.abs().max(1.0));
        }
        let cosh = Lagrangian1D::<f64>::cosh();
        for p in [-50.0f64, -1.0, 0.0, 0.25, 3.0] {
            assert!((legendre_inverse(&cosh, 0.0, 0.0, p).unwrap() - p.asinh()).abs() < 1e-10);
        }
        let quartic = Lagrangian1D::new(
            |_, _, qd: f64| qd.powi(4),
            |_, _, _| 0.0,
            |_, _, qd: f64| 4.0 * qd.powi(3),
            |_, _, qd: f64| 12.0 * qd * qd,
        );
        assert!(matches!(legendre_inverse(&quartic, 0.0, 0.0, 0.0), Err(Error::DegenerateLegendre(_))));
        let linear = Lagrangian1D::new(|_, _, qd: f64| qd, |_, _, _| 0.0, |_, _, _| 1.0, |_, _, _| 0.0);
        assert!(matches!(legendre_inverse(&linear, 0.0, 0.0, 2.0), Err(Error::NoBracket(..))));
    }

    #[test]
    fn hamiltonian_examples() {
        let free = Lagrangian1D::<f64>::free_particle();
        assert!((hamiltonian(&free, 0.0, 1.0, 3.0).unwrap() - 4.5f64).abs() < 1e-14);
        let osc = Lagrangian1D::<f64>::harmonic_oscillator();
        for &(q, p) in &[(0.3f64, -1.1f64), (2.0, 0.5), (-1.0, 4.0)] {
            assert!((hamiltonian(&osc, 0.0, q, p).unwrap() - (p * p + q * q) / 2.0).abs() < 1e-10);
            let (dp, dq) = hamiltonian_partials_defect(&osc, 0.0, q, p).unwrap();
            assert!(dp < 1e-6 && dq < 1e-6);
        }
    }

    #[test]
    fn free_particle_null_lagrangian() {
        let l = Lagrangian1D::<f64>::free_particle();
        let fam = FnFamily::free(0.7f64);
        let field = null_lagrangian(&l, &fam).unwrap();
        for &(t, q, qd) in &[(0.2, 1.0, -3.0), (0.5, -2.0, 0.7), (0.8, 0.0, 2.0)] {
            assert!((field.lambda(t, q, qd).unwrap() - (0.7 * qd - 0.245)).abs() < 1e-14);
            let gap = weierstrass_gap(&l, &fam, t, q, qd).unwrap();
            assert!((gap - (qd - 0.7) * (qd - 0.7) / 2.0).abs() < 1e-14);
        }
    }

    fn s_function(t: f64, q: f64) -> f64 {
        q * q / t.tan() / 2.0
    }

    #[test]
    fn oscillator_null_lagrangian() {
        let l = Lagrangian1D::<f64>::harmonic_oscillator();
        let fam = FnFamily::<f64>::oscillator();
        let field = null_lagrangian(&l, &fam).unwrap();
        for &(t, q, qd) in &[(0.7f64, 0.2f64, 1.0f64), (1.5, -1.0, 0.0), (2.2, 0.5, -2.0)] {
            let expected = q * qd / t.tan() - q * q / (2.0 * t.sin().powi(2));
            assert!((field.lambda(t, q, qd).unwrap() - expected).abs() < 1e-10);
            // dS/dt along (q, qdot) = S_t + S_q qdot.
            let h = 1e-4;
            let s_t = (s_function(t + h, q) - s_function(t - h, q)) / (2.0 * h);
            let s_q = (s_function(t, q + h) - s_function(t, q - h)) / (2.0 * h);
            assert!((field.lambda(t, q, qd).unwrap() - (s_t + s_q * qd)).abs() < 1e-6);
            assert!(field.closedness_defect(t, q, 1e-3).unwrap().abs() < 1e-5);
        }
        let f_o = leaf(&fam, 0.5);
        for t in [0.6, 1.0, 2.4] {
            let (q, qd) = f_o.eval(t).unwrap();
            assert!((field.lambda(t, q, qd).unwrap() - l.value(t, q, qd)).abs() < 1e-8);
            assert!(weierstrass_gap(&l, &fam, t, q, qd).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn lambda_solves_its_el_equation_on_any_path() {
        let l = Lagrangian1D::<f64>::harmonic_oscillator();
        let fam = FnFamily::<f64>::oscillator();
        let field = null_lagrangian(&l, &fam).unwrap();
        let path = FnPath::new(|t: f64| 0.2 + 0.1 * (3.0 * t).cos(), |t: f64| -0.3 * (3.0 * t).sin(), 0.5, 2.5);
        for t in [0.7, 1.3, 2.1] {
            assert!(field.el_residual(&path, t).unwrap().abs() < 1e-6);
        }
    }

    #[test]
    fn oscillator_path_independence() {
        let l = Lagrangian1D::<f64>::harmonic_oscillator();
        let fam = FnFamily::<f64>::oscillator();
        let field = null_lagrangian(&l, &fam).unwrap();
        let (a, b) = (0.5f64, 2.5f64);
        let f1 = FnPath::new(|t: f64| 0.3 * t.sin(), |t: f64| 0.3 * t.cos(), a, b);
        // Cubic through the same endpoints.
        let (qa, qb) = (0.3 * a.sin(), 0.3 * b.sin());
        let c = 0.4;
        let cubic = move |t: f64| qa + (qb - qa) * (t - a) / (b - a) + c * (t - a) * (t - b) * (t - 1.5);
        let cubic_dot = move |t: f64| {
            (qb - qa) / (b - a) + c * ((t - b) * (t - 1.5) + (t - a) * (t - 1.5) + (t - a) * (t - b))
        };
        let f2 = FnPath::new(cubic, cubic_dot, a, b);
        let (i1, i2) = path_independence_check(&field, &f1, &f2).unwrap();
        let exact = s_function(b, qb) - s_function(a, qa);
        assert!((i1 - i2).abs() < 1e-6);
        assert!((i1 - exact).abs() < 1e-6);
        let (j1, j2) = path_independence_check(&field, &f1, &f1).unwrap();
        assert_eq!(j1, j2);
        let shifted = FnPath::new(|t: f64| 0.3 * t.sin() + 0.01, |t: f64| 0.3 * t.cos(), a, b);
        assert!(matches!(path_independence_check(&field, &f1, &shifted), Err(Error::EndpointMismatch(_))));
    }

    #[test]
    fn minimality_examples() {
        let l = Lagrangian1D::<f64>::harmonic_oscillator();
        let fam = FnFamily::<f64>::oscillator();
        let (a, b) = (0.5f64, 2.5f64);
        let f_o = leaf(&fam, 0.5);
        let bump = move |t: f64| ((t - a) * std::f64::consts::PI / (b - a)).sin();
        let bump_dot = move |t: f64| ((t - a) * std::f64::consts::PI / (b - a)).cos() * std::f64::consts::PI / (b - a);
        let f = FnPath::new(move |t| 0.5 * t.sin() + 0.2 * bump(t), move |t| 0.5 * t.cos() + 0.2 * bump_dot(t), a, b);
        assert!(minimality_gap(&l, &fam, &f, &f_o).unwrap() > 1e-3);
        assert!(minimality_gap(&l, &fam, &f_o, &f_o).unwrap().abs() < 1e-14);
    }

    #[test]
    fn submanifold_coefficient() {
        let free = Lagrangian1D::<f64>::free_particle();
        let fam = FnFamily::free(0.7f64);
        assert!(lagrangian_submanifold_check(&free, &fam, 1.0, 0.5, 1e-4).unwrap().abs() < 1e-8);
        let osc = Lagrangian1D::<f64>::harmonic_oscillator();
        let fam = FnFamily::<f64>::oscillator();
        for &(s, t) in &[(0.5, 1.0), (-2.0, 2.0), (1.3, 0.7)] {
            assert!(lagrangian_submanifold_check(&osc, &fam, s, t, 1e-4).unwrap().abs() < 1e-5);
        }
        let bad = FnFamily::new(|s: f64, t: f64| s * t.sin() + 0.1 * s * s * t, (-3.0, 3.0), (0.5, 2.5), 0.5);
        // u_s (u_tt + u) = (sin t + 0.2 s t)(0.1 s^2 t).
        let (s, t) = (1.0f64, 1.0f64);
        let expected = (t.sin() + 0.2 * s * t) * 0.1 * s * s * t;
        let c = lagrangian_submanifold_check(&osc, &bad, s, t, 1e-4).unwrap();
        assert!((c - expected).abs() < 1e-6, "{c} vs {expected}");
    }

    #[test]
    fn hamilton_equations_along_solution() {
        let l = Lagrangian1D::<f64>::harmonic_oscillator();
        let e = crate::mayer::solve_el(&l, 0.0, 0.3, 1.0, 2.0, 400).unwrap();
        let (rq, rp) = hamilton_residuals(&l, &e).unwrap();
        assert!(rq < 1e-9 && rp < 1e-8, "{rq} {rp}");
    }

    #[test]
    fn roundtrip() {
        let cosh = Lagrangian1D::<f64>::cosh();
        for qd in [-3.0f64, -0.1, 0.0, 2.5] {
            assert!(legendre_roundtrip_defect(&cosh, 0.0, 0.0, qd).unwrap() < 1e-9);
        }
    }
}
