//! The circle field `V`, its one-form, and the biform
//! `alpha = 2 <z, dx> (x) <z, dy> / |z|^2 - sum_i dx^i (x) dy^i`, `z = x - y`,
//! on the plane and on three-space.
//!
//! For a source point `y` with unit tangent `t_y` and any `x != y`,
//! `V(y, t_y, x)` is the positively oriented unit tangent at `x` of the unique
//! circle through `x` and `y` that is tangent to `t_y` at `y`. The biform packs
//! that construction symmetrically: `alpha(x, y)(u, v) = <V(y, v, x), u>` for
//! unit `v`. Its coefficient matrix `2 z z^T / |z|^2 - I` is a reflection, so
//! `|alpha| = 1` everywhere, and it evaluates to exactly `1` on any pair of
//! tangents of a common circle.

use crate::curves::ClosedCurve;
use crate::error::{f, Error, Result};
use crate::point::{Point2, Point3, UnitVector2};
use crate::scalar::{lit, CompensatedSum, Scalar};

/// Relative guard (times `max(|x|, |y|, 1)`) below which two points are
/// treated as coincident.
pub const COINCIDENCE_TOL: f64 = 1e-12;

fn coincidence_guard<T: Scalar>(scale: T, separation: T) -> Result<()> {
    let tol = lit::<T>(COINCIDENCE_TOL) * scale.max(T::one());
    if !(separation > tol) {
        return Err(Error::CoincidentPoints(f(separation)));
    }
    Ok(())
}

fn separated2<T: Scalar>(x: Point2<T>, y: Point2<T>) -> Result<Point2<T>> {
    let z = x - y;
    coincidence_guard(x.norm().max(y.norm()), z.norm())?;
    Ok(z)
}

fn separated3<T: Scalar>(x: Point3<T>, y: Point3<T>) -> Result<Point3<T>> {
    let z = x - y;
    coincidence_guard(x.norm().max(y.norm()), z.norm())?;
    Ok(z)
}

/// `V(y, t_y, x) = 2 <x - y, t_y> (x - y) / |x - y|^2 - t_y`.
pub fn mayer_vector<T: Scalar>(
    y: Point2<T>,
    t_y: UnitVector2<T>,
    x: Point2<T>,
) -> Result<UnitVector2<T>> {
    let z = separated2(x, y)?;
    let t = t_y.get();
    let v = z * (lit::<T>(2.0) * z.dot(t) / z.norm_squared()) - t;
    Ok(UnitVector2::new_unchecked(v))
}

/// Circle through `x` and `y` tangent to `t_y` at `y`, as `(center, radius)`.
/// `None` when `x` lies on the tangent line, where the circle degenerates to
/// that line.
pub fn tangent_circle<T: Scalar>(
    y: Point2<T>,
    t_y: UnitVector2<T>,
    x: Point2<T>,
) -> Result<Option<(Point2<T>, T)>> {
    let z = separated2(x, y)?;
    let n = t_y.get().perp();
    let along_normal = z.dot(n);
    if along_normal.abs() <= lit::<T>(1e-14) * z.norm() {
        return Ok(None);
    }
    // Center c = y + rho n with |x - c| = |rho|.
    let rho = z.norm_squared() / (lit::<T>(2.0) * along_normal);
    Ok(Some((y + n * rho, rho.abs())))
}

/// `2 det(y - x, t_y) / |x - y|^2`, the coefficient of `dx^1 ^ dx^2` in the
/// exterior derivative of `<V(y, t_y, x), dx>` with respect to `x`.
pub fn curl_density<T: Scalar>(y: Point2<T>, t_y: UnitVector2<T>, x: Point2<T>) -> Result<T> {
    let z = separated2(x, y)?;
    Ok(lit::<T>(2.0) * (-z).det(t_y.get()) / z.norm_squared())
}

/// Coefficients `alpha_ij(x, y)` of the planar biform; `alpha(u (x) v) = u^T m v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiformValue2<T> {
    pub m: [[T; 2]; 2],
}

/// Coefficients of the biform on three-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiformValue3<T> {
    pub m: [[T; 3]; 3],
}

macro_rules! biform_matrix_ops {
    ($ty:ident, $n:expr, $point:ident) => {
        impl<T: Scalar> $ty<T> {
            pub fn apply(&self, u: $point<T>, v: $point<T>) -> T {
                let (u, v) = (u.to_array(), v.to_array());
                let mut acc = T::zero();
                for i in 0..$n {
                    for j in 0..$n {
                        acc = acc + u[i] * self.m[i][j] * v[j];
                    }
                }
                acc
            }

            pub fn trace(&self) -> T {
                (0..$n).map(|i| self.m[i][i]).fold(T::zero(), |a, b| a + b)
            }

            pub fn transpose(&self) -> Self {
                let mut m = self.m;
                for i in 0..$n {
                    for j in 0..$n {
                        m[i][j] = self.m[j][i];
                    }
                }
                Self { m }
            }

            /// `max |m_ij - m_ji|`.
            pub fn asymmetry(&self) -> T {
                let mut worst = T::zero();
                for i in 0..$n {
                    for j in 0..$n {
                        worst = worst.max((self.m[i][j] - self.m[j][i]).abs());
                    }
                }
                worst
            }

            /// `max |(m^T m - I)_ij|`; zero for an orthogonal matrix.
            pub fn orthogonality_defect(&self) -> T {
                let mut worst = T::zero();
                for i in 0..$n {
                    for j in 0..$n {
                        let mut s = T::zero();
                        for k in 0..$n {
                            s = s + self.m[k][i] * self.m[k][j];
                        }
                        let id = if i == j { T::one() } else { T::zero() };
                        worst = worst.max((s - id).abs());
                    }
                }
                worst
            }
        }
    };
}

biform_matrix_ops!(BiformValue2, 2, Point2);
biform_matrix_ops!(BiformValue3, 3, Point3);

/// `m = 2 u u^T - I` with `u = (x - y) / |x - y|`.
pub fn biform2<T: Scalar>(x: Point2<T>, y: Point2<T>) -> Result<BiformValue2<T>> {
    let z = separated2(x, y)?;
    let r2 = z.norm_squared();
    let two = lit::<T>(2.0);
    let (a, b) = (z.x1, z.x2);
    // Written as in the explicit 2x2 form: ((a^2 - b^2, 2ab), (2ab, b^2 - a^2)) / r^2.
    let off = two * a * b / r2;
    let diag = (a * a - b * b) / r2;
    Ok(BiformValue2 {
        m: [[diag, off], [off, -diag]],
    })
}

/// `m = 2 z z^T / |z|^2 - I` on three-space.
pub fn biform3<T: Scalar>(x: Point3<T>, y: Point3<T>) -> Result<BiformValue3<T>> {
    let z = separated3(x, y)?;
    Ok(BiformValue3 {
        m: reflection_matrix(z.to_array(), z.norm_squared()),
    })
}

fn reflection_matrix<T: Scalar>(z: [T; 3], r2: T) -> [[T; 3]; 3] {
    let two = lit::<T>(2.0);
    let mut m = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = two * z[i] * z[j] / r2 - if i == j { T::one() } else { T::zero() };
        }
    }
    m
}

/// `alpha(x, y)(u (x) v) = 2 <z, u> <z, v> / |z|^2 - <u, v>`.
pub fn biform_apply<T: Scalar>(x: Point2<T>, y: Point2<T>, u: Point2<T>, v: Point2<T>) -> Result<T> {
    let z = separated2(x, y)?;
    Ok(kernel2(z, u, v))
}

/// Three-space counterpart of [`biform_apply`].
pub fn biform3_apply<T: Scalar>(x: Point3<T>, y: Point3<T>, u: Point3<T>, v: Point3<T>) -> Result<T> {
    let z = separated3(x, y)?;
    Ok(kernel3(z, u, v))
}

#[inline]
pub(crate) fn kernel2<T: Scalar>(z: Point2<T>, u: Point2<T>, v: Point2<T>) -> T {
    lit::<T>(2.0) * z.dot(u) * z.dot(v) / z.norm_squared() - u.dot(v)
}

#[inline]
pub(crate) fn kernel3<T: Scalar>(z: Point3<T>, u: Point3<T>, v: Point3<T>) -> T {
    lit::<T>(2.0) * z.dot(u) * z.dot(v) / z.norm_squared() - u.dot(v)
}

/// Minkowski transcription of the biform: every inner product, including
/// `|z|^2`, is replaced by `<a, b>_M = a1 b1 + a2 b2 - a3 b3`. Distinct points
/// of the upper hyperboloid are spacelike separated, so `<z, z>_M > 0`.
#[inline]
pub(crate) fn kernel_minkowski<T: Scalar>(z: Point3<T>, u: Point3<T>, v: Point3<T>) -> T {
    lit::<T>(2.0) * z.minkowski_dot(u) * z.minkowski_dot(v) / z.minkowski_dot(z)
        - u.minkowski_dot(v)
}

/// Averaged one-form `(1/|dOmega|) int_{dOmega} V(y, t_y, x) dl(y)`, returned as
/// the vector dual to it at `x`.
pub fn averaged_field<T: Scalar>(
    curve: &ClosedCurve<T>,
    x: Point2<T>,
    refinement: usize,
) -> Result<Point2<T>> {
    curve.ensure_off_boundary(x)?;
    let nodes = curve.boundary_nodes(refinement)?;
    let mut s1 = CompensatedSum::new();
    let mut s2 = CompensatedSum::new();
    let mut total = CompensatedSum::new();
    for node in &nodes {
        let v = mayer_vector(node.point, node.tangent, x)?.get();
        s1.add(node.weight * v.x1);
        s2.add(node.weight * v.x2);
        total.add(node.weight);
    }
    let inv = T::one() / total.total();
    Ok(Point2::new(s1.total() * inv, s2.total() * inv))
}

/// Mixed exterior derivative `d1 d2 alpha` evaluated by finite differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MixedDerivativeTensor<T> {
    /// Coefficient of `dx^1 ^ dx^2 (x) dy^1 ^ dy^2`.
    Planar(T),
    /// `t[a][b]` is the coefficient of `e_a(x) (x) e_b(y)` in the cyclic
    /// basis `{dx^2 ^ dx^3, dx^3 ^ dx^1, dx^1 ^ dx^2}`.
    Spatial([[T; 3]; 3]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    R2,
    R3,
}

fn check_step<T: Scalar>(h: T, separation: T) -> Result<()> {
    if !(h > T::zero() && h < separation / lit(10.0)) {
        return Err(Error::StepTooLarge {
            step: f(h),
            separation: f(separation),
        });
    }
    Ok(())
}

/// `d_{x^k} d_{y^l} alpha_ij` by the centered four-point stencil, indexed
/// `[k][l][i][j]`.
fn mixed_partials<const N: usize, T, F>(alpha: F, x: [T; N], y: [T; N], h: T) -> [[[[T; N]; N]; N]; N]
where
    T: Scalar,
    F: Fn([T; N], [T; N]) -> [[T; N]; N],
{
    let mut out = [[[[T::zero(); N]; N]; N]; N];
    let denom = lit::<T>(4.0) * h * h;
    for k in 0..N {
        for l in 0..N {
            let shift = |p: [T; N], idx: usize, s: T| {
                let mut q = p;
                q[idx] = q[idx] + s;
                q
            };
            let pp = alpha(shift(x, k, h), shift(y, l, h));
            let pm = alpha(shift(x, k, h), shift(y, l, -h));
            let mp = alpha(shift(x, k, -h), shift(y, l, h));
            let mm = alpha(shift(x, k, -h), shift(y, l, -h));
            for i in 0..N {
                for j in 0..N {
                    out[k][l][i][j] = (pp[i][j] - pm[i][j] - mp[i][j] + mm[i][j]) / denom;
                }
            }
        }
    }
    out
}

/// Planar `d1 d2 alpha` coefficient by centered finite differences with step
/// `h`. Vanishes away from the diagonal; truncation error is `O(h^2)`.
pub fn d1d2_fd_r2<T: Scalar>(x: Point2<T>, y: Point2<T>, h: T) -> Result<T> {
    let z = separated2(x, y)?;
    check_step(h, z.norm())?;
    let alpha = |x: [T; 2], y: [T; 2]| {
        let z = [x[0] - y[0], x[1] - y[1]];
        let r2 = z[0] * z[0] + z[1] * z[1];
        let two = lit::<T>(2.0);
        [
            [two * z[0] * z[0] / r2 - T::one(), two * z[0] * z[1] / r2],
            [two * z[1] * z[0] / r2, two * z[1] * z[1] / r2 - T::one()],
        ]
    };
    let d = mixed_partials(alpha, x.to_array(), y.to_array(), h);
    // dx^k ^ dx^i = eps_{ki} dx^1 ^ dx^2.
    let eps = |a: usize, b: usize| -> T {
        match (a, b) {
            (0, 1) => T::one(),
            (1, 0) => -T::one(),
            _ => T::zero(),
        }
    };
    let mut acc = T::zero();
    for k in 0..2 {
        for i in 0..2 {
            for l in 0..2 {
                for j in 0..2 {
                    acc = acc + eps(k, i) * eps(l, j) * d[k][l][i][j];
                }
            }
        }
    }
    Ok(acc)
}

fn levi_civita<T: Scalar>(a: usize, b: usize, c: usize) -> T {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => T::one(),
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -T::one(),
        _ => T::zero(),
    }
}

/// Three-space `d1 d2 alpha` by centered finite differences, in the cyclic
/// two-form basis on each factor.
pub fn d1d2_fd_r3<T: Scalar>(x: Point3<T>, y: Point3<T>, h: T) -> Result<[[T; 3]; 3]> {
    let z = separated3(x, y)?;
    check_step(h, z.norm())?;
    let alpha = |x: [T; 3], y: [T; 3]| {
        let z = [x[0] - y[0], x[1] - y[1], x[2] - y[2]];
        reflection_matrix(z, z[0] * z[0] + z[1] * z[1] + z[2] * z[2])
    };
    let d = mixed_partials(alpha, x.to_array(), y.to_array(), h);
    let mut t = [[T::zero(); 3]; 3];
    for (a, row) in t.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            let mut acc = T::zero();
            for k in 0..3 {
                for i in 0..3 {
                    let ea = levi_civita::<T>(a, k, i);
                    if ea == T::zero() {
                        continue;
                    }
                    for l in 0..3 {
                        for j in 0..3 {
                            acc = acc + ea * levi_civita::<T>(b, l, j) * d[k][l][i][j];
                        }
                    }
                }
            }
            *entry = acc;
        }
    }
    Ok(t)
}

/// Off-diagonal closed form of `d1 d2 alpha` on three-space:
/// `-4 (z / |z|^2) (x) (-z / |z|^2)`, i.e. `4 z_a z_b / |z|^4`.
pub fn d1d2_closed_form_r3<T: Scalar>(x: Point3<T>, y: Point3<T>) -> Result<[[T; 3]; 3]> {
    let z = separated3(x, y)?;
    let r2 = z.norm_squared();
    let zx = z * (T::one() / r2);
    let zy = -z * (T::one() / r2);
    let mut t = [[T::zero(); 3]; 3];
    for (a, row) in t.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            *entry = -lit::<T>(4.0) * zx.component(a) * zy.component(b);
        }
    }
    Ok(t)
}

/// Dispatching front end over [`d1d2_fd_r2`] and [`d1d2_fd_r3`]. Planar inputs
/// use the first two coordinates of the given points.
pub fn d1d2_fd<T: Scalar>(
    space: Space,
    x: Point3<T>,
    y: Point3<T>,
    h: T,
) -> Result<MixedDerivativeTensor<T>> {
    match space {
        Space::R2 => d1d2_fd_r2(Point2::new(x.x1, x.x2), Point2::new(y.x1, y.x2), h)
            .map(MixedDerivativeTensor::Planar),
        Space::R3 => d1d2_fd_r3(x, y, h).map(MixedDerivativeTensor::Spatial),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-12;

    fn p(a: f64, b: f64) -> Point2<f64> {
        Point2::new(a, b)
    }

    #[test]
    fn mayer_vector_special_directions() {
        let y = p(0.3, -0.2);
        let t = UnitVector2::from_angle(0.7);
        let along = y + t.get() * 2.5;
        let v = mayer_vector(y, t, along).unwrap();
        assert!((v.get() - t.get()).norm() < EPS);
        let across = y + t.get().perp() * 1.5;
        let v = mayer_vector(y, t, across).unwrap();
        assert!((v.get() + t.get()).norm() < EPS);
    }

    #[test]
    fn mayer_vector_is_tangent_of_the_circle() {
        let v = mayer_vector(p(0.0, 0.0), UnitVector2::e1(), p(1.0, 1.0)).unwrap();
        assert!((v.get() - p(0.0, 1.0)).norm() < EPS);
        let (c, r) = tangent_circle(p(0.0, 0.0), UnitVector2::e1(), p(1.0, 1.0))
            .unwrap()
            .unwrap();
        assert!((c - p(0.0, 1.0)).norm() < EPS);
        assert!((r - 1.0).abs() < EPS);
        // Counter-clockwise tangent at x = (1, 1) about center (0, 1) is (0, 1).
        let radial = p(1.0, 1.0) - c;
        assert!((radial.perp() * (1.0 / r) - v.get()).norm() < EPS);
    }

    #[test]
    fn coincident_points_are_errors() {
        let x = p(1.0, 2.0);
        assert!(matches!(mayer_vector(x, UnitVector2::e1(), x), Err(Error::CoincidentPoints(_))));
        assert!(biform2(x, x).is_err());
        assert!(curl_density(x, UnitVector2::e1(), x).is_err());
        let q = Point3::new(1.0, 2.0, 3.0);
        assert!(biform3(q, q).is_err());
    }

    #[test]
    fn biform2_entries() {
        let m = biform2(p(1.0, 0.0), p(0.0, 0.0)).unwrap().m;
        assert_eq!(m, [[1.0, 0.0], [0.0, -1.0]]);
        let m = biform2(p(1.0, 1.0), p(0.0, 0.0)).unwrap().m;
        assert!((m[0][0]).abs() < EPS && (m[1][1]).abs() < EPS);
        assert!((m[0][1] - 1.0).abs() < EPS && (m[1][0] - 1.0).abs() < EPS);
    }

    #[test]
    fn biform2_eigenvalues_are_plus_minus_one() {
        let b = biform2(p(0.3, 1.7), p(-2.0, 0.4)).unwrap();
        // Symmetric 2x2 with trace 0: eigenvalues +-sqrt(-det).
        let det = b.m[0][0] * b.m[1][1] - b.m[0][1] * b.m[1][0];
        assert!(b.trace().abs() < EPS);
        assert!((det + 1.0).abs() < EPS);
    }

    #[test]
    fn biform_apply_simple_cases() {
        let (x, y) = (p(2.0, 1.0), p(0.5, -1.0));
        let u = UnitVector2::normalize(x - y).unwrap().get();
        assert!((biform_apply(x, y, u, u).unwrap() - 1.0).abs() < EPS);
        let w = u.perp();
        assert!((biform_apply(x, y, w, w).unwrap() + 1.0).abs() < EPS);
    }

    #[test]
    fn biform3_axis() {
        let b = biform3(Point3::new(1.0, 0.0, 0.0), Point3::zero()).unwrap();
        assert_eq!(b.m, [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]);
        assert_eq!(b.trace(), -1.0);
    }

    #[test]
    fn curl_density_values() {
        let y = p(0.0, 0.0);
        assert_eq!(curl_density(y, UnitVector2::e2(), p(1.0, 0.0)).unwrap(), -2.0);
        assert_eq!(curl_density(y, UnitVector2::e1(), p(3.0, 0.0)).unwrap(), 0.0);
        // Interior of a positively oriented unit circle at y = (1, 0).
        let c = curl_density(p(1.0, 0.0), UnitVector2::e2(), p(0.0, 0.0)).unwrap();
        assert!(c > 0.0);
    }

    #[test]
    fn curl_density_matches_finite_difference_curl() {
        let y = p(0.2, -0.4);
        let t = UnitVector2::from_angle(1.1);
        let x = p(1.3, 0.9);
        let h = 1e-4;
        let v = |q: Point2<f64>| mayer_vector(y, t, q).unwrap().get();
        let dv2_dx1 = (v(x + p(h, 0.0)).x2 - v(x - p(h, 0.0)).x2) / (2.0 * h);
        let dv1_dx2 = (v(x + p(0.0, h)).x1 - v(x - p(0.0, h)).x1) / (2.0 * h);
        let curl = dv2_dx1 - dv1_dx2;
        assert!((curl - curl_density(y, t, x).unwrap()).abs() < 1e-7);
    }

    #[test]
    fn d1d2_planar_vanishes() {
        let v = d1d2_fd_r2(p(1.0, 0.0), p(0.0, 0.0), 1e-3).unwrap();
        assert!(v.abs() <= 1e-5, "{v}");
    }

    #[test]
    fn d1d2_spatial_axis_component() {
        let x = Point3::new(1.0f64, 0.0, 0.0);
        let t = d1d2_fd_r3(x, Point3::zero(), 1e-3).unwrap();
        assert!((t[0][0] - 4.0).abs() < 1e-4);
        let closed = d1d2_closed_form_r3(x, Point3::zero()).unwrap();
        assert_eq!(closed[0][0], 4.0);
        for a in 0..3 {
            for b in 0..3 {
                assert!((t[a][b] - closed[a][b]).abs() < 1e-4);
            }
        }
    }

    #[test]
    fn d1d2_step_guard() {
        assert!(matches!(
            d1d2_fd_r2(p(1.0, 0.0), p(0.0, 0.0), 0.2),
            Err(Error::StepTooLarge { .. })
        ));
        assert!(d1d2_fd_r2(p(1.0, 0.0), p(0.0, 0.0), 0.0).is_err());
        assert!(matches!(
            d1d2_fd(Space::R3, Point3::new(1.0, 0.0, 0.0), Point3::zero(), 1e-3).unwrap(),
            MixedDerivativeTensor::Spatial(_)
        ));
    }

    #[test]
    fn averaged_field_vanishes_at_center() {
        let c = ClosedCurve::regular_polygon(512, 1.0).unwrap();
        let a = averaged_field(&c, p(0.0, 0.0), 2).unwrap();
        assert!(a.norm() < 1e-10);
        let a = averaged_field(&c, p(0.99, 0.0), 4).unwrap();
        assert!(a.norm() <= 1.0);
        assert!(averaged_field(&c, p(1.0, 0.0), 1).is_err());
    }
}
