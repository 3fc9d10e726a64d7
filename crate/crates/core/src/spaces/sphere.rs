use crate::error::{f, Error, Result};
use crate::point::{det3, Point3};
use crate::quadrature::{double_sum, IsoperimetricReport, SpaceTag};
use crate::scalar::{compensated_sum, count, lit, Scalar};

use super::{positive_angle, ArcGeometry, ArcKernel, ArcNode};
use crate::biform::kernel3;

/// Geodesic polygon on the unit sphere; edges are minor great-circle arcs.
/// Positive orientation puts the enclosed region on the left when viewed
/// from outside the sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalCurve<T> {
    vertices: Vec<Point3<T>>,
}

/// Allowed `| |v| - 1 |` for sphere vertices.
pub const SPHERE_TOL: f64 = 1e-12;

impl<T: Scalar> SphericalCurve<T> {
    pub fn new(vertices: Vec<Point3<T>>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::DegenerateCurve(format!(
                "{} vertices, need at least 3",
                vertices.len()
            )));
        }
        for (index, v) in vertices.iter().enumerate() {
            let defect = (v.norm() - T::one()).abs();
            if !(defect <= lit(SPHERE_TOL)) {
                return Err(Error::OffManifold {
                    manifold: "unit sphere",
                    index,
                    defect: f(defect),
                });
            }
        }
        let n = vertices.len();
        for i in 0..n {
            let j = (i + 1) % n;
            let (a, b) = (vertices[i], vertices[j]);
            if a.dot(b) <= lit::<T>(-1.0 + 1e-12) || (a - b).norm() <= lit(1e-12) {
                return Err(Error::AntipodalVertices(i, j));
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point3<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self { vertices }
    }

    fn arc(&self, i: usize) -> (Point3<T>, Point3<T>) {
        (self.vertices[i], self.vertices[(i + 1) % self.vertices.len()])
    }

    /// Boundary nodes at sub-arc midpoints.
    pub fn boundary_nodes(&self, refinement: usize) -> Result<Vec<ArcNode<T>>> {
        if refinement == 0 {
            return Err(Error::InvalidArgument("refinement must be at least 1".into()));
        }
        Ok(self.nodes(refinement))
    }
}

fn arc_angle<T: Scalar>(a: Point3<T>, b: Point3<T>) -> T {
    a.cross(b).norm().atan2(a.dot(b))
}

impl<T: Scalar> ArcGeometry<T> for SphericalCurve<T> {
    fn arc_count(&self) -> usize {
        self.vertices.len()
    }

    fn arc_length(&self, arc: usize) -> T {
        let (a, b) = self.arc(arc);
        arc_angle(a, b)
    }

    fn interpolate(&self, arc: usize, s: T) -> Point3<T> {
        let (a, b) = self.arc(arc);
        let omega = arc_angle(a, b);
        let sin = omega.sin();
        a * (((T::one() - s) * omega).sin() / sin) + b * ((s * omega).sin() / sin)
    }

    fn tangent_along(&self, point: Point3<T>, chord: Point3<T>) -> Point3<T> {
        let t = chord - point * chord.dot(point);
        t * (T::one() / t.norm())
    }

    fn separation(&self, a: Point3<T>, b: Point3<T>) -> T {
        (a - b).norm()
    }

    fn kernel(&self, z: Point3<T>, u: Point3<T>, v: Point3<T>) -> T {
        kernel3(z, u, v)
    }
}

/// Sum of great-circle arc lengths `acos <v_i, v_i+1>`.
pub fn sphere_perimeter<T: Scalar>(curve: &SphericalCurve<T>) -> T {
    compensated_sum((0..curve.len()).map(|i| curve.arc_length(i)))
}

/// Spherical excess `sum of interior angles - (n - 2) pi` of the region to
/// the left of travel, in `[0, 4 pi)`.
pub fn sphere_area<T: Scalar>(curve: &SphericalCurve<T>) -> T {
    let v = curve.vertices();
    let n = v.len();
    let angles = (0..n).map(|i| {
        let p = v[i];
        let prev = v[(i + n - 1) % n];
        let next = v[(i + 1) % n];
        let back = prev - p * prev.dot(p);
        let ahead = next - p * next.dot(p);
        // Counter-clockwise (about the outward normal p) from `ahead` to `back`.
        positive_angle(det3(p, ahead, back), ahead.dot(back))
    });
    let excess = compensated_sum(angles) - count::<T>(n - 2) * T::PI();
    let four_pi = lit::<T>(4.0) * T::PI();
    if excess < T::zero() {
        excess + four_pi
    } else if excess >= four_pi {
        excess - four_pi
    } else {
        excess
    }
}

/// `n` equally spaced vertices on the circle of colatitude `theta`,
/// counter-clockwise about the north pole, which lies inside.
pub fn geodesic_cap<T: Scalar>(theta: T, n: usize) -> Result<SphericalCurve<T>> {
    if !(theta > T::zero() && theta < T::PI()) {
        return Err(Error::InvalidArgument(format!("colatitude {theta} outside (0, pi)")));
    }
    if n < 3 {
        return Err(Error::InvalidArgument(format!("cap needs at least 3 vertices, got {n}")));
    }
    let (s, c) = theta.sin_cos();
    let two_pi = T::PI() + T::PI();
    let vertices = (0..n)
        .map(|k| {
            let phi = two_pi * count::<T>(k) / count::<T>(n);
            Point3::new(s * phi.cos(), s * phi.sin(), c)
        })
        .collect();
    SphericalCurve::new(vertices)
}

/// Double sum of the three-space biform over tangent pairs of the curve,
/// which lies on the sphere. Converges to `4 pi A - A^2`.
pub fn sphere_double_integral<T: Scalar>(curve: &SphericalCurve<T>, refinement: usize) -> Result<T> {
    let nodes = curve.boundary_nodes(refinement)?;
    Ok(double_sum(&ArcKernel {
        geometry: curve,
        nodes,
    }))
}

/// Spherical report with `lower_bound = (4 pi - A) A`.
pub fn verify_sphere_isoperimetric<T: Scalar>(
    curve: &SphericalCurve<T>,
    refinement: usize,
) -> Result<IsoperimetricReport<T>> {
    let area = sphere_area(curve);
    if !(area > T::zero()) {
        return Err(Error::DegenerateCurve("enclosed spherical area vanishes".into()));
    }
    let double_integral = sphere_double_integral(curve, refinement)?;
    Ok(IsoperimetricReport::assemble(
        SpaceTag::Sphere,
        sphere_perimeter(curve),
        area,
        double_integral,
        curve.len() * refinement,
    ))
}
