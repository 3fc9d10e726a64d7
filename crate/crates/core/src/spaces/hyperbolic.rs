use crate::biform::kernel_minkowski;
use crate::error::{f, Error, Result};
use crate::point::{det3, Point2, Point3};
use crate::quadrature::{double_sum, IsoperimetricReport, SpaceTag};
use crate::scalar::{compensated_sum, count, lit, Scalar};

use super::{positive_angle, ArcGeometry, ArcKernel, ArcNode};

/// Allowed `| <v, v>_M + 1 |` for hyperboloid vertices.
pub const HYPERBOLOID_TOL: f64 = 1e-10;

/// Geodesic polygon on the upper sheet `<x, x>_M = -1, x3 > 0` of the
/// hyperboloid in Minkowski three-space. Positive orientation is
/// counter-clockwise when projected onto the `(x1, x2)` plane.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicCurve<T> {
    vertices: Vec<Point3<T>>,
}

impl<T: Scalar> HyperbolicCurve<T> {
    pub fn new(vertices: Vec<Point3<T>>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::DegenerateCurve(format!(
                "{} vertices, need at least 3",
                vertices.len()
            )));
        }
        let tol = lit::<T>(HYPERBOLOID_TOL);
        for (index, v) in vertices.iter().enumerate() {
            let defect = (v.minkowski_dot(*v) + T::one()).abs();
            if !(defect <= tol) || !(v.x3 >= T::one() - tol) {
                return Err(Error::OffManifold {
                    manifold: "upper hyperboloid",
                    index,
                    defect: f(defect),
                });
            }
        }
        let n = vertices.len();
        for i in 0..n {
            let j = (i + 1) % n;
            if minkowski_chord(vertices[i], vertices[j]) <= lit(1e-12) {
                return Err(Error::DegenerateCurve(format!(
                    "consecutive vertices {i} and {j} coincide"
                )));
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

    pub fn boundary_nodes(&self, refinement: usize) -> Result<Vec<ArcNode<T>>> {
        if refinement == 0 {
            return Err(Error::InvalidArgument("refinement must be at least 1".into()));
        }
        Ok(self.nodes(refinement))
    }
}

/// `sqrt(<a - b, a - b>_M)`; positive for distinct hyperboloid points.
fn minkowski_chord<T: Scalar>(a: Point3<T>, b: Point3<T>) -> T {
    let z = a - b;
    z.minkowski_dot(z).max(T::zero()).sqrt()
}

/// Hyperbolic distance `arccosh(-<a, b>_M)`, evaluated as
/// `2 asinh(chord / 2)` to keep precision for nearby points.
fn distance<T: Scalar>(a: Point3<T>, b: Point3<T>) -> T {
    lit::<T>(2.0) * (minkowski_chord(a, b) * lit(0.5)).asinh()
}

impl<T: Scalar> ArcGeometry<T> for HyperbolicCurve<T> {
    fn arc_count(&self) -> usize {
        self.vertices.len()
    }

    fn arc_length(&self, arc: usize) -> T {
        let (a, b) = self.arc(arc);
        distance(a, b)
    }

    fn interpolate(&self, arc: usize, s: T) -> Point3<T> {
        let (a, b) = self.arc(arc);
        let d = distance(a, b);
        let sinh = d.sinh();
        a * (((T::one() - s) * d).sinh() / sinh) + b * ((s * d).sinh() / sinh)
    }

    fn tangent_along(&self, point: Point3<T>, chord: Point3<T>) -> Point3<T> {
        // <point, point>_M = -1, so adding <chord, point>_M point removes the normal part.
        let t = chord + point * chord.minkowski_dot(point);
        t * (T::one() / t.minkowski_dot(t).sqrt())
    }

    fn separation(&self, a: Point3<T>, b: Point3<T>) -> T {
        minkowski_chord(a, b)
    }

    fn kernel(&self, z: Point3<T>, u: Point3<T>, v: Point3<T>) -> T {
        kernel_minkowski(z, u, v)
    }
}

/// Minkowski biform `2 <z, u>_M <z, v>_M / <z, z>_M - <u, v>_M`, `z = x - y`.
pub fn minkowski_biform_apply<T: Scalar>(x: Point3<T>, y: Point3<T>, u: Point3<T>, v: Point3<T>) -> Result<T> {
    let z = x - y;
    let zz = z.minkowski_dot(z);
    if !(zz > lit::<T>(1e-24) * x.norm_squared().max(y.norm_squared()).max(T::one())) {
        return Err(Error::CoincidentPoints(f(zz.max(T::zero()).sqrt())));
    }
    Ok(kernel_minkowski(z, u, v))
}

/// `(x1, x2) -> (x1, x2, sqrt(1 + x1^2 + x2^2))`.
pub fn lift_to_hyperboloid<T: Scalar>(p: Point2<T>) -> Point3<T> {
    Point3::new(p.x1, p.x2, (T::one() + p.norm_squared()).sqrt())
}

/// `n` vertices on the hyperbolic circle of radius `r` about `(0, 0, 1)`.
pub fn hyperbolic_circle<T: Scalar>(radius: T, n: usize) -> Result<HyperbolicCurve<T>> {
    if !(radius > T::zero() && radius.is_finite()) {
        return Err(Error::InvalidArgument(format!("radius {radius} must be positive")));
    }
    if n < 3 {
        return Err(Error::InvalidArgument(format!("circle needs at least 3 vertices, got {n}")));
    }
    let two_pi = T::PI() + T::PI();
    let (s, c) = (radius.sinh(), radius.cosh());
    let vertices = (0..n)
        .map(|k| {
            let phi = two_pi * count::<T>(k) / count::<T>(n);
            Point3::new(s * phi.cos(), s * phi.sin(), c)
        })
        .collect();
    HyperbolicCurve::new(vertices)
}

pub fn hyperbolic_perimeter<T: Scalar>(curve: &HyperbolicCurve<T>) -> T {
    compensated_sum((0..curve.len()).map(|i| curve.arc_length(i)))
}

/// Angle defect `(n - 2) pi - sum of interior angles`. Negative for
/// clockwise curves.
pub fn hyperbolic_area<T: Scalar>(curve: &HyperbolicCurve<T>) -> T {
    let v = curve.vertices();
    let n = v.len();
    let angles = (0..n).map(|i| {
        let p = v[i];
        let prev = v[(i + n - 1) % n];
        let next = v[(i + 1) % n];
        let back = prev + p * prev.minkowski_dot(p);
        let ahead = next + p * next.minkowski_dot(p);
        let scale = (back.minkowski_dot(back) * ahead.minkowski_dot(ahead)).sqrt();
        // det(p, ., .) is invariant under proper orthochronous Lorentz maps and
        // reduces to the planar cross product at the apex (0, 0, 1).
        positive_angle(det3(p, ahead, back) / scale, ahead.minkowski_dot(back) / scale)
    });
    count::<T>(n - 2) * T::PI() - compensated_sum(angles)
}

/// Double sum of the Minkowski biform over tangent pairs of the curve.
pub fn hyperbolic_double_integral<T: Scalar>(curve: &HyperbolicCurve<T>, refinement: usize) -> Result<T> {
    let nodes = curve.boundary_nodes(refinement)?;
    Ok(double_sum(&ArcKernel {
        geometry: curve,
        nodes,
    }))
}

/// Hyperbolic report with `lower_bound = (4 pi + A) A`.
pub fn verify_hyperbolic_isoperimetric<T: Scalar>(
    curve: &HyperbolicCurve<T>,
    refinement: usize,
) -> Result<IsoperimetricReport<T>> {
    let area = hyperbolic_area(curve);
    if !(area > T::zero()) {
        return Err(Error::NegativeOrientation(f(area)));
    }
    let double_integral = hyperbolic_double_integral(curve, refinement)?;
    Ok(IsoperimetricReport::assemble(
        SpaceTag::Hyperbolic,
        hyperbolic_perimeter(curve),
        area,
        double_integral,
        curve.len() * refinement,
    ))
}
