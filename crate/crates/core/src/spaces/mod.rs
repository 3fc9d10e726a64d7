//! Geodesic polygons on the unit sphere and on the hyperboloid model of the
//! hyperbolic plane, with the restricted biform double integrals.

mod hyperbolic;
mod sphere;

pub use hyperbolic::{
    hyperbolic_area, hyperbolic_circle, hyperbolic_double_integral, hyperbolic_perimeter,
    lift_to_hyperboloid, minkowski_biform_apply, verify_hyperbolic_isoperimetric, HyperbolicCurve,
};
pub use sphere::{
    geodesic_cap, sphere_area, sphere_double_integral, sphere_perimeter, verify_sphere_isoperimetric,
    SphericalCurve,
};

use crate::point::Point3;
use crate::quadrature::PairKernel;
use crate::scalar::{count, lit, Scalar};

/// Boundary node on a geodesic arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcNode<T> {
    pub point: Point3<T>,
    /// Unit tangent (in the ambient metric of the model).
    pub tangent: Point3<T>,
    pub weight: T,
    pub arc: usize,
    pub span: (T, T),
}

/// What the double-sum engine needs to know about a model surface.
pub(crate) trait ArcGeometry<T: Scalar>: Sync {
    fn arc_count(&self) -> usize;
    fn arc_length(&self, arc: usize) -> T;
    /// Point at fraction `s` of the geodesic arc.
    fn interpolate(&self, arc: usize, s: T) -> Point3<T>;
    /// Unit tangent at `point` in the direction of `chord`.
    fn tangent_along(&self, point: Point3<T>, chord: Point3<T>) -> Point3<T>;
    fn separation(&self, a: Point3<T>, b: Point3<T>) -> T;
    fn kernel(&self, z: Point3<T>, u: Point3<T>, v: Point3<T>) -> T;

    fn arc_node(&self, arc: usize, s0: T, s1: T) -> ArcNode<T> {
        let p0 = self.interpolate(arc, s0);
        let p1 = self.interpolate(arc, s1);
        let point = self.interpolate(arc, (s0 + s1) * lit(0.5));
        ArcNode {
            point,
            tangent: self.tangent_along(point, p1 - p0),
            weight: self.arc_length(arc) * (s1 - s0),
            arc,
            span: (s0, s1),
        }
    }

    fn nodes(&self, refinement: usize) -> Vec<ArcNode<T>> {
        let r = count::<T>(refinement);
        (0..self.arc_count())
            .flat_map(|arc| (0..refinement).map(move |k| (arc, k)))
            .map(|(arc, k)| self.arc_node(arc, count::<T>(k) / r, count::<T>(k + 1) / r))
            .collect()
    }
}

pub(crate) struct ArcKernel<'a, G, T> {
    pub geometry: &'a G,
    pub nodes: Vec<ArcNode<T>>,
}

impl<T: Scalar, G: ArcGeometry<T>> PairKernel<T> for ArcKernel<'_, G, T> {
    type Node = ArcNode<T>;

    fn nodes(&self) -> &[ArcNode<T>] {
        &self.nodes
    }

    fn weight(&self, node: &ArcNode<T>) -> T {
        node.weight
    }

    fn separation(&self, a: &ArcNode<T>, b: &ArcNode<T>) -> T {
        self.geometry.separation(a.point, b.point)
    }

    fn value(&self, a: &ArcNode<T>, b: &ArcNode<T>) -> T {
        self.geometry.kernel(a.point - b.point, a.tangent, b.tangent)
    }

    fn refine(&self, node: &ArcNode<T>, pieces: usize) -> Vec<ArcNode<T>> {
        let (s0, s1) = node.span;
        let step = (s1 - s0) / count::<T>(pieces);
        (0..pieces)
            .map(|k| {
                let lo = s0 + step * count::<T>(k);
                self.geometry.arc_node(node.arc, lo, lo + step)
            })
            .collect()
    }
}

/// Angle in `[0, 2 pi)` from its sine and cosine, which may share a common
/// positive factor.
pub(crate) fn positive_angle<T: Scalar>(sin: T, cos: T) -> T {
    let a = sin.atan2(cos);
    if a < T::zero() {
        a + T::PI() + T::PI()
    } else {
        a
    }
}
