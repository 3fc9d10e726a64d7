//! Oriented closed polygons in the plane.
//!
//! Smooth boundaries enter as fine polygons. Orientation is never declared:
//! it is read off the sign of the shoelace area, positive meaning the
//! interior lies to the left of travel and the exterior normal `n` together
//! with the tangent `t` forms a direct basis `(n, t)`.

use crate::error::{f, Error, Result};
use crate::point::{Point2, UnitVector2};
use crate::scalar::{compensated_sum, count, lit, CompensatedSum, Scalar};

/// Relative tolerance (times bounding-box diameter) below which consecutive
/// vertices are considered coincident.
pub const VERTEX_SEPARATION_TOL: f64 = 1e-12;

/// Relative tolerance (times bounding-box diameter) for a point to count as
/// lying on the curve.
pub const ON_BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
}

/// Quadrature node on a subdivided edge: midpoint, edge direction, sub-edge
/// length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryNode<T> {
    pub point: Point2<T>,
    pub tangent: UnitVector2<T>,
    pub weight: T,
    /// Index of the polygon edge the node belongs to.
    pub edge: usize,
    /// Parameter interval `[start, end]` of the sub-edge along its edge.
    pub span: (T, T),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedCurve<T> {
    vertices: Vec<Point2<T>>,
    signed_area: T,
    diameter: T,
}

impl<T: Scalar> ClosedCurve<T> {
    /// Builds a closed polygon; the closing edge from the last vertex back to
    /// the first is implicit.
    pub fn new(vertices: Vec<Point2<T>>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::DegenerateCurve(format!(
                "{} vertices, need at least 3",
                vertices.len()
            )));
        }
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(Error::DegenerateCurve(format!("vertex {i} is not finite")));
        }
        let diameter = bounding_box_diameter(&vertices);
        if !(diameter > T::zero()) {
            return Err(Error::DegenerateCurve("all vertices coincide".into()));
        }
        let min_sep = diameter * lit(VERTEX_SEPARATION_TOL);
        let n = vertices.len();
        for i in 0..n {
            let j = (i + 1) % n;
            if (vertices[j] - vertices[i]).norm() <= min_sep {
                return Err(Error::DegenerateCurve(format!(
                    "consecutive vertices {i} and {j} coincide"
                )));
            }
        }
        let signed_area = shoelace(&vertices);
        if signed_area.abs() <= lit::<T>(1e-14) * diameter * diameter {
            return Err(Error::DegenerateCurve("enclosed area vanishes".into()));
        }
        Ok(Self {
            vertices,
            signed_area,
            diameter,
        })
    }

    /// Regular `n`-gon inscribed in the circle of the given radius about the
    /// origin, positively oriented, first vertex on the positive `x1` axis.
    pub fn regular_polygon(n: usize, radius: T) -> Result<Self> {
        Self::ellipse(radius, radius, n)
    }

    /// Polygon with `n` vertices on the ellipse with semi-axes `a`, `b`.
    pub fn ellipse(a: T, b: T, n: usize) -> Result<Self> {
        let two_pi = T::PI() + T::PI();
        let vertices = (0..n)
            .map(|k| {
                let phi = two_pi * count::<T>(k) / count::<T>(n);
                Point2::new(a * phi.cos(), b * phi.sin())
            })
            .collect();
        Self::new(vertices)
    }

    /// Axis-aligned rectangle with lower-left corner at the origin.
    pub fn rectangle(width: T, height: T) -> Result<Self> {
        let z = T::zero();
        Self::new(vec![
            Point2::new(z, z),
            Point2::new(width, z),
            Point2::new(width, height),
            Point2::new(z, height),
        ])
    }

    pub fn vertices(&self) -> &[Point2<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Diagonal of the axis-aligned bounding box.
    pub fn diameter(&self) -> T {
        self.diameter
    }

    /// Edges as `(start, end)` pairs, closing edge last.
    pub fn edges(&self) -> impl Iterator<Item = (Point2<T>, Point2<T>)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn perimeter(&self) -> T {
        compensated_sum(self.edges().map(|(a, b)| (b - a).norm()))
    }

    /// Shoelace area; positive for counter-clockwise travel.
    pub fn signed_area(&self) -> T {
        self.signed_area
    }

    pub fn orientation(&self) -> Orientation {
        if self.signed_area > T::zero() {
            Orientation::Positive
        } else {
            Orientation::Negative
        }
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self {
            vertices,
            signed_area: -self.signed_area,
            diameter: self.diameter,
        }
    }

    /// Applies `map` to every vertex and revalidates.
    pub fn transformed<F: FnMut(Point2<T>) -> Point2<T>>(&self, map: F) -> Result<Self> {
        Self::new(self.vertices.iter().copied().map(map).collect())
    }

    pub fn longest_edge(&self) -> T {
        self.edges()
            .map(|(a, b)| (b - a).norm())
            .fold(T::zero(), T::max)
    }

    /// Fails with [`Error::SelfIntersecting`] if two edges meet anywhere other
    /// than at the shared vertex of neighbouring edges. Quadratic in the
    /// number of edges; uses exact orientation predicates.
    pub fn ensure_simple(&self) -> Result<()> {
        let n = self.vertices.len();
        let v = |i: usize| to_coord(self.vertices[i % n]);
        for i in 0..n {
            // Neighbouring edges may only share their common vertex.
            let (a, b, c) = (v(i), v(i + 1), v(i + 2));
            if robust::orient2d(a, b, c) == 0.0 {
                let back = (a.x - b.x) * (c.x - b.x) + (a.y - b.y) * (c.y - b.y);
                if back > 0.0 {
                    return Err(Error::SelfIntersecting(i, (i + 1) % n));
                }
            }
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if segments_intersect(v(i), v(i + 1), v(j), v(j + 1)) {
                    return Err(Error::SelfIntersecting(i, j));
                }
            }
        }
        Ok(())
    }

    /// Nodes at the midpoints of each edge split into `refinement` equal
    /// sub-edges. Tangents are edge directions (piecewise constant) and
    /// weights are sub-edge lengths.
    pub fn boundary_nodes(&self, refinement: usize) -> Result<Vec<BoundaryNode<T>>> {
        if refinement == 0 {
            return Err(Error::InvalidArgument("refinement must be at least 1".into()));
        }
        let r = count::<T>(refinement);
        let half = lit::<T>(0.5);
        let mut nodes = Vec::with_capacity(self.len() * refinement);
        for (edge, (a, b)) in self.edges().enumerate() {
            let d = b - a;
            let length = d.norm();
            let tangent = UnitVector2::new_unchecked(d * (T::one() / length));
            let weight = length / r;
            for k in 0..refinement {
                let s0 = count::<T>(k) / r;
                let s1 = count::<T>(k + 1) / r;
                nodes.push(BoundaryNode {
                    point: a.lerp(b, (count::<T>(k) + half) / r),
                    tangent,
                    weight,
                    edge,
                    span: (s0, s1),
                });
            }
        }
        Ok(nodes)
    }

    /// Euclidean distance from `x` to the polygon.
    pub fn distance_to(&self, x: Point2<T>) -> T {
        self.edges()
            .map(|(a, b)| segment_distance(a, b, x))
            .fold(T::infinity(), T::min)
    }

    pub fn on_boundary_tolerance(&self) -> T {
        self.diameter * lit(ON_BOUNDARY_TOL)
    }

    pub(crate) fn ensure_off_boundary(&self, x: Point2<T>) -> Result<()> {
        let d = self.distance_to(x);
        let tol = self.on_boundary_tolerance();
        if d <= tol {
            return Err(Error::PointOnBoundary {
                distance: f(d),
                tolerance: f(tol),
            });
        }
        Ok(())
    }

    /// Total signed turning of `y - x` as `y` runs once around the curve,
    /// in whole turns.
    pub fn winding_number(&self, x: Point2<T>) -> Result<i64> {
        self.ensure_off_boundary(x)?;
        Ok(self.winding_number_unchecked(x))
    }

    pub(crate) fn winding_number_unchecked(&self, x: Point2<T>) -> i64 {
        let mut turning = CompensatedSum::new();
        for (a, b) in self.edges() {
            let (p, q) = (a - x, b - x);
            turning.add(p.det(q).atan2(p.dot(q)));
        }
        let turns = turning.total() / (T::PI() + T::PI());
        turns.round().to_i64().unwrap_or(0)
    }

    /// Membership in the enclosed region, for either orientation.
    pub fn contains(&self, x: Point2<T>) -> Result<bool> {
        Ok(self.winding_number(x)? != 0)
    }
}

fn bounding_box_diameter<T: Scalar>(vertices: &[Point2<T>]) -> T {
    let (mut lo, mut hi) = (vertices[0], vertices[0]);
    for v in vertices {
        lo = Point2::new(lo.x1.min(v.x1), lo.x2.min(v.x2));
        hi = Point2::new(hi.x1.max(v.x1), hi.x2.max(v.x2));
    }
    (hi - lo).norm()
}

fn shoelace<T: Scalar>(vertices: &[Point2<T>]) -> T {
    let n = vertices.len();
    // Centering on the first vertex keeps the cross products small.
    let o = vertices[0];
    let sum = compensated_sum((0..n).map(|i| (vertices[i] - o).det(vertices[(i + 1) % n] - o)));
    sum * lit(0.5)
}

pub(crate) fn segment_distance<T: Scalar>(a: Point2<T>, b: Point2<T>, x: Point2<T>) -> T {
    let d = b - a;
    let len2 = d.norm_squared();
    let s = ((x - a).dot(d) / len2).max(T::zero()).min(T::one());
    (a + d * s - x).norm()
}

fn to_coord<T: Scalar>(p: Point2<T>) -> robust::Coord<f64> {
    robust::Coord {
        x: f(p.x1),
        y: f(p.x2),
    }
}

fn on_segment(a: robust::Coord<f64>, b: robust::Coord<f64>, p: robust::Coord<f64>) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

fn segments_intersect(
    a: robust::Coord<f64>,
    b: robust::Coord<f64>,
    c: robust::Coord<f64>,
    d: robust::Coord<f64>,
) -> bool {
    let o1 = robust::orient2d(a, b, c);
    let o2 = robust::orient2d(a, b, d);
    let o3 = robust::orient2d(c, d, a);
    let o4 = robust::orient2d(c, d, b);
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        return true;
    }
    (o1 == 0.0 && on_segment(a, b, c))
        || (o2 == 0.0 && on_segment(a, b, d))
        || (o3 == 0.0 && on_segment(c, d, a))
        || (o4 == 0.0 && on_segment(c, d, b))
}
