//! Line, double-boundary and area integrals behind the isoperimetric chain
//! `|dOmega|^2 >= int int alpha = 4 pi |Omega|`.

use rayon::prelude::*;
use serde::Serialize;

use crate::biform::{kernel2, mayer_vector};
use crate::checks::Check;
use crate::curves::{segment_distance, BoundaryNode, ClosedCurve, Orientation};
use crate::error::{f, Error, Result};
use crate::gauss;
use crate::point::{Point2, UnitVector2};
use crate::scalar::{compensated_sum, lit, CompensatedSum, Scalar};

/// Sub-edge length over distance-to-focus ratio for graded boundary
/// integrals. The midpoint rule then has relative error about `0.4 * ratio^2`.
pub const WINDING_GRADING: f64 = 5e-4;

/// Grading ratio for the Stokes line integral, whose integrand is bounded.
pub const STOKES_GRADING: f64 = 5e-3;

/// Pieces per sub-edge when a near-diagonal pair is re-integrated.
pub const DIAGONAL_SUBDIVISION: usize = 8;

/// Default tolerances of the isoperimetric verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Absolute slack for `deficit >= 0` and `calibration_gap >= 0`.
    pub inequality: f64,
    /// Relative tolerance for `double_integral == lower_bound`.
    pub identity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            inequality: 1e-8,
            identity: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceTag {
    Euclidean,
    Sphere,
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsoperimetricReport<T> {
    pub perimeter: T,
    pub area: T,
    pub double_integral: T,
    /// `4 pi A`, `(4 pi - A) A` or `(4 pi + A) A` depending on the space.
    pub lower_bound: T,
    /// `perimeter^2 - lower_bound`.
    pub deficit: T,
    /// `perimeter^2 - double_integral`.
    pub calibration_gap: T,
    pub space_tag: SpaceTag,
    pub nodes: usize,
}

impl<T: Scalar> IsoperimetricReport<T> {
    pub(crate) fn assemble(
        space_tag: SpaceTag,
        perimeter: T,
        area: T,
        double_integral: T,
        nodes: usize,
    ) -> Self {
        let four_pi = lit::<T>(4.0) * T::PI();
        let lower_bound = match space_tag {
            SpaceTag::Euclidean => four_pi * area,
            SpaceTag::Sphere => (four_pi - area) * area,
            SpaceTag::Hyperbolic => (four_pi + area) * area,
        };
        let p2 = perimeter * perimeter;
        Self {
            perimeter,
            area,
            double_integral,
            lower_bound,
            deficit: p2 - lower_bound,
            calibration_gap: p2 - double_integral,
            space_tag,
            nodes,
        }
    }

    /// `|double_integral - lower_bound| / lower_bound`.
    pub fn identity_residual(&self) -> T {
        (self.double_integral - self.lower_bound).abs() / self.lower_bound.abs()
    }

    /// The three verdicts of the chain with their measured values.
    pub fn checks(&self, tol: &Tolerances) -> Vec<Check> {
        vec![
            Check::at_least("deficit_nonnegative", f(self.deficit), -tol.inequality),
            Check::at_least("calibration_gap_nonnegative", f(self.calibration_gap), -tol.inequality),
            Check::at_most("double_integral_matches_lower_bound", f(self.identity_residual()), tol.identity),
        ]
    }
}

/// `sum_k w_k <field(p_k), t_k>` over the midpoint nodes.
pub fn line_integral<T, F>(curve: &ClosedCurve<T>, mut field: F, refinement: usize) -> Result<T>
where
    T: Scalar,
    F: FnMut(Point2<T>) -> Result<Point2<T>>,
{
    let nodes = curve.boundary_nodes(refinement)?;
    let mut acc = CompensatedSum::new();
    for node in &nodes {
        acc.add(node.weight * field(node.point)?.dot(node.tangent.get()));
    }
    Ok(acc.total())
}

/// Midpoint rule on each sub-edge, bisecting sub-edges until their length is
/// at most `grading` times their distance to `focus`. Sub-edges passing
/// through the focus are not graded.
fn graded_line_integral<T, F>(
    curve: &ClosedCurve<T>,
    focus: Point2<T>,
    refinement: usize,
    grading: T,
    mut integrand: F,
) -> Result<T>
where
    T: Scalar,
    F: FnMut(Point2<T>, UnitVector2<T>, T) -> Result<T>,
{
    let nodes = curve.boundary_nodes(refinement)?;
    let on_tol = curve.on_boundary_tolerance();
    let mut acc = CompensatedSum::new();
    let mut stack = Vec::new();
    for node in &nodes {
        let half = node.tangent.get() * (node.weight * lit(0.5));
        stack.push((node.point - half, node.point + half));
        while let Some((a, b)) = stack.pop() {
            let length = (b - a).norm();
            let distance = segment_distance(a, b, focus);
            let mid = (a + b) * lit(0.5);
            if distance <= on_tol || length <= grading * distance {
                acc.add(integrand(mid, node.tangent, length)?);
            } else {
                stack.push((mid, b));
                stack.push((a, mid));
            }
        }
    }
    Ok(acc.total())
}

/// `oint 2 det(y - x, dy) / |y - x|^2`, which equals `4 pi` times the winding
/// number of the curve about `x`. Each of the `refinement` sub-edges per
/// edge is further graded toward `x` (see [`WINDING_GRADING`]).
pub fn winding_integral<T: Scalar>(curve: &ClosedCurve<T>, x: Point2<T>, refinement: usize) -> Result<T> {
    curve.ensure_off_boundary(x)?;
    let two = lit::<T>(2.0);
    graded_line_integral(curve, x, refinement, lit(WINDING_GRADING), |y, t, w| {
        let d = y - x;
        Ok(two * d.det(t.get()) * w / d.norm_squared())
    })
}

/// Double sum over a fixed node set.
///
/// Pairs closer than a quarter of the largest node weight are re-integrated
/// on [`DIAGONAL_SUBDIVISION`]-fold refined sub-nodes; coincident sub-nodes of
/// the same piece take the kernel's limit `1` along a common straight segment
/// or great-circle arc.
pub(crate) trait PairKernel<T: Scalar>: Sync {
    type Node: Send + Sync;
    fn nodes(&self) -> &[Self::Node];
    fn weight(&self, node: &Self::Node) -> T;
    fn separation(&self, a: &Self::Node, b: &Self::Node) -> T;
    fn value(&self, a: &Self::Node, b: &Self::Node) -> T;
    fn refine(&self, node: &Self::Node, pieces: usize) -> Vec<Self::Node>;
}

pub(crate) fn double_sum<T: Scalar, K: PairKernel<T>>(kernel: &K) -> T {
    let nodes = kernel.nodes();
    let max_weight = nodes
        .iter()
        .map(|n| kernel.weight(n))
        .fold(T::zero(), T::max);
    let band = max_weight * lit(0.25);
    let rows: Vec<T> = nodes
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            let wa = kernel.weight(a);
            let mut acc = CompensatedSum::new();
            for (j, b) in nodes.iter().enumerate() {
                if kernel.separation(a, b) < band {
                    acc.add(refined_pair(kernel, a, b, i == j));
                } else {
                    acc.add(wa * kernel.weight(b) * kernel.value(a, b));
                }
            }
            acc.total()
        })
        .collect();
    compensated_sum(rows)
}

fn refined_pair<T: Scalar, K: PairKernel<T>>(kernel: &K, a: &K::Node, b: &K::Node, same: bool) -> T {
    let sa = kernel.refine(a, DIAGONAL_SUBDIVISION);
    let sb = kernel.refine(b, DIAGONAL_SUBDIVISION);
    let mut acc = CompensatedSum::new();
    for (p, u) in sa.iter().enumerate() {
        let wu = kernel.weight(u);
        for (q, v) in sb.iter().enumerate() {
            let w = wu * kernel.weight(v);
            if (same && p == q) || kernel.separation(u, v) == T::zero() {
                acc.add(w);
            } else {
                acc.add(w * kernel.value(u, v));
            }
        }
    }
    acc.total()
}

struct PlanarKernel<'a, T> {
    curve: &'a ClosedCurve<T>,
    nodes: Vec<BoundaryNode<T>>,
}

impl<T: Scalar> PairKernel<T> for PlanarKernel<'_, T> {
    type Node = BoundaryNode<T>;

    fn nodes(&self) -> &[BoundaryNode<T>] {
        &self.nodes
    }

    fn weight(&self, node: &BoundaryNode<T>) -> T {
        node.weight
    }

    fn separation(&self, a: &BoundaryNode<T>, b: &BoundaryNode<T>) -> T {
        (a.point - b.point).norm()
    }

    fn value(&self, a: &BoundaryNode<T>, b: &BoundaryNode<T>) -> T {
        kernel2(a.point - b.point, a.tangent.get(), b.tangent.get())
    }

    fn refine(&self, node: &BoundaryNode<T>, pieces: usize) -> Vec<BoundaryNode<T>> {
        let v = self.curve.vertices();
        let (a, b) = (v[node.edge], v[(node.edge + 1) % v.len()]);
        let (s0, s1) = node.span;
        let step = (s1 - s0) / lit::<T>(pieces as f64);
        (0..pieces)
            .map(|k| {
                let lo = s0 + step * lit::<T>(k as f64);
                BoundaryNode {
                    point: a.lerp(b, lo + step * lit(0.5)),
                    tangent: node.tangent,
                    weight: node.weight / lit::<T>(pieces as f64),
                    edge: node.edge,
                    span: (lo, lo + step),
                }
            })
            .collect()
    }
}

/// `sum_i sum_j w_i w_j alpha(x_i, x_j)(t_i, t_j)` over the midpoint nodes.
/// Converges to `4 pi |area|` for simple closed curves of either orientation.
pub fn double_boundary_integral<T: Scalar>(curve: &ClosedCurve<T>, refinement: usize) -> Result<T> {
    let nodes = curve.boundary_nodes(refinement)?;
    Ok(double_sum(&PlanarKernel { curve, nodes }))
}

/// Same sum with the roles of the two boundary copies exchanged.
#[doc(hidden)]
pub fn double_boundary_integral_transposed<T: Scalar>(curve: &ClosedCurve<T>, refinement: usize) -> Result<T> {
    struct Transposed<'a, T>(PlanarKernel<'a, T>);
    impl<T: Scalar> PairKernel<T> for Transposed<'_, T> {
        type Node = BoundaryNode<T>;
        fn nodes(&self) -> &[BoundaryNode<T>] {
            self.0.nodes()
        }
        fn weight(&self, n: &BoundaryNode<T>) -> T {
            self.0.weight(n)
        }
        fn separation(&self, a: &BoundaryNode<T>, b: &BoundaryNode<T>) -> T {
            self.0.separation(b, a)
        }
        fn value(&self, a: &BoundaryNode<T>, b: &BoundaryNode<T>) -> T {
            self.0.value(b, a)
        }
        fn refine(&self, n: &BoundaryNode<T>, pieces: usize) -> Vec<BoundaryNode<T>> {
            self.0.refine(n, pieces)
        }
    }
    let nodes = curve.boundary_nodes(refinement)?;
    Ok(double_sum(&Transposed(PlanarKernel { curve, nodes })))
}

/// Length of the part of the ray `y + r e`, `r > 0`, inside the curve.
fn chord_length<T: Scalar>(curve: &ClosedCurve<T>, y: Point2<T>, e: Point2<T>) -> T {
    let r_min = curve.on_boundary_tolerance();
    let mut hits: Vec<T> = Vec::new();
    for (a, b) in curve.edges() {
        let d = b - a;
        let denom = e.det(d);
        if denom.abs() <= lit::<T>(1e-15) * d.norm() {
            continue;
        }
        let w = a - y;
        let r = w.det(d) / denom;
        let s = w.det(e) / denom;
        if r > r_min && s >= T::zero() && s <= T::one() {
            hits.push(r);
        }
    }
    if hits.is_empty() {
        return T::zero();
    }
    hits.sort_by(|p, q| p.partial_cmp(q).expect("finite hit parameters"));
    hits.dedup_by(|p, q| (*p - *q).abs() <= r_min);
    let first_inside = curve.winding_number_unchecked(y + e * (hits[0] * lit(0.5))) != 0;
    let mut inside = first_inside;
    let mut length = if inside { hits[0] } else { T::zero() };
    for pair in hits.windows(2) {
        inside = !inside;
        if inside {
            length = length + (pair[1] - pair[0]);
        }
    }
    length
}

/// Area integral of [`curl_density`] over the interior, in polar coordinates
/// about `y`. The `1/|x - y|` singularity cancels against the Jacobian, so
/// the radial integral is the exact chord length and only the angular
/// integral is done numerically, split at every vertex direction.
pub fn curl_area_integral<T: Scalar>(curve: &ClosedCurve<T>, y: Point2<T>, t_y: UnitVector2<T>) -> Result<T> {
    let two_pi = T::PI() + T::PI();
    let mut cuts: Vec<T> = vec![T::zero(), two_pi];
    let norm_angle = |v: Point2<T>| {
        let a = v.x2.atan2(v.x1);
        if a < T::zero() {
            a + two_pi
        } else {
            a
        }
    };
    cuts.push(norm_angle(t_y.get()));
    cuts.push(norm_angle(-t_y.get()));
    let tol = curve.on_boundary_tolerance();
    for &v in curve.vertices() {
        if (v - y).norm() > tol {
            cuts.push(norm_angle(v - y));
        }
    }
    cuts.sort_by(|p, q| p.partial_cmp(q).expect("finite angles"));
    cuts.dedup_by(|p, q| (*p - *q).abs() <= lit(1e-14));

    let two = lit::<T>(2.0);
    let t = t_y.get();
    let scale = curve.diameter();
    let mut acc = CompensatedSum::new();
    for w in cuts.windows(2) {
        let piece = gauss::adaptive::<T, Error, _>(
            |theta| {
                let e = Point2::new(theta.cos(), theta.sin());
                Ok(-two * e.det(t) * chord_length(curve, y, e))
            },
            w[0],
            w[1],
            lit::<T>(1e-11) * scale * (w[1] - w[0]),
            30,
        )?;
        acc.add(piece);
    }
    Ok(acc.total())
}

/// Both sides of `int_{dOmega} <V(y, t_y, .), dx> = int_Omega d<V(y, t_y, .), dx>`
/// for a point `y` on the curve.
///
/// The left side is the boundary integral of the circle field, graded toward
/// `y` (see [`STOKES_GRADING`]); the right side is [`curl_area_integral`].
pub fn stokes_check<T: Scalar>(
    curve: &ClosedCurve<T>,
    y: Point2<T>,
    t_y: UnitVector2<T>,
    refinement: usize,
) -> Result<(T, T)> {
    let distance = curve.distance_to(y);
    if distance > curve.on_boundary_tolerance() {
        return Err(Error::NotOnCurve(f(distance)));
    }
    let two = lit::<T>(2.0);
    let t = t_y.get();
    let lhs = graded_line_integral(curve, y, refinement, lit(STOKES_GRADING), |x, tangent, w| {
        let e = tangent.get();
        let value = match mayer_vector(y, t_y, x) {
            Ok(v) => v.get().dot(e),
            // On the sub-edge through y the field is constant: x - y is parallel to e.
            Err(Error::CoincidentPoints(_)) => two * e.dot(t) * e.dot(e) - t.dot(e),
            Err(other) => return Err(other),
        };
        Ok(value * w)
    })?;
    let rhs = curl_area_integral(curve, y, t_y)?;
    Ok((lhs, rhs))
}

/// Options for [`verify_isoperimetric_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub refinement: usize,
    /// Run the quadratic self-intersection test first.
    pub check_simple: bool,
}

/// Planar report: perimeter, area, double integral and the two gaps.
/// Requires a simple, positively oriented curve.
pub fn verify_isoperimetric<T: Scalar>(curve: &ClosedCurve<T>, refinement: usize) -> Result<IsoperimetricReport<T>> {
    verify_isoperimetric_with(
        curve,
        VerifyOptions {
            refinement,
            check_simple: true,
        },
    )
}

pub fn verify_isoperimetric_with<T: Scalar>(
    curve: &ClosedCurve<T>,
    options: VerifyOptions,
) -> Result<IsoperimetricReport<T>> {
    if curve.orientation() == Orientation::Negative {
        return Err(Error::NegativeOrientation(f(curve.signed_area())));
    }
    if options.check_simple {
        curve.ensure_simple()?;
    }
    let double_integral = double_boundary_integral(curve, options.refinement)?;
    Ok(IsoperimetricReport::assemble(
        SpaceTag::Euclidean,
        curve.perimeter(),
        curve.signed_area(),
        double_integral,
        curve.len() * options.refinement,
    ))
}

/// Refinement giving at least `min_nodes` boundary nodes.
pub fn refinement_for_nodes(edges: usize, min_nodes: usize) -> usize {
    min_nodes.div_ceil(edges.max(1)).max(1)
}
