use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),
    #[error("curve is self-intersecting: edges {0} and {1} cross")]
    SelfIntersecting(usize, usize),
    #[error("curve is negatively oriented (signed area {0}); reverse it before verification")]
    NegativeOrientation(f64),
    #[error("point lies on the curve (distance {distance:e} <= tolerance {tolerance:e})")]
    PointOnBoundary { distance: f64, tolerance: f64 },
    #[error("point is not on the curve (distance {0:e})")]
    NotOnCurve(f64),
    #[error("coincident points: |x - y| = {0:e}")]
    CoincidentPoints(f64),
    #[error("finite-difference step {step:e} too large for separation {separation:e}")]
    StepTooLarge { step: f64, separation: f64 },
    #[error("vertex {index} is off the {manifold} (defect {defect:e})")]
    OffManifold {
        manifold: &'static str,
        index: usize,
        defect: f64,
    },
    #[error("consecutive vertices {0} and {1} are antipodal or coincident")]
    AntipodalVertices(usize, usize),
    #[error("degenerate Legendre coefficient d2L/dqdot2 = {0:e}")]
    DegenerateLegendre(f64),
    #[error("no bracket for the Legendre inverse of p = {0} within |qdot| <= {1:e}")]
    NoBracket(f64, f64),
    #[error("solution blew up at t = {0}")]
    BlowUp(f64),
    #[error("(t, q) = ({0}, {1}) lies outside the foliated region")]
    OutsideFoliation(f64, f64),
    #[error("foliation is not monotone in s at t = {0}")]
    NotMonotone(f64),
    #[error("t = {0} lies outside the domain ({1}, {2})")]
    OutsideDomain(f64, f64, f64),
    #[error("path endpoints differ: {0}")]
    EndpointMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Lossy conversion of a scalar for error payloads.
pub(crate) fn f<T: num_traits::ToPrimitive>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
