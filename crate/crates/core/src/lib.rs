//! Numerical checks of the calibration argument for the isoperimetric
//! inequality in the plane, on the sphere and on the hyperbolic plane, and of
//! null Lagrangians built from fields of extremals.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases at the
//! crate root fix the scalar to `f64`.
//!
//! ```
//! use isocal::{verify_isoperimetric, Curve};
//!
//! let circle = Curve::regular_polygon(1024, 1.0).unwrap();
//! let report = verify_isoperimetric(&circle, 1).unwrap();
//! assert!(report.deficit.abs() < 1e-3);
//! ```

// `!(a > b)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod biform;
pub mod checks;
pub mod curve_file;
pub mod curves;
pub mod error;
mod gauss;
pub mod mayer;
pub mod point;
pub mod quadrature;
pub mod scalar;
pub mod spaces;

pub use biform::{
    averaged_field, biform2, biform3, biform3_apply, biform_apply, curl_density, d1d2_closed_form_r3, d1d2_fd,
    d1d2_fd_r2, d1d2_fd_r3, mayer_vector, tangent_circle, BiformValue2, BiformValue3, MixedDerivativeTensor,
    Space,
};
pub use checks::{all_passed, Bound, Check};
pub use curve_file::{load_curve, CurveFile, CurveSpace, LoadedCurve};
pub use curves::{BoundaryNode, ClosedCurve, Orientation};
pub use error::{Error, Result};
pub use point::{det3, Point2, Point3, UnitVector2};
pub use quadrature::{
    curl_area_integral, double_boundary_integral, line_integral, refinement_for_nodes, stokes_check,
    verify_isoperimetric, verify_isoperimetric_with, winding_integral, IsoperimetricReport, SpaceTag, Tolerances,
    VerifyOptions,
};
pub use scalar::Scalar;
pub use spaces::{
    geodesic_cap, hyperbolic_area, hyperbolic_circle, hyperbolic_double_integral, hyperbolic_perimeter,
    lift_to_hyperboloid, minkowski_biform_apply, sphere_area, sphere_double_integral, sphere_perimeter,
    verify_hyperbolic_isoperimetric, verify_sphere_isoperimetric, HyperbolicCurve, SphericalCurve,
};

pub type Real = f64;
pub type Point = Point2<Real>;
pub type Unit = UnitVector2<Real>;
pub type Vec3 = Point3<Real>;
pub type Curve = ClosedCurve<Real>;
pub type SphereCurve = SphericalCurve<Real>;
pub type HyperCurve = HyperbolicCurve<Real>;
pub type Report = IsoperimetricReport<Real>;
