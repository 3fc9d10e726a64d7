//! One-dimensional Lagrangians, fields of extremals and the null
//! Lagrangians they induce.
//!
//! A foliation `u(s, t)` of a region of the `(t, q)` plane by extremals of
//! `L` gives a slope field `psi(t, q)`. The Lagrangian
//! `Lambda = p_hat(t, q, psi) qdot - E(t, q, psi)` then has path-independent
//! action, agrees with `L` along the leaves and lies below `L` everywhere
//! when `L` is convex in `qdot`.

mod family;
mod field;
mod lagrangian;
mod path;
mod registry;

pub use family::{leaf, FnFamily, LeafPath, ShootingFamily, SolutionFamily, SHOOTING_STEPS};
pub use field::{
    action, foliation_parameter, hamilton_residuals, hamiltonian, hamiltonian_partials_defect,
    lagrangian_submanifold_check, legendre_inverse, legendre_roundtrip_defect, mayer_slope,
    minimality_gap, null_lagrangian, path_independence_check, weierstrass_gap, NullLagrangianField,
    ACTION_PANELS, BRACKET_LIMIT, ENDPOINT_TOL, LEGENDRE_TOL, MONOTONE_SAMPLES, SLOPE_TOL,
};
pub use lagrangian::{Lagrangian, Lagrangian1D, DERIVATIVE_STEP};
pub use path::{el_residual, solve_el, Extremal, FnPath, Path, BLOWUP_GUARD, LEGENDRE_FLOOR};
pub use registry::{problem, Problem, PROBLEMS};
