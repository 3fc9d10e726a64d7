use crate::scalar::{lit, Scalar};

use super::family::{leaf, FnFamily, LeafPath};
use super::lagrangian::Lagrangian1D;

/// Names accepted by [`problem`].
pub const PROBLEMS: [&str; 3] = ["free", "oscillator", "cosh"];

/// A Lagrangian together with a foliation by its extremals.
pub struct Problem<T> {
    pub name: &'static str,
    pub description: &'static str,
    pub lagrangian: Lagrangian1D<T>,
    pub family: FnFamily<T>,
}

impl<T: Scalar> Problem<T> {
    /// The distinguished extremal `f_o`.
    pub fn base_path(&self) -> LeafPath<'_, T, FnFamily<T>> {
        use super::family::SolutionFamily;
        leaf(&self.family, self.family.base())
    }
}

/// Built-in problem by name.
pub fn problem<T: Scalar>(name: &str) -> Option<Problem<T>> {
    match name {
        "free" => Some(Problem {
            name: "free",
            description: "L = qdot^2 / 2, leaves u = s + t / 2",
            lagrangian: Lagrangian1D::free_particle(),
            family: FnFamily::free(lit(0.5)),
        }),
        "oscillator" => Some(Problem {
            name: "oscillator",
            description: "L = (qdot^2 - q^2) / 2, leaves u = s sin t on (0.5, 2.5)",
            lagrangian: Lagrangian1D::harmonic_oscillator(),
            family: FnFamily::oscillator(),
        }),
        "cosh" => {
            let two = lit::<T>(2.0);
            let family = FnFamily::new(|s, t| s * (t + T::one()), (-two, two), (T::zero(), two), lit(0.5))
                .with_velocity(|s, _| s);
            Some(Problem {
                name: "cosh",
                description: "L = cosh(qdot), leaves u = s (t + 1) on (0, 2)",
                lagrangian: Lagrangian1D::cosh(),
                family,
            })
        }
        _ => None,
    }
}
