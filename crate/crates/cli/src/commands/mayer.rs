use std::f64::consts::PI;

use isocal::mayer::{
    lagrangian_submanifold_check, minimality_gap, null_lagrangian, path_independence_check, problem, FnFamily,
    Lagrangian, Path, SolutionFamily, PROBLEMS,
};
use isocal::Check;
use rand::Rng;

use super::rng;
use crate::config::RunConfig;
use crate::error::{numeric, CliError};
use crate::report::Report;

pub const TOLERANCES: &[(&str, f64)] = &[
    ("closed_form", 1e-8),
    ("dominance", 1e-10),
    ("equality", 1e-8),
    ("minimality", 1e-8),
    ("path_independence", 1e-6),
    ("submanifold", 1e-5),
];

pub const DEFAULT_PROBLEM: &str = "oscillator";
pub const DEFAULT_SAMPLES: usize = 10_000;
pub const PATH_PAIRS: usize = 20;
pub const SUBMANIFOLD_SAMPLES: usize = 100;
pub const PERTURBATIONS: usize = 100;
/// Step of the differences in the pull-back check.
pub const SUBMANIFOLD_STEP: f64 = 1e-4;
const EQUALITY_POINTS: usize = 100;
/// Sine modes in random paths.
const MODES: usize = 3;

/// `Lambda` in closed form for the built-in problems.
fn reference_lambda(name: &str) -> Option<fn(f64, f64, f64) -> f64> {
    match name {
        // Leaves s + t / 2: Lambda = c qdot - c^2 / 2 with c = 1/2.
        "free" => Some(|_, _, qd| 0.5 * qd - 0.125),
        "oscillator" => Some(|t, q, qd| q * qd / t.tan() - q * q / (2.0 * t.sin().powi(2))),
        "cosh" => Some(|t, q, qd| {
            let psi = q / (t + 1.0);
            psi.sinh() * qd - (psi * psi.sinh() - psi.cosh())
        }),
        _ => None,
    }
}

/// The path `t -> u(s(t), t)` for a profile `t -> (s, ds/dt)`.
struct SweepPath<'a, P> {
    family: &'a FnFamily<f64>,
    interval: (f64, f64),
    profile: P,
}

impl<P: Fn(f64) -> (f64, f64) + Sync> Path<f64> for SweepPath<'_, P> {
    fn interval(&self) -> (f64, f64) {
        self.interval
    }

    fn eval(&self, t: f64) -> isocal::Result<(f64, f64)> {
        let (s, ds) = (self.profile)(t);
        let q = self.family.leaf(s, t)?;
        let qdot = self.family.leaf_spread(s, t)? * ds + self.family.leaf_velocity(s, t)?;
        Ok((q, qdot))
    }
}

/// `s(t) = sa + (sb - sa) x + sum_k c_k sin(k pi x)`, `x = (t - ta) / (tb - ta)`.
fn profile(ta: f64, tb: f64, sa: f64, sb: f64, modes: Vec<f64>) -> impl Fn(f64) -> (f64, f64) + Sync {
    let len = tb - ta;
    move |t| {
        let x = (t - ta) / len;
        let mut s = sa + (sb - sa) * x;
        let mut ds = (sb - sa) / len;
        for (k, c) in modes.iter().enumerate() {
            let w = (k + 1) as f64 * PI;
            s += c * (w * x).sin();
            ds += c * w / len * (w * x).cos();
        }
        (s, ds)
    }
}

fn shrink((a, b): (f64, f64), fraction: f64) -> (f64, f64) {
    let m = (b - a) * fraction;
    (a + m, b - m)
}

pub fn run(config: &RunConfig, report: &mut Report) -> Result<(), CliError> {
    let name = config.problem.as_deref().unwrap_or(DEFAULT_PROBLEM);
    let p = problem::<f64>(name).ok_or_else(|| {
        CliError::Usage(format!("unknown problem '{name}'; expected one of {}", PROBLEMS.join(", ")))
    })?;
    let samples = config.samples.unwrap_or(DEFAULT_SAMPLES);
    let (l, family) = (&p.lagrangian, &p.family);
    let field = null_lagrangian(l, family).map_err(numeric)?;
    let times = family.times();
    let params = family.parameters();
    let width = params.1 - params.0;
    let base = family.base();
    let mut rng = rng(config.seed);

    let (ti, si) = (shrink(times, 0.02), shrink(params, 0.02));
    let reference = reference_lambda(name);
    let (mut dominance, mut closed_form) = (f64::INFINITY, 0.0f64);
    for _ in 0..samples {
        let t = rng.gen_range(ti.0..ti.1);
        let s = rng.gen_range(si.0..si.1);
        let q = family.leaf(s, t).map_err(numeric)?;
        let qd = family.leaf_velocity(s, t).map_err(numeric)? + rng.gen_range(-5.0..5.0);
        let lambda = field.lambda(t, q, qd).map_err(numeric)?;
        dominance = dominance.min(l.value(t, q, qd) - lambda);
        if let Some(f) = reference {
            closed_form = closed_form.max((lambda - f(t, q, qd)).abs());
        }
    }

    let f_o = p.base_path();
    let mut equality = 0.0f64;
    for k in 0..=EQUALITY_POINTS {
        let t = ti.0 + (ti.1 - ti.0) * k as f64 / EQUALITY_POINTS as f64;
        let (q, qd) = f_o.eval(t).map_err(numeric)?;
        equality = equality.max((l.value(t, q, qd) - field.lambda(t, q, qd).map_err(numeric)?).abs());
    }

    // Endpoints in the middle 60% of the parameters, modes up to 5% of the
    // width each, so paths stay well inside the foliated region.
    let inner = shrink(params, 0.2);
    let amplitude = 0.05 * width;
    let mut independence = 0.0f64;
    for _ in 0..PATH_PAIRS {
        let (sa, sb) = (rng.gen_range(inner.0..inner.1), rng.gen_range(inner.0..inner.1));
        let mut modes = || (0..MODES).map(|_| rng.gen_range(-amplitude..amplitude)).collect::<Vec<_>>();
        let (m1, m2) = (modes(), modes());
        let f1 = SweepPath { family, interval: times, profile: profile(times.0, times.1, sa, sb, m1) };
        let f2 = SweepPath { family, interval: times, profile: profile(times.0, times.1, sa, sb, m2) };
        let (i1, i2) = path_independence_check(&field, &f1, &f2).map_err(numeric)?;
        independence = independence.max((i1 - i2).abs());
    }

    let mut submanifold = 0.0f64;
    let tt = shrink(times, 0.05);
    for _ in 0..SUBMANIFOLD_SAMPLES {
        let (s, t) = (rng.gen_range(si.0..si.1), rng.gen_range(tt.0..tt.1));
        let c = lagrangian_submanifold_check(l, family, s, t, SUBMANIFOLD_STEP).map_err(numeric)?;
        submanifold = submanifold.max(c.abs());
    }

    let base_sweep = SweepPath { family, interval: times, profile: move |_| (base, 0.0) };
    let mut minimality = f64::INFINITY;
    for _ in 0..PERTURBATIONS {
        let modes = (0..MODES).map(|_| rng.gen_range(-amplitude..amplitude)).collect();
        let competitor = SweepPath {
            family,
            interval: times,
            profile: profile(times.0, times.1, base, base, modes),
        };
        minimality = minimality.min(minimality_gap(l, family, &competitor, &base_sweep).map_err(numeric)?);
    }

    report.result("problem", p.name);
    report.result("description", p.description);
    report.result("samples", samples);
    report.result("seed", config.seed);
    report.result("min_weierstrass_gap", dominance);
    report.result("max_gap_on_base", equality);
    report.result("max_path_independence_defect", independence);
    report.result("max_pullback_coefficient", submanifold);
    report.result("min_minimality_gap", minimality);
    report.check(Check::at_least("dominance", dominance, -config.tolerance("dominance")));
    report.check(Check::at_most("equality", equality, config.tolerance("equality")));
    report.check(Check::at_most(
        "path_independence",
        independence,
        config.tolerance("path_independence"),
    ));
    report.check(Check::at_most("submanifold", submanifold, config.tolerance("submanifold")));
    report.check(Check::at_least("minimality", minimality, -config.tolerance("minimality")));
    if reference.is_some() {
        report.result("max_closed_form_defect", closed_form);
        report.check(Check::at_most("closed_form", closed_form, config.tolerance("closed_form")));
    }
    Ok(())
}
