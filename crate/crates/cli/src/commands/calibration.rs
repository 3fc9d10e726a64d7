use std::f64::consts::PI;

use isocal::{
    biform2, biform3, biform3_apply, biform_apply, d1d2_closed_form_r3, d1d2_fd_r2, d1d2_fd_r3, lift_to_hyperboloid,
    mayer_vector, minkowski_biform_apply, Check, Point, Unit, Vec3,
};
use rand::Rng;

use super::rng;
use crate::config::{RunConfig, SpaceArg};
use crate::error::{numeric, CliError};
use crate::report::Report;

pub const TOLERANCES: &[(&str, f64)] = &[
    ("circle_equality", 1e-12),
    ("minkowski_bound", 1e-12),
    ("mixed_derivative", 1e-4),
    ("orthogonality", 1e-12),
    ("unit_norm", 1e-12),
];

pub const DEFAULT_SAMPLES: usize = 10_000;

/// Pairs closer than this are skipped.
const MIN_SEPARATION: f64 = 1e-3;
/// Smallest separation of the pairs used for mixed derivatives.
const DERIVATIVE_SEPARATION: f64 = 0.5;
/// Finite-difference step relative to the separation.
const RELATIVE_STEP: f64 = 1e-3;

pub fn run(config: &RunConfig, report: &mut Report) -> Result<(), CliError> {
    let samples = config.samples.unwrap_or(DEFAULT_SAMPLES);
    let space = config.space.unwrap_or(SpaceArg::Euclidean);
    let mut rng = rng(config.seed);
    report.result("space", space.name());
    report.result("samples", samples);
    report.result("seed", config.seed);
    let circles = (samples / 100).max(1);
    match space {
        SpaceArg::Euclidean => planar(config, report, &mut rng, samples, circles),
        SpaceArg::R3 => spatial(config, report, &mut rng, samples, circles),
        SpaceArg::Hyperbolic => hyperbolic(config, report, &mut rng, samples, circles),
        SpaceArg::Sphere => Err(CliError::Usage(
            "calibration runs on euclidean (r2), r3 or hyperbolic".into(),
        )),
    }
}

fn planar_point<R: Rng>(rng: &mut R) -> Point {
    Point::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0))
}

fn spatial_point<R: Rng>(rng: &mut R, half: f64) -> Vec3 {
    Vec3::new(rng.gen_range(-half..half), rng.gen_range(-half..half), rng.gen_range(-half..half))
}

fn unit3<R: Rng>(rng: &mut R) -> Vec3 {
    loop {
        let v = spatial_point(rng, 1.0);
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v * (1.0 / n);
        }
    }
}

/// Two angles at least 0.1 apart on the circle.
fn angle_pair<R: Rng>(rng: &mut R) -> (f64, f64) {
    loop {
        let (a, b) = (rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..2.0 * PI));
        let gap = (a - b).rem_euclid(2.0 * PI);
        if gap > 0.1 && gap < 2.0 * PI - 0.1 {
            return (a, b);
        }
    }
}

fn planar<R: Rng>(
    config: &RunConfig,
    report: &mut Report,
    rng: &mut R,
    samples: usize,
    circles: usize,
) -> Result<(), CliError> {
    let (mut unit, mut orth, mut skipped) = (0.0f64, 0.0f64, 0usize);
    for _ in 0..samples {
        let (x, y) = (planar_point(rng), planar_point(rng));
        let t = Unit::from_angle(rng.gen_range(0.0..2.0 * PI));
        if (x - y).norm() < MIN_SEPARATION {
            skipped += 1;
            continue;
        }
        let v = mayer_vector(y, t, x).map_err(numeric)?;
        unit = unit.max((v.get().norm() - 1.0).abs());
        orth = orth.max(biform2(x, y).map_err(numeric)?.orthogonality_defect());
    }
    let mut equality = 0.0f64;
    for _ in 0..circles {
        let c = Point::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let r = rng.gen_range(0.2..4.0);
        let (a, b) = angle_pair(rng);
        let on = |s: f64| c + Point::new(s.cos(), s.sin()) * r;
        let tangent = |s: f64| Point::new(-s.sin(), s.cos());
        let value = biform_apply(on(a), on(b), tangent(a), tangent(b)).map_err(numeric)?;
        equality = equality.max((value - 1.0).abs());
    }
    let mut mixed = 0.0f64;
    for _ in 0..circles {
        let (x, y) = loop {
            let (x, y) = (planar_point(rng), planar_point(rng));
            if (x - y).norm() > DERIVATIVE_SEPARATION {
                break (x, y);
            }
        };
        let z = (x - y).norm();
        // The coefficient scales like |z|^-2; normalize it away.
        let v = d1d2_fd_r2(x, y, RELATIVE_STEP * z).map_err(numeric)?;
        mixed = mixed.max(v.abs() * z * z);
    }
    report.result("skipped_pairs", skipped);
    report.result("circles", circles);
    report.result("max_unit_norm_defect", unit);
    report.result("max_orthogonality_defect", orth);
    report.result("max_circle_equality_defect", equality);
    report.result("max_offdiagonal_d1d2", mixed);
    report.check(Check::at_most("unit_norm", unit, config.tolerance("unit_norm")));
    report.check(Check::at_most("orthogonality", orth, config.tolerance("orthogonality")));
    report.check(Check::at_most("circle_equality", equality, config.tolerance("circle_equality")));
    report.check(Check::at_most("mixed_derivative", mixed, config.tolerance("mixed_derivative")));
    Ok(())
}

fn spatial<R: Rng>(
    config: &RunConfig,
    report: &mut Report,
    rng: &mut R,
    samples: usize,
    circles: usize,
) -> Result<(), CliError> {
    let (mut unit, mut orth, mut skipped) = (0.0f64, 0.0f64, 0usize);
    for _ in 0..samples {
        let (x, y) = (spatial_point(rng, 5.0), spatial_point(rng, 5.0));
        let t = unit3(rng);
        if (x - y).norm() < MIN_SEPARATION {
            skipped += 1;
            continue;
        }
        let m = biform3(x, y).map_err(numeric)?;
        // The field at x is the image of t under the reflection.
        let v = Vec3::new(
            m.m[0][0] * t.x1 + m.m[0][1] * t.x2 + m.m[0][2] * t.x3,
            m.m[1][0] * t.x1 + m.m[1][1] * t.x2 + m.m[1][2] * t.x3,
            m.m[2][0] * t.x1 + m.m[2][1] * t.x2 + m.m[2][2] * t.x3,
        );
        unit = unit.max((v.norm() - 1.0).abs());
        orth = orth.max(m.orthogonality_defect());
    }
    let mut equality = 0.0f64;
    for _ in 0..circles {
        let c = spatial_point(rng, 3.0);
        let r = rng.gen_range(0.2..4.0);
        let e1 = unit3(rng);
        let e2 = {
            let w = unit3(rng);
            let w = w - e1 * w.dot(e1);
            w * (1.0 / w.norm())
        };
        let (a, b) = angle_pair(rng);
        let on = |s: f64| c + (e1 * s.cos() + e2 * s.sin()) * r;
        let tangent = |s: f64| e2 * s.cos() - e1 * s.sin();
        let value = biform3_apply(on(a), on(b), tangent(a), tangent(b)).map_err(numeric)?;
        equality = equality.max((value - 1.0).abs());
    }
    let mut mixed = 0.0f64;
    for _ in 0..circles {
        let (x, y) = loop {
            let (x, y) = (spatial_point(rng, 5.0), spatial_point(rng, 5.0));
            if (x - y).norm() > DERIVATIVE_SEPARATION {
                break (x, y);
            }
        };
        let z = (x - y).norm();
        let fd = d1d2_fd_r3(x, y, RELATIVE_STEP * z).map_err(numeric)?;
        let closed = d1d2_closed_form_r3(x, y).map_err(numeric)?;
        let scale = closed.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        let err = (0..3)
            .flat_map(|a| (0..3).map(move |b| (a, b)))
            .map(|(a, b)| (fd[a][b] - closed[a][b]).abs())
            .fold(0.0f64, f64::max);
        mixed = mixed.max(err / scale);
    }
    report.result("skipped_pairs", skipped);
    report.result("circles", circles);
    report.result("max_unit_norm_defect", unit);
    report.result("max_orthogonality_defect", orth);
    report.result("max_circle_equality_defect", equality);
    report.result("max_closed_form_relative_error", mixed);
    report.check(Check::at_most("unit_norm", unit, config.tolerance("unit_norm")));
    report.check(Check::at_most("orthogonality", orth, config.tolerance("orthogonality")));
    report.check(Check::at_most("circle_equality", equality, config.tolerance("circle_equality")));
    report.check(Check::at_most("mixed_derivative", mixed, config.tolerance("mixed_derivative")));
    Ok(())
}

/// Unit tangent at a hyperboloid point `p`, in the Minkowski metric.
fn hyperbolic_tangent<R: Rng>(rng: &mut R, p: Vec3) -> Vec3 {
    loop {
        let w = spatial_point(rng, 1.0);
        let v = w + p * w.minkowski_dot(p);
        let n2 = v.minkowski_dot(v);
        if n2 > 1e-6 {
            return v * (1.0 / n2.sqrt());
        }
    }
}

/// Rotation about the `x3` axis followed by a boost in the `x1, x3` plane.
fn isometry(v: Vec3, turn: f64, rapidity: f64) -> Vec3 {
    let (s, c) = turn.sin_cos();
    let v = Vec3::new(c * v.x1 - s * v.x2, s * v.x1 + c * v.x2, v.x3);
    let (sh, ch) = (rapidity.sinh(), rapidity.cosh());
    Vec3::new(ch * v.x1 + sh * v.x3, v.x2, sh * v.x1 + ch * v.x3)
}

fn hyperbolic<R: Rng>(
    config: &RunConfig,
    report: &mut Report,
    rng: &mut R,
    samples: usize,
    circles: usize,
) -> Result<(), CliError> {
    let (mut largest, mut skipped) = (0.0f64, 0usize);
    for _ in 0..samples {
        let x = lift_to_hyperboloid(Point::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)));
        let y = lift_to_hyperboloid(Point::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)));
        if (x - y).norm() < MIN_SEPARATION {
            skipped += 1;
            continue;
        }
        let (u, v) = (hyperbolic_tangent(rng, x), hyperbolic_tangent(rng, y));
        largest = largest.max(minkowski_biform_apply(x, y, u, v).map_err(numeric)?.abs());
    }
    let mut equality = 0.0f64;
    for _ in 0..circles {
        let r: f64 = rng.gen_range(0.1..2.0);
        let (turn, rapidity) = (rng.gen_range(0.0..2.0 * PI), rng.gen_range(-1.0..1.0));
        let (a, b) = angle_pair(rng);
        let on = |s: f64| isometry(Vec3::new(r.sinh() * s.cos(), r.sinh() * s.sin(), r.cosh()), turn, rapidity);
        let tangent = |s: f64| isometry(Vec3::new(-s.sin(), s.cos(), 0.0), turn, rapidity);
        let value = minkowski_biform_apply(on(a), on(b), tangent(a), tangent(b)).map_err(numeric)?;
        equality = equality.max((value - 1.0).abs());
    }
    report.result("skipped_pairs", skipped);
    report.result("circles", circles);
    report.result("max_abs_minkowski_biform", largest);
    report.result("max_circle_equality_defect", equality);
    report.check(Check::at_most("minkowski_bound", largest - 1.0, config.tolerance("minkowski_bound")));
    report.check(Check::at_most("circle_equality", equality, config.tolerance("circle_equality")));
    report.notes.push("the bound |alpha_M| <= 1 on the hyperbolic plane is checked by sampling only".into());
    Ok(())
}
