use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use isocal::mayer::{problem, SolutionFamily, PROBLEMS};
use isocal::{load_curve, mayer_vector, refinement_for_nodes, Check, LoadedCurve, Point, Unit};

use crate::config::RunConfig;
use crate::error::{input, numeric, CliError};
use crate::report::{content_hash, Report};

pub const TOLERANCES: &[(&str, f64)] = &[("circle_tangency", 1e-10), ("unit_norm", 1e-12)];

pub const DEFAULT_GRID: usize = 21;
/// Half-width of the square sampled for the field.
pub const FIELD_EXTENT: f64 = 2.0;
/// Points per circle in `circles.csv`.
pub const CIRCLE_POINTS: usize = 64;
/// Time samples per leaf in `leaves.csv`.
pub const LEAF_POINTS: usize = 101;

type Rows = Vec<Vec<f64>>;

fn write_csv(dir: &Path, name: &str, header: &[&str], rows: &Rows) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    let csv_err = |e: csv::Error| CliError::Io {
        path: path.display().to_string(),
        source: e.into(),
    };
    let mut w = csv::Writer::from_path(&path).map_err(csv_err)?;
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row.iter().map(|v| v.to_string())).map_err(csv_err)?;
    }
    w.flush().map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

/// `V(y, t_y, .)` on a grid around `y = 0`, `t_y = e1`; the centre is skipped.
fn field_rows(grid: usize) -> Result<(Rows, f64), CliError> {
    let (y, t) = (Point::new(0.0, 0.0), Unit::e1());
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for i in 0..grid {
        for j in 0..grid {
            let x = Point::new(
                -FIELD_EXTENT + 2.0 * FIELD_EXTENT * i as f64 / (grid - 1) as f64,
                -FIELD_EXTENT + 2.0 * FIELD_EXTENT * j as f64 / (grid - 1) as f64,
            );
            if x.norm() < 1e-12 {
                continue;
            }
            let v = mayer_vector(y, t, x).map_err(numeric)?.get();
            worst = worst.max((v.norm() - 1.0).abs());
            rows.push(vec![x.x1, x.x2, v.x1, v.x2]);
        }
    }
    Ok((rows, worst))
}

/// Circles through `y = 0` tangent to `e1`, curvatures `+-2 (k + 1) / grid`,
/// with the field sampled on them.
fn circle_rows(grid: usize) -> Result<(Rows, f64), CliError> {
    let (y, t) = (Point::new(0.0, 0.0), Unit::e1());
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    let mut id = 0.0;
    for k in 0..grid {
        for sign in [1.0, -1.0] {
            let kappa = sign * 2.0 * (k + 1) as f64 / grid as f64;
            for m in 0..CIRCLE_POINTS {
                let theta = 2.0 * PI * (m as f64 + 0.5) / CIRCLE_POINTS as f64;
                let x = Point::new(theta.sin(), 1.0 - theta.cos()) * (1.0 / kappa);
                let tangent = Point::new(theta.cos(), theta.sin());
                let v = mayer_vector(y, t, x).map_err(numeric)?.get();
                worst = worst.max((v - tangent).norm());
                rows.push(vec![id, kappa, x.x1, x.x2, v.x1, v.x2]);
            }
            id += 1.0;
        }
    }
    Ok((rows, worst))
}

/// Leaves `u(s, .)` for `grid` parameters; also the smallest increment of
/// `u` in `s` at fixed time.
fn leaf_rows(name: &str, grid: usize) -> Result<(Rows, f64), CliError> {
    let p = problem::<f64>(name).ok_or_else(|| {
        CliError::Usage(format!("unknown problem '{name}'; expected one of {}", PROBLEMS.join(", ")))
    })?;
    let family = &p.family;
    let (sa, sb) = family.parameters();
    let (ta, tb) = family.times();
    let mut rows = Vec::new();
    let mut previous: Option<Vec<f64>> = None;
    let mut smallest = f64::INFINITY;
    for i in 0..grid {
        let s = sa + (sb - sa) * (i as f64 + 0.5) / grid as f64;
        let mut values = Vec::with_capacity(LEAF_POINTS);
        for k in 0..LEAF_POINTS {
            let t = ta + (tb - ta) * k as f64 / (LEAF_POINTS - 1) as f64;
            let q = family.leaf(s, t).map_err(numeric)?;
            let qd = family.leaf_velocity(s, t).map_err(numeric)?;
            rows.push(vec![i as f64, s, t, q, qd]);
            values.push(q);
        }
        if let Some(prev) = &previous {
            // Endpoint times may be degenerate leaves of the foliation.
            for k in 1..LEAF_POINTS - 1 {
                smallest = smallest.min(values[k] - prev[k]);
            }
        }
        previous = Some(values);
    }
    Ok((rows, smallest))
}

fn curve_rows(curve: &LoadedCurve, refinement: Option<usize>) -> Result<(Vec<&'static str>, Rows), CliError> {
    Ok(match curve {
        LoadedCurve::Euclidean(c) => {
            let r = refinement.unwrap_or_else(|| refinement_for_nodes(c.len(), 512));
            let rows = c
                .boundary_nodes(r)
                .map_err(input)?
                .iter()
                .map(|n| vec![n.point.x1, n.point.x2, n.tangent.u1(), n.tangent.u2(), n.weight])
                .collect();
            (vec!["x1", "x2", "t1", "t2", "weight"], rows)
        }
        LoadedCurve::Sphere(c) => {
            let r = refinement.unwrap_or_else(|| refinement_for_nodes(c.len(), 512));
            let nodes = c.boundary_nodes(r).map_err(input)?;
            (vec!["x1", "x2", "x3", "t1", "t2", "t3", "weight"], nodes_3d(nodes.iter().map(|n| (n.point, n.tangent, n.weight))))
        }
        LoadedCurve::Hyperbolic(c) => {
            let r = refinement.unwrap_or_else(|| refinement_for_nodes(c.len(), 512));
            let nodes = c.boundary_nodes(r).map_err(input)?;
            (vec!["x1", "x2", "x3", "t1", "t2", "t3", "weight"], nodes_3d(nodes.iter().map(|n| (n.point, n.tangent, n.weight))))
        }
    })
}

fn nodes_3d(nodes: impl Iterator<Item = (isocal::Vec3, isocal::Vec3, f64)>) -> Rows {
    nodes
        .map(|(p, t, w)| vec![p.x1, p.x2, p.x3, t.x1, t.x2, t.x3, w])
        .collect()
}

pub fn run(config: &RunConfig, file: Option<&Path>, report: &mut Report) -> Result<(), CliError> {
    let grid = config.grid.unwrap_or(DEFAULT_GRID);
    let name = config.problem.as_deref().unwrap_or("oscillator");
    let curve = match file {
        Some(path) => {
            let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
            let text = std::str::from_utf8(&bytes)
                .map_err(|_| CliError::Input(format!("{}: curve file is not UTF-8", path.display())))?;
            report.input_hash = Some(content_hash(&bytes));
            Some(load_curve(text).map_err(input)?)
        }
        None => None,
    };
    // Everything is computed before any file is written.
    let (field, unit) = field_rows(grid)?;
    let (circles, tangency) = circle_rows(grid)?;
    let (leaves, increment) = leaf_rows(name, grid)?;
    let boundary = curve.as_ref().map(|c| curve_rows(c, config.refinement)).transpose()?;

    let dir = config.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let mut written = vec![
        write_csv(&dir, "vfield.csv", &["x1", "x2", "v1", "v2"], &field)?,
        write_csv(&dir, "circles.csv", &["circle", "curvature", "x1", "x2", "v1", "v2"], &circles)?,
        write_csv(&dir, "leaves.csv", &["leaf", "s", "t", "q", "qdot"], &leaves)?,
    ];
    if let Some((header, rows)) = &boundary {
        written.push(write_csv(&dir, "boundary.csv", header, rows)?);
    }

    report.result("grid", grid);
    report.result("problem", name);
    report.result("vfield_rows", field.len());
    report.result("circle_rows", circles.len());
    report.result("leaf_rows", leaves.len());
    if let Some((_, rows)) = &boundary {
        report.result("boundary_rows", rows.len());
    }
    report.result(
        "files",
        written.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
    );
    report.check(Check::at_most("unit_norm", unit, config.tolerance("unit_norm")));
    report.check(Check::at_most("circle_tangency", tangency, config.tolerance("circle_tangency")));
    report.check(Check::at_least("leaves_monotone", increment, f64::MIN_POSITIVE));
    Ok(())
}
