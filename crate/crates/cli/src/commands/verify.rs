use std::path::Path;

use isocal::{
    refinement_for_nodes, verify_hyperbolic_isoperimetric, verify_isoperimetric_with,
    verify_sphere_isoperimetric, CurveFile, CurveSpace, LoadedCurve, Report as CoreReport, Tolerances,
    VerifyOptions,
};
use serde_json::Value;

use crate::config::{RunConfig, SpaceArg};
use crate::error::{input, CliError};
use crate::report::{content_hash, Report};

pub const TOLERANCES: &[(&str, f64)] = &[("identity", 1e-3), ("inequality", 1e-8)];

/// Boundary nodes the default refinement aims for.
pub const MIN_NODES: usize = 512;

pub fn run(config: &RunConfig, file: &Path, check_simple: bool, report: &mut Report) -> Result<(), CliError> {
    let bytes = std::fs::read(file).map_err(|e| CliError::io(file, e))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|_| CliError::Input(format!("{}: curve file is not UTF-8", file.display())))?;
    let mut curve_file = CurveFile::parse(text).map_err(input)?;
    if let Some(space) = config.space {
        let target = match space {
            SpaceArg::Euclidean => CurveSpace::Euclidean,
            SpaceArg::Sphere => CurveSpace::Sphere,
            SpaceArg::Hyperbolic => CurveSpace::Hyperbolic,
            SpaceArg::R3 => return Err(CliError::Usage("verify supports euclidean, sphere and hyperbolic".into())),
        };
        let declared = serde_json::from_str::<Value>(text)
            .ok()
            .and_then(|v| v.get("space").cloned())
            .is_some();
        if declared && curve_file.space != target {
            return Err(CliError::Usage(format!(
                "--space {} conflicts with the space declared in {}",
                space.name(),
                file.display()
            )));
        }
        curve_file.space = target;
    }
    let curve = curve_file.into_curve().map_err(input)?;
    let vertices = match &curve {
        LoadedCurve::Euclidean(c) => c.len(),
        LoadedCurve::Sphere(c) => c.len(),
        LoadedCurve::Hyperbolic(c) => c.len(),
    };
    let refinement = config
        .refinement
        .unwrap_or_else(|| refinement_for_nodes(vertices, MIN_NODES));
    let core: CoreReport = match &curve {
        LoadedCurve::Euclidean(c) => verify_isoperimetric_with(c, VerifyOptions { refinement, check_simple }),
        LoadedCurve::Sphere(c) => verify_sphere_isoperimetric(c, refinement),
        LoadedCurve::Hyperbolic(c) => verify_hyperbolic_isoperimetric(c, refinement),
    }
    .map_err(input)?;

    report.input_hash = Some(content_hash(&bytes));
    report.result("space", serde_json::to_value(core.space_tag).expect("tag serializes"));
    report.result("vertices", vertices);
    report.result("refinement", refinement);
    report.result("nodes", core.nodes);
    report.result("perimeter", core.perimeter);
    report.result("area", core.area);
    report.result("double_integral", core.double_integral);
    report.result("lower_bound", core.lower_bound);
    report.result("deficit", core.deficit);
    report.result("calibration_gap", core.calibration_gap);
    report.result("identity_residual", core.identity_residual());
    let tolerances = Tolerances {
        inequality: config.tolerance("inequality"),
        identity: config.tolerance("identity"),
    };
    for check in core.checks(&tolerances) {
        report.check(check);
    }
    if curve.space() == CurveSpace::Hyperbolic {
        report.notes.push(
            "hyperbolic biform uses the Minkowski form; its pointwise bound |alpha_M| <= 1 is verified empirically only"
                .into(),
        );
    }
    if !check_simple {
        report.notes.push("self-intersection test skipped".into());
    }
    Ok(())
}
