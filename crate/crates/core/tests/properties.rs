mod common;

use std::f64::consts::PI;

use isocal::mayer::{
    foliation_parameter, legendre_roundtrip_defect, weierstrass_gap, FnFamily, Lagrangian, Lagrangian1D,
};
use isocal::{
    biform2, biform3, biform_apply, double_boundary_integral, geodesic_cap, hyperbolic_area, hyperbolic_circle,
    hyperbolic_perimeter, load_curve, mayer_vector, sphere_area, sphere_perimeter, verify_isoperimetric,
    winding_integral, Curve, CurveFile, HyperCurve, LoadedCurve, Point, SphereCurve, Unit, Vec3,
};
use proptest::prelude::*;

use common::{point_off_curve, ray_cast_inside, rng, star_polygon};

fn point() -> impl Strategy<Value = Point> {
    (-5.0..5.0f64, -5.0..5.0f64).prop_map(|(a, b)| Point::new(a, b))
}

fn vec3() -> impl Strategy<Value = Vec3> {
    (-5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64).prop_map(|(a, b, c)| Vec3::new(a, b, c))
}

fn polygon() -> impl Strategy<Value = Curve> {
    any::<u64>().prop_map(|seed| star_polygon(&mut rng(seed), 3, 16))
}

fn rotate3(v: Vec3, axis: usize, angle: f64) -> Vec3 {
    let (s, c) = angle.sin_cos();
    let a = v.to_array();
    let (i, j) = ((axis + 1) % 3, (axis + 2) % 3);
    let mut out = a;
    out[i] = c * a[i] - s * a[j];
    out[j] = s * a[i] + c * a[j];
    Vec3::new(out[0], out[1], out[2])
}

/// Boost mixing `x1` and `x3` with rapidity `phi`.
fn boost(v: Vec3, phi: f64) -> Vec3 {
    let (s, c) = (phi.sinh(), phi.cosh());
    Vec3::new(c * v.x1 + s * v.x3, v.x2, s * v.x1 + c * v.x3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mayer_vector_is_unit(x in point(), y in point(), angle in 0.0..2.0 * PI) {
        prop_assume!((x - y).norm() > 1e-3);
        let v = mayer_vector(y, Unit::from_angle(angle), x).unwrap();
        prop_assert!((v.get().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn biform_is_symmetric_orthogonal_reflection(x in point(), y in point()) {
        prop_assume!((x - y).norm() > 1e-3);
        let m = biform2(x, y).unwrap();
        prop_assert!(m.orthogonality_defect() < 1e-12);
        prop_assert!(m.asymmetry() < 1e-15);
        prop_assert!(m.trace().abs() < 1e-12);
        prop_assert_eq!(m, biform2(y, x).unwrap());
    }

    #[test]
    fn spatial_biform_is_orthogonal(x in vec3(), y in vec3()) {
        prop_assume!((x - y).norm() > 1e-3);
        let m = biform3(x, y).unwrap();
        prop_assert!(m.orthogonality_defect() < 1e-12);
        prop_assert!((m.trace() - (-1.0)).abs() < 1e-12);
    }

    #[test]
    fn biform_bounded_by_one(x in point(), y in point(), a in 0.0..2.0 * PI, b in 0.0..2.0 * PI) {
        prop_assume!((x - y).norm() > 1e-3);
        let v = biform_apply(x, y, Unit::from_angle(a).get(), Unit::from_angle(b).get()).unwrap();
        prop_assert!(v.abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn biform_invariant_under_rigid_motions(x in point(), y in point(), a in 0.0..2.0 * PI, b in 0.0..2.0 * PI, turn in 0.0..2.0 * PI, shift in point()) {
        prop_assume!((x - y).norm() > 1e-3);
        let (u, v) = (Unit::from_angle(a).get(), Unit::from_angle(b).get());
        let before = biform_apply(x, y, u, v).unwrap();
        let after = biform_apply(x.rotated(turn) + shift, y.rotated(turn) + shift, u.rotated(turn), v.rotated(turn)).unwrap();
        prop_assert!((before - after).abs() < 1e-10);
    }

    #[test]
    fn reversal_negates_area(curve in polygon()) {
        let rev = curve.reversed();
        prop_assert_eq!(rev.signed_area(), -curve.signed_area());
        prop_assert!((rev.perimeter() - curve.perimeter()).abs() <= 1e-12 * curve.perimeter());
        prop_assert!(verify_isoperimetric(&rev, 1).is_err());
    }

    #[test]
    fn winding_matches_ray_casting(seed in any::<u64>()) {
        let mut r = rng(seed);
        let curve = star_polygon(&mut r, 3, 16);
        let x = point_off_curve(&mut r, &curve, 1e-2);
        let expected = if ray_cast_inside(curve.vertices(), x) { 4.0 * PI } else { 0.0 };
        let w = winding_integral(&curve, x, 1).unwrap();
        prop_assert!((w - expected).abs() < 1e-6, "{} vs {}", w, expected);
        prop_assert_eq!(curve.contains(x).unwrap(), expected > 0.0);
    }

    #[test]
    fn star_polygons_satisfy_inequality(curve in polygon()) {
        // Corners slow the identity to second order in the refinement.
        let report = verify_isoperimetric(&curve, 32).unwrap();
        prop_assert!(report.deficit >= -1e-8);
        prop_assert!(report.calibration_gap >= -1e-8);
        prop_assert!(report.identity_residual() < 2e-2, "{}", report.identity_residual());
    }

    #[test]
    fn double_integral_invariant_and_quadratic(curve in polygon(), turn in 0.0..2.0 * PI, shift in point(), scale in 0.2..5.0f64) {
        let base = double_boundary_integral(&curve, 4).unwrap();
        let moved = curve.transformed(|p| p.rotated(turn) + shift).unwrap();
        prop_assert!((double_boundary_integral(&moved, 4).unwrap() - base).abs() < 1e-9 * base.abs().max(1.0));
        let scaled = curve.transformed(|p| p * scale).unwrap();
        let expect = base * scale * scale;
        prop_assert!((double_boundary_integral(&scaled, 4).unwrap() - expect).abs() < 1e-9 * expect.abs().max(1.0));
    }

    #[test]
    fn sphere_measures_rotation_invariant(theta in 0.2..2.9f64, axis in 0usize..3, angle in 0.0..2.0 * PI) {
        let cap = geodesic_cap(theta, 64).unwrap();
        let turned = SphereCurve::new(cap.vertices().iter().map(|&v| rotate3(v, axis, angle)).collect()).unwrap();
        prop_assert!((sphere_area(&turned) - sphere_area(&cap)).abs() < 1e-10);
        prop_assert!((sphere_perimeter(&turned) - sphere_perimeter(&cap)).abs() < 1e-10);
    }

    #[test]
    fn hyperbolic_measures_lorentz_invariant(radius in 0.1..1.5f64, phi in -1.0..1.0f64, angle in 0.0..2.0 * PI) {
        let circle = hyperbolic_circle(radius, 64).unwrap();
        let moved = HyperCurve::new(circle.vertices().iter().map(|&v| boost(rotate3(v, 2, angle), phi)).collect()).unwrap();
        let (a, l) = (hyperbolic_area(&circle), hyperbolic_perimeter(&circle));
        prop_assert!((hyperbolic_area(&moved) - a).abs() < 1e-9 * a.max(1.0));
        prop_assert!((hyperbolic_perimeter(&moved) - l).abs() < 1e-9 * l.max(1.0));
    }

    #[test]
    fn legendre_roundtrip(t in -1.0..1.0f64, q in -2.0..2.0f64, qdot in -4.0..4.0f64) {
        let l = Lagrangian1D::<f64>::cosh();
        prop_assert!(legendre_roundtrip_defect(&l, t, q, qdot).unwrap() < 1e-9);
        let o = Lagrangian1D::<f64>::harmonic_oscillator();
        prop_assert!(legendre_roundtrip_defect(&o, t, q, qdot).unwrap() < 1e-9);
    }

    #[test]
    fn weierstrass_dominance(t in 0.55..2.45f64, s in -2.9..2.9f64, qdot in -6.0..6.0f64) {
        let l = Lagrangian1D::<f64>::harmonic_oscillator();
        let family = FnFamily::<f64>::oscillator();
        let q = s * t.sin();
        let gap = weierstrass_gap(&l, &family, t, q, qdot).unwrap();
        let slope = s * t.cos();
        prop_assert!(gap >= -1e-10);
        prop_assert!((gap - (qdot - slope).powi(2) / 2.0).abs() < 1e-8);

        let c = Lagrangian1D::<f64>::cosh();
        let lines = FnFamily::<f64>::free(0.3);
        prop_assert!(weierstrass_gap(&c, &lines, 0.5, q, qdot).unwrap() >= -1e-10);
        prop_assert!(c.d2_qdot(0.5, q, qdot) > 0.0);
    }

    #[test]
    fn foliation_parameter_recovers_leaf(t in 0.55..2.45f64, s in -2.9..2.9f64) {
        let family = FnFamily::<f64>::oscillator();
        let recovered = foliation_parameter(&family, t, s * t.sin()).unwrap();
        prop_assert!((recovered - s).abs() < 1e-10);
    }

    #[test]
    fn curve_file_roundtrip(curve in polygon()) {
        let back = load_curve(&CurveFile::from_planar(&curve).to_json()).unwrap();
        prop_assert_eq!(back, LoadedCurve::Euclidean(curve));
    }
}
