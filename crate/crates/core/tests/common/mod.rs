#![allow(dead_code)]

use isocal::{Curve, Point};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Star-shaped polygon about the origin: sorted random angles, random radii.
pub fn star_polygon<R: Rng>(rng: &mut R, min_vertices: usize, max_vertices: usize) -> Curve {
    loop {
        let n = rng.gen_range(min_vertices..=max_vertices);
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(f64::total_cmp);
        // Gaps below pi keep the origin inside, so the polygon is simple.
        let wrap = angles[0] + std::f64::consts::TAU - angles[n - 1];
        let gaps_ok = angles.windows(2).map(|w| w[1] - w[0]).chain([wrap]).all(|g| g > 1e-3 && g < 0.9 * std::f64::consts::PI);
        if !gaps_ok {
            continue;
        }
        let vertices = angles
            .iter()
            .map(|&a| {
                let r = rng.gen_range(0.3..1.5);
                Point::new(r * a.cos(), r * a.sin())
            })
            .collect();
        if let Ok(c) = Curve::new(vertices) {
            return c;
        }
    }
}

/// Even-odd ray casting along +x1.
pub fn ray_cast_inside(vertices: &[Point], x: Point) -> bool {
    let n = vertices.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
        if (a.x2 > x.x2) != (b.x2 > x.x2) {
            let cross = a.x1 + (x.x2 - a.x2) * (b.x1 - a.x1) / (b.x2 - a.x2);
            if x.x1 < cross {
                inside = !inside;
            }
        }
    }
    inside
}

/// Point of `[-1.6, 1.6]^2` at least `margin` away from every edge.
pub fn point_off_curve<R: Rng>(rng: &mut R, curve: &Curve, margin: f64) -> Point {
    loop {
        let x = Point::new(rng.gen_range(-1.6..1.6), rng.gen_range(-1.6..1.6));
        if curve.distance_to(x) > margin {
            return x;
        }
    }
}
