#![allow(dead_code)]

use pcd_core::geom::{normalize_to_basic, Point2, TriangleFrame};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random non-degenerate triangle in [−2, 2]², normalized.
pub fn random_frame(rng: &mut ChaCha8Rng) -> TriangleFrame {
    loop {
        let mut p = || Point2::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let t = [p(), p(), p()];
        if let Ok(f) = normalize_to_basic(t) {
            if f.c2 > 0.05 {
                return f;
            }
        }
    }
}

/// A random scalene frame that stays clear of right and isoceles shapes.
pub fn random_scalene(rng: &mut ChaCha8Rng) -> TriangleFrame {
    loop {
        let f = random_frame(rng);
        let sides = {
            let v = f.basic_vertices();
            [v[0].dist(v[1]), v[1].dist(v[2]), v[2].dist(v[0])]
        };
        let distinct = (sides[0] - sides[1]).abs() > 0.05 && (sides[1] - sides[2]).abs() > 0.05 && (sides[0] - sides[2]).abs() > 0.05;
        if distinct {
            return f;
        }
    }
}

/// Uniform point of the basic triangle of `f`.
pub fn in_basic(f: &TriangleFrame, rng: &mut ChaCha8Rng) -> Point2 {
    let s = rng.random::<f64>().sqrt();
    let u = rng.random::<f64>();
    let [a, b, c] = f.basic_vertices();
    a * (1.0 - s) + b * (s * (1.0 - u)) + c * (s * u)
}

pub fn basic_frame(c1: f64, c2: f64) -> TriangleFrame {
    TriangleFrame::basic(c1, c2).unwrap()
}
