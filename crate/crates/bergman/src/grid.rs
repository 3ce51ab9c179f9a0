//! Deterministic evaluation grids.
//!
//! Several diagnostics take grid suprema over interior points; the grids
//! here are radially graded (radii `1 - 2^{-j}`) so that refinement
//! concentrates where the weights degenerate.

use crate::geometry::Point;
use crate::quadrature::sample_sphere;
use crate::rng::substream;

/// Interior grid of `dirs` directions per shell at radii `1 - 2^{-j}`,
/// `j = 0..=j_max` (the origin plus boundary-refined shells).
pub fn radial_shell_grid(n: usize, j_max: u32, dirs: usize, seed: u64) -> Vec<Point> {
    let mut out = vec![Point::origin(n)];
    for j in 1..=j_max {
        let r = 1.0 - 0.5f64.powi(j as i32);
        for dir in sample_sphere(n, dirs, substream(seed, j as u64)) {
            out.push(dir.scale(r));
        }
    }
    out
}

/// Unit vectors used as window centers: a seeded sphere sample, optionally
/// augmented with the radial projections of given interior points.
pub fn boundary_directions(n: usize, count: usize, seed: u64, anchors: &[Point]) -> Vec<Point> {
    let mut out = sample_sphere(n, count, seed);
    for a in anchors {
        if a.norm() > 1e-12 {
            out.push(a.normalized().expect("nonzero anchor"));
        }
    }
    out
}
