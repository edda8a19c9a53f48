//! Hausdorff distance between two shapes from sample clouds.

use rayon::prelude::*;

use super::point::Point2;
use super::shape::Shape;
use crate::Real;

/// Interior grid points per bounding-box side.
const INTERIOR_GRID: usize = 200;
/// Boundary samples per diameter.
const BOUNDARY_DENSITY: usize = 2000;

fn cloud<T: Real>(s: &Shape<T>) -> Vec<Point2<T>> {
    let step = s.diameter() / T::usz(BOUNDARY_DENSITY);
    let mut pts: Vec<Point2<T>> = s.boundary_polylines(step).into_iter().flatten().collect();
    let bb = s.bbox();
    let n = INTERIOR_GRID;
    for j in 0..=n {
        for i in 0..=n {
            let p = Point2::new(
                bb.min.x + bb.width() * T::usz(i) / T::usz(n),
                bb.min.y + bb.height() * T::usz(j) / T::usz(n),
            );
            if s.contains(p) {
                pts.push(p);
            }
        }
    }
    pts
}

/// `sup_{a ∈ A} d(a, B)` over the sample cloud of `a`, with the exact
/// distance to `b`.
pub fn one_sided<T: Real>(a: &Shape<T>, b: &Shape<T>) -> T {
    cloud(a).par_iter().map(|&p| b.distance_to(p)).reduce(T::zero, T::max)
}

/// Deterministic for the fixed sample densities above; the error is bounded
/// by the boundary step `diam/2000` plus the interior grid spacing.
pub fn hausdorff_distance<T: Real>(a: &Shape<T>, b: &Shape<T>) -> T {
    one_sided(a, b).max(one_sided(b, a))
}
