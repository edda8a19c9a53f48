//! Raster estimate of the Minkowski perimeter `lim (|Ωᵉ| − |Ω|)/ε`.

use rayon::prelude::*;

use super::point::Point2;
use super::shape::Shape;
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy)]
pub struct RasterOptions {
    /// Raster cells per ε along each axis.
    pub cells_per_eps: usize,
    /// Upper bound on raster cells for one ε.
    pub max_cells: u64,
}

impl Default for RasterOptions {
    fn default() -> Self {
        RasterOptions { cells_per_eps: 20, max_cells: 400_000_000 }
    }
}

/// Raster area of the ε-enlargement `{x : d(x, s) ≤ ε}`, cell size `ε/cells`.
///
/// Blocks of 16×16 cells are classified from the distance at their centre
/// (the distance is 1-Lipschitz); only blocks straddling the level `ε` are
/// refined cell by cell.
pub fn enlarged_area<T: Real>(s: &Shape<T>, eps: T, opts: RasterOptions) -> Result<T> {
    if !(eps > T::zero()) {
        return Err(Error::Domain(format!("ε must be positive, got {eps}")));
    }
    let h = eps / T::usz(opts.cells_per_eps);
    let bb = s.bbox().pad(eps + h);
    let nx = (bb.width() / h).ceil().to_u64().unwrap_or(u64::MAX);
    let ny = (bb.height() / h).ceil().to_u64().unwrap_or(u64::MAX);
    if nx.saturating_mul(ny) > opts.max_cells {
        return Err(Error::Resolution(format!("ε = {eps} needs {nx}×{ny} cells, limit is {}", opts.max_cells)));
    }
    const B: u64 = 16;
    let (bx, by) = (nx.div_ceil(B), ny.div_ceil(B));
    let half_diag = h * T::usz(B as usize) * T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let cell = |i: u64, j: u64| {
        Point2::new(bb.min.x + (T::usz(i as usize) + T::half()) * h, bb.min.y + (T::usz(j as usize) + T::half()) * h)
    };
    let count: u64 = (0..bx * by)
        .into_par_iter()
        .map(|k| {
            let (ib, jb) = (k % bx, k / bx);
            let (i0, j0) = (ib * B, jb * B);
            let (i1, j1) = ((i0 + B).min(nx), (j0 + B).min(ny));
            let full = B == i1 - i0 && B == j1 - j0;
            if full {
                let c = Point2::new(
                    bb.min.x + T::usz((i0 + B / 2) as usize) * h,
                    bb.min.y + T::usz((j0 + B / 2) as usize) * h,
                );
                let d = s.distance_to(c);
                if d + half_diag <= eps {
                    return B * B;
                }
                if d - half_diag > eps {
                    return 0;
                }
            }
            let mut n = 0;
            for j in j0..j1 {
                for i in i0..i1 {
                    if s.distance_to(cell(i, j)) <= eps {
                        n += 1;
                    }
                }
            }
            n
        })
        .sum();
    Ok(T::usz(count as usize) * h * h)
}

/// Estimates the Minkowski perimeter from the difference quotients
/// `(|sᵉ| − |s|)/ε` at each `ε` in `eps_list`, extrapolated linearly to
/// `ε = 0` by least squares (a single ε returns its quotient).
pub fn perimeter_epsilon_estimate<T: Real>(s: &Shape<T>, eps_list: &[T]) -> Result<T> {
    perimeter_epsilon_estimate_with(s, eps_list, RasterOptions::default())
}

pub fn perimeter_epsilon_estimate_with<T: Real>(s: &Shape<T>, eps_list: &[T], opts: RasterOptions) -> Result<T> {
    if eps_list.is_empty() {
        return Err(Error::Domain("empty ε list".into()));
    }
    if eps_list.windows(2).any(|w| !(w[1] < w[0])) || !(eps_list[eps_list.len() - 1] > T::zero()) {
        return Err(Error::Domain("ε list must be positive and strictly decreasing".into()));
    }
    let area = s.area();
    let q = eps_list.iter().map(|&e| enlarged_area(s, e, opts).map(|a| (a - area) / e)).collect::<Result<Vec<T>>>()?;
    if q.len() == 1 {
        return Ok(q[0]);
    }
    let n = T::usz(q.len());
    let mx = eps_list.iter().copied().sum::<T>() / n;
    let my = q.iter().copied().sum::<T>() / n;
    let (mut sxy, mut sxx) = (T::zero(), T::zero());
    for (&e, &v) in eps_list.iter().zip(&q) {
        sxy = sxy + (e - mx) * (v - my);
        sxx = sxx + (e - mx) * (e - mx);
    }
    Ok(my - sxy / sxx * mx)
}
