//! Nelder–Mead downhill simplex for low-dimensional, possibly non-smooth
//! objectives.

use crate::Real;

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions<T> {
    /// Initial edge length of the simplex.
    pub initial_step: T,
    /// Stop once every vertex lies within this distance of the best one.
    pub x_tol: T,
    pub max_iter: usize,
}

#[derive(Debug, Clone)]
pub struct SimplexResult<T, const N: usize> {
    pub x: [T; N],
    pub value: T,
    pub iterations: usize,
    pub converged: bool,
}

pub fn nelder_mead<T: Real, const N: usize, F: Fn(&[T; N]) -> T>(
    f: F,
    start: [T; N],
    opts: SimplexOptions<T>,
) -> SimplexResult<T, N> {
    let (alpha, gamma, rho, sigma) = (T::one(), T::two(), T::half(), T::half());
    let mut pts: Vec<[T; N]> = Vec::with_capacity(N + 1);
    pts.push(start);
    for i in 0..N {
        let mut p = start;
        p[i] = p[i] + opts.initial_step;
        pts.push(p);
    }
    let mut vals: Vec<T> = pts.iter().map(&f).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iter {
        iterations += 1;
        let mut order: Vec<usize> = (0..=N).collect();
        // ties broken lexicographically on position so the result is deterministic
        order.sort_by(|&a, &b| {
            vals[a].partial_cmp(&vals[b]).unwrap_or(std::cmp::Ordering::Equal).then_with(|| lex_cmp(&pts[a], &pts[b]))
        });
        pts = order.iter().map(|&i| pts[i]).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let spread = pts[1..].iter().map(|p| dist(p, &pts[0])).fold(T::zero(), |a, b| a.max(b));
        if spread <= opts.x_tol {
            converged = true;
            break;
        }

        let mut centroid = [T::zero(); N];
        for p in &pts[..N] {
            for k in 0..N {
                centroid[k] = centroid[k] + p[k] / T::usz(N);
            }
        }
        let along = |t: T| {
            let mut q = [T::zero(); N];
            for k in 0..N {
                q[k] = centroid[k] + t * (pts[N][k] - centroid[k]);
            }
            q
        };

        let xr = along(-alpha);
        let fr = f(&xr);
        if fr < vals[0] {
            let xe = along(-gamma);
            let fe = f(&xe);
            if fe < fr {
                pts[N] = xe;
                vals[N] = fe;
            } else {
                pts[N] = xr;
                vals[N] = fr;
            }
            continue;
        }
        if fr < vals[N - 1] {
            pts[N] = xr;
            vals[N] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[N] {
            let xc = along(-rho);
            (xc, f(&xc))
        } else {
            let xc = along(rho);
            (xc, f(&xc))
        };
        if fc < vals[N].min(fr) {
            pts[N] = xc;
            vals[N] = fc;
            continue;
        }
        let best = pts[0];
        for i in 1..=N {
            for k in 0..N {
                pts[i][k] = best[k] + sigma * (pts[i][k] - best[k]);
            }
            vals[i] = f(&pts[i]);
        }
    }

    let best = (0..=N)
        .min_by(|&a, &b| {
            vals[a].partial_cmp(&vals[b]).unwrap_or(std::cmp::Ordering::Equal).then_with(|| lex_cmp(&pts[a], &pts[b]))
        })
        .unwrap_or(0);
    SimplexResult { x: pts[best], value: vals[best], iterations, converged }
}

fn dist<T: Real, const N: usize>(a: &[T; N], b: &[T; N]) -> T {
    a.iter().zip(b).map(|(x, y)| (*x - *y) * (*x - *y)).sum::<T>().sqrt()
}

pub(crate) fn lex_cmp<T: Real, const N: usize>(a: &[T; N], b: &[T; N]) -> std::cmp::Ordering {
    for k in 0..N {
        match a[k].partial_cmp(&b[k]) {
            Some(std::cmp::Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    std::cmp::Ordering::Equal
}
