use crate::Real;

/// Uniform periodic grid on `[0, 2π)`.
pub fn periodic_grid<T: Real>(m: usize) -> Vec<T> {
    let step = T::TAU() / T::usz(m);
    (0..m).map(|k| step * T::usz(k)).collect()
}

/// Periodic trapezoid rule: `∫_0^{2π} f ≈ (2π/M) Σ f_k`.
pub fn periodic_trapezoid<T: Real>(values: &[T]) -> T {
    let step = T::TAU() / T::usz(values.len());
    values.iter().copied().sum::<T>() * step
}

/// Composite trapezoid on uniform nodes with spacing `h`.
pub fn trapezoid<T: Real>(values: &[T], h: T) -> T {
    match values.len() {
        0 | 1 => T::zero(),
        n => {
            let inner: T = values[1..n - 1].iter().copied().sum();
            h * (inner + T::half() * (values[0] + values[n - 1]))
        }
    }
}

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
pub fn adaptive_simpson<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, tol: T, max_depth: u32) -> T {
    let fa = f(a);
    let fb = f(b);
    let m = (a + b) * T::half();
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    simpson_rec(&f, a, b, fa, fm, fb, whole, tol, max_depth)
}

fn simpson<T: Real>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / T::lit(6.0) * (fa + T::lit(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, fa: T, fm: T, fb: T, whole: T, tol: T, depth: u32) -> T {
    let m = (a + b) * T::half();
    let lm = (a + m) * T::half();
    let rm = (m + b) * T::half();
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= T::lit(15.0) * tol {
        return left + right + delta / T::lit(15.0);
    }
    let half_tol = tol * T::half();
    simpson_rec(f, a, m, fa, flm, fm, left, half_tol, depth - 1)
        + simpson_rec(f, m, b, fm, frm, fb, right, half_tol, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_trapezoid_is_exact_for_low_harmonics() {
        let grid = periodic_grid::<f64>(64);
        let vals: Vec<f64> = grid.iter().map(|t| (3.0 * t).cos().powi(2)).collect();
        assert!((periodic_trapezoid(&vals) - std::f64::consts::PI).abs() < 1e-13);
    }

    #[test]
    fn simpson_handles_kinks() {
        let v = adaptive_simpson(|x: f64| (x - 0.3).abs(), 0.0, 1.0, 1e-12, 50);
        assert!((v - (0.045 + 0.245)).abs() < 1e-10);
    }
}
