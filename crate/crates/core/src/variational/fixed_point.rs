//! Fixed-point iteration `u ← H ∗ sgn(u)` on the sign pattern.

use serde::{Deserialize, Serialize};

use super::{multipliers, residuals, sign_pattern, to_i8, HTable, Method, VariationalSolution};
use crate::numerics::quadrature::periodic_trapezoid;
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FixedPointOptions {
    /// Weight of the previous iterate in `w ← d·w + (1 − d)·(H ∗ s)`.
    pub damping: f64,
    pub max_iter: usize,
}

impl Default for FixedPointOptions {
    fn default() -> Self {
        FixedPointOptions { damping: 0.5, max_iter: 500 }
    }
}

/// `sgn(cos 2θ_i)` on `m` nodes.
pub fn cos2_pattern(m: usize) -> Vec<i8> {
    (0..m)
        .map(|i| {
            // exact zeros at θ = π/4 + kπ/2 when 8 | m
            if m.is_multiple_of(8) && (8 * i) % m == 0 && ((8 * i) / m) % 2 == 1 {
                0
            } else if (2.0 * std::f64::consts::TAU * i as f64 / m as f64).cos() > 0.0 {
                1
            } else {
                -1
            }
        })
        .collect()
}

/// Iterates until the sign pattern is stationary and agrees with the sign
/// of `H ∗ s`; then `u₀ = H ∗ s` and `m = 1/∫|u₀|`.
pub fn opepl_solve_fixedpoint<T: Real>(init_sign: &[i8], opts: FixedPointOptions) -> Result<VariationalSolution<T>> {
    let m = init_sign.len();
    if m < 16 || !m.is_multiple_of(2) {
        return Err(Error::Domain(format!("sign pattern needs an even length >= 16, got {m}")));
    }
    if init_sign.iter().any(|&s| !(-1..=1).contains(&s)) {
        return Err(Error::Domain("sign pattern entries must be -1, 0 or 1".into()));
    }
    if init_sign.iter().all(|&s| s == 0) {
        return Err(Error::Degenerate("sign pattern is identically zero".into()));
    }
    if !(0.0..1.0).contains(&opts.damping) {
        return Err(Error::Domain(format!("damping must lie in [0, 1), got {}", opts.damping)));
    }
    let d = T::lit(opts.damping);
    let table = HTable::<T>::new(m);
    let mut s: Vec<T> = init_sign.iter().map(|&x| T::lit(x as f64)).collect();
    let mut w: Option<Vec<T>> = None;
    let mut u = table.convolve(&s);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iter {
        iterations += 1;
        u = table.convolve(&s);
        let next_w: Vec<T> = match &w {
            None => u.clone(),
            Some(prev) => prev.iter().zip(&u).map(|(&p, &x)| d * p + (T::one() - d) * x).collect(),
        };
        let sw = sign_pattern(&next_w);
        let next_s: Vec<T> = sw.iter().zip(&s).map(|(&n, &old)| if n == T::zero() { old } else { n }).collect();
        if next_s == s && sign_pattern(&u) == s {
            converged = true;
            break;
        }
        s = next_s;
        w = Some(next_w);
    }
    let l1 = periodic_trapezoid(&u.iter().map(|x| x.abs()).collect::<Vec<T>>());
    if !(l1 > T::zero()) {
        return Err(Error::Degenerate("iteration collapsed to zero".into()));
    }
    let sgn = sign_pattern(&u);
    Ok(VariationalSolution {
        method: Method::FixedPoint,
        residuals: residuals(&u, T::zero()),
        multipliers: multipliers(&sgn),
        sign_pattern: to_i8(&sgn),
        m: T::one() / l1,
        u0: u,
        iterations,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variational::norm_identity_discrete;

    #[test]
    fn cos2_start_is_a_fixed_point() {
        let sol = opepl_solve_fixedpoint::<f64>(&cos2_pattern(1024), FixedPointOptions::default()).unwrap();
        assert!(sol.converged);
        assert!(sol.iterations <= 2);
        assert_eq!(sol.sign_changes(), 4);
        assert!((sol.m - 0.5825).abs() < 1e-3, "{}", sol.m);
        let (l, r) = norm_identity_discrete(&sol.u0);
        assert!((l - r).abs() < 1e-10);
        assert!(sol.residuals.max() < 1e-8);
    }

    #[test]
    fn rejects_bad_patterns() {
        let o = FixedPointOptions::default();
        assert!(opepl_solve_fixedpoint::<f64>(&[1; 10], o).is_err());
        assert!(opepl_solve_fixedpoint::<f64>(&[0; 64], o).is_err());
        assert!(opepl_solve_fixedpoint::<f64>(&[2; 64], o).is_err());
    }
}
