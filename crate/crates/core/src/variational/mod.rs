//! The linearized problem near the disk: minimize `∫(u'² − u²) / (∫|u|)²`
//! over 2π-periodic `u` orthogonal to `1, cos θ, sin θ`, its Green's-kernel
//! characterization, the full nonlinear quotient `J`, and the barrier bound
//! on the minimum `m`.

pub mod barrier;
pub mod fixed_point;
pub mod fourier;
pub mod kernel;
pub mod nonlinear;

use serde::{Deserialize, Serialize};

use crate::numerics::quadrature::{adaptive_simpson, periodic_trapezoid};
use crate::numerics::roots::bisect;
use crate::real::sign0;
use crate::Real;

pub use barrier::{barrier_m, barrier_m_star, m_lower_bound, Barrier};
pub use fixed_point::{opepl_solve_fixedpoint, FixedPointOptions};
pub use fourier::{opepl_rayleigh, opepl_solve_fourier, FourierOptions, FourierProfile};
pub use kernel::{green_kernel, kernel_h, kernel_h_integral, solve_ode_periodic, HTable};
pub use nonlinear::j_full;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Fourier,
    FixedPoint,
}

/// Residuals of `∫u = 0`, `∫u cos = ∫u sin = 0` (max of the two) and
/// periodicity `u(2π) − u(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ConstraintResiduals<T> {
    pub mean: T,
    pub first_mode: T,
    pub periodicity: T,
}

impl<T: Real> ConstraintResiduals<T> {
    pub fn max(&self) -> T {
        self.mean.abs().max(self.first_mode.abs()).max(self.periodicity.abs())
    }
}

/// A minimizer `u₀` on the grid `θ_i = 2πi/M`, normalized so that
/// `∫|u₀| = 1/m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct VariationalSolution<T> {
    pub method: Method,
    pub u0: Vec<T>,
    pub m: T,
    pub sign_pattern: Vec<i8>,
    /// `λ̃₀, λ̃₁, λ̃₂` of `u₀'' + u₀ = −sgn u₀ − λ̃₀ − λ̃₁ cos θ − λ̃₂ sin θ`.
    pub multipliers: [T; 3],
    pub residuals: ConstraintResiduals<T>,
    pub iterations: usize,
    pub converged: bool,
}

impl<T: Real> VariationalSolution<T> {
    pub fn grid(&self) -> usize {
        self.u0.len()
    }

    /// Sign changes of the pattern around the circle.
    pub fn sign_changes(&self) -> usize {
        let s: Vec<i8> = self.sign_pattern.iter().copied().filter(|&x| x != 0).collect();
        (0..s.len()).filter(|&i| s[i] != s[(i + 1) % s.len()]).count()
    }
}

pub(crate) fn angles<T: Real>(m: usize) -> Vec<T> {
    (0..m).map(|i| T::TAU() * T::usz(i) / T::usz(m)).collect()
}

/// Sign with a relative dead zone so roundoff at symmetric zeros reads as 0.
pub(crate) fn sign_pattern<T: Real>(u: &[T]) -> Vec<T> {
    let scale = u.iter().fold(T::zero(), |a, &b| a.max(b.abs()));
    let tiny = scale * T::lit(1e3) * T::epsilon();
    u.iter().map(|&x| if x.abs() <= tiny { T::zero() } else { sign0(x) }).collect()
}

pub(crate) fn residuals<T: Real>(u: &[T], periodicity: T) -> ConstraintResiduals<T> {
    let th = angles::<T>(u.len());
    let c: Vec<T> = u.iter().zip(&th).map(|(&x, &t)| x * t.cos()).collect();
    let s: Vec<T> = u.iter().zip(&th).map(|(&x, &t)| x * t.sin()).collect();
    ConstraintResiduals {
        mean: periodic_trapezoid(u),
        first_mode: periodic_trapezoid(&c).abs().max(periodic_trapezoid(&s).abs()),
        periodicity,
    }
}

pub(crate) fn multipliers<T: Real>(sign: &[T]) -> [T; 3] {
    let th = angles::<T>(sign.len());
    let c: Vec<T> = sign.iter().zip(&th).map(|(&x, &t)| x * t.cos()).collect();
    let s: Vec<T> = sign.iter().zip(&th).map(|(&x, &t)| x * t.sin()).collect();
    [-periodic_trapezoid(sign) / T::TAU(), -periodic_trapezoid(&c) / T::PI(), -periodic_trapezoid(&s) / T::PI()]
}

pub(crate) fn to_i8<T: Real>(s: &[T]) -> Vec<i8> {
    s.iter()
        .map(|&x| {
            if x > T::zero() {
                1
            } else if x < T::zero() {
                -1
            } else {
                0
            }
        })
        .collect()
}

/// Both sides of `∫|u₀| = ∬ sgn u₀(t) H(θ − t) sgn u₀(θ) dt dθ` in the
/// grid discretization (trapezoid rule and the circulant `H`).
pub fn norm_identity_discrete<T: Real>(u0: &[T]) -> (T, T) {
    let lhs = periodic_trapezoid(&u0.iter().map(|x| x.abs()).collect::<Vec<T>>());
    let s = sign_pattern(u0);
    let table = HTable::new(u0.len());
    let hs = table.convolve(&s);
    let rhs = periodic_trapezoid(&s.iter().zip(&hs).map(|(&a, &b)| a * b).collect::<Vec<T>>());
    (lhs, rhs)
}

/// Maximal arcs of constant sign of a continuous periodic `u`, as
/// `(start, end, sign)` with `start < end ≤ start + 2π`. Zeros are bracketed
/// on `samples` nodes and refined by bisection.
pub fn sign_arcs<T: Real, F: Fn(T) -> T>(u: F, samples: usize) -> Vec<(T, T, T)> {
    let th = angles::<T>(samples);
    let vals: Vec<T> = th.iter().map(|&t| u(t)).collect();
    let signs = sign_pattern(&vals);
    let nz: Vec<usize> = (0..samples).filter(|&i| signs[i] != T::zero()).collect();
    if nz.is_empty() {
        return Vec::new();
    }
    let mut zeros = Vec::new();
    for (k, &i) in nz.iter().enumerate() {
        let j = nz[(k + 1) % nz.len()];
        if signs[i] == signs[j] {
            continue;
        }
        let lo = th[i];
        let hi = if j > i { th[j] } else { th[j] + T::TAU() };
        let z = bisect(&u, lo, hi, T::lit(4.0) * T::epsilon()).unwrap_or((lo + hi) * T::half());
        zeros.push(z);
    }
    if zeros.is_empty() {
        return vec![(T::zero(), T::TAU(), signs[nz[0]])];
    }
    let n = zeros.len();
    (0..n)
        .map(|k| {
            let a = zeros[k];
            let b = if k + 1 < n { zeros[k + 1] } else { zeros[0] + T::TAU() };
            (a, b, sign0(u((a + b) * T::half())))
        })
        .collect()
}

/// Both sides of the norm identity for a continuous profile: `∫|u|`
/// integrated arc by arc, and the double integral evaluated through the
/// antiderivative of `H` on the arcs of constant sign, so the jumps of
/// `sgn u` cost nothing.
pub fn norm_identity<T: Real, F: Fn(T) -> T>(u: F, samples: usize) -> (T, T) {
    let arcs = sign_arcs(&u, samples);
    let tol = T::lit(1e-13);
    let lhs = arcs.iter().map(|&(a, b, s)| s * adaptive_simpson(&u, a, b, tol, 50)).sum::<T>();
    let hs = |t: T| arcs.iter().map(|&(a, b, s)| s * (kernel_h_integral(t - a) - kernel_h_integral(t - b))).sum::<T>();
    let rhs = arcs.iter().map(|&(a, b, s)| s * adaptive_simpson(hs, a, b, tol, 50)).sum::<T>();
    (lhs, rhs)
}

/// `H ∗ sgn`, the continuous image of a sign pattern whose arcs are given by
/// `sign_arcs`.
pub fn convolve_arcs<T: Real>(arcs: &[(T, T, T)], t: T) -> T {
    arcs.iter().map(|&(a, b, s)| s * (kernel_h_integral(t - a) - kernel_h_integral(t - b))).sum()
}

/// Arcs of a grid sign pattern: a zero node is a sign change, otherwise the
/// change sits halfway between two nodes of opposite sign.
pub fn pattern_arcs<T: Real>(pattern: &[i8]) -> Vec<(T, T, T)> {
    let m = pattern.len();
    let step = T::TAU() / T::usz(m);
    let nz: Vec<usize> = (0..m).filter(|&i| pattern[i] != 0).collect();
    if nz.is_empty() {
        return Vec::new();
    }
    let mut zeros = Vec::new();
    for (k, &i) in nz.iter().enumerate() {
        let j = nz[(k + 1) % nz.len()];
        if pattern[i] != pattern[j] {
            let jj = if j > i { j } else { j + m };
            zeros.push(step * T::usz(i + jj) * T::half());
        }
    }
    if zeros.is_empty() {
        return vec![(T::zero(), T::TAU(), T::lit(pattern[nz[0]] as f64))];
    }
    let n = zeros.len();
    (0..n)
        .map(|k| {
            let a = zeros[k];
            let b = if k + 1 < n { zeros[k + 1] } else { zeros[0] + T::TAU() };
            let mid = ((a + b) * T::half() / step).round().to_usize().unwrap_or(0) % m;
            (a, b, T::lit(pattern[mid] as f64))
        })
        .collect()
}
