//! Spectral solver: the Rayleigh quotient over Fourier coefficients of modes
//! `k = 2..=N`, minimized by preconditioned gradient descent with
//! backtracking and multi-start.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{multipliers, residuals, sign_pattern, to_i8, Method, VariationalSolution};
use crate::{Error, Real, Result};

/// `u(θ) = Σ_{k=2}^{N} a_k cos kθ + b_k sin kθ`; `cos[i]`, `sin[i]` hold
/// mode `k = i + 2`. Modes 0 and 1 are absent, so `∫u = ∫u cos = ∫u sin = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct FourierProfile<T> {
    pub cos: Vec<T>,
    pub sin: Vec<T>,
    /// Grid for `∫|u|`.
    pub grid: usize,
}

impl<T: Real> FourierProfile<T> {
    pub fn zero(n: usize, grid: usize) -> Self {
        FourierProfile { cos: vec![T::zero(); n.saturating_sub(1)], sin: vec![T::zero(); n.saturating_sub(1)], grid }
    }

    /// `amplitude · cos kθ`.
    pub fn mode(k: usize, amplitude: T, n: usize, grid: usize) -> Self {
        let mut p = Self::zero(n.max(k), grid);
        p.cos[k - 2] = amplitude;
        p
    }

    /// Highest mode `N`.
    pub fn harmonics(&self) -> usize {
        self.cos.len() + 1
    }

    pub fn validate(&self) -> Result<()> {
        if self.cos.len() != self.sin.len() || self.cos.is_empty() {
            return Err(Error::Domain("cosine and sine coefficient lists must match and be non-empty".into()));
        }
        if self.grid < 16 {
            return Err(Error::Domain(format!("quadrature grid too small: {}", self.grid)));
        }
        if self.cos.iter().chain(&self.sin).any(|c| !c.is_finite()) {
            return Err(Error::Domain("non-finite coefficient".into()));
        }
        Ok(())
    }

    pub fn eval(&self, theta: T) -> T {
        let mut acc = T::zero();
        for (i, (&a, &b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let (s, c) = (T::usz(i + 2) * theta).sin_cos();
            acc = acc + a * c + b * s;
        }
        acc
    }

    pub fn sample(&self) -> Vec<T> {
        Basis::new(self.harmonics(), self.grid).synth(&self.cos, &self.sin)
    }

    /// `∫(u'² − u²) = π Σ (k² − 1)(a_k² + b_k²)`.
    pub fn energy(&self) -> T {
        let mut acc = T::zero();
        for (i, (&a, &b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let k = T::usz(i + 2);
            acc = acc + (k * k - T::one()) * (a * a + b * b);
        }
        T::PI() * acc
    }

    pub fn scaled(&self, s: T) -> Self {
        FourierProfile {
            cos: self.cos.iter().map(|&c| c * s).collect(),
            sin: self.sin.iter().map(|&c| c * s).collect(),
            grid: self.grid,
        }
    }
}

/// `∫(u'² − u²) / (∫|u|)²`, the denominator by the periodic trapezoid rule.
pub fn opepl_rayleigh<T: Real>(u: &FourierProfile<T>) -> Result<T> {
    u.validate()?;
    let d = l1(&u.sample());
    if !(d > T::zero()) {
        return Err(Error::Degenerate("zero profile".into()));
    }
    Ok(u.energy() / (d * d))
}

/// Value and gradient (cosine block then sine block) of the quotient.
pub fn rayleigh_gradient<T: Real>(u: &FourierProfile<T>) -> Result<(T, Vec<T>, Vec<T>)> {
    u.validate()?;
    let basis = Basis::new(u.harmonics(), u.grid);
    let samples = basis.synth(&u.cos, &u.sin);
    let d = l1(&samples);
    if !(d > T::zero()) {
        return Err(Error::Degenerate("zero profile".into()));
    }
    let n = u.energy();
    let s = sign_pattern(&samples);
    let (pc, ps) = basis.project(&s);
    let (d2, d3) = (d * d, d * d * d);
    let grad = |c: &[T], p: &[T]| -> Vec<T> {
        c.iter()
            .zip(p)
            .enumerate()
            .map(|(i, (&ci, &pi))| {
                let k = T::usz(i + 2);
                T::two() * T::PI() * (k * k - T::one()) * ci / d2 - T::two() * n / d3 * pi
            })
            .collect()
    };
    Ok((n / d2, grad(&u.cos, &pc), grad(&u.sin, &ps)))
}

fn l1<T: Real>(u: &[T]) -> T {
    let h = T::TAU() / T::usz(u.len());
    u.iter().map(|x| x.abs()).sum::<T>() * h
}

/// Sampled `cos kθ_i`, `sin kθ_i` for `k = 2..=N`.
struct Basis<T> {
    cos: Vec<Vec<T>>,
    sin: Vec<Vec<T>>,
    grid: usize,
}

impl<T: Real> Basis<T> {
    fn new(n: usize, grid: usize) -> Self {
        let th = super::angles::<T>(grid);
        let row = |k: usize, f: fn(T) -> T| th.iter().map(|&t| f(T::usz(k) * t)).collect::<Vec<T>>();
        Basis { cos: (2..=n).map(|k| row(k, T::cos)).collect(), sin: (2..=n).map(|k| row(k, T::sin)).collect(), grid }
    }

    fn synth(&self, a: &[T], b: &[T]) -> Vec<T> {
        let mut u = vec![T::zero(); self.grid];
        for (k, (&ak, &bk)) in a.iter().zip(b).enumerate() {
            for (i, ui) in u.iter_mut().enumerate() {
                *ui = *ui + ak * self.cos[k][i] + bk * self.sin[k][i];
            }
        }
        u
    }

    /// `(∫ s cos kθ, ∫ s sin kθ)` by the trapezoid rule.
    fn project(&self, s: &[T]) -> (Vec<T>, Vec<T>) {
        let h = T::TAU() / T::usz(self.grid);
        let dot = |row: &Vec<T>| row.iter().zip(s).map(|(&a, &b)| a * b).sum::<T>() * h;
        (self.cos.iter().map(dot).collect(), self.sin.iter().map(dot).collect())
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FourierOptions {
    /// Highest mode `N`.
    pub harmonics: usize,
    /// Quadrature grid `M`.
    pub grid: usize,
    /// Random starts in addition to the `cos 2θ` start.
    pub restarts: usize,
    pub seed: u64,
    pub max_iter: usize,
}

impl Default for FourierOptions {
    fn default() -> Self {
        FourierOptions { harmonics: 64, grid: 4096, restarts: 32, seed: 42, max_iter: 500 }
    }
}

struct Run<T> {
    value: T,
    a: Vec<T>,
    b: Vec<T>,
    iterations: usize,
    converged: bool,
}

fn descend<T: Real>(basis: &Basis<T>, mut a: Vec<T>, mut b: Vec<T>, max_iter: usize) -> Run<T> {
    let n_modes = a.len();
    let q: Vec<T> = (0..n_modes).map(|i| T::usz((i + 2) * (i + 2) - 1)).collect();
    let energy = |a: &[T], b: &[T]| -> T {
        T::PI() * a.iter().zip(b).zip(&q).map(|((&x, &y), &w)| w * (x * x + y * y)).sum::<T>()
    };
    let normalize = |a: &mut Vec<T>, b: &mut Vec<T>| -> Option<Vec<T>> {
        let u = basis.synth(a, b);
        let d = l1(&u);
        if !(d > T::zero()) {
            return None;
        }
        a.iter_mut().chain(b.iter_mut()).for_each(|c| *c = *c / d);
        Some(u.into_iter().map(|x| x / d).collect())
    };
    let Some(mut u) = normalize(&mut a, &mut b) else {
        return Run { value: T::infinity(), a, b, iterations: 0, converged: false };
    };
    let mut value = energy(&a, &b);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        iterations += 1;
        let s = sign_pattern(&u);
        let (pa, pb) = basis.project(&s);
        // with ∫|u| = 1: ∇ = 2π Q c − 2R p, preconditioned direction d = −c + (R/π) Q⁻¹ p
        let r_over_pi = value / T::PI();
        let da: Vec<T> = (0..n_modes).map(|i| -a[i] + r_over_pi * pa[i] / q[i]).collect();
        let db: Vec<T> = (0..n_modes).map(|i| -b[i] + r_over_pi * pb[i] / q[i]).collect();
        let slope: T = (0..n_modes)
            .map(|i| {
                let ga = T::two() * T::PI() * q[i] * a[i] - T::two() * value * pa[i];
                let gb = T::two() * T::PI() * q[i] * b[i] - T::two() * value * pb[i];
                ga * da[i] + gb * db[i]
            })
            .sum();
        if slope >= -T::epsilon() * value {
            converged = true;
            break;
        }
        let mut t = T::one();
        let mut accepted = None;
        while t > T::lit(1e-12) {
            let mut na: Vec<T> = (0..n_modes).map(|i| a[i] + t * da[i]).collect();
            let mut nb: Vec<T> = (0..n_modes).map(|i| b[i] + t * db[i]).collect();
            if let Some(nu) = normalize(&mut na, &mut nb) {
                let nv = energy(&na, &nb);
                if nv <= value + T::lit(1e-4) * t * slope {
                    accepted = Some((na, nb, nu, nv));
                    break;
                }
            }
            t = t * T::half();
        }
        let Some((na, nb, nu, nv)) = accepted else {
            converged = true;
            break;
        };
        let decrease = value - nv;
        a = na;
        b = nb;
        u = nu;
        value = nv;
        if decrease <= T::lit(4.0) * T::epsilon() * value {
            converged = true;
            break;
        }
    }
    Run { value, a, b, iterations, converged }
}

/// Minimizes the Rayleigh quotient from `cos 2θ` and `restarts` seeded
/// random starts; the best run wins (ties to the lower start index).
pub fn opepl_solve_fourier<T: Real>(opts: FourierOptions) -> Result<(VariationalSolution<T>, FourierProfile<T>)> {
    if opts.harmonics < 8 {
        return Err(Error::Domain(format!("need at least 8 harmonics, got {}", opts.harmonics)));
    }
    if opts.grid < 1024 {
        return Err(Error::Domain(format!("need a grid of at least 1024 points, got {}", opts.grid)));
    }
    let basis = Basis::<T>::new(opts.harmonics, opts.grid);
    let n_modes = opts.harmonics - 1;
    let runs: Vec<Run<T>> = (0..=opts.restarts)
        .into_par_iter()
        .map(|start| {
            let (mut a, mut b) = (vec![T::zero(); n_modes], vec![T::zero(); n_modes]);
            if start == 0 {
                a[0] = T::one();
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                rng.set_stream(start as u64);
                for i in 0..n_modes {
                    let w = 1.0 / (i + 2) as f64;
                    a[i] = T::lit(w * rng.gen_range(-1.0..1.0));
                    b[i] = T::lit(w * rng.gen_range(-1.0..1.0));
                }
            }
            descend(&basis, a, b, opts.max_iter)
        })
        .collect();
    let best = runs
        .into_iter()
        .enumerate()
        .min_by(|x, y| x.1.value.partial_cmp(&y.1.value).unwrap_or(std::cmp::Ordering::Equal).then(x.0.cmp(&y.0)))
        .map(|x| x.1)
        .expect("at least one start");
    let m = best.value;
    // ∫|u| = 1 for the returned run; u₀ = u/m
    let profile = FourierProfile { cos: best.a, sin: best.b, grid: opts.grid }.scaled(T::one() / m);
    let u0 = basis.synth(&profile.cos, &profile.sin);
    let s = sign_pattern(&u0);
    let periodicity = profile.eval(T::TAU()) - profile.eval(T::zero());
    let sol = VariationalSolution {
        method: Method::Fourier,
        residuals: residuals(&u0, periodicity),
        multipliers: multipliers(&s),
        sign_pattern: to_i8(&s),
        u0,
        m,
        iterations: best.iterations,
        converged: best.converged,
    };
    Ok((sol, profile))
}
