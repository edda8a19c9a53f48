//! Green's function of `h'' + h` on the circle and the kernel `H`.

use rayon::prelude::*;

use crate::numerics::quadrature::periodic_trapezoid;
use crate::rearrangement::SampledFunction;
use crate::{Error, Real, Result};

fn wrap_pi<T: Real>(t: T) -> T {
    let tau = T::TAU();
    let mut x = (t + T::PI()) % tau;
    if x < T::zero() {
        x = x + tau;
    }
    x - T::PI()
}

/// `G(t) = ½(1 − |t|/π) sin|t|`, extended 2π-periodically. Solves
/// `G'' + G = δ₀ − cos t/π`.
pub fn green_kernel<T: Real>(t: T) -> T {
    let a = wrap_pi(t).abs();
    T::half() * (T::one() - a / T::PI()) * a.sin()
}

/// `H(x) = −G(x) + 1/(2π) + cos x/(4π)`. Convolution with `H` inverts
/// `−(d²/dθ² + 1)` on modes `k ≥ 2` and kills modes 0 and 1.
pub fn kernel_h<T: Real>(x: T) -> T {
    -green_kernel(x) + T::one() / T::TAU() + x.cos() / (T::lit(4.0) * T::PI())
}

/// `H₁(x) = ∫₀ˣ H`, 2π-periodic because `H` has zero mean.
pub fn kernel_h_integral<T: Real>(x: T) -> T {
    let w = wrap_pi(x);
    let a = w.abs();
    let g1 = T::half() * (T::one() - (T::one() - a / T::PI()) * a.cos() - a.sin() / T::PI());
    let g1 = if w < T::zero() { -g1 } else { g1 };
    -g1 + w / T::TAU() + w.sin() / (T::lit(4.0) * T::PI())
}

/// `H` tabulated on `θ_k = 2πk/M` for circulant products.
#[derive(Debug, Clone)]
pub struct HTable<T> {
    values: Vec<T>,
}

impl<T: Real> HTable<T> {
    pub fn new(m: usize) -> Self {
        HTable { values: (0..m).map(|k| kernel_h(T::TAU() * T::usz(k) / T::usz(m))).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(H ∗ s)(θ_i) = Σ_j (2π/M) H(θ_i − θ_j) s_j`.
    pub fn convolve(&self, s: &[T]) -> Vec<T> {
        let m = self.values.len();
        assert_eq!(m, s.len(), "grid mismatch");
        let h = T::TAU() / T::usz(m);
        (0..m)
            .into_par_iter()
            .map(|i| {
                let mut acc = T::zero();
                for (j, &sj) in s.iter().enumerate() {
                    if sj != T::zero() {
                        acc = acc + self.values[(i + m - j) % m] * sj;
                    }
                }
                acc * h
            })
            .collect()
    }
}

/// Periodic solution of `h'' + h = R` orthogonal to `cos` and `sin`, as
/// `h(θ) = ∫ G(t) R(θ + t) dt`. `r` samples `[−π, π]` with the last node
/// repeating the first.
pub fn solve_ode_periodic<T: Real>(r: &SampledFunction<T>) -> Result<SampledFunction<T>> {
    r.validate()?;
    if (r.half_width - T::PI()).abs() > T::lit(1e3) * T::geom_eps() {
        return Err(Error::GridMismatch("the right-hand side must be sampled on [−π, π]".into()));
    }
    let m = r.len() - 1;
    let vals = &r.values[..m];
    let theta: Vec<T> = (0..m).map(|i| r.node(i)).collect();
    let scale = vals.iter().fold(T::one(), |a, &b| a.max(b.abs()));
    let c = periodic_trapezoid(&vals.iter().zip(&theta).map(|(&v, &t)| v * t.cos()).collect::<Vec<T>>());
    let s = periodic_trapezoid(&vals.iter().zip(&theta).map(|(&v, &t)| v * t.sin()).collect::<Vec<T>>());
    let tol = T::lit(1e-8) * scale;
    if c.abs() > tol || s.abs() > tol {
        return Err(Error::Constraint(format!("R must be orthogonal to cos and sin (residuals {c}, {s})")));
    }
    let step = T::TAU() / T::usz(m);
    let g: Vec<T> = (0..m).map(|k| green_kernel(step * T::usz(k))).collect();
    let mut out: Vec<T> =
        (0..m).into_par_iter().map(|i| (0..m).map(|k| g[k] * vals[(i + k) % m]).sum::<T>() * step).collect();
    out.push(out[0]);
    SampledFunction::new(r.half_width, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn kernel_values() {
        assert_eq!(green_kernel(0.0f64), 0.0);
        assert!(green_kernel(PI).abs() < 1e-16 && green_kernel(-PI).abs() < 1e-16);
        assert!((kernel_h(0.0f64) - 3.0 / (4.0 * PI)).abs() < 1e-15);
        assert!((kernel_h(PI) - 1.0 / (4.0 * PI)).abs() < 1e-15);
        assert!((green_kernel(0.7f64) - green_kernel(-0.7)).abs() < 1e-16);
        assert!((green_kernel(0.7f64) - green_kernel(0.7 + 2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn h_integral_differentiates_to_h() {
        assert!(kernel_h_integral(PI).abs() < 1e-15 && kernel_h_integral(-PI).abs() < 1e-15);
        for &x in &[-3.0f64, -1.2, -0.1, 0.3, 2.0, 3.1, 7.5] {
            let d = 1e-6;
            let fd = (kernel_h_integral(x + d) - kernel_h_integral(x - d)) / (2.0 * d);
            assert!((fd - kernel_h(x)).abs() < 1e-8, "{x}");
        }
    }

    #[test]
    fn h_kills_low_modes() {
        let t = HTable::<f64>::new(1024);
        let th: Vec<f64> = (0..1024).map(|i| 2.0 * PI * i as f64 / 1024.0).collect();
        for f in [|_: f64| 1.0, f64::cos, f64::sin] {
            let out = t.convolve(&th.iter().map(|&x| f(x)).collect::<Vec<_>>());
            assert!(out.iter().all(|v| v.abs() < 1e-5), "{}", out[0]);
        }
        let out = t.convolve(&th.iter().map(|&x| (3.0 * x).cos()).collect::<Vec<_>>());
        assert!(out.iter().zip(&th).all(|(v, &x)| (v - (3.0 * x).cos() / 8.0).abs() < 1e-5));
    }

    #[test]
    fn ode_cos2() {
        let r = SampledFunction::from_fn(PI, 4097, |x: f64| (2.0 * x).cos()).unwrap();
        let h = solve_ode_periodic(&r).unwrap();
        for (j, v) in h.values.iter().enumerate() {
            assert!((v + (2.0 * r.node(j)).cos() / 3.0).abs() < 1e-5);
        }
        let z = SampledFunction::from_fn(PI, 65, |_: f64| 0.0).unwrap();
        assert!(solve_ode_periodic(&z).unwrap().values.iter().all(|&v| v == 0.0));
        let bad = SampledFunction::from_fn(PI, 65, f64::cos).unwrap();
        assert!(solve_ode_periodic(&bad).is_err());
    }
}
