//! Piecewise barrier `M ≥ H` on `[0, π]`, its decreasing rearrangement
//! `M*`, and the resulting lower bound on `m`.

use serde::{Deserialize, Serialize};

use super::kernel::kernel_h;

fn hk(x: f64) -> f64 {
    kernel_h::<f64>(x)
}
use crate::numerics::quadrature::adaptive_simpson;
use crate::numerics::roots::bisect;
use crate::Real;

/// Breakpoints `x₁ … x₅`.
pub const NODES: [f64; 5] = [0.355, 0.59, 1.3, 1.9, 2.25];

/// `M` is fixed by the coefficient of its last piece
/// `r₅(x) = −c (x − 2π + x₅)(x − x₅)`; every other piece is determined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Barrier {
    pub c5: f64,
}

impl Default for Barrier {
    fn default() -> Self {
        Barrier::continuous()
    }
}

impl Barrier {
    /// `c` chosen so `r₅(π) = H(x₁)`: `M` is continuous and its level
    /// measure above `H(x₁)` comes from the `H` piece alone.
    pub fn continuous() -> Self {
        let [x1, _, _, _, x5] = NODES;
        let pi = std::f64::consts::PI;
        Barrier { c5: hk(x1) / ((pi - x5) * (pi - x5)) }
    }

    /// `c = 1/0.99` taken literally: `M` jumps from `H(x₁) ≈ 0.08` to `≈ 0.80`
    /// at `x₁`.
    pub fn literal() -> Self {
        Barrier { c5: 1.0 / 0.99 }
    }

    pub fn r5(&self, x: f64) -> f64 {
        let x5 = NODES[4];
        -self.c5 * (x - std::f64::consts::TAU + x5) * (x - x5)
    }

    pub fn r1(&self, x: f64) -> f64 {
        let [x1, x2, ..] = NODES;
        self.r5(std::f64::consts::PI) / (x1 - x2) * (x - x2)
    }

    pub fn r2(&self, x: f64) -> f64 {
        let [_, x2, x3, ..] = NODES;
        (x - x2) * (x - (x2 + x3)) / 4.34
    }

    pub fn r3(&self, x: f64) -> f64 {
        -(x - 2.15) * (x - (NODES[2] - 0.85)) * self.r2(1.3) / (0.85 * 0.85)
    }

    pub fn r4(&self, x: f64) -> f64 {
        let [_, _, _, x4, x5] = NODES;
        self.r3(x4) / (x4 - x5) * (x - x5)
    }

    /// `M(x)` on `[0, π]`, extended evenly and 2π-periodically.
    pub fn eval(&self, x: f64) -> f64 {
        let x = fold(x);
        let [x1, x2, x3, x4, x5] = NODES;
        if x <= x1 {
            hk(x)
        } else if x <= x2 {
            self.r1(x)
        } else if x <= x3 {
            self.r2(x)
        } else if x <= x4 {
            self.r3(x)
        } else if x <= x5 {
            self.r4(x)
        } else {
            self.r5(x)
        }
    }

    /// Quadratic `q(x) = p0 + p1 x + p2 x²` of each polynomial piece with its
    /// interval.
    fn polynomial_pieces(&self) -> [([f64; 3], f64, f64); 5] {
        let [x1, x2, x3, x4, x5] = NODES;
        let pi = std::f64::consts::PI;
        let quad = |f: &dyn Fn(f64) -> f64| {
            // recover coefficients from three samples
            let (a, b, c) = (f(0.0), f(1.0), f(-1.0));
            [a, (b - c) / 2.0, (b + c) / 2.0 - a]
        };
        [
            (quad(&|x| self.r1(x)), x1, x2),
            (quad(&|x| self.r2(x)), x2, x3),
            (quad(&|x| self.r3(x)), x3, x4),
            (quad(&|x| self.r4(x)), x4, x5),
            (quad(&|x| self.r5(x)), x5, pi),
        ]
    }

    /// `μ(t) = |{x ∈ [0, π] : M(x) > t}|`, exactly piece by piece.
    pub fn level_measure(&self, t: f64) -> f64 {
        let x1 = NODES[0];
        // H is decreasing on [0, x₁]
        let h_part = if hk(x1) > t {
            x1
        } else if hk(0.0) <= t {
            0.0
        } else {
            bisect(|x| hk(x) - t, 0.0, x1, 1e-15).unwrap_or(0.0)
        };
        h_part + self.polynomial_pieces().iter().map(|&(p, a, b)| measure_above(p, a, b, t)).sum::<f64>()
    }

    pub fn max(&self) -> f64 {
        hk(0.0).max(self.r5(std::f64::consts::PI))
    }

    /// `M*(x) = sup{t : μ(t) > x}` for `x ∈ [0, π]`.
    pub fn star(&self, x: f64) -> f64 {
        let (mut lo, mut hi) = (-1.0, self.max());
        if x <= 0.0 {
            return hi;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.level_measure(mid) > x {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-15 {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// `∫₀^π (π − x) M*(x) dx`.
    pub fn star_moment(&self) -> f64 {
        let pi = std::f64::consts::PI;
        adaptive_simpson(|x| (pi - x) * self.star(x), 0.0, pi, 1e-11, 40)
    }

    /// `∫₀^π (π − x) M*(x) dx` from a sorted uniform sampling of `M`.
    pub fn star_moment_sorted(&self, n: usize) -> f64 {
        let pi = std::f64::consts::PI;
        let h = pi / n as f64;
        let mut v: Vec<f64> = (0..n).map(|i| self.eval((i as f64 + 0.5) * h)).collect();
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        v.iter().enumerate().map(|(i, &m)| (pi - (i as f64 + 0.5) * h) * m * h).sum()
    }

    /// `1 / (8 ∫₀^π (π − x) M*(x) dx)`.
    pub fn m_lower_bound(&self) -> f64 {
        1.0 / (8.0 * self.star_moment())
    }
}

/// `∫₀^π (π − x) H*(x) dx` with `H*` the decreasing rearrangement of `H` on
/// `[0, π]` (sorted midpoint sampling).
pub fn h_star_moment(n: usize) -> f64 {
    let pi = std::f64::consts::PI;
    let h = pi / n as f64;
    let mut v: Vec<f64> = (0..n).map(|i| hk((i as f64 + 0.5) * h)).collect();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v.iter().enumerate().map(|(i, &m)| (pi - (i as f64 + 0.5) * h) * m * h).sum()
}

fn fold(x: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let y = x.rem_euclid(tau);
    if y > std::f64::consts::PI {
        tau - y
    } else {
        y
    }
}

/// `|{x ∈ [a, b] : p0 + p1 x + p2 x² > t}|`.
fn measure_above(p: [f64; 3], a: f64, b: f64, t: f64) -> f64 {
    let q = |x: f64| p[0] + p[1] * x + p[2] * x * x - t;
    let mut cuts = vec![a];
    let (c0, c1, c2) = (p[0] - t, p[1], p[2]);
    if c2.abs() < 1e-300 {
        if c1 != 0.0 {
            cuts.push(-c0 / c1);
        }
    } else {
        let disc = c1 * c1 - 4.0 * c2 * c0;
        if disc >= 0.0 {
            let sq = disc.sqrt();
            // stable quadratic roots
            let qq = -0.5 * (c1 + c1.signum() * sq);
            if qq != 0.0 {
                cuts.push(qq / c2);
                cuts.push(c0 / qq);
            } else {
                cuts.push(0.0);
            }
        }
    }
    cuts.push(b);
    cuts.retain(|&x| x >= a && x <= b);
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.windows(2).filter(|w| q(0.5 * (w[0] + w[1])) > 0.0).map(|w| w[1] - w[0]).sum()
}

/// `M(x)` for the continuous barrier.
pub fn barrier_m<T: Real>(x: T) -> T {
    T::lit(Barrier::continuous().eval(x.to_f64_lossy()))
}

/// `M*(x)` for the continuous barrier, `x ∈ [0, π]`.
pub fn barrier_m_star<T: Real>(x: T) -> T {
    T::lit(Barrier::continuous().star(x.to_f64_lossy()))
}

/// `1 / (8 ∫₀^π (π − x) M*(x) dx)` for the continuous barrier.
pub fn m_lower_bound<T: Real>() -> T {
    T::lit(Barrier::continuous().m_lower_bound())
}

#[cfg(test)]
mod tests {
    use super::hk;
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn continuity_and_domination() {
        let b = Barrier::continuous();
        let [x1, x2, x3, x4, x5] = NODES;
        assert!((b.r1(x1) - hk(x1)).abs() < 1e-15);
        assert!(b.r1(x2).abs() < 1e-15 && b.r2(x2).abs() < 1e-15);
        assert!((b.r2(x3) - b.r3(x3)).abs() < 1e-15);
        assert!((b.r3(x4) - b.r4(x4)).abs() < 1e-15);
        assert!(b.r4(x5).abs() < 1e-15 && b.r5(x5).abs() < 1e-15);
        for i in 0..=10_000 {
            let x = PI * i as f64 / 10_000.0;
            assert!(b.eval(x) >= hk(x) - 1e-12, "x = {x}");
            if x <= x1 {
                assert_eq!(b.eval(x), hk(x));
            }
        }
    }

    #[test]
    fn star_is_decreasing_and_dominates() {
        let b = Barrier::continuous();
        let n = 2000;
        let h = PI / n as f64;
        let mut hv: Vec<f64> = (0..n).map(|i| hk((i as f64 + 0.5) * h)).collect();
        hv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mut prev = f64::INFINITY;
        for (i, hs) in hv.iter().enumerate() {
            let x = (i as f64 + 0.5) * h;
            let ms = b.star(x);
            assert!(ms <= prev + 1e-12);
            assert!(ms >= hs - 1e-9, "x = {x}: {ms} < {hs}");
            prev = ms;
        }
    }

    #[test]
    fn moment_matches_sorted_rearrangement() {
        let b = Barrier::continuous();
        let exact = b.star_moment();
        let sorted = b.star_moment_sorted(200_000);
        assert!((exact - sorted).abs() < 1e-6, "{exact} vs {sorted}");
        assert!(PI / 4.0 * b.m_lower_bound() > 0.41);
    }
}
