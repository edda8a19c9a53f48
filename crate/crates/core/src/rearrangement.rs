//! Symmetric decreasing rearrangement of sampled functions on `[−T, T]` and
//! the periodic Riesz rearrangement inequality.

use serde::{Deserialize, Serialize};

use crate::{Error, Real, Result};

/// Values at the uniform nodes `x_j = −T + 2Tj/(n − 1)`, `j = 0..n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct SampledFunction<T> {
    pub half_width: T,
    pub values: Vec<T>,
}

impl<T: Real> SampledFunction<T> {
    pub fn new(half_width: T, values: Vec<T>) -> Result<Self> {
        let f = Self { half_width, values };
        f.validate()?;
        Ok(f)
    }

    pub fn from_fn(half_width: T, n: usize, f: impl Fn(T) -> T) -> Result<Self> {
        let h = T::two() * half_width / T::usz(n.max(2) - 1);
        Self::new(half_width, (0..n).map(|j| f(-half_width + h * T::usz(j))).collect())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.half_width > T::zero()) || !self.half_width.is_finite() {
            return Err(Error::Domain(format!("half width must be positive, got {}", self.half_width)));
        }
        if self.values.len() < 8 {
            return Err(Error::Domain(format!("need at least 8 nodes, got {}", self.values.len())));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("sampled values must be finite".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn step(&self) -> T {
        T::two() * self.half_width / T::usz(self.len() - 1)
    }

    pub fn node(&self, j: usize) -> T {
        -self.half_width + self.step() * T::usz(j)
    }

    pub fn weights(&self) -> Vec<T> {
        let h = self.step();
        let n = self.len();
        (0..n).map(|j| if j == 0 || j + 1 == n { h * T::half() } else { h }).collect()
    }

    /// Trapezoid integral over `[−T, T]`.
    pub fn integral(&self) -> T {
        self.weights().iter().zip(&self.values).map(|(&w, &v)| w * v).sum()
    }

    /// `h · #{j : f_j > t}`, the grid distribution function. Every node
    /// counts with weight `h`, so any permutation of the samples keeps it.
    pub fn level_measure(&self, t: T) -> T {
        self.step() * T::usz(self.values.iter().filter(|&&v| v > t).count())
    }

    /// `2T`-periodic linear interpolation.
    pub fn periodic_at(&self, x: T) -> T {
        let p = T::two() * self.half_width;
        let mut y = (x + self.half_width) % p;
        if y < T::zero() {
            y = y + p;
        }
        let s = y / self.step();
        let i = s.floor().to_usize().unwrap_or(0).min(self.len() - 2);
        let frac = s - T::usz(i);
        self.values[i] * (T::one() - frac) + self.values[i + 1] * frac
    }

    fn same_grid(&self, o: &Self) -> bool {
        self.len() == o.len() && (self.half_width - o.half_width).abs() <= T::geom_eps() * self.half_width
    }
}

/// Symmetric decreasing rearrangement on the same grid.
///
/// A permutation of the samples: values in decreasing order (ties by node
/// index) fill the nodes in increasing `|x|`, the left node of each
/// symmetric pair first. The discrete distribution function is preserved
/// exactly; evenness holds up to one rank.
pub fn decreasing_rearrangement<T: Real>(f: &SampledFunction<T>) -> SampledFunction<T> {
    let n = f.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| f.values[b].partial_cmp(&f.values[a]).unwrap_or(std::cmp::Ordering::Equal).then(a.cmp(&b)));
    let mut slots: Vec<usize> = (0..n).collect();
    slots.sort_by_key(|&j| ((2 * j).abs_diff(n - 1), j));
    let mut values = vec![T::zero(); n];
    for (&slot, &src) in slots.iter().zip(&order) {
        values[slot] = f.values[src];
    }
    SampledFunction { half_width: f.half_width, values }
}

/// `∬ f(t) g(t − θ) h(θ) dt dθ` by tensor trapezoid quadrature, with `g`
/// extended `2T`-periodically.
pub fn triple_integral<T: Real>(f: &SampledFunction<T>, g: &SampledFunction<T>, h: &SampledFunction<T>) -> T {
    let n = f.len();
    let w = f.weights();
    let mut acc = T::zero();
    for i in 0..n {
        let mut inner = T::zero();
        for j in 0..n {
            inner = inner + w[j] * f.values[j] * g.periodic_at(f.node(j) - f.node(i));
        }
        acc = acc + w[i] * h.values[i] * inner;
    }
    acc
}

/// Left and right sides of the Riesz inequality: the triple integral for
/// `(f, g, h)` and for their rearrangements.
pub fn riesz_pair<T: Real>(
    f: &SampledFunction<T>,
    g: &SampledFunction<T>,
    h: &SampledFunction<T>,
    half_width: T,
) -> Result<(T, T)> {
    for s in [f, g, h] {
        s.validate()?;
        if !s.same_grid(f) || (s.half_width - half_width).abs() > T::geom_eps() * half_width {
            return Err(Error::GridMismatch("f, g, h must share T and node count".into()));
        }
    }
    let lhs = triple_integral(f, g, h);
    let rhs = triple_integral(&decreasing_rearrangement(f), &decreasing_rearrangement(g), &decreasing_rearrangement(h));
    Ok((lhs, rhs))
}

/// Quadrature tolerance `10 h²` for comparing the two sides.
pub fn riesz_tolerance<T: Real>(f: &SampledFunction<T>) -> T {
    let h = f.step();
    T::lit(10.0) * h * h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn constant_and_abs() {
        let c = SampledFunction::from_fn(1.0, 101, |_| 2.5).unwrap();
        assert_eq!(decreasing_rearrangement(&c), c);
        // |x| takes each value twice, so the permutation is off 1 − |x| by
        // at most one step
        let f = SampledFunction::from_fn(1.0, 101, f64::abs).unwrap();
        let expect = SampledFunction::from_fn(1.0, 101, |x: f64| 1.0 - x.abs()).unwrap();
        let r = decreasing_rearrangement(&f);
        assert!(close(&r.values, &expect.values, f.step() + 1e-12));
        assert_eq!(r.values[50], 1.0);
    }

    #[test]
    fn indicator_recentres() {
        let f =
            SampledFunction::from_fn(1.0, 201, |x: f64| if (0.2 - 1e-9..=0.7 + 1e-9).contains(&x) { 1.0 } else { 0.0 })
                .unwrap();
        let r = decreasing_rearrangement(&f);
        let expect =
            SampledFunction::from_fn(1.0, 201, |x: f64| if x.abs() <= 0.25 + 1e-9 { 1.0 } else { 0.0 }).unwrap();
        assert_eq!(r.values, expect.values);
    }

    #[test]
    fn even_grid_is_nearly_even_and_monotone() {
        let f = SampledFunction::from_fn(1.0, 64, |x: f64| (5.0 * x).sin() + x * x).unwrap();
        let r = decreasing_rearrangement(&f);
        let n = r.len();
        for j in n / 2..n - 1 {
            assert!(r.values[j + 1] <= r.values[j]);
            // mirror node holds the neighbouring order statistic
            let m = n - 1 - j;
            assert!(r.values[m] >= r.values[j] && (m == 0 || r.values[m - 1] <= r.values[j]));
        }
        assert_eq!(r.values[n / 2 - 1], f.values.iter().cloned().fold(f64::MIN, f64::max));
        let mut a = f.values.clone();
        let mut b = r.values.clone();
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        b.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn riesz_trivial_cases() {
        let one = SampledFunction::from_fn(1.0f64, 41, |_| 1.0).unwrap();
        let (l, r) = riesz_pair(&one, &one, &one, 1.0).unwrap();
        assert!((l - 4.0).abs() < 1e-12 && (r - 4.0).abs() < 1e-12);
        let bump = SampledFunction::from_fn(1.0, 41, |x: f64| 1.0 - x * x).unwrap();
        let g = SampledFunction::from_fn(1.0, 41, |x: f64| (std::f64::consts::PI * x).cos()).unwrap();
        let (l, r) = riesz_pair(&bump, &g, &bump, 1.0).unwrap();
        assert!((l - r).abs() < riesz_tolerance(&bump));
        let short = SampledFunction::from_fn(1.0, 21, |_| 1.0).unwrap();
        assert!(matches!(riesz_pair(&one, &short, &one, 1.0), Err(Error::GridMismatch(_))));
    }
}
