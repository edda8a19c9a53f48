use serde::{Deserialize, Serialize};

use super::point::Point2;
use super::polygon::Polygon;
use crate::numerics::quadrature::periodic_trapezoid;
use crate::{Error, Real, Result};

/// Default number of profile samples.
pub const DEFAULT_SAMPLES: usize = 4096;

/// Truncated Fourier series `u(θ) = Σ_k cos[k]·cos kθ + sin[k]·sin kθ`,
/// `k = 0..len`. `sin[0]` is ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct FourierSeries<T> {
    pub cos: Vec<T>,
    pub sin: Vec<T>,
}

impl<T: Real> FourierSeries<T> {
    pub fn zero(harmonics: usize) -> Self {
        Self { cos: vec![T::zero(); harmonics + 1], sin: vec![T::zero(); harmonics + 1] }
    }

    pub fn harmonics(&self) -> usize {
        self.cos.len().max(self.sin.len()).saturating_sub(1)
    }

    fn coeff(&self, k: usize) -> (T, T) {
        let a = self.cos.get(k).copied().unwrap_or_else(T::zero);
        let b = if k == 0 { T::zero() } else { self.sin.get(k).copied().unwrap_or_else(T::zero) };
        (a, b)
    }

    /// `d`-th derivative of the series at `theta`, `d ∈ {0, 1, 2}`.
    pub fn eval_derivative(&self, theta: T, d: u32) -> T {
        let mut acc = T::zero();
        for k in 0..=self.harmonics() {
            let (a, b) = self.coeff(k);
            let kf = T::usz(k);
            let (s, c) = (kf * theta).sin_cos();
            acc = acc
                + match d {
                    0 => a * c + b * s,
                    1 => kf * (b * c - a * s),
                    _ => -kf * kf * (a * c + b * s),
                };
        }
        acc
    }

    pub fn eval(&self, theta: T) -> T {
        self.eval_derivative(theta, 0)
    }

    pub fn sample(&self, m: usize, d: u32) -> Vec<T> {
        let step = T::TAU() / T::usz(m);
        (0..m).map(|k| self.eval_derivative(step * T::usz(k), d)).collect()
    }
}

/// Star-shaped body `{center + t(1 + u(θ))e(θ) : t ∈ [0, 1]}`, with `u`
/// sampled at `θ_k = 2πk/M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct RadialShape<T> {
    #[serde(default = "Point2::origin")]
    pub(crate) center: Point2<T>,
    pub(crate) u_samples: Vec<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub(crate) fourier: Option<FourierSeries<T>>,
}

impl<T: Real> RadialShape<T> {
    pub fn new(u_samples: Vec<T>) -> Result<Self> {
        let s = Self { center: Point2::origin(), u_samples, fourier: None };
        s.validate()?;
        Ok(s)
    }

    pub fn from_fourier(series: FourierSeries<T>, m: usize) -> Result<Self> {
        let s = Self { center: Point2::origin(), u_samples: series.sample(m, 0), fourier: Some(series) };
        s.validate()?;
        Ok(s)
    }

    pub fn from_fn(m: usize, u: impl Fn(T) -> T) -> Result<Self> {
        let step = T::TAU() / T::usz(m);
        Self::new((0..m).map(|k| u(step * T::usz(k))).collect())
    }

    pub fn with_center(mut self, center: Point2<T>) -> Self {
        self.center = center;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.u_samples.len();
        if m < 16 || !m.is_multiple_of(2) {
            return Err(Error::InvalidShape(format!("radial profile needs an even sample count >= 16, got {m}")));
        }
        if !self.center.is_finite() {
            return Err(Error::InvalidShape("radial center is not finite".into()));
        }
        if let Some(k) = self.u_samples.iter().position(|u| !u.is_finite() || *u <= -T::one()) {
            return Err(Error::InvalidShape(format!("radial profile needs 1 + u > 0 (sample {k})")));
        }
        Ok(())
    }

    pub fn center(&self) -> Point2<T> {
        self.center
    }

    pub fn samples(&self) -> &[T] {
        &self.u_samples
    }

    pub fn fourier(&self) -> Option<&FourierSeries<T>> {
        self.fourier.as_ref()
    }

    pub fn len(&self) -> usize {
        self.u_samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u_samples.is_empty()
    }

    pub fn step(&self) -> T {
        T::TAU() / T::usz(self.len())
    }

    pub fn angle(&self, k: usize) -> T {
        self.step() * T::usz(k)
    }

    pub fn radii(&self) -> Vec<T> {
        self.u_samples.iter().map(|&u| T::one() + u).collect()
    }

    /// `u'` on the grid: exact from the Fourier series when present, fourth
    /// order central differences otherwise.
    pub fn derivative(&self) -> Vec<T> {
        self.derivative_n(1)
    }

    pub fn second_derivative(&self) -> Vec<T> {
        self.derivative_n(2)
    }

    fn derivative_n(&self, d: u32) -> Vec<T> {
        if let Some(f) = &self.fourier {
            return f.sample(self.len(), d);
        }
        let u = &self.u_samples;
        let m = u.len();
        let h = self.step();
        let at = |k: isize| u[k.rem_euclid(m as isize) as usize];
        (0..m as isize)
            .map(|k| match d {
                1 => (-at(k + 2) + T::lit(8.0) * at(k + 1) - T::lit(8.0) * at(k - 1) + at(k - 2)) / (T::lit(12.0) * h),
                _ => {
                    (-at(k + 2) + T::lit(16.0) * at(k + 1) - T::lit(30.0) * at(k) + T::lit(16.0) * at(k - 1)
                        - at(k - 2))
                        / (T::lit(12.0) * h * h)
                }
            })
            .collect()
    }

    /// `½ ∫ (1 + u)² dθ`.
    pub fn area(&self) -> T {
        let v: Vec<T> = self.radii().iter().map(|&r| r * r).collect();
        T::half() * periodic_trapezoid(&v)
    }

    /// `center + (1/(3|E|)) ∫ (1 + u)³ (cos θ, sin θ) dθ`.
    pub fn barycenter(&self) -> Point2<T> {
        let (mx, my) = self.third_moments();
        let k = T::one() / (T::lit(3.0) * self.area());
        self.center + Point2::new(mx * k, my * k)
    }

    /// `(∫ cos θ (1+u)³, ∫ sin θ (1+u)³)`.
    pub fn third_moments(&self) -> (T, T) {
        let m = self.len();
        let (mut cx, mut cy) = (Vec::with_capacity(m), Vec::with_capacity(m));
        for (k, r) in self.radii().into_iter().enumerate() {
            let (s, c) = self.angle(k).sin_cos();
            let r3 = r * r * r;
            cx.push(r3 * c);
            cy.push(r3 * s);
        }
        (periodic_trapezoid(&cx), periodic_trapezoid(&cy))
    }

    /// `∫ √((1+u)² + u'²) dθ`.
    pub fn perimeter(&self) -> T {
        let du = self.derivative();
        let v: Vec<T> = self.radii().iter().zip(&du).map(|(&r, &d)| (r * r + d * d).sqrt()).collect();
        periodic_trapezoid(&v)
    }

    pub fn boundary_point(&self, k: usize) -> Point2<T> {
        self.center + Point2::polar(self.angle(k)) * (T::one() + self.u_samples[k])
    }

    /// Closed membership in [`RadialShape::polygon`] in O(1): the polygon is
    /// star-shaped about the centre, so only the sector containing `p`
    /// matters.
    pub fn contains(&self, p: Point2<T>, tol: T) -> bool {
        let v = p - self.center;
        let m = self.len();
        let x = super::clip::wrap_tau(v.y.atan2(v.x)) / self.step();
        let k = x.floor().to_usize().unwrap_or(0) % m;
        let a = self.boundary_point(k);
        let b = self.boundary_point((k + 1) % m);
        let e = b - a;
        let side = e.cross(p - a);
        if side >= T::zero() {
            return true;
        }
        // near a vertex the sector lookup can pick the neighbouring edge
        let prev = self.boundary_point((k + m - 1) % m);
        let next = self.boundary_point((k + 2) % m);
        let d = [
            super::point::point_segment_distance(p, a, b),
            super::point::point_segment_distance(p, prev, a),
            super::point::point_segment_distance(p, b, next),
        ];
        d.into_iter().fold(T::infinity(), T::min) <= tol
    }

    /// The inscribed polygon through the boundary samples.
    pub fn polygon(&self) -> Polygon<T> {
        Polygon::new_unchecked((0..self.len()).map(|k| self.boundary_point(k)).collect())
    }

    /// Profile at an arbitrary angle: Fourier series if present, periodic
    /// linear interpolation otherwise.
    pub fn u_at(&self, theta: T) -> T {
        if let Some(f) = &self.fourier {
            return f.eval(theta);
        }
        let m = self.len();
        let x = super::clip::wrap_tau(theta) / self.step();
        let k = x.floor();
        let frac = x - k;
        let i = k.to_usize().unwrap_or(0) % m;
        let j = (i + 1) % m;
        self.u_samples[i] * (T::one() - frac) + self.u_samples[j] * frac
    }

    /// Uniform scaling by `k` about `fixed`.
    pub fn scaled_about(&self, k: T, fixed: Point2<T>) -> Self {
        let fourier = self.fourier.as_ref().map(|f| {
            let mut g = f.clone();
            for (i, c) in g.cos.iter_mut().enumerate() {
                *c = if i == 0 { k * (T::one() + *c) - T::one() } else { *c * k };
            }
            for s in g.sin.iter_mut() {
                *s = *s * k;
            }
            g
        });
        Self {
            center: fixed + (self.center - fixed) * k,
            u_samples: self.u_samples.iter().map(|&u| k * (T::one() + u) - T::one()).collect(),
            fourier,
        }
    }

    pub fn translated(&self, v: Point2<T>) -> Self {
        Self { center: self.center + v, ..self.clone() }
    }

    /// Signed curvature numerator `r² + 2r'² − r r''` at every sample; the
    /// body is convex iff it is non-negative.
    pub fn convexity_margin(&self) -> Vec<T> {
        let d1 = self.derivative();
        let d2 = self.second_derivative();
        self.radii().iter().zip(d1.iter().zip(&d2)).map(|(&r, (&a, &b))| r * r + T::two() * a * a - r * b).collect()
    }

    pub fn is_convex(&self) -> bool {
        self.convexity_margin().iter().all(|&c| c >= -T::lit(1e-9))
    }

    pub fn sup_norm(&self) -> T {
        self.u_samples.iter().fold(T::zero(), |a, &u| a.max(u.abs()))
    }
}
