//! First-order optimality for convex minimizers of `δ/λ₀²`: the curvature
//! condition on strictly convex boundary parts, its multipliers, and the two
//! scalar equations whose common root is the optimal stadium.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::functionals::{barycentric_asymmetry, deficit};
use crate::geometry::{Point2, RadialShape, Shape, Stadium};
use crate::numerics::roots::{bisect, bisect_newton};
use crate::{Error, Real, Result};

/// Half-width (radians) of the window around each crossing of `∂Ω` and the
/// unit circle where no residual is sampled.
pub const CROSSING_WINDOW: f64 = 1e-3;

/// Samples per circular cap (stadium) or per turn (radial profile).
pub const RESIDUAL_SAMPLES: usize = 4096;

const PARTITION_SAMPLES: usize = 4096;

fn bracket<T: Real>() -> (T, T) {
    (T::lit(0.1), T::FRAC_PI_2() - T::lit(0.01))
}

/// Critical points of `θ ↦ δ/λ₀²` on stadia:
/// `8 sin θ (1 − sin θ)² − cos θ (π − 2θ − sin 2θ)`.
pub fn eqop1<T: Real>(theta: T) -> T {
    let s = theta.sin();
    T::lit(8.0) * s * (T::one() - s) * (T::one() - s)
        - theta.cos() * (T::PI() - T::two() * theta - (T::two() * theta).sin())
}

/// The curvature condition written on the caps of a stadium.
pub fn eqop2<T: Real>(theta: T) -> T {
    let s = theta.sin();
    let w = T::PI() - T::two() * theta;
    T::lit(4.0) * s - T::lit(1.5) * s * s - T::lit(2.5)
        + T::two() * (T::one() - s) * (T::one() - s) * w / (w - (T::two() * theta).sin())
}

pub fn eqop1_root<T: Real>() -> Result<T> {
    let (lo, hi) = bracket::<T>();
    bisect_newton(eqop1::<T>, lo, hi, T::lit(1e-10).max(T::geom_eps()))
}

pub fn eqop2_root<T: Real>() -> Result<T> {
    let (lo, hi) = bracket::<T>();
    bisect(eqop2::<T>, lo, hi, T::lit(1e-12).max(T::geom_eps()))
}

/// Number of strict sign changes of `f` on `n` uniform points of `[lo, hi]`.
pub fn grid_sign_changes<T: Real, F: Fn(T) -> T>(f: F, lo: T, hi: T, n: usize) -> usize {
    let v: Vec<T> = (0..n).map(|i| f(lo + (hi - lo) * T::usz(i) / T::usz(n - 1))).filter(|x| *x != T::zero()).collect();
    v.windows(2).filter(|w| w[0].signum() != w[1].signum()).count()
}

/// The unit circle split by a shape into `∂B ∩ Ω` and `∂B ∩ Ωᶜ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct CirclePartition<T> {
    pub arcs_in: Vec<(T, T)>,
    pub arcs_out: Vec<(T, T)>,
    pub len_in: T,
    pub len_out: T,
    /// `∫ cos`, `∫ sin` over the inside arcs.
    pub cos_in: T,
    pub sin_in: T,
    pub cos_out: T,
    pub sin_out: T,
    /// Angles where the circle touches `∂Ω` without crossing it.
    pub grazing: Vec<T>,
}

impl<T: Real> CirclePartition<T> {
    /// Endpoints of the arcs: the crossings of `∂Ω` with the circle.
    pub fn crossings(&self) -> Vec<T> {
        let mut v: Vec<T> = self.arcs_in.iter().map(|a| a.0).collect();
        v.extend(self.arcs_in.iter().map(|a| crate::geometry::clip::wrap_tau(a.1)));
        v
    }
}

/// Positive inside, negative outside; continuous for stadia and radial
/// shapes, a bare indicator for the rest.
fn containment<T: Real>(s: &Shape<T>, p: Point2<T>) -> T {
    match s {
        Shape::Stadium(st) => {
            let l = st.half_length();
            let q = Point2::new(p.x.max(-l).min(l), T::zero());
            st.radius() - p.dist(q)
        }
        Shape::Radial(r) => {
            let d = p - r.center();
            r.u_at(d.angle()) + T::one() - d.norm()
        }
        _ => {
            if s.contains(p) {
                T::one()
            } else {
                -T::one()
            }
        }
    }
}

pub fn circle_partition<T: Real>(s: &Shape<T>) -> Result<CirclePartition<T>> {
    s.validate()?;
    let n = PARTITION_SAMPLES;
    let tol = T::lit(1e2) * T::epsilon();
    let f = |phi: T| containment(s, Point2::polar(phi));
    let angle = |i: usize| T::TAU() * T::usz(i) / T::usz(n);
    let vals: Vec<T> = (0..n).map(|i| f(angle(i))).collect();
    // closed containment: the boundary counts as inside
    let inside: Vec<bool> = vals.iter().map(|&v| v >= -tol).collect();
    let mut grazing = Vec::new();
    for i in 0..n {
        let (a, b, c) = (vals[(i + n - 1) % n], vals[i], vals[(i + 1) % n]);
        if b.abs() <= tol && a.abs() > tol && c.abs() > tol && a.signum() == c.signum() {
            grazing.push(angle(i));
        }
    }
    let g = |phi: T| if f(phi) >= -tol { T::one() } else { -T::one() };
    let mut cuts: Vec<(T, bool)> = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        if inside[i] != inside[j] {
            let lo = angle(i);
            let hi = lo + T::TAU() / T::usz(n);
            let z = bisect(g, lo, hi, T::lit(4.0) * T::epsilon()).unwrap_or((lo + hi) * T::half());
            // `true` marks the start of an inside arc
            cuts.push((z, inside[j]));
        }
    }
    let mut out = CirclePartition {
        arcs_in: Vec::new(),
        arcs_out: Vec::new(),
        len_in: T::zero(),
        len_out: T::zero(),
        cos_in: T::zero(),
        sin_in: T::zero(),
        cos_out: T::zero(),
        sin_out: T::zero(),
        grazing,
    };
    let push = |out: &mut CirclePartition<T>, a: T, b: T, is_in: bool| {
        let (c, s, l) = (b.sin() - a.sin(), a.cos() - b.cos(), b - a);
        if is_in {
            out.arcs_in.push((a, b));
            out.len_in = out.len_in + l;
            out.cos_in = out.cos_in + c;
            out.sin_in = out.sin_in + s;
        } else {
            out.arcs_out.push((a, b));
            out.len_out = out.len_out + l;
            out.cos_out = out.cos_out + c;
            out.sin_out = out.sin_out + s;
        }
    };
    if cuts.is_empty() {
        push(&mut out, T::zero(), T::TAU(), inside[0]);
        return Ok(out);
    }
    let k = cuts.len();
    for i in 0..k {
        let (a, is_in) = cuts[i];
        let b = if i + 1 < k { cuts[i + 1].0 } else { cuts[0].0 + T::TAU() };
        push(&mut out, a, b, is_in);
    }
    Ok(out)
}

/// One boundary sample of the curvature condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ResidualSample<T> {
    /// Polar angle of the boundary point about the origin.
    pub angle: T,
    pub point: Point2<T>,
    pub curvature: T,
    pub predicted: T,
    pub residual: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct OptimalityReport<T> {
    pub delta: T,
    pub lambda0: T,
    pub mu1: T,
    pub mu2: T,
    pub partition: CirclePartition<T>,
    pub samples: Vec<ResidualSample<T>>,
    pub max_abs_residual: T,
    /// Samples dropped near a crossing of `∂Ω` with the circle.
    pub skipped: usize,
}

impl<T: Real> OptimalityReport<T> {
    pub const CSV_HEADER: &'static str = "angle,x,y,curvature,predicted,residual";

    pub fn csv_rows(&self) -> Vec<String> {
        self.samples
            .iter()
            .map(|s| {
                [s.angle, s.point.x, s.point.y, s.curvature, s.predicted, s.residual]
                    .iter()
                    .map(|x| format!("{:.15e}", x.to_f64_lossy()))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect()
    }
}

/// `(point, curvature)` along the strictly convex parts of the boundary.
fn curvature_samples<T: Real>(s: &Shape<T>) -> Result<Vec<(Point2<T>, T)>> {
    let n = RESIDUAL_SAMPLES;
    match s {
        Shape::Stadium(st) => Ok(stadium_caps(st, n)),
        Shape::Radial(r) => radial_curvature(r, n),
        _ => Err(Error::Unsupported(format!(
            "curvature needs an analytic boundary (stadium or Fourier radial profile), got a {}",
            s.kind()
        ))),
    }
}

fn stadium_caps<T: Real>(st: &Stadium<T>, n: usize) -> Vec<(Point2<T>, T)> {
    let (r, l) = (st.radius(), st.half_length());
    let k = T::one() / r;
    let mut out = Vec::with_capacity(2 * n);
    for side in [T::one(), -T::one()] {
        let c = Point2::new(side * l, T::zero());
        for i in 0..n {
            // open half-circle, away from the junctions with the flat sides
            let t = -T::FRAC_PI_2() + T::PI() * (T::usz(i) + T::half()) / T::usz(n);
            let dir = Point2::new(side * t.cos(), t.sin());
            out.push((c + dir * r, k));
        }
    }
    out
}

fn radial_curvature<T: Real>(r: &RadialShape<T>, n: usize) -> Result<Vec<(Point2<T>, T)>> {
    let f = r
        .fourier()
        .ok_or_else(|| Error::Unsupported("radial curvature needs the Fourier form of the profile".into()))?;
    let flat = T::lit(1e-9);
    Ok((0..n)
        .filter_map(|i| {
            let t = T::TAU() * T::usz(i) / T::usz(n);
            let rho = T::one() + f.eval(t);
            let d1 = f.eval_derivative(t, 1);
            let d2 = f.eval_derivative(t, 2);
            let q = rho * rho + d1 * d1;
            let k = (rho * rho + T::two() * d1 * d1 - rho * d2) / (q * q.sqrt());
            (k > flat).then(|| (r.center() + Point2::polar(t) * rho, k))
        })
        .collect())
}

fn angular_gap<T: Real>(a: T, b: T) -> T {
    let d = crate::geometry::clip::wrap_tau(a - b);
    d.min(T::TAU() - d)
}

/// Evaluates `C − [1 − 3δ + (4δ/(2πλ₀))(|∂B^OUT| − |∂B^IN|) ± 4δ/λ₀ + μ̂₁x + μ̂₂y]`
/// on the strictly convex parts of a convex, normalized shape, with `+`
/// outside the unit disk and `−` inside.
pub fn optimality_residual<T: Real>(s: &Shape<T>) -> Result<OptimalityReport<T>> {
    s.validate()?;
    if !s.is_convex() {
        return Err(Error::InvalidShape("the optimality condition is stated for convex sets".into()));
    }
    let norm_tol = T::lit(1e-6).max(T::lit(1e3) * T::geom_eps());
    let g = s.barycenter()?;
    if (s.area() - T::PI()).abs() > norm_tol || g.norm() > norm_tol {
        return Err(Error::Domain(format!(
            "shape must be normalized (area π, barycenter 0); got area {}, barycenter ({}, {})",
            s.area(),
            g.x,
            g.y
        )));
    }
    let delta = deficit(s)?;
    let lambda0 = barycentric_asymmetry(s)?;
    if !(lambda0 > T::zero()) {
        return Err(Error::Degenerate("the condition is void for the disk (λ₀ = 0)".into()));
    }
    let partition = circle_partition(s)?;
    let w = T::lit(4.0) * delta / lambda0;
    let mu1 = w / T::PI() * (partition.cos_out - partition.cos_in);
    let mu2 = w / T::PI() * (partition.sin_out - partition.sin_in);
    let base = T::one() - T::lit(3.0) * delta + w / T::TAU() * (partition.len_out - partition.len_in);
    let crossings = partition.crossings();
    let window = T::lit(CROSSING_WINDOW);
    let on_circle = T::lit(1e2) * T::geom_eps();
    let raw = curvature_samples(s)?;
    let evaluated: Vec<Option<ResidualSample<T>>> = raw
        .par_iter()
        .map(|&(p, k)| {
            let angle = crate::geometry::clip::wrap_tau(p.angle());
            let radius = p.norm();
            if (radius - T::one()).abs() <= on_circle || crossings.iter().any(|&c| angular_gap(angle, c) < window) {
                return None;
            }
            let sign = if radius > T::one() { T::one() } else { -T::one() };
            let predicted = base + sign * w + mu1 * p.x + mu2 * p.y;
            Some(ResidualSample { angle, point: p, curvature: k, predicted, residual: k - predicted })
        })
        .collect();
    let skipped = evaluated.iter().filter(|e| e.is_none()).count();
    let samples: Vec<ResidualSample<T>> = evaluated.into_iter().flatten().collect();
    let max_abs_residual = samples.iter().fold(T::zero(), |a, x| a.max(x.residual.abs()));
    Ok(OptimalityReport { delta, lambda0, mu1, mu2, partition, samples, max_abs_residual, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::stadium_profile;
    use std::f64::consts::PI;

    #[test]
    fn roots_agree() {
        let a = eqop1_root::<f64>().unwrap();
        let b = eqop2_root::<f64>().unwrap();
        assert!((a - 0.5750).abs() < 1e-3);
        assert!((a - b).abs() < 1e-6);
        assert!(eqop1(a).abs() < 1e-10);
        assert!((stadium_profile(a).unwrap().ratio - 0.406).abs() < 1e-3);
        assert_eq!(grid_sign_changes(eqop2::<f64>, 0.05, PI / 2.0 - 0.01, 10_000), 1);
    }

    #[test]
    fn partition_of_disk_and_stadium() {
        let d = circle_partition(&Shape::<f64>::unit_disk()).unwrap();
        assert!((d.len_in - 2.0 * PI).abs() < 1e-12 && d.arcs_out.is_empty());
        let t = 0.575;
        let p = circle_partition(&Shape::Stadium(Stadium::new(t).unwrap())).unwrap();
        assert!((p.len_out - 2.0 * (PI - 2.0 * t)).abs() < 1e-10, "{p:?}");
        assert!((p.len_in + p.len_out - 2.0 * PI).abs() < 1e-10);
        assert_eq!(p.arcs_in.len(), 2);
        assert!(p.cos_in.abs() < 1e-12 && p.sin_out.abs() < 1e-12);
    }

    #[test]
    fn stadium_residuals() {
        let opt = Shape::Stadium(Stadium::new(eqop2_root::<f64>().unwrap()).unwrap());
        let r = optimality_residual(&opt).unwrap();
        assert!(r.max_abs_residual < 1e-4, "{}", r.max_abs_residual);
        assert!(r.mu1.abs() < 1e-8 && r.mu2.abs() < 1e-8);
        let other = optimality_residual(&Shape::Stadium(Stadium::new(0.8).unwrap())).unwrap();
        assert!(other.max_abs_residual > 1e-2);
    }

    #[test]
    fn polygons_are_rejected() {
        let sq = crate::Polygon::new(vec![
            Point2::new(-1.0, -1.0),
            Point2::new(1.0, -1.0),
            Point2::new(1.0, 1.0),
            Point2::new(-1.0, 1.0),
        ])
        .unwrap();
        let s: Shape<f64> = Shape::from(sq).normalize().unwrap();
        assert!(matches!(optimality_residual(&s), Err(Error::Unsupported(_))));
    }
}
