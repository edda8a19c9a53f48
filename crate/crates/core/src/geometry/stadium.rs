use serde::{Deserialize, Serialize};

use super::clip::Edge;
use super::point::{point_segment_distance, Point2};
use crate::{Error, Real, Result};

/// Area-π stadium centred at the origin: the rectangle `[−l, l] × [−r, r]`
/// capped by half-disks of radius `r = sin θ`, with
/// `l = π(1 − sin²θ)/(4 sin θ)`. `θ = π/2` is the unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Stadium<T> {
    pub(crate) theta: T,
}

impl<T: Real> Stadium<T> {
    pub fn new(theta: T) -> Result<Self> {
        let s = Self { theta };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let t = self.theta;
        if !(t > T::zero() && t <= T::FRAC_PI_2()) {
            return Err(Error::InvalidShape(format!("stadium angle must lie in (0, π/2], got {t}")));
        }
        Ok(())
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    /// Cap radius `sin θ`.
    pub fn radius(&self) -> T {
        self.theta.sin()
    }

    /// Half length of the straight sides.
    pub fn half_length(&self) -> T {
        let s = self.theta.sin();
        (T::PI() * (T::one() - s * s) / (T::lit(4.0) * s)).max(T::zero())
    }

    pub fn area(&self) -> T {
        let (r, l) = (self.radius(), self.half_length());
        T::lit(4.0) * l * r + T::PI() * r * r
    }

    pub fn perimeter(&self) -> T {
        T::lit(4.0) * self.half_length() + T::TAU() * self.radius()
    }

    pub fn diameter(&self) -> T {
        T::two() * (self.half_length() + self.radius())
    }

    pub fn edges(&self) -> [Edge<T>; 4] {
        let (r, l) = (self.radius(), self.half_length());
        let h = T::FRAC_PI_2();
        [
            Edge::Line { a: Point2::new(-l, -r), b: Point2::new(l, -r) },
            Edge::Arc { center: Point2::new(l, T::zero()), radius: r, start: -h, sweep: T::PI() },
            Edge::Line { a: Point2::new(l, r), b: Point2::new(-l, r) },
            Edge::Arc { center: Point2::new(-l, T::zero()), radius: r, start: h, sweep: T::PI() },
        ]
    }

    fn spine_distance(&self, p: Point2<T>) -> T {
        let l = self.half_length();
        point_segment_distance(p, Point2::new(-l, T::zero()), Point2::new(l, T::zero()))
    }

    pub fn contains(&self, p: Point2<T>, tol: T) -> bool {
        self.spine_distance(p) <= self.radius() + tol
    }

    pub fn distance_to(&self, p: Point2<T>) -> T {
        (self.spine_distance(p) - self.radius()).max(T::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn area_is_pi_for_every_angle() {
        for k in 1..=50 {
            let s = Stadium::new(k as f64 * std::f64::consts::FRAC_PI_2 / 50.0).unwrap();
            assert!((s.area() - std::f64::consts::PI).abs() < 1e-13);
            let t = s.theta();
            let closed = std::f64::consts::PI / t.sin() + std::f64::consts::PI * t.sin();
            assert!((s.perimeter() - closed).abs() < 1e-12);
        }
        assert!(Stadium::new(0.0f64).is_err());
        assert!(Stadium::new(1.6f64).is_err());
    }

    #[test]
    fn green_area_of_boundary() {
        let s = Stadium::new(0.575f64).unwrap();
        let a: f64 = s.edges().iter().map(|e| e.green(0.0, 1.0)).sum();
        assert!((a - std::f64::consts::PI).abs() < 1e-13);
    }
}
