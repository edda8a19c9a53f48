use serde::{Deserialize, Serialize};

use super::clip::Edge;
use super::point::{point_segment_distance, Point2};
use crate::{Error, Real, Result};

/// Simple polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Polygon<T> {
    pub(crate) vertices: Vec<Point2<T>>,
}

impl<T: Real> Polygon<T> {
    /// Validates: at least three finite vertices, no repeated vertex, no
    /// self-intersection, positive signed area.
    pub fn new(vertices: Vec<Point2<T>>) -> Result<Self> {
        let p = Self { vertices };
        p.validate()?;
        Ok(p)
    }

    /// Skips the O(n²) simplicity check; for polygons that are simple by
    /// construction (hulls, star-shaped samplings).
    pub(crate) fn new_unchecked(vertices: Vec<Point2<T>>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point2<T>] {
        &self.vertices
    }

    pub fn validate(&self) -> Result<()> {
        let v = &self.vertices;
        let n = v.len();
        if n < 3 {
            return Err(Error::InvalidShape(format!("polygon needs at least 3 vertices, got {n}")));
        }
        if v.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidShape("polygon has non-finite coordinates".into()));
        }
        for i in 0..n {
            for j in i + 1..n {
                if v[i] == v[j] {
                    return Err(Error::InvalidShape(format!("polygon repeats vertex {i} at {j}")));
                }
            }
        }
        for i in 0..n {
            let (a, b) = (v[i], v[(i + 1) % n]);
            for j in i + 1..n {
                // adjacent edges share an endpoint
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                let (c, d) = (v[j], v[(j + 1) % n]);
                if segments_intersect(a, b, c, d) {
                    return Err(Error::InvalidShape(format!("polygon edges {i} and {j} intersect")));
                }
            }
        }
        if self.signed_area() <= T::zero() {
            return Err(Error::InvalidShape("polygon must be counterclockwise with positive area".into()));
        }
        Ok(())
    }

    pub fn signed_area(&self) -> T {
        let v = &self.vertices;
        let n = v.len();
        (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum::<T>() * T::half()
    }

    pub fn area(&self) -> T {
        self.signed_area()
    }

    pub fn centroid(&self) -> Point2<T> {
        let v = &self.vertices;
        let n = v.len();
        let (mut cx, mut cy) = (T::zero(), T::zero());
        for i in 0..n {
            let (a, b) = (v[i], v[(i + 1) % n]);
            let w = a.cross(b);
            cx = cx + (a.x + b.x) * w;
            cy = cy + (a.y + b.y) * w;
        }
        let k = T::one() / (T::lit(6.0) * self.signed_area());
        Point2::new(cx * k, cy * k)
    }

    pub fn perimeter(&self) -> T {
        let v = &self.vertices;
        let n = v.len();
        (0..n).map(|i| v[i].dist(v[(i + 1) % n])).sum()
    }

    pub fn edges(&self) -> Vec<Edge<T>> {
        let v = &self.vertices;
        let n = v.len();
        (0..n).map(|i| Edge::Line { a: v[i], b: v[(i + 1) % n] }).collect()
    }

    /// Closed membership: boundary points count as inside (within `tol`).
    pub fn contains(&self, p: Point2<T>, tol: T) -> bool {
        self.crossing_parity(p) || self.boundary_distance(p) <= tol
    }

    fn crossing_parity(&self, p: Point2<T>) -> bool {
        let v = &self.vertices;
        let n = v.len();
        let mut inside = false;
        let mut j = n - 1;
        for i in 0..n {
            let (a, b) = (v[i], v[j]);
            if (a.y > p.y) != (b.y > p.y) {
                let x = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
                if p.x < x {
                    inside = !inside;
                }
            }
            j = i;
        }
        inside
    }

    pub fn boundary_distance(&self, p: Point2<T>) -> T {
        let v = &self.vertices;
        let n = v.len();
        (0..n).map(|i| point_segment_distance(p, v[i], v[(i + 1) % n])).fold(T::infinity(), T::min)
    }

    pub fn is_convex(&self) -> bool {
        let v = &self.vertices;
        let n = v.len();
        (0..n).all(|i| (v[(i + 1) % n] - v[i]).cross(v[(i + 2) % n] - v[(i + 1) % n]) >= -T::geom_eps())
    }

    pub fn map(&self, f: impl Fn(Point2<T>) -> Point2<T>) -> Self {
        Self { vertices: self.vertices.iter().map(|&p| f(p)).collect() }
    }
}

fn orient<T: Real>(a: Point2<T>, b: Point2<T>, c: Point2<T>) -> T {
    (b - a).cross(c - a)
}

fn on_segment<T: Real>(a: Point2<T>, b: Point2<T>, p: Point2<T>) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed segment intersection test.
pub(crate) fn segments_intersect<T: Real>(a: Point2<T>, b: Point2<T>, c: Point2<T>, d: Point2<T>) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    let z = T::zero();
    if ((d1 > z && d2 < z) || (d1 < z && d2 > z)) && ((d3 > z && d4 < z) || (d3 < z && d4 > z)) {
        return true;
    }
    (d1 == z && on_segment(c, d, a))
        || (d2 == z && on_segment(c, d, b))
        || (d3 == z && on_segment(a, b, c))
        || (d4 == z && on_segment(a, b, d))
}
