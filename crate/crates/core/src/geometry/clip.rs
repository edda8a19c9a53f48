//! Exact area of the intersection of a curvilinear region (straight edges
//! and circular arcs) with a disk, by Green's theorem over the boundary of
//! the intersection: the part of the region's boundary inside the disk plus
//! the part of the circle inside the region.

use super::point::Point2;
use crate::Real;

/// Positively oriented boundary piece. Arcs always run counterclockwise
/// (`sweep > 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Edge<T> {
    Line { a: Point2<T>, b: Point2<T> },
    Arc { center: Point2<T>, radius: T, start: T, sweep: T },
}

impl<T: Real> Edge<T> {
    pub fn point_at(&self, s: T) -> Point2<T> {
        match *self {
            Edge::Line { a, b } => a.lerp(b, s),
            Edge::Arc { center, radius, start, sweep } => center + Point2::polar(start + s * sweep) * radius,
        }
    }

    pub fn length(&self) -> T {
        match *self {
            Edge::Line { a, b } => a.dist(b),
            Edge::Arc { radius, sweep, .. } => radius * sweep,
        }
    }

    /// `½ ∫ (x dy − y dx)` over the sub-piece `s ∈ [s0, s1]`.
    pub fn green(&self, s0: T, s1: T) -> T {
        match *self {
            Edge::Line { .. } => T::half() * self.point_at(s0).cross(self.point_at(s1)),
            Edge::Arc { center, radius, start, sweep } => {
                let p0 = start + s0 * sweep;
                let p1 = start + s1 * sweep;
                arc_green(center, radius, p0, p1)
            }
        }
    }

    /// First moments `(½∮x² dy, −½∮y² dx)` over the full edge; summing over a
    /// closed boundary gives `(∫x dA, ∫y dA)`.
    pub fn first_moments(&self) -> (T, T) {
        match *self {
            Edge::Line { a, b } => {
                // exact for linear x(s), y(s)
                let dy = b.y - a.y;
                let dx = b.x - a.x;
                let third = T::one() / T::lit(3.0);
                let x2 = (a.x * a.x + a.x * b.x + b.x * b.x) * third;
                let y2 = (a.y * a.y + a.y * b.y + b.y * b.y) * third;
                (T::half() * x2 * dy, -T::half() * y2 * dx)
            }
            Edge::Arc { center, radius, start, sweep } => {
                let (c, r) = (center, radius);
                let (p0, p1) = (start, start + sweep);
                // x = cx + r cos φ, dy = r cos φ dφ;  y = cy + r sin φ, dx = −r sin φ dφ
                let i_cos = p1.sin() - p0.sin();
                let i_sin = -(p1.cos() - p0.cos());
                let i_cos2 = T::half() * sweep + T::lit(0.25) * ((T::two() * p1).sin() - (T::two() * p0).sin());
                let i_sin2 = T::half() * sweep - T::lit(0.25) * ((T::two() * p1).sin() - (T::two() * p0).sin());
                let i_cos3 = i_cos - (p1.sin().powi(3) - p0.sin().powi(3)) / T::lit(3.0);
                let i_sin3 = i_sin + (p1.cos().powi(3) - p0.cos().powi(3)) / T::lit(3.0);
                let mx = T::half() * r * (c.x * c.x * i_cos + T::two() * c.x * r * i_cos2 + r * r * i_cos3);
                let my = T::half() * r * (c.y * c.y * i_sin + T::two() * c.y * r * i_sin2 + r * r * i_sin3);
                (mx, my)
            }
        }
    }

    /// Parameters in the open interval `(0, 1)` where the edge meets the
    /// circle `|p − c| = ρ`.
    pub fn circle_crossings(&self, c: Point2<T>, rho: T) -> Vec<T> {
        let eps = T::geom_eps();
        let mut out = Vec::new();
        match *self {
            Edge::Line { a, b } => {
                let d = b - a;
                let f = a - c;
                let qa = d.norm2();
                if qa == T::zero() {
                    return out;
                }
                let qb = T::two() * d.dot(f);
                let qc = f.norm2() - rho * rho;
                let disc = qb * qb - T::lit(4.0) * qa * qc;
                if disc < T::zero() {
                    return out;
                }
                let sq = disc.sqrt();
                // numerically stable pair of roots
                let q = -T::half() * (qb + qb.signum() * sq);
                let mut roots = Vec::with_capacity(2);
                if q != T::zero() {
                    roots.push(q / qa);
                    roots.push(qc / q);
                } else {
                    roots.push(T::zero());
                }
                for s in roots {
                    if s > eps && s < T::one() - eps {
                        out.push(s);
                    }
                }
            }
            Edge::Arc { center, radius, start, sweep } => {
                for phi in circle_circle_angles(center, radius, c, rho) {
                    let s = wrap_tau(phi - start) / sweep;
                    if s > eps && s < T::one() - eps {
                        out.push(s);
                    }
                }
            }
        }
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out
    }
}

/// `½ ∫ (x dy − y dx)` along the circle `(c, r)` from angle `p0` to `p1`.
pub fn arc_green<T: Real>(c: Point2<T>, r: T, p0: T, p1: T) -> T {
    T::half() * (r * r * (p1 - p0) + r * (c.x * (p1.sin() - p0.sin()) - c.y * (p1.cos() - p0.cos())))
}

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_tau<T: Real>(a: T) -> T {
    let tau = T::TAU();
    let w = a % tau;
    if w < T::zero() {
        w + tau
    } else {
        w
    }
}

/// Polar angles (about `c0`) of the intersection points of circles
/// `(c0, r0)` and `(c1, r1)`. Coincident and disjoint circles give none.
pub fn circle_circle_angles<T: Real>(c0: Point2<T>, r0: T, c1: Point2<T>, r1: T) -> Vec<T> {
    let eps = T::geom_eps() * (r0 + r1);
    let dv = c1 - c0;
    let d = dv.norm();
    if d <= eps || d > r0 + r1 + eps || d < (r0 - r1).abs() - eps {
        return Vec::new();
    }
    let a = (r0 * r0 - r1 * r1 + d * d) / (T::two() * d);
    let h2 = r0 * r0 - a * a;
    let base = dv.angle();
    if h2 <= T::zero() {
        return vec![base];
    }
    let spread = (a / r0).max(-T::one()).min(T::one()).acos();
    vec![base - spread, base + spread]
}

/// Area of `region ∩ disk(c, ρ)` where `region` is bounded by the positively
/// oriented closed chain `edges` and `contains` is a closed membership test
/// for the region.
pub fn disk_overlap<T: Real, F: Fn(Point2<T>) -> bool>(edges: &[Edge<T>], contains: F, c: Point2<T>, rho: T) -> T {
    let tol = T::geom_eps() * rho.max(T::one());
    let mut total = T::zero();
    let mut angles: Vec<T> = Vec::new();

    for e in edges {
        let crossings = e.circle_crossings(c, rho);
        let mut cuts = Vec::with_capacity(crossings.len() + 2);
        cuts.push(T::zero());
        cuts.extend(crossings.iter().copied());
        cuts.push(T::one());
        for w in cuts.windows(2) {
            if w[1] - w[0] <= T::zero() {
                continue;
            }
            let mid = e.point_at((w[0] + w[1]) * T::half());
            if mid.dist(c) < rho - tol {
                total = total + e.green(w[0], w[1]);
            }
        }
        for s in crossings {
            angles.push((e.point_at(s) - c).angle());
        }
        let start = e.point_at(T::zero());
        if (start.dist(c) - rho).abs() <= tol {
            angles.push((start - c).angle());
        }
    }

    if angles.is_empty() {
        if contains(c + Point2::new(rho, T::zero())) {
            total = total + T::PI() * rho * rho;
        }
        return total;
    }
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    angles.dedup_by(|a, b| (*a - *b).abs() <= tol / rho);
    let n = angles.len();
    for i in 0..n {
        let a0 = angles[i];
        let a1 = if i + 1 < n { angles[i + 1] } else { angles[0] + T::TAU() };
        if a1 - a0 <= T::zero() {
            continue;
        }
        let mid = (a0 + a1) * T::half();
        if contains(c + Point2::polar(mid) * rho) {
            total = total + arc_green(c, rho, a0, a1);
        }
    }
    total
}

/// Area of intersection of two disks (the lens), exact.
pub fn lens_area<T: Real>(c0: Point2<T>, r0: T, c1: Point2<T>, r1: T) -> T {
    let d = c0.dist(c1);
    let tol = T::geom_eps() * r0.max(r1);
    if d >= r0 + r1 - tol {
        return T::zero();
    }
    if d <= (r0 - r1).abs() + tol {
        let r = r0.min(r1);
        return T::PI() * r * r;
    }
    let a0 = ((d * d + r0 * r0 - r1 * r1) / (T::two() * d * r0)).max(-T::one()).min(T::one()).acos();
    let a1 = ((d * d + r1 * r1 - r0 * r0) / (T::two() * d * r1)).max(-T::one()).min(T::one()).acos();
    let k = ((-d + r0 + r1) * (d + r0 - r1) * (d - r0 + r1) * (d + r0 + r1)).max(T::zero()).sqrt();
    r0 * r0 * a0 + r1 * r1 * a1 - T::half() * k
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Point2<f64>;

    fn square_edges() -> Vec<Edge<f64>> {
        let v = [P::new(0.0, 0.0), P::new(1.0, 0.0), P::new(1.0, 1.0), P::new(0.0, 1.0)];
        (0..4).map(|i| Edge::Line { a: v[i], b: v[(i + 1) % 4] }).collect()
    }

    fn in_square(p: P) -> bool {
        (-1e-12..=1.0 + 1e-12).contains(&p.x) && (-1e-12..=1.0 + 1e-12).contains(&p.y)
    }

    #[test]
    fn quarter_disk_in_square() {
        let a = disk_overlap(&square_edges(), in_square, P::new(0.0, 0.0), 0.5);
        assert!((a - std::f64::consts::PI * 0.25 / 4.0).abs() < 1e-14);
    }

    #[test]
    fn square_inside_large_disk_and_disk_inside_square() {
        let a = disk_overlap(&square_edges(), in_square, P::new(0.5, 0.5), 10.0);
        assert!((a - 1.0).abs() < 1e-13);
        let a = disk_overlap(&square_edges(), in_square, P::new(0.5, 0.5), 0.2);
        assert!((a - std::f64::consts::PI * 0.04).abs() < 1e-14);
    }

    #[test]
    fn disk_through_vertex() {
        // circle centred at a corner passing through two other corners' edges
        let a = disk_overlap(&square_edges(), in_square, P::new(0.0, 0.0), 1.0);
        assert!((a - std::f64::consts::FRAC_PI_4).abs() < 1e-13);
    }

    #[test]
    fn lens_matches_generic_clipper() {
        let c0 = P::new(0.0, 0.0);
        let edges = [Edge::Arc { center: c0, radius: 1.0, start: 0.0, sweep: std::f64::consts::TAU }];
        for &d in &[0.0, 0.3, 1.0, 1.7, 2.5] {
            let c1 = P::new(d, 0.2);
            let g = disk_overlap(&edges, |p: P| p.norm() <= 1.0 + 1e-12, c1, 0.8);
            let l = lens_area(c0, 1.0, c1, 0.8);
            assert!((g - l).abs() < 1e-12, "d={d}: {g} vs {l}");
        }
    }

    #[test]
    fn arc_moments_match_polygonization() {
        let e = Edge::Arc { center: P::new(0.3, -0.2), radius: 0.7, start: 0.4, sweep: 2.0 };
        let n = 20000;
        let (mut mx, mut my) = (0.0, 0.0);
        for i in 0..n {
            let l = Edge::Line { a: e.point_at(i as f64 / n as f64), b: e.point_at((i + 1) as f64 / n as f64) };
            let (a, b) = l.first_moments();
            mx += a;
            my += b;
        }
        let (ex, ey) = e.first_moments();
        assert!((mx - ex).abs() < 1e-7 && (my - ey).abs() < 1e-7);
    }
}
