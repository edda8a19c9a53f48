use super::point::Point2;
use crate::Real;

/// Convex hull by Andrew's monotone chain, counterclockwise, without
/// collinear points.
pub fn convex_hull<T: Real>(points: &[Point2<T>]) -> Vec<Point2<T>> {
    let mut pts: Vec<Point2<T>> = points.to_vec();
    pts.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap().then(a.y.partial_cmp(&b.y).unwrap()));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point2<T>> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point2<T>>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 {
                let n = hull.len();
                if (hull[n - 1] - hull[n - 2]).cross(p - hull[n - 2]) <= T::zero() {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Diameter of a point set: rotating calipers over its convex hull.
pub fn diameter_of_points<T: Real>(points: &[Point2<T>]) -> T {
    let hull = convex_hull(points);
    let n = hull.len();
    match n {
        0 | 1 => return T::zero(),
        2 => return hull[0].dist(hull[1]),
        _ => {}
    }
    let area2 = |a: Point2<T>, b: Point2<T>, c: Point2<T>| (b - a).cross(c - a).abs();
    let mut best = T::zero();
    let mut j = 1;
    for i in 0..n {
        let ni = (i + 1) % n;
        while area2(hull[i], hull[ni], hull[(j + 1) % n]) > area2(hull[i], hull[ni], hull[j]) {
            j = (j + 1) % n;
        }
        best = best.max(hull[i].dist(hull[j])).max(hull[ni].dist(hull[j]));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calipers_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let pts: Vec<Point2<f64>> =
                (0..40).map(|_| Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-2.0..2.0))).collect();
            let mut brute: f64 = 0.0;
            for a in &pts {
                for b in &pts {
                    brute = brute.max(a.dist(*b));
                }
            }
            assert!((diameter_of_points(&pts) - brute).abs() < 1e-12);
        }
    }
}
