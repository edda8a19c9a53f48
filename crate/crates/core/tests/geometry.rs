use std::f64::consts::PI;

use iso_core::families;
use iso_core::functionals::{fraenkel_asymmetry, monte_carlo_area, monte_carlo_barycenter};
use iso_core::geometry::{perimeter_epsilon_estimate, FourierSeries};
use iso_core::{Point2, RadialShape, Shape, Stadium};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus() -> Vec<(&'static str, Shape<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut f = FourierSeries::<f64>::zero(3);
    f.cos[2] = 0.08;
    f.sin[3] = 0.03;
    let radial = RadialShape::from_fourier(f, 4096).unwrap().with_center(Point2::new(0.3, -0.1));
    vec![
        ("polygon", families::random_convex_polygon(&mut rng, 12)),
        ("radial", radial.into()),
        ("stadium", Stadium::new(0.5).unwrap().into()),
        ("dumbbell", families::dumbbell()),
        ("omega_10", families::fuglede_counterexample(10).unwrap().0),
    ]
}

#[test]
fn area_and_barycenter_agree_with_monte_carlo() {
    for (i, (name, s)) in corpus().into_iter().enumerate() {
        let seed = 1000 + i as u64;
        let a = monte_carlo_area(&s, 10_000_000, seed);
        assert!(a.agrees(s.area(), 3.0), "{name}: area {} vs {a:?}", s.area());
        let g = s.barycenter().unwrap();
        let (gx, gy) = monte_carlo_barycenter(&s, 10_000_000, seed);
        assert!(gx.agrees(g.x, 3.0) && gy.agrees(g.y, 3.0), "{name}: barycenter {g:?} vs {gx:?}, {gy:?}");
    }
}

#[test]
fn counterexample_area_is_pi() {
    let (s, _) = families::fuglede_counterexample::<f64>(10).unwrap();
    assert!((s.area() - PI).abs() < 1e-12);
}

#[test]
fn minkowski_estimate_tracks_the_exact_perimeter() {
    let eps = [0.2, 0.1, 0.05];
    for (name, s) in corpus() {
        let est = perimeter_epsilon_estimate(&s, &eps).unwrap();
        let exact = s.perimeter_minkowski();
        assert!((est / exact - 1.0).abs() < 0.03, "{name}: {est} vs {exact}");
    }
}

#[test]
fn normalization_keeps_all_three_functionals() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..6 {
        let count = rng.gen_range(3..15);
        let s = families::random_convex_polygon::<f64, _>(&mut rng, count)
            .similarity(rng.gen_range(0.3..3.0), Point2::origin(), Point2::new(rng.gen_range(-2.0..2.0), 1.0))
            .unwrap();
        let n = s.normalize().unwrap();
        let a = iso_core::evaluate(&s).unwrap();
        let b = iso_core::evaluate(&n).unwrap();
        assert!((a.delta - b.delta).abs() < 1e-9);
        assert!((a.lambda0 - b.lambda0).abs() < 1e-9);
        let (la, lb) = (fraenkel_asymmetry(&s).unwrap().value, fraenkel_asymmetry(&n).unwrap().value);
        assert!((la - lb).abs() < 1e-6, "{la} vs {lb}");
    }
}

#[test]
fn gradient_estimate_on_convex_profiles() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    while checked < 200 {
        let amp = rng.gen_range(0.005..0.3);
        let r = families::random_nearly_spherical::<f64, _>(&mut rng, amp, 8, 1024).unwrap();
        if !r.is_convex() {
            continue;
        }
        let u = r.sup_norm();
        if u >= 1.0 {
            continue;
        }
        let du = r.derivative().iter().fold(0.0f64, |m, d| m.max(d.abs()));
        assert!(du <= 2.0 * (1.0 + u) / (1.0 - u) * u.sqrt(), "‖u′‖ = {du}, ‖u‖ = {u}");
        checked += 1;
    }
}
