use iso_core::families::{self, nearly_spherical_residuals};
use iso_core::functionals::{
    barycentric_asymmetry, deficit, monte_carlo_symmetric_difference, symmetric_difference_with_disk,
};
use iso_core::rearrangement::{decreasing_rearrangement, riesz_pair, riesz_tolerance, SampledFunction};
use iso_core::variational::nonlinear::j_full;
use iso_core::{Point2, Shape};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn polygon(seed: u64, count: usize) -> Shape<f64> {
    families::random_convex_polygon(&mut ChaCha8Rng::seed_from_u64(seed), count)
}

fn composite(seed: u64) -> Shape<f64> {
    families::random_composite(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn step_function(rng: &mut ChaCha8Rng, n: usize) -> SampledFunction<f64> {
    let pieces = rng.gen_range(2..7);
    let mut cuts: Vec<f64> = (0..pieces - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
    cuts.sort_by(|a, b| a.total_cmp(b));
    let levels: Vec<f64> = (0..pieces).map(|_| rng.gen_range(0.0..1.0)).collect();
    SampledFunction::from_fn(1.0, n, |x| levels[cuts.iter().filter(|&&c| c < x).count()]).unwrap()
}

fn descending(v: &[f64]) -> Vec<f64> {
    let mut v = v.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn deficit_and_asymmetry_are_similarity_invariant(
        seed in any::<u64>(),
        count in 3usize..30,
        k in 0.2f64..5.0,
        dx in -3.0f64..3.0,
        dy in -3.0f64..3.0,
    ) {
        let s = polygon(seed, count);
        let t = s.similarity(k, Point2::new(0.3, -0.2), Point2::new(dx, dy)).unwrap();
        prop_assert!((deficit(&s).unwrap() - deficit(&t).unwrap()).abs() < 1e-9);
        prop_assert!((barycentric_asymmetry(&s).unwrap() - barycentric_asymmetry(&t).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn composite_functionals_are_similarity_invariant(seed in any::<u64>(), k in 0.5f64..2.0, dx in -1.0f64..1.0) {
        let s = composite(seed);
        let t = s.similarity(k, Point2::origin(), Point2::new(dx, 0.5)).unwrap();
        prop_assert!((deficit(&s).unwrap() - deficit(&t).unwrap()).abs() < 1e-9);
        prop_assert!((barycentric_asymmetry(&s).unwrap() - barycentric_asymmetry(&t).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn diameter_is_at_most_half_the_perimeter(seed in any::<u64>(), count in 3usize..40) {
        for s in [polygon(seed, count), composite(seed)] {
            prop_assert!(s.diameter() <= s.perimeter_minkowski() / 2.0 + 1e-12);
        }
    }

    #[test]
    fn rearrangement_is_equimeasurable_and_decreasing(values in prop::collection::vec(-5.0f64..5.0, 8..120)) {
        let n = values.len();
        let f = SampledFunction::new(1.0, values).unwrap();
        let g = decreasing_rearrangement(&f);
        prop_assert_eq!(descending(&g.values), descending(&f.values));
        let mut by_distance: Vec<usize> = (0..n).collect();
        by_distance.sort_by_key(|&j| ((2 * j).abs_diff(n - 1), j));
        prop_assert!(by_distance.windows(2).all(|w| g.values[w[0]] >= g.values[w[1]]));
        for t in [-1.0, 0.0, 0.5, 2.0] {
            prop_assert_eq!(g.level_measure(t), f.level_measure(t));
        }
    }

    #[test]
    fn rearrangement_commutes_with_constant_shift(values in prop::collection::vec(-5.0f64..5.0, 8..120), c in -3.0f64..3.0) {
        let f = SampledFunction::new(1.0, values).unwrap();
        let shifted = SampledFunction::new(1.0, f.values.iter().map(|v| v + c).collect()).unwrap();
        let a = decreasing_rearrangement(&shifted).values;
        let b: Vec<f64> = decreasing_rearrangement(&f).values.iter().map(|v| v + c).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn projected_profiles_satisfy_the_constraints(seed in any::<u64>(), amp in 0.01f64..0.3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = families::random_nearly_spherical::<f64, _>(&mut rng, amp, 8, 1024).unwrap();
        prop_assert!(nearly_spherical_residuals(&r).iter().all(|x| x.abs() < 1e-10));
    }

    #[test]
    fn profile_quotient_matches_geometry(seed in any::<u64>(), amp in 0.01f64..0.1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = families::random_nearly_spherical::<f64, _>(&mut rng, amp, 6, 4096).unwrap();
        let s: Shape<f64> = r.clone().into();
        let geo = deficit(&s).unwrap() / barycentric_asymmetry(&s).unwrap().powi(2);
        let j = j_full(&r).unwrap();
        prop_assert!((j - geo).abs() <= 1e-4 * geo, "J = {j}, geometry = {geo}");
    }
}

#[test]
fn riesz_holds_on_random_step_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..100 {
        let f = step_function(&mut rng, 201);
        let g = step_function(&mut rng, 201);
        let h = step_function(&mut rng, 201);
        let (lhs, rhs) = riesz_pair(&f, &g, &h, 1.0).unwrap();
        assert!(lhs <= rhs + riesz_tolerance(&f), "case {case}: {lhs} > {rhs}");
    }
}

#[test]
fn symmetric_difference_agrees_with_monte_carlo() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..50 {
        let count = rng.gen_range(3..25);
        let s = families::random_convex_polygon::<f64, _>(&mut rng, count);
        let c = Point2::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let r = rng.gen_range(0.5..1.5);
        let exact = symmetric_difference_with_disk(&s, c, r).unwrap();
        let est = monte_carlo_symmetric_difference(&s, c, r, 10_000_000, case);
        assert!(est.agrees(exact, 3.0), "case {case}: exact {exact}, estimate {est:?}");
    }
    assert!((symmetric_difference_with_disk(&Shape::<f64>::unit_disk(), Point2::origin(), 1.0).unwrap()).abs() < 1e-12);
}
