//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so every line is printed; the process
//! exits non-zero when any criterion fails.

use std::f64::consts::{FRAC_PI_4, PI};
use std::process::ExitCode;
use std::time::Instant;

use iso_core::families::{self, ScanRecord};
use iso_core::functionals::{evaluate, two_ball_l1_distance};
use iso_core::geometry::clip::lens_area;
use iso_core::optimality::{eqop1_root, eqop2_root, optimality_residual};
use iso_core::rearrangement::{decreasing_rearrangement, riesz_pair, riesz_tolerance, SampledFunction};
use iso_core::variational::fixed_point::cos2_pattern;
use iso_core::variational::{
    convolve_arcs, kernel_h, norm_identity, norm_identity_discrete, opepl_solve_fixedpoint, opepl_solve_fourier,
    pattern_arcs, Barrier, FixedPointOptions, FourierOptions,
};
use iso_core::{Point2, Shape, Stadium};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const SEED: u64 = 20_240_917;

type Criterion = (&'static str, f64, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn stadium_optimum() -> Outcome {
    let a = eqop1_root::<f64>().unwrap_or(f64::NAN);
    let b = eqop2_root::<f64>().unwrap_or(f64::NAN);
    let ratio = families::stadium_profile(a).map(|r| r.ratio).unwrap_or(f64::NAN);
    let pass = (a - 0.5750).abs() <= 1e-3 && (a - b).abs() <= 1e-6 && (ratio - 0.406).abs() <= 1e-3;
    outcome(pass, format!("θ = {a:.10}, |eqop1 − eqop2| = {:.1e}, δ/λ₀² = {ratio:.6}", (a - b).abs()))
}

fn dumbbell() -> Outcome {
    let r = families::dumbbell_report::<f64>().expect("dumbbell");
    let closed = (2f64.sqrt() - 1.0) / 4.0 + 1.0 / (2.0 * PI);
    let pass = (r.ratio - closed).abs() <= 1e-5 && (r.lambda0 - 2.0).abs() <= 1e-10;
    outcome(
        pass,
        format!(
            "ratio = {:.10} vs closed form {closed:.10} (printed decimal 0.26274 differs by {:.1e}), λ₀ = {:.12}",
            r.ratio,
            (closed - 0.26274f64).abs(),
            r.lambda0
        ),
    )
}

fn counterexample() -> Outcome {
    let recs: Vec<(u64, Shape<f64>, ScanRecord<f64>)> = (2..=10_000u64)
        .into_par_iter()
        .map(|n| {
            let (s, r) = families::fuglede_counterexample(n).expect("counterexample");
            (n, s, r)
        })
        .collect();
    let mut geometry = 0.0f64;
    let mut bad_lambda = Vec::new();
    for (n, s, r) in &recs {
        geometry = geometry.max((s.area() - PI).abs()).max(s.barycenter().expect("barycenter").norm());
        if (r.lambda0 - 2.0).abs() > 1e-10 {
            bad_lambda.push(format!("n = {n}: λ₀ = {:.5}", r.lambda0));
        }
    }
    let not_monotone: Vec<u64> = recs.windows(2).filter(|w| w[1].2.delta >= w[0].2.delta).map(|w| w[1].0).collect();
    let last = recs.last().map(|x| x.2.delta).unwrap_or(f64::NAN);
    let pass = geometry <= 1e-10 && bad_lambda.is_empty() && not_monotone.is_empty();
    outcome(
        pass,
        format!(
            "area/barycentre deviation {geometry:.1e}; λ₀ ≠ 2 at [{}]; δ increases at n = {:?}; δ(10⁴) = {last:.3e}",
            bad_lambda.join("; "),
            not_monotone
        ),
    )
}

fn barrier() -> Outcome {
    let b = Barrier::continuous();
    let n = 10_000;
    let above = (0..=n).all(|i| {
        let x = PI * i as f64 / n as f64;
        b.eval(x) >= kernel_h(x) - 1e-12
    });
    let moment = b.star_moment();
    let q = FRAC_PI_4 * b.m_lower_bound();
    let pass = above && (moment - 0.2320).abs() <= 0.002 && q >= 0.41;
    outcome(pass, format!("M ≥ H: {above}, ∫(π − x)M*(x)dx = {moment:.6} (target 0.2320 ± 0.002), (π/4)m ≥ {q:.6}"))
}

fn bracket() -> Outcome {
    let (fourier, profile) = opepl_solve_fourier::<f64>(FourierOptions {
        harmonics: 256,
        grid: 16_384,
        restarts: 8,
        seed: SEED,
        ..Default::default()
    })
    .expect("fourier");
    let fixed = opepl_solve_fixedpoint::<f64>(&cos2_pattern(4096), FixedPointOptions::default()).expect("fixed point");
    let (fl, fr) = norm_identity(|t| profile.eval(t), 16_384);
    let arcs = pattern_arcs::<f64>(&fixed.sign_pattern);
    let (cl, cr) = norm_identity(|t| convolve_arcs(&arcs, t), 4096);
    let (dl, dr) = norm_identity_discrete(&fixed.u0);
    let lo = 0.5388 - 1e-3;
    let hi = 3.0 * PI / 16.0 + 1e-6;
    let in_bracket = [fourier.m, fixed.m].iter().all(|m| (lo..=hi).contains(m));
    let residual = fourier.residuals.max().max(fixed.residuals.max());
    let identity = (fl - fr).abs().max((cl - cr).abs()).max((dl - dr).abs());
    let pass = in_bracket && (fourier.m - fixed.m).abs() <= 1e-3 && identity <= 1e-6 && residual <= 1e-6;
    outcome(
        pass,
        format!(
            "m = {:.10} (fourier) / {:.10} (fixed point), identity gap {identity:.1e}, constraints {residual:.1e}",
            fourier.m, fixed.m
        ),
    )
}

fn random_shape(i: usize) -> (Shape<f64>, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    rng.set_stream(i as u64);
    match i % 3 {
        0 => {
            let k = rng.gen_range(3..40);
            (families::random_convex_polygon(&mut rng, k), false)
        }
        1 => {
            let amp = rng.gen_range(0.01..0.3);
            let r = families::random_nearly_spherical::<f64, _>(&mut rng, amp, 8, 1024).expect("projection");
            let small = r.is_convex() && r.sup_norm() <= 0.1;
            (r.into(), small)
        }
        _ => (families::random_composite(&mut rng), false),
    }
}

fn chain() -> Outcome {
    let count = 1000;
    let tol = 1e-9;
    let mut small = 0usize;
    let violations: Vec<String> = (0..count)
        .into_par_iter()
        .filter_map(|i| {
            let (s, small_convex) = random_shape(i);
            let r = match evaluate(&s) {
                Ok(r) => r,
                Err(e) => return Some(format!("shape {i}: {e}")),
            };
            let mut bad = Vec::new();
            if r.lambda > r.lambda0 + tol || r.lambda0 > 2.0 + tol {
                bad.push("λ ≤ λ₀ ≤ 2");
            }
            if r.delta < -tol {
                bad.push("δ ≥ 0");
            }
            if r.lambda > 1e-3 && r.delta / (r.lambda * r.lambda) < 0.02 {
                bad.push("δ/λ² ≥ 0.02");
            }
            if r.diameter > r.perimeter / 2.0 + tol {
                bad.push("diameter ≤ P/2");
            }
            if small_convex && r.delta < r.lambda0 * r.lambda0 / 16.0 - tol {
                bad.push("δ ≥ λ₀²/16");
            }
            (!bad.is_empty()).then(|| format!("shape {i}: {}", bad.join(", ")))
        })
        .collect();
    for i in (1..count).step_by(3) {
        small += random_shape(i).1 as usize;
    }
    outcome(
        violations.is_empty(),
        format!(
            "{count} shapes ({small} small convex radial), {} violations {:?}",
            violations.len(),
            violations.first()
        ),
    )
}

fn step_function(rng: &mut ChaCha8Rng, n: usize) -> SampledFunction<f64> {
    let pieces = rng.gen_range(2..7);
    let mut cuts: Vec<f64> = (0..pieces - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
    cuts.sort_by(|a, b| a.total_cmp(b));
    let levels: Vec<f64> = (0..pieces).map(|_| rng.gen_range(0.0..1.0)).collect();
    SampledFunction::from_fn(1.0, n, |x| levels[cuts.iter().filter(|&&c| c < x).count()]).expect("grid")
}

fn sorted(v: &[f64]) -> Vec<f64> {
    let mut v = v.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn riesz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let n = 201;
    let mut worst = f64::NEG_INFINITY;
    let mut exact = true;
    for _ in 0..100 {
        let f = step_function(&mut rng, n);
        let g = step_function(&mut rng, n);
        let h = step_function(&mut rng, n);
        let (l, r) = riesz_pair(&f, &g, &h, 1.0).expect("riesz");
        worst = worst.max(l - r - riesz_tolerance(&f));

        let fs = decreasing_rearrangement(&f);
        exact &= sorted(&fs.values) == sorted(&f.values);
        let mut by_distance: Vec<usize> = (0..n).collect();
        by_distance.sort_by_key(|&j| ((2 * j).abs_diff(n - 1), j));
        exact &= by_distance.windows(2).all(|w| fs.values[w[0]] >= fs.values[w[1]]);
        let c = rng.gen_range(-2.0..2.0);
        let shifted = SampledFunction::new(1.0, f.values.iter().map(|v| v + c).collect()).expect("grid");
        let lhs = decreasing_rearrangement(&shifted).values;
        exact &= lhs.iter().zip(&fs.values).all(|(a, b)| *a == b + c);
    }
    outcome(worst <= 0.0 && exact, format!("max (lhs − rhs − 10h²) = {worst:.3e}, grid properties exact: {exact}"))
}

fn near_ball() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for eps in [0.1, 0.05, 0.02] {
        let r = families::nearly_spherical_mode::<f64>(eps, 2, 4096).expect("projection");
        let rep = evaluate(&Shape::from(r)).expect("functionals");
        let q = rep.delta / (rep.lambda * rep.lambda);
        pass &= q >= 0.45;
        parts.push(format!("ε = {eps}: {q:.6}"));
    }
    outcome(pass, format!("δ/λ²: {}", parts.join(", ")))
}

fn optimality() -> Outcome {
    let root = eqop2_root::<f64>().expect("root");
    let opt = optimality_residual(&Shape::Stadium(Stadium::new(root).expect("stadium"))).expect("residual");
    let other = optimality_residual(&Shape::Stadium(Stadium::new(0.8).expect("stadium"))).expect("residual");
    let mode = Shape::from(families::nearly_spherical_mode::<f64>(0.05, 2, 4096).expect("projection"));
    let sym = optimality_residual(&mode).expect("residual");
    let mu = [opt.mu1, opt.mu2, other.mu1, other.mu2, sym.mu1, sym.mu2].iter().fold(0.0f64, |a, m| a.max(m.abs()));
    let pass = opt.max_abs_residual < 1e-4 && other.max_abs_residual > 1e-2 && mu <= 1e-8;
    outcome(
        pass,
        format!(
            "cap residual {:.1e} at the root, {:.3e} at θ = 0.8, max |μ̂| = {mu:.1e}",
            opt.max_abs_residual, other.max_abs_residual
        ),
    )
}

fn two_ball() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..=40 {
        let a = 0.05 * i as f64;
        let oracle = 2.0 * (PI - lens_area(Point2::origin(), 1.0, Point2::new(a, 0.0), 1.0));
        worst = worst.max((two_ball_l1_distance(a).expect("distance") - oracle).abs());
    }
    let slope: f64 = two_ball_l1_distance(1e-6).expect("distance") / 1e-6;
    outcome(
        worst <= 1e-8 && (slope - 4.0).abs() < 1e-5,
        format!("max error vs lens oracle {worst:.1e}, d(a)/a → {slope:.8}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 stadium optimum", 1.0, stadium_optimum),
        ("2 dumbbell", 1.0, dumbbell),
        ("3 counterexample", 5.0, counterexample),
        ("4 barrier bound", 10.0, barrier),
        ("5 variational bracket", 120.0, bracket),
        ("6 inequality chain", 300.0, chain),
        ("7 riesz suite", 30.0, riesz),
        ("8 near-ball limit", 60.0, near_ball),
        ("9 optimality residual", 10.0, optimality),
        ("10 two-ball distance", 1.0, two_ball),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let t = Instant::now();
        let o = run();
        let secs = t.elapsed().as_secs_f64();
        let slow = if secs > budget { format!(" (over the {budget} s budget)") } else { String::new() };
        failed += !o.pass as usize;
        println!("{} {name}: {} [{secs:.2} s{slow}]", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} criteria, {failed} failed", criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
