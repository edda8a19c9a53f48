//! The invariant suite behind `iso verify all`.

use std::f64::consts::{FRAC_PI_4, PI};
use std::time::Instant;

use anyhow::Result;
use iso_core::families::{self, Family};
use iso_core::functionals::{evaluate, evaluate_with, two_ball_l1_distance, FraenkelOptions};
use iso_core::geometry::clip::lens_area;
use iso_core::optimality::{eqop1_root, eqop2_root, optimality_residual};
use iso_core::output::scan_csv;
use iso_core::rearrangement::{riesz_pair, riesz_tolerance, SampledFunction};
use iso_core::variational::fixed_point::cos2_pattern;
use iso_core::variational::{
    convolve_arcs, kernel_h, norm_identity, norm_identity_discrete, opepl_solve_fixedpoint, opepl_solve_fourier,
    pattern_arcs, Barrier, FixedPointOptions, FourierOptions,
};
use iso_core::{Point2, Shape, Stadium};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::args::EmitKind;

pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let t = Instant::now();
    let (pass, detail) = match f() {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e:#}")),
    };
    Check { name, pass, detail, seconds: t.elapsed().as_secs_f64() }
}

pub fn run_all(seed: u64, shapes: usize) -> Vec<Check> {
    vec![
        check("stadium roots", stadium_roots),
        check("dumbbell", dumbbell),
        check("counterexample n = 4..2000", counterexample),
        check("barrier bound", barrier),
        check("linearized solvers", linearized),
        check("inequality chain", || chain(seed, shapes)),
        check("riesz inequality", || riesz(seed)),
        check("two-ball distance", two_ball),
        check("optimality residual", optimality),
        check("shape round trip", round_trip),
        check("scan determinism", determinism),
    ]
}

pub fn print_table(checks: &[Check]) {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in checks {
        println!(
            "{:<width$}  {}  {:>7.2}s  {}",
            c.name,
            if c.pass { "PASS" } else { "FAIL" },
            c.seconds,
            c.detail,
            width = width
        );
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    println!("{} checks, {} failed", checks.len(), failed);
}

fn stadium_roots() -> Result<(bool, String)> {
    let a = eqop1_root::<f64>()?;
    let b = eqop2_root::<f64>()?;
    let ratio = families::stadium_profile(a)?.ratio;
    let pass = (a - 0.5750).abs() < 1e-3 && (a - b).abs() < 1e-6 && (ratio - 0.406).abs() < 1e-3;
    Ok((pass, format!("θ = {a:.10}, |Δθ| = {:.1e}, δ/λ₀² = {ratio:.6}", (a - b).abs())))
}

fn dumbbell() -> Result<(bool, String)> {
    let r = families::dumbbell_report::<f64>()?;
    let exact = families::dumbbell_ratio::<f64>();
    let pass = (r.lambda0 - 2.0).abs() < 1e-12 && (r.ratio - exact).abs() < 1e-10;
    Ok((pass, format!("λ₀ = {:.15}, ratio = {:.10}", r.lambda0, r.ratio)))
}

fn counterexample() -> Result<(bool, String)> {
    let recs: Vec<(Shape<f64>, families::ScanRecord<f64>)> =
        (4..=2000u64).into_par_iter().map(families::fuglede_counterexample).collect::<iso_core::Result<_>>()?;
    let mut worst = 0.0f64;
    for (s, r) in &recs {
        let g = s.barycenter()?;
        worst = worst.max((s.area() - PI).abs()).max(g.norm()).max((r.lambda0 - 2.0).abs());
    }
    let monotone = recs.windows(2).all(|w| w[1].1.delta < w[0].1.delta && w[1].1.ratio < w[0].1.ratio);
    let last = recs.last().map(|x| x.1.delta).unwrap_or(f64::NAN);
    Ok((
        worst < 1e-10 && monotone,
        format!("max deviation {worst:.1e}, δ decreasing: {monotone}, δ(2000) = {last:.3e} (λ₀ < 2 at n = 2, 3)"),
    ))
}

fn barrier() -> Result<(bool, String)> {
    let b = Barrier::continuous();
    let n = 10_000;
    let above = (0..=n).all(|i| {
        let x = PI * i as f64 / n as f64;
        b.eval(x) >= kernel_h(x) - 1e-12
    });
    let moment = b.star_moment();
    let q = FRAC_PI_4 * b.m_lower_bound();
    let pass = above && q > 0.41 && (moment - b.star_moment_sorted(200_000)).abs() < 1e-6;
    Ok((pass, format!("M ≥ H: {above}, ∫(π − x)M* = {moment:.8}, (π/4)m ≥ {q:.6}")))
}

fn linearized() -> Result<(bool, String)> {
    let (fourier, profile) =
        opepl_solve_fourier::<f64>(FourierOptions { harmonics: 128, grid: 8192, restarts: 8, ..Default::default() })?;
    let fixed = opepl_solve_fixedpoint::<f64>(&cos2_pattern(4096), FixedPointOptions::default())?;
    let (fl, fr) = norm_identity(|t| profile.eval(t), 8192);
    let (dl, dr) = norm_identity_discrete(&fixed.u0);
    let arcs = pattern_arcs::<f64>(&fixed.sign_pattern);
    let (cl, cr) = norm_identity(|t| convolve_arcs(&arcs, t), 4096);
    let lo = 0.5388 - 1e-3;
    let hi = 3.0 * PI / 16.0 + 1e-6;
    let in_bracket = [fourier.m, fixed.m].iter().all(|m| (lo..=hi).contains(m));
    let residual = fourier.residuals.max().max(fixed.residuals.max());
    let identity = (fl - fr).abs().max((dl - dr).abs()).max((cl - cr).abs());
    let pass = in_bracket && (fourier.m - fixed.m).abs() < 1e-3 && residual < 1e-6 && identity < 1e-6;
    Ok((
        pass,
        format!("m = {:.8} / {:.8}, identity gap {identity:.1e}, constraints {residual:.1e}", fourier.m, fixed.m),
    ))
}

fn chain(seed: u64, count: usize) -> Result<(bool, String)> {
    let shapes: Vec<(Shape<f64>, bool)> = (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            match i % 3 {
                0 => {
                    let k = rng.gen_range(3..40);
                    Ok((families::random_convex_polygon(&mut rng, k), false))
                }
                1 => {
                    let amp = rng.gen_range(0.01..0.3);
                    let r = families::random_nearly_spherical::<f64, _>(&mut rng, amp, 8, 1024)?;
                    let small = r.is_convex() && r.sup_norm() <= 0.1;
                    Ok((r.into(), small))
                }
                _ => Ok((families::random_composite(&mut rng), false)),
            }
        })
        .collect::<iso_core::Result<_>>()?;
    let violations: Vec<String> = shapes
        .par_iter()
        .enumerate()
        .filter_map(|(i, (s, small_convex))| {
            let r = match evaluate(s) {
                Ok(r) => r,
                Err(e) => return Some(format!("shape {i}: {e}")),
            };
            let tol = 1e-9;
            let mut bad = Vec::new();
            if r.lambda > r.lambda0 + tol {
                bad.push("λ > λ₀");
            }
            if r.lambda0 > 2.0 + tol {
                bad.push("λ₀ > 2");
            }
            if r.delta < -tol {
                bad.push("δ < 0");
            }
            if r.lambda > 1e-3 && r.delta / (r.lambda * r.lambda) < 0.02 {
                bad.push("δ/λ² < 0.02");
            }
            if r.diameter > r.perimeter / 2.0 + tol {
                bad.push("diameter > P/2");
            }
            if *small_convex && r.delta < r.lambda0 * r.lambda0 / 16.0 - tol {
                bad.push("δ < λ₀²/16");
            }
            (!bad.is_empty()).then(|| format!("shape {i}: {}", bad.join(", ")))
        })
        .collect();
    Ok((
        violations.is_empty(),
        match violations.first() {
            None => format!("{count} shapes, no violations"),
            Some(v) => format!("{} violations, first: {v}", violations.len()),
        },
    ))
}

/// Non-negative step function on `[−T, T]` with a few random levels.
pub fn random_step_function(rng: &mut ChaCha8Rng, n: usize) -> SampledFunction<f64> {
    let pieces = rng.gen_range(2..7);
    let mut cuts: Vec<f64> = (0..pieces - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let levels: Vec<f64> = (0..pieces).map(|_| rng.gen_range(0.0..1.0)).collect();
    SampledFunction::from_fn(1.0, n, |x| levels[cuts.iter().filter(|&&c| c < x).count()]).expect("valid grid")
}

fn riesz(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..20 {
        let f = random_step_function(&mut rng, 201);
        let g = random_step_function(&mut rng, 201);
        let h = random_step_function(&mut rng, 201);
        let (l, r) = riesz_pair(&f, &g, &h, 1.0)?;
        worst = worst.max(l - r - riesz_tolerance(&f));
    }
    Ok((worst <= 0.0, format!("max (lhs − rhs − tol) = {worst:.3e} over 20 triples")))
}

fn two_ball() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for i in 0..=40 {
        let a = 0.05 * i as f64;
        let oracle = 2.0 * (PI - lens_area(Point2::origin(), 1.0, Point2::new(a, 0.0), 1.0));
        worst = worst.max((two_ball_l1_distance(a)? - oracle).abs());
    }
    let slope: f64 = two_ball_l1_distance(1e-6)? / 1e-6;
    Ok((worst < 1e-8 && (slope - 4.0).abs() < 1e-5, format!("max error {worst:.1e}, d(a)/a → {slope:.8}")))
}

fn optimality() -> Result<(bool, String)> {
    let opt = optimality_residual(&Shape::Stadium(Stadium::new(eqop2_root::<f64>()?)?))?;
    let other = optimality_residual(&Shape::Stadium(Stadium::new(0.8)?))?;
    let pass =
        opt.max_abs_residual < 1e-4 && other.max_abs_residual > 1e-2 && opt.mu1.abs() < 1e-8 && opt.mu2.abs() < 1e-8;
    Ok((
        pass,
        format!("optimal cap residual {:.1e}, θ = 0.8 residual {:.3e}", opt.max_abs_residual, other.max_abs_residual),
    ))
}

fn round_trip() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for kind in [EmitKind::Disk, EmitKind::Stadium, EmitKind::Dumbbell, EmitKind::Counterexample, EmitKind::NearSphere]
    {
        let s = crate::commands::emitted_shape(kind, None)?;
        let back = Shape::<f64>::from_json(&s.to_json())?;
        let opts = FraenkelOptions::default();
        let a = evaluate_with(&s, opts)?;
        let b = evaluate_with(&back, opts)?;
        for (x, y) in [
            (a.area, b.area),
            (a.perimeter, b.perimeter),
            (a.delta, b.delta),
            (a.lambda0, b.lambda0),
            (a.lambda, b.lambda),
        ] {
            worst = worst.max((x - y).abs());
        }
    }
    Ok((worst <= 1e-12, format!("max functional change {worst:.1e}")))
}

fn determinism() -> Result<(bool, String)> {
    let a = scan_csv(&families::scan(Family::Counterexample, 2.0, 200.0, 50)?);
    let b = scan_csv(&families::scan(Family::Counterexample, 2.0, 200.0, 50)?);
    let c = scan_csv(&families::scan(Family::Stadium, 0.1, 1.5, 100)?);
    let d = scan_csv(&families::scan(Family::Stadium, 0.1, 1.5, 100)?);
    Ok((a == b && c == d, "repeated scans are byte-identical".into()))
}
