//! Isoperimetric deficit, barycentric and Fraenkel asymmetry, the exact
//! symmetric difference with a disk, and the two-ball L¹ distance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geometry::{Point2, Shape};
use crate::numerics::quadrature::periodic_trapezoid;
use crate::numerics::simplex::{lex_cmp, nelder_mead, SimplexOptions};
use crate::{Error, Real, Result};

fn positive_area<T: Real>(s: &Shape<T>) -> Result<T> {
    let a = s.area();
    if a > T::zero() {
        Ok(a)
    } else {
        Err(Error::Degenerate("shape has zero area".into()))
    }
}

/// `δ = (P − 2√(π|s|)) / (2√(π|s|))` with the Minkowski perimeter.
pub fn deficit<T: Real>(s: &Shape<T>) -> Result<T> {
    let a = positive_area(s)?;
    let pb = T::two() * (T::PI() * a).sqrt();
    Ok((s.perimeter_minkowski() - pb) / pb)
}

/// `|s Δ B(c, r)|`.
///
/// Radial shapes whose centre coincides with `c` use `½∫|(1+u)² − r²| dθ`;
/// every other case goes through exact boundary clipping, where a radial
/// shape is represented by its inscribed sample polygon (area and overlap
/// both taken from the polygon, so the result is a genuine symmetric
/// difference).
pub fn symmetric_difference_with_disk<T: Real>(s: &Shape<T>, c: Point2<T>, r: T) -> Result<T> {
    if !(r > T::zero()) || !r.is_finite() {
        return Err(Error::Domain(format!("disk radius must be positive, got {r}")));
    }
    let disk = T::PI() * r * r;
    let v = match s {
        Shape::Radial(rad) if rad.center().dist(c) <= T::lit(1e3) * T::geom_eps() * r => {
            let r2 = r * r;
            let v: Vec<T> = rad.radii().iter().map(|&q| (q * q - r2).abs()).collect();
            T::half() * periodic_trapezoid(&v)
        }
        Shape::Radial(rad) => {
            let poly: Shape<T> = rad.polygon().into();
            poly.area() + disk - T::two() * poly.overlap_with_disk(c, r)
        }
        _ => s.area() + disk - T::two() * s.overlap_with_disk(c, r),
    };
    Ok(v.max(T::zero()))
}

/// `λ₀ = |s Δ B(x̄, √(|s|/π))| / |s|` with `x̄` the barycenter.
pub fn barycentric_asymmetry<T: Real>(s: &Shape<T>) -> Result<T> {
    let a = positive_area(s)?;
    let g = s.barycenter()?;
    Ok(symmetric_difference_with_disk(s, g, (a / T::PI()).sqrt())? / a)
}

#[derive(Debug, Clone, Copy)]
pub struct FraenkelOptions<T> {
    /// Grid step as a fraction of the diameter.
    pub grid_fraction: T,
    /// Position tolerance of the simplex refinement.
    pub x_tol: T,
    pub max_iter: usize,
    /// Number of best grid points refined.
    pub refine: usize,
}

impl<T: Real> Default for FraenkelOptions<T> {
    fn default() -> Self {
        FraenkelOptions { grid_fraction: T::lit(0.02), x_tol: T::lit(1e-6), max_iter: 2000, refine: 3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Fraenkel<T> {
    pub value: T,
    pub center: Point2<T>,
    /// False when a refinement hit the iteration cap; `value` is then the
    /// best found.
    pub converged: bool,
}

/// `λ = inf_y |s Δ B(y, √(|s|/π))| / |s|`.
pub fn fraenkel_asymmetry<T: Real>(s: &Shape<T>) -> Result<Fraenkel<T>> {
    fraenkel_asymmetry_with(s, FraenkelOptions::default())
}

/// Grid search over the bounding box followed by Nelder–Mead from the best
/// grid points and from the barycenter. Equal values are resolved towards
/// the lexicographically smallest centre.
pub fn fraenkel_asymmetry_with<T: Real>(s: &Shape<T>, opts: FraenkelOptions<T>) -> Result<Fraenkel<T>> {
    let a = positive_area(s)?;
    let r = (a / T::PI()).sqrt();
    let g = s.barycenter()?;
    // the polygon stands in for a radial shape off its centre; evaluate that once
    let work: Shape<T> = match s {
        Shape::Radial(rad) => rad.polygon().into(),
        _ => s.clone(),
    };
    let objective = |p: &[T; 2]| -> T {
        let c = Point2::new(p[0], p[1]);
        symmetric_difference_with_disk(&work, c, r).unwrap_or(T::infinity()) / a
    };

    let step = s.diameter() * opts.grid_fraction;
    let bb = s.bbox();
    let nx = (bb.width() / step).ceil().to_usize().unwrap_or(1).max(1);
    let ny = (bb.height() / step).ceil().to_usize().unwrap_or(1).max(1);
    let mut grid: Vec<([T; 2], T)> = (0..(nx + 1) * (ny + 1))
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k % (nx + 1), k / (nx + 1));
            let p = [bb.min.x + bb.width() * T::usz(i) / T::usz(nx), bb.min.y + bb.height() * T::usz(j) / T::usz(ny)];
            (p, objective(&p))
        })
        .collect();
    let order = |x: &([T; 2], T), y: &([T; 2], T)| {
        x.1.partial_cmp(&y.1).unwrap_or(std::cmp::Ordering::Equal).then_with(|| lex_cmp(&x.0, &y.0))
    };
    grid.sort_by(order);

    let simplex = SimplexOptions { initial_step: step * T::half(), x_tol: opts.x_tol, max_iter: opts.max_iter };
    let b0 = [g.x, g.y];
    let mut starts: Vec<[T; 2]> = grid.iter().take(opts.refine).map(|x| x.0).collect();
    starts.push(b0);
    let refined: Vec<_> = starts.par_iter().map(|&p| nelder_mead(objective, p, simplex)).collect();

    // the barycentric value is computed on the original shape and is a candidate
    let lambda0 = barycentric_asymmetry(s)?;
    let mut best = ([g.x, g.y], lambda0);
    let mut converged = true;
    for res in refined {
        converged &= res.converged;
        let cand = (res.x, res.value);
        if order(&cand, &best) == std::cmp::Ordering::Less {
            best = cand;
        }
    }
    Ok(Fraenkel { value: best.1.min(lambda0), center: Point2::new(best.0[0], best.0[1]), converged })
}

/// L¹ distance `|B₁ Δ B₂|` of two unit disks whose centres are `a` apart:
/// `4 arcsin(a/2) + 2a √(1 − a²/4)`.
pub fn two_ball_l1_distance<T: Real>(a: T) -> Result<T> {
    if !(a >= T::zero() && a <= T::two()) {
        return Err(Error::Domain(format!("centre distance must lie in [0, 2], got {a}")));
    }
    let h = a * T::half();
    Ok(T::lit(4.0) * h.asin() + T::two() * a * (T::one() - h * h).sqrt())
}

/// One row of functional values for a shape.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct FunctionalsReport<T> {
    pub area: T,
    pub perimeter: T,
    pub barycenter: Point2<T>,
    pub delta: T,
    pub lambda0: T,
    pub lambda: T,
    pub lambda_center: Point2<T>,
    pub lambda_converged: bool,
    pub diameter: T,
    pub ratio_lambda0: T,
    pub ratio_lambda: T,
}

impl<T: Real> FunctionalsReport<T> {
    pub const CSV_HEADER: &'static str = "area,perimeter,barycenter_x,barycenter_y,delta,lambda0,lambda,\
lambda_center_x,lambda_center_y,diameter,ratio_lambda0,ratio_lambda";

    pub fn csv_row(&self) -> String {
        let f = |x: T| format!("{:.15e}", x.to_f64_lossy());
        [
            self.area,
            self.perimeter,
            self.barycenter.x,
            self.barycenter.y,
            self.delta,
            self.lambda0,
            self.lambda,
            self.lambda_center.x,
            self.lambda_center.y,
            self.diameter,
            self.ratio_lambda0,
            self.ratio_lambda,
        ]
        .into_iter()
        .map(f)
        .collect::<Vec<_>>()
        .join(",")
    }
}

/// Ratio `num/den²`, NaN when the denominator vanishes.
pub fn ratio<T: Real>(num: T, den: T) -> T {
    if den > T::zero() {
        num / (den * den)
    } else {
        T::nan()
    }
}

/// All functionals of `s`.
pub fn evaluate<T: Real>(s: &Shape<T>) -> Result<FunctionalsReport<T>> {
    evaluate_with(s, FraenkelOptions::default())
}

pub fn evaluate_with<T: Real>(s: &Shape<T>, opts: FraenkelOptions<T>) -> Result<FunctionalsReport<T>> {
    s.validate()?;
    let area = positive_area(s)?;
    let delta = deficit(s)?;
    let lambda0 = barycentric_asymmetry(s)?;
    let fr = fraenkel_asymmetry_with(s, opts)?;
    Ok(FunctionalsReport {
        area,
        perimeter: s.perimeter_minkowski(),
        barycenter: s.barycenter()?,
        delta,
        lambda0,
        lambda: fr.value,
        lambda_center: fr.center,
        lambda_converged: fr.converged,
        diameter: s.diameter(),
        ratio_lambda0: ratio(delta, lambda0),
        ratio_lambda: ratio(delta, fr.value),
    })
}

/// Seeded Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_err: f64,
}

impl Estimate {
    pub fn agrees(&self, exact: f64, sigmas: f64) -> bool {
        (self.value - exact).abs() <= sigmas * self.std_err.max(f64::EPSILON * exact.abs().max(1.0))
    }
}

fn sample_box<T: Real>(
    s: &Shape<T>,
    extra: Option<(Point2<T>, T)>,
    n: usize,
    seed: u64,
    f: impl Fn(Point2<T>) -> f64 + Sync,
) -> (f64, f64, f64) {
    let mut bb = s.bbox();
    if let Some((c, r)) = extra {
        let d = crate::geometry::BBox { min: c - Point2::new(r, r), max: c + Point2::new(r, r) };
        bb = bb.union(d);
    }
    let box_area = (bb.width() * bb.height()).to_f64_lossy();
    const CHUNK: usize = 1 << 16;
    let chunks = n.div_ceil(CHUNK);
    let (sum, sum2) = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let m = CHUNK.min(n - k * CHUNK);
            let (mut s1, mut s2) = (0.0, 0.0);
            for _ in 0..m {
                let p = Point2::new(
                    bb.min.x + bb.width() * T::lit(rng.gen::<f64>()),
                    bb.min.y + bb.height() * T::lit(rng.gen::<f64>()),
                );
                let v = f(p);
                s1 += v;
                s2 += v * v;
            }
            (s1, s2)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    (sum, sum2, box_area)
}

fn finish(sum: f64, sum2: f64, n: usize, scale: f64) -> Estimate {
    let nf = n as f64;
    let mean = sum / nf;
    let var = (sum2 / nf - mean * mean).max(0.0);
    Estimate { value: scale * mean, std_err: scale * (var / nf).sqrt() }
}

/// Rejection-sampling estimate of `|s|`.
pub fn monte_carlo_area<T: Real>(s: &Shape<T>, n: usize, seed: u64) -> Estimate {
    let inside = s.membership();
    let (a, b, box_area) = sample_box(s, None, n, seed, |p| if inside(p) { 1.0 } else { 0.0 });
    finish(a, b, n, box_area)
}

/// Rejection-sampling estimate of the barycenter coordinates `(x̄, ȳ)`,
/// formed as ratios of the sampled first moments to the exact area.
pub fn monte_carlo_barycenter<T: Real>(s: &Shape<T>, n: usize, seed: u64) -> (Estimate, Estimate) {
    let area = s.area().to_f64_lossy();
    let inside = s.membership();
    let (ax, bx, box_area) = sample_box(s, None, n, seed, |p| if inside(p) { p.x.to_f64_lossy() } else { 0.0 });
    let (ay, by, _) = sample_box(s, None, n, seed, |p| if inside(p) { p.y.to_f64_lossy() } else { 0.0 });
    (finish(ax, bx, n, box_area / area), finish(ay, by, n, box_area / area))
}

/// Rejection-sampling estimate of `|s Δ B(c, r)|`.
pub fn monte_carlo_symmetric_difference<T: Real>(s: &Shape<T>, c: Point2<T>, r: T, n: usize, seed: u64) -> Estimate {
    let inside = s.membership();
    let (a, b, box_area) =
        sample_box(s, Some((c, r)), n, seed, |p| if inside(p) != (p.dist(c) <= r) { 1.0 } else { 0.0 });
    finish(a, b, n, box_area)
}
