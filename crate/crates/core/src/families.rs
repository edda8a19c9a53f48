//! Explicit shape families: stadia, the dumbbell, the disconnected
//! two-disk sequence, nearly spherical profiles, and seeded random corpora.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::functionals::{barycentric_asymmetry, deficit, fraenkel_asymmetry, ratio};
use crate::geometry::hull::convex_hull;
use crate::geometry::{Composite, Disk, FourierSeries, Point2, Polygon, RadialShape, Segment, Shape};
use crate::numerics::linalg::solve_dense;
use crate::numerics::quadrature::periodic_trapezoid;
use crate::{Error, Real, Result};

/// One row of a family sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ScanRecord<T> {
    pub param: T,
    pub delta: T,
    pub lambda0: T,
    #[serde(default)]
    pub lambda: Option<T>,
    /// `delta / lambda0²`.
    pub ratio: T,
}

impl<T: Real> ScanRecord<T> {
    pub fn new(param: T, delta: T, lambda0: T, lambda: Option<T>) -> Self {
        ScanRecord { param, delta, lambda0, lambda, ratio: ratio(delta, lambda0) }
    }

    /// Evaluates `s` through the geometric pipeline; `with_lambda` adds the
    /// Fraenkel search.
    pub fn measure(param: T, s: &Shape<T>, with_lambda: bool) -> Result<Self> {
        let lambda = if with_lambda { Some(fraenkel_asymmetry(s)?.value) } else { None };
        Ok(Self::new(param, deficit(s)?, barycentric_asymmetry(s)?, lambda))
    }
}

/// Angle beyond which the unit circle meets the stadium caps rather than its
/// flat sides: `tan θ = π/4`.
pub fn stadium_critical_angle<T: Real>() -> T {
    (T::FRAC_PI_4()).atan()
}

/// `δ` of the stadium: `1/(2 sin θ) + sin θ/2 − 1`.
pub fn stadium_deficit<T: Real>(theta: T) -> T {
    let s = theta.sin();
    T::half() / s + T::half() * s - T::one()
}

/// `λ₀` of the stadium in closed form. For `θ ≤ arctan(π/4)` the unit circle
/// crosses the flat sides and `λ₀ = (2/π)(π − 2θ − sin 2θ)`; past that angle
/// it crosses the caps and the overlap is integrated per quadrant.
pub fn stadium_lambda0<T: Real>(theta: T) -> T {
    let pi = T::PI();
    if theta <= stadium_critical_angle() {
        return T::two() / pi * (pi - T::two() * theta - (T::two() * theta).sin());
    }
    let r = theta.sin();
    let l = pi * (T::one() - r * r) / (T::lit(4.0) * r);
    if l <= T::zero() {
        return T::zero();
    }
    // ∫ √(ρ² − x²) dx antiderivative
    let f = |x: T, rho: T| {
        let x = x.max(-rho).min(rho);
        T::half() * (x * (rho * rho - x * x).max(T::zero()).sqrt() + rho * rho * (x / rho).asin())
    };
    let xs = (T::one() - r * r + l * l) / (T::two() * l);
    let quarter = l * r + (f(xs - l, r) - f(T::zero(), r)) + (f(T::one(), T::one()) - f(xs, T::one()));
    T::two() * (pi - T::lit(4.0) * quarter) / pi
}

/// Closed-form stadium record, `0 < θ ≤ π/2`.
pub fn stadium_profile<T: Real>(theta: T) -> Result<ScanRecord<T>> {
    if !(theta > T::zero() && theta <= T::FRAC_PI_2()) {
        return Err(Error::Domain(format!("stadium angle must lie in (0, π/2], got {theta}")));
    }
    Ok(ScanRecord::new(theta, stadium_deficit(theta), stadium_lambda0(theta), None))
}

/// Two disks of area π/2 centred at `(±(1 + 1/√2), 0)` joined by the
/// segment `[−1, 1] × {0}` of length 2.
pub fn dumbbell<T: Real>() -> Shape<T> {
    let r = T::FRAC_1_SQRT_2();
    let x = T::one() + r;
    Composite::new(
        vec![
            Disk { center: Point2::new(-x, T::zero()), radius: r },
            Disk { center: Point2::new(x, T::zero()), radius: r },
        ],
        vec![Segment(Point2::new(-T::one(), T::zero()), Point2::new(T::one(), T::zero()))],
    )
    .expect("dumbbell is valid")
    .into()
}

/// Closed-form dumbbell ratio `(√2 − 1)/4 + 1/(2π)`.
pub fn dumbbell_ratio<T: Real>() -> T {
    (T::SQRT_2() - T::one()) / T::lit(4.0) + T::one() / T::TAU()
}

/// Dumbbell measured geometrically (`param` = segment length).
pub fn dumbbell_report<T: Real>() -> Result<ScanRecord<T>> {
    ScanRecord::measure(T::two(), &dumbbell(), false)
}

/// Radii and centres `(R_n, r_n, c_n)`: disk of radius `R_n = 1 − 1/n` at
/// `(2, 0)` and disk of radius `r_n = √(2n − 1)/n` at `(−c_n, 0)`,
/// `c_n = 2(n − 1)²/(2n − 1)`.
pub fn counterexample_parameters<T: Real>(n: u64) -> (T, T, T) {
    let nf = T::lit(n as f64);
    let big = T::one() - T::one() / nf;
    let small = (T::two() * nf - T::one()).sqrt() / nf;
    let c = T::two() * (nf - T::one()) * (nf - T::one()) / (T::two() * nf - T::one());
    (big, small, c)
}

/// Disconnected two-disk set of area π with barycenter at the origin, and
/// its record measured geometrically.
pub fn fuglede_counterexample<T: Real>(n: u64) -> Result<(Shape<T>, ScanRecord<T>)> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    let (big, small, c) = counterexample_parameters::<T>(n);
    let s: Shape<T> = Composite::new(
        vec![
            Disk { center: Point2::new(T::two(), T::zero()), radius: big },
            Disk { center: Point2::new(-c, T::zero()), radius: small },
        ],
        Vec::new(),
    )?
    .into();
    let rec = ScanRecord::measure(T::lit(n as f64), &s, false)?;
    Ok((s, rec))
}

/// Residuals of `½∫(1+u)² = π`, `∫cos θ (1+u)³ = 0`, `∫sin θ (1+u)³ = 0`.
/// Periodicity holds by construction.
pub fn nearly_spherical_residuals<T: Real>(r: &RadialShape<T>) -> [T; 3] {
    let (mx, my) = r.third_moments();
    [r.area() - T::PI(), mx, my]
}

/// Rescales and shifts a profile so the body has area π and barycenter at
/// its centre: `u = s(1 + u_raw) − 1 + a cos θ + b sin θ`, with `(s, a, b)`
/// found by Newton's method on the three constraint residuals. With
/// `project == false` the profile is only validated.
pub fn nearly_spherical<T: Real>(u_raw: &RadialShape<T>, project: bool) -> Result<RadialShape<T>> {
    u_raw.validate()?;
    if !project {
        return Ok(u_raw.clone());
    }
    let m = u_raw.len();
    let base = u_raw.radii();
    let trig: Vec<(T, T)> = (0..m).map(|k| u_raw.angle(k).sin_cos()).collect();
    let tol = T::lit(10.0) * T::geom_eps();
    let build = |p: [T; 3]| -> Vec<T> {
        base.iter().zip(&trig).map(|(&b, &(sn, cs))| p[0] * b + p[1] * cs + p[2] * sn).collect()
    };
    let integral = |f: &dyn Fn(usize) -> T| periodic_trapezoid(&(0..m).map(f).collect::<Vec<T>>());

    let mut p = [T::one(), T::zero(), T::zero()];
    let mut converged = false;
    for _ in 0..60 {
        let rho = build(p);
        if rho.iter().any(|&q| !(q > T::zero())) {
            return Err(Error::ProjectionFailed("radius became non-positive".into()));
        }
        let res = [
            T::half() * integral(&|k| rho[k] * rho[k]) - T::PI(),
            integral(&|k| trig[k].1 * rho[k].powi(3)),
            integral(&|k| trig[k].0 * rho[k].powi(3)),
        ];
        if res.iter().all(|r| r.abs() < tol) {
            converged = true;
            break;
        }
        // ∂ρ/∂(s, a, b) = (1 + u_raw, cos θ, sin θ)
        let dir = |k: usize, j: usize| match j {
            0 => base[k],
            1 => trig[k].1,
            _ => trig[k].0,
        };
        let mut jac = [[T::zero(); 3]; 3];
        for j in 0..3 {
            jac[0][j] = integral(&|k| rho[k] * dir(k, j));
            jac[1][j] = T::lit(3.0) * integral(&|k| trig[k].1 * rho[k] * rho[k] * dir(k, j));
            jac[2][j] = T::lit(3.0) * integral(&|k| trig[k].0 * rho[k] * rho[k] * dir(k, j));
        }
        let step = solve_dense(jac, [-res[0], -res[1], -res[2]])
            .ok_or_else(|| Error::ProjectionFailed("singular constraint Jacobian".into()))?;
        for j in 0..3 {
            p[j] = p[j] + step[j];
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::ProjectionFailed("Newton iteration diverged".into()));
        }
    }
    if !converged {
        return Err(Error::ProjectionFailed("Newton iteration did not converge".into()));
    }
    let fourier = u_raw.fourier().map(|f| {
        let n = f.harmonics().max(1) + 1;
        let mut g = FourierSeries { cos: f.cos.clone(), sin: f.sin.clone() };
        g.cos.resize(n, T::zero());
        g.sin.resize(n, T::zero());
        for (i, c) in g.cos.iter_mut().enumerate() {
            *c = if i == 0 { p[0] * (T::one() + *c) - T::one() } else { p[0] * *c };
        }
        for s in g.sin.iter_mut() {
            *s = p[0] * *s;
        }
        g.cos[1] = g.cos[1] + p[1];
        g.sin[1] = g.sin[1] + p[2];
        g
    });
    let u: Vec<T> = build(p).into_iter().map(|q| q - T::one()).collect();
    let out = match fourier {
        Some(f) => RadialShape::from_fourier(f, m)?,
        None => RadialShape::new(u)?,
    };
    Ok(out.with_center(u_raw.center()))
}

/// Projected `u = ε cos(kθ)` with `m` samples.
pub fn nearly_spherical_mode<T: Real>(eps: T, k: usize, m: usize) -> Result<RadialShape<T>> {
    let mut f = FourierSeries::zero(k);
    f.cos[k] = eps;
    nearly_spherical(&RadialShape::from_fourier(f, m)?, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Closed-form stadium profile over `θ`.
    Stadium,
    /// Disconnected two-disk sets over `n` (rounded to integers).
    Counterexample,
    /// Projected `ε cos 2θ` over `ε`, measured geometrically.
    NearSphere,
}

/// Uniform sweep with `steps ≥ 2` points, rows in parameter order.
pub fn scan<T: Real>(family: Family, lo: T, hi: T, steps: usize) -> Result<Vec<ScanRecord<T>>> {
    if steps < 2 {
        return Err(Error::Domain(format!("a scan needs at least 2 steps, got {steps}")));
    }
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::Domain(format!("invalid scan range [{lo}, {hi}]")));
    }
    let params: Vec<T> = (0..steps).map(|i| lo + (hi - lo) * T::usz(i) / T::usz(steps - 1)).collect();
    match family {
        Family::Stadium => params.into_iter().map(stadium_profile).collect(),
        Family::Counterexample => {
            let mut ns: Vec<u64> = params.iter().map(|p| p.round().to_u64().unwrap_or(0)).collect();
            ns.dedup();
            ns.par_iter().map(|&n| fuglede_counterexample::<T>(n).map(|x| x.1)).collect()
        }
        Family::NearSphere => params
            .par_iter()
            .map(|&e| {
                let r = nearly_spherical_mode(e, 2, crate::geometry::radial::DEFAULT_SAMPLES)?;
                ScanRecord::measure(e, &r.into(), true)
            })
            .collect(),
    }
}

/// Convex hull of `count` points uniform in the unit disk, normalized to
/// area π and barycenter 0.
pub fn random_convex_polygon<T: Real, R: Rng>(rng: &mut R, count: usize) -> Shape<T> {
    loop {
        let pts: Vec<Point2<T>> = (0..count.max(3))
            .map(|_| {
                let r = rng.gen::<f64>().sqrt();
                let a = rng.gen::<f64>() * std::f64::consts::TAU;
                Point2::new(T::lit(r * a.cos()), T::lit(r * a.sin()))
            })
            .collect();
        let hull = convex_hull(&pts);
        if hull.len() < 3 {
            continue;
        }
        if let Ok(p) = Polygon::new(hull) {
            if let Ok(s) = Shape::from(p).normalize() {
                return s;
            }
        }
    }
}

/// Random low-frequency profile `Σ_{k=2}^{kmax} (a_k cos kθ + b_k sin kθ)`
/// with `|a_k|, |b_k| ≤ amplitude/k²`, projected onto area π and barycenter 0.
pub fn random_nearly_spherical<T: Real, R: Rng>(
    rng: &mut R,
    amplitude: f64,
    kmax: usize,
    m: usize,
) -> Result<RadialShape<T>> {
    let mut f = FourierSeries::zero(kmax);
    for k in 2..=kmax {
        let scale = amplitude / (k * k) as f64;
        f.cos[k] = T::lit(scale * rng.gen_range(-1.0..1.0));
        f.sin[k] = T::lit(scale * rng.gen_range(-1.0..1.0));
    }
    nearly_spherical(&RadialShape::from_fourier(f, m)?, true)
}

/// Chain of 1–3 disks along a random direction, consecutive disks joined by
/// a segment between facing boundary points. Connected by construction.
pub fn random_composite<T: Real, R: Rng>(rng: &mut R) -> Shape<T> {
    let n = rng.gen_range(1..=3usize);
    let dir = rng.gen::<f64>() * std::f64::consts::TAU;
    let (c, s) = (dir.cos(), dir.sin());
    let mut disks = Vec::new();
    let mut segments = Vec::new();
    let mut x = 0.0;
    let mut prev_r = 0.0;
    for i in 0..n {
        let r = rng.gen_range(0.3..1.0);
        if i > 0 {
            let gap = rng.gen_range(0.1..1.5);
            let a = x + prev_r;
            x = a + gap + r;
            let b = x - r;
            segments
                .push(Segment(Point2::new(T::lit(a * c), T::lit(a * s)), Point2::new(T::lit(b * c), T::lit(b * s))));
        }
        disks.push(Disk { center: Point2::new(T::lit(x * c), T::lit(x * s)), radius: T::lit(r) });
        prev_r = r;
    }
    let shape: Shape<T> = Composite::new(disks, segments).expect("chain composite is valid").into();
    shape.normalize().expect("positive area")
}
