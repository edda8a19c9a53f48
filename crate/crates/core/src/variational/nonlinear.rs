//! The full quotient `J(u) = δ/λ₀²` of a nearly spherical body written in
//! terms of its radial profile.

use crate::families::nearly_spherical_residuals;
use crate::geometry::RadialShape;
use crate::numerics::quadrature::periodic_trapezoid;
use crate::{Error, Real, Result};

/// Largest admissible constraint residual for [`j_full`].
pub const J_CONSTRAINT_TOL: f64 = 1e-6;

/// `J(u) = (π/2) ∫[√((1+u)² + u'²) − 1] / [½∫|(1+u)² − 1|]²` for a profile
/// with area π and barycenter at its centre.
pub fn j_full<T: Real>(r: &RadialShape<T>) -> Result<T> {
    r.validate()?;
    let res = nearly_spherical_residuals(r);
    let tol = T::lit(J_CONSTRAINT_TOL).max(T::lit(1e3) * T::geom_eps());
    if res.iter().any(|x| x.abs() > tol) {
        return Err(Error::Constraint(format!(
            "profile violates area/barycenter constraints (residuals {:?})",
            res.map(|x| x.to_f64_lossy())
        )));
    }
    let rad = r.radii();
    let du = r.derivative();
    let num: Vec<T> = rad.iter().zip(&du).map(|(&q, &d)| (q * q + d * d).sqrt() - T::one()).collect();
    let den: Vec<T> = rad.iter().map(|&q| (q * q - T::one()).abs()).collect();
    let den = T::half() * periodic_trapezoid(&den);
    if !(den > T::zero()) {
        return Err(Error::Degenerate("profile is the disk: λ₀ = 0".into()));
    }
    Ok(T::FRAC_PI_2() * periodic_trapezoid(&num) / (den * den))
}

/// `1 + ρ/2 − ρ²/8 + ρ³/16 − ρ⁴/8`, a lower bound for `√(1 + ρ)` on
/// `|ρ| ≤ ½`.
pub fn sqrt_lower_bound<T: Real>(rho: T) -> T {
    T::one() + rho / T::two() - rho.powi(2) / T::lit(8.0) + rho.powi(3) / T::lit(16.0) - rho.powi(4) / T::lit(8.0)
}
