//! Bracketed scalar root finding.

use crate::{Error, Real, Result};

/// Plain bisection. `f(lo)` and `f(hi)` must have opposite signs (or one of
/// them is an exact zero).
pub fn bisect<T: Real, F: Fn(T) -> T>(f: F, lo: T, hi: T, tol: T) -> Result<T> {
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    let fb = f(b);
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::NoBracket { lo: lo.to_f64_lossy(), hi: hi.to_f64_lossy() });
    }
    for _ in 0..400 {
        let m = (a + b) * T::half();
        if (b - a).abs() <= tol || m == a || m == b {
            return Ok(m);
        }
        let fm = f(m);
        if fm == T::zero() {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok((a + b) * T::half())
}

/// Bisection down to a coarse bracket, then Newton steps with a numerical
/// derivative; any Newton iterate leaving the bracket falls back to bisection.
pub fn bisect_newton<T: Real, F: Fn(T) -> T>(f: F, lo: T, hi: T, tol: T) -> Result<T> {
    let (mut a, mut b) = (lo, hi);
    let fa0 = f(a);
    let fb0 = f(b);
    if fa0.signum() == fb0.signum() && fa0 != T::zero() && fb0 != T::zero() {
        return Err(Error::NoBracket { lo: lo.to_f64_lossy(), hi: hi.to_f64_lossy() });
    }
    let coarse = (hi - lo).abs() * T::lit(1e-4);
    let mut x = bisect(&f, a, b, coarse)?;
    let sa = fa0.signum();
    // keep a valid bracket around x
    let half = coarse.max(tol);
    if f(x - half).signum() == sa {
        a = (x - half).max(lo);
    }
    if f(x + half).signum() != sa {
        b = (x + half).min(hi);
    }
    for _ in 0..50 {
        let fx = f(x);
        if fx == T::zero() {
            return Ok(x);
        }
        if fx.signum() == sa {
            a = x;
        } else {
            b = x;
        }
        let h = T::lit(1e-7).max(x.abs() * T::lit(1e-7));
        let d = (f(x + h) - f(x - h)) / (h + h);
        let mut next = x - fx / d;
        if !next.is_finite() || next <= a.min(b) || next >= a.max(b) {
            next = (a + b) * T::half();
        }
        if (next - x).abs() <= tol {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}
