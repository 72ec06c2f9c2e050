//! Reference evaluation of the standard normal CDF and quantile.
//!
//! The primary route splits on `|z|`:
//!
//! * `|z| < CROSSOVER`: `erf(|z|/√2)` from its all-positive power series
//!   `erf(x) = 2/√π · e^{-x²} · Σ 2ⁿ x^{2n+1} / (1·3···(2n+1))`,
//!   which never cancels.
//! * `|z| ≥ CROSSOVER`: the upper tail `Q(z) = φ(z)·R(z)` where the Mills
//!   ratio `R` comes from Laplace's continued fraction
//!   `R(z) = 1/(z + 1/(z + 2/(z + 3/(z + …))))`, evaluated with the modified
//!   Lentz algorithm. The tail keeps full relative accuracy.
//!
//! A second, independent route integrates the density with composite
//! Gauss-Legendre quadrature; [`oracle_cross_check`] compares the two.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_2_SQRT_PI};
use std::sync::OnceLock;

use crate::error::{domain, Error, Result};
use crate::metrics::GridSpec;
use crate::quadrature::GaussLegendre;

/// Switch point between the series and the continued fraction, in `|z|`.
pub const CROSSOVER: f64 = 3.0;

/// Largest `|z|` accepted by [`oracle_cross_check`].
pub const CROSS_CHECK_LIMIT: f64 = 8.0;

/// Quantile bracket upper end; `Q(40)` underflows to zero.
const QUANTILE_BRACKET: f64 = 40.0;

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

fn check_finite(z: f64) -> Result<()> {
    if z.is_finite() {
        Ok(())
    } else {
        Err(domain("z", z, "finite reals"))
    }
}

/// `exp(-z²/2)` with the rounding error of `z²` folded back in, so the
/// result stays relatively accurate deep in the tail.
fn gaussian_kernel(z: f64) -> f64 {
    let hi = z * z;
    let lo = z.mul_add(z, -hi);
    (-0.5 * hi).exp() * (-0.5 * lo).exp()
}

/// Standard normal density.
pub fn ref_pdf(z: f64) -> f64 {
    FRAC_1_SQRT_2PI * gaussian_kernel(z)
}

/// `erf(x)` for `0 ≤ x` below the crossover.
fn erf_series(x: f64) -> f64 {
    let two_x2 = 2.0 * x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= two_x2 / (2.0 * n + 1.0);
        sum += term;
        if term <= sum * 1e-17 {
            break;
        }
    }
    FRAC_2_SQRT_PI * (-x * x).exp() * sum
}

/// Mills ratio `Q(z)/φ(z)` for `z ≥ CROSSOVER`.
fn mills_ratio_cf(z: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = z;
    let mut c = f;
    let mut d = 0.0;
    for n in 1..5000 {
        let a = n as f64;
        d = z + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        d = 1.0 / d;
        c = z + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() <= f64::EPSILON * 0.5 {
            break;
        }
    }
    1.0 / f
}

/// Upper tail `Q(t) = 1 - Φ(t)` for `t ≥ 0`.
fn upper_tail_nonneg(t: f64) -> f64 {
    if t < CROSSOVER {
        0.5 - 0.5 * erf_series(t * FRAC_1_SQRT_2)
    } else {
        ref_pdf(t) * mills_ratio_cf(t)
    }
}

/// Φ(z) through the series/continued-fraction route.
pub fn ref_cdf(z: f64) -> Result<f64> {
    check_finite(z)?;
    let t = z.abs();
    if t < CROSSOVER {
        let half_erf = 0.5 * erf_series(t * FRAC_1_SQRT_2);
        Ok(if z >= 0.0 { 0.5 + half_erf } else { 0.5 - half_erf })
    } else {
        let q = ref_pdf(t) * mills_ratio_cf(t);
        Ok(if z > 0.0 { 1.0 - q } else { q })
    }
}

/// Survival function `1 - Φ(z)`, relatively accurate for large positive `z`.
pub fn ref_sf(z: f64) -> Result<f64> {
    check_finite(z)?;
    Ok(if z >= 0.0 {
        upper_tail_nonneg(z)
    } else {
        ref_cdf(-z)?
    })
}

/// Φ⁻¹(p) by safeguarded Newton iteration on `ln Q(t) = ln q`, with
/// `q = min(p, 1 - p)` and `t` kept inside a shrinking bisection bracket
/// starting at `[0, 40]`.
pub fn ref_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(domain("p", p, "the open interval (0, 1)"));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    // 1 - p is exact for p ≥ 0.5.
    let (q, sign) = if p > 0.5 { (1.0 - p, 1.0) } else { (p, -1.0) };
    let target = q.ln();

    let mut lo = 0.0;
    let mut hi = QUANTILE_BRACKET;
    let mut t = 1.0;
    for _ in 0..200 {
        let tail = upper_tail_nonneg(t);
        let g = tail.ln() - target;
        if g > 0.0 {
            lo = t;
        } else if g < 0.0 {
            hi = t;
        } else {
            return Ok(sign * t);
        }
        // d/dt ln Q(t) = -φ(t)/Q(t)
        let slope = -ref_pdf(t) / tail;
        let mut next = t - g / slope;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if (next - t).abs() <= 2.0 * f64::EPSILON * t.max(f64::MIN_POSITIVE)
            || hi - lo <= 2.0 * f64::EPSILON * hi
        {
            return Ok(sign * next);
        }
        t = next;
    }
    Err(Error::NoConvergence(p))
}

fn quadrature_rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(20))
}

/// Φ(z) as `1/2 ± ∫₀^|z| φ(t) dt`, by composite 20-point Gauss-Legendre on
/// panels of width at most 1/4. Independent of [`ref_cdf`] apart from
/// sharing the density.
pub fn quadrature_cdf(z: f64) -> Result<f64> {
    check_finite(z)?;
    let t = z.abs();
    let area = quadrature_rule().integrate_composite(|x| FRAC_1_SQRT_2PI * (-0.5 * x * x).exp(), 0.0, t, 0.25);
    Ok(if z >= 0.0 { 0.5 + area } else { 0.5 - area })
}

/// Largest `|ref_cdf(z) - quadrature_cdf(z)|` over the grid.
pub fn oracle_cross_check(grid: &GridSpec) -> Result<f64> {
    let points = grid.points()?;
    let mut worst = 0.0f64;
    for z in points {
        if z.abs() > CROSS_CHECK_LIMIT {
            return Err(Error::InvalidGrid(format!(
                "cross-check needs |z| <= {CROSS_CHECK_LIMIT}, got {z}"
            )));
        }
        let diff = (ref_cdf(z)? - quadrature_cdf(z)?).abs();
        worst = worst.max(diff);
    }
    Ok(worst)
}
