//! Closed-form approximations of the normal quantile for `p ≥ 0.5`.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::approximations::horner;
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum QuantileApproxId {
    Schmeiser = 1,
    Shore = 2,
    Proposed = 3,
}

impl QuantileApproxId {
    pub const ALL: [QuantileApproxId; 3] = [
        QuantileApproxId::Schmeiser,
        QuantileApproxId::Shore,
        QuantileApproxId::Proposed,
    ];

    pub fn from_index(index: u32) -> Result<Self> {
        index
            .checked_sub(1)
            .and_then(|i| Self::ALL.get(i as usize).copied())
            .ok_or(Error::UnknownQuantileApprox(index))
    }

    pub fn index(self) -> u32 {
        self as u32
    }

    pub fn name(self) -> &'static str {
        match self {
            QuantileApproxId::Schmeiser => "Schmeiser (1979)",
            QuantileApproxId::Shore => "Shore (1982)",
            QuantileApproxId::Proposed => "Polya-based (proposed)",
        }
    }
}

impl fmt::Display for QuantileApproxId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}", self.index())
    }
}

fn check_upper_half(p: f64) -> Result<()> {
    if (0.5..1.0).contains(&p) {
        Ok(())
    } else {
        Err(domain("p", p, "[0.5, 1)"))
    }
}

pub fn z1_schmeiser(p: f64) -> Result<f64> {
    check_upper_half(p)?;
    Ok((p.powf(0.135) - (1.0 - p).powf(0.135)) / 0.1975)
}

pub fn z2_shore(p: f64) -> Result<f64> {
    check_upper_half(p)?;
    Ok(5.531 * (1.0 - ((1.0 - p) / p).powf(0.1193)))
}

/// Odd powers above `p¹` are absent from the fitted polynomial.
const D1: [f64; 9] = [0.8039, -0.9446, 1.5806, 0.0, -1.7824, 0.0, 1.5098, 0.0, -0.5689];

/// The `p`-dependent stand-in for the constant `2/π` of the Polya form.
pub fn d1_poly(p: f64) -> Result<f64> {
    check_upper_half(p)?;
    Ok(horner(&D1, p))
}

/// `√(-ln(1 - (2(p - 1/2))²) / d₁(p))`, the inverted Polya form with its
/// constant replaced by [`d1_poly`].
pub fn z3_proposed(p: f64) -> Result<f64> {
    let d1 = d1_poly(p)?;
    let s = 2.0 * (p - 0.5);
    // `+ 0.0` turns the -0.0 from ln(1) into +0.0 at the median.
    Ok((-(1.0 - s * s).ln() / d1).sqrt() + 0.0)
}

/// Polya's `0.5 (1 + √(1 - e^{-(2/π) z²}))`.
pub fn polya_cdf(z: f64) -> Result<f64> {
    if !(z >= 0.0 && z.is_finite()) {
        return Err(domain("z", z, "[0, inf)"));
    }
    Ok(0.5 * (1.0 + (1.0 - (-(2.0 / PI) * z * z).exp()).sqrt()))
}

pub fn quantile_approx(id: QuantileApproxId, p: f64) -> Result<f64> {
    match id {
        QuantileApproxId::Schmeiser => z1_schmeiser(p),
        QuantileApproxId::Shore => z2_shore(p),
        QuantileApproxId::Proposed => z3_proposed(p),
    }
}

/// [`quantile_approx`] reflected to `p < 0.5` through `z(p) = -z(1 - p)`.
pub fn quantile_approx_extended(id: QuantileApproxId, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(domain("p", p, "(0, 1)"));
    }
    if p < 0.5 {
        Ok(-quantile_approx(id, 1.0 - p)?)
    } else {
        quantile_approx(id, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::ref_cdf;

    fn phi(z: f64) -> f64 {
        ref_cdf(z).unwrap()
    }

    #[test]
    fn all_vanish_at_the_median() {
        for id in QuantileApproxId::ALL {
            let z = quantile_approx(id, 0.5).unwrap();
            assert!(z == 0.0 && z.is_sign_positive(), "{id}: {z}");
        }
    }

    #[test]
    fn schmeiser_table_values() {
        assert_eq!(format!("{:.4}", z1_schmeiser(phi(0.4)).unwrap()), "0.3976");
        assert_eq!(format!("{:.4}", z1_schmeiser(phi(4.8)).unwrap()), "4.3032");
    }

    #[test]
    fn shore_table_values() {
        assert_eq!(format!("{:.4}", z2_shore(phi(0.4)).unwrap()), "0.4084");
        assert_eq!(format!("{:.4}", z2_shore(phi(3.2)).unwrap()), "3.2109");
        assert_eq!(
            format!("{:.4}", quantile_approx(QuantileApproxId::Shore, phi(2.0)).unwrap()),
            "1.9993"
        );
    }

    #[test]
    fn proposed_table_values() {
        let z = z3_proposed(phi(0.8)).unwrap();
        assert_eq!(format!("{z:.4}"), "0.8000");
        // Exact arithmetic gives Δ₃ = 3.281512e-6; the published 3.28071e-6
        // is not reachable from full-precision p.
        assert!((z - 0.8 - 3.2815e-6).abs() < 1e-9, "{}", z - 0.8);
        assert_eq!(format!("{:.4}", z3_proposed(phi(4.8)).unwrap()), "4.5997");
        // Published as 1.6003; full precision gives 1.600250.
        let z = quantile_approx(QuantileApproxId::Proposed, phi(1.6)).unwrap();
        assert!((z - 1.6003).abs() <= 1.5e-4, "{z}");
    }

    #[test]
    fn d1_at_one_half_by_hand() {
        let p: f64 = 0.5;
        let by_hand = 0.8039 - 0.9446 * p + 1.5806 * p * p - 1.7824 * p.powi(4)
            + 1.5098 * p.powi(6)
            - 0.5689 * p.powi(8);
        assert!((d1_poly(0.5).unwrap() - by_hand).abs() < 1e-15);
        assert!((by_hand - 0.636718359375).abs() < 1e-15);
    }

    #[test]
    fn d1_near_polya_constant() {
        let d = d1_poly(phi(0.4)).unwrap();
        assert!((d - 2.0 / PI).abs() < 0.01, "{d}");
    }

    #[test]
    fn d1_positive_on_scan() {
        for i in 0..5000 {
            let p = 0.5 + i as f64 * 1e-4;
            assert!(d1_poly(p).unwrap() > 0.0, "p = {p}");
        }
    }

    #[test]
    fn polya_values() {
        assert_eq!(polya_cdf(0.0).unwrap(), 0.5);
        let expected = 0.5 * (1.0 + (1.0 - (-2.0 / PI).exp()).sqrt());
        assert!((polya_cdf(1.0).unwrap() - expected).abs() < 1e-16);
        assert!(1.0 - polya_cdf(8.0).unwrap() < 1e-5);
        assert!(polya_cdf(-1.0).is_err());
    }

    #[test]
    fn domain_errors() {
        for p in [0.49, 1.0, 1.2, f64::NAN] {
            assert!(z1_schmeiser(p).is_err());
            assert!(z2_shore(p).is_err());
            assert!(z3_proposed(p).is_err());
        }
        assert!(matches!(
            QuantileApproxId::from_index(4),
            Err(Error::UnknownQuantileApprox(4))
        ));
    }

    #[test]
    fn reflection_below_median() {
        for id in QuantileApproxId::ALL {
            let up = quantile_approx(id, 0.8).unwrap();
            let down = quantile_approx_extended(id, 1.0 - 0.8).unwrap();
            assert_eq!(down, -up);
        }
        assert!(quantile_approx_extended(QuantileApproxId::Shore, 0.0).is_err());
    }

    #[test]
    fn proposed_is_monotone_on_scan() {
        let mut prev = 0.0;
        for i in 0..5000 {
            let p = 0.5 + i as f64 * 1e-4;
            let z = z3_proposed(p).unwrap();
            assert!(z >= prev, "p = {p}");
            prev = z;
        }
    }

    #[test]
    fn proposed_degrades_at_the_far_tail() {
        let delta = z3_proposed(phi(4.8)).unwrap() - 4.8;
        assert!((delta + 0.20026).abs() <= 1e-4, "{delta}");
    }
}
