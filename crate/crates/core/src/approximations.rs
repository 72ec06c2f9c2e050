//! Logistic-form approximations of the standard normal CDF.
//!
//! Every approximation here has the shape `1 / (1 + e^{-y(z)})` for `z ≥ 0`
//! and differs only in `y`. Coefficients are kept exactly as published.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Identity of one of the nine CDF approximations, numbered 1 through 9.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ApproxId {
    Tocher = 1,
    Lin = 2,
    Divgi = 3,
    Vedder = 4,
    WaissiRossin = 5,
    Bowling = 6,
    BoirojuRao = 7,
    EidousAnanbeh = 8,
    Proposed = 9,
}

impl ApproxId {
    pub const ALL: [ApproxId; 9] = [
        ApproxId::Tocher,
        ApproxId::Lin,
        ApproxId::Divgi,
        ApproxId::Vedder,
        ApproxId::WaissiRossin,
        ApproxId::Bowling,
        ApproxId::BoirojuRao,
        ApproxId::EidousAnanbeh,
        ApproxId::Proposed,
    ];

    pub fn from_index(index: u32) -> Result<Self> {
        index
            .checked_sub(1)
            .and_then(|i| Self::ALL.get(i as usize).copied())
            .ok_or(Error::UnknownApprox(index))
    }

    pub fn index(self) -> u32 {
        self as u32
    }

    pub fn descriptor(self) -> &'static ApproxDescriptor {
        &REGISTRY[self as usize - 1]
    }
}

impl fmt::Display for ApproxId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phi{}", self.index())
    }
}

/// Static metadata for one approximation. `reported_mxae` and
/// `reported_mae` are the published accuracy figures on the grid
/// 0..=5 step 0.001.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxDescriptor {
    pub id: ApproxId,
    pub name: &'static str,
    /// Exclusive upper bound on `z`, if the formula has one.
    pub domain_max: Option<f64>,
    pub reported_mxae: f64,
    pub reported_mae: f64,
}

static REGISTRY: [ApproxDescriptor; 9] = [
    ApproxDescriptor {
        id: ApproxId::Tocher,
        name: "Tocher (1963)",
        domain_max: None,
        reported_mxae: 1.77e-2,
        reported_mae: 7.05e-3,
    },
    ApproxDescriptor {
        id: ApproxId::Lin,
        name: "Lin (1990)",
        domain_max: Some(9.0),
        reported_mxae: 6.69e-3,
        reported_mae: 1.10e-3,
    },
    ApproxDescriptor {
        id: ApproxId::Divgi,
        name: "Divgi (1990)",
        domain_max: None,
        reported_mxae: 2.10e-3,
        reported_mae: 9.78e-4,
    },
    ApproxDescriptor {
        id: ApproxId::Vedder,
        name: "Vedder (1993)",
        domain_max: None,
        reported_mxae: 3.14e-4,
        reported_mae: 9.99e-5,
    },
    ApproxDescriptor {
        id: ApproxId::WaissiRossin,
        name: "Waissi and Rossin (1996)",
        domain_max: None,
        reported_mxae: 4.37e-5,
        reported_mae: 1.69e-5,
    },
    ApproxDescriptor {
        id: ApproxId::Bowling,
        name: "Bowling et al. (2009)",
        domain_max: None,
        reported_mxae: 1.42e-4,
        reported_mae: 6.88e-5,
    },
    ApproxDescriptor {
        id: ApproxId::BoirojuRao,
        name: "Boiroju and Rao (2014)",
        domain_max: None,
        reported_mxae: 2.41e-5,
        reported_mae: 7.26e-6,
    },
    ApproxDescriptor {
        id: ApproxId::EidousAnanbeh,
        name: "Eidous and Ananbeh (2021)",
        domain_max: None,
        reported_mxae: 7.62e-7,
        reported_mae: 1.82e-7,
    },
    ApproxDescriptor {
        id: ApproxId::Proposed,
        name: "17-term logistic polynomial",
        domain_max: None,
        reported_mxae: 4.43e-10,
        reported_mae: 9.62e-11,
    },
];

/// All nine descriptors in index order.
pub fn list_approximations() -> &'static [ApproxDescriptor] {
    &REGISTRY
}

pub const PHI9_LEN: usize = 17;

/// `k₁ … k₁₇` exactly as printed in the coefficient table.
pub const PHI9_TABLE_LITERAL: [f64; PHI9_LEN] = [
    1.5957691187,
    5.37366e-8,
    0.72670769,
    -9.229e-7,
    5.3498e-5,
    -9.0342e-5,
    1.049448e-4,
    -3.0263611e-3,
    2.99472642e-4,
    -1.98173433e-4,
    9.4285766e-5,
    -3.1366467e-5,
    7.1524366e-6,
    1.09550613e-6,
    1.079959e-7,
    -6.208087e-9,
    1.585371e-10,
];

/// Label of the variant shipped as the default, as selected by
/// [`crate::reconcile::reconcile_phi9`] on the 0..=5 step 0.001 grid.
pub const PHI9_DEFAULT_LABEL: &str = "k3-scaled+k5-neg+k8-scaled+k14-neg";

/// The default coefficients: the table values with `k₃` and `k₈` divided
/// by ten and the signs of `k₅` and `k₁₄` flipped.
pub const PHI9_DEFAULT: [f64; PHI9_LEN] = [
    1.5957691187,
    5.37366e-8,
    0.072670769,
    -9.229e-7,
    -5.3498e-5,
    -9.0342e-5,
    1.049448e-4,
    -3.0263611e-4,
    2.99472642e-4,
    -1.98173433e-4,
    9.4285766e-5,
    -3.1366467e-5,
    7.1524366e-6,
    -1.09550613e-6,
    1.079959e-7,
    -6.208087e-9,
    1.585371e-10,
];

/// Coefficients `k₁ … k₁₇` of the polynomial `a(z) = Σ k_j z^{j-1}` used by
/// the ninth approximation, tagged with the variant they came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Phi9Coefficients {
    pub k: [f64; PHI9_LEN],
    pub variant_tag: String,
}

impl Phi9Coefficients {
    pub fn new(k: [f64; PHI9_LEN], variant_tag: impl Into<String>) -> Self {
        Self {
            k,
            variant_tag: variant_tag.into(),
        }
    }

    pub fn table_literal() -> Self {
        Self::new(PHI9_TABLE_LITERAL, "table-literal")
    }
}

impl Default for Phi9Coefficients {
    fn default() -> Self {
        Self::new(PHI9_DEFAULT, PHI9_DEFAULT_LABEL)
    }
}

/// Horner evaluation of `Σ coeffs[i] · x^i`.
pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

#[inline]
fn logistic(y: f64) -> f64 {
    1.0 / (1.0 + (-y).exp())
}

/// `a(z)` for the ninth approximation.
pub fn phi9_linear_coefficient(z: f64, coeffs: &Phi9Coefficients) -> f64 {
    horner(&coeffs.k, z)
}

const WAISSI_ROSSIN: [f64; 6] = [0.0, 0.9, 0.0, 0.0418198, 0.0, -0.0004406];
const BOWLING: [f64; 4] = [0.0, 1.5976, 0.0, 0.07056];
const EIDOUS_ANANBEH: [f64; 10] = [
    0.0, 1.5957764, 0.0, 0.0726161, 0.0, 0.0, 0.00003318, -0.00021785, 0.00006293, -0.00000519,
];

/// Exponent `y(z)` of the logistic form, no domain checks.
fn exponent(id: ApproxId, z: f64, coeffs: &Phi9Coefficients) -> f64 {
    match id {
        ApproxId::Tocher => 2.0 * (2.0 / PI).sqrt() * z,
        ApproxId::Lin => 4.2 * PI * z / (9.0 - z),
        ApproxId::Divgi => 1.526 * z * (1.0 + 0.1034 * z),
        ApproxId::Vedder => {
            z * (8.0 / PI).sqrt() + (2.0 / PI).sqrt() * (4.0 - PI) * z * z * z / (3.0 * PI)
        }
        ApproxId::WaissiRossin => PI.sqrt() * horner(&WAISSI_ROSSIN, z),
        ApproxId::Bowling => horner(&BOWLING, z),
        ApproxId::BoirojuRao => {
            0.5 * (-0.506445
                + 10.4467 * (1.3448 + 0.3264 * z).tanh()
                + 9.8475 * (-1.3519 + 0.3376 * z).tanh()
                + 1.5976 * z
                + 0.070565992 * z * z * z)
        }
        ApproxId::EidousAnanbeh => horner(&EIDOUS_ANANBEH, z),
        ApproxId::Proposed => phi9_linear_coefficient(z, coeffs) * z,
    }
}

/// Evaluates approximation `id` at `z ≥ 0`. `coeffs` only matters for the
/// ninth approximation; `None` selects [`Phi9Coefficients::default`].
pub fn eval_cdf_approx(id: ApproxId, z: f64, coeffs: Option<&Phi9Coefficients>) -> Result<f64> {
    if !(z >= 0.0 && z.is_finite()) {
        return Err(domain("z", z, "[0, inf) (use eval_cdf_extended for z < 0)"));
    }
    if id == ApproxId::Lin && z >= 9.0 {
        return Err(domain("z", z, "[0, 9) for the Lin approximation"));
    }
    Ok(match coeffs {
        Some(c) => logistic(exponent(id, z, c)),
        None => logistic(exponent(id, z, default_coefficients())),
    })
}

fn default_coefficients() -> &'static Phi9Coefficients {
    static DEFAULT: std::sync::OnceLock<Phi9Coefficients> = std::sync::OnceLock::new();
    DEFAULT.get_or_init(Phi9Coefficients::default)
}

/// Extends [`eval_cdf_approx`] to negative `z` through `Φ(z) = 1 - Φ(-z)`.
pub fn eval_cdf_extended(
    id: ApproxId,
    z: f64,
    coeffs: Option<&Phi9Coefficients>,
) -> Result<f64> {
    if z.is_nan() {
        return Err(domain("z", z, "finite reals"));
    }
    // Branch on the sign bit so that -0.0 reflects too; Boiroju-Rao is not
    // exactly 1/2 at the origin.
    if z.is_sign_negative() {
        Ok(1.0 - eval_cdf_approx(id, -z, coeffs)?)
    } else {
        eval_cdf_approx(id, z, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_matches_published_table() {
        let all = list_approximations();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0].name, "Tocher (1963)");
        assert_eq!(all[0].reported_mxae, 1.77e-2);
        assert_eq!(all[0].reported_mae, 7.05e-3);
        assert_eq!(all[8].id, ApproxId::Proposed);
        assert_eq!(all[8].reported_mxae, 4.43e-10);
        assert_eq!(all[8].reported_mae, 9.62e-11);
        for (i, d) in all.iter().enumerate() {
            assert_eq!(d.id.index() as usize, i + 1);
            assert_eq!(d.id.descriptor(), d);
            assert_eq!(d.domain_max.is_some(), d.id == ApproxId::Lin);
        }
    }

    #[test]
    fn id_round_trips_and_rejects_out_of_range() {
        for i in 1..=9 {
            assert_eq!(ApproxId::from_index(i).unwrap().index(), i);
        }
        assert!(matches!(ApproxId::from_index(0), Err(Error::UnknownApprox(0))));
        assert!(matches!(ApproxId::from_index(10), Err(Error::UnknownApprox(10))));
    }

    #[test]
    fn tocher_saturates() {
        assert!(eval_cdf_approx(ApproxId::Tocher, 8.0, None).unwrap() > 0.9999);
    }

    #[test]
    fn proposed_is_one_half_at_origin() {
        assert_eq!(eval_cdf_approx(ApproxId::Proposed, 0.0, None).unwrap(), 0.5);
        assert_eq!(eval_cdf_extended(ApproxId::Proposed, 0.0, None).unwrap(), 0.5);
    }

    #[test]
    fn bowling_at_one_matches_printed_form() {
        let expected = 1.0 / (1.0 + (-(1.5976f64 + 0.07056)).exp());
        let v = eval_cdf_approx(ApproxId::Bowling, 1.0, None).unwrap();
        assert!((v - expected).abs() <= 1e-16);
    }

    #[test]
    fn eidous_ananbeh_hand_expanded() {
        let z: f64 = 1.3;
        let y = 1.5957764 * z + 0.0726161 * z.powi(3) + 0.00003318 * z.powi(6)
            - 0.00021785 * z.powi(7)
            + 0.00006293 * z.powi(8)
            - 0.00000519 * z.powi(9);
        let v = eval_cdf_approx(ApproxId::EidousAnanbeh, z, None).unwrap();
        assert!((v - 1.0 / (1.0 + (-y).exp())).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(eval_cdf_approx(ApproxId::Tocher, -0.1, None).is_err());
        assert!(eval_cdf_approx(ApproxId::Tocher, f64::NAN, None).is_err());
        assert!(eval_cdf_approx(ApproxId::Lin, 9.0, None).is_err());
        assert!(eval_cdf_approx(ApproxId::Lin, 8.999, None).is_ok());
        assert!(eval_cdf_extended(ApproxId::Lin, -9.5, None).is_err());
    }

    #[test]
    fn reflection_is_definitional() {
        let t1 = eval_cdf_approx(ApproxId::Tocher, 1.0, None).unwrap();
        assert_eq!(eval_cdf_extended(ApproxId::Tocher, -1.0, None).unwrap(), 1.0 - t1);
        let w = eval_cdf_approx(ApproxId::WaissiRossin, 0.4, None).unwrap();
        assert_eq!(eval_cdf_extended(ApproxId::WaissiRossin, -0.4, None).unwrap(), 1.0 - w);
    }

    #[test]
    fn reflection_holds_at_signed_zero() {
        for id in ApproxId::ALL {
            let sum = eval_cdf_extended(id, 0.0, None).unwrap() + eval_cdf_extended(id, -0.0, None).unwrap();
            assert_eq!(sum, 1.0, "{id}");
        }
    }

    #[test]
    fn linear_coefficient_at_zero_and_one() {
        let table = Phi9Coefficients::table_literal();
        assert_eq!(phi9_linear_coefficient(0.0, &table), 1.5957691187);
        let sum: f64 = PHI9_TABLE_LITERAL.iter().sum();
        assert!((phi9_linear_coefficient(1.0, &table) - sum).abs() < 1e-15);
    }

    #[test]
    fn default_differs_from_table_at_four_positions() {
        let diff: Vec<usize> = (0..PHI9_LEN)
            .filter(|&j| PHI9_DEFAULT[j] != PHI9_TABLE_LITERAL[j])
            .map(|j| j + 1)
            .collect();
        assert_eq!(diff, vec![3, 5, 8, 14]);
    }

    #[test]
    fn horner_matches_naive_sum() {
        let c = [1.0, -2.0, 0.5, 3.0];
        let x = 1.7f64;
        let naive: f64 = c.iter().enumerate().map(|(i, a)| a * x.powi(i as i32)).sum();
        assert!((horner(&c, x) - naive).abs() < 1e-13);
        assert_eq!(horner(&[], x), 0.0);
    }
}
