//! Evaluation grids, MXAE/MAE error reports and the inverse-approximation
//! comparison table.

use serde::Serialize;

use crate::approximations::{eval_cdf_approx, ApproxId, Phi9Coefficients};
use crate::error::{Error, Result};
use crate::inverse::{quantile_approx, QuantileApproxId};
use crate::reference::{ref_cdf, ref_quantile};

/// How far `(stop - start) / step` may sit from an integer before the grid
/// is rejected as not landing on `stop`.
const STEP_SLACK: f64 = 1e-9;

/// Inclusive arithmetic progression `start + i·step`, `i = 0 … count-1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(Error::InvalidGrid("grid bounds and step must be finite".into()));
        }
        if step <= 0.0 {
            return Err(Error::InvalidGrid(format!("step must be positive, got {step}")));
        }
        if stop <= start {
            return Err(Error::InvalidGrid(format!(
                "stop ({stop}) must exceed start ({start})"
            )));
        }
        let steps = (stop - start) / step;
        let whole = steps.round();
        if (steps - whole).abs() > STEP_SLACK * whole.max(1.0) {
            return Err(Error::InvalidGrid(format!(
                "({stop} - {start}) / {step} is not a whole number of steps"
            )));
        }
        Ok(Self {
            start,
            stop,
            step,
            count: whole as usize + 1,
        })
    }

    /// A one-point grid at `z`.
    pub fn single(z: f64) -> Self {
        Self {
            start: z,
            stop: z,
            step: 1.0,
            count: 1,
        }
    }

    /// 0 to 4 in steps of 0.01 (401 points).
    pub fn grid_a() -> Self {
        Self::new(0.0, 4.0, 0.01).expect("static grid")
    }

    /// 0 to 5 in steps of 0.001 (5001 points); the default for the
    /// accuracy table.
    pub fn grid_b() -> Self {
        Self::new(0.0, 5.0, 0.001).expect("static grid")
    }

    /// Comparison abscissae for the quantile tables, 0 to 4.8 step 0.4.
    pub fn inverse_table_default() -> Self {
        Self::new(0.0, 4.8, 0.4).expect("static grid")
    }

    /// Probability scan used for the Δ curve, 0.5 to 0.9999 step 1e-4.
    pub fn delta_curve_default() -> Self {
        Self::new(0.5, 0.9999, 1e-4).expect("static grid")
    }

    pub fn point(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn points(&self) -> Result<Vec<f64>> {
        if !(self.count >= 1 && self.step > 0.0 && self.start.is_finite()) {
            return Err(Error::InvalidGrid(format!("malformed grid {self:?}")));
        }
        Ok((0..self.count).map(|i| self.point(i)).collect())
    }
}

/// Validates and expands a grid.
pub fn build_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    GridSpec::new(start, stop, step)?.points()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub z: f64,
    /// `approximation - reference`
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub approx: ApproxId,
    pub grid: GridSpec,
    pub mxae: f64,
    /// Smallest grid point attaining `mxae`.
    pub mxae_location: f64,
    pub mae: f64,
    /// Coefficient variant, for the ninth approximation only.
    pub variant: Option<String>,
}

/// Signed errors of approximation `id` against the reference, in grid order.
pub fn error_curve(
    id: ApproxId,
    grid: &GridSpec,
    coeffs: Option<&Phi9Coefficients>,
) -> Result<Vec<CurvePoint>> {
    grid.points()?
        .into_iter()
        .map(|z| {
            let error = eval_cdf_approx(id, z, coeffs)? - ref_cdf(z)?;
            Ok(CurvePoint { z, error })
        })
        .collect()
}

/// Reduces a curve to (mxae, location, mae). Sequential so results are
/// bit-reproducible.
pub fn summarize(curve: &[CurvePoint]) -> Option<(f64, f64, f64)> {
    let first = curve.first()?;
    let mut mxae = first.error.abs();
    let mut location = first.z;
    let mut sum = 0.0;
    for pt in curve {
        let e = pt.error.abs();
        if e > mxae {
            mxae = e;
            location = pt.z;
        }
        sum += e;
    }
    Some((mxae, location, sum / curve.len() as f64))
}

pub fn compute_error_report(
    id: ApproxId,
    grid: &GridSpec,
    coeffs: Option<&Phi9Coefficients>,
) -> Result<ErrorReport> {
    let curve = error_curve(id, grid, coeffs)?;
    let (mxae, mxae_location, mae) =
        summarize(&curve).ok_or_else(|| Error::InvalidGrid("empty grid".into()))?;
    let variant = (id == ApproxId::Proposed).then(|| {
        coeffs
            .map(|c| c.variant_tag.clone())
            .unwrap_or_else(|| Phi9Coefficients::default().variant_tag)
    });
    Ok(ErrorReport {
        approx: id,
        grid: *grid,
        mxae,
        mxae_location,
        mae,
        variant,
    })
}

/// One row of the quantile comparison: true `z`, `p = Φ(z)`, the three
/// approximations and their differences from `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InverseRow {
    pub z: f64,
    pub p: f64,
    pub approx: [f64; 3],
    pub delta: [f64; 3],
}

/// Builds the quantile comparison table. `p` is computed at full precision
/// from the reference oracle.
pub fn inverse_table(z_values: &[f64]) -> Result<Vec<InverseRow>> {
    z_values
        .iter()
        .map(|&z| {
            if z.is_nan() || z < 0.0 {
                return Err(crate::error::domain("z", z, "[0, inf)"));
            }
            let p = ref_cdf(z)?;
            let mut approx = [0.0; 3];
            let mut delta = [0.0; 3];
            for (i, id) in QuantileApproxId::ALL.into_iter().enumerate() {
                approx[i] = quantile_approx(id, p)?;
                delta[i] = approx[i] - z;
            }
            Ok(InverseRow { z, p, approx, delta })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaPoint {
    pub p: f64,
    pub delta: f64,
}

/// `ẑ(p) - Φ⁻¹(p)` over a probability grid; the exact quantile comes from
/// the reference root finder.
pub fn delta_curve(id: QuantileApproxId, grid: &GridSpec) -> Result<Vec<DeltaPoint>> {
    grid.points()?
        .into_iter()
        .map(|p| {
            let delta = quantile_approx(id, p)? - ref_quantile(p)?;
            Ok(DeltaPoint { p, delta })
        })
        .collect()
}
