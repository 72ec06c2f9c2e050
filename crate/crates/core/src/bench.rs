//! Throughput timing for the approximations and the reference oracle.

use std::hint::black_box;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::approximations::{eval_cdf_approx, ApproxId, Phi9Coefficients};
use crate::error::{Error, Result};
use crate::metrics::GridSpec;
use crate::reference::ref_cdf;

pub const MIN_EVALUATIONS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BenchSubject {
    Approx(ApproxId),
    Oracle,
}

impl BenchSubject {
    pub fn label(self) -> String {
        match self {
            BenchSubject::Approx(id) => format!("{id} {}", id.descriptor().name),
            BenchSubject::Oracle => "reference oracle".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchResult {
    pub subject: BenchSubject,
    pub evaluations: u64,
    pub wall_time: Duration,
    pub per_eval_ns: f64,
    /// Sum of all outputs; keeps the work observable.
    pub checksum: f64,
}

fn time_subject(subject: BenchSubject, inputs: &[f64], evaluations: u64, coeffs: &Phi9Coefficients) -> Result<BenchResult> {
    let eval = |z: f64| -> Result<f64> {
        match subject {
            BenchSubject::Approx(id) => eval_cdf_approx(id, z, Some(coeffs)),
            BenchSubject::Oracle => ref_cdf(z),
        }
    };

    // Warm-up over one full pass of the inputs.
    let mut warm = 0.0;
    for &z in inputs {
        warm += eval(black_box(z))?;
    }
    black_box(warm);

    let n = inputs.len();
    let mut checksum = 0.0;
    let start = Instant::now();
    for i in 0..evaluations {
        let z = inputs[(i % n as u64) as usize];
        checksum += eval(black_box(z))?;
    }
    let wall_time = start.elapsed();
    black_box(checksum);

    Ok(BenchResult {
        subject,
        evaluations,
        wall_time,
        per_eval_ns: wall_time.as_nanos() as f64 / evaluations as f64,
        checksum,
    })
}

/// Times all nine approximations and the oracle, `evaluations` calls each,
/// cycling through the 0..=4 step 0.01 grid.
pub fn run_bench(evaluations: u64) -> Result<Vec<BenchResult>> {
    if evaluations < MIN_EVALUATIONS {
        return Err(Error::InvalidArgument(format!(
            "bench needs at least {MIN_EVALUATIONS} evaluations per subject, got {evaluations}"
        )));
    }
    let inputs = GridSpec::grid_a().points()?;
    let coeffs = Phi9Coefficients::default();
    ApproxId::ALL
        .into_iter()
        .map(BenchSubject::Approx)
        .chain([BenchSubject::Oracle])
        .map(|s| time_subject(s, &inputs, evaluations, &coeffs))
        .collect()
}
