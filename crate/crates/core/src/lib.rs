//! Closed-form approximations of the standard normal CDF and its inverse,
//! scored against a self-validated reference oracle.
//!
//! * [`reference`]: Φ and Φ⁻¹ to near machine precision, plus an
//!   independent quadrature route for cross-checking.
//! * [`approximations`]: the nine logistic-form CDF approximations.
//! * [`inverse`]: the three quantile approximations and the Polya form.
//! * [`metrics`]: grids, MXAE/MAE reports, error curves and quantile tables.
//! * [`reconcile`]: choice among the published coefficient readings for the
//!   ninth approximation.
//! * [`cli`]: the `normapprox` command-line harness.

pub mod approximations;
pub mod bench;
pub mod cli;
pub mod error;
pub mod inverse;
pub mod metrics;
pub mod output;
pub mod quadrature;
pub mod reconcile;
pub mod reference;

pub use approximations::{
    eval_cdf_approx, eval_cdf_extended, list_approximations, phi9_linear_coefficient,
    ApproxDescriptor, ApproxId, Phi9Coefficients,
};
pub use error::{Error, Result};
pub use inverse::{d1_poly, polya_cdf, quantile_approx, z1_schmeiser, z2_shore, z3_proposed, QuantileApproxId};
pub use metrics::{build_grid, compute_error_report, error_curve, inverse_table, ErrorReport, GridSpec};
pub use reconcile::{generate_variants, reconcile_phi9, ReconciliationReport};
pub use reference::{oracle_cross_check, ref_cdf, ref_quantile};
