//! C ABI over `normapprox`.
//!
//! Every fallible call returns an [`NaStatus`] and writes its result through
//! an out-pointer. Handles are opaque and must be released with the matching
//! `_free` function. Panics never cross the boundary; they surface as
//! `NA_STATUS_PANIC`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use normapprox::approximations::PHI9_LEN;
use normapprox::reconcile::reconcile_phi9;
use normapprox::{
    compute_error_report, eval_cdf_approx, eval_cdf_extended, quantile_approx, ref_cdf,
    ref_quantile, ApproxId, Error, GridSpec, Phi9Coefficients, QuantileApproxId,
};

/// Number of coefficients `k1..k17` held by a coefficient handle.
pub const NA_PHI9_LEN: usize = 17;
const _: () = assert!(NA_PHI9_LEN == PHI9_LEN);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NaStatus {
    Ok = 0,
    Domain = 1,
    InvalidGrid = 2,
    UnknownId = 3,
    NullPointer = 4,
    InvalidArgument = 5,
    NoConvergence = 6,
    Panic = 7,
}

impl From<Error> for NaStatus {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain { .. } => NaStatus::Domain,
            Error::UnknownApprox(_) | Error::UnknownQuantileApprox(_) => NaStatus::UnknownId,
            Error::InvalidGrid(_) => NaStatus::InvalidGrid,
            Error::NoConvergence(_) => NaStatus::NoConvergence,
            Error::InvalidArgument(_) | Error::Io { .. } | Error::Parse(_) => {
                NaStatus::InvalidArgument
            }
        }
    }
}

/// MXAE, its location, MAE and the number of grid points.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NaErrorSummary {
    pub mxae: f64,
    pub mxae_location: f64,
    pub mae: f64,
    pub count: usize,
}

/// Coefficients for the ninth approximation.
pub struct NaPhi9Coefficients {
    inner: Phi9Coefficients,
}

/// Result of scoring every coefficient variant.
pub struct NaReconciliation {
    summaries: Vec<NaErrorSummary>,
    labels: Vec<CString>,
    coefficients: Vec<[f64; PHI9_LEN]>,
    selected: usize,
    success: bool,
}

fn guard(f: impl FnOnce() -> Result<(), NaStatus>) -> NaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NaStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => NaStatus::Panic,
    }
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), NaStatus> {
    if out.is_null() {
        return Err(NaStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

unsafe fn coeffs_ref<'a>(h: *const NaPhi9Coefficients) -> Option<&'a Phi9Coefficients> {
    h.as_ref().map(|c| &c.inner)
}

fn summary(report: &normapprox::ErrorReport) -> NaErrorSummary {
    NaErrorSummary {
        mxae: report.mxae,
        mxae_location: report.mxae_location,
        mae: report.mae,
        count: report.grid.count,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn na_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn na_status_message(status: NaStatus) -> *const c_char {
    let msg: &'static CStr = match status {
        NaStatus::Ok => c"ok",
        NaStatus::Domain => c"argument outside the domain",
        NaStatus::InvalidGrid => c"invalid grid",
        NaStatus::UnknownId => c"unknown approximation id",
        NaStatus::NullPointer => c"null pointer",
        NaStatus::InvalidArgument => c"invalid argument",
        NaStatus::NoConvergence => c"root finder did not converge",
        NaStatus::Panic => c"internal panic",
    };
    msg.as_ptr()
}

/// Reference Φ(z).
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn na_ref_cdf(z: f64, out: *mut f64) -> NaStatus {
    guard(|| write(out, ref_cdf(z)?))
}

/// Reference Φ⁻¹(p), `0 < p < 1`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn na_ref_quantile(p: f64, out: *mut f64) -> NaStatus {
    guard(|| write(out, ref_quantile(p)?))
}

/// Approximation `id` (1..=9) at `z >= 0`. `coeffs` may be null, in which
/// case the default coefficients are used by approximation 9.
///
/// # Safety
/// `coeffs` must be null or a live handle; `out` must be null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn na_eval_cdf(
    id: u32,
    z: f64,
    coeffs: *const NaPhi9Coefficients,
    out: *mut f64,
) -> NaStatus {
    guard(|| {
        let id = ApproxId::from_index(id)?;
        write(out, eval_cdf_approx(id, z, coeffs_ref(coeffs))?)
    })
}

/// As [`na_eval_cdf`] but accepts any real `z` by reflection.
///
/// # Safety
/// Same as [`na_eval_cdf`].
#[no_mangle]
pub unsafe extern "C" fn na_eval_cdf_extended(
    id: u32,
    z: f64,
    coeffs: *const NaPhi9Coefficients,
    out: *mut f64,
) -> NaStatus {
    guard(|| {
        let id = ApproxId::from_index(id)?;
        write(out, eval_cdf_extended(id, z, coeffs_ref(coeffs))?)
    })
}

/// Quantile approximation `id` (1..=3) at `0.5 <= p < 1`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn na_quantile_approx(id: u32, p: f64, out: *mut f64) -> NaStatus {
    guard(|| {
        let id = QuantileApproxId::from_index(id)?;
        write(out, quantile_approx(id, p)?)
    })
}

/// New handle holding the default coefficients. Never null.
#[no_mangle]
pub extern "C" fn na_phi9_default() -> *mut NaPhi9Coefficients {
    Box::into_raw(Box::new(NaPhi9Coefficients {
        inner: Phi9Coefficients::default(),
    }))
}

/// New handle from `len` values, which must equal `NA_PHI9_LEN`.
///
/// # Safety
/// `k` must point to `len` readable doubles; `out` must be null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn na_phi9_from_array(
    k: *const f64,
    len: usize,
    out: *mut *mut NaPhi9Coefficients,
) -> NaStatus {
    guard(|| {
        if k.is_null() || out.is_null() {
            return Err(NaStatus::NullPointer);
        }
        let values: [f64; PHI9_LEN] = std::slice::from_raw_parts(k, len)
            .try_into()
            .map_err(|_| NaStatus::InvalidArgument)?;
        if values.iter().any(|v| !v.is_finite()) {
            return Err(NaStatus::InvalidArgument);
        }
        let h = NaPhi9Coefficients {
            inner: Phi9Coefficients::new(values, "custom"),
        };
        write(out, Box::into_raw(Box::new(h)))
    })
}

/// Copies the coefficients into `out[0..len]`; `len` must equal
/// `NA_PHI9_LEN`.
///
/// # Safety
/// `h` must be a live handle; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn na_phi9_get(
    h: *const NaPhi9Coefficients,
    out: *mut f64,
    len: usize,
) -> NaStatus {
    guard(|| {
        let c = coeffs_ref(h).ok_or(NaStatus::NullPointer)?;
        copy_coefficients(&c.k, out, len)
    })
}

unsafe fn copy_coefficients(k: &[f64; PHI9_LEN], out: *mut f64, len: usize) -> Result<(), NaStatus> {
    if out.is_null() {
        return Err(NaStatus::NullPointer);
    }
    if len != PHI9_LEN {
        return Err(NaStatus::InvalidArgument);
    }
    ptr::copy_nonoverlapping(k.as_ptr(), out, len);
    Ok(())
}

/// # Safety
/// `h` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn na_phi9_free(h: *mut NaPhi9Coefficients) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// MXAE / MAE of approximation `id` on the grid `start..=stop` by `step`.
///
/// # Safety
/// `coeffs` must be null or a live handle; `out` must be null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn na_error_report(
    id: u32,
    start: f64,
    stop: f64,
    step: f64,
    coeffs: *const NaPhi9Coefficients,
    out: *mut NaErrorSummary,
) -> NaStatus {
    guard(|| {
        let id = ApproxId::from_index(id)?;
        let grid = GridSpec::new(start, stop, step)?;
        let report = compute_error_report(id, &grid, coeffs_ref(coeffs))?;
        write(out, summary(&report))
    })
}

/// Scores every coefficient variant of approximation 9 on the grid.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn na_reconcile(
    start: f64,
    stop: f64,
    step: f64,
    out: *mut *mut NaReconciliation,
) -> NaStatus {
    guard(|| {
        if out.is_null() {
            return Err(NaStatus::NullPointer);
        }
        let grid = GridSpec::new(start, stop, step)?;
        let report = reconcile_phi9(&grid)?;
        let selected = report
            .variants
            .iter()
            .position(|v| v.variant.label == report.selected)
            .ok_or(NaStatus::Panic)?;
        let h = NaReconciliation {
            summaries: report.variants.iter().map(|v| summary(&v.report)).collect(),
            labels: report
                .variants
                .iter()
                .map(|v| CString::new(v.variant.label.as_str()).expect("labels have no NUL"))
                .collect(),
            coefficients: report.variants.iter().map(|v| v.variant.coefficients.k).collect(),
            selected,
            success: report.success,
        };
        write(out, Box::into_raw(Box::new(h)))
    })
}

/// Number of variants evaluated; 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn na_reconciliation_len(h: *const NaReconciliation) -> usize {
    h.as_ref().map_or(0, |r| r.summaries.len())
}

/// Index of the selected variant.
///
/// # Safety
/// `h` must be a live handle; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn na_reconciliation_selected_index(
    h: *const NaReconciliation,
    out: *mut usize,
) -> NaStatus {
    guard(|| write(out, h.as_ref().ok_or(NaStatus::NullPointer)?.selected))
}

/// Whether the selected variant met the published MXAE and location.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn na_reconciliation_success(h: *const NaReconciliation) -> bool {
    h.as_ref().is_some_and(|r| r.success)
}

/// # Safety
/// `h` must be a live handle; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn na_reconciliation_get(
    h: *const NaReconciliation,
    index: usize,
    out: *mut NaErrorSummary,
) -> NaStatus {
    guard(|| {
        let r = h.as_ref().ok_or(NaStatus::NullPointer)?;
        let s = *r.summaries.get(index).ok_or(NaStatus::InvalidArgument)?;
        write(out, s)
    })
}

/// Label of variant `index`, borrowed from the handle; null when out of
/// range.
///
/// # Safety
/// `h` must be null or a live handle. The string is valid until the handle
/// is freed.
#[no_mangle]
pub unsafe extern "C" fn na_reconciliation_label(
    h: *const NaReconciliation,
    index: usize,
) -> *const c_char {
    h.as_ref()
        .and_then(|r| r.labels.get(index))
        .map_or(ptr::null(), |s| s.as_ptr())
}

/// # Safety
/// `h` must be a live handle; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn na_reconciliation_coefficients(
    h: *const NaReconciliation,
    index: usize,
    out: *mut f64,
    len: usize,
) -> NaStatus {
    guard(|| {
        let r = h.as_ref().ok_or(NaStatus::NullPointer)?;
        let k = r.coefficients.get(index).ok_or(NaStatus::InvalidArgument)?;
        copy_coefficients(k, out, len)
    })
}

/// # Safety
/// `h` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn na_reconciliation_free(h: *mut NaReconciliation) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_codes() {
        assert_eq!(NaStatus::from(Error::UnknownApprox(0)), NaStatus::UnknownId);
        assert_eq!(NaStatus::from(Error::InvalidGrid("x".into())), NaStatus::InvalidGrid);
    }

    #[test]
    fn panics_are_contained() {
        assert_eq!(guard(|| panic!("boom")), NaStatus::Panic);
    }

    #[test]
    fn every_status_has_a_message() {
        for s in [NaStatus::Ok, NaStatus::Domain, NaStatus::Panic] {
            let m = unsafe { CStr::from_ptr(na_status_message(s)) };
            assert!(!m.to_bytes().is_empty());
        }
    }
}
