use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;

use normapprox::approximations::PHI9_TABLE_LITERAL;
use normapprox::{eval_cdf_approx, ApproxId, Phi9Coefficients};
use normapprox_ffi::*;

#[test]
fn reference_calls() {
    let mut v = f64::NAN;
    assert_eq!(unsafe { na_ref_cdf(0.0, &mut v) }, NaStatus::Ok);
    assert_eq!(v, 0.5);
    assert_eq!(unsafe { na_ref_quantile(0.5, &mut v) }, NaStatus::Ok);
    assert_eq!(v, 0.0);
    assert_eq!(unsafe { na_ref_quantile(1.0, &mut v) }, NaStatus::Domain);
    assert_eq!(unsafe { na_ref_cdf(1.0, ptr::null_mut()) }, NaStatus::NullPointer);
}

#[test]
fn eval_matches_library() {
    let mut v = 0.0;
    for id in ApproxId::ALL {
        assert_eq!(unsafe { na_eval_cdf(id.index(), 1.3, ptr::null(), &mut v) }, NaStatus::Ok);
        assert_eq!(v, eval_cdf_approx(id, 1.3, None).unwrap(), "{id}");
    }
    assert_eq!(unsafe { na_eval_cdf(10, 1.0, ptr::null(), &mut v) }, NaStatus::UnknownId);
    assert_eq!(unsafe { na_eval_cdf(1, -1.0, ptr::null(), &mut v) }, NaStatus::Domain);
    assert_eq!(unsafe { na_eval_cdf(2, 9.0, ptr::null(), &mut v) }, NaStatus::Domain);

    let mut lo = 0.0;
    let mut hi = 0.0;
    unsafe {
        assert_eq!(na_eval_cdf_extended(9, -1.3, ptr::null(), &mut lo), NaStatus::Ok);
        assert_eq!(na_eval_cdf_extended(9, 1.3, ptr::null(), &mut hi), NaStatus::Ok);
    }
    assert_eq!(lo + hi, 1.0);
}

#[test]
fn quantile_calls() {
    let mut v = 0.0;
    assert_eq!(unsafe { na_quantile_approx(3, 0.5, &mut v) }, NaStatus::Ok);
    assert_eq!(v, 0.0);
    assert_eq!(unsafe { na_quantile_approx(4, 0.7, &mut v) }, NaStatus::UnknownId);
    assert_eq!(unsafe { na_quantile_approx(1, 0.4, &mut v) }, NaStatus::Domain);
}

#[test]
fn coefficient_handles() {
    let d = na_phi9_default();
    let mut k = [0.0; NA_PHI9_LEN];
    assert_eq!(unsafe { na_phi9_get(d, k.as_mut_ptr(), k.len()) }, NaStatus::Ok);
    assert_eq!(k, Phi9Coefficients::default().k);
    assert_eq!(unsafe { na_phi9_get(d, k.as_mut_ptr(), 3) }, NaStatus::InvalidArgument);

    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { na_phi9_from_array(PHI9_TABLE_LITERAL.as_ptr(), NA_PHI9_LEN, &mut h) },
        NaStatus::Ok
    );
    let (mut a, mut b) = (0.0, 0.0);
    unsafe {
        na_eval_cdf(9, 0.8, h, &mut a);
        na_eval_cdf(9, 0.8, d, &mut b);
    }
    let lit = eval_cdf_approx(ApproxId::Proposed, 0.8, Some(&Phi9Coefficients::table_literal())).unwrap();
    assert_eq!(a, lit);
    assert_ne!(a, b);

    let bad = [f64::NAN; NA_PHI9_LEN];
    let mut h2 = ptr::null_mut();
    assert_eq!(
        unsafe { na_phi9_from_array(bad.as_ptr(), NA_PHI9_LEN, &mut h2) },
        NaStatus::InvalidArgument
    );
    assert!(h2.is_null());
    unsafe {
        na_phi9_free(h);
        na_phi9_free(d);
        na_phi9_free(ptr::null_mut());
    }
}

#[test]
fn error_report_on_grid() {
    let mut s = NaErrorSummary::default();
    assert_eq!(
        unsafe { na_error_report(1, 0.0, 4.0, 0.01, ptr::null(), &mut s) },
        NaStatus::Ok
    );
    assert_eq!(s.count, 401);
    assert!(s.mxae > 1e-2 && s.mxae < 2e-2);
    assert_eq!(
        unsafe { na_error_report(1, 0.0, 1.0, 0.3, ptr::null(), &mut s) },
        NaStatus::InvalidGrid
    );
}

#[test]
fn reconciliation_handle() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { na_reconcile(0.0, 4.0, 0.01, &mut h) }, NaStatus::Ok);
    let n = unsafe { na_reconciliation_len(h) };
    assert!(n == 8 || n == 16);
    let mut sel = usize::MAX;
    assert_eq!(unsafe { na_reconciliation_selected_index(h, &mut sel) }, NaStatus::Ok);
    assert!(sel < n);

    let mut best = NaErrorSummary::default();
    unsafe { na_reconciliation_get(h, sel, &mut best) };
    for i in 0..n {
        let mut s = NaErrorSummary::default();
        assert_eq!(unsafe { na_reconciliation_get(h, i, &mut s) }, NaStatus::Ok);
        assert!(s.mxae >= best.mxae);
        assert!(!unsafe { na_reconciliation_label(h, i) }.is_null());
    }
    let label = unsafe { CStr::from_ptr(na_reconciliation_label(h, sel)) };
    assert_eq!(label.to_str().unwrap(), normapprox::approximations::PHI9_DEFAULT_LABEL);
    assert!(unsafe { na_reconciliation_label(h, n) }.is_null());

    let mut k = [0.0; NA_PHI9_LEN];
    assert_eq!(
        unsafe { na_reconciliation_coefficients(h, sel, k.as_mut_ptr(), k.len()) },
        NaStatus::Ok
    );
    assert_eq!(k, Phi9Coefficients::default().k);
    assert!(unsafe { na_reconciliation_success(h) });
    unsafe { na_reconciliation_free(h) };
    assert_eq!(unsafe { na_reconciliation_len(ptr::null()) }, 0);
}

#[test]
fn version_and_messages() {
    let v = unsafe { CStr::from_ptr(na_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    let m = unsafe { CStr::from_ptr(na_status_message(NaStatus::NullPointer)) };
    assert_eq!(m.to_str().unwrap(), "null pointer");
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/normapprox.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for sym in ["na_ref_cdf", "na_eval_cdf", "na_reconcile", "NA_STATUS_PANIC", "NA_PHI9_LEN 17"] {
        assert!(text.contains(sym), "{sym} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("check.c");
    std::fs::write(
        &src,
        "#include \"normapprox.h\"\nint main(void) { double v; return na_ref_cdf(0.0, &v) == NA_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let status = match Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(header.parent().unwrap())
        .arg(&src)
        .status()
    {
        Ok(s) => s,
        Err(_) => {
            eprintln!("no C compiler found; skipping syntax check");
            return;
        }
    };
    assert!(status.success());
}
