use std::ffi::{c_char, CStr, CString};
use std::ptr;

use lnd_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = lnd_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take_string(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    lnd_string_free(s);
    out
}

unsafe fn context(coeffs: &str, vars: &str) -> *mut LndContext {
    let mut ctx = ptr::null_mut();
    let st = lnd_context_new(c(coeffs).as_ptr(), c(vars).as_ptr(), ptr::null(), &mut ctx);
    assert_eq!(st, LndStatus::Ok);
    ctx
}

unsafe fn poly(ctx: *const LndContext, s: &str) -> *mut LndPoly {
    let mut p = ptr::null_mut();
    assert_eq!(lnd_poly_parse(ctx, c(s).as_ptr(), &mut p), LndStatus::Ok, "{s}");
    p
}

unsafe fn text(p: *const LndPoly) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(lnd_poly_to_string(p, &mut s), LndStatus::Ok);
    take_string(s)
}

#[test]
fn polynomial_round_trip_and_arithmetic() {
    unsafe {
        let ctx = context("t", "X, Y");
        let a = poly(ctx, "X + t");
        let b = poly(ctx, "X - t");
        let mut prod = ptr::null_mut();
        assert_eq!(lnd_poly_arith(LndOp::Mul, a, b, &mut prod), LndStatus::Ok);
        assert_eq!(text(prod), "-t^2 + X^2");
        let mut q = ptr::null_mut();
        assert_eq!(lnd_poly_arith(LndOp::Div, prod, b, &mut q), LndStatus::Ok);
        let mut eq = false;
        assert_eq!(lnd_poly_equal(q, a, &mut eq), LndStatus::Ok);
        assert!(eq);
        let mut bad = ptr::null_mut();
        assert_eq!(lnd_poly_arith(LndOp::Div, a, b, &mut bad), LndStatus::Math);
        assert!(bad.is_null());
        assert!(last_error().contains("not exact"));
        for p in [a, b, prod, q] {
            lnd_poly_free(p);
        }
        lnd_context_free(ctx);
    }
}

#[test]
fn errors_are_reported_with_codes() {
    unsafe {
        let ctx = context("", "X");
        let mut p = ptr::null_mut();
        assert_eq!(lnd_poly_parse(ctx, c("X +* 1").as_ptr(), &mut p), LndStatus::Parse);
        assert!(last_error().contains("position"));
        assert_eq!(lnd_poly_parse(ptr::null(), c("X").as_ptr(), &mut p), LndStatus::NullPointer);
        let mut bad = ptr::null_mut();
        assert_eq!(lnd_context_new(ptr::null(), c("_T1").as_ptr(), ptr::null(), &mut bad), LndStatus::InvalidInput);

        let other = context("", "Y");
        let (x, y) = (poly(ctx, "X"), poly(other, "Y"));
        let mut sum = ptr::null_mut();
        assert_eq!(lnd_poly_arith(LndOp::Add, x, y, &mut sum), LndStatus::ContextMismatch);
        lnd_poly_free(x);
        lnd_poly_free(y);
        lnd_context_free(other);
        lnd_context_free(ctx);
    }
}

#[test]
fn derivation_and_nilpotency() {
    unsafe {
        let ctx = context("t", "X, Y, Z");
        let vars = [c("X"), c("Y"), c("Z")];
        let imgs = [c("t"), c("X"), c("Y")];
        let vp: Vec<*const c_char> = vars.iter().map(|s| s.as_ptr()).collect();
        let ip: Vec<*const c_char> = imgs.iter().map(|s| s.as_ptr()).collect();
        let mut d = ptr::null_mut();
        assert_eq!(lnd_derivation_new(ctx, vp.as_ptr(), ip.as_ptr(), 3, &mut d), LndStatus::Ok);

        let f = poly(ctx, "2*t*Y - X^2");
        let mut df = ptr::null_mut();
        assert_eq!(lnd_derivation_apply(d, f, &mut df), LndStatus::Ok);
        assert_eq!(text(df), "0");

        let z = poly(ctx, "Z");
        let mut n = 0u32;
        assert_eq!(lnd_derivation_nilpotency_index(d, z, 128, &mut n), LndStatus::Ok);
        assert_eq!(n, 3);
        assert_eq!(lnd_derivation_nilpotency_index(d, z, 2, &mut n), LndStatus::CapExceeded);

        let gens = [poly(ctx, "X - t"), poly(ctx, "X + t")];
        let gp: Vec<*const LndPoly> = gens.iter().map(|&g| g as *const _).collect();
        let (one, t) = (poly(ctx, "1"), poly(ctx, "t"));
        let mut member = true;
        assert_eq!(lnd_ideal_membership(one, gp.as_ptr(), 2, &mut member), LndStatus::Ok);
        assert!(!member);
        assert_eq!(lnd_ideal_membership(t, gp.as_ptr(), 2, &mut member), LndStatus::Ok);
        assert!(member);

        for p in [f, df, z, one, t, gens[0], gens[1]] {
            lnd_poly_free(p);
        }
        lnd_derivation_free(d);
        lnd_context_free(ctx);
    }
}

#[test]
fn jobs_and_corpus() {
    unsafe {
        let job = c(r#"{ "ring": { "coefficients": ["t"], "variables": ["X", "Y", "Z"] },
            "derivation": { "Y": "X - t", "Z": "X + t" },
            "checks": [ { "type": "fixed_point_free", "expect": true } ] }"#);
        let mut report = ptr::null_mut();
        let mut overall = true;
        assert_eq!(lnd_run_job_json(job.as_ptr(), &mut report, &mut overall), LndStatus::Ok);
        assert!(!overall);
        let v: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
        assert_eq!(v["checks"][0]["status"], "fail");

        assert_eq!(lnd_run_corpus_json(c("dd").as_ptr(), &mut report, &mut overall), LndStatus::Ok);
        assert!(overall);
        lnd_string_free(report);
        assert_eq!(lnd_run_corpus_json(c("missing").as_ptr(), &mut report, &mut overall), LndStatus::Job);

        assert_eq!(lnd_run_job_json(c("{").as_ptr(), &mut report, &mut overall), LndStatus::Job);
    }
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/lnd.h");
    let src = std::fs::read_to_string(header).unwrap();
    assert!(src.contains("lnd_run_corpus_json"));
    // compile it when a C compiler is around
    if let Ok(out) = std::process::Command::new("cc").args(["-fsyntax-only", "-x", "c", header]).output() {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
