//! C ABI over the `lnd` library.
//!
//! Objects are opaque heap handles released by their `_free` function.
//! Every fallible call returns an [`LndStatus`]; on failure the message is
//! available from [`lnd_last_error`] on the same thread. Strings returned
//! to the caller are released with [`lnd_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lnd::derivation::Nilpotency;
use lnd::groebner::{ideal_membership, Budget};
use lnd::job::{self, JobError, RunOptions};
use lnd::{Derivation, Error, Polynomial, VarContext};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LndStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    ContextMismatch = 4,
    InvalidInput = 5,
    Math = 6,
    BudgetExhausted = 7,
    CapExceeded = 8,
    Job = 9,
    Panic = 10,
}

pub struct LndContext(VarContext);
pub struct LndPoly(Polynomial);
pub struct LndDerivation(Derivation);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(LndStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Syntax { .. } | Error::UnknownIdentifier { .. } | Error::BadExponent { .. } => LndStatus::Parse,
            Error::ContextMismatch => LndStatus::ContextMismatch,
            Error::BudgetExhausted(_) => LndStatus::BudgetExhausted,
            Error::CapExceeded { .. } => LndStatus::CapExceeded,
            Error::InvalidContext(_)
            | Error::UnknownVariable(_)
            | Error::CoefficientImage(_)
            | Error::DimensionMismatch(_)
            | Error::InvalidOrder(_) => LndStatus::InvalidInput,
            _ => LndStatus::Math,
        };
        Failure(status, e.to_string())
    }
}

impl From<JobError> for Failure {
    fn from(e: JobError) -> Self {
        Failure(LndStatus::Job, e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

fn null() -> Failure {
    Failure(LndStatus::NullPointer, "null pointer argument".into())
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Res<()>) -> LndStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            LndStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            LndStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Res<&'a str> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(LndStatus::InvalidUtf8, "string is not valid UTF-8".into()))
}

unsafe fn list(s: *const c_char) -> Res<Vec<String>> {
    if s.is_null() {
        return Ok(Vec::new());
    }
    Ok(text(s)?.split(',').map(str::trim).filter(|p| !p.is_empty()).map(String::from).collect())
}

unsafe fn get<'a, T>(p: *const T) -> Res<&'a T> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Res<()> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Res<()> {
    if out.is_null() {
        return Err(null());
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T) -> Res<()> {
    if out.is_null() {
        return Err(null());
    }
    *out = value;
    Ok(())
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn lnd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn lnd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a context. Each argument is a comma-separated list; `coefficients`
/// and `relations` may be null.
///
/// # Safety
/// String arguments must be null or nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lnd_context_new(
    coefficients: *const c_char,
    variables: *const c_char,
    relations: *const c_char,
    out: *mut *mut LndContext,
) -> LndStatus {
    guard(|| {
        let coeffs = list(coefficients)?;
        if variables.is_null() {
            return Err(null());
        }
        let vars = list(variables)?;
        let rels = list(relations)?;
        let mut ctx = VarContext::over(&coeffs, &vars)?;
        if !rels.is_empty() {
            ctx = ctx.with_relations(&rels)?;
        }
        put(out, LndContext(ctx))
    })
}

/// # Safety
/// `ctx` must be null or a handle from [`lnd_context_new`].
#[no_mangle]
pub unsafe extern "C" fn lnd_context_free(ctx: *mut LndContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// # Safety
/// `ctx` must be a live context, `src` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lnd_poly_parse(
    ctx: *const LndContext,
    src: *const c_char,
    out: *mut *mut LndPoly,
) -> LndStatus {
    guard(|| {
        let p = Polynomial::parse(text(src)?, &get(ctx)?.0)?;
        put(out, LndPoly(p))
    })
}

/// # Safety
/// `p` must be null or a handle returned by this library.
#[no_mangle]
pub unsafe extern "C" fn lnd_poly_free(p: *mut LndPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Canonical text of a polynomial.
///
/// # Safety
/// `p` must be a live polynomial and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lnd_poly_to_string(p: *const LndPoly, out: *mut *mut c_char) -> LndStatus {
    guard(|| put_string(out, get(p)?.0.to_string()))
}

/// Binary operation selector for [`lnd_poly_arith`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LndOp {
    Add = 0,
    Sub = 1,
    Mul = 2,
    /// Exact division; fails with `Math` when the quotient is not a polynomial.
    Div = 3,
}

/// # Safety
/// `a` and `b` must be live polynomials and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lnd_poly_arith(
    op: LndOp,
    a: *const LndPoly,
    b: *const LndPoly,
    out: *mut *mut LndPoly,
) -> LndStatus {
    guard(|| {
        let (a, b) = (&get(a)?.0, &get(b)?.0);
        let r = match op {
            LndOp::Add => a.checked_add(b)?,
            LndOp::Sub => a.checked_sub(b)?,
            LndOp::Mul => a.checked_mul(b)?,
            LndOp::Div => a.exact_div(b)?,
        };
        put(out, LndPoly(r))
    })
}

/// # Safety
/// `a` and `b` must be live polynomials and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lnd_poly_equal(a: *const LndPoly, b: *const LndPoly, out: *mut bool) -> LndStatus {
    guard(|| {
        let (a, b) = (&get(a)?.0, &get(b)?.0);
        if a.context() != b.context() {
            return Err(Error::ContextMismatch.into());
        }
        write(out, a == b)
    })
}

/// Derivation from parallel arrays of variable names and image strings.
///
/// # Safety
/// `vars` and `images` must point to `n` nul-terminated strings each.
#[no_mangle]
pub unsafe extern "C" fn lnd_derivation_new(
    ctx: *const LndContext,
    vars: *const *const c_char,
    images: *const *const c_char,
    n: usize,
    out: *mut *mut LndDerivation,
) -> LndStatus {
    guard(|| {
        let ctx = &get(ctx)?.0;
        if n > 0 && (vars.is_null() || images.is_null()) {
            return Err(null());
        }
        let mut pairs = Vec::with_capacity(n);
        for i in 0..n {
            pairs.push((text(*vars.add(i))?, text(*images.add(i))?));
        }
        put(out, LndDerivation(Derivation::parse(ctx, &pairs)?))
    })
}

/// # Safety
/// `d` must be null or a handle from [`lnd_derivation_new`].
#[no_mangle]
pub unsafe extern "C" fn lnd_derivation_free(d: *mut LndDerivation) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` and `p` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lnd_derivation_apply(
    d: *const LndDerivation,
    p: *const LndPoly,
    out: *mut *mut LndPoly,
) -> LndStatus {
    guard(|| {
        let image = get(d)?.0.apply(&get(p)?.0)?;
        put(out, LndPoly(image))
    })
}

/// Least `n` with `D^(n+1) p = 0`; `CapExceeded` when `n` would exceed `cap`.
///
/// # Safety
/// `d` and `p` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lnd_derivation_nilpotency_index(
    d: *const LndDerivation,
    p: *const LndPoly,
    cap: u32,
    out: *mut u32,
) -> LndStatus {
    guard(|| match get(d)?.0.nilpotency_index(&get(p)?.0, cap)? {
        Nilpotency::Index(n) => write(out, n),
        Nilpotency::ExceededCap => Err(Error::CapExceeded { cap }.into()),
    })
}

/// Whether `p` lies in the ideal generated by `n` polynomials.
///
/// # Safety
/// `gens` must point to `n` live polynomial handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lnd_ideal_membership(
    p: *const LndPoly,
    gens: *const *const LndPoly,
    n: usize,
    out: *mut bool,
) -> LndStatus {
    guard(|| {
        let p = &get(p)?.0;
        if n > 0 && gens.is_null() {
            return Err(null());
        }
        let mut list = Vec::with_capacity(n);
        for i in 0..n {
            list.push(get(*gens.add(i))?.0.clone());
        }
        write(out, ideal_membership(p, &list, Budget::from_env())?)
    })
}

/// Runs a job given as JSON text and returns the JSON report. A job whose
/// checks fail still returns `Ok`; `overall` tells the verdict.
///
/// # Safety
/// `job_json` must be nul-terminated; `report` and `overall` writable.
#[no_mangle]
pub unsafe extern "C" fn lnd_run_job_json(
    job_json: *const c_char,
    report: *mut *mut c_char,
    overall: *mut bool,
) -> LndStatus {
    guard(|| {
        let spec = job::parse_spec(text(job_json)?, "job")?;
        let r = job::run_job(&spec, RunOptions { budget: Budget::from_env(), ..RunOptions::default() });
        write(overall, r.overall)?;
        put_string(report, r.to_json())
    })
}

/// Runs the built-in corpus, or only the job named `filter` when non-null.
///
/// # Safety
/// `filter` must be null or nul-terminated; `report` and `overall` writable.
#[no_mangle]
pub unsafe extern "C" fn lnd_run_corpus_json(
    filter: *const c_char,
    report: *mut *mut c_char,
    overall: *mut bool,
) -> LndStatus {
    guard(|| {
        let filter = if filter.is_null() { None } else { Some(text(filter)?) };
        let r = job::run_corpus(filter, RunOptions { budget: Budget::from_env(), ..RunOptions::default() })?;
        write(overall, r.overall)?;
        put_string(report, r.to_json())
    })
}
