//! C ABI over the linspace library.
//!
//! Conventions:
//! - `LsSpace` is an opaque handle to a validated linear space; create with
//!   [`ls_parse`], destroy with [`ls_free`].
//! - Every fallible call returns an [`LsStatus`]; on failure a human-readable
//!   message is available from [`ls_last_error`] until the next call on the
//!   same thread.
//! - Report functions write a heap-allocated, NUL-terminated JSON document to
//!   `*out`; release it with [`ls_string_free`]. When the report was built
//!   but a must-hold flag is false, the document is still written and the
//!   status is `LS_THEOREM_VIOLATION`.
//! - Panics never cross the boundary: they are caught and reported as
//!   `LS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use linspace::incidence::{validate, LinearSpace};
use linspace::io::parse_auto;
use linspace::matching::BkcVariant;
use linspace::report::{
    bkc_report_value, certify_report, classify_report, document, gram_report_value,
    hanani_report_value, instance_echo, validate_report, ReportError,
};

/// Status codes returned by every fallible ABI call.
#[allow(non_camel_case_types)]
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LsStatus {
    /// Success.
    LS_OK = 0,
    /// The input is not a valid linear space (or not parseable).
    LS_INVALID_INPUT = 1,
    /// A theorem-level invariant failed; this indicates a library bug.
    LS_THEOREM_VIOLATION = 2,
    /// A required pointer argument was NULL.
    LS_NULL_POINTER = 3,
    /// An input string was not valid UTF-8.
    LS_INVALID_UTF8 = 4,
    /// A panic was caught at the boundary.
    LS_PANIC = 5,
}

use LsStatus::*;

/// Opaque handle to a validated linear space.
pub struct LsSpace {
    inner: LinearSpace,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let clean: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).unwrap());
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next ABI call on the same thread; never free it.
#[no_mangle]
pub extern "C" fn ls_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

fn report_error(e: ReportError) -> LsStatus {
    match e {
        ReportError::Input(e) => {
            set_error(&e.to_string());
            LS_INVALID_INPUT
        }
        ReportError::Theorem(e) => {
            set_error(&e.to_string());
            LS_THEOREM_VIOLATION
        }
    }
}

/// Run `f` with panics converted to LS_PANIC.
fn guarded(f: impl FnOnce() -> LsStatus) -> LsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&msg);
            LS_PANIC
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, LsStatus> {
    if p.is_null() {
        set_error("NULL string argument");
        return Err(LS_NULL_POINTER);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        LS_INVALID_UTF8
    })
}

fn write_out<T>(out: *mut T, value: T) -> Result<(), LsStatus> {
    if out.is_null() {
        set_error("NULL output argument");
        return Err(LS_NULL_POINTER);
    }
    unsafe { ptr::write(out, value) };
    Ok(())
}

fn json_out(out: *mut *mut c_char, doc: &serde_json::Value) -> Result<(), LsStatus> {
    let text = serde_json::to_string_pretty(doc).expect("report serialization cannot fail");
    write_out(out, CString::new(text).unwrap().into_raw())
}

/// Parse an instance (JSON or plain text, auto-detected), validate the
/// linear-space axioms, and hand back an owned handle in `*out`.
///
/// # Safety
/// `input` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ls_parse(input: *const c_char, out: *mut *mut LsSpace) -> LsStatus {
    guarded(|| {
        let text = match read_str(input) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let parsed = parse_auto(text).and_then(|raw| validate(&raw));
        match parsed {
            Ok(inner) => match write_out(out, Box::into_raw(Box::new(LsSpace { inner }))) {
                Ok(()) => LS_OK,
                Err(s) => s,
            },
            Err(e) => {
                set_error(&e.to_string());
                LS_INVALID_INPUT
            }
        }
    })
}

/// Destroy a handle returned by [`ls_parse`]. NULL is a no-op.
///
/// # Safety
/// `space` must be NULL or a pointer returned by [`ls_parse`] that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn ls_free(space: *mut LsSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Number of points, or 0 if `space` is NULL (a valid space has >= 3).
///
/// # Safety
/// `space` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ls_point_count(space: *const LsSpace) -> usize {
    space.as_ref().map_or(0, |s| s.inner.n())
}

/// Number of lines, or 0 if `space` is NULL (a valid space has >= 3).
///
/// # Safety
/// `space` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ls_line_count(space: *const LsSpace) -> usize {
    space.as_ref().map_or(0, |s| s.inner.m())
}

/// Release a string returned by a report function. NULL is a no-op.
///
/// # Safety
/// `s` must be NULL or a string returned by this library that has not been
/// freed already.
#[no_mangle]
pub unsafe extern "C" fn ls_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn handle_report(
    space: *const LsSpace,
    out: *mut *mut c_char,
    command: &str,
    build: impl FnOnce(&LinearSpace) -> Result<(serde_json::Value, bool), ReportError>,
) -> LsStatus {
    let Some(space) = space.as_ref() else {
        set_error("NULL space handle");
        return LS_NULL_POINTER;
    };
    let ls = &space.inner;
    match build(ls) {
        Ok((body, ok)) => {
            let doc = document(command, instance_echo(ls), body, ok);
            match json_out(out, &doc) {
                Ok(()) if ok => LS_OK,
                Ok(()) => {
                    set_error("a must-hold report flag is false");
                    LS_THEOREM_VIOLATION
                }
                Err(s) => s,
            }
        }
        Err(e) => report_error(e),
    }
}

/// Axiom check plus degree/size profile.
///
/// # Safety
/// `space` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ls_validate_json(space: *const LsSpace, out: *mut *mut c_char) -> LsStatus {
    guarded(|| handle_report(space, out, "validate", |ls| Ok(validate_report(ls))))
}

/// Double count, inequality table, Hall/SDR, proof trace, cyclic certificate.
///
/// # Safety
/// `space` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ls_certify_json(space: *const LsSpace, out: *mut *mut c_char) -> LsStatus {
    guarded(|| handle_report(space, out, "certify", certify_report))
}

/// Near-pencil / projective-plane taxonomy for the m = n case.
///
/// # Safety
/// `space` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ls_classify_json(space: *const LsSpace, out: *mut *mut c_char) -> LsStatus {
    guarded(|| handle_report(space, out, "classify", classify_report))
}

/// Exact Gram-matrix report (lambda = 1): determinant by two independent
/// routes, rank, positive definiteness.
///
/// # Safety
/// `space` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ls_gram_json(space: *const LsSpace, out: *mut *mut c_char) -> LsStatus {
    guarded(|| {
        handle_report(space, out, "gram", |ls| {
            gram_report_value(ls.structure(), 1)
        })
    })
}

/// Gram report for a lambda-design given directly as an instance string
/// (JSON or plain text); `lambda >= 1`. For `lambda >= 2` the input is
/// validated against the lambda-design axioms, not the linear-space axioms,
/// so no handle is involved.
///
/// # Safety
/// `input` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ls_design_gram_json(
    input: *const c_char,
    lambda: usize,
    out: *mut *mut c_char,
) -> LsStatus {
    guarded(|| {
        let text = match read_str(input) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let raw = match parse_auto(text) {
            Ok(raw) => raw,
            Err(e) => {
                set_error(&e.to_string());
                return LS_INVALID_INPUT;
            }
        };
        match gram_report_value(&raw, lambda) {
            Ok((body, ok)) => {
                let echo = serde_json::json!({ "n": body["n"], "m": body["m"] });
                let doc = document("gram", echo, body, ok);
                match json_out(out, &doc) {
                    Ok(()) if ok => LS_OK,
                    Ok(()) => {
                        set_error("a must-hold report flag is false");
                        LS_THEOREM_VIOLATION
                    }
                    Err(s) => s,
                }
            }
            Err(e) => report_error(e),
        }
    })
}

/// Pencil quantities around a longest line, per-point lemma, pencil bounds.
///
/// # Safety
/// `space` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ls_hanani_json(space: *const LsSpace, out: *mut *mut c_char) -> LsStatus {
    guarded(|| handle_report(space, out, "hanani", hanani_report_value))
}

/// Weighted-sum verifier over exact rationals. `variant`: 0 = ratio,
/// 1 = shifted; anything else is invalid input.
///
/// # Safety
/// `space` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ls_bkc_json(
    space: *const LsSpace,
    variant: u32,
    out: *mut *mut c_char,
) -> LsStatus {
    guarded(|| {
        let variant = match variant {
            0 => BkcVariant::Ratio,
            1 => BkcVariant::Shifted,
            _ => {
                set_error("variant must be 0 (ratio) or 1 (shifted)");
                return LS_INVALID_INPUT;
            }
        };
        handle_report(space, out, "bkc", move |ls| Ok(bkc_report_value(ls, variant)))
    })
}
