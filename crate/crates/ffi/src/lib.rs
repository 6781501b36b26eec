//! C ABI for the qverify engine.
//!
//! Every fallible call returns a [`QvStatus`]; on anything other than
//! `QV_STATUS_OK` the message is available from [`qv_last_error_message`] on the
//! same thread. Handles are opaque and must be released with their `_free`
//! function. Strings returned as `char *` are owned by the caller and are
//! released with [`qv_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qverify::catalog::series_by_name;
use qverify::identities::{self, IdentityReport, VerifyOptions};
use qverify::partitions::{enum_set, SetId};
use qverify::Error;

/// Result codes shared by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnknownIdentity = 3,
    UnknownSeries = 4,
    OrderTooLarge = 5,
    InvalidArgument = 6,
    OutOfRange = 7,
    Panic = 8,
}

/// Outcome of one identity check.
pub struct QvReport {
    report: IdentityReport,
}

/// Coefficient table of a truncated series, terms sorted by exponent vector.
pub struct QvSeries {
    vars: Vec<CString>,
    order: u32,
    terms: Vec<(Vec<u32>, CString)>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: QvStatus, msg: impl Into<String>) -> QvStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> QvStatus {
    match e {
        Error::UnknownIdentity(_) => QvStatus::UnknownIdentity,
        Error::UnknownSeries(_) => QvStatus::UnknownSeries,
        Error::OrderTooLarge { .. } => QvStatus::OrderTooLarge,
        _ => QvStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> QvStatus) -> QvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(QvStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, QvStatus> {
    if p.is_null() {
        return Err(fail(QvStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(QvStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Library version as a static NUL-terminated string. Do not free.
#[no_mangle]
pub extern "C" fn qv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copy of the last error message raised on this thread, or NULL if none.
#[no_mangle]
pub extern "C" fn qv_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |m| m.clone().into_raw()))
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from a `qv_*` function returning `char *` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of registered identities.
#[no_mangle]
pub extern "C" fn qv_identity_count() -> usize {
    identities::registry().len()
}

/// Id of the `index`-th registered identity, or NULL when out of range.
#[no_mangle]
pub extern "C" fn qv_identity_id(index: usize) -> *mut c_char {
    identities::registry()
        .into_iter()
        .nth(index)
        .map_or(ptr::null_mut(), |e| into_c(e.id))
}

/// Check one identity. `order == 0` selects its default order.
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qv_verify(id: *const c_char, order: u32, perturb: bool, out: *mut *mut QvReport) -> QvStatus {
    guard(|| {
        if out.is_null() {
            return fail(QvStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let id = match read_str(id) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let opts = VerifyOptions {
            order: (order > 0).then_some(order),
            perturb,
            max_order: None,
        };
        match identities::verify(id, &opts) {
            Ok(report) => {
                *out = Box::into_raw(Box::new(QvReport { report }));
                QvStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qv_report_passed(r: *const QvReport) -> bool {
    r.as_ref().is_some_and(|r| r.report.passed)
}

/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qv_report_order(r: *const QvReport) -> u32 {
    r.as_ref().map_or(0, |r| r.report.order)
}

/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qv_report_elapsed_ms(r: *const QvReport) -> f64 {
    r.as_ref().map_or(0.0, |r| r.report.elapsed.as_secs_f64() * 1000.0)
}

/// First mismatching monomial, e.g. `x^2*y*q^5`, or NULL when the check passed.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qv_report_witness(r: *const QvReport) -> *mut c_char {
    r.as_ref()
        .and_then(|r| r.report.witness.as_ref())
        .map_or(ptr::null_mut(), |w| into_c(w.monomial.clone()))
}

/// The report as a one-line JSON object.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qv_report_json(r: *const QvReport) -> *mut c_char {
    r.as_ref()
        .map_or(ptr::null_mut(), |r| into_c(r.report.to_json().to_string()))
}

/// # Safety
/// `r` must be NULL or a report handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qv_report_free(r: *mut QvReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Expand a named series (see `qverify list`) to q-order `order`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qv_series_by_name(name: *const c_char, order: u32, out: *mut *mut QvSeries) -> QvStatus {
    guard(|| {
        if out.is_null() {
            return fail(QvStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let name = match read_str(name) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let s = match series_by_name(name, order, None) {
            Ok(s) => s,
            Err(e) => return fail(status_of(&e), e.to_string()),
        };
        let mut terms: Vec<(Vec<u32>, CString)> = s
            .iter()
            .map(|(m, c)| (m.exponents().to_vec(), CString::new(c.to_string()).expect("digits")))
            .collect();
        terms.sort();
        let vars = s
            .vars()
            .names()
            .iter()
            .map(|n| CString::new(n.as_str()).expect("name"))
            .collect();
        *out = Box::into_raw(Box::new(QvSeries {
            vars,
            order: s.order(),
            terms,
        }));
        QvStatus::Ok
    })
}

/// # Safety
/// `s` must be a live series handle.
#[no_mangle]
pub unsafe extern "C" fn qv_series_len(s: *const QvSeries) -> usize {
    s.as_ref().map_or(0, |s| s.terms.len())
}

/// # Safety
/// `s` must be a live series handle.
#[no_mangle]
pub unsafe extern "C" fn qv_series_order(s: *const QvSeries) -> u32 {
    s.as_ref().map_or(0, |s| s.order)
}

/// Number of variables, and so the length of every exponent vector.
///
/// # Safety
/// `s` must be a live series handle.
#[no_mangle]
pub unsafe extern "C" fn qv_series_arity(s: *const QvSeries) -> usize {
    s.as_ref().map_or(0, |s| s.vars.len())
}

/// Name of variable `index`; borrowed from the handle, do not free.
///
/// # Safety
/// `s` must be a live series handle.
#[no_mangle]
pub unsafe extern "C" fn qv_series_var(s: *const QvSeries, index: usize) -> *const c_char {
    s.as_ref()
        .and_then(|s| s.vars.get(index))
        .map_or(ptr::null(), |n| n.as_ptr())
}

/// Read term `index`: writes `arity` exponents into `exponents` and points
/// `coeff` at the decimal coefficient, which stays owned by the handle.
///
/// # Safety
/// `s` must be a live series handle, `exponents` must have room for `cap`
/// values, and `coeff` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qv_series_term(
    s: *const QvSeries,
    index: usize,
    exponents: *mut u32,
    cap: usize,
    coeff: *mut *const c_char,
) -> QvStatus {
    guard(|| {
        let Some(s) = s.as_ref() else {
            return fail(QvStatus::NullPointer, "null series handle");
        };
        if exponents.is_null() || coeff.is_null() {
            return fail(QvStatus::NullPointer, "null output pointer");
        }
        let Some((exps, c)) = s.terms.get(index) else {
            return fail(QvStatus::OutOfRange, format!("term {index} of {}", s.terms.len()));
        };
        if cap < exps.len() {
            return fail(
                QvStatus::InvalidArgument,
                format!("exponent buffer holds {cap}, need {}", exps.len()),
            );
        }
        ptr::copy_nonoverlapping(exps.as_ptr(), exponents, exps.len());
        *coeff = c.as_ptr();
        QvStatus::Ok
    })
}

/// # Safety
/// `s` must be NULL or a series handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qv_series_free(s: *mut QvSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of overpartitions of `n` in a named set (`A`, `A-no-1bar`, ..., `Avee`).
///
/// # Safety
/// `set` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qv_count_set(set: *const c_char, n: u32, out: *mut u64) -> QvStatus {
    guard(|| {
        if out.is_null() {
            return fail(QvStatus::NullPointer, "null output pointer");
        }
        let name = match read_str(set) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match name.parse::<SetId>() {
            Ok(id) => {
                *out = enum_set(id, n).len() as u64;
                QvStatus::Ok
            }
            Err(e) => fail(QvStatus::InvalidArgument, e.to_string()),
        }
    })
}
