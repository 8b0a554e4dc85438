//! C interface to `cyclift`.
//!
//! Functions return a [`CyStatus`]. Strings returned through out-pointers
//! are owned by the caller and released with [`cy_string_free`]; the message
//! of the last failure on the calling thread is available from
//! [`cy_last_error`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cyclift::field::Field;
use cyclift::report::{self, RunError};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CyStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Unreadable configuration or expression.
    ParseError = 3,
    /// A hypothesis of the requested analysis fails.
    PreconditionFailed = 4,
    /// Element out of range or not invertible.
    FieldError = 5,
    Panic = 6,
}

/// Opaque finite field handle.
pub struct CyField {
    inner: Field,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: CyStatus, msg: impl Into<String>) -> CyStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> CyStatus) -> CyStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(CyStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, CyStatus> {
    if p.is_null() {
        return Err(fail(CyStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(CyStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> CyStatus {
    *out = CString::new(s).expect("JSON has no nul").into_raw();
    CyStatus::Ok
}

fn run_error(e: RunError) -> CyStatus {
    let status = match e {
        RunError::Config(_) => CyStatus::ParseError,
        RunError::Precondition(_) => CyStatus::PreconditionFailed,
    };
    fail(status, e.to_string())
}

/// Message of the last failure on this thread, or null. Valid until the next
/// call into the library on the same thread.
#[no_mangle]
pub extern "C" fn cy_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cy_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates `F_{p^n}` with its default modulus.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cy_field_new(p: u64, n: u32, out: *mut *mut CyField) -> CyStatus {
    guard(|| {
        if out.is_null() {
            return fail(CyStatus::NullPointer, "null out pointer");
        }
        match Field::new(p, n, None) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(CyField { inner }));
                CyStatus::Ok
            }
            Err(e) => fail(CyStatus::FieldError, e.to_string()),
        }
    })
}

/// # Safety
/// `field` must come from [`cy_field_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cy_field_free(field: *mut CyField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cy_field_size(field: *const CyField) -> u32 {
    field.as_ref().map_or(0, |f| f.inner.size())
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Mul,
    Div,
}

/// Elements are encoded as `sum c_i p^i` over the polynomial basis.
unsafe fn binop(field: *const CyField, a: u32, b: u32, out: *mut u32, op: Op) -> CyStatus {
    guard(|| {
        let Some(f) = field.as_ref() else {
            return fail(CyStatus::NullPointer, "null field handle");
        };
        if out.is_null() {
            return fail(CyStatus::NullPointer, "null out pointer");
        }
        let k = &f.inner;
        let (Some(x), Some(y)) = (k.from_raw(a), k.from_raw(b)) else {
            return fail(CyStatus::FieldError, format!("element out of range for q = {}", k.size()));
        };
        let r = match op {
            Op::Add => Ok(k.add(x, y)),
            Op::Mul => Ok(k.mul(x, y)),
            Op::Div => k.div(x, y),
        };
        match r {
            Ok(v) => {
                *out = v.raw();
                CyStatus::Ok
            }
            Err(e) => fail(CyStatus::FieldError, e.to_string()),
        }
    })
}

/// # Safety
/// `field` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cy_field_add(field: *const CyField, a: u32, b: u32, out: *mut u32) -> CyStatus {
    binop(field, a, b, out, Op::Add)
}

/// # Safety
/// `field` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cy_field_mul(field: *const CyField, a: u32, b: u32, out: *mut u32) -> CyStatus {
    binop(field, a, b, out, Op::Mul)
}

/// Fails with `FieldError` when `b = 0`.
///
/// # Safety
/// `field` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cy_field_div(field: *const CyField, a: u32, b: u32, out: *mut u32) -> CyStatus {
    binop(field, a, b, out, Op::Div)
}

/// Polynomial notation in the generator `a`, e.g. `a + 2`.
///
/// # Safety
/// `field` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cy_field_format(field: *const CyField, a: u32, out: *mut *mut c_char) -> CyStatus {
    guard(|| {
        let Some(f) = field.as_ref() else {
            return fail(CyStatus::NullPointer, "null field handle");
        };
        if out.is_null() {
            return fail(CyStatus::NullPointer, "null out pointer");
        }
        match f.inner.from_raw(a) {
            Some(x) => write_string(out, f.inner.format(x)),
            None => fail(CyStatus::FieldError, format!("element out of range for q = {}", f.inner.size())),
        }
    })
}

unsafe fn json_entry(
    out: *mut *mut c_char,
    body: impl FnOnce() -> Result<Result<String, RunError>, CyStatus>,
) -> CyStatus {
    guard(|| {
        if out.is_null() {
            return fail(CyStatus::NullPointer, "null out pointer");
        }
        match body() {
            Ok(Ok(json)) => write_string(out, json),
            Ok(Err(e)) => run_error(e),
            Err(status) => status,
        }
    })
}

/// `cover analyze` on configuration text; writes the JSON report to `out`.
///
/// # Safety
/// `config` must be a nul-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cy_cover_analyze(config: *const c_char, seed: u64, out: *mut *mut c_char) -> CyStatus {
    json_entry(out, || {
        let text = read_str(config)?;
        Ok(report::load(text, seed).and_then(|run| report::run_analyze(&run, seed)).map(|r| report::to_json(&r)))
    })
}

/// `cover restrict` with a target such as `y` or `curve(u^2, u*v, v^2)`.
///
/// # Safety
/// String arguments must be nul-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cy_cover_restrict(
    config: *const c_char,
    target: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
) -> CyStatus {
    json_entry(out, || {
        let (text, target) = (read_str(config)?, read_str(target)?);
        Ok(report::load(text, seed).and_then(|run| report::run_restrict(&run, target, seed)).map(|r| report::to_json(&r)))
    })
}

/// `lift check`: `lift` is the lifted target equation, e.g. `y - p*(z)`.
///
/// # Safety
/// String arguments must be nul-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cy_lift_check(
    config: *const c_char,
    target: *const c_char,
    lift: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
) -> CyStatus {
    json_entry(out, || {
        let (text, target, lift) = (read_str(config)?, read_str(target)?, read_str(lift)?);
        Ok(report::load(text, seed).and_then(|run| report::run_lift_check(&run, target, lift)).map(|r| report::to_json(&r)))
    })
}

/// `lift search` for one target.
///
/// # Safety
/// String arguments must be nul-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cy_lift_search(
    config: *const c_char,
    target: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
) -> CyStatus {
    json_entry(out, || {
        let (text, target) = (read_str(config)?, read_str(target)?);
        Ok(report::load(text, seed).and_then(|run| report::run_lift_search(&run, target)).map(|r| report::to_json(&r)))
    })
}

/// `lift probe` over the configured targets.
///
/// # Safety
/// `config` must be nul-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cy_lift_probe(config: *const c_char, seed: u64, out: *mut *mut c_char) -> CyStatus {
    json_entry(out, || {
        let text = read_str(config)?;
        Ok(report::load(text, seed).and_then(|run| report::run_probe(&run, seed)).map(|r| report::to_json(&r)))
    })
}

/// Evaluates an expression in `W_2(F_{p^n})`.
///
/// # Safety
/// `expr` must be nul-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cy_witt_eval(expr: *const c_char, p: u64, n: u32, out: *mut *mut c_char) -> CyStatus {
    json_entry(out, || {
        let expr = read_str(expr)?;
        Ok(report::run_witt_eval(expr, p, n, None).map(|r| report::to_json(&r)))
    })
}
