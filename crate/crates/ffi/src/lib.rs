//! C ABI for the q-character engine.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `_free` function. Strings returned by the library are
//! borrowed and stay valid until the owning handle is freed or, for
//! `qchar_last_error`, until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qchar::engine::{run_fm_with, FmOutcome, Limits, RunOptions};
use qchar::report::{Mode, RunReport, Status};
use qchar::traceback::{run_fm_modified_with, DEFAULT_DEPTH_LIMIT};
use qchar::{AlgebraSpec, YMonomial};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcharStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    FmFailed = 5,
    Ambiguous = 6,
    LimitExceeded = 7,
    Internal = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcharMode {
    Plain = 0,
    Modified = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QcharLimits {
    pub max_height: u64,
    pub max_terms: u64,
    pub max_injections: u64,
}

/// A validated algebra such as `C3`.
pub struct QcharAlgebra {
    spec: AlgebraSpec,
}

/// Outcome of one run together with its JSON report.
pub struct QcharResult {
    report: RunReport,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guarded(f: impl FnOnce() -> QcharStatus) -> QcharStatus {
    clear_error();
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("panic inside qchar");
        QcharStatus::Panic
    })
}

/// # Safety
/// `s` must be null or point to a NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, QcharStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(QcharStatus::NullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        QcharStatus::InvalidUtf8
    })
}

fn status_of(status: Status) -> QcharStatus {
    match status {
        Status::Completed => QcharStatus::Ok,
        Status::Failed => QcharStatus::FmFailed,
        Status::Ambiguous => QcharStatus::Ambiguous,
        Status::LimitExceeded => QcharStatus::LimitExceeded,
        Status::InvalidInput => QcharStatus::InvalidInput,
        Status::Internal => QcharStatus::Internal,
    }
}

#[no_mangle]
pub extern "C" fn qchar_limits_default() -> QcharLimits {
    let l = Limits::default();
    QcharLimits {
        max_height: l.max_height,
        max_terms: l.max_terms as u64,
        max_injections: l.max_injections as u64,
    }
}

/// Parses an algebra name such as `"C3"` into `*out`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qchar_algebra_new(
    name: *const c_char,
    out: *mut *mut QcharAlgebra,
) -> QcharStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return QcharStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let name = match read_str(name) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match name.parse::<AlgebraSpec>() {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(QcharAlgebra { spec }));
                QcharStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                QcharStatus::ParseError
            }
        }
    })
}

/// # Safety
/// `algebra` must be null or a handle from `qchar_algebra_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qchar_algebra_free(algebra: *mut QcharAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

/// Rank of the algebra, or 0 for a null handle.
///
/// # Safety
/// `algebra` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qchar_algebra_rank(algebra: *const QcharAlgebra) -> usize {
    algebra.as_ref().map_or(0, |a| a.spec.rank())
}

/// Runs the algorithm from `highest`. A result handle is stored in `*out`
/// whenever a report was produced, including failed, ambiguous and
/// limit-exceeded runs; the return value is the run's status. `limits` may
/// be null for the defaults.
///
/// # Safety
/// `algebra` must be a live handle, `highest` a NUL-terminated string,
/// `limits` null or valid, and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qchar_run(
    algebra: *const QcharAlgebra,
    highest: *const c_char,
    mode: QcharMode,
    limits: *const QcharLimits,
    out: *mut *mut QcharResult,
) -> QcharStatus {
    guarded(|| {
        if out.is_null() || algebra.is_null() {
            set_error("null handle or output pointer");
            return QcharStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let spec = &(*algebra).spec;
        let text = match read_str(highest) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let m: YMonomial = match text.parse() {
            Ok(m) => m,
            Err(e) => {
                set_error(e.to_string());
                return QcharStatus::ParseError;
            }
        };
        let limits = limits.as_ref().copied().unwrap_or(qchar_limits_default());
        let options = RunOptions::with_limits(Limits {
            max_height: limits.max_height,
            max_terms: limits.max_terms as usize,
            max_injections: limits.max_injections as usize,
        });
        let report = match mode {
            QcharMode::Plain => match run_fm_with(spec, &m, &options) {
                Ok(FmOutcome::Completed { character, .. }) => {
                    RunReport::completed(spec, &m, &character, None, None)
                }
                Ok(FmOutcome::Failed(f)) => RunReport::failed(spec, &m, Mode::Plain, &f, false),
                Err(e) => RunReport::engine_error(spec, &m, Mode::Plain, &e),
            },
            QcharMode::Modified => {
                match run_fm_modified_with(spec, &m, &options, DEFAULT_DEPTH_LIMIT) {
                    Ok(run) => {
                        RunReport::completed(spec, &m, &run.character, Some(&run.injections), None)
                    }
                    Err(e) => RunReport::traceback_error(spec, &m, &e, false),
                }
            }
        };
        if let Some(err) = &report.error {
            set_error(err.clone());
        }
        let status = status_of(report.status);
        let json = CString::new(report.to_json()).expect("JSON has no NUL");
        *out = Box::into_raw(Box::new(QcharResult { report, json }));
        status
    })
}

/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qchar_result_status(result: *const QcharResult) -> QcharStatus {
    match result.as_ref() {
        Some(r) => status_of(r.report.status),
        None => QcharStatus::NullArgument,
    }
}

/// Sum of coefficients; 0 if the run did not complete.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qchar_result_total(result: *const QcharResult) -> u64 {
    result
        .as_ref()
        .and_then(|r| r.report.character.as_ref())
        .map_or(0, |c| c.total)
}

/// Number of distinct monomials; 0 if the run did not complete.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qchar_result_term_count(result: *const QcharResult) -> usize {
    result
        .as_ref()
        .and_then(|r| r.report.character.as_ref())
        .map_or(0, |c| c.term_count)
}

/// The JSON report, borrowed from the handle.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qchar_result_json(result: *const QcharResult) -> *const c_char {
    result.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// # Safety
/// `result` must be null or a handle from `qchar_run` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qchar_result_free(result: *mut QcharResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Message for the last error on this thread, or null.
#[no_mangle]
pub extern "C" fn qchar_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
