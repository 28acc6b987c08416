//! C interface to the multmon engine.
//!
//! Ideals live behind an opaque `MmIdeal` handle created by
//! `mm_ideal_parse` and released with `mm_ideal_free`. Every fallible call
//! returns an `MmStatus` whose numeric values match the CLI exit codes; the
//! message for the most recent failure on the calling thread is available
//! from `mm_last_error_message`. Strings returned to the caller must be
//! released with `mm_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use multmon::report::{self, Command, Options};
use multmon::{formulas, invariants, oracle, taylor, Error, MonomialIdeal};

/// Status codes, numerically equal to the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmStatus {
    Ok = 0,
    /// Parse error, bad argument or null pointer.
    InvalidInput = 1,
    Hypothesis = 2,
    Unsupported = 3,
    ResourceCap = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmMethod {
    /// Cheapest applicable closed form, falling back to the Taylor engine.
    Auto = 0,
    /// Taylor resolution power sums.
    Ps = 1,
    /// Minimal covers and standard-monomial counts.
    Oracle = 2,
}

/// Opaque handle to a minimalized monomial ideal.
pub struct MmIdeal {
    inner: MonomialIdeal,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MmStatus {
    status_of_code(e.exit_code())
}

fn status_of_code(code: i32) -> MmStatus {
    match code {
        0 => MmStatus::Ok,
        2 => MmStatus::Hypothesis,
        3 => MmStatus::Unsupported,
        4 => MmStatus::ResourceCap,
        5 => MmStatus::Internal,
        _ => MmStatus::InvalidInput,
    }
}

fn fail(e: &Error) -> MmStatus {
    set_error(&e.to_string());
    status_of(e)
}

fn guard(f: impl FnOnce() -> MmStatus) -> MmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            MmStatus::Internal
        }
    }
}

fn null_arg(name: &str) -> MmStatus {
    set_error(&format!("`{name}` is null"));
    MmStatus::InvalidInput
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, MmStatus> {
    if p.is_null() {
        return Err(null_arg(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(&format!("`{name}` is not valid UTF-8"));
        MmStatus::InvalidInput
    })
}

unsafe fn read_vars(p: *const c_char) -> Result<Option<Vec<String>>, MmStatus> {
    if p.is_null() {
        return Ok(None);
    }
    let s = read_str(p, "vars")?;
    Ok(Some(s.split(',').map(|v| v.trim().to_string()).collect()))
}

unsafe fn ideal_ref<'a>(p: *const MmIdeal) -> Result<&'a MonomialIdeal, MmStatus> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null_arg("ideal"))
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses `text` into a new ideal. `vars` is an optional comma-separated
/// variable order and may be null.
///
/// # Safety
/// `text` must be a nul-terminated string, `vars` null or nul-terminated,
/// and `out` a valid place to store the handle.
#[no_mangle]
pub unsafe extern "C" fn mm_ideal_parse(text: *const c_char, vars: *const c_char, out: *mut *mut MmIdeal) -> MmStatus {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        let text = try_status!(read_str(text, "text"));
        let vars = try_status!(read_vars(vars));
        match multmon::parse_ideal_with(text, vars.as_deref()) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(MmIdeal { inner: p.ideal }));
                MmStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `ideal` must be null or a handle from `mm_ideal_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mm_ideal_free(ideal: *mut MmIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// Number of minimal generators; 0 for a null handle.
///
/// # Safety
/// `ideal` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mm_ideal_generator_count(ideal: *const MmIdeal) -> usize {
    ideal.as_ref().map_or(0, |h| h.inner.len())
}

/// # Safety
/// `ideal` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mm_ideal_variable_count(ideal: *const MmIdeal) -> usize {
    ideal.as_ref().map_or(0, |h| h.inner.ring().len())
}

/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mm_ideal_codim(ideal: *const MmIdeal, out: *mut usize) -> MmStatus {
    guard(|| {
        let m = try_status!(ideal_ref(ideal));
        if out.is_null() {
            return null_arg("out");
        }
        *out = invariants::codim(m);
        MmStatus::Ok
    })
}

/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mm_ideal_multiplicity(ideal: *const MmIdeal, method: MmMethod, out: *mut u64) -> MmStatus {
    guard(|| {
        let m = try_status!(ideal_ref(ideal));
        if out.is_null() {
            return null_arg("out");
        }
        let r = match method {
            MmMethod::Auto => report::multiplicity_auto(m).map(|(_, v)| v),
            MmMethod::Ps => taylor::multiplicity_ps(m),
            MmMethod::Oracle => oracle::multiplicity_associativity(m),
        };
        match r {
            Ok(v) => {
                *out = v;
                MmStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mm_ideal_is_dominant(ideal: *const MmIdeal, out: *mut bool) -> MmStatus {
    guard(|| {
        let m = try_status!(ideal_ref(ideal));
        if out.is_null() {
            return null_arg("out");
        }
        *out = invariants::is_dominant(m);
        MmStatus::Ok
    })
}

/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mm_ideal_is_complete_intersection(ideal: *const MmIdeal, out: *mut bool) -> MmStatus {
    guard(|| {
        let m = try_status!(ideal_ref(ideal));
        if out.is_null() {
            return null_arg("out");
        }
        *out = invariants::is_complete_intersection(m);
        MmStatus::Ok
    })
}

/// Regularity of a dominant ideal; `Unsupported` otherwise.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mm_ideal_regularity(ideal: *const MmIdeal, out: *mut u64) -> MmStatus {
    guard(|| {
        let m = try_status!(ideal_ref(ideal));
        if out.is_null() {
            return null_arg("out");
        }
        let quadratic = m.generators().iter().all(|g| g.degree() == 2);
        let r = if quadratic && invariants::is_dominant(m) {
            formulas::reg_quadratic_dominant(m)
        } else {
            taylor::regularity_dominant(m)
        };
        match r {
            Ok(v) => {
                *out = v;
                MmStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Canonical text of the ideal, or null for a null handle. Release with
/// `mm_string_free`.
///
/// # Safety
/// `ideal` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mm_ideal_to_string(ideal: *const MmIdeal) -> *mut c_char {
    match ideal.as_ref() {
        Some(h) => CString::new(h.inner.to_string()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs a CLI command on one ideal and returns its JSON document in `out`
/// (release with `mm_string_free`). The status is the document's exit code;
/// `out` is filled whenever the command name was valid.
///
/// # Safety
/// `command` and `text` must be nul-terminated, `vars` null or
/// nul-terminated, and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mm_run_json(
    command: *const c_char,
    text: *const c_char,
    vars: *const c_char,
    check: bool,
    out: *mut *mut c_char,
) -> MmStatus {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        let command: Command = match try_status!(read_str(command, "command")).parse() {
            Ok(c) => c,
            Err(e) => return fail(&e),
        };
        let text = try_status!(read_str(text, "text"));
        let vars = try_status!(read_vars(vars));
        let doc = report::run_text(command, text, vars.as_deref(), &Options { check, method: None });
        *out = CString::new(doc.to_json()).map_or(ptr::null_mut(), CString::into_raw);
        match &doc.error {
            Some(e) => {
                set_error(&e.message);
                status_of_code(e.exit_code)
            }
            None => MmStatus::Ok,
        }
    })
}
