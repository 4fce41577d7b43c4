//! C interface to `bvsaito`.
//!
//! A session is created from the text of an input file and owned by the caller
//! through an opaque pointer. Every computation returns a status code and writes
//! a JSON document (the same one `--mode machine` prints) to an out-parameter;
//! strings handed out by this library are released with [`bv_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use bvsaito::cli::{self, Args, Mode, Session};
use bvsaito::Error;

/// Status codes. Positive values match the exit codes of the command-line tool.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BvStatus {
    Ok = 0,
    InvalidInput = 1,
    MathError = 2,
    TruncationExhausted = 3,
    CheckFailed = 4,
    NullPointer = -1,
    InvalidUtf8 = -2,
    Panic = -3,
}

impl BvStatus {
    fn from_error(e: &Error) -> Self {
        match e.exit_code() {
            1 => BvStatus::InvalidInput,
            3 => BvStatus::TruncationExhausted,
            _ => BvStatus::MathError,
        }
    }
}

/// Opaque session handle.
pub struct BvSession {
    inner: Session,
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<Option<&'a str>, BvStatus> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p).to_str().map(Some).map_err(|_| BvStatus::InvalidUtf8)
}

unsafe fn emit(out: *mut *mut c_char, text: String) {
    if !out.is_null() {
        *out = CString::new(text).map(CString::into_raw).unwrap_or(ptr::null_mut());
    }
}

fn guard(f: impl FnOnce() -> BvStatus) -> BvStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(BvStatus::Panic)
}

/// Parses and validates an input file given as TOML text.
///
/// On success `*out_session` receives a new handle. On failure `*out_error`
/// (if non-null) receives a JSON error document.
///
/// `spec_toml` must be a valid NUL-terminated string; the out-pointers must be
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn bv_session_new(
    spec_toml: *const c_char,
    out_session: *mut *mut BvSession,
    out_error: *mut *mut c_char,
) -> BvStatus {
    guard(|| {
        if out_session.is_null() {
            return BvStatus::NullPointer;
        }
        *out_session = ptr::null_mut();
        let text = match read_str(spec_toml) {
            Ok(Some(t)) => t,
            Ok(None) => return BvStatus::NullPointer,
            Err(s) => return s,
        };
        match Session::from_toml(text) {
            Ok(inner) => {
                *out_session = Box::into_raw(Box::new(BvSession { inner }));
                BvStatus::Ok
            }
            Err(e) => {
                emit(out_error, cli::error_document(None, &e));
                BvStatus::from_error(&e)
            }
        }
    })
}

/// Releases a session. Null is ignored.
///
/// `session` must come from [`bv_session_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bv_session_free(session: *mut BvSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Milnor number of the session's singularity.
///
/// `session` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn bv_session_mu(session: *const BvSession) -> usize {
    session.as_ref().map_or(0, |s| s.inner.jac.mu())
}

/// Runs one command (`"milnor"`, `"reduce"`, `"rmatrix"`, ...).
///
/// `input` and `point` may be null; `order < 0` keeps the orders from the input
/// file. `*out_json` receives the result document, or the error document on
/// failure; release it with [`bv_string_free`].
///
/// String arguments must be null or valid NUL-terminated strings; `session`
/// must be a live handle; `out_json` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn bv_run(
    session: *const BvSession,
    command: *const c_char,
    input: *const c_char,
    point: *const c_char,
    order: i64,
    out_json: *mut *mut c_char,
) -> BvStatus {
    guard(|| {
        if !out_json.is_null() {
            *out_json = ptr::null_mut();
        }
        let Some(session) = session.as_ref() else {
            return BvStatus::NullPointer;
        };
        let (name, input, point) = match (read_str(command), read_str(input), read_str(point)) {
            (Ok(Some(c)), Ok(i), Ok(p)) => (c, i, p),
            (Ok(None), _, _) => return BvStatus::NullPointer,
            _ => return BvStatus::InvalidUtf8,
        };
        let Some(cmd) = cli::parse_command(name) else {
            let e = Error::Validation { path: "command".into(), msg: format!("unknown command `{name}`") };
            emit(out_json, cli::error_document(None, &e));
            return BvStatus::InvalidInput;
        };
        let args = Args {
            command: cmd,
            spec: PathBuf::new(),
            mode: Mode::Machine,
            order: u32::try_from(order).ok(),
            input: input.map(String::from),
            point: point.map(String::from),
        };
        match cli::run(&args, &session.inner) {
            Ok((v, passed)) => {
                emit(out_json, cli::render(cmd, Mode::Machine, &v));
                if passed {
                    BvStatus::Ok
                } else {
                    BvStatus::CheckFailed
                }
            }
            Err(e) => {
                emit(out_json, cli::error_document(Some(cmd), &e));
                BvStatus::from_error(&e)
            }
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn bv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
