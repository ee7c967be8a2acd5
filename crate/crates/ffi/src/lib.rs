//! C interface to the kernel.
//!
//! A model is loaded into an opaque [`LinftyModel`] handle, checks return
//! their verdict as a JSON string, and every call reports a [`LinftyStatus`].
//! When a call fails, [`linfty_last_error`] describes why. Strings handed out
//! by the library are released with [`linfty_string_free`] and models with
//! [`linfty_model_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use linfty::cli::{bounds_for, run_check, run_oracle, Selection};
use linfty::io::Model;
use linfty::Error;

/// Outcome of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinftyStatus {
    /// The call succeeded and, for checks, the identity holds.
    Ok = 0,
    /// A check ran and found a violation. The verdict is still returned.
    CheckFailed = 1,
    /// Bad input: unparsable file, unknown name, degree mismatch, bounds.
    InputError = 2,
    /// A required pointer was null.
    NullArgument = 3,
    /// A string argument was not UTF-8.
    InvalidUtf8 = 4,
    /// The library panicked. This is a bug.
    Internal = 5,
}

/// A loaded structure file.
pub struct LinftyModel {
    model: Model,
}

/// Optional arguments of a check. Null strings and zero bounds mean "use
/// the file's default".
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct LinftyOptions {
    pub max_weight: u32,
    pub max_arity: u32,
    pub structure: *const c_char,
    pub action: *const c_char,
    pub candidate: *const c_char,
    pub with: *const c_char,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

struct Failure(LinftyStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(LinftyStatus::InputError, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<LinftyStatus, Failure>) -> LinftyStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal error");
            LinftyStatus::Internal
        }
    }
}

/// # Safety
/// `p` is null or a NUL-terminated string.
unsafe fn opt_str<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p)
        .to_str()
        .map(Some)
        .map_err(|_| Failure(LinftyStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn req_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    opt_str(p, what)?.ok_or_else(|| Failure(LinftyStatus::NullArgument, format!("{what} is null")))
}

fn give_string(text: String, out: *mut *mut c_char) -> Result<(), Failure> {
    let c = CString::new(text).map_err(|_| Failure(LinftyStatus::Internal, "interior NUL".into()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn give_model(model: Model, out: *mut *mut LinftyModel) -> LinftyStatus {
    unsafe { *out = Box::into_raw(Box::new(LinftyModel { model })) };
    LinftyStatus::Ok
}

/// Parses a structure file held in memory.
///
/// # Safety
/// `text` is a NUL-terminated string and `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn linfty_model_from_text(text: *const c_char, out: *mut *mut LinftyModel) -> LinftyStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(LinftyStatus::NullArgument, "out is null".into()));
        }
        *out = ptr::null_mut();
        let text = req_str(text, "text")?;
        Ok(give_model(Model::from_text(text)?, out))
    })
}

/// Reads and parses a structure file.
///
/// # Safety
/// `path` is a NUL-terminated string and `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn linfty_model_load(path: *const c_char, out: *mut *mut LinftyModel) -> LinftyStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(LinftyStatus::NullArgument, "out is null".into()));
        }
        *out = ptr::null_mut();
        let path = req_str(path, "path")?;
        Ok(give_model(Model::load(path)?, out))
    })
}

/// Releases a model. Null is ignored.
///
/// # Safety
/// `model` is null or came from this library and is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn linfty_model_free(model: *mut LinftyModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// The canonical text of a model.
///
/// # Safety
/// `model` is a live handle and `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn linfty_model_save(model: *const LinftyModel, out: *mut *mut c_char) -> LinftyStatus {
    guard(|| {
        if model.is_null() || out.is_null() {
            return Err(Failure(LinftyStatus::NullArgument, "model or out is null".into()));
        }
        *out = ptr::null_mut();
        give_string((*model).model.save(), out)?;
        Ok(LinftyStatus::Ok)
    })
}

unsafe fn verdict_call(
    model: *const LinftyModel,
    check: *const c_char,
    options: *const LinftyOptions,
    out: *mut *mut c_char,
    oracle: bool,
) -> LinftyStatus {
    guard(|| {
        if model.is_null() || out.is_null() {
            return Err(Failure(LinftyStatus::NullArgument, "model or out is null".into()));
        }
        *out = ptr::null_mut();
        let model = &(*model).model;
        let check = req_str(check, "check")?;
        let opts = if options.is_null() { None } else { Some(*options) };
        let mut sel = Selection::default();
        let (mut weight, mut arity) = (None, None);
        if let Some(o) = opts {
            sel.structure = opt_str(o.structure, "structure")?.map(String::from);
            sel.action = opt_str(o.action, "action")?.map(String::from);
            sel.candidate = opt_str(o.candidate, "candidate")?.map(String::from);
            sel.with = opt_str(o.with, "with")?.map(String::from);
            weight = (o.max_weight > 0).then_some(o.max_weight as usize);
            arity = (o.max_arity > 0).then_some(o.max_arity as usize);
        }
        let bounds = bounds_for(model.file(), weight, arity)?;
        let verdict = if oracle {
            run_oracle(model, check, &sel, bounds)?
        } else {
            run_check(model, check, &sel, bounds)?
        };
        let json = serde_json::to_string(&verdict).map_err(|e| Failure(LinftyStatus::Internal, e.to_string()))?;
        give_string(json, out)?;
        Ok(if verdict.pass {
            LinftyStatus::Ok
        } else {
            LinftyStatus::CheckFailed
        })
    })
}

/// Runs `check` (a command name such as `"check-jacobi"`) and writes its
/// verdict as JSON to `*out`. Returns [`LinftyStatus::Ok`] or
/// [`LinftyStatus::CheckFailed`] according to the verdict.
///
/// # Safety
/// `model` is a live handle, `check` a NUL-terminated string, `options` null
/// or valid, and `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn linfty_check(
    model: *const LinftyModel,
    check: *const c_char,
    options: *const LinftyOptions,
    out: *mut *mut c_char,
) -> LinftyStatus {
    verdict_call(model, check, options, out, false)
}

/// Like [`linfty_check`] but runs both evaluation paths; passes when they
/// agree.
///
/// # Safety
/// As for [`linfty_check`].
#[no_mangle]
pub unsafe extern "C" fn linfty_oracle(
    model: *const LinftyModel,
    check: *const c_char,
    options: *const LinftyOptions,
    out: *mut *mut c_char,
) -> LinftyStatus {
    verdict_call(model, check, options, out, true)
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or came from this library and is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn linfty_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the last failed call on this thread, or null. Valid until
/// the next call on the same thread.
#[no_mangle]
pub extern "C" fn linfty_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// The library version, a static string.
#[no_mangle]
pub extern "C" fn linfty_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
