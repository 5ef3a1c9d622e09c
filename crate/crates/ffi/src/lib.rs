//! C ABI over `dcoset`.
//!
//! Conventions:
//! - every fallible function returns a [`DcStatus`] and writes results through
//!   out-pointers; on failure [`dc_last_error_message`] describes the error;
//! - handles are opaque and owned by the caller, released with the matching
//!   `*_free` function (which accepts null);
//! - strings returned through `char **` are heap-allocated and must be released
//!   with [`dc_string_free`];
//! - panics never cross the boundary; they surface as [`DcStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dcoset::{commands, cosets, Error, Instance};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Malformed = 4,
    UnknownName = 5,
    Closure = 6,
    OutOfRange = 7,
    Numeric = 8,
    Io = 9,
    Overflow = 10,
    Panic = 11,
    Other = 12,
}

impl From<&Error> for DcStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse { .. } => DcStatus::Parse,
            Error::Malformed(_) | Error::Dimension(_) => DcStatus::Malformed,
            Error::UnknownLabel(_) | Error::UnknownSubalgebra(_) => DcStatus::UnknownName,
            Error::Closure(_) => DcStatus::Closure,
            Error::Numeric(_) => DcStatus::Numeric,
            Error::Io(_) => DcStatus::Io,
            Error::Overflow(_) => DcStatus::Overflow,
            _ => DcStatus::Other,
        }
    }
}

/// A loaded fusion instance.
pub struct DcInstance(Instance);

/// Classes of one coset relation, detached from the instance that produced it.
pub struct DcCosets {
    classes: Vec<Vec<usize>>,
    eps: Vec<i64>,
    eigenvalue: i64,
    verified: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

fn guard(f: impl FnOnce() -> Result<(), (DcStatus, String)>) -> DcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            DcStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside dcoset");
            DcStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (DcStatus, String) {
    (DcStatus::from(&e), e.to_string())
}

fn null(what: &str) -> (DcStatus, String) {
    (DcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (DcStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (DcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (DcStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, (DcStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn dc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer previously returned through a `char **`
/// out-parameter of this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an instance from a JSON document.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_instance_from_json(json: *const c_char, out: *mut *mut DcInstance) -> DcStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let inst = Instance::from_json(str_arg(json, "json")?).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(DcInstance(inst)));
        Ok(())
    })
}

/// Loads an instance file.
///
/// # Safety
/// `path` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_instance_load(path: *const c_char, out: *mut *mut DcInstance) -> DcStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let inst = Instance::load(str_arg(path, "path")?).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(DcInstance(inst)));
        Ok(())
    })
}

/// # Safety
/// `inst` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_instance_free(inst: *mut DcInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of basis elements.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_instance_rank(inst: *const DcInstance, out: *mut usize) -> DcStatus {
    guard(|| {
        *out_arg(out, "out")? = ref_arg(inst, "inst")?.0.fusion.rank();
        Ok(())
    })
}

/// Label of basis element `index`; free the result with [`dc_string_free`].
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_instance_label(inst: *const DcInstance, index: usize, out: *mut *mut c_char) -> DcStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let f = &ref_arg(inst, "inst")?.0.fusion;
        if index >= f.rank() {
            return Err((DcStatus::OutOfRange, format!("basis index {index} ≥ rank {}", f.rank())));
        }
        *out = c_string(f.label(index).to_string());
        Ok(())
    })
}

/// Dimension `ε` of basis element `index`.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_instance_dim(inst: *const DcInstance, index: usize, out: *mut i64) -> DcStatus {
    guard(|| {
        let f = &ref_arg(inst, "inst")?.0.fusion;
        if index >= f.rank() {
            return Err((DcStatus::OutOfRange, format!("basis index {index} ≥ rank {}", f.rank())));
        }
        *out_arg(out, "out")? = f.dim(index);
        Ok(())
    })
}

/// Number of fusion-ring axiom violations (0 means the data is valid).
///
/// # Safety
/// `inst` must be a live handle; `violations` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_instance_validate(inst: *const DcInstance, violations: *mut usize) -> DcStatus {
    guard(|| {
        *out_arg(violations, "violations")? = ref_arg(inst, "inst")?.0.fusion.validate().len();
        Ok(())
    })
}

/// Classes of the relation `r_{left,right}` between two named subalgebras
/// (`"trivial"` names the unit alone).
///
/// # Safety
/// `inst` must be a live handle, `left`/`right` valid NUL-terminated strings,
/// and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dc_cosets(
    inst: *const DcInstance,
    left: *const c_char,
    right: *const c_char,
    out: *mut *mut DcCosets,
) -> DcStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let inst = &ref_arg(inst, "inst")?.0;
        let k = inst.subalgebra(str_arg(left, "left")?).map_err(lib_err)?;
        let l = inst.subalgebra(str_arg(right, "right")?).map_err(lib_err)?;
        let dec = cosets::classes(&k, &l).map_err(lib_err)?;
        let handle = DcCosets {
            classes: dec.classes().to_vec(),
            eps: (0..dec.classes().len()).map(|i| dec.class_eps(i)).collect(),
            eigenvalue: dec.eigenvalue(),
            verified: cosets::verify_eigen(&dec).is_pass(),
        };
        *out = Box::into_raw(Box::new(handle));
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a handle from [`dc_cosets`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_cosets_free(c: *mut DcCosets) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of classes; 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_cosets_num_classes(c: *const DcCosets) -> usize {
    c.as_ref().map_or(0, |c| c.classes.len())
}

/// `|K||L|`, the common eigenvalue of the class sums; 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_cosets_eigenvalue(c: *const DcCosets) -> i64 {
    c.as_ref().map_or(0, |c| c.eigenvalue)
}

/// Whether every class sum passed the exact eigenvector check.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_cosets_verified(c: *const DcCosets) -> bool {
    c.as_ref().is_some_and(|c| c.verified)
}

unsafe fn class_of<'a>(c: *const DcCosets, class: usize) -> Result<(&'a DcCosets, &'a [usize]), (DcStatus, String)> {
    let c = ref_arg(c, "cosets")?;
    let members = c
        .classes
        .get(class)
        .ok_or_else(|| (DcStatus::OutOfRange, format!("class {class} ≥ {}", c.classes.len())))?;
    Ok((c, members))
}

/// Number of basis elements in class `class`.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_cosets_class_len(c: *const DcCosets, class: usize, out: *mut usize) -> DcStatus {
    guard(|| {
        *out_arg(out, "out")? = class_of(c, class)?.1.len();
        Ok(())
    })
}

/// Basis index of the `pos`-th member (ascending) of class `class`.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_cosets_class_member(
    c: *const DcCosets,
    class: usize,
    pos: usize,
    out: *mut usize,
) -> DcStatus {
    guard(|| {
        let members = class_of(c, class)?.1;
        let m = members
            .get(pos)
            .ok_or_else(|| (DcStatus::OutOfRange, format!("position {pos} ≥ {}", members.len())))?;
        *out_arg(out, "out")? = *m;
        Ok(())
    })
}

/// `ε(a_i)` for class `class`.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_cosets_class_eps(c: *const DcCosets, class: usize, out: *mut i64) -> DcStatus {
    guard(|| {
        let (c, _) = class_of(c, class)?;
        *out_arg(out, "out")? = c.eps[class];
        Ok(())
    })
}

/// Runs every applicable suite and returns the JSON report (free with
/// [`dc_string_free`]) and its exit code (0 pass, 1 failure).
///
/// # Safety
/// `inst` must be a live handle; `json` and `exit_code` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_check_all_json(
    inst: *const DcInstance,
    json: *mut *mut c_char,
    exit_code: *mut i32,
) -> DcStatus {
    guard(|| {
        let json = out_arg(json, "json")?;
        *json = ptr::null_mut();
        let exit_code = out_arg(exit_code, "exit_code")?;
        let report = commands::cmd_check_all(&ref_arg(inst, "inst")?.0).map_err(lib_err)?;
        *exit_code = report.exit_code;
        *json = c_string(report.to_json());
        Ok(())
    })
}
