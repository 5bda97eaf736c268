//! C interface: opaque case handles, status codes and JSON reports.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qks_core::workbench::{
    auslander_check, azumaya_scan, center_check, fiber_report, freeness_scan, render, series_check, CaseId,
    CaseParams, CaseSpec, Format, Localization, Report, ScanOptions,
};
use qks_core::QksError;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QksStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    ComputationFailed = 4,
    Panic = 5,
}

/// A catalog case. Create with `qks_case_new`, release with `qks_case_free`.
pub struct QksCase {
    spec: CaseSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(err: &QksError) -> QksStatus {
    match err {
        QksError::Parse(_) | QksError::InvalidGroup(_) | QksError::InadmissiblePoint(_) | QksError::Unsupported(_) => {
            QksStatus::InvalidArgument
        }
        _ => QksStatus::ComputationFailed,
    }
}

fn guarded(f: impl FnOnce() -> Result<(), QksStatus>) -> QksStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QksStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            QksStatus::Panic
        }
    }
}

fn fail(err: QksError) -> QksStatus {
    set_error(err.to_string());
    status_of(&err)
}

/// # Safety
/// `s` is null or a NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<Option<&'a str>, QksStatus> {
    if s.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(s).to_str().map(Some).map_err(|_| {
        set_error("string is not valid UTF-8");
        QksStatus::InvalidUtf8
    })
}

fn required<T>(x: Option<T>, what: &str) -> Result<T, QksStatus> {
    x.ok_or_else(|| {
        set_error(format!("{what} is null"));
        QksStatus::NullPointer
    })
}

/// # Safety
/// `case` is null or a live handle from `qks_case_new`.
unsafe fn case_ref<'a>(case: *const QksCase) -> Result<&'a QksCase, QksStatus> {
    required(case.as_ref(), "case")
}

fn write_json<R: Report>(report: &R, out: *mut *mut c_char) -> Result<(), QksStatus> {
    let text = render(report, Format::Json).map_err(fail)?;
    let c = CString::new(text).map_err(|_| {
        set_error("report contains NUL");
        QksStatus::ComputationFailed
    })?;
    // SAFETY: checked non-null by callers.
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn check_out<T>(out: *mut *mut T) -> Result<(), QksStatus> {
    if out.is_null() {
        set_error("output pointer is null");
        return Err(QksStatus::NullPointer);
    }
    // SAFETY: non-null, caller-provided slot.
    unsafe { *out = ptr::null_mut() };
    Ok(())
}

/// Builds a catalog case.
///
/// `case_id` is one of "0", "i", "ii", "iii", "iv". `k = 0` means no root of
/// unity order; case "i" then defaults to `k = 2`. A null `localization`
/// selects the case default.
///
/// # Safety
/// String arguments are null or NUL-terminated; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qks_case_new(
    case_id: *const c_char,
    n: u32,
    k: u32,
    localization: *const c_char,
    out: *mut *mut QksCase,
) -> QksStatus {
    guarded(|| {
        check_out(out)?;
        let id: CaseId = required(read_str(case_id)?, "case_id")?.parse().map_err(fail)?;
        let k = match (id, k) {
            (CaseId::I, 0) => Some(2),
            (_, 0) => None,
            (_, k) => Some(k),
        };
        let mut params = CaseParams::new(id, n, k);
        if let Some(l) = read_str(localization)? {
            let l: Localization = l.parse().map_err(fail)?;
            params = params.with_localization(l);
        }
        let spec = CaseSpec::new(id, params).map_err(fail)?;
        *out = Box::into_raw(Box::new(QksCase { spec }));
        Ok(())
    })
}

/// Releases a case handle. Null is ignored.
///
/// # Safety
/// `case` is null or a handle from `qks_case_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qks_case_free(case: *mut QksCase) {
    if !case.is_null() {
        drop(Box::from_raw(case));
    }
}

/// Human-readable case label, e.g. `i(n=2,k=2,torus)`. Free with
/// `qks_string_free`.
///
/// # Safety
/// `case` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qks_case_label(case: *const QksCase, out: *mut *mut c_char) -> QksStatus {
    guarded(|| {
        check_out(out)?;
        let c = case_ref(case)?;
        let label = CString::new(c.spec.label()).map_err(|_| {
            set_error("label contains NUL");
            QksStatus::ComputationFailed
        })?;
        *out = label.into_raw();
        Ok(())
    })
}

/// Catalogued fiber degree, or -1 when none is recorded.
///
/// # Safety
/// `case` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qks_case_expected_degree(case: *const QksCase, out: *mut i64) -> QksStatus {
    guarded(|| {
        let c = case_ref(case)?;
        let out = required(out.as_mut(), "out")?;
        *out = c.spec.expected_d.map_or(-1, |d| d as i64);
        Ok(())
    })
}

/// Conductor `N` of the field `ℚ(ζ_N)` in which the case's values live.
///
/// # Safety
/// `case` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qks_case_conductor(case: *const QksCase, out: *mut u32) -> QksStatus {
    guarded(|| {
        let c = case_ref(case)?;
        let out = required(out.as_mut(), "out")?;
        *out = c.spec.conductor;
        Ok(())
    })
}

/// Azumaya scan report as JSON. Free the string with `qks_string_free`.
///
/// # Safety
/// `case` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qks_scan_json(case: *const QksCase, samples: u32, seed: u64, out: *mut *mut c_char) -> QksStatus {
    guarded(|| {
        check_out(out)?;
        let c = case_ref(case)?;
        let report = azumaya_scan(&c.spec, &ScanOptions::new(samples as usize, seed)).map_err(fail)?;
        write_json(&report, out)
    })
}

/// Freeness scan report as JSON.
///
/// # Safety
/// `case` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qks_freeness_json(
    case: *const QksCase,
    samples: u32,
    seed: u64,
    out: *mut *mut c_char,
) -> QksStatus {
    guarded(|| {
        check_out(out)?;
        let c = case_ref(case)?;
        let report = freeness_scan(&c.spec, &ScanOptions::new(samples as usize, seed)).map_err(fail)?;
        write_json(&report, out)
    })
}

/// Fiber report at `point`, written as `name=value,...`.
///
/// # Safety
/// `case` is a live handle; `point` is NUL-terminated; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qks_fiber_json(case: *const QksCase, point: *const c_char, out: *mut *mut c_char) -> QksStatus {
    guarded(|| {
        check_out(out)?;
        let c = case_ref(case)?;
        let text = required(read_str(point)?, "point")?;
        let p = c.spec.parse_point(text).map_err(fail)?;
        let report = fiber_report(&c.spec, &p).map_err(fail)?;
        write_json(&report, out)
    })
}

/// Windowed center report as JSON.
///
/// # Safety
/// `case` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qks_center_json(case: *const QksCase, degree: i32, out: *mut *mut c_char) -> QksStatus {
    guarded(|| {
        check_out(out)?;
        let c = case_ref(case)?;
        let report = center_check(&c.spec, degree).map_err(fail)?;
        write_json(&report, out)
    })
}

/// Molien series report as JSON.
///
/// # Safety
/// `case` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qks_molien_json(case: *const QksCase, m: u32, degree: u32, out: *mut *mut c_char) -> QksStatus {
    guarded(|| {
        check_out(out)?;
        let c = case_ref(case)?;
        let report = series_check(&c.spec, m, degree as usize).map_err(fail)?;
        write_json(&report, out)
    })
}

/// Graded endomorphism comparison as JSON.
///
/// # Safety
/// `case` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qks_auslander_json(
    case: *const QksCase,
    degree: u32,
    guard: u32,
    out: *mut *mut c_char,
) -> QksStatus {
    guarded(|| {
        check_out(out)?;
        let c = case_ref(case)?;
        let report = auslander_check(&c.spec, degree as usize, guard as usize).map_err(fail)?;
        write_json(&report, out)
    })
}

/// Message of the last failed call on this thread, or null. Free the copy
/// with `qks_string_free`.
#[no_mangle]
pub extern "C" fn qks_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qks_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qks_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
