use std::ffi::{CStr, CString};
use std::ptr;

use qks_ffi::*;

fn case(id: &str, n: u32, k: u32, loc: Option<&str>) -> *mut QksCase {
    let id = CString::new(id).unwrap();
    let loc = loc.map(|l| CString::new(l).unwrap());
    let mut out = ptr::null_mut();
    let st = unsafe { qks_case_new(id.as_ptr(), n, k, loc.as_ref().map_or(ptr::null(), |l| l.as_ptr()), &mut out) };
    assert_eq!(st, QksStatus::Ok);
    assert!(!out.is_null());
    out
}

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { qks_string_free(s) };
    text
}

#[test]
fn label_and_degree() {
    let c = case("ii", 2, 0, None);
    let mut label = ptr::null_mut();
    assert_eq!(unsafe { qks_case_label(c, &mut label) }, QksStatus::Ok);
    assert!(take(label).starts_with("ii"));
    let mut d = 0i64;
    assert_eq!(unsafe { qks_case_expected_degree(c, &mut d) }, QksStatus::Ok);
    assert_eq!(d, 4);
    let mut n = 0u32;
    assert_eq!(unsafe { qks_case_conductor(c, &mut n) }, QksStatus::Ok);
    assert_eq!(n, 2);
    unsafe { qks_case_free(c) };
}

#[test]
fn scan_json_is_deterministic() {
    let c = case("i", 2, 2, None);
    let mut a = ptr::null_mut();
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { qks_scan_json(c, 3, 7, &mut a) }, QksStatus::Ok);
    assert_eq!(unsafe { qks_scan_json(c, 3, 7, &mut b) }, QksStatus::Ok);
    let (a, b) = (take(a), take(b));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["verdict"], "azumaya-consistent(2)");
    unsafe { qks_case_free(c) };
}

#[test]
fn fiber_center_molien_auslander() {
    let c = case("0", 2, 0, Some("none"));
    let point = CString::new("x=2,y=1").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qks_fiber_json(c, point.as_ptr(), &mut out) }, QksStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["trace_form_rank"], 2);
    unsafe { qks_case_free(c) };

    let c = case("iv", 2, 0, None);
    assert_eq!(unsafe { qks_center_json(c, 4, &mut out) }, QksStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(unsafe { qks_auslander_json(c, 2, 4, &mut out) }, QksStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["verdict"], "agree");
    unsafe { qks_case_free(c) };

    let c = case("iii", 2, 0, None);
    assert_eq!(unsafe { qks_molien_json(c, 2, 6, &mut out) }, QksStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["pass"], true);
    unsafe { qks_case_free(c) };
}

#[test]
fn freeness_json() {
    let c = case("ii", 2, 0, Some("torus"));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qks_freeness_json(c, 3, 1, &mut out) }, QksStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["verdict"], "not-free");
    assert_eq!(v["agrees"], true);
    unsafe { qks_case_free(c) };
}

#[test]
fn errors_are_reported() {
    let mut out = ptr::null_mut();
    let bad = CString::new("vii").unwrap();
    let st = unsafe { qks_case_new(bad.as_ptr(), 2, 0, ptr::null(), &mut out) };
    assert_eq!(st, QksStatus::InvalidArgument);
    assert!(out.is_null());
    assert!(!take(qks_last_error()).is_empty());

    assert_eq!(unsafe { qks_case_new(ptr::null(), 2, 0, ptr::null(), &mut out) }, QksStatus::NullPointer);
    let mut text = ptr::null_mut();
    let st = unsafe { qks_scan_json(ptr::null(), 1, 1, &mut text) };
    assert_eq!(st, QksStatus::NullPointer);

    let bytes = [0xffu8, 0];
    let st = unsafe { qks_case_new(bytes.as_ptr().cast(), 2, 0, ptr::null(), &mut out) };
    assert_eq!(st, QksStatus::InvalidUtf8);

    let c = case("ii", 2, 0, None);
    let point = CString::new("x=1").unwrap();
    assert_eq!(unsafe { qks_fiber_json(c, point.as_ptr(), &mut text) }, QksStatus::InvalidArgument);
    unsafe { qks_case_free(c) };

    let c = case("0", 2, 0, None);
    assert_eq!(unsafe { qks_case_label(c, &mut text) }, QksStatus::Ok);
    take(text);
    assert!(qks_last_error().is_null());
    unsafe { qks_case_free(c) };
    unsafe { qks_case_free(ptr::null_mut()) };
    unsafe { qks_string_free(ptr::null_mut()) };
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(qks_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qks.h")).unwrap();
    for name in [
        "qks_case_new",
        "qks_case_free",
        "qks_case_label",
        "qks_case_expected_degree",
        "qks_case_conductor",
        "qks_scan_json",
        "qks_freeness_json",
        "qks_fiber_json",
        "qks_center_json",
        "qks_molien_json",
        "qks_auslander_json",
        "qks_last_error",
        "qks_string_free",
        "qks_version",
    ] {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct QksCase QksCase;"));
}
