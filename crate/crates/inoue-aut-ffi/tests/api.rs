//! Exercises the C ABI through the exported symbols: handle lifecycle,
//! status codes, JSON payload shape, and error reporting.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use inoue_aut_ffi::{
    inoue_engine_free, inoue_engine_m, inoue_engine_new, inoue_last_error, inoue_quotient_json,
    inoue_string_free, inoue_structure_json, inoue_verify_json, InoueEngine, InoueStatus,
};

fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let s = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_owned();
    unsafe { inoue_string_free(ptr) };
    s
}

fn new_engine(m: i64) -> *mut InoueEngine {
    let mut engine: *mut InoueEngine = ptr::null_mut();
    assert_eq!(
        unsafe { inoue_engine_new(m, 0, &mut engine) },
        InoueStatus::Ok
    );
    assert!(!engine.is_null());
    engine
}

#[test]
fn engine_lifecycle_and_verify() {
    let engine = new_engine(3);
    assert_eq!(unsafe { inoue_engine_m(engine) }, 3);
    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { inoue_verify_json(engine, &mut out) }, InoueStatus::Ok);
    let payload = take_string(out);
    let value: serde_json::Value = serde_json::from_str(&payload).unwrap();
    assert_eq!(value["schema"], 1);
    assert_eq!(value["command"], "verify");
    assert_eq!(value["result_label"], "S(3, alpha)");
    assert!(value["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));
    unsafe { inoue_engine_free(engine) };
}

#[test]
fn structure_report() {
    let engine = new_engine(4);
    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { inoue_structure_json(engine, &mut out) }, InoueStatus::Ok);
    let value: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(value["command"], "structure");
    unsafe { inoue_engine_free(engine) };
}

#[test]
fn quotient_reports_and_errors() {
    let engine = new_engine(6);
    let kind = CString::new("mixed").unwrap();
    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(
        unsafe { inoue_quotient_json(engine, kind.as_ptr(), 2, 1, -1, &mut out) },
        InoueStatus::Ok
    );
    let value: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(value["result_label"], "S(3, alpha^2)");
    assert_eq!(value["report"]["result"]["m"], 3);

    // Invalid kind surfaces as InvalidArgument with a readable message.
    let bad = CString::new("nonsense").unwrap();
    let status = unsafe { inoue_quotient_json(engine, bad.as_ptr(), -1, -1, -1, &mut out) };
    assert_eq!(status, InoueStatus::InvalidArgument);
    let msg = unsafe { CStr::from_ptr(inoue_last_error()) }.to_str().unwrap();
    assert!(msg.contains("nonsense"), "{msg}");

    // Involution on odd m is rejected.
    let engine5 = new_engine(5);
    let inv = CString::new("involution").unwrap();
    assert_eq!(
        unsafe { inoue_quotient_json(engine5, inv.as_ptr(), -1, -1, -1, &mut out) },
        InoueStatus::InvalidArgument
    );
    unsafe { inoue_engine_free(engine5) };
    unsafe { inoue_engine_free(engine) };
}

#[test]
fn null_handling() {
    assert_eq!(unsafe { inoue_engine_m(ptr::null()) }, -1);
    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { inoue_verify_json(ptr::null(), &mut out) }, InoueStatus::NullPointer);
    let engine = new_engine(2);
    assert_eq!(
        unsafe { inoue_verify_json(engine, ptr::null_mut()) },
        InoueStatus::NullPointer
    );
    assert_eq!(
        unsafe { inoue_quotient_json(engine, ptr::null(), -1, -1, -1, &mut out) },
        InoueStatus::NullPointer
    );
    unsafe { inoue_engine_free(engine) };
    unsafe { inoue_engine_free(ptr::null_mut()) };
    unsafe { inoue_string_free(ptr::null_mut()) };
}

#[test]
fn invalid_engine_parameters() {
    let mut engine: *mut InoueEngine = ptr::null_mut();
    assert_eq!(
        unsafe { inoue_engine_new(0, 0, &mut engine) },
        InoueStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { inoue_engine_new(2, -3, &mut engine) },
        InoueStatus::InvalidArgument
    );
}

#[test]
fn generated_header_exists_and_names_the_api() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/inoue_aut.h");
    let text = std::fs::read_to_string(header).expect("cbindgen header generated at build time");
    for symbol in [
        "InoueEngine",
        "InoueStatus",
        "inoue_engine_new",
        "inoue_quotient_json",
        "inoue_string_free",
        "inoue_last_error",
    ] {
        assert!(text.contains(symbol), "header misses {symbol}");
    }
}
