//! C ABI for the verification engine, so other languages can drive the
//! suites and read the structured JSON reports.
//!
//! The surface under study is held behind an opaque [`InoueEngine`]
//! handle.  Every entry point returns an [`InoueStatus`] code; report
//! payloads come back as NUL-terminated JSON strings owned by the
//! library and released with [`inoue_string_free`].  The textual message
//! for the most recent failure on the current thread is available
//! through [`inoue_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use inoue_aut::quotient::quotient_by_kind;
use inoue_aut::report::CheckSet;
use inoue_aut::surface::{
    build_h, verify_corollary_1_2, verify_homomorphisms, verify_theorem_1_1, Surface,
};

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let cstring = CString::new(message).unwrap_or_else(|_| CString::new("invalid error").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InoueStatus {
    /// The call succeeded and, where applicable, every check passed.
    Ok = 0,
    /// The computation ran but at least one verification check failed.
    CheckFailed = 1,
    /// A parameter was rejected.
    InvalidArgument = 2,
    /// A required pointer was null.
    NullPointer = 3,
    /// An internal construction or computation error; see
    /// `inoue_last_error`.
    Error = 4,
}

/// Opaque handle for a surface `S(m, alpha)` under verification.
pub struct InoueEngine {
    m: i64,
    window: i64,
}

fn engine_ref<'a>(engine: *const InoueEngine) -> Option<&'a InoueEngine> {
    unsafe { engine.as_ref() }
}

fn emit_string(out: *mut *mut c_char, payload: String) -> InoueStatus {
    let Some(slot) = (unsafe { out.as_mut() }) else {
        return InoueStatus::NullPointer;
    };
    match CString::new(payload) {
        Ok(cstring) => {
            *slot = cstring.into_raw();
            InoueStatus::Ok
        }
        Err(e) => {
            set_last_error(format!("payload contains NUL: {e}"));
            InoueStatus::Error
        }
    }
}

fn checks_payload(command: &str, m: i64, checks: &CheckSet) -> String {
    let value = serde_json::json!({
        "schema": 1,
        "command": command,
        "parameters": {"m": m},
        "checks": checks.checks().iter().map(|c| serde_json::json!({
            "name": c.name,
            "paper_anchor": c.paper_anchor,
            "status": if checks_pass_one(c) { "pass" } else { "fail" },
            "details": c.details,
        })).collect::<Vec<_>>(),
        "result_label": format!("S({m}, alpha)"),
    });
    serde_json::to_string_pretty(&value).expect("serializable")
}

fn checks_pass_one(c: &inoue_aut::report::Check) -> bool {
    c.status == inoue_aut::report::CheckStatus::Pass
}

/// Creates an engine for `S(m, alpha)`.  `window` of 0 means the default
/// chart window `3m`.
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn inoue_engine_new(
    m: i64,
    window: i64,
    out: *mut *mut InoueEngine,
) -> InoueStatus {
    let Some(slot) = (unsafe { out.as_mut() }) else {
        return InoueStatus::NullPointer;
    };
    if m < 1 || window < 0 {
        set_last_error(format!("invalid parameters m = {m}, window = {window}"));
        return InoueStatus::InvalidArgument;
    }
    let engine = InoueEngine {
        m,
        window: if window == 0 { 3 * m } else { window },
    };
    *slot = Box::into_raw(Box::new(engine));
    InoueStatus::Ok
}

/// Releases an engine produced by `inoue_engine_new`.
///
/// # Safety
/// `engine` must be null or a pointer returned by `inoue_engine_new`
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn inoue_engine_free(engine: *mut InoueEngine) {
    if !engine.is_null() {
        drop(unsafe { Box::from_raw(engine) });
    }
}

/// Second Betti number of the engine's surface, or -1 for null input.
///
/// # Safety
/// `engine` must be null or a live engine pointer.
#[no_mangle]
pub unsafe extern "C" fn inoue_engine_m(engine: *const InoueEngine) -> i64 {
    engine_ref(engine).map_or(-1, |e| e.m)
}

/// Runs the full verification suite (relations, structure theorems,
/// homomorphism properties) and writes the JSON report to `*out`.
///
/// # Safety
/// `engine` must be null or a live engine pointer; `out` must be null
/// or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn inoue_verify_json(
    engine: *const InoueEngine,
    out: *mut *mut c_char,
) -> InoueStatus {
    let Some(engine) = engine_ref(engine) else {
        return InoueStatus::NullPointer;
    };
    let suite = || -> Result<CheckSet, String> {
        let surface = Surface::standard(engine.m).map_err(|e| e.to_string())?;
        let mut checks =
            inoue_aut::autgroup::verify_relations(surface.context(), engine.window)
                .map_err(|e| e.to_string())?;
        let (_, h_checks) = build_h(&surface).map_err(|e| e.to_string())?;
        checks.merge(h_checks);
        checks.merge(verify_theorem_1_1(&surface).map_err(|e| e.to_string())?);
        checks.merge(verify_corollary_1_2(&surface).map_err(|e| e.to_string())?);
        checks.merge(verify_homomorphisms(&surface, engine.window).map_err(|e| e.to_string())?);
        Ok(checks)
    };
    match suite() {
        Ok(checks) => {
            let all_pass = checks.all_pass();
            let status = emit_string(out, checks_payload("verify", engine.m, &checks));
            if status != InoueStatus::Ok {
                status
            } else if all_pass {
                InoueStatus::Ok
            } else {
                InoueStatus::CheckFailed
            }
        }
        Err(e) => {
            set_last_error(e);
            InoueStatus::Error
        }
    }
}

/// Runs only the structure statements (the theorem and its corollary).
///
/// # Safety
/// Same contracts as `inoue_verify_json`.
#[no_mangle]
pub unsafe extern "C" fn inoue_structure_json(
    engine: *const InoueEngine,
    out: *mut *mut c_char,
) -> InoueStatus {
    let Some(engine) = engine_ref(engine) else {
        return InoueStatus::NullPointer;
    };
    let suite = || -> Result<CheckSet, String> {
        let surface = Surface::standard(engine.m).map_err(|e| e.to_string())?;
        let (_, mut checks) = build_h(&surface).map_err(|e| e.to_string())?;
        checks.merge(verify_theorem_1_1(&surface).map_err(|e| e.to_string())?);
        checks.merge(verify_corollary_1_2(&surface).map_err(|e| e.to_string())?);
        Ok(checks)
    };
    match suite() {
        Ok(checks) => {
            let all_pass = checks.all_pass();
            let status = emit_string(out, checks_payload("structure", engine.m, &checks));
            if status != InoueStatus::Ok {
                status
            } else if all_pass {
                InoueStatus::Ok
            } else {
                InoueStatus::CheckFailed
            }
        }
        Err(e) => {
            set_last_error(e);
            InoueStatus::Error
        }
    }
}

/// Computes a quotient report.  `kind` is one of `free`, `torus`,
/// `mixed`, `involution`, `cover`; parameters that do not apply to the
/// kind must be negative (the conventional "absent" value).
///
/// # Safety
/// `engine` must be null or a live engine pointer; `kind` must be null
/// or a NUL-terminated string; `out` must be null or valid for writing
/// one pointer.
#[no_mangle]
pub unsafe extern "C" fn inoue_quotient_json(
    engine: *const InoueEngine,
    kind: *const c_char,
    l: i64,
    j: i64,
    root: i64,
    out: *mut *mut c_char,
) -> InoueStatus {
    let Some(engine) = engine_ref(engine) else {
        return InoueStatus::NullPointer;
    };
    if kind.is_null() {
        return InoueStatus::NullPointer;
    }
    let kind = match unsafe { CStr::from_ptr(kind) }.to_str() {
        Ok(s) => s,
        Err(e) => {
            set_last_error(format!("kind is not UTF-8: {e}"));
            return InoueStatus::InvalidArgument;
        }
    };
    let opt = |v: i64| if v < 0 { None } else { Some(v) };
    match quotient_by_kind(engine.m, kind, opt(l), opt(j), opt(root)) {
        Ok(report) => {
            let all_pass = report.all_checks_pass();
            let value = serde_json::json!({
                "schema": 1,
                "command": "quotient",
                "parameters": {"m": engine.m, "kind": kind, "l": opt(l), "j": opt(j), "root": opt(root)},
                "checks": report.checks.checks().iter().map(|c| serde_json::json!({
                    "name": c.name,
                    "paper_anchor": c.paper_anchor,
                    "status": if checks_pass_one(c) { "pass" } else { "fail" },
                    "details": c.details,
                })).collect::<Vec<_>>(),
                "result_label": report.result.rendered,
                "report": serde_json::to_value(&report).expect("report serializes"),
            });
            let payload = serde_json::to_string_pretty(&value).expect("serializable");
            let status = emit_string(out, payload);
            if status != InoueStatus::Ok {
                status
            } else if all_pass {
                InoueStatus::Ok
            } else {
                InoueStatus::CheckFailed
            }
        }
        Err(e) => {
            set_last_error(e.to_string());
            InoueStatus::InvalidArgument
        }
    }
}

/// Releases a string returned by the report entry points.
///
/// # Safety
/// `s` must be null or a string returned by this library that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn inoue_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Message for the most recent failure on this thread; the pointer stays
/// valid until the next failing call on the same thread.  Null when no
/// error has been recorded.
#[no_mangle]
pub extern "C" fn inoue_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}
