//! C ABI over `stabforge`.
//!
//! Every fallible call returns a [`StabStatus`]; on failure the message is
//! kept per thread and read with [`stab_last_error`]. Objects cross the
//! boundary as opaque handles released by their `*_free` function. Strings
//! returned through `char **` are owned by the caller and released with
//! [`stab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use stabforge::charge::{exp_charge, CentralCharge};
use stabforge::cohomology::{ClassTermJson, GradedClass, ProductSpace};
use stabforge::gaussian::parse_rational;
use stabforge::orbifold::run_tower;
use stabforge::scenario::{emit_verification_matrix, run_scenario, Report, Scenario, StepStatus};
use stabforge::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Scenario = 5,
    Unsupported = 6,
    OutOfRange = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabStepStatus {
    Pass = 0,
    Fail = 1,
    Error = 2,
    Skipped = 3,
}

/// Parsed, validated scenario.
pub struct StabScenario(Scenario);

/// Result of running a scenario.
pub struct StabReport(Report);

/// Exact central charge on a product of curves.
pub struct StabCharge(CentralCharge);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(StabStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) => StabStatus::Parse,
            Error::Scenario { .. } => StabStatus::Scenario,
            Error::Unsupported(_) => StabStatus::Unsupported,
            _ => StabStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> StabStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => StabStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            StabStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(StabStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(StabStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(StabStatus::NullPointer, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(StabStatus::NullPointer, format!("{what} is null")));
    }
    out.write(value);
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn stab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next `stab_*` call on the same thread.
#[no_mangle]
pub extern "C" fn stab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` is NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a scenario document. `origin` labels error positions and may be NULL.
///
/// # Safety
/// `json` and a non-NULL `origin` are NUL-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stab_scenario_from_json(
    json: *const c_char,
    origin: *const c_char,
    out: *mut *mut StabScenario,
) -> StabStatus {
    guard(|| {
        let json = text(json, "json")?;
        let origin = if origin.is_null() { "<ffi>" } else { text(origin, "origin")? };
        let s = Scenario::from_json(json, origin)?;
        s.resolve()?;
        put(out, Box::into_raw(Box::new(StabScenario(s))), "out")
    })
}

/// # Safety
/// `path` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stab_scenario_from_file(path: *const c_char, out: *mut *mut StabScenario) -> StabStatus {
    guard(|| {
        let path = text(path, "path")?;
        let s = Scenario::from_file(std::path::Path::new(path))?;
        s.resolve()?;
        put(out, Box::into_raw(Box::new(StabScenario(s))), "out")
    })
}

/// # Safety
/// `s` is NULL or a live scenario handle.
#[no_mangle]
pub unsafe extern "C" fn stab_scenario_free(s: *mut StabScenario) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Runs every step. A failing step is reported in the result, not as an error status.
///
/// # Safety
/// `s` is a live scenario handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stab_scenario_run(s: *const StabScenario, out: *mut *mut StabReport) -> StabStatus {
    guard(|| {
        let s = handle(s, "scenario")?;
        let r = run_scenario(&s.0)?;
        put(out, Box::into_raw(Box::new(StabReport(r))), "out")
    })
}

/// # Safety
/// `r` is NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn stab_report_free(r: *mut StabReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` is a live report handle; `pass` is writable.
#[no_mangle]
pub unsafe extern "C" fn stab_report_pass(r: *const StabReport, pass: *mut bool) -> StabStatus {
    guard(|| put(pass, handle(r, "report")?.0.pass, "pass"))
}

/// # Safety
/// `r` is a live report handle; `count` is writable.
#[no_mangle]
pub unsafe extern "C" fn stab_report_step_count(r: *const StabReport, count: *mut usize) -> StabStatus {
    guard(|| put(count, handle(r, "report")?.0.steps.len(), "count"))
}

/// # Safety
/// `r` is a live report handle; `status` is writable.
#[no_mangle]
pub unsafe extern "C" fn stab_report_step_status(
    r: *const StabReport,
    index: usize,
    status: *mut StabStepStatus,
) -> StabStatus {
    guard(|| {
        let r = handle(r, "report")?;
        let step = r.0.steps.get(index).ok_or_else(|| {
            Failure(StabStatus::OutOfRange, format!("step {index} of {}", r.0.steps.len()))
        })?;
        let s = match step.status {
            StepStatus::Pass => StabStepStatus::Pass,
            StepStatus::Fail => StabStepStatus::Fail,
            StepStatus::Error => StabStepStatus::Error,
            StepStatus::Skipped => StabStepStatus::Skipped,
        };
        put(status, s, "status")
    })
}

/// JSON report; timings are dropped unless `timings` is set.
///
/// # Safety
/// `r` is a live report handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stab_report_to_json(r: *const StabReport, timings: bool, out: *mut *mut c_char) -> StabStatus {
    guard(|| {
        let r = handle(r, "report")?;
        let json = if timings { r.0.to_json() } else { r.0.clone().without_timings().to_json() };
        put(out, owned(json), "out")
    })
}

/// Bundled verification matrix as JSON, without timings. `only` filters by
/// tag and may be NULL.
///
/// # Safety
/// A non-NULL `only` is a NUL-terminated string; `out` and `pass` are writable.
#[no_mangle]
pub unsafe extern "C" fn stab_matrix_json(only: *const c_char, out: *mut *mut c_char, pass: *mut bool) -> StabStatus {
    guard(|| {
        let only = if only.is_null() { None } else { Some(text(only, "only")?) };
        let m = emit_verification_matrix(only)?.without_timings();
        put(pass, m.pass, "pass")?;
        put(out, owned(m.to_json()), "out")
    })
}

/// Cynk-Hulek tower audit as JSON.
///
/// # Safety
/// `out` and `pass` are writable.
#[no_mangle]
pub unsafe extern "C" fn stab_ch_tower_json(m: u32, depth: usize, out: *mut *mut c_char, pass: *mut bool) -> StabStatus {
    guard(|| {
        let t = run_tower(m, depth)?;
        let json = serde_json::to_string_pretty(&t).map_err(|e| Failure(StabStatus::Internal, e.to_string()))?;
        put(pass, t.pass, "pass")?;
        put(out, owned(json), "out")
    })
}

/// `Z^{w,b}` on the product of curves with the given genera. `w` and `b` are
/// rationals written `p/q`.
///
/// # Safety
/// `genera` points to `n` readable values; `w`, `b` are NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stab_charge_exp(
    genera: *const u32,
    n: usize,
    w: *const c_char,
    b: *const c_char,
    out: *mut *mut StabCharge,
) -> StabStatus {
    guard(|| {
        if genera.is_null() && n > 0 {
            return Err(Failure(StabStatus::NullPointer, "genera is null".into()));
        }
        let gs = if n == 0 { &[][..] } else { std::slice::from_raw_parts(genera, n) };
        let w = parse_rational(text(w, "w")?)?;
        let b = parse_rational(text(b, "b")?)?;
        let space = ProductSpace::with_genera(gs).shared();
        let z = exp_charge(&space, &w, &b)?;
        put(out, Box::into_raw(Box::new(StabCharge(CentralCharge::Kernel(z)))), "out")
    })
}

/// # Safety
/// `c` is NULL or a live charge handle.
#[no_mangle]
pub unsafe extern "C" fn stab_charge_free(c: *mut StabCharge) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Evaluates the charge on a class given as a JSON term list
/// (`[{"factors": [...], "re": "p/q", "im": "p/q"}]`). Writes `{"re", "im"}`.
///
/// # Safety
/// `c` is a live charge handle; `class_json` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stab_charge_evaluate(
    c: *const StabCharge,
    class_json: *const c_char,
    out: *mut *mut c_char,
) -> StabStatus {
    guard(|| {
        let c = handle(c, "charge")?;
        let terms: Vec<ClassTermJson> = serde_json::from_str(text(class_json, "class_json")?)
            .map_err(|e| Failure(StabStatus::Parse, format!("class_json: {e}")))?;
        let space = match &c.0 {
            CentralCharge::Kernel(k) => k.kernel.space().clone(),
            CentralCharge::Liu(l) => l.space().clone(),
        };
        let v = GradedClass::from_json(&space, &terms)?;
        let z = c.0.evaluate(&v)?;
        let json = serde_json::to_string(&z).map_err(|e| Failure(StabStatus::Internal, e.to_string()))?;
        put(out, owned(json), "out")
    })
}
