//! C ABI over the equichar engine.
//!
//! Problems and analyses are opaque handles owned by the caller and released
//! with the matching `*_free` function. Every fallible call returns an
//! [`EqStatus`]; on failure the message is available from [`eq_last_error`]
//! on the same thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use equichar::cli::{builtin, parse_input, parse_str, render, AnalysisReport, OutputFormat, ProblemSpec, RunOptions};
use equichar::Error;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InputError = 3,
    PipelineError = 4,
    OutOfRange = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqFormat {
    Json = 0,
    Text = 1,
    Latex = 2,
}

pub struct EqProblem {
    spec: ProblemSpec,
}

pub struct EqAnalysis {
    report: AnalysisReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).ok());
}

fn fail(status: EqStatus, message: impl Into<String>) -> EqStatus {
    set_error(message);
    status
}

fn guard(f: impl FnOnce() -> EqStatus) -> EqStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(EqStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, EqStatus> {
    if s.is_null() {
        return Err(fail(EqStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(EqStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn status_of(e: &Error) -> EqStatus {
    match e {
        Error::Input(_) | Error::Group(_) | Error::Character(_) => EqStatus::InputError,
        _ => EqStatus::PipelineError,
    }
}

unsafe fn store_problem(result: Result<ProblemSpec, equichar::cli::InputError>, out: *mut *mut EqProblem) -> EqStatus {
    match result {
        Ok(spec) => {
            *out = Box::into_raw(Box::new(EqProblem { spec }));
            EqStatus::Ok
        }
        Err(e) => fail(EqStatus::InputError, format!("cli: {e}")),
    }
}

/// Message of the last failing call on this thread, or NULL. Valid until the
/// next failing call on this thread.
#[no_mangle]
pub extern "C" fn eq_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn eq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn eq_problem_from_builtin(name: *const c_char, out: *mut *mut EqProblem) -> EqStatus {
    guard(|| {
        if out.is_null() {
            return fail(EqStatus::NullPointer, "null output pointer");
        }
        match read_str(name) {
            Ok(name) => store_problem(builtin(name), out),
            Err(s) => s,
        }
    })
}

/// Parses a problem from JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn eq_problem_from_json(json: *const c_char, out: *mut *mut EqProblem) -> EqStatus {
    guard(|| {
        if out.is_null() {
            return fail(EqStatus::NullPointer, "null output pointer");
        }
        match read_str(json) {
            Ok(text) => store_problem(parse_str(text), out),
            Err(s) => s,
        }
    })
}

/// # Safety
/// `path` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn eq_problem_from_file(path: *const c_char, out: *mut *mut EqProblem) -> EqStatus {
    guard(|| {
        if out.is_null() {
            return fail(EqStatus::NullPointer, "null output pointer");
        }
        match read_str(path) {
            Ok(p) => store_problem(parse_input(Path::new(p)), out),
            Err(s) => s,
        }
    })
}

/// # Safety
/// `problem` must be NULL or a handle from an `eq_problem_from_*` call that
/// has not been freed.
#[no_mangle]
pub unsafe extern "C" fn eq_problem_free(problem: *mut EqProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Runs the pipeline. `q_max = 0` selects the default range; `verify`
/// enables the brute-force oracle.
///
/// # Safety
/// `problem` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn eq_analyze(
    problem: *const EqProblem,
    q_max: u64,
    verify: bool,
    out: *mut *mut EqAnalysis,
) -> EqStatus {
    guard(|| {
        if problem.is_null() || out.is_null() {
            return fail(EqStatus::NullPointer, "null argument");
        }
        let options = RunOptions { q_max: (q_max > 0).then_some(q_max), verify, ..RunOptions::default() };
        match equichar::cli::run_analyze(&(*problem).spec, &options) {
            Ok(report) => {
                *out = Box::into_raw(Box::new(EqAnalysis { report }));
                EqStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `analysis` must be NULL or a live handle from [`eq_analyze`].
#[no_mangle]
pub unsafe extern "C" fn eq_analysis_free(analysis: *mut EqAnalysis) {
    if !analysis.is_null() {
        drop(Box::from_raw(analysis));
    }
}

/// Renders the report; the string is released with [`eq_string_free`].
///
/// # Safety
/// `analysis` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn eq_analysis_render(analysis: *const EqAnalysis, format: EqFormat, out: *mut *mut c_char) -> EqStatus {
    guard(|| {
        if analysis.is_null() || out.is_null() {
            return fail(EqStatus::NullPointer, "null argument");
        }
        let format = match format {
            EqFormat::Json => OutputFormat::Json,
            EqFormat::Text => OutputFormat::Text,
            EqFormat::Latex => OutputFormat::Latex,
        };
        match CString::new(render(&(*analysis).report, format)) {
            Ok(s) => {
                *out = s.into_raw();
                EqStatus::Ok
            }
            Err(_) => fail(EqStatus::PipelineError, "rendered output contains NUL"),
        }
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// |G|, or 0 for a NULL handle.
///
/// # Safety
/// `analysis` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eq_analysis_group_order(analysis: *const EqAnalysis) -> u64 {
    analysis.as_ref().map_or(0, |a| a.report.group.order as u64)
}

/// Number of irreducible characters, or 0 for a NULL handle.
///
/// # Safety
/// `analysis` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eq_analysis_irreducible_count(analysis: *const EqAnalysis) -> usize {
    analysis.as_ref().map_or(0, |a| a.report.multiplicities.len())
}

/// Index of the reciprocity character δ in the table.
///
/// # Safety
/// `analysis` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eq_analysis_reciprocity_index(analysis: *const EqAnalysis) -> usize {
    analysis.as_ref().map_or(0, |a| a.report.reciprocity.index)
}

/// ñ, the common period.
///
/// # Safety
/// `analysis` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn eq_analysis_period(analysis: *const EqAnalysis, out: *mut u64) -> EqStatus {
    guard(|| {
        if analysis.is_null() || out.is_null() {
            return fail(EqStatus::NullPointer, "null argument");
        }
        match (*analysis).report.tilde_n.to_u64() {
            Some(n) => {
                *out = n;
                EqStatus::Ok
            }
            None => fail(EqStatus::OutOfRange, "period does not fit in 64 bits"),
        }
    })
}

/// m(χ_index; q) as numerator / denominator. Values at q ≤ 0 use the
/// constituent extension and may be non-integral or negative.
///
/// # Safety
/// `analysis` must be a live handle; `numerator` and `denominator` writable.
#[no_mangle]
pub unsafe extern "C" fn eq_analysis_multiplicity(
    analysis: *const EqAnalysis,
    index: usize,
    q: i64,
    numerator: *mut i64,
    denominator: *mut i64,
) -> EqStatus {
    guard(|| {
        if analysis.is_null() || numerator.is_null() || denominator.is_null() {
            return fail(EqStatus::NullPointer, "null argument");
        }
        let analysis = &*analysis;
        let Some(m) = analysis.report.multiplicities.get(index) else {
            return fail(EqStatus::OutOfRange, format!("character index {index} out of range"));
        };
        let v = m.qp.evaluate(&BigInt::from(q));
        match (v.numer().to_i64(), v.denom().to_i64()) {
            (Some(n), Some(d)) => {
                *numerator = n;
                *denominator = d;
                EqStatus::Ok
            }
            _ => fail(EqStatus::OutOfRange, format!("m(χ_{index}; {q}) = {v} does not fit in 64 bits")),
        }
    })
}

/// Whether every verification verdict passed.
///
/// # Safety
/// `analysis` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eq_analysis_all_passed(analysis: *const EqAnalysis) -> bool {
    analysis.as_ref().is_some_and(|a| a.report.all_passed)
}
