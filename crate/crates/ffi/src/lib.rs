//! C ABI over `mmw-core`.
//!
//! Problems and reports are opaque handles owned by the caller and released
//! with their `_free` function. Every fallible call returns an [`MmwStatus`];
//! on failure the message is available from [`mmw_last_error_message`] on the
//! same thread until the next failing call. Strings returned by the library
//! must be released with [`mmw_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, c_int, size_t};
use mmw_core::io::{parse_problem, parse_vector, ProblemInput, ProblemInstance, Source};
use mmw_core::report::{run, Command, RunOptions, SolutionReport};
use mmw_core::{is_solution, Error, DEFAULT_CELL_BUDGET};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MmwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DomainError = 4,
    DimensionMismatch = 5,
    ResourceLimit = 6,
    Panic = 7,
}

/// A parsed system `A (x)_omega x = b`.
pub struct MmwProblem {
    inner: ProblemInstance,
}

/// The result of running one command on a problem.
pub struct MmwReport {
    inner: SolutionReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MmwStatus {
    match e {
        Error::Parse { .. } => MmwStatus::ParseError,
        Error::DimensionMismatch { .. } | Error::RaggedRows { .. } => MmwStatus::DimensionMismatch,
        Error::CellBudgetExceeded { .. } => MmwStatus::ResourceLimit,
        _ => MmwStatus::DomainError,
    }
}

struct Failure(MmwStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> MmwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MmwStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {message}"));
            MmwStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(MmwStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `p` must be null or a valid nul-terminated string.
unsafe fn opt_str<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p)
        .to_str()
        .map(Some)
        .map_err(|_| Failure(MmwStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

/// # Safety
/// As [`opt_str`], but null is an error.
unsafe fn req_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    opt_str(p, what)?.ok_or_else(|| null(what))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Parses a problem from matrix text and optional `b` text. Give omega as a
/// string (`"2/3"`, `"0.5"`) or a level `p >= 1`; pass null / 0 to omit one.
///
/// # Safety
/// String arguments must be null or nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mmw_problem_parse(
    matrix: *const c_char,
    rhs: *const c_char,
    omega: *const c_char,
    level: size_t,
    out: *mut *mut MmwProblem,
) -> MmwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let input = ProblemInput {
            matrix: Some(Source::new("matrix", req_str(matrix, "matrix")?)),
            rhs: opt_str(rhs, "rhs")?.map(|t| Source::new("rhs", t)),
            omega: opt_str(omega, "omega")?.map(str::to_owned),
            level: (level > 0).then_some(level),
        };
        let inner = parse_problem(&input)?;
        *out = Box::into_raw(Box::new(MmwProblem { inner }));
        Ok(())
    })
}

/// # Safety
/// `problem` must be null or come from [`mmw_problem_parse`], freed once.
#[no_mangle]
pub unsafe extern "C" fn mmw_problem_free(problem: *mut MmwProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Rows, columns and level of a problem. Any output pointer may be null.
///
/// # Safety
/// `problem` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn mmw_problem_dims(
    problem: *const MmwProblem,
    rows: *mut size_t,
    cols: *mut size_t,
    level: *mut size_t,
) -> MmwStatus {
    guard(|| {
        let p = problem.as_ref().ok_or_else(|| null("problem"))?;
        if !rows.is_null() {
            *rows = p.inner.matrix.rows();
        }
        if !cols.is_null() {
            *cols = p.inner.matrix.cols();
        }
        if !level.is_null() {
            *level = p.inner.level;
        }
        Ok(())
    })
}

/// Writes 1 to `out` when `x` (whitespace-separated entries) solves the
/// system, else 0.
///
/// # Safety
/// `problem` must be a live handle, `x` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mmw_is_solution(problem: *const MmwProblem, x: *const c_char, out: *mut c_int) -> MmwStatus {
    guard(|| {
        let p = problem.as_ref().ok_or_else(|| null("problem"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let x = parse_vector(&Source::new("x", req_str(x, "x")?), p.inner.matrix.cols())?;
        *out = c_int::from(is_solution(&p.inner.matrix, &p.inner.omega, &x, &p.inner.rhs)?);
        Ok(())
    })
}

unsafe fn run_command(
    problem: *const MmwProblem,
    command: *const c_char,
    x: *const c_char,
    cell_budget: u64,
) -> Result<SolutionReport, Failure> {
    let p = problem.as_ref().ok_or_else(|| null("problem"))?;
    let command: Command = req_str(command, "command")?.parse()?;
    let x = match opt_str(x, "x")? {
        Some(t) => Some(parse_vector(&Source::new("x", t), p.inner.matrix.cols())?),
        None => None,
    };
    let budget = if cell_budget == 0 { DEFAULT_CELL_BUDGET } else { u128::from(cell_budget) };
    Ok(run(command, &p.inner, &RunOptions { cell_budget: budget, x, timing: false })?)
}

/// Runs `command` (`"solve"`, `"exact"`, ...) and returns a report handle.
/// `x` is needed by `apply` and `check` and may be null otherwise; a zero
/// `cell_budget` selects the default.
///
/// # Safety
/// `problem` must be a live handle, strings null or nul-terminated, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mmw_run(
    problem: *const MmwProblem,
    command: *const c_char,
    x: *const c_char,
    cell_budget: u64,
    out: *mut *mut MmwReport,
) -> MmwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let inner = run_command(problem, command, x, cell_budget)?;
        *out = Box::into_raw(Box::new(MmwReport { inner }));
        Ok(())
    })
}

/// Like [`mmw_run`] but returns the JSON report and the CLI exit code directly.
/// `exit_code` may be null.
///
/// # Safety
/// As [`mmw_run`]; `json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mmw_run_json(
    problem: *const MmwProblem,
    command: *const c_char,
    x: *const c_char,
    cell_budget: u64,
    json: *mut *mut c_char,
    exit_code: *mut c_int,
) -> MmwStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        *json = ptr::null_mut();
        let report = run_command(problem, command, x, cell_budget)?;
        if !exit_code.is_null() {
            *exit_code = report.exit_code();
        }
        *json = into_c_string(report.to_json());
        Ok(())
    })
}

/// # Safety
/// `report` must be null or come from [`mmw_run`], freed once.
#[no_mangle]
pub unsafe extern "C" fn mmw_report_free(report: *mut MmwReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// 1 solvable, 0 provably empty, -1 not determined by this command or a null
/// handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mmw_report_solvable(report: *const MmwReport) -> c_int {
    match report.as_ref().and_then(|r| r.inner.solvable) {
        Some(true) => 1,
        Some(false) => 0,
        None => -1,
    }
}

/// Process exit code the CLI would use for this report; 2 for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mmw_report_exit_code(report: *const MmwReport) -> c_int {
    report.as_ref().map_or(2, |r| r.inner.exit_code())
}

/// Number of fully active solutions, or 0 when the command does not list them.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mmw_report_fully_active_count(report: *const MmwReport) -> size_t {
    report.as_ref().and_then(|r| r.inner.fully_active.as_ref()).map_or(0, Vec::len)
}

/// Entries of fully active solution `index`, space separated, as a new string.
/// Null when out of range.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mmw_report_fully_active(report: *const MmwReport, index: size_t) -> *mut c_char {
    report
        .as_ref()
        .and_then(|r| r.inner.fully_active.as_ref())
        .and_then(|fa| fa.get(index))
        .map_or(ptr::null_mut(), |x| {
            into_c_string(x.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        })
}

/// The JSON report as a new string; null for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mmw_report_to_json(report: *const MmwReport) -> *mut c_char {
    report.as_ref().map_or(ptr::null_mut(), |r| into_c_string(r.inner.to_json()))
}

/// Message of the last failing call on this thread, or null. Owned by the
/// library; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mmw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn mmw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
