//! C ABI for the index computation: opaque handles, integer status codes,
//! and a thread-local last-error message. The generated header lives at
//! `include/formindex.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use formindex::index::{compute_index, IndexError, IndexResult, IndexValue, ProblemSpec};
use formindex::problem::{decode_problem, encode_result};
use formindex::standard_basis::{BasisError, Budget};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FxStatus {
    Ok = 0,
    /// Malformed input, validation failure, or null argument.
    Invalid = 1,
    /// Standard-basis resource budget exceeded.
    Budget = 2,
    /// Pipeline and oracle colengths disagree.
    OracleDisagreement = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Message for the most recent error on this thread, or null. Owned by the
/// library; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fx_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map(|c| c.as_ptr())
            .unwrap_or(ptr::null())
    })
}

/// Opaque parsed problem.
pub struct FxProblem {
    spec: ProblemSpec,
}

/// Opaque computation result.
pub struct FxResult {
    result: IndexResult,
    json: CString,
    staircase: Vec<CString>,
}

/// Parses a problem from its JSON encoding. On success stores a handle in
/// `out`; free it with `fx_problem_free`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fx_problem_parse_json(
    json: *const c_char,
    out: *mut *mut FxProblem,
) -> FxStatus {
    if json.is_null() || out.is_null() {
        set_error("null argument".to_string());
        return FxStatus::Invalid;
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(e) => {
            set_error(format!("input is not UTF-8: {e}"));
            return FxStatus::Invalid;
        }
    };
    match decode_problem(text) {
        Ok(spec) => {
            *out = Box::into_raw(Box::new(FxProblem { spec }));
            FxStatus::Ok
        }
        Err(errs) => {
            let msgs: Vec<String> = errs.iter().map(|e| e.to_string()).collect();
            set_error(msgs.join("; "));
            FxStatus::Invalid
        }
    }
}

/// Computes the index. `budget_steps` of 0 selects the default budget; when
/// `with_oracle` is nonzero the brute-force oracle cross-checks the result.
///
/// # Safety
/// `problem` must come from `fx_problem_parse_json`; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fx_compute_index(
    problem: *const FxProblem,
    with_oracle: i32,
    max_truncation: u32,
    budget_steps: u64,
    out: *mut *mut FxResult,
) -> FxStatus {
    if problem.is_null() || out.is_null() {
        set_error("null argument".to_string());
        return FxStatus::Invalid;
    }
    let spec = &(*problem).spec;
    let budget = if budget_steps == 0 {
        Budget::default()
    } else {
        Budget {
            max_pairs: budget_steps as usize,
            max_steps: budget_steps as usize,
        }
    };
    match compute_index(spec, with_oracle != 0, &budget, max_truncation) {
        Ok(result) => {
            let encoded = encode_result(&result, &spec.ring, None);
            let json = CString::new(serde_json::to_string(&encoded).unwrap()).unwrap();
            let staircase = result
                .staircase
                .iter()
                .map(|m| CString::new(m.format(&spec.ring)).unwrap())
                .collect();
            *out = Box::into_raw(Box::new(FxResult {
                result,
                json,
                staircase,
            }));
            FxStatus::Ok
        }
        Err(e) => {
            let status = match &e {
                IndexError::Validation(_) => FxStatus::Invalid,
                IndexError::Basis(BasisError::Budget(_)) => FxStatus::Budget,
                IndexError::Basis(_) => FxStatus::Invalid,
                IndexError::OracleDisagreement { .. } => FxStatus::OracleDisagreement,
            };
            set_error(e.to_string());
            status
        }
    }
}

/// The computed index, or -1 when it is infinite.
///
/// # Safety
/// `result` must come from `fx_compute_index`.
#[no_mangle]
pub unsafe extern "C" fn fx_result_index(result: *const FxResult) -> i64 {
    match (*result).result.index {
        IndexValue::Finite(v) => v as i64,
        IndexValue::Infinite => -1,
    }
}

/// Number of ideal generators that fed the standard-basis computation.
///
/// # Safety
/// `result` must come from `fx_compute_index`.
#[no_mangle]
pub unsafe extern "C" fn fx_result_generator_count(result: *const FxResult) -> u64 {
    (*result).result.generator_count as u64
}

/// Number of standard-basis elements.
///
/// # Safety
/// `result` must come from `fx_compute_index`.
#[no_mangle]
pub unsafe extern "C" fn fx_result_basis_size(result: *const FxResult) -> u64 {
    (*result).result.basis_size as u64
}

/// Number of staircase monomials (equals the index when it is finite).
///
/// # Safety
/// `result` must come from `fx_compute_index`.
#[no_mangle]
pub unsafe extern "C" fn fx_result_staircase_len(result: *const FxResult) -> u64 {
    (*result).staircase.len() as u64
}

/// The i-th staircase monomial as a string, or null when out of range. Owned
/// by the result handle.
///
/// # Safety
/// `result` must come from `fx_compute_index`.
#[no_mangle]
pub unsafe extern "C" fn fx_result_staircase_monomial(
    result: *const FxResult,
    i: u64,
) -> *const c_char {
    let staircase = &(*result).staircase;
    staircase
        .get(i as usize)
        .map(|c| c.as_ptr())
        .unwrap_or(ptr::null())
}

/// Full result as a JSON document (same schema as the CLI output, without
/// timings). Owned by the result handle.
///
/// # Safety
/// `result` must come from `fx_compute_index`.
#[no_mangle]
pub unsafe extern "C" fn fx_result_to_json(result: *const FxResult) -> *const c_char {
    (*result).json.as_ptr()
}

/// # Safety
/// `problem` must come from `fx_problem_parse_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fx_problem_free(problem: *mut FxProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// # Safety
/// `result` must come from `fx_compute_index` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fx_result_free(result: *mut FxResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}
