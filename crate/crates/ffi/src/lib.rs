//! C ABI for polytract.
//!
//! Objects cross the boundary as opaque handles (`PtSet`, `PtRep`) that the caller
//! releases with the matching `*_free`. Every fallible call returns a `PtStatus`; on
//! failure `pt_last_error` describes the most recent error on the calling thread.
//! Strings returned by the library must be released with `pt_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use polytract::hives::{lr_coefficient, PartitionTriple};
use polytract::mconvex::{exchange_witness, normalize_points};
use polytract::presentations::{foundation_unit_group, tutte_rank, MinusOne};
use polytract::representations::{verify, Mode, Representation, Verdict};
use polytract::{json, Error, MConvexSet};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtStatus {
    Ok = 0,
    NullPointer = 1,
    /// Input could not be parsed or has the wrong shape.
    Malformed = 2,
    /// Well-formed input outside the domain of the operation (not M-convex, guard exceeded, ...).
    Domain = 3,
    InvalidUtf8 = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtMode {
    Strong = 0,
    Weak = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtVerdict {
    Valid = 0,
    Violated = 1,
    /// 1 ≠ −1 in the tract and the set is not a matroid translate.
    IdempotencyObstruction = 2,
}

/// Opaque M-convex set.
pub struct PtSet(MConvexSet);

/// Opaque representation of an M-convex set over a tract.
pub struct PtRep(Representation);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: Error) -> PtStatus {
    let status = if e.is_malformed() {
        PtStatus::Malformed
    } else {
        PtStatus::Domain
    };
    set_error(e.to_string());
    status
}

fn guarded(f: impl FnOnce() -> PtStatus) -> PtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            PtStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PtStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(PtStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        PtStatus::InvalidUtf8
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> PtStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            PtStatus::Ok
        }
        Err(_) => {
            set_error("output contains a NUL byte");
            PtStatus::Panic
        }
    }
}

macro_rules! nonnull {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            set_error("null pointer argument");
            return PtStatus::NullPointer;
        }
    };
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return fail(e),
        }
    };
}

/// Message for the most recent failure on this thread, or NULL. Owned by the library;
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn pt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse `{"n":…,"r":…,"bases":[…]}` into a validated M-convex set.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pt_set_from_json(json: *const c_char, out: *mut *mut PtSet) -> PtStatus {
    nonnull!(out);
    guarded(|| {
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let v = tri!(json::parse(text));
        let set = tri!(json::set_from_json(&v));
        *out = Box::into_raw(Box::new(PtSet(set)));
        PtStatus::Ok
    })
}

/// # Safety
/// `set` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn pt_set_free(set: *mut PtSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pt_set_to_json(set: *const PtSet, out: *mut *mut c_char) -> PtStatus {
    nonnull!(set, out);
    guarded(|| write_string(out, json::to_string(&json::set_to_json(&(*set).0))))
}

/// Number of bases.
///
/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pt_set_len(set: *const PtSet) -> usize {
    if set.is_null() {
        return 0;
    }
    (*set).0.len()
}

/// Test the exchange axiom on a point list without building a set. `*m_convex` is 1 or 0.
///
/// # Safety
/// `json` must be a NUL-terminated string; `m_convex` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pt_check_points(json: *const c_char, m_convex: *mut i32) -> PtStatus {
    nonnull!(m_convex);
    guarded(|| {
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let raw = tri!(json::parse(text).and_then(|v| json::raw_points_from_json(&v)));
        let (_, pts) = tri!(normalize_points(raw.n, raw.r, &raw.points));
        *m_convex = i32::from(exchange_witness(&pts).is_none());
        PtStatus::Ok
    })
}

/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pt_set_dual(set: *const PtSet, out: *mut *mut PtSet) -> PtStatus {
    nonnull!(set, out);
    guarded(|| {
        *out = Box::into_raw(Box::new(PtSet((*set).0.dual())));
        PtStatus::Ok
    })
}

/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pt_set_canonical(set: *const PtSet, out: *mut *mut PtSet) -> PtStatus {
    nonnull!(set, out);
    guarded(|| {
        *out = Box::into_raw(Box::new(PtSet((*set).0.canonical_form())));
        PtStatus::Ok
    })
}

/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pt_set_tutte_rank(set: *const PtSet, out: *mut usize) -> PtStatus {
    nonnull!(set, out);
    guarded(|| {
        *out = tutte_rank(&(*set).0);
        PtStatus::Ok
    })
}

/// Free rank of the foundation's unit group; `*minus_one_trivial` is 1 when −1 = 1 there.
///
/// # Safety
/// `set` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn pt_set_foundation(
    set: *const PtSet,
    free_rank: *mut usize,
    minus_one_trivial: *mut i32,
) -> PtStatus {
    nonnull!(set, free_rank, minus_one_trivial);
    guarded(|| {
        let g = foundation_unit_group(&(*set).0);
        *free_rank = g.free_rank;
        *minus_one_trivial = i32::from(g.minus_one == MinusOne::Trivial);
        PtStatus::Ok
    })
}

/// Parse `{"tract":…,"set":{…},"values":[…]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pt_rep_from_json(json: *const c_char, out: *mut *mut PtRep) -> PtStatus {
    nonnull!(out);
    guarded(|| {
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let rho = tri!(json::parse(text).and_then(|v| json::representation_from_json(&v)));
        *out = Box::into_raw(Box::new(PtRep(rho)));
        PtStatus::Ok
    })
}

/// # Safety
/// `rep` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn pt_rep_free(rep: *mut PtRep) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// # Safety
/// `rep` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pt_rep_to_json(rep: *const PtRep, out: *mut *mut c_char) -> PtStatus {
    nonnull!(rep, out);
    guarded(|| {
        write_string(
            out,
            json::to_string(&json::representation_to_json(&(*rep).0)),
        )
    })
}

/// # Safety
/// `rep` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pt_rep_verify(
    rep: *const PtRep,
    mode: PtMode,
    out: *mut PtVerdict,
) -> PtStatus {
    nonnull!(rep, out);
    guarded(|| {
        let mode = match mode {
            PtMode::Strong => Mode::Strong,
            PtMode::Weak => Mode::Weak,
        };
        *out = match tri!(verify(&(*rep).0, mode)) {
            Verdict::Valid => PtVerdict::Valid,
            Verdict::Violated(_) => PtVerdict::Violated,
            Verdict::IdempotencyObstruction => PtVerdict::IdempotencyObstruction,
        };
        PtStatus::Ok
    })
}

/// Littlewood–Richardson coefficient c^ν_{λμ} as a count of integral hives of size `r`.
///
/// # Safety
/// Each array must hold the stated number of elements (it may be NULL when the length is 0).
#[no_mangle]
pub unsafe extern "C" fn pt_lr_coefficient(
    lambda: *const i64,
    lambda_len: usize,
    mu: *const i64,
    mu_len: usize,
    nu: *const i64,
    nu_len: usize,
    r: i64,
    out: *mut u64,
) -> PtStatus {
    nonnull!(out);
    let slice = |p: *const i64, n: usize| -> Option<Vec<i64>> {
        match (p.is_null(), n) {
            (_, 0) => Some(Vec::new()),
            (true, _) => None,
            (false, n) => Some(std::slice::from_raw_parts(p, n).to_vec()),
        }
    };
    let (Some(l), Some(m), Some(n)) = (
        slice(lambda, lambda_len),
        slice(mu, mu_len),
        slice(nu, nu_len),
    ) else {
        set_error("null partition with nonzero length");
        return PtStatus::NullPointer;
    };
    guarded(|| {
        let t = tri!(PartitionTriple::new(&l, &m, &n));
        *out = tri!(lr_coefficient(&t, r));
        PtStatus::Ok
    })
}
