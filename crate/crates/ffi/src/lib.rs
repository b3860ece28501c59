//! C ABI for the rider-types engines.
//!
//! Every function returns an [`RtStatus`] and writes results through out
//! pointers. On failure a message is available from
//! [`rt_last_error_message`] on the same thread. Move sets and censuses are
//! opaque handles released with their `_free` functions; strings returned by
//! the library are released with [`rt_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rider_types::boards::Board;
use rider_types::census::{count_nonattacking, geometric_census, Census};
use rider_types::finitefield::types_ff;
use rider_types::formulas::{known_types, t3_closed_form, Annotation};
use rider_types::{Error, MoveSet};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    NotFound = 5,
    Overflow = 6,
    EngineError = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RtAnnotation {
    Exact = 0,
    Empirical = 1,
    QueenOnly = 2,
}

/// Opaque move set.
pub struct RtMoveSet(MoveSet);

/// Opaque census of unlabelled types.
pub struct RtCensus(Census);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: RtStatus, msg: impl Into<String>) -> RtStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> RtStatus {
    let status = match e {
        Error::ZeroMove
        | Error::EmptyMoveSet
        | Error::DuplicateSlope { .. }
        | Error::Parse(_)
        | Error::InvalidBoard(_) => RtStatus::ParseError,
        Error::InvalidArgument(_) | Error::Unsupported(_) => RtStatus::InvalidArgument,
        _ => RtStatus::EngineError,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> RtStatus) -> RtStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(RtStatus::Panic, msg)
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, RtStatus> {
    if s.is_null() {
        return Err(fail(RtStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(RtStatus::InvalidUtf8, "string is not UTF-8"))
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(RtStatus::NullPointer, concat!("null pointer: ", stringify!($p)));
        })+
    };
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn rt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses `c,d;c,d;…` or a piece name into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rt_moveset_parse(text: *const c_char, out: *mut *mut RtMoveSet) -> RtStatus {
    guard(|| {
        non_null!(out);
        let s = match read_str(text) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match MoveSet::parse(s) {
            Ok(ms) => {
                *out = Box::into_raw(Box::new(RtMoveSet(ms)));
                RtStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `ms` must come from [`rt_moveset_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rt_moveset_free(ms: *mut RtMoveSet) {
    if !ms.is_null() {
        drop(Box::from_raw(ms));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rt_moveset_r(ms: *const RtMoveSet, out: *mut usize) -> RtStatus {
    guard(|| {
        non_null!(ms, out);
        *out = (*ms).0.r();
        RtStatus::Ok
    })
}

/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rt_t3_closed_form(r: u64, out: *mut u64) -> RtStatus {
    guard(|| {
        non_null!(out);
        if r > 1 << 20 {
            return fail(RtStatus::Overflow, "r too large");
        }
        match t3_closed_form(r) {
            Ok(v) => {
                *out = v;
                RtStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Table entry for `(q, r)`; `RT_STATUS_NOT_FOUND` for unknown cells.
///
/// # Safety
/// Out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rt_known_types(
    q: usize,
    r: usize,
    value: *mut u64,
    annotation: *mut RtAnnotation,
) -> RtStatus {
    guard(|| {
        non_null!(value, annotation);
        match known_types(q, r) {
            Some(k) => {
                *value = k.value;
                *annotation = match k.annotation {
                    Annotation::Exact => RtAnnotation::Exact,
                    Annotation::Empirical => RtAnnotation::Empirical,
                    Annotation::QueenOnly => RtAnnotation::QueenOnly,
                };
                RtStatus::Ok
            }
            None => fail(RtStatus::NotFound, format!("no known value for q={q}, r={r}")),
        }
    })
}

/// Exact labelled and unlabelled type counts by finite-field counting.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rt_types_ff(
    ms: *const RtMoveSet,
    q: usize,
    labelled: *mut u64,
    unlabelled: *mut u64,
) -> RtStatus {
    guard(|| {
        non_null!(ms, labelled, unlabelled);
        match types_ff(&(*ms).0, q) {
            Ok((l, u)) => match (u64::try_from(l), u64::try_from(u)) {
                (Ok(l), Ok(u)) => {
                    *labelled = l;
                    *unlabelled = u;
                    RtStatus::Ok
                }
                _ => fail(RtStatus::Overflow, "count exceeds 64 bits"),
            },
            Err(e) => from_error(e),
        }
    })
}

/// Unordered nonattacking placements of `q` pieces on the order-`n` board
/// (`square`, `triangle` or `poly:…`).
///
/// # Safety
/// Pointers must be valid; `board` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn rt_count_nonattacking(
    ms: *const RtMoveSet,
    board: *const c_char,
    n: u64,
    q: usize,
    out: *mut u64,
) -> RtStatus {
    guard(|| {
        non_null!(ms, out);
        let b = match read_str(board).map(Board::parse) {
            Ok(Ok(b)) => b,
            Ok(Err(e)) => return from_error(e),
            Err(st) => return st,
        };
        match count_nonattacking(&(*ms).0, &b, n, q) {
            Ok(c) => match u64::try_from(c.unlabelled) {
                Ok(v) => {
                    *out = v;
                    RtStatus::Ok
                }
                Err(_) => fail(RtStatus::Overflow, "count exceeds 64 bits"),
            },
            Err(e) => from_error(e),
        }
    })
}

/// Runs the geometric engine and returns a census handle.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rt_census_geometric(
    ms: *const RtMoveSet,
    q: usize,
    refinement: usize,
    out: *mut *mut RtCensus,
) -> RtStatus {
    guard(|| {
        non_null!(ms, out);
        match geometric_census(&(*ms).0, q, refinement) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(RtCensus(c)));
                RtStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rt_census_size(c: *const RtCensus, size: *mut usize, exact: *mut bool) -> RtStatus {
    guard(|| {
        non_null!(c, size, exact);
        *size = (*c).0.size;
        *exact = (*c).0.exact;
        RtStatus::Ok
    })
}

/// Serializes a census to JSON. Release the string with [`rt_string_free`].
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rt_census_to_json(c: *const RtCensus, out: *mut *mut c_char) -> RtStatus {
    guard(|| {
        non_null!(c, out);
        match serde_json::to_string(&(*c).0) {
            Ok(s) => {
                *out = CString::new(s).expect("JSON has no NUL").into_raw();
                RtStatus::Ok
            }
            Err(e) => fail(RtStatus::EngineError, e.to_string()),
        }
    })
}

/// # Safety
/// `c` must come from [`rt_census_geometric`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rt_census_free(c: *mut RtCensus) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
