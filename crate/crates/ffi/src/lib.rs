//! C ABI for `syzkit`.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `*_free` function. Every fallible call returns a [`SyzStatus`];
//! the message for the most recent failure on the calling thread is available
//! from [`syz_last_error_message`]. Strings returned through `char **` out
//! parameters are owned by the caller and released with [`syz_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use syzkit::minkowski::{enumerate_decompositions, DEFAULT_SEARCH_BUDGET};
use syzkit::mirror::{gw_invariant, syz_mirror, ChamberIndex, DiscClass};
use syzkit::transition::{default_basis_for, match_transition, BasisSimplex};
use syzkit::tropical::dual_fan_check;
use syzkit::{Error, LatticePolytope, MinkowskiDecomposition};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    UnsupportedDimension = 4,
    SearchBudgetExceeded = 5,
    InvalidChamber = 6,
    ShapeMismatch = 7,
    InvalidBasis = 8,
    VerificationFailed = 9,
    IndexOutOfRange = 10,
    /// Any other domain error; see the last error message.
    DomainError = 11,
    Panic = 12,
}

/// A lattice polytope in dimension 1 or 2.
pub struct SyzPolytope {
    inner: LatticePolytope,
}

/// A Minkowski decomposition into unimodular simplices.
pub struct SyzDecomposition {
    inner: MinkowskiDecomposition,
}

/// The result of `syz_decompose`.
pub struct SyzDecompositionList {
    items: Vec<MinkowskiDecomposition>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

struct Failure(SyzStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) => SyzStatus::ParseError,
            Error::UnsupportedDimension(_) => SyzStatus::UnsupportedDimension,
            Error::SearchBudgetExceeded(_) => SyzStatus::SearchBudgetExceeded,
            Error::InvalidChamber { .. } => SyzStatus::InvalidChamber,
            Error::ShapeMismatch => SyzStatus::ShapeMismatch,
            Error::InvalidBasis(_) => SyzStatus::InvalidBasis,
            Error::VerificationFailed(_) => SyzStatus::VerificationFailed,
            _ => SyzStatus::DomainError,
        };
        Failure(status, format!("{}: {e}", e.code()))
    }
}

fn parse_failure(e: serde_json::Error) -> Failure {
    Failure(SyzStatus::ParseError, format!("ParseError: {e}"))
}

/// Runs `f`, records any failure (including a panic) and maps it to a status.
fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> SyzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SyzStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            SyzStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(SyzStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(SyzStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(SyzStatus::NullPointer, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(SyzStatus::NullPointer, "null out pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_json<T: serde::Serialize + ?Sized>(out: *mut *mut c_char, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string(value).expect("library types serialize");
    let c = CString::new(text).expect("JSON has no interior nul");
    write_out(out, c.into_raw())
}

/// Message describing the last failure on this thread, or NULL if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn syz_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn syz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"dim":2,"vertices":[[0,0],...]}`; the vertices are re-hulled.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syz_polytope_from_json(json: *const c_char, out: *mut *mut SyzPolytope) -> SyzStatus {
    guard(|| {
        let inner: LatticePolytope = serde_json::from_str(read_str(json)?).map_err(parse_failure)?;
        write_out(out, Box::into_raw(Box::new(SyzPolytope { inner })))
    })
}

/// Canonical JSON of a polytope.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syz_polytope_to_json(p: *const SyzPolytope, out: *mut *mut c_char) -> SyzStatus {
    guard(|| write_json(out, &deref(p)?.inner))
}

/// # Safety
/// `p` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn syz_polytope_free(p: *mut SyzPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Enumerates every decomposition of `p`. A `budget` of 0 selects the default
/// node cap.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syz_decompose(p: *const SyzPolytope, budget: u64, out: *mut *mut SyzDecompositionList) -> SyzStatus {
    guard(|| {
        let budget = if budget == 0 { DEFAULT_SEARCH_BUDGET } else { budget };
        let items = enumerate_decompositions(&deref(p)?.inner, budget)?;
        write_out(out, Box::into_raw(Box::new(SyzDecompositionList { items })))
    })
}

/// Number of decompositions in the list; 0 for NULL.
///
/// # Safety
/// `list` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn syz_decomposition_list_len(list: *const SyzDecompositionList) -> usize {
    list.as_ref().map_or(0, |l| l.items.len())
}

/// Copies entry `index` into a new decomposition handle.
///
/// # Safety
/// `list` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syz_decomposition_list_get(
    list: *const SyzDecompositionList,
    index: usize,
    out: *mut *mut SyzDecomposition,
) -> SyzStatus {
    guard(|| {
        let list = deref(list)?;
        let inner = list
            .items
            .get(index)
            .cloned()
            .ok_or_else(|| Failure(SyzStatus::IndexOutOfRange, format!("index {index} but {} decompositions", list.items.len())))?;
        write_out(out, Box::into_raw(Box::new(SyzDecomposition { inner })))
    })
}

/// JSON array of all decompositions in the list.
///
/// # Safety
/// `list` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syz_decomposition_list_to_json(list: *const SyzDecompositionList, out: *mut *mut c_char) -> SyzStatus {
    guard(|| write_json(out, &deref(list)?.items))
}

/// # Safety
/// `list` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn syz_decomposition_list_free(list: *mut SyzDecompositionList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Parses and re-verifies a decomposition.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syz_decomposition_from_json(json: *const c_char, out: *mut *mut SyzDecomposition) -> SyzStatus {
    guard(|| {
        let inner: MinkowskiDecomposition = serde_json::from_str(read_str(json)?).map_err(parse_failure)?;
        write_out(out, Box::into_raw(Box::new(SyzDecomposition { inner })))
    })
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syz_decomposition_to_json(d: *const SyzDecomposition, out: *mut *mut c_char) -> SyzStatus {
    guard(|| write_json(out, &deref(d)?.inner))
}

/// # Safety
/// `d` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn syz_decomposition_free(d: *mut SyzDecomposition) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// `{"factored":[..],"expanded":..,"table":{"entries":[..]}}`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syz_mirror_json(d: *const SyzDecomposition, out: *mut *mut c_char) -> SyzStatus {
    guard(|| write_json(out, &syz_mirror(&deref(d)?.inner)))
}

/// Transition report for the basis `"(x,y),(x,y),(x,y)"`, or for the default
/// basis when `basis` is NULL.
///
/// # Safety
/// `d` must be a live handle; `basis` NULL or nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syz_transition_json(d: *const SyzDecomposition, basis: *const c_char, out: *mut *mut c_char) -> SyzStatus {
    guard(|| {
        let d = &deref(d)?.inner;
        let b = if basis.is_null() { default_basis_for(d)? } else { read_str(basis)?.parse::<BasisSimplex>()? };
        write_json(out, &match_transition(d, &b)?)
    })
}

/// Invariant (0 or 1) of the disc class given as
/// `{"sector":"D0","multiplicities":[[0],[1],[0]]}` in chamber `chamber`.
///
/// # Safety
/// `d` must be a live handle; `class_json` nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syz_gw_invariant(d: *const SyzDecomposition, chamber: i64, class_json: *const c_char, out: *mut u8) -> SyzStatus {
    guard(|| {
        let d = &deref(d)?.inner;
        let beta: DiscClass = serde_json::from_str(read_str(class_json)?).map_err(parse_failure)?;
        let l = ChamberIndex::new(chamber, d)?;
        write_out(out, gw_invariant(d, l, &beta)?)
    })
}

/// Whether the walls' tropical rays recover the fan of the polytope.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syz_dual_fan_check(d: *const SyzDecomposition, out: *mut bool) -> SyzStatus {
    guard(|| write_out(out, dual_fan_check(&deref(d)?.inner)?))
}
