//! C ABI over the `signperm` library.
//!
//! Pattern sets live behind an opaque [`SignpermPatternSet`] handle. Every
//! fallible call returns a [`SignpermStatus`] and writes its result through
//! an out-pointer. Counts are returned as NUL-terminated decimal strings
//! because they overflow 64 bits quickly; free them with
//! [`signperm_string_free`]. After a non-OK status,
//! [`signperm_last_error`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use signperm::enumerate::{count_avoiders_with, SearchConfig, DEFAULT_NODE_LIMIT};
use signperm::formulas::d_count;
use signperm::registry::{count_by_method, Method};
use signperm::wilf::wc;
use signperm::{canonical_form, symmetry_orbit, Error, PatternSet};

/// Result codes shared by every function in this interface.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignpermStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Validation = 3,
    Parse = 4,
    Capacity = 5,
    Domain = 6,
    Arithmetic = 7,
    Panic = 8,
}

/// Opaque handle to a validated pattern set.
pub struct SignpermPatternSet {
    inner: PatternSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> SignpermStatus {
    match err {
        Error::Validation(_) => SignpermStatus::Validation,
        Error::Parse { .. } => SignpermStatus::Parse,
        Error::Capacity { .. } => SignpermStatus::Capacity,
        Error::Domain(_) => SignpermStatus::Domain,
        Error::SingularDivision | Error::Integrality { .. } => SignpermStatus::Arithmetic,
    }
}

enum Failure {
    Status(SignpermStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `body`, converting errors and panics into a status and recording the message.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SignpermStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SignpermStatus::Ok,
        Ok(Err(Failure::Status(s, msg))) => {
            set_last_error(msg);
            s
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic".into());
            SignpermStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(SignpermStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::Status(SignpermStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn handle<'a>(p: *const SignpermPatternSet) -> Result<&'a PatternSet, Failure> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null("pattern set"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).expect("no interior NUL").into_raw();
    Ok(())
}

fn boxed(set: PatternSet) -> *mut SignpermPatternSet {
    Box::into_raw(Box::new(SignpermPatternSet { inner: set }))
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn signperm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn signperm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a pattern-set literal such as `"1^1 2^2; 2^1 1^3"` over `r` signs.
///
/// # Safety
/// `literal` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn signperm_pattern_set_parse(
    literal: *const c_char,
    r: u32,
    out: *mut *mut SignpermPatternSet,
) -> SignpermStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(literal, "literal")?;
        *out = boxed(PatternSet::parse(text, r)?);
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `set` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn signperm_pattern_set_free(set: *mut SignpermPatternSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Number of patterns in the set, or 0 for NULL.
///
/// # Safety
/// `set` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn signperm_pattern_set_len(set: *const SignpermPatternSet) -> usize {
    set.as_ref().map_or(0, |h| h.inner.len())
}

/// Sign bound r of the set, or 0 for NULL.
///
/// # Safety
/// `set` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn signperm_pattern_set_sign_bound(set: *const SignpermPatternSet) -> u32 {
    set.as_ref().map_or(0, |h| h.inner.sign_bound())
}

/// Writes the set in literal syntax to `*out`.
///
/// # Safety
/// `set` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn signperm_pattern_set_to_string(
    set: *const SignpermPatternSet,
    out: *mut *mut c_char,
) -> SignpermStatus {
    guard(|| write_string(out, handle(set)?.to_string()))
}

/// Allocates a new handle holding the least member of the set's symmetry orbit.
///
/// # Safety
/// `set` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn signperm_pattern_set_canonical(
    set: *const SignpermPatternSet,
    out: *mut *mut SignpermPatternSet,
) -> SignpermStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = boxed(canonical_form(handle(set)?)?);
        Ok(())
    })
}

/// Size of the set's symmetry orbit.
///
/// # Safety
/// `set` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn signperm_pattern_set_orbit_size(
    set: *const SignpermPatternSet,
    out: *mut usize,
) -> SignpermStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = symmetry_orbit(handle(set)?)?.len();
        Ok(())
    })
}

/// Exhaustive count of length-`n` signed permutations over the set's sign
/// bound that avoid every pattern. `node_limit` 0 selects the default guard.
///
/// # Safety
/// `set` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn signperm_count_avoiders(
    set: *const SignpermPatternSet,
    n: usize,
    node_limit: u64,
    out: *mut *mut c_char,
) -> SignpermStatus {
    guard(|| {
        let set = handle(set)?;
        let limit = if node_limit == 0 { DEFAULT_NODE_LIMIT } else { node_limit };
        let config = SearchConfig::default().with_node_limit(limit);
        let count = count_avoiders_with(n, set.sign_bound(), set, &config)?;
        write_string(out, count.to_string())
    })
}

/// Count for length `n` by `method` (`"brute"`, `"formula"`, `"recurrence"`
/// or `"series"`). Non-brute methods need a set from a registered family.
///
/// # Safety
/// `set` must be a live handle, `method` a NUL-terminated string and `out`
/// a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn signperm_count_by_method(
    set: *const SignpermPatternSet,
    n: usize,
    method: *const c_char,
    out: *mut *mut c_char,
) -> SignpermStatus {
    guard(|| {
        let set = handle(set)?;
        let method: Method = read_str(method, "method")?.parse()?;
        let counts = count_by_method(set, set.sign_bound(), n, method, &SearchConfig::default())?;
        write_string(out, counts.counts[n].to_string())
    })
}

/// Number of length-`n` signed permutations over `r` signs avoiding any one
/// 2-letter signed pattern.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn signperm_d_count(n: usize, r: u32, out: *mut *mut c_char) -> SignpermStatus {
    guard(|| {
        if r == 0 {
            return Err(Failure::Lib(Error::Domain("r must be at least 1".into())));
        }
        write_string(out, d_count(n, r).to_string())
    })
}

/// Number of Wilf classes of pairs of 2-letter patterns over `r` signs,
/// separated by counts through length `depth`.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn signperm_wilf_class_count(r: u32, depth: usize, out: *mut usize) -> SignpermStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = wc(r, depth)?;
        Ok(())
    })
}
