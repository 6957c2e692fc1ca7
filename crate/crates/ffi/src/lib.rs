//! C ABI for the trunkan library.
//!
//! The functions here match `include/trunkan.h`, which is generated by
//! cbindgen at build time. Complexes and groupoids are opaque handles;
//! every fallible call returns a status code and leaves a message for
//! `trunkan_last_error` on failure. Strings returned by the library are
//! freed with `trunkan_string_free`.

#![allow(non_camel_case_types)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use trunkan::sset::{SimplexIx, TruncatedSSet};
use trunkan::{gpd, kan, serial, testkit, yoneda};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(clippy::upper_case_acronyms)]
pub enum trunkan_status {
    TRUNKAN_OK = 0,
    TRUNKAN_INVALID_ARGUMENT = 1,
    TRUNKAN_PARSE_ERROR = 2,
    TRUNKAN_AXIOM_FAILURE = 3,
    TRUNKAN_INTERNAL_ERROR = 4,
}

use trunkan_status::*;

/// Opaque handle to a validated truncated complex.
pub struct trunkan_complex {
    inner: Arc<TruncatedSSet>,
}

/// Opaque handle to a finite groupoid.
pub struct trunkan_groupoid {
    inner: Arc<gpd::FiniteGroupoid>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap();
    });
}

fn guard<F: FnOnce() -> trunkan_status>(f: F) -> trunkan_status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            TRUNKAN_INTERNAL_ERROR
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    CStr::from_ptr(ptr).to_str().ok()
}

/// Library version string; static storage, do not free.
#[no_mangle]
pub extern "C" fn trunkan_version() -> *const c_char {
    concat!("trunkan ", env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// The most recent error message on this thread; valid until the next
/// failing call. Do not free.
#[no_mangle]
pub extern "C" fn trunkan_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Free a string returned by the library.
///
/// # Safety
/// `s` must come from a trunkan call that transfers ownership, or be null.
#[no_mangle]
pub unsafe extern "C" fn trunkan_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------------------
// complexes

/// Parse and validate a complex from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trunkan_complex_parse(
    json: *const c_char,
    out: *mut *mut trunkan_complex,
) -> trunkan_status {
    guard(|| {
        let Some(text) = read_str(json) else {
            set_error("json argument is null or not UTF-8");
            return TRUNKAN_INVALID_ARGUMENT;
        };
        if out.is_null() {
            set_error("out argument is null");
            return TRUNKAN_INVALID_ARGUMENT;
        }
        let file: serial::ComplexFile = match serde_json::from_str(text) {
            Ok(f) => f,
            Err(e) => {
                set_error(&e.to_string());
                return TRUNKAN_PARSE_ERROR;
            }
        };
        match serial::complex_from_file(&file) {
            Ok(x) => {
                *out = Box::into_raw(Box::new(trunkan_complex { inner: Arc::new(x) }));
                TRUNKAN_OK
            }
            Err(e) => {
                set_error(&e.to_string());
                TRUNKAN_PARSE_ERROR
            }
        }
    })
}

/// # Safety
/// `handle` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn trunkan_complex_free(handle: *mut trunkan_complex) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Truncation level of the complex.
///
/// # Safety
/// `handle` must be a live complex handle.
#[no_mangle]
pub unsafe extern "C" fn trunkan_complex_level(handle: *const trunkan_complex) -> usize {
    (*handle).inner.n()
}

/// Number of simplices in one dimension (0 when out of range).
///
/// # Safety
/// `handle` must be a live complex handle.
#[no_mangle]
pub unsafe extern "C" fn trunkan_complex_card(
    handle: *const trunkan_complex,
    dim: usize,
) -> usize {
    let x = &(*handle).inner;
    if dim <= x.n() + 1 {
        x.card(dim)
    } else {
        0
    }
}

/// Canonical JSON of the complex; the caller frees the string.
///
/// # Safety
/// `handle` must be a live complex handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trunkan_complex_to_json(
    handle: *const trunkan_complex,
    out: *mut *mut c_char,
) -> trunkan_status {
    guard(|| {
        let json = serial::to_canonical_json(&serial::complex_to_file(&(*handle).inner));
        *out = CString::new(json).unwrap().into_raw();
        TRUNKAN_OK
    })
}

/// Check the n-groupoid axioms: OK when they hold, AXIOM_FAILURE (with the
/// first witness as the error message) when they do not.
///
/// # Safety
/// `handle` must be a live complex handle.
#[no_mangle]
pub unsafe extern "C" fn trunkan_check_groupoid(handle: *const trunkan_complex) -> trunkan_status {
    guard(|| {
        let report = kan::check_n_groupoid(&(*handle).inner);
        if report.ok() {
            TRUNKAN_OK
        } else {
            let f = &report.failures[0];
            set_error(&format!(
                "{} at m={}, i={}: {:?}",
                f.axiom, f.m, f.i, f.witness
            ));
            TRUNKAN_AXIOM_FAILURE
        }
    })
}

/// Check the n-category axioms (inner indices only).
///
/// # Safety
/// `handle` must be a live complex handle.
#[no_mangle]
pub unsafe extern "C" fn trunkan_check_category(handle: *const trunkan_complex) -> trunkan_status {
    guard(|| {
        let report = kan::check_n_category(&(*handle).inner);
        if report.ok() {
            TRUNKAN_OK
        } else {
            let f = &report.failures[0];
            set_error(&format!(
                "{} at m={}, i={}: {:?}",
                f.axiom, f.m, f.i, f.witness
            ));
            TRUNKAN_AXIOM_FAILURE
        }
    })
}

/// Number of homotopy classes at a base object (by identifier; pass null
/// for the first object).
///
/// # Safety
/// `handle` must be a live complex handle; `count` a valid pointer; `base`
/// null or NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn trunkan_pi_count(
    handle: *const trunkan_complex,
    base: *const c_char,
    k: usize,
    count: *mut usize,
) -> trunkan_status {
    guard(|| {
        let x = &(*handle).inner;
        let a: SimplexIx = if base.is_null() {
            0
        } else {
            let Some(id) = read_str(base) else {
                set_error("base id is not UTF-8");
                return TRUNKAN_INVALID_ARGUMENT;
            };
            match x.lookup(0, id) {
                Some(a) => a,
                None => {
                    set_error("no such object");
                    return TRUNKAN_INVALID_ARGUMENT;
                }
            }
        };
        match kan::pi_k(x, a, k) {
            Ok(table) => {
                *count = table.count();
                TRUNKAN_OK
            }
            Err(e) => {
                set_error(&e.to_string());
                TRUNKAN_INVALID_ARGUMENT
            }
        }
    })
}

/// Edge and 2-cell recovery round-trips over a 2-groupoid; each counter
/// receives `ok` and `total` tallies.
///
/// # Safety
/// `handle` must be a live complex handle; the out-parameters valid.
#[no_mangle]
pub unsafe extern "C" fn trunkan_yoneda_roundtrip(
    handle: *const trunkan_complex,
    edges_ok: *mut usize,
    edges_total: *mut usize,
    cells_ok: *mut usize,
    cells_total: *mut usize,
) -> trunkan_status {
    guard(|| {
        let x = (*handle).inner.clone();
        let ctx = match yoneda::YonedaContext::new(x.clone()) {
            Ok(c) => c,
            Err(e) => {
                set_error(&e.to_string());
                return TRUNKAN_INVALID_ARGUMENT;
            }
        };
        let mut eok = 0usize;
        for f in 0..x.card(1) as SimplexIx {
            let recovered = yoneda::omega_morphism(&ctx, f)
                .and_then(|kf| yoneda::recover_morphism(&ctx, &kf));
            if matches!(recovered, Ok(rec) if rec.edge == f) {
                eok += 1;
            }
        }
        let mut cok = 0usize;
        for gamma in 0..x.card(2) as SimplexIx {
            let recovered = yoneda::omega_2cell(&ctx, gamma)
                .and_then(|alpha| yoneda::recover_2cell(&ctx, &alpha));
            if matches!(recovered, Ok(back) if back == gamma) {
                cok += 1;
            }
        }
        *edges_ok = eok;
        *edges_total = x.card(1);
        *cells_ok = cok;
        *cells_total = x.card(2);
        TRUNKAN_OK
    })
}

// ---------------------------------------------------------------------------
// generators

/// The 1-truncated nerve of the cyclic group of the given order.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trunkan_gen_nerve_cyclic(
    order: usize,
    out: *mut *mut trunkan_complex,
) -> trunkan_status {
    guard(|| {
        if order == 0 || order > 12 {
            set_error("order must be between 1 and 12");
            return TRUNKAN_INVALID_ARGUMENT;
        }
        let x = testkit::nerve_group(&testkit::cyclic(order)).expect("cyclic groups are groups");
        *out = Box::into_raw(Box::new(trunkan_complex { inner: Arc::new(x) }));
        TRUNKAN_OK
    })
}

/// The 2-truncated nerve of the crossed module `Z/order -> 1`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trunkan_gen_crossed_module(
    order: usize,
    out: *mut *mut trunkan_complex,
) -> trunkan_status {
    guard(|| {
        if order == 0 || order > 6 {
            set_error("order must be between 1 and 6");
            return TRUNKAN_INVALID_ARGUMENT;
        }
        let cm = testkit::cm_from_h(testkit::cyclic(order));
        let x = testkit::nerve_crossed_module(&cm).expect("valid crossed module");
        *out = Box::into_raw(Box::new(trunkan_complex { inner: Arc::new(x) }));
        TRUNKAN_OK
    })
}

// ---------------------------------------------------------------------------
// groupoids

/// Parse and validate a groupoid from its JSON form.
///
/// # Safety
/// `json` must be NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn trunkan_groupoid_parse(
    json: *const c_char,
    out: *mut *mut trunkan_groupoid,
) -> trunkan_status {
    guard(|| {
        let Some(text) = read_str(json) else {
            set_error("json argument is null or not UTF-8");
            return TRUNKAN_INVALID_ARGUMENT;
        };
        let file: serial::GroupoidFile = match serde_json::from_str(text) {
            Ok(f) => f,
            Err(e) => {
                set_error(&e.to_string());
                return TRUNKAN_PARSE_ERROR;
            }
        };
        match serial::groupoid_from_file(&file) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(trunkan_groupoid { inner: Arc::new(g) }));
                TRUNKAN_OK
            }
            Err(e) => {
                set_error(&e.to_string());
                TRUNKAN_PARSE_ERROR
            }
        }
    })
}

/// # Safety
/// `handle` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn trunkan_groupoid_free(handle: *mut trunkan_groupoid) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Object count.
///
/// # Safety
/// `handle` must be a live groupoid handle.
#[no_mangle]
pub unsafe extern "C" fn trunkan_groupoid_objects(handle: *const trunkan_groupoid) -> usize {
    (*handle).inner.n_objects()
}

/// Morphism count.
///
/// # Safety
/// `handle` must be a live groupoid handle.
#[no_mangle]
pub unsafe extern "C" fn trunkan_groupoid_morphisms(handle: *const trunkan_groupoid) -> usize {
    (*handle).inner.n_morphisms()
}

/// The 1-truncated nerve of a groupoid, as a complex handle.
///
/// # Safety
/// `handle` must be a live groupoid handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn trunkan_groupoid_nerve(
    handle: *const trunkan_groupoid,
    out: *mut *mut trunkan_complex,
) -> trunkan_status {
    guard(|| {
        let x = gpd::to_1groupoid(&(*handle).inner);
        *out = Box::into_raw(Box::new(trunkan_complex { inner: Arc::new(x) }));
        TRUNKAN_OK
    })
}
