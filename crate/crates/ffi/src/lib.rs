//! C interface to `oreindex`.
//!
//! Polynomials are passed as opaque `OrePoly` handles created by
//! [`ore_poly_parse`] and released with [`ore_poly_free`]. Every fallible
//! function returns an [`OreStatus`]; on failure a message is available from
//! [`ore_last_error`] on the same thread. Strings returned through `out`
//! parameters are owned by the caller and released with [`ore_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use num_bigint::BigInt;
use oreindex::ore::{index_divisor_verdict, ore_analysis, Divides};
use oreindex::parse::{parse_int, parse_poly};
use oreindex::quintic::quintic_verdict;
use oreindex::zx::{IntPoly, Prime};
use oreindex::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OreStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotPrime = 4,
    InvalidPolynomial = 5,
    Precondition = 6,
    Internal = 7,
}

/// Outcome of the common index divisor test.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OreDivides {
    No = 0,
    Yes = 1,
    Undetermined = 2,
}

/// An integer polynomial.
pub struct OrePoly(IntPoly);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: OreStatus, msg: &str) -> OreStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> OreStatus {
    match e {
        Error::Parse { .. } => OreStatus::Parse,
        Error::NotPrime(_) => OreStatus::NotPrime,
        Error::NotMonic(_)
        | Error::ZeroPolynomial
        | Error::ConstantPolynomial
        | Error::Inseparable(_)
        | Error::PhiTooLarge { .. }
        | Error::PhiReducible { .. } => OreStatus::InvalidPolynomial,
        Error::Precondition(_) | Error::NotARoot { .. } | Error::ZeroDegree => {
            OreStatus::Precondition
        }
        _ => OreStatus::Internal,
    }
}

fn from_error(e: Error) -> OreStatus {
    fail(status_of(&e), &e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, OreStatus> {
    if s.is_null() {
        return Err(fail(OreStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(OreStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn read_poly<'a>(p: *const OrePoly) -> Result<&'a IntPoly, OreStatus> {
    p.as_ref()
        .map(|p| &p.0)
        .ok_or_else(|| fail(OreStatus::NullPointer, "null polynomial handle"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> OreStatus {
    *out = CString::new(s).unwrap().into_raw();
    OreStatus::Ok
}

fn prime(p: u64) -> Result<Prime, OreStatus> {
    Prime::new(p).map_err(from_error)
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! check_out {
    ($out:expr) => {
        if $out.is_null() {
            return fail(OreStatus::NullPointer, "null output pointer");
        }
    };
}

/// Message for the last failure on this thread, empty if there was none.
/// The pointer stays valid until the next failure on the same thread.
#[no_mangle]
pub extern "C" fn ore_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parse a polynomial such as `"x^5 + 3x^2 + 144"`.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ore_poly_parse(src: *const c_char, out: *mut *mut OrePoly) -> OreStatus {
    check_out!(out);
    *out = ptr::null_mut();
    let s = try_status!(read_str(src));
    let f = try_status!(parse_poly(s).map_err(from_error));
    *out = Box::into_raw(Box::new(OrePoly(f)));
    OreStatus::Ok
}

/// `x^5 + a x^2 + b` from decimal strings.
///
/// # Safety
/// `a` and `b` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ore_poly_quintic(
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut OrePoly,
) -> OreStatus {
    check_out!(out);
    *out = ptr::null_mut();
    let a: BigInt = try_status!(parse_int(try_status!(read_str(a))).map_err(from_error));
    let b: BigInt = try_status!(parse_int(try_status!(read_str(b))).map_err(from_error));
    *out = Box::into_raw(Box::new(OrePoly(IntPoly::quintic_trinomial(&a, &b))));
    OreStatus::Ok
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ore_poly_free(p: *mut OrePoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Degree of the polynomial, or -1 for zero.
///
/// # Safety
/// `p` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ore_poly_degree(p: *const OrePoly) -> i64 {
    match p.as_ref().and_then(|p| p.0.degree()) {
        Some(d) => d as i64,
        None => -1,
    }
}

/// Decide whether `p` divides the common index of the field of `f`.
/// `json_out` may be null; otherwise it receives the full verdict as JSON.
///
/// # Safety
/// `f` must be a live handle, `divides` a valid pointer and `json_out` null
/// or valid.
#[no_mangle]
pub unsafe extern "C" fn ore_index_divisor(
    f: *const OrePoly,
    p: u64,
    divides: *mut OreDivides,
    json_out: *mut *mut c_char,
) -> OreStatus {
    check_out!(divides);
    let f = try_status!(read_poly(f));
    let p = try_status!(prime(p));
    let v = try_status!(index_divisor_verdict(f, p).map_err(from_error));
    *divides = match v.divides {
        Divides::Yes => OreDivides::Yes,
        Divides::No => OreDivides::No,
        Divides::Undetermined => OreDivides::Undetermined,
    };
    if !json_out.is_null() {
        write_string(json_out, serde_json::to_string(&v).unwrap());
    }
    OreStatus::Ok
}

/// Ore's theorem for every factor of `f mod p`, as JSON.
///
/// # Safety
/// `f` must be a live handle and `json_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ore_analysis_json(
    f: *const OrePoly,
    p: u64,
    json_out: *mut *mut c_char,
) -> OreStatus {
    check_out!(json_out);
    let f = try_status!(read_poly(f));
    let p = try_status!(prime(p));
    let r = try_status!(ore_analysis(f, p).map_err(from_error));
    write_string(json_out, serde_json::to_string(&r).unwrap())
}

/// The `phi`-Newton polygon of `f` at `p` as JSON, with its φ-index in
/// `index` when that is non-null.
///
/// # Safety
/// `f` and `phi` must be live handles, `json_out` a valid pointer and
/// `index` null or valid.
#[no_mangle]
pub unsafe extern "C" fn ore_polygon_json(
    f: *const OrePoly,
    phi: *const OrePoly,
    p: u64,
    index: *mut u64,
    json_out: *mut *mut c_char,
) -> OreStatus {
    check_out!(json_out);
    let f = try_status!(read_poly(f));
    let phi = try_status!(read_poly(phi));
    let p = try_status!(prime(p));
    let exp = try_status!(oreindex::polygon::phi_expand(f, phi, p).map_err(from_error));
    let poly = exp.newton_polygon();
    if !index.is_null() {
        *index = phi.degree().unwrap_or(0) as u64 * poly.lattice_count();
    }
    write_string(json_out, serde_json::to_string(&poly).unwrap())
}

/// Closed-form and engine verdicts for `x^5 + a x^2 + b` as JSON.
///
/// # Safety
/// `a` and `b` must be NUL-terminated strings and `json_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ore_quintic_json(
    a: *const c_char,
    b: *const c_char,
    json_out: *mut *mut c_char,
) -> OreStatus {
    check_out!(json_out);
    let a = try_status!(parse_int(try_status!(read_str(a))).map_err(from_error));
    let b = try_status!(parse_int(try_status!(read_str(b))).map_err(from_error));
    let v = try_status!(quintic_verdict(&a, &b).map_err(from_error));
    write_string(json_out, serde_json::to_string(&v).unwrap())
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ore_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
