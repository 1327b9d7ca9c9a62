use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use oreindex_ffi::*;

fn parse(src: &str) -> *mut OrePoly {
    let s = CString::new(src).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { ore_poly_parse(s.as_ptr(), &mut out) },
        OreStatus::Ok
    );
    out
}

fn take(s: *mut std::ffi::c_char) -> String {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { ore_string_free(s) };
    text
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ore_last_error()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn verdict_through_handles() {
    let f = parse("x^5 + 3x^2 + 144");
    assert_eq!(unsafe { ore_poly_degree(f) }, 5);
    let mut d = OreDivides::No;
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { ore_index_divisor(f, 2, &mut d, &mut json) },
        OreStatus::Ok
    );
    assert_eq!(d, OreDivides::Yes);
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(v["schema"], "oreindex.index-divisor/1");
    assert_eq!(v["witness_f"], 2);

    let mut d = OreDivides::Yes;
    assert_eq!(
        unsafe { ore_index_divisor(f, 3, &mut d, ptr::null_mut()) },
        OreStatus::Ok
    );
    assert_eq!(d, OreDivides::No);
    unsafe { ore_poly_free(f) };
}

#[test]
fn polygon_and_ore_json() {
    let f = parse("x^5+7x^2+21");
    let phi = parse("x+7");
    let mut index = 0;
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { ore_polygon_json(f, phi, 3, &mut index, &mut json) },
        OreStatus::Ok
    );
    assert_eq!(index, 3);
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(v["vertices"][1], serde_json::json!([2, 1]));

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { ore_analysis_json(f, 3, &mut json) }, OreStatus::Ok);
    assert!(take(json).contains("\"index_lower_bound\""));
    unsafe {
        ore_poly_free(f);
        ore_poly_free(phi);
    }
}

#[test]
fn quintic_json() {
    let (a, b) = (CString::new("0").unwrap(), CString::new("-53").unwrap());
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { ore_quintic_json(a.as_ptr(), b.as_ptr(), &mut json) },
        OreStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(v["irreducible"], true);

    let mut f = ptr::null_mut();
    assert_eq!(
        unsafe { ore_poly_quintic(a.as_ptr(), b.as_ptr(), &mut f) },
        OreStatus::Ok
    );
    assert_eq!(unsafe { ore_poly_degree(f) }, 5);
    unsafe { ore_poly_free(f) };
}

#[test]
fn error_codes() {
    let bad = CString::new("x^").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { ore_poly_parse(bad.as_ptr(), &mut out) },
        OreStatus::Parse
    );
    assert!(out.is_null());
    assert!(last_error().contains("byte 2"));

    assert_eq!(
        unsafe { ore_poly_parse(ptr::null(), &mut out) },
        OreStatus::NullPointer
    );

    let f = parse("x^2 + 1");
    let mut d = OreDivides::No;
    assert_eq!(
        unsafe { ore_index_divisor(f, 4, &mut d, ptr::null_mut()) },
        OreStatus::NotPrime
    );
    assert!(last_error().contains("4 is not a prime"));
    assert_eq!(
        unsafe { ore_index_divisor(ptr::null(), 2, &mut d, ptr::null_mut()) },
        OreStatus::NullPointer
    );
    unsafe { ore_poly_free(f) };

    let g = parse("2x^2 + 1");
    assert_eq!(
        unsafe { ore_index_divisor(g, 3, &mut d, ptr::null_mut()) },
        OreStatus::InvalidPolynomial
    );
    unsafe {
        ore_poly_free(g);
        ore_poly_free(ptr::null_mut());
        ore_string_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/oreindex.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "ore_poly_parse",
        "ore_index_divisor",
        "ore_polygon_json",
        "ore_string_free",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    for (cc, lang) in [("cc", "c"), ("c++", "c++")] {
        let status = Command::new(cc)
            .args(["-fsyntax-only", "-x", lang, header])
            .status();
        match status {
            Ok(s) => assert!(s.success(), "{cc} rejected the header"),
            Err(_) => eprintln!("{cc} not available, skipping"),
        }
    }
}
