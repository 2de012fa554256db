//! Exercises the C ABI through the same raw-pointer surface a C caller
//! would use.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use companion_smith_capi::*;

fn take_string(raw: *mut c_char) -> String {
    assert!(!raw.is_null());
    let text = unsafe { CStr::from_ptr(raw) }.to_str().unwrap().to_string();
    unsafe { cs_string_free(raw) };
    text
}

fn parse_poly(text: &str) -> *mut CsPolynomial {
    let text = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { cs_polynomial_parse(text.as_ptr(), &mut out) };
    assert_eq!(status, CsStatus::Ok);
    out
}

#[test]
fn polynomial_round_trip() {
    let p = parse_poly("-1,0,0,1");
    assert_eq!(take_string(unsafe { cs_polynomial_format(p) }), "t^3 - 1");
    unsafe { cs_polynomial_free(p) };

    let text = CString::new("t^").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { cs_polynomial_parse(text.as_ptr(), &mut out) },
        CsStatus::ParseError
    );
    assert_eq!(
        unsafe { cs_polynomial_parse(ptr::null(), &mut out) },
        CsStatus::NullArgument
    );
}

#[test]
fn companion_ring_matrix() {
    let f = parse_poly("t + 1");
    let g = parse_poly("t^3 - 1");
    let mut matrix = ptr::null_mut();
    assert_eq!(
        unsafe { cs_polynomial_of_companion(f, g, &mut matrix) },
        CsStatus::Ok
    );
    assert_eq!(unsafe { cs_matrix_rows(matrix) }, 3);
    assert_eq!(unsafe { cs_matrix_cols(matrix) }, 3);
    assert_eq!(take_string(unsafe { cs_matrix_entry(matrix, 0, 0) }), "1");
    assert_eq!(take_string(unsafe { cs_matrix_entry(matrix, 0, 1) }), "0");
    assert!(unsafe { cs_matrix_entry(matrix, 3, 0) }.is_null());
    assert_eq!(
        take_string(unsafe { cs_matrix_format(matrix) }),
        "3 3\n1 0 1\n1 1 0\n0 1 1"
    );

    let mut det = ptr::null_mut();
    assert_eq!(
        unsafe { cs_matrix_determinant(matrix, &mut det) },
        CsStatus::Ok
    );
    assert_eq!(take_string(det), "2");

    unsafe {
        cs_matrix_free(matrix);
        cs_polynomial_free(f);
        cs_polynomial_free(g);
    }

    let non_monic = parse_poly("2t + 1");
    let t = parse_poly("t");
    let mut matrix = ptr::null_mut();
    assert_eq!(
        unsafe { cs_polynomial_of_companion(t, non_monic, &mut matrix) },
        CsStatus::NonMonicDivisor
    );
    unsafe {
        cs_polynomial_free(non_monic);
        cs_polynomial_free(t);
    }
}

#[test]
fn smith_form_with_transforms() {
    let text = CString::new("2 2\n4 0\n0 6\n").unwrap();
    let mut matrix = ptr::null_mut();
    assert_eq!(
        unsafe { cs_matrix_parse(text.as_ptr(), &mut matrix) },
        CsStatus::Ok
    );

    let mut smith = ptr::null_mut();
    assert_eq!(
        unsafe { cs_smith_form(matrix, true, &mut smith) },
        CsStatus::Ok
    );
    assert_eq!(unsafe { cs_smith_factor_count(smith) }, 2);
    assert_eq!(unsafe { cs_smith_rank(smith) }, 2);
    assert_eq!(take_string(unsafe { cs_smith_factor(smith, 0) }), "2");
    assert_eq!(take_string(unsafe { cs_smith_factor(smith, 1) }), "12");
    assert!(unsafe { cs_smith_factor(smith, 2) }.is_null());

    let mut left = ptr::null_mut();
    assert_eq!(
        unsafe { cs_smith_left_transform(smith, &mut left) },
        CsStatus::Ok
    );
    assert_eq!(unsafe { cs_matrix_rows(left) }, 2);
    unsafe { cs_matrix_free(left) };

    let json = take_string(unsafe { cs_smith_to_json(smith) });
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["invariant_factors"].to_string(), "[2,12]");

    unsafe {
        cs_smith_free(smith);
    }

    // Without transforms the accessors report their absence.
    let mut smith = ptr::null_mut();
    assert_eq!(
        unsafe { cs_smith_form(matrix, false, &mut smith) },
        CsStatus::Ok
    );
    let mut left = ptr::null_mut();
    assert_eq!(
        unsafe { cs_smith_left_transform(smith, &mut left) },
        CsStatus::OutOfRange
    );
    unsafe {
        cs_smith_free(smith);
        cs_matrix_free(matrix);
    }
}

#[test]
fn closed_forms() {
    let mut smith = ptr::null_mut();
    assert_eq!(
        unsafe { cs_cyclotomic_companion_smith(6, 3, &mut smith) },
        CsStatus::Ok
    );
    assert_eq!(unsafe { cs_smith_factor_count(smith) }, 2);
    assert_eq!(take_string(unsafe { cs_smith_factor(smith, 0) }), "2");
    unsafe { cs_smith_free(smith) };

    let mut smith = ptr::null_mut();
    assert_eq!(
        unsafe { cs_cyclotomic_companion_smith(3, 7, &mut smith) },
        CsStatus::OutOfRange
    );

    let mut smith = ptr::null_mut();
    assert_eq!(
        unsafe { cs_torus_circulant_smith(2, 9, 6, &mut smith) },
        CsStatus::Ok
    );
    let factors: Vec<String> = (0..unsafe { cs_smith_factor_count(smith) })
        .map(|i| take_string(unsafe { cs_smith_factor(smith, i) }))
        .collect();
    assert_eq!(factors, ["1", "1", "1", "3", "0", "0"]);
    unsafe { cs_smith_free(smith) };

    let mut smith = ptr::null_mut();
    assert_eq!(
        unsafe { cs_torus_circulant_smith(4, 6, 5, &mut smith) },
        CsStatus::NotCoprime
    );
}

#[test]
fn reduction_fast_path() {
    let f = parse_poly("t - 1");
    let g = parse_poly("t^3 - 1");
    let mut smith = ptr::null_mut();
    assert_eq!(
        unsafe { cs_smith_via_reduction(f, g, &mut smith) },
        CsStatus::Ok
    );
    let factors: Vec<String> = (0..unsafe { cs_smith_factor_count(smith) })
        .map(|i| take_string(unsafe { cs_smith_factor(smith, i) }))
        .collect();
    assert_eq!(factors, ["1", "1", "0"]);
    assert_eq!(unsafe { cs_smith_rank(smith) }, 2);
    unsafe {
        cs_smith_free(smith);
        cs_polynomial_free(f);
        cs_polynomial_free(g);
    }
}

#[test]
fn brieskorn_groups() {
    let mut group = ptr::null_mut();
    assert_eq!(
        unsafe { cs_brieskorn_homology(2, 3, 5, &mut group) },
        CsStatus::Ok
    );
    assert_eq!(take_string(unsafe { cs_group_format(group) }), "trivial");
    assert_eq!(unsafe { cs_group_betti(group) }, 0);
    unsafe { cs_group_free(group) };

    let mut group = ptr::null_mut();
    assert_eq!(
        unsafe { cs_brieskorn_homology(2, 9, 6, &mut group) },
        CsStatus::Ok
    );
    assert_eq!(take_string(unsafe { cs_group_format(group) }), "Z_3 + Z^2");
    assert_eq!(unsafe { cs_group_betti(group) }, 2);
    assert_eq!(unsafe { cs_group_torsion_count(group) }, 1);
    assert_eq!(take_string(unsafe { cs_group_torsion(group, 0) }), "3");
    assert_eq!(
        take_string(unsafe { cs_group_to_json(group) }),
        r#"{"betti":2,"torsion":[3]}"#
    );
    unsafe { cs_group_free(group) };

    let mut group = ptr::null_mut();
    assert_eq!(
        unsafe { cs_brieskorn_homology(4, 6, 5, &mut group) },
        CsStatus::NotCoprime
    );
}

#[test]
fn version_and_status_strings() {
    let version = unsafe { CStr::from_ptr(cs_version()) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
    let name = unsafe { CStr::from_ptr(cs_status_name(CsStatus::NotCoprime)) };
    assert_eq!(name.to_str().unwrap(), "not coprime");
}

#[test]
fn generated_header_covers_the_surface() {
    let header = include_str!("../include/companion_smith.h");
    for symbol in [
        "CS_STATUS_OK",
        "CS_STATUS_NOT_COPRIME",
        "cs_polynomial_parse",
        "cs_smith_form",
        "cs_torus_circulant_smith",
        "cs_brieskorn_homology",
        "cs_string_free",
        "typedef struct CsSmith CsSmith;",
    ] {
        assert!(header.contains(symbol), "header is missing `{symbol}`");
    }
}
