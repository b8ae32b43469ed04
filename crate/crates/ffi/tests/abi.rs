//! Exercises the C ABI from Rust and checks the generated header compiles.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use sx_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    sx_string_free(s);
    out
}

#[test]
fn parse_query_and_free() {
    unsafe {
        let text = CString::new("1 2 3\n2 3 4\n").unwrap();
        let mut c = ptr::null_mut();
        assert_eq!(sx_complex_parse(text.as_ptr(), &mut c), SxStatus::Ok);
        assert_eq!(sx_complex_dim(c), 2);
        assert_eq!(sx_complex_vertex_count(c), 4);
        assert_eq!(sx_complex_facet_count(c), 2);
        let mut s = ptr::null_mut();
        assert_eq!(sx_complex_f_vector_json(c, &mut s), SxStatus::Ok);
        assert_eq!(take(s), "[4,5,2]");
        let mut bd = ptr::null_mut();
        assert_eq!(sx_complex_boundary(c, &mut bd), SxStatus::Ok);
        assert_eq!(sx_complex_facet_count(bd), 4);
        assert_eq!(sx_complex_write(bd, 0, &mut s), SxStatus::Ok);
        assert_eq!(take(s), "1 2\n1 3\n2 4\n3 4\n");
        sx_complex_free(bd);
        sx_complex_free(c);
    }
}

#[test]
fn fixtures_homology_and_symmetry() {
    unsafe {
        let name = CString::new("bl_sigma3_16").unwrap();
        let mut c = ptr::null_mut();
        assert_eq!(sx_complex_fixture(name.as_ptr(), &mut c), SxStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(sx_homology_json(c, 0, &mut s), SxStatus::Ok);
        assert_eq!(take(s), r#"{"field":"Q","reduced_betti":[0,0,0,1]}"#);
        assert_eq!(sx_homology_json(c, 6, &mut s), SxStatus::InvalidArgument);
        assert!(!sx_last_error().is_null());
        sx_complex_free(c);

        let name = CString::new("lutz_s2_8").unwrap();
        assert_eq!(sx_complex_fixture(name.as_ptr(), &mut c), SxStatus::Ok);
        assert_eq!(sx_automorphism_order(c, 2, &mut s), SxStatus::GuardExceeded);
        sx_complex_free(c);
    }
}

#[test]
fn certify_reports_verdicts() {
    unsafe {
        let name = CString::new("ziegler_b2").unwrap();
        let mut c = ptr::null_mut();
        assert_eq!(sx_complex_fixture(name.as_ptr(), &mut c), SxStatus::Ok);
        let mut s = ptr::null_mut();
        let mut status = -1;
        assert_eq!(sx_certify(c, SxCertifier::Shelled, 3, 0, &mut s, &mut status), SxStatus::Ok);
        assert_eq!(status, 1);
        assert!(take(s).contains("REFUTED"));
        assert_eq!(sx_certify(c, SxCertifier::Collapse, 0, 0, &mut s, ptr::null_mut()), SxStatus::Ok);
        assert!(take(s).contains("PROVED"));
        sx_complex_free(c);
    }
}

#[test]
fn errors_and_null_handling() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(sx_complex_parse(ptr::null(), &mut c), SxStatus::NullPointer);
        let bad = CString::new("{oops").unwrap();
        assert_eq!(sx_complex_parse(bad.as_ptr(), &mut c), SxStatus::Parse);
        let msg = CStr::from_ptr(sx_last_error()).to_str().unwrap();
        assert!(msg.contains("parse"), "{msg}");
        let missing = CString::new("no_such_fixture").unwrap();
        assert_eq!(sx_complex_fixture(missing.as_ptr(), &mut c), SxStatus::Parse);
        assert_eq!(sx_complex_dim(ptr::null()), -2);
        let mut s = ptr::null_mut();
        assert_eq!(sx_complex_write(ptr::null(), 0, &mut s), SxStatus::NullPointer);
        sx_complex_free(ptr::null_mut());
        sx_string_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/sx.h");
    let status = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header])
        .status()
        .expect("a C compiler is on PATH");
    assert!(status.success());
}
