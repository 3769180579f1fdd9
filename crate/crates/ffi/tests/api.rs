use std::ffi::{CStr, CString};
use std::ptr;

use cwc_ffi::*;

fn last_error() -> String {
    let p = cwc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn rs_construction_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = CString::new(dir.path().join("rs.cwc").to_str().unwrap()).unwrap();
    unsafe {
        let mut book = ptr::null_mut();
        assert_eq!(cwc_construct_rs(5, 1, 2, 5, 1, &mut book), CwcStatus::Ok);
        assert_eq!((cwc_codebook_n(book), cwc_codebook_w(book), cwc_codebook_len(book)), (25, 5, 30));

        let mut summary = CwcSummary::default();
        assert_eq!(cwc_codebook_verify(book, &mut summary), CwcStatus::Ok);
        assert!(summary.pass);
        assert_eq!(summary.d_exact, 8);

        let mut buf = vec![9u8; 25];
        assert_eq!(cwc_codebook_word(book, 29, buf.as_mut_ptr(), buf.len()), CwcStatus::Ok);
        assert_eq!(buf.iter().filter(|&&b| b == 1).count(), 5);
        assert!(buf.iter().all(|&b| b <= 1));

        assert_eq!(cwc_codebook_write(book, path.as_ptr()), CwcStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(cwc_codebook_read(path.as_ptr(), &mut back), CwcStatus::Ok);
        assert_eq!(cwc_codebook_len(back), 30);
        cwc_codebook_free(back);
        cwc_codebook_free(book);
    }
}

#[test]
fn curve_constructions() {
    unsafe {
        let coeffs = [0i64, 0, 0, -2, -3];
        let mut book = ptr::null_mut();
        assert_eq!(cwc_construct_elliptic(7, 1, coeffs.as_ptr(), 0, 2, 0, &mut book), CwcStatus::Ok);
        assert_eq!((cwc_codebook_n(book), cwc_codebook_len(book)), (63, 49));
        cwc_codebook_free(book);

        let mut herm = ptr::null_mut();
        assert_eq!(cwc_construct_hermitian(2, 0, 3, 0, &mut herm), CwcStatus::Ok);
        assert_eq!((cwc_codebook_n(herm), cwc_codebook_w(herm), cwc_codebook_len(herm)), (32, 8, 64));
        cwc_codebook_free(herm);
    }
}

#[test]
fn errors_carry_status_and_message() {
    unsafe {
        let mut book = ptr::null_mut();
        assert_eq!(cwc_construct_rs(5, 1, 1, 7, 0, &mut book), CwcStatus::Hypothesis);
        assert!(book.is_null());
        assert!(last_error().contains("q >= w"), "{}", last_error());

        assert_eq!(cwc_construct_rs(6, 1, 2, 3, 0, &mut book), CwcStatus::InvalidArgument);
        assert_eq!(cwc_construct_rs(5, 1, 2, 5, 7, &mut book), CwcStatus::InvalidArgument);
        assert_eq!(cwc_construct_rs(5, 1, 2, 5, 0, ptr::null_mut()), CwcStatus::NullPointer);

        let missing = CString::new("/nonexistent/x.cwc").unwrap();
        assert_eq!(cwc_codebook_read(missing.as_ptr(), &mut book), CwcStatus::Io);

        assert_eq!(cwc_construct_rs(5, 1, 2, 5, 0, &mut book), CwcStatus::Ok);
        assert!(cwc_last_error_message().is_null());
        let mut buf = [0u8; 4];
        assert_eq!(cwc_codebook_word(book, 0, buf.as_mut_ptr(), buf.len()), CwcStatus::InvalidArgument);
        assert_eq!(cwc_codebook_word(book, 25, buf.as_mut_ptr(), buf.len()), CwcStatus::OutOfRange);
        cwc_codebook_free(book);
        cwc_codebook_free(ptr::null_mut());
    }
}

#[test]
fn parse_errors_and_failed_verification() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cwc");
    std::fs::write(&bad, "CWC 1\nn=4 d=2 w=2 size=1\n11x0\n").unwrap();
    let lying = dir.path().join("lying.cwc");
    std::fs::write(&lying, "CWC 1\nn=4 d=4 w=2 size=2\n1100\n1010\n").unwrap();
    unsafe {
        let mut book = ptr::null_mut();
        let p = CString::new(bad.to_str().unwrap()).unwrap();
        assert_eq!(cwc_codebook_read(p.as_ptr(), &mut book), CwcStatus::Parse);
        assert!(last_error().contains("line 3"), "{}", last_error());

        let p = CString::new(lying.to_str().unwrap()).unwrap();
        assert_eq!(cwc_codebook_read(p.as_ptr(), &mut book), CwcStatus::Ok);
        let mut summary = CwcSummary::default();
        assert_eq!(cwc_codebook_verify(book, &mut summary), CwcStatus::VerificationFailed);
        assert!(!summary.pass);
        assert_eq!(summary.d_exact, 2);
        cwc_codebook_free(book);
    }
}

#[test]
fn bounds_match_core() {
    let mut out = CwcBounds::default();
    unsafe {
        assert_eq!(cwc_bounds(88, 10, 8, &mut out), CwcStatus::Ok);
    }
    assert!((out.gilbert - 556.99).abs() < 0.005);
    assert!((out.graham_sloane - 1024.46).abs() < 0.005);
    assert_eq!(out.johnson_upper, 33077);
    unsafe {
        assert_eq!(cwc_bounds(88, 0, 8, &mut out), CwcStatus::InvalidArgument);
    }
}
