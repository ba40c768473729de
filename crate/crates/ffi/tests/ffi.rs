use std::ffi::{c_char, CStr, CString};
use std::ptr;

use ainfp_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    ainfp_string_free(s);
    out
}

unsafe fn fixture(name: &str, p: u32) -> *mut AinfpAlgebra {
    let name = CString::new(name).unwrap();
    let mut alg = ptr::null_mut();
    assert_eq!(ainfp_algebra_fixture(name.as_ptr(), p, &mut alg), AinfpStatus::Ok);
    alg
}

unsafe fn structure(alg: *const AinfpAlgebra, n: usize) -> *mut AinfpStructure {
    let mut s = ptr::null_mut();
    assert_eq!(ainfp_transfer(alg, n, 0, &mut s), AinfpStatus::Ok);
    s
}

#[test]
fn torus_and_wedge_through_handles() {
    unsafe {
        let (t, w) = (fixture("torus", 2), fixture("wedge", 2));
        let (st, sw) = (structure(t, 2), structure(w, 2));

        let mut out = ptr::null_mut();
        assert_eq!(ainfp_distance(st, sw, 1, &mut out), AinfpStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["value"], 0);

        assert_eq!(ainfp_distance(st, sw, 2, &mut out), AinfpStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["value"], "inf");

        assert_eq!(ainfp_structure_json(st, &mut out), AinfpStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert!(v.is_object());

        assert_eq!(ainfp_barcode_json(t, &mut out), AinfpStatus::Ok);
        let bars: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert!(!bars.as_array().unwrap().is_empty());

        ainfp_structure_free(st);
        ainfp_structure_free(sw);
        ainfp_algebra_free(t);
        ainfp_algebra_free(w);
    }
}

#[test]
fn points_give_a_loop() {
    let coords = [0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0];
    unsafe {
        let mut alg = ptr::null_mut();
        assert_eq!(ainfp_algebra_from_points(coords.as_ptr(), 4, 2, 2, 3, &mut alg), AinfpStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(ainfp_barcode_json(alg, &mut out), AinfpStatus::Ok);
        let bars: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert!(bars.as_array().unwrap().iter().any(|b| b["degree"] != 0));
        ainfp_algebra_free(alg);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut alg = ptr::null_mut();
        assert_eq!(ainfp_algebra_fixture(ptr::null(), 2, &mut alg), AinfpStatus::NullPointer);

        let name = CString::new("nope").unwrap();
        assert_eq!(ainfp_algebra_fixture(name.as_ptr(), 2, &mut alg), AinfpStatus::Input);
        let msg = CStr::from_ptr(ainfp_last_error()).to_str().unwrap();
        assert!(msg.contains("nope"));

        let name = CString::new("torus").unwrap();
        assert_eq!(ainfp_algebra_fixture(name.as_ptr(), 4, &mut alg), AinfpStatus::Input);

        let bad = [0xffu8, 0];
        assert_eq!(ainfp_algebra_from_json(bad.as_ptr().cast(), &mut alg), AinfpStatus::InvalidUtf8);
        let junk = CString::new("{").unwrap();
        assert_eq!(ainfp_algebra_from_json(junk.as_ptr(), &mut alg), AinfpStatus::Input);

        let nan = [f64::NAN, 0.0];
        assert_eq!(ainfp_algebra_from_points(nan.as_ptr(), 1, 2, 1, 2, &mut alg), AinfpStatus::Input);

        let (a, b) = (fixture("torus", 2), fixture("torus", 3));
        let (sa, sb) = (structure(a, 2), structure(b, 2));
        let mut out = ptr::null_mut();
        assert_eq!(ainfp_distance(sa, sb, 2, &mut out), AinfpStatus::FieldMismatch);
        assert_eq!(ainfp_distance(sa, ptr::null(), 2, &mut out), AinfpStatus::NullPointer);
        ainfp_structure_free(sa);
        ainfp_structure_free(sb);
        ainfp_algebra_free(a);
        ainfp_algebra_free(b);

        ainfp_algebra_free(ptr::null_mut());
        ainfp_string_free(ptr::null_mut());
    }
}
