use std::ffi::CStr;
use std::ptr;

use dyform_ffi::*;

fn field(f: u32) -> *mut DyField {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dy_field_new(f, 0, &mut out) }, DyStatus::Ok);
    assert!(!out.is_null());
    out
}

fn last_error() -> String {
    let p = dy_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn field_lifecycle_and_psi() {
    let k = field(3);
    unsafe {
        assert_eq!(dy_field_q(k), 8);
        let mut sum = 0;
        for x in 0..8 {
            let mut v = 0;
            assert_eq!(dy_psi(k, x, &mut v), DyStatus::Ok);
            assert!(v == 1 || v == -1);
            sum += v;
        }
        assert_eq!(sum, 0);
        let mut v = 0;
        assert_eq!(dy_psi(k, 8, &mut v), DyStatus::Domain);
        assert!(last_error().contains("GF(8)"));
        dy_field_free(k);
        dy_field_free(ptr::null_mut());
    }
}

#[test]
fn kloosterman_value() {
    let k = field(3);
    unsafe {
        let mut g5 = 0;
        assert_eq!(dy_field_gen_pow(k, 5, &mut g5), DyStatus::Ok);
        let mut v = 0;
        assert_eq!(dy_kloosterman(k, 4, g5, &mut v), DyStatus::Ok);
        assert_eq!(v, -25);
        assert_eq!(dy_kloosterman(k, 1, g5, &mut v), DyStatus::Ok);
        assert_eq!(v.abs(), 1);
        dy_field_free(k);
    }
}

#[test]
fn invalid_arguments() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(dy_field_new(2, 0b101, &mut out), DyStatus::InvalidField);
        assert!(out.is_null());
        assert_eq!(dy_field_new(2, 0, ptr::null_mut()), DyStatus::NullPointer);
        assert!(last_error().contains("null"));
        let mut v = 0;
        assert_eq!(dy_psi(ptr::null(), 0, &mut v), DyStatus::NullPointer);
        assert_eq!(dy_field_q(ptr::null()), 0);
        let mut c = DyConductor::default();
        assert_eq!(dy_conductor(2, 6, &mut c), DyStatus::Usage);
    }
}

#[test]
fn ring_outlives_field() {
    let k = field(2);
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(dy_ring_new(k, 4, &mut r), DyStatus::Ok);
        dy_field_free(k);
        for n in 1..=3 {
            for u in 1..4 {
                let (mut holds, mut value) = (false, 0);
                assert_eq!(dy_endoscopy_check(r, n, u, 1, &mut holds, &mut value), DyStatus::Ok);
                assert!(holds, "n={n} u={u}");
            }
        }
        let (mut holds, mut value) = (false, 0);
        assert_eq!(dy_endoscopy_check(r, 1, 0, 1, &mut holds, &mut value), DyStatus::Domain);
        dy_ring_free(r);
    }
}

#[test]
fn conductor_values() {
    let mut c = DyConductor::default();
    assert_eq!(unsafe { dy_conductor(2, 4, &mut c) }, DyStatus::Ok);
    assert_eq!(c.artin_rs, 28);
    assert_eq!(c.swan_ad, 2);
    assert_eq!((c.gamma_base, c.gamma_exponent), (4, 6));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/dyform.h")).unwrap();
    for name in [
        "dy_last_error",
        "dy_version",
        "dy_field_new",
        "dy_field_free",
        "dy_psi",
        "dy_kloosterman",
        "dy_ring_new",
        "dy_ring_free",
        "dy_endoscopy_check",
        "dy_conductor",
        "DY_STATUS_PANIC",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
    let v = unsafe { CStr::from_ptr(dy_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
