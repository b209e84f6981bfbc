use lowzero_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn last_error() -> String {
    unsafe { CStr::from_ptr(lz_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn field_round_trip() {
    let spec = CString::new("x^2+510510").unwrap();
    let mut f: *mut LzField = ptr::null_mut();
    assert_eq!(unsafe { lz_field_from_spec(spec.as_ptr(), &mut f) }, LzStatus::Ok);
    let mut a = 0.0;
    assert_eq!(unsafe { lz_field_alpha(f, &mut a) }, LzStatus::Ok);
    assert!((a - 7.26472993307674).abs() < 1e-12);
    let (mut n, mut r1, mut r2) = (0u32, 0u32, 0u32);
    assert_eq!(unsafe { lz_field_signature(f, &mut n, &mut r1, &mut r2) }, LzStatus::Ok);
    assert_eq!((n, r1, r2), (2, 0, 1));
    let mut bound = 0.0;
    assert_eq!(unsafe { lz_theorem1_bound(a, &mut bound) }, LzStatus::Ok);
    assert!(((bound - 22.2098243056698) / 22.2098243056698).abs() < 1e-3);
    unsafe { lz_field_free(f) };
}

#[test]
fn errors_carry_codes_and_messages() {
    let spec = CString::new("y^2+1").unwrap();
    let mut f: *mut LzField = ptr::null_mut();
    assert_eq!(unsafe { lz_field_from_spec(spec.as_ptr(), &mut f) }, LzStatus::InvalidArgument);
    assert!(f.is_null());
    assert!(last_error().contains("y^2+1"));

    assert_eq!(unsafe { lz_field_quadratic(20, &mut f) }, LzStatus::InvalidArgument);
    assert_eq!(unsafe { lz_field_alpha(ptr::null(), ptr::null_mut()) }, LzStatus::NullPointer);
    let mut x = 0.0;
    assert_eq!(unsafe { lz_theorem1_bound(5.0, &mut x) }, LzStatus::NotApplicable);
    assert_eq!(unsafe { lz_lemma3_threshold(1.0, 5.0, 10.0, &mut x) }, LzStatus::Domain);
    unsafe { lz_field_free(ptr::null_mut()) };
}

#[test]
fn bounds_through_the_abi() {
    let mut t2 = LzTheorem2::default();
    assert_eq!(unsafe { lz_theorem2_bound(13.70533805, 27.41067610, &mut t2) }, LzStatus::Ok);
    assert!((t2.b - 0.1380).abs() < 1e-4 && (t2.a - 0.8607).abs() < 1e-4);
    let mut x = 0.0;
    assert_eq!(unsafe { lz_neugebauer_bound(7.2647, &mut x) }, LzStatus::Ok);
    assert_eq!(x, 60.0);
    assert_eq!(unsafe { lz_central_order_bound(27.4107, 2, &mut x) }, LzStatus::Ok);
    assert!((x - 8.580).abs() < 2e-3);
    assert_eq!(lz_test_function(0.0), 1.0);
    assert!((lz_test_function_transform(0.0) - 16.0 / std::f64::consts::PI.powi(2)).abs() < 1e-14);
}

#[test]
fn primes_through_the_abi() {
    let mut t: *mut LzMangoldtTable = ptr::null_mut();
    assert_eq!(unsafe { lz_mangoldt_new(1000, &mut t) }, LzStatus::Ok);
    let mut psi = 0.0;
    assert_eq!(unsafe { lz_chebyshev_psi(t, 10.0, &mut psi) }, LzStatus::Ok);
    let exact = 3.0 * 2f64.ln() + 2.0 * 3f64.ln() + 5f64.ln() + 7f64.ln();
    assert!((psi - exact).abs() < 1e-12);
    assert_eq!(unsafe { lz_chebyshev_psi(t, 5000.0, &mut psi) }, LzStatus::Range);
    unsafe { lz_mangoldt_free(t) };
}

#[test]
fn zeros_through_the_abi() {
    let mut z: *mut LzLFunction = ptr::null_mut();
    assert_eq!(unsafe { lz_lfunction_zeta(&mut z) }, LzStatus::Ok);
    let mut v = LzCompletedValue::default();
    assert_eq!(unsafe { lz_lfunction_eval(z, 14.134725141734693, &mut v) }, LzStatus::Ok);
    assert!(v.lambda_value.abs() < 1e-9);
    let mut lz = LzLowestZero::default();
    assert_eq!(unsafe { lz_lfunction_lowest_zero(z, 20.0, &mut lz) }, LzStatus::Ok);
    assert_eq!(lz.found, 1);
    assert!((lz.tau - 14.134725141734693).abs() < 1e-8);
    assert_eq!(unsafe { lz_lfunction_eval(z, 500.0, &mut v) }, LzStatus::Domain);
    unsafe { lz_lfunction_free(z) };

    let mut tau = LzLowestZero::default();
    assert_eq!(unsafe { lz_tau_quadratic(-4, 15.0, &mut tau) }, LzStatus::Ok);
    assert!((tau.tau - 6.020948904697597).abs() < 1e-8);
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/lowzero.h")).unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .split("extern \"C\" fn ")
        .skip(1)
        .filter_map(|s| s.split('(').next())
        .collect();
    assert!(exports.len() > 20);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct LzField LzField;"));
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(lz_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
