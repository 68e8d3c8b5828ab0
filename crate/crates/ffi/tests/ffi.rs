use halo2d_ffi::*;
use std::ffi::CStr;
use std::ptr;

fn last_error() -> String {
    let mut buf = [0 as std::ffi::c_char; 256];
    unsafe { halo2d_last_error(buf.as_mut_ptr(), buf.len()) };
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

#[test]
fn version_is_cargo_version() {
    let v = unsafe { CStr::from_ptr(halo2d_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn gaussian_roundtrip() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { halo2d_potential_gaussian(1.0, -2.0, 0.0, &mut p) }, Halo2dStatus::Ok);
    let mut v = 0.0;
    assert_eq!(unsafe { halo2d_potential_evaluate(p, 0.0, &mut v) }, Halo2dStatus::Ok);
    assert!((v + 1.0).abs() < 1e-14);

    let mut len = 0;
    assert_eq!(unsafe { halo2d_pair_energies(p, ptr::null_mut(), 0, &mut len) }, Halo2dStatus::BufferTooSmall);
    assert!(len >= 1);
    let mut e = vec![0.0; len];
    assert_eq!(unsafe { halo2d_pair_energies(p, e.as_mut_ptr(), e.len(), &mut len) }, Halo2dStatus::Ok);
    assert!(e[0] < 0.0);

    let mut a = 0.0;
    assert_eq!(unsafe { halo2d_scattering_length(p, &mut a) }, Halo2dStatus::Ok);
    assert!(a > 0.0);
    // the weakly bound level follows E = −4 e^{−2γ}/a²
    let gamma = 0.577_215_664_901_532_9_f64;
    let weak = -4.0 * (-2.0 * gamma).exp() / (a * a);
    assert!(((e[e.len() - 1] - weak) / weak).abs() < 0.5);
    unsafe { halo2d_potential_free(p) };
}

#[test]
fn free_angular_spectrum() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { halo2d_potential_gaussian(1.0, 0.0, 0.0, &mut p) }, Halo2dStatus::Ok);
    let mut l = [0.0; 3];
    assert_eq!(unsafe { halo2d_angular_eigenvalues(p, 5.0, 3, l.as_mut_ptr()) }, Halo2dStatus::Ok);
    for (got, want) in l.iter().zip([0.0, 8.0, 24.0]) {
        assert!((got - want).abs() < 1e-6, "{l:?}");
    }
    unsafe { halo2d_potential_free(p) };
}

#[test]
fn zero_range_spectrum() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { halo2d_potential_zero_range(1.0, &mut p) }, Halo2dStatus::Ok);
    let mut lam = 0.0;
    assert_eq!(unsafe { halo2d_zero_range_lambda(1.0, 1, &mut lam) }, Halo2dStatus::Ok);
    assert!(lam < 0.0);

    let mut t = ptr::null_mut();
    assert_eq!(unsafe { halo2d_table_build(p, 1e-8, 1e3, 30, 1, &mut t) }, Halo2dStatus::Ok);
    let mut e2 = 0.0;
    assert_eq!(unsafe { halo2d_table_threshold(t, &mut e2) }, Halo2dStatus::Ok);
    let want = -4.0 * (-2.0 * 0.577_215_664_901_532_9_f64).exp();
    assert!(((e2 - want) / want).abs() < 1e-12);

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { halo2d_spectrum_solve(t, 40.0 * e2, e2, &mut s) }, Halo2dStatus::Ok);
    assert_eq!(unsafe { halo2d_spectrum_len(s) }, 2);
    let (mut e3, mut nodes, mut rms) = (0.0, 0, 0.0);
    assert_eq!(unsafe { halo2d_spectrum_level(s, 0, &mut e3, &mut nodes, &mut rms) }, Halo2dStatus::Ok);
    assert!((e3 / e2 - 16.52).abs() < 0.05, "{}", e3 / e2);
    assert_eq!(nodes, 0);
    assert!(rms > 0.0);
    assert_eq!(unsafe { halo2d_spectrum_level(s, 5, &mut e3, &mut nodes, &mut rms) }, Halo2dStatus::InvalidArgument);
    unsafe {
        halo2d_spectrum_free(s);
        halo2d_table_free(t);
        halo2d_potential_free(p);
    }
}

#[test]
fn errors_are_reported() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { halo2d_potential_zero_range(-1.0, &mut p) }, Halo2dStatus::InvalidArgument);
    assert!(p.is_null());
    assert!(!last_error().is_empty());

    assert_eq!(unsafe { halo2d_potential_gaussian(1.0, -2.0, 0.0, ptr::null_mut()) }, Halo2dStatus::NullPointer);
    assert_eq!(last_error(), "null pointer argument");

    let mut v = 0.0;
    assert_eq!(unsafe { halo2d_potential_evaluate(ptr::null(), 1.0, &mut v) }, Halo2dStatus::NullPointer);
    assert_eq!(unsafe { halo2d_spectrum_len(ptr::null()) }, 0);
    // freeing null is a no-op
    unsafe {
        halo2d_potential_free(ptr::null_mut());
        halo2d_table_free(ptr::null_mut());
        halo2d_spectrum_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/halo2d.h")).unwrap();
    for name in [
        "halo2d_version",
        "halo2d_last_error",
        "halo2d_potential_gaussian",
        "halo2d_potential_zero_range",
        "halo2d_potential_free",
        "halo2d_pair_energies",
        "halo2d_table_build",
        "halo2d_spectrum_solve",
        "halo2d_spectrum_level",
        "HALO2D_STATUS_BUFFER_TOO_SMALL",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}
