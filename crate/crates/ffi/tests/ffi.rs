use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use fourier_jacobi_ffi::*;

fn params(a: f64, c: f64) -> *mut FjtParams {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { fjt_params_new(a, c, &mut p) }, FjtStatus::Ok);
    p
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(fjt_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn kernel_values_and_errors() {
    let p = params(0.75, 1.2);
    let mut v = f64::NAN;
    unsafe {
        assert_eq!(fjt_forward_kernel(p, 3, 0.0, &mut v), FjtStatus::Ok);
        assert_eq!(v, 1.0);
        assert_eq!(fjt_forward_kernel(p, 1, -1.0, &mut v), FjtStatus::Domain);
        assert!(!last_error().is_empty());
        assert_eq!(
            fjt_forward_kernel(ptr::null(), 1, 1.0, &mut v),
            FjtStatus::NullPointer
        );
        assert!(last_error().contains("params"));
        assert_eq!(
            fjt_forward_kernel(p, 1, 1.0, ptr::null_mut()),
            FjtStatus::NullPointer
        );
        assert_eq!(fjt_forward_kernel(p, 1, 1.0, &mut v), FjtStatus::Ok);
        assert!(last_error().is_empty());
        fjt_params_free(p);
    }
}

#[test]
fn regime_violation_is_reported() {
    let p = params(0.75, 0.4);
    let (mut i, mut r, mut c) = (0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(
            fjt_normalization(p, 1, &mut i, &mut r, &mut c),
            FjtStatus::Regime
        );
        assert!(last_error().contains("2a - 1/2"));
        fjt_params_free(p);
    }
}

#[test]
fn sequence_round_trip() {
    let p = params(0.75, 1.2);
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(fjt_sequence_default(p, 3, &mut s), FjtStatus::Ok);
        let mut a = [0.0; 3];
        assert_eq!(fjt_sequence_values(s, a.as_mut_ptr(), 3), FjtStatus::Ok);
        for n in 1..=3u32 {
            let mut got = 0.0;
            assert_eq!(
                fjt_invert_synthesized(s, n, 1e-10, 1e-12, &mut got),
                FjtStatus::Ok
            );
            assert!((got - a[n as usize - 1]).abs() < 1e-9);
        }
        let (mut value, mut tail) = (0.0, 0.0);
        assert_eq!(fjt_synthesize(s, 1.0, &mut value, &mut tail), FjtStatus::Ok);
        assert!(value.is_finite() && tail >= 0.0);
        assert_eq!(
            fjt_synthesize(s, 1.0, &mut value, ptr::null_mut()),
            FjtStatus::Ok
        );
        let mut r = 0.0;
        assert_eq!(
            fjt_reconstruct(s, 1.0, 4, 1e-10, 1e-12, &mut r),
            FjtStatus::Config
        );
        assert_eq!(
            fjt_invert_synthesized(s, 1, -1.0, 1e-12, &mut r),
            FjtStatus::Config
        );
        fjt_sequence_free(s);
        fjt_params_free(p);
    }
}

#[test]
fn explicit_sequence_is_validated() {
    let p = params(0.75, 1.2);
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(
            fjt_sequence_new(p, ptr::null(), 0, 0.0, &mut s),
            FjtStatus::DecayCondition
        );
        let values = [0.5, f64::NAN];
        assert_eq!(
            fjt_sequence_new(p, values.as_ptr(), 2, 0.0, &mut s),
            FjtStatus::DecayCondition
        );
        let values = [0.5, 0.01];
        assert_eq!(
            fjt_sequence_new(p, values.as_ptr(), 2, 0.0, &mut s),
            FjtStatus::Ok
        );
        assert_eq!(fjt_sequence_len(s), 2);
        fjt_sequence_free(s);
        fjt_sequence_free(ptr::null_mut());
        fjt_params_free(p);
    }
}

#[test]
fn c_program_links_against_the_header() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libfourier_jacobi_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let out_dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let exe = out_dir.join("fjt_smoke");
    let status = Command::new("cc")
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert!(
        run.status.success(),
        "smoke program exited with {:?}",
        run.status.code()
    );
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok 0.1.0"));
}
