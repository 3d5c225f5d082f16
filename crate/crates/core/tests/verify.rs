use std::f64::consts::FRAC_PI_2;

use fourier_jacobi::specfun::JacobiParams;
use fourier_jacobi::verify::{
    check_lemma1, default_spec, kernel_bound_growth, run_suite, IdentityId,
};

#[test]
fn lemma1_vanishes_where_the_sine_does() {
    let p = JacobiParams::new(0.75, 1.2).unwrap();
    let r = check_lemma1(&p, 2, FRAC_PI_2, &default_spec()).unwrap();
    assert!(r.passed);
    assert!(r.lhs.abs() <= 1e-9, "{}", r.lhs);
}

#[test]
fn suite_rows_are_ordered_and_pass() {
    let ids = [
        IdentityId::LaplaceK,
        IdentityId::BesselRepr,
        IdentityId::KInequality,
    ];
    let reports = run_suite(&ids, &default_spec()).unwrap();
    assert_eq!(reports.len(), 9 + 18 + 36);
    assert!(reports.iter().all(|r| r.passed));
    assert!(reports.windows(2).all(|w| IdentityId::ALL
        .iter()
        .position(|i| *i == w[0].identity_id)
        <= IdentityId::ALL.iter().position(|i| *i == w[1].identity_id)));
}

#[test]
fn corrected_hankel_form_passes_and_printed_form_does_not() {
    let reports = run_suite(
        &[IdentityId::HankelClosed, IdentityId::HankelClosedCorrected],
        &default_spec(),
    )
    .unwrap();
    for r in &reports {
        assert_eq!(
            r.passed,
            r.identity_id == IdentityId::HankelClosedCorrected,
            "{r:?}"
        );
    }
}

#[test]
fn kernel_bound_ratio_does_not_grow() {
    let p = JacobiParams::new(0.6, 1.0).unwrap();
    for x in [0.5, 2.0] {
        assert!(!kernel_bound_growth(&p, x, 0.0, 12, 1e-6).unwrap().grows);
    }
}
