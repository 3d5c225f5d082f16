mod common;

use common::close;
use fourier_jacobi::kernels::normalization;
use fourier_jacobi::quad::QuadratureSpec;
use fourier_jacobi::specfun::JacobiParams;
use fourier_jacobi::transforms::{
    analyze, build_profile_function, closed_form_coefficients, invert_coefficients, reconstruct,
    synthesize, synthesized_function, CoefficientSequence, ProfileFunction,
};
use proptest::prelude::*;

fn p() -> JacobiParams {
    JacobiParams::new(0.75, 1.2).unwrap()
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
        .with_rel_tol(1e-10)
        .with_abs_tol(1e-12)
}

#[test]
fn sequence_round_trip_recovers_inputs() {
    let seq = CoefficientSequence::exponential_default(p(), 8).unwrap();
    let f = synthesized_function(&seq);
    for n in 1..=8u32 {
        let got = invert_coefficients(&f, &p(), n, &spec()).unwrap();
        let want = seq.values()[n as usize - 1];
        assert!((got - want).abs() <= 1e-10, "n = {n}: {got} vs {want}");
    }
}

#[test]
fn zero_sequence_inverts_to_zero() {
    let seq = CoefficientSequence::zeros(p(), 3).unwrap();
    let f = synthesized_function(&seq);
    for n in 1..=3 {
        assert!(invert_coefficients(&f, &p(), n, &spec()).unwrap().abs() <= spec().abs_tol);
    }
}

#[test]
fn sine_profile_is_a_single_mode() {
    let psi = ProfileFunction::builtin("sin").unwrap();
    let f = build_profile_function(&psi, &p(), &spec()).unwrap();
    let a1 = analyze(&f, &p(), 1, &spec()).unwrap();
    let c1 = closed_form_coefficients(&psi, &p(), 1, &spec()).unwrap();
    assert!(close(a1, c1, 1e-8, 0.0), "{a1} vs {c1}");
    for n in 2..=3 {
        assert!(analyze(&f, &p(), n, &spec()).unwrap().abs() <= 1e-9);
        assert!(
            closed_form_coefficients(&psi, &p(), n, &spec())
                .unwrap()
                .abs()
                <= 1e-9
        );
    }
    let seq = CoefficientSequence::new(vec![a1], p(), 0.0).unwrap();
    for x in [0.5, 1.0, 2.0] {
        let r = reconstruct(&seq, &p(), x, 1, &spec()).unwrap();
        assert!((r.value - f.evaluate(x).unwrap()).abs() <= 1e-5, "x = {x}");
    }
}

#[test]
fn three_mode_profile_reconstructs_with_three_terms() {
    let psi = ProfileFunction::builtin("sin+0.3sin3").unwrap();
    let f = build_profile_function(&psi, &p(), &spec()).unwrap();
    let coeffs: Vec<f64> = (1..=3)
        .map(|n| closed_form_coefficients(&psi, &p(), n, &spec()).unwrap())
        .collect();
    assert!(coeffs[1].abs() <= 1e-9);
    let seq = CoefficientSequence::new(coeffs, p(), 0.0).unwrap();
    for x in [0.5, 1.0, 2.0] {
        let r = reconstruct(&seq, &p(), x, 3, &spec()).unwrap();
        assert!((r.value - f.evaluate(x).unwrap()).abs() <= 1e-4, "x = {x}");
    }
}

#[test]
fn ramp_coefficient_paths_agree() {
    let psi = ProfileFunction::builtin("ramp").unwrap();
    let f = build_profile_function(&psi, &p(), &spec()).unwrap();
    for n in 1..=3 {
        let a = analyze(&f, &p(), n, &spec()).unwrap();
        let c = closed_form_coefficients(&psi, &p(), n, &spec()).unwrap();
        assert!(close(a, c, 1e-6, 1e-9), "n = {n}: {a} vs {c}");
    }
}

#[test]
fn inversion_is_biorthogonal_to_the_forward_kernels() {
    for m in 1..=3usize {
        let mut unit = vec![0.0; m];
        unit[m - 1] = 1.0;
        let f = synthesized_function(&CoefficientSequence::new(unit, p(), 0.0).unwrap());
        for n in 1..=3u32 {
            let got = invert_coefficients(&f, &p(), n, &spec()).unwrap();
            let want = if n as usize == m { 1.0 } else { 0.0 };
            assert!((got - want).abs() <= 1e-4, "n = {n}, m = {m}: {got}");
        }
    }
}

#[test]
fn prefactors_multiply_to_the_reciprocal_of_pi() {
    for n in 1..=5 {
        let k = normalization(&p(), n).unwrap();
        let product = k.theorem1_prefactor * k.closed_coeff_prefactor;
        assert!((product - std::f64::consts::FRAC_1_PI).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn synthesis_is_linear(
        u in prop::collection::vec(prop_oneof![-1.0f64..-0.5, 0.5f64..1.0], 4),
        v in prop::collection::vec(prop_oneof![-1.0f64..-0.5, 0.5f64..1.0], 4),
        alpha in -2.0f64..2.0,
        x in 0.05f64..8.0,
    ) {
        let base = CoefficientSequence::exponential_default(p(), 4).unwrap();
        let scaled = |r: Vec<f64>| {
            let values = r.iter().zip(base.values()).map(|(r, b)| r * b).collect();
            CoefficientSequence::new(values, p(), 0.0).unwrap()
        };
        let (su, sv) = (scaled(u), scaled(v));
        let combined = su.linear_combination(1.0, &sv, alpha);
        prop_assume!(combined.is_ok());
        let combined = combined.unwrap();
        let lhs = synthesize(&combined, x).unwrap().value;
        let rhs = synthesize(&su, x).unwrap().value + alpha * synthesize(&sv, x).unwrap().value;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
    }

    #[test]
    fn analysis_is_linear(alpha in -3.0f64..3.0, n in 1u32..4) {
        let s1 = synthesized_function(&CoefficientSequence::new(vec![0.4, -0.2], p(), 0.0).unwrap());
        let s2 = synthesized_function(&CoefficientSequence::new(vec![0.0, 0.1, 0.3], p(), 0.0).unwrap());
        let combined = s1.linear_combination(1.0, &s2, alpha);
        let lhs = analyze(&combined, &p(), n, &spec()).unwrap();
        let rhs = analyze(&s1, &p(), n, &spec()).unwrap() + alpha * analyze(&s2, &p(), n, &spec()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-8 * (1.0 + rhs.abs()), "{} vs {}", lhs, rhs);
    }
}
