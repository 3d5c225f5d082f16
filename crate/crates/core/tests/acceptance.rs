//! Acceptance run: one PASS/FAIL line per criterion, with detail lines.
//!
//! The run is a report: it exits 0 once every criterion has been evaluated,
//! so the remaining test targets still run. Set `FJT_ACCEPTANCE_STRICT=1` to
//! exit with status 1 when any criterion fails.

use std::f64::consts::FRAC_2_PI;
use std::process::Command;
use std::time::{Duration, Instant};

use fourier_jacobi::kernels::{forward_kernel, measure_decay, normalization};
use fourier_jacobi::quad::QuadratureSpec;
use fourier_jacobi::specfun::JacobiParams;
use fourier_jacobi::transforms::{
    analyze, build_profile_function, closed_form_coefficients, invert_coefficients, reconstruct,
    synthesized_function, CoefficientSequence, ProfileFunction,
};
use fourier_jacobi::verify::{
    default_spec, kernel_bound_growth, run_suite, IdentityId, IdentityReport, DEFAULT_PARAMS,
};
use fourier_jacobi::Result;

struct Outcome {
    passed: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            passed: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: String) {
        self.passed &= ok;
        self.details
            .push(format!("{} {detail}", if ok { "ok  " } else { "FAIL" }));
    }
}

fn params() -> Vec<JacobiParams> {
    DEFAULT_PARAMS
        .iter()
        .map(|&(a, c)| JacobiParams::new(a, c).unwrap())
        .collect()
}

fn p0() -> JacobiParams {
    JacobiParams::new(0.75, 1.2).unwrap()
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
        .with_rel_tol(1e-10)
        .with_abs_tol(1e-12)
}

fn identity_suite(id: IdentityId) -> Result<Outcome> {
    let reports = run_suite(&[id], &default_spec())?;
    let mut out = Outcome::new();
    let failed: Vec<&IdentityReport> = reports.iter().filter(|r| !r.passed).collect();
    let worst = reports.iter().map(|r| r.rel_residual).fold(0.0, f64::max);
    out.check(
        failed.is_empty(),
        format!(
            "{id}: {}/{} grid points pass, worst residual {worst:.3e}",
            reports.len() - failed.len(),
            reports.len()
        ),
    );
    Ok(out)
}

fn criterion_4() -> Result<Outcome> {
    let mut out = identity_suite(IdentityId::HankelClosed)?;
    let corrected = run_suite(&[IdentityId::HankelClosedCorrected], &default_spec())?;
    let worst = corrected.iter().map(|r| r.rel_residual).fold(0.0, f64::max);
    let ok = corrected.iter().all(|r| r.passed);
    out.details.push(format!(
        "info {}: {}/{} pass with the power of two lowered by one, worst residual {worst:.3e}",
        IdentityId::HankelClosedCorrected,
        corrected.iter().filter(|r| r.passed).count(),
        corrected.len()
    ));
    if !ok {
        out.passed = false;
    }
    Ok(out)
}

fn criterion_5() -> Result<Outcome> {
    let p = p0();
    let seq = CoefficientSequence::exponential_default(p, 8)?;
    let f = synthesized_function(&seq);
    let mut worst = 0.0f64;
    for n in 1..=8u32 {
        let got = invert_coefficients(&f, &p, n, &spec())?;
        worst = worst.max((got - seq.values()[n as usize - 1]).abs());
    }
    let mut out = Outcome::new();
    out.check(
        worst <= 1e-4,
        format!("N = 8 sequence round trip, max abs error {worst:.3e} (bound 1e-4)"),
    );
    Ok(out)
}

fn profile_reconstruction(name: &str, terms: u32) -> Result<(Vec<f64>, f64)> {
    let p = p0();
    let psi = ProfileFunction::builtin(name)?;
    let f = build_profile_function(&psi, &p, &spec())?;
    let coeffs = (1..=terms)
        .map(|n| analyze(&f, &p, n, &spec()))
        .collect::<Result<Vec<_>>>()?;
    let seq = CoefficientSequence::new(coeffs.clone(), p, 0.0)?;
    let mut worst = 0.0f64;
    for x in [0.5, 1.0, 2.0] {
        let r = reconstruct(&seq, &p, x, terms as usize, &spec())?;
        worst = worst.max((r.value - f.evaluate(x)?).abs());
    }
    Ok((coeffs, worst))
}

fn criterion_6() -> Result<Outcome> {
    let mut out = Outcome::new();
    let (sin_coeffs, _) = profile_reconstruction("sin", 3)?;
    let off = sin_coeffs[1].abs().max(sin_coeffs[2].abs());
    out.check(
        off <= 1e-9,
        format!(
            "sin: a_1 = {:.6e}, max |a_2|, |a_3| = {off:.3e} (bound 1e-9)",
            sin_coeffs[0]
        ),
    );
    let (_, err1) = profile_reconstruction("sin", 1)?;
    out.check(
        err1 <= 1e-5,
        format!("sin: N = 1 reconstruction error {err1:.3e} at x = 0.5, 1, 2 (bound 1e-5)"),
    );
    let (_, err3) = profile_reconstruction("sin+0.3sin3", 3)?;
    out.check(
        err3 <= 1e-4,
        format!("sin+0.3sin3: N = 3 reconstruction error {err3:.3e} (bound 1e-4)"),
    );
    Ok(out)
}

fn criterion_7() -> Result<Outcome> {
    let p = p0();
    let psi = ProfileFunction::builtin("ramp")?;
    let f = build_profile_function(&psi, &p, &spec())?;
    let mut out = Outcome::new();
    for n in 1..=3 {
        let a = analyze(&f, &p, n, &spec())?;
        let c = closed_form_coefficients(&psi, &p, n, &spec())?;
        let diff = (a - c).abs();
        let ok = diff <= 1e-9f64.max(1e-6 * c.abs());
        out.check(
            ok,
            format!("ramp n = {n}: analysis {a:.12e}, closed form {c:.12e}, diff {diff:.2e}"),
        );
    }
    Ok(out)
}

fn criterion_8() -> Result<Outcome> {
    let p = p0();
    let mut out = Outcome::new();
    let mut worst = 0.0f64;
    for m in 1..=3usize {
        let mut unit = vec![0.0; m];
        unit[m - 1] = 1.0;
        let f = synthesized_function(&CoefficientSequence::new(unit, p, 0.0)?);
        for n in 1..=3u32 {
            let got = invert_coefficients(&f, &p, n, &spec())?;
            let want = if n as usize == m { 1.0 } else { 0.0 };
            worst = worst.max((got - want).abs());
        }
    }
    out.check(
        worst <= 1e-4,
        format!("3x3 biorthogonality matrix, max deviation from identity {worst:.3e} (bound 1e-4)"),
    );
    Ok(out)
}

fn criterion_9() -> Result<Outcome> {
    let mut out = identity_suite(IdentityId::KInequality)?;
    let bound = identity_suite(IdentityId::KernelBound)?;
    out.passed &= bound.passed;
    out.details.extend(bound.details);
    let mut growing = Vec::new();
    let mut scans = 0;
    for p in params() {
        for delta in [0.0, 0.5] {
            for x in [0.5, 1.0, 2.0, 5.0] {
                scans += 1;
                if kernel_bound_growth(&p, x, delta, 12, 1e-6)?.grows {
                    growing.push(format!("(a={}, c={}, x={x}, delta={delta})", p.a(), p.c()));
                }
            }
        }
    }
    out.check(
        growing.is_empty(),
        format!(
            "bound ratio non-increasing over n = 1..12 in {}/{scans} scans{}",
            scans - growing.len(),
            growing.iter().map(|g| format!(" {g}")).collect::<String>()
        ),
    );
    Ok(out)
}

fn criterion_10() -> Result<Outcome> {
    let mut out = Outcome::new();
    let mut at_origin = 0.0f64;
    for p in params() {
        for n in 1..=5 {
            at_origin = at_origin.max((forward_kernel(&p, n, 0.0)? - 1.0).abs());
        }
    }
    out.check(
        at_origin == 0.0,
        format!("F_n(0) = 1 for all parameter pairs, n = 1..5 (max deviation {at_origin:e})"),
    );

    let mut decay_ok = true;
    let mut worst_fwd = 0.0f64;
    let mut worst_inv = 0.0f64;
    for p in params() {
        for n in 1..=3 {
            let d = measure_decay(&p, n, &spec())?;
            decay_ok &= d.within(0.3);
            for m in d.forward_measured {
                worst_fwd = worst_fwd.max((m / d.forward_expected - 1.0).abs());
            }
            for m in d.inverse_measured {
                worst_inv = worst_inv.max((m / d.inverse_expected - 1.0).abs());
            }
        }
    }
    out.check(
        decay_ok,
        format!("doubling-fit exponents: forward within {:.1}% of -2a, inverse envelope within {:.1}% of 2a-2c-1", 100.0 * worst_fwd, 100.0 * worst_inv),
    );

    let mut worst_product = 0.0f64;
    let mut product = 0.0;
    for p in params() {
        for n in 1..=3 {
            let k = normalization(&p, n)?;
            product = k.theorem1_prefactor * k.closed_coeff_prefactor;
            worst_product = worst_product.max((product - FRAC_2_PI).abs());
        }
    }
    out.check(
        worst_product <= 1e-12,
        format!("inversion prefactor times closed-form prefactor = {product:.15} vs 2/pi = {FRAC_2_PI:.15} (deviation {worst_product:.3e})"),
    );

    let runs = [
        vec!["kernel", "--grid", "0:3:0.25", "--n", "2"],
        vec!["roundtrip-seq", "--N", "4", "--format", "json"],
        vec!["verify", "--identity", "laplace_k"],
    ];
    let mut identical = true;
    for args in &runs {
        let outputs: Vec<_> = (0..2)
            .map(|_| {
                Command::new(env!("CARGO_BIN_EXE_fjt"))
                    .args(args)
                    .output()
                    .expect("fjt runs")
            })
            .collect();
        identical &= outputs[0].status.success()
            && outputs[0].stdout == outputs[1].stdout
            && !outputs[0].stdout.is_empty();
    }
    out.check(
        identical,
        format!("{} CLI invocations rerun byte-identically", runs.len()),
    );
    Ok(out)
}

fn main() {
    type Criterion = (u32, &'static str, Duration, fn() -> Result<Outcome>);
    let criteria: [Criterion; 10] = [
        (1, "lemma1 integral identity", Duration::from_secs(60), || {
            identity_suite(IdentityId::Lemma1)
        }),
        (2, "Laplace-K identity", Duration::from_secs(10), || {
            identity_suite(IdentityId::LaplaceK)
        }),
        (
            3,
            "Bessel-product kernel representation",
            Duration::from_secs(30),
            || identity_suite(IdentityId::BesselRepr),
        ),
        (
            4,
            "Hankel closed form",
            Duration::from_secs(60),
            criterion_4,
        ),
        (
            5,
            "sequence round trip",
            Duration::from_secs(120),
            criterion_5,
        ),
        (
            6,
            "function round trip, exact cases",
            Duration::from_secs(120),
            criterion_6,
        ),
        (
            7,
            "coefficient-path equivalence",
            Duration::from_secs(60),
            criterion_7,
        ),
        (
            8,
            "discrete biorthogonality",
            Duration::from_secs(60),
            criterion_8,
        ),
        (9, "bound suite", Duration::from_secs(10), criterion_9),
        (10, "property suite", Duration::from_secs(60), criterion_10),
    ];
    let mut failures = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (passed, details) = match result {
            Ok(o) => (o.passed, o.details),
            Err(e) => (false, vec![format!("FAIL error: {e}")]),
        };
        let in_time = elapsed <= budget;
        let passed = passed && in_time;
        if !passed {
            failures += 1;
        }
        println!(
            "criterion {id:>2}: {}  {name} ({:.2} s, budget {} s)",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        for d in details {
            println!("    {d}");
        }
        if !in_time {
            println!("    FAIL runtime budget exceeded");
        }
    }
    println!("acceptance: {} passed, {failures} failed", 10 - failures);
    if failures > 0 && std::env::var("FJT_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
