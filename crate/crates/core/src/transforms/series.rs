use serde::Serialize;

use super::coefficients::CoefficientSequence;
use super::functions::RealFunction;
use crate::error::{Error, Result};
use crate::kernels::{
    forward_kernel, kernel_bound_constant, normalization, phi_kernel, PhiKernelRequest,
};
use crate::quad::{integrate_semi_infinite, QuadratureResult, QuadratureSpec};
use crate::specfun::{JacobiParams, Regime};

const LN_F64_MAX: f64 = 709.78;

/// A truncated series value with the bound on the neglected terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Synthesis {
    pub value: f64,
    /// Bound on |Σ_{m>N} a_m F_m(x)| from the kernel estimate and a geometric
    /// extrapolation of the weighted coefficients; infinite when unavailable.
    pub tail_bound: f64,
}

/// f(x) = Σ_{n=1}^{N} a_n F_n(x).
pub fn synthesize(coeffs: &CoefficientSequence, x: f64) -> Result<Synthesis> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "synthesize",
            format!("x = {x} must be positive"),
        ));
    }
    let p = coeffs.params();
    let mut value = 0.0;
    for (i, &a) in coeffs.values().iter().enumerate() {
        if a != 0.0 {
            value += a * forward_kernel(&p, (i + 1) as u32, x)?;
        }
    }
    let tail_bound = match coeffs.diagnostics() {
        Ok(d) if d.tail_estimate == 0.0 => 0.0,
        Ok(d) => match kernel_bound_constant(&p, coeffs.decay_delta()) {
            Ok(b) => b * x.powf(0.5 - p.c()) * d.tail_estimate,
            Err(_) => f64::INFINITY,
        },
        Err(_) => f64::INFINITY,
    };
    Ok(Synthesis { value, tail_bound })
}

/// The synthesized series as a [`RealFunction`], decaying like x^(−2a).
pub fn synthesized_function(coeffs: &CoefficientSequence) -> RealFunction {
    let c = coeffs.clone();
    let decay = c.params().decay().exponent_forward;
    let note = format!("series with {} forward-kernel terms", c.len());
    RealFunction::new(
        move |x| {
            if x == 0.0 {
                Ok(c.values().iter().sum())
            } else {
                synthesize(&c, x).map(|s| s.value)
            }
        },
        Some(decay),
        note,
    )
}

fn composed_spec(spec: &QuadratureSpec, decay: Option<f64>) -> QuadratureSpec {
    match decay {
        Some(s) => spec.clone().with_tail(s, None),
        None => spec.clone().without_tail(),
    }
}

/// The analysis integral a_n = ∫₀^∞ F_n(x) f(x) dx.
pub fn analyze(f: &RealFunction, p: &JacobiParams, n: u32, spec: &QuadratureSpec) -> Result<f64> {
    analyze_detailed(f, p, n, spec)?.require_converged("analysis integral")
}

/// [`analyze`] returning the full quadrature record.
pub fn analyze_detailed(
    f: &RealFunction,
    p: &JacobiParams,
    n: u32,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    if f.is_known_zero() {
        forward_kernel(p, n, 1.0)?;
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        });
    }
    let decay = f.decay_exponent().map(|s| s + p.decay().exponent_forward);
    if let Some(s) = decay {
        if s >= -1.0 {
            return Err(Error::Divergence { exponent: s });
        }
    }
    integrate_semi_infinite(
        |x| Ok(forward_kernel(p, n, x)? * f.evaluate(x)?),
        &composed_spec(spec, decay),
    )
}

/// Tolerances for the inner Φ_n quadrature, two digits tighter than the
/// outer ones.
pub(crate) fn phi_spec(spec: &QuadratureSpec) -> QuadratureSpec {
    QuadratureSpec::default()
        .with_rel_tol((spec.rel_tol * 1e-2).max(1e-14))
        .with_abs_tol((spec.abs_tol * 1e-2).max(1e-16))
}

/// The coefficient inversion a_n = C₁(n) ∫₀^∞ x^(2c−1) Φ_n(x) f(x) dx.
///
/// `spec` tolerances refer to the recovered coefficient; the integral itself
/// is computed to abs_tol / C₁(n).
pub fn invert_coefficients(
    f: &RealFunction,
    p: &JacobiParams,
    n: u32,
    spec: &QuadratureSpec,
) -> Result<f64> {
    invert_coefficients_detailed(f, p, n, spec)?.require_converged("coefficient inversion")
}

/// [`invert_coefficients`] returning the full quadrature record, scaled by C₁(n).
pub fn invert_coefficients_detailed(
    f: &RealFunction,
    p: &JacobiParams,
    n: u32,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    p.require(Regime::InversionWithBoundary)?;
    let k = normalization(p, n)?;
    if f.is_known_zero() {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        });
    }
    let c = p.c();
    let d = p.decay();
    let decay = f
        .decay_exponent()
        .map(|s| 2.0 * c - 1.0 + d.exponent_inverse + s);
    if let Some(s) = decay {
        if s >= -1.0 {
            return Err(Error::Divergence { exponent: s });
        }
    }
    let inner = phi_spec(spec);
    let outer = composed_spec(spec, decay).with_abs_tol(spec.abs_tol / k.theorem1_prefactor);
    let r = integrate_semi_infinite(
        |x| {
            if x == 0.0 {
                return Ok(0.0);
            }
            let phi = phi_kernel(&PhiKernelRequest::new(*p, n, x, inner.clone()))?;
            Ok(x.powf(2.0 * c - 1.0) * phi * f.evaluate(x)?)
        },
        &outer,
    )?;
    Ok(QuadratureResult {
        value: k.theorem1_prefactor * r.value,
        error_estimate: k.theorem1_prefactor * r.error_estimate,
        ..r
    })
}

/// One term of the reconstruction series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReconstructionTerm {
    pub n: u32,
    pub phi: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reconstruction {
    pub value: f64,
    pub terms: Vec<ReconstructionTerm>,
    /// Set when the last term exceeds 10% of the partial sum.
    pub warning: Option<String>,
}

/// f(x) ≈ C₂ x^(2c−1) Σ_{n=1}^{N} sinh(πn) |Γ(a + in/2)|² Φ_n(x) a_n.
pub fn reconstruct(
    coeffs: &CoefficientSequence,
    p: &JacobiParams,
    x: f64,
    terms: usize,
    spec: &QuadratureSpec,
) -> Result<Reconstruction> {
    p.require(Regime::InversionWithBoundary)?;
    if coeffs.params() != *p {
        return Err(Error::Config(
            "coefficient sequence was built for different parameters".into(),
        ));
    }
    if terms == 0 || terms > coeffs.len() {
        return Err(Error::Config(format!(
            "term count {terms} must lie in 1..={}",
            coeffs.len()
        )));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "reconstruct",
            format!("x = {x} must be finite and nonnegative"),
        ));
    }
    let weight = x.powf(2.0 * p.c() - 1.0);
    let inner = phi_spec(spec);
    let mut out = Vec::with_capacity(terms);
    let mut sum = 0.0;
    for n in 1..=terms as u32 {
        let a = coeffs.values()[n as usize - 1];
        let k = normalization(p, n)?;
        if a != 0.0 && k.ln_theorem1 + a.abs().ln() > LN_F64_MAX {
            return Err(Error::Overflow {
                what: "reconstruction term",
                log_magnitude: k.ln_theorem1 + a.abs().ln(),
            });
        }
        let (phi, value) = if a == 0.0 || weight == 0.0 {
            (0.0, 0.0)
        } else {
            let phi = phi_kernel(&PhiKernelRequest::new(*p, n, x, inner.clone()))?;
            (phi, k.theorem1_prefactor * a * phi * weight)
        };
        sum += value;
        out.push(ReconstructionTerm { n, phi, value });
    }
    let last = out.last().map(|t| t.value.abs()).unwrap_or(0.0);
    let warning = (last > 0.1 * sum.abs() && terms > 1)
        .then(|| format!("last term {last:e} exceeds 10% of the partial sum {sum:e}; N = {terms} may be too small"));
    Ok(Reconstruction {
        value: sum,
        terms: out,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::hyp2f1_kernel;

    fn p() -> JacobiParams {
        JacobiParams::new(0.75, 1.2).unwrap()
    }

    #[test]
    fn zero_and_single_term_synthesis() {
        let z = CoefficientSequence::zeros(p(), 4).unwrap();
        assert_eq!(synthesize(&z, 1.3).unwrap().value, 0.0);
        let one = CoefficientSequence::new(vec![1.0], p(), 0.0).unwrap();
        assert_eq!(
            synthesize(&one, 0.7).unwrap().value,
            hyp2f1_kernel(&p(), 1.0, 0.7).unwrap()
        );
    }

    #[test]
    fn truncation_bound_covers_the_neglected_terms() {
        let long = CoefficientSequence::exponential_default(p(), 30).unwrap();
        let short = CoefficientSequence::exponential_default(p(), 8).unwrap();
        let (full, part) = (
            synthesize(&long, 1.0).unwrap(),
            synthesize(&short, 1.0).unwrap(),
        );
        let gap = (full.value - part.value).abs();
        assert!(gap < 1e-8, "{gap}");
        assert!(
            part.tail_bound >= gap && part.tail_bound < 1e-5,
            "{} vs {gap}",
            part.tail_bound
        );
    }

    #[test]
    fn analysis_refuses_slow_decay() {
        let f = RealFunction::new(Ok, Some(1.0), "linear");
        assert!(matches!(
            analyze(&f, &p(), 1, &QuadratureSpec::default()),
            Err(Error::Divergence { .. })
        ));
        assert_eq!(
            analyze(&RealFunction::zero(), &p(), 1, &QuadratureSpec::default()).unwrap(),
            0.0
        );
        assert_eq!(
            invert_coefficients(&RealFunction::zero(), &p(), 2, &QuadratureSpec::default())
                .unwrap(),
            0.0
        );
    }

    #[test]
    fn reconstruct_zero_and_origin() {
        let z = CoefficientSequence::zeros(p(), 3).unwrap();
        let r = reconstruct(&z, &p(), 1.0, 3, &QuadratureSpec::default()).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.warning.is_none());
        let d = CoefficientSequence::exponential_default(p(), 3).unwrap();
        assert_eq!(
            reconstruct(&d, &p(), 0.0, 3, &QuadratureSpec::default())
                .unwrap()
                .value,
            0.0
        );
        assert!(reconstruct(&d, &p(), 1.0, 4, &QuadratureSpec::default()).is_err());
    }
}
