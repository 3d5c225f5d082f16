use super::{integrate_finite, QuadratureResult, QuadratureSpec, TailCutoffPolicy};
use crate::error::{Error, Result};

const DOUBLING_START: f64 = 16.0;
const DOUBLING_LIMIT: f64 = 1e300;
const ENVELOPE_PROBES: usize = 12;

/// Estimates C in |f(x)| ≤ C·x^s from geometric probes on [10, 10⁴],
/// doubled for safety.
pub fn estimate_envelope<F>(f: &F, exponent: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut c: f64 = 0.0;
    for k in 0..ENVELOPE_PROBES {
        let x = 10.0 * 1e3f64.powf(k as f64 / (ENVELOPE_PROBES - 1) as f64);
        let v = f(x)?;
        if !v.is_finite() {
            return Err(Error::Evaluation { abscissa: x });
        }
        c = c.max(v.abs() * x.powf(-exponent));
    }
    Ok(2.0 * c)
}

/// The radius R solving C·R^(s+1)/|s+1| = ε, never below 1.
pub fn decay_budget_radius(exponent: f64, envelope: f64, budget: f64) -> Result<f64> {
    if exponent >= -1.0 {
        return Err(Error::Divergence { exponent });
    }
    if envelope <= 0.0 {
        return Ok(1.0);
    }
    let p = exponent + 1.0;
    let r = (budget * p.abs() / envelope).powf(1.0 / p);
    Ok(r.max(1.0))
}

fn tail_bound(exponent: f64, envelope: f64, r: f64) -> f64 {
    let p = exponent + 1.0;
    envelope * r.powf(p) / p.abs()
}

/// ∫_lo^hi f(x) dx through x = e^t, which keeps algebraic tails and
/// oscillation in ln x well resolved.
fn integrate_log<F>(f: &F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<f64>,
{
    integrate_finite(
        |t| {
            let x = t.exp();
            Ok(f(x)? * x)
        },
        lo.ln(),
        hi.ln(),
        spec,
    )
}

/// ∫₀^∞ f(x) dx.
///
/// [0, 1] is integrated adaptively; [1, R] in the variable ln x. With an
/// algebraic tail exponent s < −1, R follows the spec's cutoff policy and
/// the analytic tail bound joins the error estimate. With exponential decay
/// or no metadata, R doubles from 16 until two consecutive panels fall
/// below abs_tol / 10.
pub fn integrate_semi_infinite<F>(f: F, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<f64>,
{
    spec.validate()?;
    if let (Some(s), false) = (spec.tail_exponent, spec.exponential_decay) {
        if s >= -1.0 {
            return Err(Error::Divergence { exponent: s });
        }
    }
    let part_spec = spec.clone().with_abs_tol(spec.abs_tol / 3.0);
    let head = integrate_finite(&f, 0.0, 1.0, &part_spec)?;

    match (
        spec.tail_exponent,
        spec.exponential_decay,
        spec.tail_cutoff_policy,
    ) {
        (Some(s), false, policy) => {
            let envelope = match spec.tail_envelope {
                Some(c) => c,
                None => estimate_envelope(&f, s)?,
            };
            let r = match policy {
                TailCutoffPolicy::FixedRadius(r) => r,
                TailCutoffPolicy::DecayBudget(eps) => {
                    decay_budget_radius(s, envelope, eps.unwrap_or(spec.abs_tol / 10.0))?
                }
            };
            let body = if r > 1.0 {
                integrate_log(&f, 1.0, r, &part_spec)?
            } else {
                QuadratureResult {
                    value: 0.0,
                    error_estimate: 0.0,
                    evaluations: 0,
                    converged: true,
                }
            };
            let tail = tail_bound(s, envelope, r);
            let mut total = QuadratureResult::combine(&[head, body]);
            total.error_estimate += tail;
            total.converged &= tail <= spec.tolerance_for(total.value);
            Ok(total)
        }
        (_, _, TailCutoffPolicy::FixedRadius(r)) => {
            let body = integrate_log(&f, 1.0, r, &part_spec)?;
            Ok(QuadratureResult::combine(&[head, body]))
        }
        _ => {
            let mut parts = vec![head, integrate_log(&f, 1.0, DOUBLING_START, &part_spec)?];
            let mut lo = DOUBLING_START;
            let mut quiet = 0;
            while quiet < 2 {
                if lo > DOUBLING_LIMIT {
                    let mut total = QuadratureResult::combine(&parts);
                    total.converged = false;
                    return Ok(total);
                }
                let panel = integrate_log(&f, lo, 2.0 * lo, &part_spec)?;
                quiet = if panel.value.abs() + panel.error_estimate < spec.abs_tol / 10.0 {
                    quiet + 1
                } else {
                    0
                };
                parts.push(panel);
                lo *= 2.0;
            }
            Ok(QuadratureResult::combine(&parts))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
            .with_rel_tol(1e-11)
            .with_abs_tol(1e-13)
    }

    #[test]
    fn exponential_integrand() {
        let r = integrate_semi_infinite(|x| Ok((-x).exp()), &spec().exponential()).unwrap();
        assert!(r.converged);
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn algebraic_integrand_with_metadata() {
        let r = integrate_semi_infinite(
            |x| Ok(1.0 / (1.0 + x * x)),
            &spec().with_tail(-2.0, Some(1.0)),
        )
        .unwrap();
        assert!(r.converged);
        assert!((r.value - PI / 2.0).abs() < 1e-11, "{}", r.value);
    }

    #[test]
    fn algebraic_integrand_without_metadata_uses_doubling() {
        let r = integrate_semi_infinite(|x| Ok(1.0 / (1.0 + x * x).powi(2)), &spec()).unwrap();
        assert!((r.value - PI / 4.0).abs() < 1e-11);
    }

    #[test]
    fn divergent_exponent_is_rejected() {
        let err = integrate_semi_infinite(|x| Ok(1.0 / (1.0 + x)), &spec().with_tail(-1.0, None))
            .unwrap_err();
        assert_eq!(err, Error::Divergence { exponent: -1.0 });
    }

    #[test]
    fn budget_radius_meets_tail_inequality() {
        for &s in &[-1.5, -2.0, -3.5] {
            let budget = 1e-9;
            let c = estimate_envelope(&|x: f64| Ok(x.powf(s)), s).unwrap();
            let r = decay_budget_radius(s, c, budget).unwrap();
            let actual_tail = r.powf(s + 1.0) / (s + 1.0).abs();
            assert!(
                actual_tail <= budget && actual_tail >= 0.5 * budget * (1.0 - 1e-9),
                "s = {s}"
            );
        }
    }
}
