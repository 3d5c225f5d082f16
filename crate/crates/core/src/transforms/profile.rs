use super::functions::{ProfileFunction, RealFunction};
use crate::error::Result;
use crate::kernels::{inverse_kernel, normalization};
use crate::quad::{integrate_finite, QuadratureResult, QuadratureSpec};
use crate::specfun::{JacobiParams, Regime};

fn integrate_pieces<F>(f: F, nodes: &[f64], spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<f64>,
{
    let parts = nodes
        .windows(2)
        .map(|w| integrate_finite(&f, w[0], w[1], spec))
        .collect::<Result<Vec<_>>>()?;
    Ok(QuadratureResult::combine(&parts))
}

/// The function generated by a profile ψ:
///
/// f(x) = x^(2c−1) ∫_{−π}^{π} G(x, u) ψ(u) sinh(u) / cosh(u)^(2(c−a)+1) du,
///
/// evaluated as twice the integral of the odd part of ψ over [0, π], split at
/// the profile's breakpoints. Decays like x^(2a−2).
pub fn build_profile_function(
    psi: &ProfileFunction,
    p: &JacobiParams,
    spec: &QuadratureSpec,
) -> Result<RealFunction> {
    p.require(Regime::InversionWithBoundary)?;
    psi.check()?;
    let psi = psi.clone();
    let params = *p;
    let inner = spec
        .clone()
        .without_tail()
        .with_abs_tol((spec.abs_tol * 1e-2).max(1e-300));
    let nodes = psi.half_interval_nodes();
    let (a, c) = (p.a(), p.c());
    let power = 2.0 * (c - a) + 1.0;
    let decay = 2.0 * c - 1.0 + p.decay().exponent_inverse;
    let note = format!("profile-class function of '{}'", psi.name());
    Ok(RealFunction::new(
        move |x| {
            let weight = x.powf(2.0 * c - 1.0);
            if weight == 0.0 {
                return Ok(0.0);
            }
            let r = integrate_pieces(
                |u| {
                    Ok(inverse_kernel(&params, x, u)? * psi.odd_part(u) * u.sinh()
                        / u.cosh().powf(power))
                },
                &nodes,
                &inner,
            )?;
            Ok(2.0 * weight * r.require_converged("profile function integral")?)
        },
        Some(decay),
        note,
    ))
}

/// Closed-form coefficients of a profile-class function:
///
/// a_n = C₃(n) ∫_{−π}^{π} ψ(u) sin(nu) du,
///
/// with C₃ the closed-form prefactor of [`crate::kernels::normalization`].
pub fn closed_form_coefficients(
    psi: &ProfileFunction,
    p: &JacobiParams,
    n: u32,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let k = normalization(p, n)?;
    let nf = n as f64;
    let inner = spec
        .clone()
        .without_tail()
        .with_abs_tol(spec.abs_tol / k.closed_coeff_prefactor);
    let r = integrate_pieces(
        |u| Ok(psi.odd_part(u) * (nf * u).sin()),
        &psi.half_interval_nodes(),
        &inner,
    )?;
    let integral = 2.0 * r.require_converged("closed-form coefficient integral")?;
    Ok(k.closed_coeff_prefactor * integral)
}
