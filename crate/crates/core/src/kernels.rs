//! Transform kernels and normalization constants.
//!
//! * F_n(x): the forward kernel, used by synthesis and analysis;
//! * G(x, u) = ₂F₁(c − a + 1/2, c − a + 1; c; −x²/cosh²u): the inverse kernel;
//! * Φ_n(x) = ∫_{−π}^{π} G(x, u) tanh(u) sin(nu) cosh(u)^(2(a−c)) du, computed
//!   as twice the integral over [0, π] with a memo cache;
//! * the prefactors of the coefficient inversion, the function
//!   reconstruction and the closed-form profile coefficients.

use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};
use std::sync::{LazyLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{integrate_gauss_legendre, QuadratureSpec};
use crate::specfun::{
    bessel_j, hyp2f1_inverse_kernel, hyp2f1_kernel, hyp2f1_kernel_envelope, log_gamma_abs_sq,
    log_gamma_real, JacobiParams, Regime,
};

const PHI_ORDER: usize = 10;
const PHI_MAX_PANELS: usize = 1 << 14;
const PHI_CACHE_LIMIT: usize = 1 << 20;
const LN_F64_MAX: f64 = 709.78;

fn require_index(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::domain(
            "kernels",
            "index n must be a positive integer",
        ));
    }
    Ok(())
}

/// F_n(x) = ₂F₁(a + in/2, a − in/2; c; −x²) for integer n ≥ 1.
pub fn forward_kernel(p: &JacobiParams, n: u32, x: f64) -> Result<f64> {
    require_index(n)?;
    hyp2f1_kernel(p, n as f64, x)
}

/// G(x, u) = ₂F₁(c − a + 1/2, c − a + 1; c; −x²/cosh²u); even in u.
pub fn inverse_kernel(p: &JacobiParams, x: f64, u: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() || !u.is_finite() {
        return Err(Error::domain(
            "inverse_kernel",
            format!("x = {x}, u = {u} must be finite with x >= 0"),
        ));
    }
    let r = x / u.cosh();
    hyp2f1_inverse_kernel(p, -r * r)
}

/// The Φ_n integrand G(x, u) tanh(u) sin(nu) cosh(u)^(2(a−c)); real n so the
/// sign flip n → −n can be observed directly.
pub fn phi_integrand(p: &JacobiParams, n: f64, x: f64, u: f64) -> Result<f64> {
    let g = inverse_kernel(p, x, u)?;
    Ok(g * u.tanh() * (n * u).sin() * u.cosh().powf(2.0 * (p.a() - p.c())))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiKernelRequest {
    pub params: JacobiParams,
    pub n: u32,
    pub x: f64,
    pub spec: QuadratureSpec,
}

impl PhiKernelRequest {
    pub fn new(params: JacobiParams, n: u32, x: f64, spec: QuadratureSpec) -> Self {
        PhiKernelRequest { params, n, x, spec }
    }

    fn validate(&self) -> Result<()> {
        self.params.require(Regime::InversionWithBoundary)?;
        require_index(self.n)?;
        if !(self.x >= 0.0) || !self.x.is_finite() {
            return Err(Error::domain(
                "phi_kernel",
                format!("x = {} must be finite and nonnegative", self.x),
            ));
        }
        self.spec.validate()
    }

    fn cache_key(&self) -> [u64; 6] {
        [
            self.params.a().to_bits(),
            self.params.c().to_bits(),
            self.n as u64,
            self.x.to_bits(),
            self.spec.rel_tol.to_bits(),
            self.spec.abs_tol.to_bits(),
        ]
    }
}

static PHI_CACHE: LazyLock<RwLock<HashMap<[u64; 6], f64>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Number of memoized Φ_n values.
pub fn phi_cache_len() -> usize {
    PHI_CACHE.read().map(|m| m.len()).unwrap_or(0)
}

pub fn clear_phi_cache() {
    if let Ok(mut m) = PHI_CACHE.write() {
        m.clear();
    }
}

/// Composite Gauss–Legendre over `lo..hi` with panel doubling until two
/// successive meshes agree to the spec tolerance.
fn phi_quadrature(req: &PhiKernelRequest, lo: f64, hi: f64, base_panels: usize) -> Result<f64> {
    let p = req.params;
    let n = req.n as f64;
    let f = |u: f64| phi_integrand(&p, n, req.x, u);
    let mut panels = base_panels;
    let mut coarse = integrate_gauss_legendre(f, lo, hi, panels, PHI_ORDER)?;
    loop {
        panels *= 2;
        let fine = integrate_gauss_legendre(f, lo, hi, panels, PHI_ORDER)?;
        let diff = (fine - coarse).abs();
        if diff <= req.spec.tolerance_for(fine) {
            return Ok(fine);
        }
        if panels >= PHI_MAX_PANELS {
            return Err(Error::NonConvergence {
                what: "phi kernel quadrature",
                residual: diff,
                iterations: panels,
            });
        }
        coarse = fine;
    }
}

fn base_panels(n: u32) -> usize {
    16usize.max(4 * n as usize)
}

/// Φ_n(x) = 2 ∫₀^π G(x, u) tanh(u) sin(nu) cosh(u)^(2(a−c)) du.
///
/// The mesh starts at max(16, 4n) Gauss–Legendre panels. Values are cached
/// per (a, c, n, x, tolerances).
pub fn phi_kernel(req: &PhiKernelRequest) -> Result<f64> {
    req.validate()?;
    let key = req.cache_key();
    if let Some(v) = PHI_CACHE.read().ok().and_then(|m| m.get(&key).copied()) {
        return Ok(v);
    }
    let value = 2.0 * phi_quadrature(req, 0.0, PI, base_panels(req.n))?;
    if let Ok(mut m) = PHI_CACHE.write() {
        if m.len() >= PHI_CACHE_LIMIT {
            m.clear();
        }
        m.insert(key, value);
    }
    Ok(value)
}

/// Φ_n(x) integrated over the full interval [−π, π] without using parity.
pub fn phi_kernel_full_interval(req: &PhiKernelRequest) -> Result<f64> {
    req.validate()?;
    phi_quadrature(req, -PI, PI, 2 * base_panels(req.n))
}

/// The three prefactors for index n, with their natural logarithms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizationConstants {
    /// Coefficient inversion: a_n = C₁ ∫₀^∞ x^(2c−1) Φ_n(x) f(x) dx.
    pub theorem1_prefactor: f64,
    /// Reconstruction: f(x) = C₂ x^(2c−1) Σ sinh(πn)|Γ(a + in/2)|² Φ_n(x) a_n.
    pub theorem2_prefactor: f64,
    /// Closed-form coefficients: a_n = C₃ ∫_{−π}^{π} φ(u) sin(nu)/sinh(u) du.
    pub closed_coeff_prefactor: f64,
    pub ln_theorem1: f64,
    pub ln_theorem2: f64,
    pub ln_closed_coeff: f64,
}

/// ln sinh(πn) for n > 0, stable for large n.
pub fn ln_sinh_pi(n: f64) -> f64 {
    let t = PI * n;
    t + (-(-2.0 * t).exp()).ln_1p() - LN_2
}

fn exp_checked(what: &'static str, ln: f64) -> Result<f64> {
    if ln.abs() > LN_F64_MAX || !ln.is_finite() {
        return Err(Error::Overflow {
            what,
            log_magnitude: ln,
        });
    }
    Ok(ln.exp())
}

/// Normalization constants for index n, assembled in log space.
///
/// * C₁ = 4^(a−c) Γ(2(c−a)+1) |Γ(a + in/2)|² sinh(πn) / (π² Γ(c)²)
/// * C₂ = 4^(a−c) Γ(2(c−a)+1) / (π Γ(c))²
/// * C₃ = 2^(2(c−a)) π Γ(c)² / (Γ(2(c−a)+1) sinh(πn) |Γ(a + in/2)|²)
///
/// so that C₁ C₃ = 1/π and C₁ / C₂ = sinh(πn) |Γ(a + in/2)|².
pub fn normalization(p: &JacobiParams, n: u32) -> Result<NormalizationConstants> {
    p.require(Regime::InversionWithBoundary)?;
    require_index(n)?;
    let (a, c) = (p.a(), p.c());
    let nf = n as f64;
    let ln_g2 = log_gamma_real(2.0 * (c - a) + 1.0)?;
    let ln_gc = log_gamma_real(c)?;
    let ln_abs = log_gamma_abs_sq(a, nf)?;
    let ln_sh = ln_sinh_pi(nf);
    let ln_pi = PI.ln();
    let ln_4 = 2.0 * LN_2;

    let ln_theorem2 = (a - c) * ln_4 + ln_g2 - 2.0 * (ln_pi + ln_gc);
    let ln_theorem1 = ln_theorem2 + ln_abs + ln_sh;
    let ln_closed_coeff = 2.0 * (c - a) * LN_2 + ln_pi + 2.0 * ln_gc - ln_g2 - ln_sh - ln_abs;
    Ok(NormalizationConstants {
        theorem1_prefactor: exp_checked("coefficient-inversion prefactor", ln_theorem1)?,
        theorem2_prefactor: exp_checked("reconstruction prefactor", ln_theorem2)?,
        closed_coeff_prefactor: exp_checked("closed-form coefficient prefactor", ln_closed_coeff)?,
        ln_theorem1,
        ln_theorem2,
        ln_closed_coeff,
    })
}

/// Empirical A_ν = sup over t > 0 of √t |J_ν(t)|, at least the asymptotic
/// amplitude √(2/π).
pub fn bessel_envelope_constant(nu: f64) -> Result<f64> {
    static CACHE: LazyLock<RwLock<HashMap<u64, f64>>> =
        LazyLock::new(|| RwLock::new(HashMap::new()));
    if let Some(v) = CACHE
        .read()
        .ok()
        .and_then(|m| m.get(&nu.to_bits()).copied())
    {
        return Ok(v);
    }
    let mut sup = (2.0 / PI).sqrt();
    for k in 1..=8000 {
        let t = k as f64 * 0.01;
        sup = sup.max(t.sqrt() * bessel_j(nu, t)?.abs());
    }
    if let Ok(mut m) = CACHE.write() {
        m.insert(nu.to_bits(), sup);
    }
    Ok(sup)
}

/// The constant B(δ) in |F_n(x)| ≤ B x^(1/2−c) e^(−δn) / |Γ(a + in/2)|²:
///
/// B = Γ(c) A_{c−1} |Γ(a − c/2 + 1/4)|² / (√2 cos(δ)^(2a − c + 1/2)).
///
/// Requires 1/2 ≤ c < 2a + 1/2 and 0 ≤ δ < π/2.
pub fn kernel_bound_constant(p: &JacobiParams, delta: f64) -> Result<f64> {
    let (a, c) = (p.a(), p.c());
    if !(c >= 0.5 && c < 2.0 * a + 0.5) {
        return Err(Error::Regime {
            a,
            c,
            condition: "1/2 <= c < 2a + 1/2",
        });
    }
    if !(0.0..PI / 2.0).contains(&delta) {
        return Err(Error::domain(
            "kernel_bound_constant",
            format!("delta = {delta} must lie in [0, pi/2)"),
        ));
    }
    let s = a - 0.5 * c + 0.25;
    let ln_b =
        log_gamma_real(c)? + 2.0 * log_gamma_real(s)? - 0.5 * LN_2 - 2.0 * s * delta.cos().ln();
    Ok(bessel_envelope_constant(c - 1.0)? * ln_b.exp())
}

/// Decay exponents fitted by doubling x over 10 → 20 → 40.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayCheck {
    pub forward_expected: f64,
    /// From the connection-formula envelope of F_n.
    pub forward_measured: [f64; 2],
    pub inverse_expected: f64,
    /// From |G(x, 0)|.
    pub inverse_measured: [f64; 2],
    /// From Φ_n(40) / Φ_n(20).
    pub phi_measured: f64,
}

impl DecayCheck {
    /// Whether every measured exponent lies within `rel` (relative) of its
    /// expected value.
    pub fn within(&self, rel: f64) -> bool {
        let ok = |m: f64, s: f64| (m - s).abs() <= rel * s.abs();
        self.forward_measured
            .iter()
            .all(|&m| ok(m, self.forward_expected))
            && self
                .inverse_measured
                .iter()
                .all(|&m| ok(m, self.inverse_expected))
            && ok(self.phi_measured, self.inverse_expected)
    }
}

pub fn measure_decay(p: &JacobiParams, n: u32, spec: &QuadratureSpec) -> Result<DecayCheck> {
    require_index(n)?;
    let d = p.decay();
    let fit = |g: &dyn Fn(f64) -> Result<f64>| -> Result<[f64; 2]> {
        let v = [g(10.0)?.abs(), g(20.0)?.abs(), g(40.0)?.abs()];
        Ok([(v[1] / v[0]).log2(), (v[2] / v[1]).log2()])
    };
    let forward_measured = fit(&|x| hyp2f1_kernel_envelope(p, n as f64, x))?;
    let inverse_measured = fit(&|x| hyp2f1_inverse_kernel(p, -x * x))?;
    let phi = |x: f64| phi_kernel(&PhiKernelRequest::new(*p, n, x, spec.clone()));
    let phi_measured = (phi(40.0)? / phi(20.0)?).abs().log2();
    Ok(DecayCheck {
        forward_expected: d.exponent_forward,
        forward_measured,
        inverse_expected: d.exponent_inverse,
        inverse_measured,
        phi_measured,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma_abs_sq;
    use approx::assert_relative_eq;

    fn p() -> JacobiParams {
        JacobiParams::new(0.75, 1.2).unwrap()
    }

    fn req(n: u32, x: f64) -> PhiKernelRequest {
        PhiKernelRequest::new(
            p(),
            n,
            x,
            QuadratureSpec::default()
                .with_rel_tol(1e-12)
                .with_abs_tol(1e-14),
        )
    }

    #[test]
    fn forward_kernel_rejects_zero_index() {
        assert!(forward_kernel(&p(), 0, 1.0).is_err());
        assert_eq!(forward_kernel(&p(), 3, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn inverse_kernel_parity_and_origin() {
        for &u in &[0.0, 0.4, 2.0] {
            assert_eq!(inverse_kernel(&p(), 0.0, u).unwrap(), 1.0);
            assert_eq!(
                inverse_kernel(&p(), 1.3, u).unwrap(),
                inverse_kernel(&p(), 1.3, -u).unwrap()
            );
        }
        assert_eq!(
            inverse_kernel(&p(), 1.0, 0.0).unwrap(),
            hyp2f1_inverse_kernel(&p(), -1.0).unwrap()
        );
    }

    #[test]
    fn phi_parity_reduction() {
        for &(n, x) in &[(1, 0.0), (2, 0.7), (3, 4.0)] {
            let half = phi_kernel(&req(n, x)).unwrap();
            let full = phi_kernel_full_interval(&req(n, x)).unwrap();
            assert_relative_eq!(half, full, max_relative = 1e-11, epsilon = 1e-14);
        }
    }

    #[test]
    fn phi_integrand_is_odd_in_index() {
        for &u in &[0.3, 1.1, 2.9] {
            let plus = phi_integrand(&p(), 2.0, 1.0, u).unwrap();
            let minus = phi_integrand(&p(), -2.0, 1.0, u).unwrap();
            assert_eq!(plus, -minus);
        }
    }

    #[test]
    fn phi_cache_returns_identical_values() {
        let r = req(2, 0.123_456);
        let first = phi_kernel(&r).unwrap();
        assert!(phi_cache_len() >= 1);
        assert_eq!(first.to_bits(), phi_kernel(&r).unwrap().to_bits());
    }

    #[test]
    fn prefactor_relations() {
        for n in 1..=20 {
            let k = normalization(&p(), n).unwrap();
            assert_relative_eq!(
                k.theorem1_prefactor * k.closed_coeff_prefactor,
                1.0 / PI,
                max_relative = 1e-12
            );
            let ratio = (PI * n as f64).sinh() * gamma_abs_sq(0.75, n as f64).unwrap();
            assert_relative_eq!(
                k.theorem1_prefactor / k.theorem2_prefactor,
                ratio,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn log_space_matches_direct_assembly_at_n1() {
        let (a, c) = (0.75f64, 1.2f64);
        let g = |x: f64| log_gamma_real(x).unwrap().exp();
        let direct =
            4f64.powf(a - c) * g(2.0 * (c - a) + 1.0) * gamma_abs_sq(a, 1.0).unwrap() * PI.sinh()
                / (PI * PI * g(c) * g(c));
        assert_relative_eq!(
            normalization(&p(), 1).unwrap().theorem1_prefactor,
            direct,
            max_relative = 1e-13
        );
    }

    #[test]
    fn large_index_is_finite_then_overflows() {
        for n in [50, 100, 300] {
            let k = normalization(&p(), n).unwrap();
            assert!(k.theorem1_prefactor.is_finite() && k.theorem1_prefactor > 0.0);
            assert!(k.closed_coeff_prefactor > 0.0);
        }
        assert!(matches!(
            normalization(&p(), 1000),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn bound_constant_grows_with_delta() {
        let b0 = kernel_bound_constant(&p(), 0.0).unwrap();
        let b1 = kernel_bound_constant(&p(), 1.0).unwrap();
        assert!(b0 > 0.0 && b1 > b0);
        assert!(kernel_bound_constant(&p(), 1.6).is_err());
        assert!(bessel_envelope_constant(-0.5).unwrap() >= (2.0 / PI).sqrt());
    }

    #[test]
    fn regime_is_enforced() {
        let bad = JacobiParams::new(0.75, 0.4).unwrap();
        assert!(matches!(normalization(&bad, 1), Err(Error::Regime { .. })));
    }
}
