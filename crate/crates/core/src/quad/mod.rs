//! Quadrature engine: adaptive finite intervals, semi-infinite intervals with
//! algebraic or exponential tails, and oscillatory Bessel-type integrals.
//!
//! Every integrand is a fallible `Fn(f64) -> Result<f64>` so that special
//! function failures propagate instead of turning into NaNs. Integrands are
//! only ever sampled strictly inside the interval.

mod kronrod;
mod legendre;
mod oscillatory;
mod semi_infinite;

pub use kronrod::integrate_finite;
pub use legendre::{gauss_legendre, integrate_gauss_legendre};
pub use oscillatory::{bessel_zeros, integrate_bessel_oscillatory, integrate_bessel_truncated};
pub use semi_infinite::{decay_budget_radius, estimate_envelope, integrate_semi_infinite};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the semi-infinite integrator picks its truncation radius R.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TailCutoffPolicy {
    /// Integrate exactly up to R and bound the rest analytically.
    FixedRadius(f64),
    /// Choose R so that C·R^(s+1)/|s+1| ≤ ε; `None` means ε = abs_tol / 10.
    DecayBudget(Option<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Known algebraic decay rate s of the integrand: |f(x)| ≤ C x^s for large x.
    pub tail_exponent: Option<f64>,
    /// The envelope constant C; estimated by probing when absent.
    pub tail_envelope: Option<f64>,
    pub tail_cutoff_policy: TailCutoffPolicy,
    /// The integrand decays at least exponentially.
    pub exponential_decay: bool,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            max_subdivisions: 200,
            tail_exponent: None,
            tail_envelope: None,
            tail_cutoff_policy: TailCutoffPolicy::DecayBudget(None),
            exponential_decay: false,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }

    pub fn with_tail(mut self, exponent: f64, envelope: Option<f64>) -> Self {
        self.tail_exponent = Some(exponent);
        self.tail_envelope = envelope;
        self
    }

    pub fn with_policy(mut self, policy: TailCutoffPolicy) -> Self {
        self.tail_cutoff_policy = policy;
        self
    }

    pub fn exponential(mut self) -> Self {
        self.exponential_decay = true;
        self
    }

    /// Drops any tail metadata, for reuse of the tolerances on another integrand.
    pub fn without_tail(mut self) -> Self {
        self.tail_exponent = None;
        self.tail_envelope = None;
        self.exponential_decay = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::Config(format!(
                "tolerances must be positive (rel_tol = {}, abs_tol = {})",
                self.rel_tol, self.abs_tol
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::Config("max_subdivisions must be at least 1".into()));
        }
        match self.tail_cutoff_policy {
            TailCutoffPolicy::FixedRadius(r) if !(r > 1.0) || !r.is_finite() => Err(Error::Config(
                format!("fixed radius {r} must be finite and > 1"),
            )),
            TailCutoffPolicy::DecayBudget(Some(eps)) if !(eps > 0.0) => Err(Error::Config(
                format!("decay budget {eps} must be positive"),
            )),
            _ => Ok(()),
        }
    }

    pub(crate) fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadratureResult {
    /// The value, or a non-convergence error carrying the achieved estimate.
    pub fn require_converged(self, what: &'static str) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::NonConvergence {
                what,
                residual: self.error_estimate,
                iterations: self.evaluations,
            })
        }
    }

    pub(crate) fn combine(parts: &[QuadratureResult]) -> QuadratureResult {
        QuadratureResult {
            value: parts.iter().map(|p| p.value).sum(),
            error_estimate: parts.iter().map(|p| p.error_estimate).sum(),
            evaluations: parts.iter().map(|p| p.evaluations).sum(),
            converged: parts.iter().all(|p| p.converged),
        }
    }
}

pub(crate) fn checked(value: f64, abscissa: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Evaluation { abscissa })
    }
}
