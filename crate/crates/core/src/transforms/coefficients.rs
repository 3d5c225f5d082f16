use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{log_gamma_abs_sq, JacobiParams};

/// Coefficients a_1..a_N of a series in the forward kernels, with the decay
/// budget δ of the summability condition Σ |a_m| e^(−δm) / |Γ(a + im/2)|² < ∞.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientSequence {
    values: Vec<f64>,
    params: JacobiParams,
    decay_delta: f64,
}

/// Empirical view of the summability condition on the stored terms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayDiagnostics {
    /// |a_m| e^(−δm) / |Γ(a + im/2)|² for m = 1..N.
    pub weights: Vec<f64>,
    pub weighted_sum: f64,
    pub last_quartile: f64,
    pub previous_quartile: f64,
    pub contracting: bool,
    /// Geometric extrapolation of the weights beyond N, when they shrink.
    pub tail_estimate: f64,
}

impl CoefficientSequence {
    /// Validates δ ∈ [0, π/2), finiteness, and the decay proxy: the weighted
    /// sum over the last quartile of indices must not exceed the sum over
    /// the quartile before it. Sequences shorter than four terms pass.
    pub fn new(values: Vec<f64>, params: JacobiParams, decay_delta: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::DecayCondition {
                detail: "empty coefficient sequence".into(),
            });
        }
        if !(0.0..PI / 2.0).contains(&decay_delta) {
            return Err(Error::DecayCondition {
                detail: format!("delta = {decay_delta} must lie in [0, pi/2)"),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::DecayCondition {
                detail: format!("a_{} is not finite", i + 1),
            });
        }
        let seq = CoefficientSequence {
            values,
            params,
            decay_delta,
        };
        let d = seq.diagnostics()?;
        if !d.contracting {
            return Err(Error::DecayCondition {
                detail: format!(
                    "last-quartile weighted sum {:e} exceeds the preceding quartile's {:e}",
                    d.last_quartile, d.previous_quartile
                ),
            });
        }
        Ok(seq)
    }

    /// a_n = e^(−2n) |Γ(a + in/2)|² for n = 1..N, with δ = 0.
    pub fn exponential_default(params: JacobiParams, len: usize) -> Result<Self> {
        let values = (1..=len)
            .map(|n| Ok((-2.0 * n as f64 + log_gamma_abs_sq(params.a(), n as f64)?).exp()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(values, params, 0.0)
    }

    pub fn zeros(params: JacobiParams, len: usize) -> Result<Self> {
        Self::new(vec![0.0; len.max(1)], params, 0.0)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn params(&self) -> JacobiParams {
        self.params
    }

    pub fn decay_delta(&self) -> f64 {
        self.decay_delta
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// a_n for 1-based n.
    pub fn get(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn diagnostics(&self) -> Result<DecayDiagnostics> {
        let a = self.params.a();
        let weights = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let m = (i + 1) as f64;
                if v == 0.0 {
                    return Ok(0.0);
                }
                Ok((v.abs().ln() - self.decay_delta * m - log_gamma_abs_sq(a, m)?).exp())
            })
            .collect::<Result<Vec<_>>>()?;
        let n = weights.len();
        let weighted_sum: f64 = weights.iter().sum();
        let (last_quartile, previous_quartile, contracting) = if n < 4 {
            (0.0, 0.0, true)
        } else {
            let q = n / 4;
            let last: f64 = weights[n - q..].iter().sum();
            let prev: f64 = weights[n - 2 * q..n - q].iter().sum();
            let negligible = last <= 1e-12 * weighted_sum;
            (last, prev, last <= prev || negligible)
        };
        let tail_estimate = match weights.as_slice() {
            [.., w1, w2] if *w1 > 0.0 && *w2 < *w1 => {
                let r = w2 / w1;
                w2 * r / (1.0 - r)
            }
            [.., w] if *w == 0.0 => 0.0,
            _ => f64::INFINITY,
        };
        Ok(DecayDiagnostics {
            weights,
            weighted_sum,
            last_quartile,
            previous_quartile,
            contracting,
            tail_estimate,
        })
    }

    /// Elementwise α·self + β·other; both must share parameters and length.
    pub fn linear_combination(&self, alpha: f64, other: &Self, beta: f64) -> Result<Self> {
        if self.params != other.params || self.len() != other.len() {
            return Err(Error::Config(
                "linear combination of incompatible sequences".into(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| alpha * x + beta * y)
            .collect();
        Self::new(values, self.params, self.decay_delta.max(other.decay_delta))
    }
}
