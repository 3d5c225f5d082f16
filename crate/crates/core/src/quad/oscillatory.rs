use std::f64::consts::PI;

use super::{integrate_finite, QuadratureResult, QuadratureSpec};
use crate::error::{Error, Result};
use crate::specfun::{bessel_j, bessel_j_with_derivative};

const MIN_PANELS: usize = 8;
const MAX_PANELS: usize = 600;
const MAX_AVERAGING: usize = 20;

fn mcmahon(nu: f64, k: usize) -> f64 {
    let mu = 4.0 * nu * nu;
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
}

struct ZeroIter {
    nu: f64,
    k: usize,
    prev: f64,
}

impl Iterator for ZeroIter {
    type Item = Result<f64>;

    fn next(&mut self) -> Option<Result<f64>> {
        self.k += 1;
        let guess = mcmahon(self.nu, self.k).max(self.prev + 0.5);
        let mut z = guess;
        for _ in 0..50 {
            let (j, dj) = match bessel_j_with_derivative(self.nu, z) {
                Ok(v) => v,
                Err(e) => return Some(Err(e)),
            };
            if dj == 0.0 {
                break;
            }
            let step = j / dj;
            z -= step;
            if step.abs() <= 1e-15 * z.abs() {
                break;
            }
        }
        // Newton occasionally lands on a neighbouring zero for the first few k.
        if !(z > self.prev + 0.5) || (z - guess).abs() > 1.0 {
            z = guess;
        }
        self.prev = z;
        Some(Ok(z))
    }
}

/// The first `count` positive zeros of J_ν (ν ≥ −1/2), from McMahon's
/// expansion refined by Newton steps.
pub fn bessel_zeros(nu: f64, count: usize) -> Result<Vec<f64>> {
    ZeroIter {
        nu,
        k: 0,
        prev: 0.0,
    }
    .take(count)
    .collect()
}

fn check_inputs(nu: f64, omega: f64, spec: &QuadratureSpec) -> Result<()> {
    spec.validate()?;
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::domain(
            "integrate_bessel_oscillatory",
            format!("omega = {omega} must be positive"),
        ));
    }
    if !(nu >= -0.5) {
        return Err(Error::domain(
            "integrate_bessel_oscillatory",
            format!("order {nu} must be >= -1/2"),
        ));
    }
    Ok(())
}

fn binomial_average(sums: &[f64]) -> f64 {
    let mut level = sums.to_vec();
    while level.len() > 1 {
        level = level.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    level[0]
}

/// ∫₀^∞ f(y) J_ν(ωy) dy.
///
/// The integral is split at the zeros of J_ν(ωy); the sequence of partial
/// sums is accelerated by repeated pairwise averaging of its last entries
/// (an Euler-type transformation). Converges when two successive
/// accelerated values agree to the spec tolerance.
pub fn integrate_bessel_oscillatory<F>(
    f: F,
    nu: f64,
    omega: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<f64>,
{
    check_inputs(nu, omega, spec)?;
    let g = |y: f64| Ok(f(y)? * bessel_j(nu, omega * y)?);
    let panel_spec = spec.clone().with_abs_tol(spec.abs_tol / 10.0);
    let mut partials = Vec::new();
    let (mut sum, mut panel_error, mut evaluations) = (0.0, 0.0, 0);
    let mut left = 0.0;
    let mut previous: Option<f64> = None;
    let mut last_change = f64::INFINITY;
    let mut agreed = 0;
    for zero in (ZeroIter {
        nu,
        k: 0,
        prev: 0.0,
    })
    .take(MAX_PANELS)
    {
        let right = zero? / omega;
        let panel = integrate_finite(g, left, right, &panel_spec)?;
        sum += panel.value;
        panel_error += panel.error_estimate;
        evaluations += panel.evaluations;
        partials.push(sum);
        left = right;
        if partials.len() < MIN_PANELS {
            continue;
        }
        let m = partials.len().min(MAX_AVERAGING);
        let estimate = binomial_average(&partials[partials.len() - m..]);
        if let Some(prev) = previous {
            last_change = (estimate - prev).abs();
            agreed = if last_change <= spec.tolerance_for(estimate) {
                agreed + 1
            } else {
                0
            };
            if agreed >= 2 {
                return Ok(QuadratureResult {
                    value: estimate,
                    error_estimate: last_change + panel_error,
                    evaluations,
                    converged: true,
                });
            }
        }
        previous = Some(estimate);
    }
    Err(Error::AccelerationFailure {
        panels: partials.len(),
        last_change,
    })
}

/// Brute-force reference for [`integrate_bessel_oscillatory`]: direct panel
/// summation to the first zero of J_ν(ωy) beyond `radius`, returning the mean
/// of the partial sums at that zero and the one before it.
pub fn integrate_bessel_truncated<F>(
    f: F,
    nu: f64,
    omega: f64,
    radius: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<f64>,
{
    check_inputs(nu, omega, spec)?;
    let g = |y: f64| Ok(f(y)? * bessel_j(nu, omega * y)?);
    let panel_spec = spec.clone().with_abs_tol(spec.abs_tol / 10.0);
    let (mut sum, mut prev_sum, mut left) = (0.0, 0.0, 0.0);
    let mut parts = Vec::new();
    for zero in (ZeroIter {
        nu,
        k: 0,
        prev: 0.0,
    }) {
        let right = zero? / omega;
        let panel = integrate_finite(g, left, right, &panel_spec)?;
        prev_sum = sum;
        sum += panel.value;
        parts.push(panel);
        left = right;
        if right > radius {
            break;
        }
    }
    let mut total = QuadratureResult::combine(&parts);
    total.value = 0.5 * (sum + prev_sum);
    total.error_estimate += 0.5 * (sum - prev_sum).abs();
    Ok(total)
}
