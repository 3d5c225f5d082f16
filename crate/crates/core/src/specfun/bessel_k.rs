//! Modified Bessel function of imaginary order, K_{iτ}(x) = ∫₀^∞ e^(−x cosh t) cos(τt) dt.
//!
//! The integral is truncated where e^(−x(cosh t − 1)) drops below the f64
//! underflow threshold and summed with 20-point Gauss–Legendre panels whose
//! width resolves both the cos(τt) oscillation and the curvature of the
//! exponent.

use crate::error::{Error, Result};
use crate::quad::gauss_legendre;

const PANEL_ORDER: usize = 20;
const UNDERFLOW_EXPONENT: f64 = 745.0;

/// e^x · K_{in}(x), for x > 0 and real n.
pub fn bessel_k_imag_scaled(n: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "bessel_k_imag",
            format!("x = {x} must be positive and finite"),
        ));
    }
    if !n.is_finite() {
        return Err(Error::domain("bessel_k_imag", "order must be finite"));
    }
    let n = n.abs();
    let t_max = (1.0 + UNDERFLOW_EXPONENT / x).acosh();
    let mut width = 0.5f64.min(2.0 / x.sqrt());
    if n > 0.0 {
        width = width.min(1.0 / n);
    }
    let panels = (t_max / width).ceil().max(1.0) as usize;
    let h = t_max / panels as f64;
    let (nodes, weights) = gauss_legendre(PANEL_ORDER);
    let mut total = 0.0;
    for k in 0..panels {
        let mid = (k as f64 + 0.5) * h;
        let half = 0.5 * h;
        let mut panel = 0.0;
        for (&s, &w) in nodes.iter().zip(weights) {
            let t = mid + half * s;
            let sh = (0.5 * t).sinh();
            panel += w * (-2.0 * x * sh * sh).exp() * (n * t).cos();
        }
        total += half * panel;
    }
    Ok(total)
}

/// K_{in}(x) for x > 0; real for real n, and K_0(x) at n = 0.
pub fn bessel_k_imag(n: f64, x: f64) -> Result<f64> {
    Ok((-x).exp() * bessel_k_imag_scaled(n, x)?)
}
