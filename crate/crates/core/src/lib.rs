//! Discrete Fourier–Jacobi transforms.
//!
//! The forward kernel is F_n(x) = ₂F₁(a + in/2, a − in/2; c; −x²). A sequence
//! (a_n) synthesizes f(x) = Σ a_n F_n(x); the analysis integral
//! a_n = ∫₀^∞ F_n(x) f(x) dx goes the other way for functions of the
//! profile class, and two inversion formulas recover coefficients and
//! functions through the kernel Φ_n.

pub mod cli;
pub mod error;
pub mod kernels;
pub mod quad;
pub mod specfun;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
