//! Special functions: log-gamma, the conjugate-parameter hypergeometric
//! kernels, Bessel J of real order and K of imaginary order.

mod bessel_j;
mod bessel_k;
mod gamma;
mod hyp2f1;
mod params;

pub use bessel_j::{bessel_j, bessel_j_with_derivative};
pub use bessel_k::{bessel_k_imag, bessel_k_imag_scaled};
pub use gamma::{gamma_abs_sq, log_gamma_abs_sq, log_gamma_complex, log_gamma_real};
pub use hyp2f1::{
    bessel_product_kernel, hyp2f1_along, hyp2f1_complex, hyp2f1_inverse_kernel, hyp2f1_kernel,
    hyp2f1_kernel_envelope, hyp2f1_kernel_eval, Hyp2f1Eval, Hyp2f1Path, KERNEL_REL_TOL,
};
pub use params::{JacobiParams, KernelDecay, Regime};
