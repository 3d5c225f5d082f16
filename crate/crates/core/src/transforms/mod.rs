//! The discrete transform pair and its two inversion formulas.
//!
//! * [`synthesize`]: f(x) = Σ a_n F_n(x);
//! * [`analyze`]: a_n = ∫₀^∞ F_n(x) f(x) dx;
//! * [`invert_coefficients`]: a_n from f through the kernel Φ_n;
//! * [`reconstruct`]: f from (a_n) through Φ_n;
//! * [`build_profile_function`] and [`closed_form_coefficients`]: functions
//!   generated by a Lipschitz profile ψ and their exact coefficients.
//!
//! Coefficients and functions are real; complex data splits into two real
//! passes since every operation is linear.

mod coefficients;
mod functions;
mod profile;
mod series;

pub use coefficients::{CoefficientSequence, DecayDiagnostics};
pub use functions::{ProfileFunction, RealFunction, BUILTIN_PROFILES};
pub use profile::{build_profile_function, closed_form_coefficients};
pub use series::{
    analyze, analyze_detailed, invert_coefficients, invert_coefficients_detailed, reconstruct,
    synthesize, synthesized_function, Reconstruction, ReconstructionTerm, Synthesis,
};
