//! Real and complex log-gamma.
//!
//! Both use the same 15-term Lanczos sum with g = 671/128, which keeps the
//! relative error of ln Γ near machine precision on the right half-plane.
//! The left half-plane goes through the reflection formula, with ln sin(πz)
//! evaluated so that large imaginary parts cannot overflow.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_092;
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
const LN_PI: f64 = 1.144_729_885_849_400_2;

fn lanczos_real(x: f64) -> f64 {
    let mut ser = LANCZOS_C0;
    let mut y = x;
    for c in LANCZOS {
        y += 1.0;
        ser += c / y;
    }
    let t = x + LANCZOS_G;
    (x + 0.5) * t.ln() - t + (SQRT_2PI * ser / x).ln()
}

fn lanczos_complex(z: Complex64) -> Complex64 {
    let mut ser = Complex64::new(LANCZOS_C0, 0.0);
    let mut y = z;
    for c in LANCZOS {
        y += 1.0;
        ser += c / y;
    }
    let t = z + LANCZOS_G;
    (z + 0.5) * t.ln() - t + (ser * SQRT_2PI / z).ln()
}

/// ln Γ(x) for real x > 0.
pub fn log_gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "log_gamma_real",
            format!("x = {x} must be positive"),
        ));
    }
    Ok(ln_gamma_pos(x))
}

pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        lanczos_real(x + 1.0) - x.ln()
    } else {
        lanczos_real(x)
    }
}

/// ln sin(πz), stable for large |Im z|.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let w = z * PI;
    if w.im.abs() < 20.0 {
        return w.sin().ln();
    }
    // sin w = (i/2) e^{-iw} (1 - e^{2iw}) for Im w > 0; conjugate otherwise.
    let (w, flip) = if w.im > 0.0 {
        (w, false)
    } else {
        (w.conj(), true)
    };
    let i = Complex64::i();
    let v = -i * w + (i * 0.5).ln() + (Complex64::new(1.0, 0.0) - (i * w * 2.0).exp()).ln();
    if flip {
        v.conj()
    } else {
        v
    }
}

/// True when z sits on a pole of Γ.
pub(crate) fn is_gamma_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// ln Γ(z) for complex z; `None` on the poles z = 0, -1, -2, …
///
/// Only the real part is branch-independent; callers exponentiate.
pub fn log_gamma_complex(z: Complex64) -> Option<Complex64> {
    if is_gamma_pole(z) {
        return None;
    }
    if z.re >= 0.5 {
        Some(lanczos_complex(z))
    } else {
        let one_minus = Complex64::new(1.0, 0.0) - z;
        Some(Complex64::new(LN_PI, 0.0) - ln_sin_pi(z) - lanczos_complex(one_minus))
    }
}

/// ln |Γ(a + i·n/2)|².
pub fn log_gamma_abs_sq(a: f64, n: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(
            "gamma_abs_sq",
            format!("a = {a} must be positive"),
        ));
    }
    if n == 0.0 {
        return Ok(2.0 * ln_gamma_pos(a));
    }
    let z = Complex64::new(a, 0.5 * n);
    // a > 0 keeps z off the poles.
    let lg = log_gamma_complex(z).expect("Re z > 0");
    Ok(2.0 * lg.re)
}

/// |Γ(a + i·n/2)|², always positive for a > 0.
pub fn gamma_abs_sq(a: f64, n: f64) -> Result<f64> {
    log_gamma_abs_sq(a, n).map(f64::exp)
}
