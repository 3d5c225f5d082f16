//! Gauss hypergeometric function on the negative real axis.
//!
//! Only the two families the transforms need are exposed publicly: the
//! conjugate-parameter forward kernel ₂F₁(a + iτ/2, a − iτ/2; c; −x²) and the
//! inverse kernel ₂F₁(c − a + 1/2, c − a + 1; c; z). Internally both go
//! through one complex-parameter evaluator with three summation paths:
//!
//! * `Direct`: the ascending series in z, used for |z| ≤ 1/2;
//! * `Pfaff`: (1 − z)^(−a) ₂F₁(a, c − b; c; z/(z − 1)), used for 1/2 < |z| ≤ 9;
//! * `Reciprocal`: the two-term connection formula in 1/z, used for |z| > 9.
//!
//! The reciprocal path needs b − a off the integers. When it is not (the
//! forward kernel at τ ≈ 0) the Pfaff series is summed with a long term
//! budget, and past that the Bessel-product integral representation is used.
//!
//! Large imaginary parameters make the Direct and Pfaff series cancel
//! heavily. When no double-precision path meets the tolerance, those two
//! series are summed again in double-double arithmetic.

use num_complex::Complex64;

use super::bessel_j::bessel_j;
use super::bessel_k::bessel_k_imag;
use super::gamma::{ln_gamma_pos, log_gamma_abs_sq, log_gamma_complex};
use super::params::JacobiParams;
use crate::error::{Error, Result};
use crate::quad::{integrate_semi_infinite, QuadratureSpec};

/// Relative accuracy demanded of every kernel evaluation.
pub const KERNEL_REL_TOL: f64 = 1e-10;

const PFAFF_LIMIT: f64 = 9.0;
const SERIES_TERMS: usize = 20_000;
const LONG_SERIES_TERMS: usize = 2_000_000;
const DEGENERATE_GAP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Hyp2f1Path {
    Direct,
    Pfaff,
    Reciprocal,
}

/// A hypergeometric value with the bookkeeping needed to judge it.
#[derive(Debug, Clone, Copy)]
pub struct Hyp2f1Eval {
    pub value: Complex64,
    /// Sum of |prefactor|·Σ|term| over the pieces; bounds the rounding error.
    pub scale: f64,
    /// Size of the leading contribution; the natural envelope of the value.
    pub magnitude: f64,
    pub path: Hyp2f1Path,
    pub terms: usize,
    /// Unit roundoff of the arithmetic the series was summed in.
    pub unit_roundoff: f64,
}

impl Hyp2f1Eval {
    /// Rounding-error bound of the summation.
    pub fn error_bound(&self) -> f64 {
        8.0 * self.unit_roundoff * self.scale + f64::EPSILON * self.value.norm()
    }

    fn relative_error(&self) -> f64 {
        self.error_bound() / self.value.norm().max(self.magnitude).max(f64::MIN_POSITIVE)
    }
}

struct SeriesSum {
    value: Complex64,
    abs_sum: f64,
    terms: usize,
    unit_roundoff: f64,
}

fn series(a: Complex64, b: Complex64, c: Complex64, w: f64, max_terms: usize) -> Result<SeriesSum> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut abs_sum = 1.0;
    if w == 0.0 {
        return Ok(SeriesSum {
            value: sum,
            abs_sum,
            terms: 1,
            unit_roundoff: f64::EPSILON,
        });
    }
    for k in 0..max_terms {
        let kf = k as f64;
        let den = (c + kf) * (kf + 1.0);
        if den.norm() == 0.0 {
            return Err(Error::domain(
                "hyp2f1",
                "third parameter is a nonpositive integer",
            ));
        }
        let ratio = (a + kf) * (b + kf) / den * w;
        term *= ratio;
        sum += term;
        let t = term.norm();
        abs_sum += t;
        if t == 0.0 {
            return Ok(SeriesSum {
                value: sum,
                abs_sum,
                terms: k + 2,
                unit_roundoff: f64::EPSILON,
            });
        }
        let r = ratio.norm();
        if k > 0 && r < 0.999 {
            let tail = t * r / (1.0 - r);
            if tail <= 0.5 * f64::EPSILON * sum.norm() || tail <= 1e-3 * f64::EPSILON * abs_sum {
                return Ok(SeriesSum {
                    value: sum,
                    abs_sum,
                    terms: k + 2,
                    unit_roundoff: f64::EPSILON,
                });
            }
        }
    }
    Err(Error::NonConvergence {
        what: "hypergeometric series",
        residual: term.norm() / sum.norm().max(f64::MIN_POSITIVE),
        iterations: max_terms,
    })
}

/// Unit roundoff of double-double arithmetic.
const DD_ROUNDOFF: f64 = 4.93e-32;

/// An unevaluated sum hi + lo with |lo| ≤ ulp(hi)/2.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd {
        hi: s,
        lo: (a - (s - bb)) + (b - bb),
    }
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd {
        hi: s,
        lo: b - (s - a),
    }
}

impl Dd {
    fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        let t = two_sum(self.lo, o.lo);
        let u = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(u.hi, u.lo + t.lo)
    }

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi))
    }

    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul(Dd::from_f64(q1)));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul(Dd::from_f64(q2)));
        let q3 = r.hi / o.hi;
        quick_two_sum(q1, q2).add(Dd::from_f64(q3))
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

#[derive(Debug, Clone, Copy)]
struct ComplexDd {
    re: Dd,
    im: Dd,
}

impl ComplexDd {
    fn new(z: Complex64) -> Self {
        ComplexDd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    fn add(self, o: Self) -> Self {
        ComplexDd {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    fn mul(self, o: Self) -> Self {
        ComplexDd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    fn scale(self, w: Dd) -> Self {
        ComplexDd {
            re: self.re.mul(w),
            im: self.im.mul(w),
        }
    }

    fn div(self, o: Self) -> Self {
        let den = o.re.mul(o.re).add(o.im.mul(o.im));
        ComplexDd {
            re: self.re.mul(o.re).add(self.im.mul(o.im)).div(den),
            im: self.im.mul(o.re).sub(self.re.mul(o.im)).div(den),
        }
    }

    fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// The ascending series summed in double-double arithmetic.
fn series_dd(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    w: Dd,
    max_terms: usize,
) -> Result<SeriesSum> {
    let one = ComplexDd::new(Complex64::new(1.0, 0.0));
    let (a, b, c) = (ComplexDd::new(a), ComplexDd::new(b), ComplexDd::new(c));
    let mut term = one;
    let mut sum = one;
    let mut abs_sum = 1.0;
    let wf = w.to_f64();
    for k in 0..max_terms {
        let kd = ComplexDd::new(Complex64::new(k as f64, 0.0));
        let den = c
            .add(kd)
            .mul(ComplexDd::new(Complex64::new(k as f64 + 1.0, 0.0)));
        if den.to_c64().norm() == 0.0 {
            return Err(Error::domain(
                "hyp2f1",
                "third parameter is a nonpositive integer",
            ));
        }
        let ratio = a.add(kd).mul(b.add(kd)).div(den).scale(w);
        term = term.mul(ratio);
        sum = sum.add(term);
        let t = term.to_c64().norm();
        abs_sum += t;
        if t == 0.0 {
            return Ok(SeriesSum {
                value: sum.to_c64(),
                abs_sum,
                terms: k + 2,
                unit_roundoff: DD_ROUNDOFF,
            });
        }
        let r = ratio.to_c64().norm();
        if k > 0 && r < 0.999 && wf != 0.0 {
            let tail = t * r / (1.0 - r);
            let s = sum.to_c64().norm();
            if tail <= 0.25 * f64::EPSILON * s || tail <= DD_ROUNDOFF * abs_sum {
                return Ok(SeriesSum {
                    value: sum.to_c64(),
                    abs_sum,
                    terms: k + 2,
                    unit_roundoff: DD_ROUNDOFF,
                });
            }
        }
    }
    Err(Error::NonConvergence {
        what: "hypergeometric series (double-double)",
        residual: term.to_c64().norm() / sum.to_c64().norm().max(f64::MIN_POSITIVE),
        iterations: max_terms,
    })
}

/// Direct or Pfaff evaluation with the series summed in double-double.
fn hyp2f1_extended(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Hyp2f1Eval> {
    if z.abs() <= 0.5 {
        let s = series_dd(a, b, c, Dd::from_f64(z), SERIES_TERMS)?;
        return Ok(Hyp2f1Eval {
            value: s.value,
            scale: s.abs_sum,
            magnitude: 1.0,
            path: Hyp2f1Path::Direct,
            terms: s.terms,
            unit_roundoff: s.unit_roundoff,
        });
    }
    let zd = Dd::from_f64(z);
    let w = zd.div(zd.sub(Dd::from_f64(1.0)));
    let pre = (-a * (1.0 - z).ln()).exp();
    let s = series_dd(a, c - b, c, w, SERIES_TERMS)?;
    Ok(Hyp2f1Eval {
        value: pre * s.value,
        scale: pre.norm() * s.abs_sum,
        magnitude: pre.norm(),
        path: Hyp2f1Path::Pfaff,
        terms: s.terms,
        unit_roundoff: s.unit_roundoff,
    })
}

/// Largest |z| for which the double-double Pfaff series is attempted.
const EXTENDED_LIMIT: f64 = 19.0;

fn distance_to_integer(v: Complex64) -> f64 {
    Complex64::new(v.re - v.re.round(), v.im).norm()
}

fn ln_gamma_ratio(num: [Complex64; 2], den: [Complex64; 2]) -> Option<Complex64> {
    // None when a denominator gamma has a pole (the ratio vanishes).
    let mut acc = Complex64::new(0.0, 0.0);
    for z in num {
        acc += log_gamma_complex(z).expect("numerator gamma evaluated off its poles");
    }
    for z in den {
        acc -= log_gamma_complex(z)?;
    }
    Some(acc)
}

/// ₂F₁(a, b; c; z) for real z ≤ 0 along a chosen summation path.
pub fn hyp2f1_along(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: f64,
    path: Hyp2f1Path,
) -> Result<Hyp2f1Eval> {
    hyp2f1_along_with_budget(a, b, c, z, path, SERIES_TERMS)
}

fn hyp2f1_along_with_budget(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: f64,
    path: Hyp2f1Path,
    budget: usize,
) -> Result<Hyp2f1Eval> {
    if !(z <= 0.0) || !z.is_finite() {
        return Err(Error::domain(
            "hyp2f1",
            format!("argument z = {z} must be a finite nonpositive real"),
        ));
    }
    match path {
        Hyp2f1Path::Direct => {
            if z <= -1.0 {
                return Err(Error::domain("hyp2f1", "direct series needs |z| < 1"));
            }
            let s = series(a, b, c, z, budget)?;
            Ok(Hyp2f1Eval {
                value: s.value,
                scale: s.abs_sum,
                magnitude: 1.0,
                path,
                terms: s.terms,
                unit_roundoff: s.unit_roundoff,
            })
        }
        Hyp2f1Path::Pfaff => {
            let w = z / (z - 1.0);
            let pre = (-a * (1.0 - z).ln()).exp();
            let s = series(a, c - b, c, w, budget)?;
            Ok(Hyp2f1Eval {
                value: pre * s.value,
                scale: pre.norm() * s.abs_sum,
                magnitude: pre.norm(),
                path,
                terms: s.terms,
                unit_roundoff: s.unit_roundoff,
            })
        }
        Hyp2f1Path::Reciprocal => {
            if z >= -1.0 {
                return Err(Error::domain("hyp2f1", "reciprocal series needs |z| > 1"));
            }
            if distance_to_integer(b - a) < DEGENERATE_GAP {
                return Err(Error::domain(
                    "hyp2f1",
                    "reciprocal series needs b - a off the integers",
                ));
            }
            let ln_mz = (-z).ln();
            let inv = 1.0 / z;
            let one = Complex64::new(1.0, 0.0);
            let mut value = Complex64::new(0.0, 0.0);
            let (mut scale, mut magnitude, mut terms) = (0.0, 0.0, 0);
            for (p, q) in [(a, b), (b, a)] {
                // Γ(c)Γ(q − p) / (Γ(q)Γ(c − p)) (−z)^(−p) ₂F₁(p, p − c + 1; p − q + 1; 1/z)
                let Some(ln_coef) = ln_gamma_ratio([c, q - p], [q, c - p]) else {
                    continue;
                };
                let pre = (ln_coef - p * ln_mz).exp();
                let s = series(p, p - c + one, p - q + one, inv, budget)?;
                value += pre * s.value;
                scale += pre.norm() * s.abs_sum;
                magnitude += pre.norm();
                terms += s.terms;
            }
            Ok(Hyp2f1Eval {
                value,
                scale,
                magnitude,
                path,
                terms,
                unit_roundoff: f64::EPSILON,
            })
        }
    }
}

/// ₂F₁(a, b; c; z) for real z ≤ 0, choosing the summation path by |z| and
/// falling back to the other admissible paths when rounding error exceeds
/// [`KERNEL_REL_TOL`].
pub fn hyp2f1_complex(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Hyp2f1Eval> {
    if !(z <= 0.0) || !z.is_finite() {
        return Err(Error::domain(
            "hyp2f1",
            format!("argument z = {z} must be a finite nonpositive real"),
        ));
    }
    if z == 0.0 {
        return Ok(Hyp2f1Eval {
            value: Complex64::new(1.0, 0.0),
            scale: 1.0,
            magnitude: 1.0,
            path: Hyp2f1Path::Direct,
            terms: 1,
            unit_roundoff: f64::EPSILON,
        });
    }
    let az = z.abs();
    let degenerate = distance_to_integer(b - a) < DEGENERATE_GAP;
    let preferred: &[Hyp2f1Path] = if az <= 0.5 {
        &[Hyp2f1Path::Direct, Hyp2f1Path::Pfaff]
    } else if az <= PFAFF_LIMIT {
        if degenerate || az <= 1.0 {
            &[Hyp2f1Path::Pfaff]
        } else {
            &[Hyp2f1Path::Pfaff, Hyp2f1Path::Reciprocal]
        }
    } else if degenerate {
        &[Hyp2f1Path::Pfaff]
    } else {
        &[Hyp2f1Path::Reciprocal, Hyp2f1Path::Pfaff]
    };
    let budget = if degenerate && az > PFAFF_LIMIT {
        LONG_SERIES_TERMS
    } else {
        SERIES_TERMS
    };

    let mut best: Option<Hyp2f1Eval> = None;
    let mut last_err = None;
    for &path in preferred {
        match hyp2f1_along_with_budget(a, b, c, z, path, budget) {
            Ok(ev) => {
                if ev.relative_error() <= KERNEL_REL_TOL {
                    return Ok(ev);
                }
                if best.is_none_or(|b| ev.relative_error() < b.relative_error()) {
                    best = Some(ev);
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    if az <= EXTENDED_LIMIT {
        if let Ok(ev) = hyp2f1_extended(a, b, c, z) {
            if ev.relative_error() <= KERNEL_REL_TOL {
                return Ok(ev);
            }
            if best.is_none_or(|b| ev.relative_error() < b.relative_error()) {
                best = Some(ev);
            }
        }
    }
    match (best, last_err) {
        (Some(ev), _) => Err(Error::NonConvergence {
            what: "hypergeometric kernel",
            residual: ev.relative_error(),
            iterations: ev.terms,
        }),
        (None, Some(e)) => Err(e),
        (None, None) => unreachable!("at least one path is attempted"),
    }
}

fn forward_params(p: &JacobiParams, n: f64) -> (Complex64, Complex64, Complex64) {
    (
        Complex64::new(p.a(), 0.5 * n),
        Complex64::new(p.a(), -0.5 * n),
        Complex64::new(p.c(), 0.0),
    )
}

fn check_argument(x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "hyp2f1_kernel",
            format!("x = {x} must be finite and nonnegative"),
        ));
    }
    Ok(())
}

/// The forward kernel ₂F₁(a + in/2, a − in/2; c; −x²) with its evaluation record.
pub fn hyp2f1_kernel_eval(p: &JacobiParams, n: f64, x: f64) -> Result<Hyp2f1Eval> {
    check_argument(x)?;
    let (a, b, c) = forward_params(p, n);
    let ev = hyp2f1_complex(a, b, c, -x * x)?;
    let (re, im) = (ev.value.re, ev.value.im);
    if im.abs() > 1e-12 * re.abs().max(ev.magnitude) && im.abs() > ev.error_bound() {
        return Err(Error::NonConvergence {
            what: "hypergeometric kernel (imaginary residue)",
            residual: im.abs() / re.abs().max(ev.magnitude),
            iterations: ev.terms,
        });
    }
    Ok(ev)
}

/// The forward kernel F_n(x) = ₂F₁(a + in/2, a − in/2; c; −x²).
///
/// Real for every real n; n need not be an integer.
pub fn hyp2f1_kernel(p: &JacobiParams, n: f64, x: f64) -> Result<f64> {
    match hyp2f1_kernel_eval(p, n, x) {
        Ok(ev) => Ok(ev.value.re),
        // Past the long-series budget the degenerate case has one more route.
        Err(Error::NonConvergence { .. })
            if x * x > PFAFF_LIMIT && n.abs() < DEGENERATE_GAP && p.c() > 0.5 =>
        {
            bessel_product_kernel(p, n, x, &QuadratureSpec::default().with_rel_tol(1e-10))
        }
        Err(e) => Err(e),
    }
}

/// Asymptotic envelope of F_n at large x: the summed moduli of the two
/// conjugate terms of the connection formula. Falls back to |F_n(x)| where
/// that formula is unavailable (|z| ≤ 1 or n ≈ 0).
pub fn hyp2f1_kernel_envelope(p: &JacobiParams, n: f64, x: f64) -> Result<f64> {
    check_argument(x)?;
    let (a, b, c) = forward_params(p, n);
    let z = -x * x;
    if z < -1.0 && n.abs() >= DEGENERATE_GAP {
        let ev = hyp2f1_along(a, b, c, z, Hyp2f1Path::Reciprocal)?;
        let ln_mz = (-z).ln();
        let one = Complex64::new(1.0, 0.0);
        let mut env = 0.0;
        for (p, q) in [(a, b), (b, a)] {
            if let Some(ln_coef) = ln_gamma_ratio([c, q - p], [q, c - p]) {
                let s = series(p, p - c + one, p - q + one, 1.0 / z, SERIES_TERMS)?;
                env += ((ln_coef - p * ln_mz).exp() * s.value).norm();
            }
        }
        let _ = ev;
        return Ok(env);
    }
    hyp2f1_kernel(p, n, x).map(f64::abs)
}

/// The inverse kernel ₂F₁(c − a + 1/2, c − a + 1; c; z) for z ≤ 0.
pub fn hyp2f1_inverse_kernel(p: &JacobiParams, z: f64) -> Result<f64> {
    let (a, b, c) = inverse_params(p);
    hyp2f1_complex(a, b, c, z).map(|ev| ev.value.re)
}

pub(crate) fn inverse_params(p: &JacobiParams) -> (Complex64, Complex64, Complex64) {
    let a = p.c() - p.a() + 0.5;
    (
        Complex64::new(a, 0.0),
        Complex64::new(a + 0.5, 0.0),
        Complex64::new(p.c(), 0.0),
    )
}

/// The forward kernel through its Bessel-product integral representation:
///
/// F_n(x) = 2^(1+c−2a) x^(1−c) Γ(c) / |Γ(a + in/2)|² · ∫₀^∞ y^(2a−c) J_{c−1}(xy) K_{in}(y) dy.
///
/// Requires x > 0 and c ≥ 1/2 (so the Bessel order is at least −1/2).
pub fn bessel_product_kernel(
    p: &JacobiParams,
    n: f64,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(
            "bessel_product_kernel",
            format!("x = {x} must be positive"),
        ));
    }
    if p.c() < 0.5 {
        return Err(Error::domain("bessel_product_kernel", "needs c >= 1/2"));
    }
    let (a, c) = (p.a(), p.c());
    let nu = c - 1.0;
    let integral = integrate_semi_infinite(
        |y| Ok(y.powf(2.0 * a - c) * bessel_j(nu, x * y)? * bessel_k_imag(n, y)?),
        &spec.clone().exponential(),
    )?;
    let ln_pre =
        (1.0 + c - 2.0 * a) * std::f64::consts::LN_2 + (1.0 - c) * x.ln() + ln_gamma_pos(c)
            - log_gamma_abs_sq(a, n)?;
    Ok(ln_pre.exp() * integral.value)
}
