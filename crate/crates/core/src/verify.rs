//! Numerical certification of the closed-form identities and inequalities
//! behind the transforms.
//!
//! Each check returns an [`IdentityReport`] comparing a quadrature-based
//! left side against a closed-form right side. [`run_suite`] evaluates the
//! default grids in parallel while keeping grid order.

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::{kernel_bound_constant, ln_sinh_pi};
use crate::quad::{integrate_bessel_oscillatory, integrate_semi_infinite, QuadratureSpec};
use crate::specfun::{
    bessel_k_imag, bessel_product_kernel, gamma_abs_sq, hyp2f1_inverse_kernel, hyp2f1_kernel,
    log_gamma_abs_sq, log_gamma_real, JacobiParams, Regime,
};

/// Relative tolerance of the kernel integral, Laplace and Bessel-product checks.
pub const IDENTITY_TOL: f64 = 1e-6;
/// Relative tolerance of the oscillatory Hankel-type checks.
pub const HANKEL_TOL: f64 = 1e-4;
/// Absolute tolerance used where the closed form vanishes.
pub const ZERO_TOL: f64 = 1e-9;
/// Slack allowed on the two inequalities for rounding.
pub const INEQUALITY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityId {
    /// The closed-form kernel integral in the variable y.
    Lemma1,
    /// ∫₀^∞ e^(−x cosh u) K_{in}(x) dx.
    LaplaceK,
    /// Forward kernel against its Bessel-product integral.
    BesselRepr,
    /// Hankel-type integral of the inverse kernel against the printed closed form.
    HankelClosed,
    /// The same integral against the closed form with 2^(c−1) in place of 2^c.
    HankelClosedCorrected,
    /// |F_n(x)| ≤ B x^(1/2−c) e^(−δn) / |Γ(a + in/2)|².
    KernelBound,
    /// |K_{in}(x)| ≤ e^(−δn) K_0(x cos δ).
    KInequality,
}

impl IdentityId {
    pub const ALL: [IdentityId; 7] = [
        IdentityId::Lemma1,
        IdentityId::LaplaceK,
        IdentityId::BesselRepr,
        IdentityId::HankelClosed,
        IdentityId::HankelClosedCorrected,
        IdentityId::KernelBound,
        IdentityId::KInequality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Lemma1 => "lemma1",
            IdentityId::LaplaceK => "laplace_k",
            IdentityId::BesselRepr => "bessel_repr",
            IdentityId::HankelClosed => "hankel_closed",
            IdentityId::HankelClosedCorrected => "hankel_closed_corrected",
            IdentityId::KernelBound => "kernel_bound",
            IdentityId::KInequality => "k_inequality",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = IdentityId::ALL.iter().map(|id| id.name()).collect();
                Error::Config(format!(
                    "unknown identity '{s}' (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

/// The parameters of one grid point; unused coordinates are `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct GridPoint {
    pub a: Option<f64>,
    pub c: Option<f64>,
    pub n: Option<f64>,
    pub u: Option<f64>,
    pub x: Option<f64>,
    pub delta: Option<f64>,
}

impl GridPoint {
    fn with_params(p: &JacobiParams) -> Self {
        GridPoint {
            a: Some(p.a()),
            c: Some(p.c()),
            ..Default::default()
        }
    }
}

/// How `rel_residual` was measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidualKind {
    /// |lhs − rhs| / |rhs|.
    Relative,
    /// |lhs − rhs|, used where the closed form vanishes.
    Absolute,
    /// max(0, lhs/rhs − 1) for an inequality lhs ≤ rhs.
    Excess,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity_id: IdentityId,
    pub grid_point: GridPoint,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_residual: f64,
    pub residual_kind: ResidualKind,
    pub tolerance: f64,
    pub passed: bool,
}

impl IdentityReport {
    fn equality(
        id: IdentityId,
        grid_point: GridPoint,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        vanishing: bool,
    ) -> Self {
        let (rel_residual, residual_kind, tolerance) = if vanishing {
            ((lhs - rhs).abs(), ResidualKind::Absolute, ZERO_TOL)
        } else {
            (
                (lhs - rhs).abs() / rhs.abs(),
                ResidualKind::Relative,
                tolerance,
            )
        };
        IdentityReport {
            identity_id: id,
            grid_point,
            lhs,
            rhs,
            rel_residual,
            residual_kind,
            tolerance,
            passed: rel_residual <= tolerance,
        }
    }

    fn inequality(id: IdentityId, grid_point: GridPoint, lhs: f64, rhs: f64) -> Self {
        let rel_residual = if rhs > 0.0 {
            (lhs / rhs - 1.0).max(0.0)
        } else {
            f64::INFINITY
        };
        IdentityReport {
            identity_id: id,
            grid_point,
            lhs,
            rhs,
            rel_residual,
            residual_kind: ResidualKind::Excess,
            tolerance: INEQUALITY_SLACK,
            passed: rel_residual <= INEQUALITY_SLACK,
        }
    }
}

fn sine_vanishes(n: f64, u: f64) -> bool {
    (n * u).sin().abs() < 1e-12
}

fn require_nonzero_u(func: &'static str, u: f64) -> Result<()> {
    if u == 0.0 || !u.is_finite() {
        return Err(Error::domain(
            func,
            format!("u = {u} must be finite and nonzero"),
        ));
    }
    Ok(())
}

/// The closed form 2^(2(c−a)+1) π sin(nu) cosh(u)^(2(c−a)+1) / (sinh(u) sinh(πn)).
pub fn lemma1_rhs(p: &JacobiParams, n: u32, u: f64) -> f64 {
    let s = 2.0 * (p.c() - p.a()) + 1.0;
    let nf = n as f64;
    let ln_mag = s * LN_2 + PI.ln() + s * u.cosh().ln() - ln_sinh_pi(nf);
    ln_mag.exp() * (nf * u).sin() / u.sinh()
}

fn lemma1_prefactor(p: &JacobiParams, n: u32) -> Result<f64> {
    let (a, c) = (p.a(), p.c());
    Ok(
        (log_gamma_real(2.0 * (c - a) + 1.0)? + log_gamma_abs_sq(a, n as f64)?
            - 2.0 * log_gamma_real(c)?)
        .exp(),
    )
}

/// The kernel integral in the variable y, with both kernels at argument −y:
///
/// Γ(2(c−a)+1) |Γ(a + in/2)/Γ(c)|² ∫₀^∞ y^(c−1) G₂(−y/cosh²u) F₂(−y) dy,
///
/// where G₂ = ₂F₁(c−a+1/2, c−a+1; c; ·) and F₂ = ₂F₁(a+in/2, a−in/2; c; ·).
pub fn lemma1_lhs(p: &JacobiParams, n: u32, u: f64, spec: &QuadratureSpec) -> Result<f64> {
    p.require(Regime::Lemma)?;
    let (a, c) = (p.a(), p.c());
    let pre = lemma1_prefactor(p, n)?;
    let ch2 = u.cosh().powi(2);
    let nf = n as f64;
    let tail = (c - 1.0) + (a - c - 0.5) - a;
    let r = integrate_semi_infinite(
        |y| {
            let g = hyp2f1_inverse_kernel(p, -y / ch2)?;
            let f = hyp2f1_kernel(p, nf, y.sqrt())?;
            Ok(y.powf(c - 1.0) * g * f)
        },
        &spec
            .clone()
            .with_tail(tail, None)
            .with_abs_tol(spec.abs_tol / pre),
    )?;
    Ok(pre * r.require_converged("kernel integral")?)
}

/// The same integral after y = x²: 2 ∫₀^∞ x^(2c−1) G(x, u) F_n(x) dx with the
/// transform kernels in x.
pub fn lemma1_lhs_x_form(p: &JacobiParams, n: u32, u: f64, spec: &QuadratureSpec) -> Result<f64> {
    p.require(Regime::Lemma)?;
    let c = p.c();
    let pre = lemma1_prefactor(p, n)?;
    let d = p.decay();
    let tail = 2.0 * c - 1.0 + d.exponent_inverse + d.exponent_forward;
    let nf = n as f64;
    let r = integrate_semi_infinite(
        |x| {
            Ok(x.powf(2.0 * c - 1.0)
                * crate::kernels::inverse_kernel(p, x, u)?
                * hyp2f1_kernel(p, nf, x)?)
        },
        &spec
            .clone()
            .with_tail(tail, None)
            .with_abs_tol(spec.abs_tol / pre),
    )?;
    Ok(2.0 * pre * r.require_converged("kernel integral (x form)")?)
}

pub fn check_lemma1(
    p: &JacobiParams,
    n: u32,
    u: f64,
    spec: &QuadratureSpec,
) -> Result<IdentityReport> {
    require_nonzero_u("check_lemma1", u)?;
    let lhs = lemma1_lhs(p, n, u, spec)?;
    let rhs = lemma1_rhs(p, n, u);
    let gp = GridPoint {
        n: Some(n as f64),
        u: Some(u),
        ..GridPoint::with_params(p)
    };
    Ok(IdentityReport::equality(
        IdentityId::Lemma1,
        gp,
        lhs,
        rhs,
        IDENTITY_TOL,
        sine_vanishes(n as f64, u),
    ))
}

/// π sin(nu) / (sinh(u) sinh(πn)).
pub fn laplace_k_rhs(n: u32, u: f64) -> f64 {
    let nf = n as f64;
    (PI.ln() - ln_sinh_pi(nf)).exp() * (nf * u).sin() / u.sinh()
}

pub fn check_laplace_k(n: u32, u: f64, spec: &QuadratureSpec) -> Result<IdentityReport> {
    if n == 0 || !(u > 0.0) {
        return Err(Error::domain(
            "check_laplace_k",
            format!("need n >= 1 and u > 0 (n = {n}, u = {u})"),
        ));
    }
    let nf = n as f64;
    let ch = u.cosh();
    let lhs = integrate_semi_infinite(
        |x| Ok((-x * ch).exp() * bessel_k_imag(nf, x)?),
        &spec.clone().exponential(),
    )?
    .require_converged("Laplace integral of K")?;
    let rhs = laplace_k_rhs(n, u);
    let gp = GridPoint {
        n: Some(nf),
        u: Some(u),
        ..Default::default()
    };
    Ok(IdentityReport::equality(
        IdentityId::LaplaceK,
        gp,
        lhs,
        rhs,
        IDENTITY_TOL,
        sine_vanishes(nf, u),
    ))
}

/// Direct forward kernel (lhs) against the Bessel-product representation (rhs).
pub fn check_bessel_repr(
    p: &JacobiParams,
    n: u32,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<IdentityReport> {
    p.require(Regime::InversionWithBoundary)?;
    let lhs = hyp2f1_kernel(p, n as f64, x)?;
    let rhs = bessel_product_kernel(p, n as f64, x, spec)?;
    let gp = GridPoint {
        n: Some(n as f64),
        x: Some(x),
        ..GridPoint::with_params(p)
    };
    Ok(IdentityReport::equality(
        IdentityId::BesselRepr,
        gp,
        lhs,
        rhs,
        IDENTITY_TOL,
        false,
    ))
}

/// ∫₀^∞ y^c J_{c−1}(xy) G(y, u) dy by zero-to-zero panels with averaging.
pub fn hankel_lhs(p: &JacobiParams, u: f64, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    let (a, c) = (p.a(), p.c());
    if !(c > 0f64.max(2.0 * a - 1.5)) {
        return Err(Error::Regime {
            a,
            c,
            condition: "c > max(0, 2a - 3/2)",
        });
    }
    if c < 0.5 {
        return Err(Error::Regime {
            a,
            c,
            condition: "c >= 1/2 (Bessel order at least -1/2)",
        });
    }
    if !(x > 0.0) {
        return Err(Error::domain(
            "hankel_lhs",
            format!("x = {x} must be positive"),
        ));
    }
    let ch2 = u.cosh().powi(2);
    let r = integrate_bessel_oscillatory(
        |y| Ok(y.powf(c) * hyp2f1_inverse_kernel(p, -y * y / ch2)?),
        c - 1.0,
        x,
        spec,
    )?;
    r.require_converged("Hankel-type integral")
}

/// 2^k x^(c−2a) Γ(c) cosh(u)^(2(c−a)+1) e^(−x cosh u) / Γ(2(c−a)+1), with
/// k = c for the printed form and k = c − 1 for the corrected one.
pub fn hankel_rhs(p: &JacobiParams, u: f64, x: f64, corrected: bool) -> Result<f64> {
    let (a, c) = (p.a(), p.c());
    let k = if corrected { c - 1.0 } else { c };
    let s = 2.0 * (c - a) + 1.0;
    let ln = k * LN_2 + (c - 2.0 * a) * x.ln() + log_gamma_real(c)? + s * u.cosh().ln()
        - x * u.cosh()
        - log_gamma_real(s)?;
    Ok(ln.exp())
}

fn hankel_report(
    id: IdentityId,
    p: &JacobiParams,
    u: f64,
    x: f64,
    lhs: f64,
    corrected: bool,
) -> Result<IdentityReport> {
    let rhs = hankel_rhs(p, u, x, corrected)?;
    let gp = GridPoint {
        u: Some(u),
        x: Some(x),
        ..GridPoint::with_params(p)
    };
    Ok(IdentityReport::equality(
        id, gp, lhs, rhs, HANKEL_TOL, false,
    ))
}

/// The Hankel-type integral against the printed closed form.
pub fn check_hankel_closed(
    p: &JacobiParams,
    u: f64,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<IdentityReport> {
    let lhs = hankel_lhs(p, u, x, spec)?;
    hankel_report(IdentityId::HankelClosed, p, u, x, lhs, false)
}

/// The Hankel-type integral against the closed form with 2^(c−1).
pub fn check_hankel_closed_corrected(
    p: &JacobiParams,
    u: f64,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<IdentityReport> {
    let lhs = hankel_lhs(p, u, x, spec)?;
    hankel_report(IdentityId::HankelClosedCorrected, p, u, x, lhs, true)
}

/// |F_n(x)| x^(c−1/2) e^(δn) |Γ(a + in/2)|², the quantity bounded by B(δ).
pub fn kernel_bound_ratio(p: &JacobiParams, n: u32, x: f64, delta: f64) -> Result<f64> {
    let nf = n as f64;
    Ok(hyp2f1_kernel(p, nf, x)?.abs()
        * x.powf(p.c() - 0.5)
        * (delta * nf).exp()
        * gamma_abs_sq(p.a(), nf)?)
}

/// Compares [`kernel_bound_ratio`] (lhs) with the bound constant B(δ) (rhs).
pub fn check_kernel_bound(p: &JacobiParams, n: u32, x: f64, delta: f64) -> Result<IdentityReport> {
    if !(x > 0.0) {
        return Err(Error::domain(
            "check_kernel_bound",
            format!("x = {x} must be positive"),
        ));
    }
    let rhs = kernel_bound_constant(p, delta)?;
    let lhs = kernel_bound_ratio(p, n, x, delta)?;
    let gp = GridPoint {
        n: Some(n as f64),
        x: Some(x),
        delta: Some(delta),
        ..GridPoint::with_params(p)
    };
    Ok(IdentityReport::inequality(
        IdentityId::KernelBound,
        gp,
        lhs,
        rhs,
    ))
}

/// Largest bound ratio per x together with whether any later index exceeds
/// the running maximum of the earlier ones by more than `slack`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthScan {
    pub x: f64,
    pub delta: f64,
    pub ratios: Vec<f64>,
    pub grows: bool,
}

/// Scans n = 1..=n_max at fixed x and δ for growth of the bound ratio.
pub fn kernel_bound_growth(
    p: &JacobiParams,
    x: f64,
    delta: f64,
    n_max: u32,
    slack: f64,
) -> Result<GrowthScan> {
    let ratios = (1..=n_max)
        .map(|n| kernel_bound_ratio(p, n, x, delta))
        .collect::<Result<Vec<_>>>()?;
    let mut running = 0.0f64;
    let mut grows = false;
    for (i, &r) in ratios.iter().enumerate() {
        if i > 0 && r > running * (1.0 + slack) {
            grows = true;
        }
        running = running.max(r);
    }
    Ok(GrowthScan {
        x,
        delta,
        ratios,
        grows,
    })
}

/// |K_{in}(x)| (lhs) against e^(−δn) K_0(x cos δ) (rhs).
pub fn check_k_inequality(n: f64, x: f64, delta: f64) -> Result<IdentityReport> {
    if !(0.0..PI / 2.0).contains(&delta) {
        return Err(Error::domain(
            "check_k_inequality",
            format!("delta = {delta} must lie in [0, pi/2)"),
        ));
    }
    let lhs = bessel_k_imag(n, x)?.abs();
    let rhs = (-delta * n).exp() * bessel_k_imag(0.0, x * delta.cos())?;
    let gp = GridPoint {
        n: Some(n),
        x: Some(x),
        delta: Some(delta),
        ..Default::default()
    };
    Ok(IdentityReport::inequality(
        IdentityId::KInequality,
        gp,
        lhs,
        rhs,
    ))
}

/// The (a, c) pairs of the default grids.
pub const DEFAULT_PARAMS: [(f64, f64); 3] = [(0.75, 1.2), (0.6, 1.0), (0.9, 1.6)];

/// One unit of work in a verification suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Check {
    Lemma1 {
        p: JacobiParams,
        n: u32,
        u: f64,
    },
    LaplaceK {
        n: u32,
        u: f64,
    },
    BesselRepr {
        p: JacobiParams,
        n: u32,
        x: f64,
    },
    HankelClosed {
        p: JacobiParams,
        u: f64,
        x: f64,
        corrected: bool,
    },
    KernelBound {
        p: JacobiParams,
        n: u32,
        x: f64,
        delta: f64,
    },
    KInequality {
        n: f64,
        x: f64,
        delta: f64,
    },
}

impl Check {
    pub fn id(&self) -> IdentityId {
        match self {
            Check::Lemma1 { .. } => IdentityId::Lemma1,
            Check::LaplaceK { .. } => IdentityId::LaplaceK,
            Check::BesselRepr { .. } => IdentityId::BesselRepr,
            Check::HankelClosed {
                corrected: false, ..
            } => IdentityId::HankelClosed,
            Check::HankelClosed {
                corrected: true, ..
            } => IdentityId::HankelClosedCorrected,
            Check::KernelBound { .. } => IdentityId::KernelBound,
            Check::KInequality { .. } => IdentityId::KInequality,
        }
    }

    pub fn run(&self, spec: &QuadratureSpec) -> Result<IdentityReport> {
        match *self {
            Check::Lemma1 { p, n, u } => check_lemma1(&p, n, u, spec),
            Check::LaplaceK { n, u } => check_laplace_k(n, u, spec),
            Check::BesselRepr { p, n, x } => check_bessel_repr(&p, n, x, spec),
            Check::HankelClosed {
                p,
                u,
                x,
                corrected: false,
            } => check_hankel_closed(&p, u, x, spec),
            Check::HankelClosed {
                p,
                u,
                x,
                corrected: true,
            } => check_hankel_closed_corrected(&p, u, x, spec),
            Check::KernelBound { p, n, x, delta } => check_kernel_bound(&p, n, x, delta),
            Check::KInequality { n, x, delta } => check_k_inequality(n, x, delta),
        }
    }
}

fn default_params() -> Vec<JacobiParams> {
    DEFAULT_PARAMS
        .iter()
        .map(|&(a, c)| JacobiParams::new(a, c).expect("default parameters are positive"))
        .collect()
}

/// The default grid of one identity, in a fixed order.
pub fn default_grid(id: IdentityId) -> Vec<Check> {
    let params = default_params();
    let mut out = Vec::new();
    match id {
        IdentityId::Lemma1 => {
            for &p in &params {
                for n in 1..=3 {
                    for u in [0.3, 1.0, 2.0] {
                        out.push(Check::Lemma1 { p, n, u });
                    }
                }
            }
        }
        IdentityId::LaplaceK => {
            for n in 1..=3 {
                for u in [0.3, 1.0, 2.5] {
                    out.push(Check::LaplaceK { n, u });
                }
            }
        }
        IdentityId::BesselRepr => {
            for &p in &params {
                for n in 1..=2 {
                    for x in [0.5, 1.0, 2.0] {
                        out.push(Check::BesselRepr { p, n, x });
                    }
                }
            }
        }
        IdentityId::HankelClosed | IdentityId::HankelClosedCorrected => {
            let corrected = id == IdentityId::HankelClosedCorrected;
            for &p in &params {
                for x in [0.5, 1.0, 3.0] {
                    for u in [0.0, 0.5, 1.0] {
                        out.push(Check::HankelClosed { p, u, x, corrected });
                    }
                }
            }
        }
        IdentityId::KernelBound => {
            for &p in &params {
                for delta in [0.0, 0.5] {
                    for x in [0.5, 1.0, 2.0, 5.0] {
                        for n in 1..=6 {
                            out.push(Check::KernelBound { p, n, x, delta });
                        }
                    }
                }
            }
        }
        IdentityId::KInequality => {
            for n in [0.0, 1.0, 2.0, 4.0] {
                for x in [0.5, 1.0, 2.0] {
                    for delta in [0.0, 0.5, 1.0] {
                        out.push(Check::KInequality { n, x, delta });
                    }
                }
            }
        }
    }
    out
}

/// Runs the default grids of the selected identities (all when `filter` is
/// empty) in parallel; reports come back in grid order.
pub fn run_suite(filter: &[IdentityId], spec: &QuadratureSpec) -> Result<Vec<IdentityReport>> {
    let ids: Vec<IdentityId> = if filter.is_empty() {
        IdentityId::ALL.to_vec()
    } else {
        IdentityId::ALL
            .into_iter()
            .filter(|id| filter.contains(id))
            .collect()
    };
    let checks: Vec<Check> = ids.into_iter().flat_map(default_grid).collect();
    run_checks(&checks, spec)
}

pub fn run_checks(checks: &[Check], spec: &QuadratureSpec) -> Result<Vec<IdentityReport>> {
    checks.par_iter().map(|c| c.run(spec)).collect()
}

/// The default tolerances of the suite.
pub fn default_spec() -> QuadratureSpec {
    QuadratureSpec::default()
        .with_rel_tol(1e-10)
        .with_abs_tol(1e-13)
}
