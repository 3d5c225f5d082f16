use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

type Eval = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;

/// A real function on (0, ∞) with optional algebraic decay metadata:
/// |f(x)| = O(x^s) as x → ∞ for `decay_exponent = Some(s)`.
#[derive(Clone)]
pub struct RealFunction {
    eval: Eval,
    decay_exponent: Option<f64>,
    domain_note: String,
}

impl fmt::Debug for RealFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RealFunction")
            .field("decay_exponent", &self.decay_exponent)
            .field("domain_note", &self.domain_note)
            .finish_non_exhaustive()
    }
}

impl RealFunction {
    pub fn new<F>(eval: F, decay_exponent: Option<f64>, domain_note: impl Into<String>) -> Self
    where
        F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        RealFunction {
            eval: Arc::new(eval),
            decay_exponent,
            domain_note: domain_note.into(),
        }
    }

    pub fn zero() -> Self {
        RealFunction::new(|_| Ok(0.0), None, "identically zero")
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        let v = (self.eval)(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation { abscissa: x })
        }
    }

    pub fn decay_exponent(&self) -> Option<f64> {
        self.decay_exponent
    }

    pub fn domain_note(&self) -> &str {
        &self.domain_note
    }

    /// True when the function was built as identically zero.
    pub fn is_known_zero(&self) -> bool {
        self.domain_note == "identically zero"
    }

    /// α·self + β·other; the slower of the two decay rates is kept.
    pub fn linear_combination(&self, alpha: f64, other: &RealFunction, beta: f64) -> RealFunction {
        let (f, g) = (self.clone(), other.clone());
        let decay = match (self.decay_exponent, other.decay_exponent) {
            (Some(s), Some(t)) => Some(s.max(t)),
            _ => None,
        };
        RealFunction::new(
            move |x| Ok(alpha * f.evaluate(x)? + beta * g.evaluate(x)?),
            decay,
            format!(
                "linear combination of ({}) and ({})",
                self.domain_note, other.domain_note
            ),
        )
    }

    /// Decay exponents fitted from doubling steps 10 → 20 → 40 of `g`, where
    /// `g` is the function itself or an envelope of it.
    pub fn doubling_exponents<G>(g: G) -> Result<[f64; 2]>
    where
        G: Fn(f64) -> Result<f64>,
    {
        let v = [g(10.0)?.abs(), g(20.0)?.abs(), g(40.0)?.abs()];
        Ok([(v[1] / v[0]).log2(), (v[2] / v[1]).log2()])
    }

    /// Checks the declared decay exponent against the doubling test on the
    /// function values: each measured x^(2^s) ratio within `rel` of 2^s.
    pub fn certify_decay(&self, rel: f64) -> Result<[f64; 2]> {
        let s = self
            .decay_exponent
            .ok_or_else(|| Error::Config("no decay exponent to certify".into()))?;
        let measured = Self::doubling_exponents(|x| self.evaluate(x))?;
        for m in measured {
            let ratio = 2f64.powf(m) / 2f64.powf(s);
            if (ratio - 1.0).abs() > rel {
                return Err(Error::DecayCondition {
                    detail: format!("declared exponent {s}, doubling test measured {measured:?}"),
                });
            }
        }
        Ok(measured)
    }
}

type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A 2π-periodic Lipschitz profile ψ. `breakpoints` lists the points in
/// (−π, π) where ψ is not smooth, so quadratures can split there.
#[derive(Clone)]
pub struct ProfileFunction {
    name: String,
    psi: Profile,
    lipschitz_constant: f64,
    breakpoints: Vec<f64>,
}

impl fmt::Debug for ProfileFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProfileFunction")
            .field("name", &self.name)
            .field("lipschitz_constant", &self.lipschitz_constant)
            .field("breakpoints", &self.breakpoints)
            .finish_non_exhaustive()
    }
}

/// Names accepted by [`ProfileFunction::builtin`].
pub const BUILTIN_PROFILES: [&str; 3] = ["sin", "sin+0.3sin3", "ramp"];

/// Odd trapezoid: 2·(2/π)·asin(sin u) clipped to [−1, 1]. It rises with
/// slope 4/π through the origin and is flat for π/4 ≤ |u| ≤ 3π/4.
fn ramp(u: f64) -> f64 {
    (4.0 / PI * u.sin().asin()).clamp(-1.0, 1.0)
}

impl ProfileFunction {
    pub fn new<F>(
        name: impl Into<String>,
        psi: F,
        lipschitz_constant: f64,
        breakpoints: Vec<f64>,
    ) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(lipschitz_constant > 0.0) || !lipschitz_constant.is_finite() {
            return Err(Error::Lipschitz {
                detail: format!("constant {lipschitz_constant} must be positive"),
            });
        }
        let mut breakpoints = breakpoints;
        breakpoints.retain(|b| b.abs() < PI);
        breakpoints.sort_by(f64::total_cmp);
        let p = ProfileFunction {
            name: name.into(),
            psi: Arc::new(psi),
            lipschitz_constant,
            breakpoints,
        };
        p.check()?;
        Ok(p)
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "sin" => Self::new("sin", f64::sin, 1.0, vec![]),
            "sin+0.3sin3" => Self::new(
                "sin+0.3sin3",
                |u| u.sin() + 0.3 * (3.0 * u).sin(),
                1.9,
                vec![],
            ),
            "ramp" => Self::new(
                "ramp",
                ramp,
                4.0 / PI,
                vec![-0.75 * PI, -0.25 * PI, 0.25 * PI, 0.75 * PI],
            ),
            other => Err(Error::Config(format!(
                "unknown profile '{other}' (expected one of {})",
                BUILTIN_PROFILES.join(", ")
            ))),
        }
    }

    pub fn constant(value: f64) -> Result<Self> {
        Self::new(format!("const {value}"), move |_| value, 1.0, vec![])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lipschitz_constant(&self) -> f64 {
        self.lipschitz_constant
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn psi(&self, u: f64) -> f64 {
        (self.psi)(u)
    }

    /// (ψ(u) − ψ(−u)) / 2.
    pub fn odd_part(&self, u: f64) -> f64 {
        0.5 * (self.psi(u) - self.psi(-u))
    }

    /// Sampled Lipschitz and periodicity checks on [−π, π].
    pub fn check(&self) -> Result<()> {
        const M: usize = 4096;
        let h = 2.0 * PI / M as f64;
        let samples: Vec<(f64, f64)> = (0..=M)
            .map(|i| {
                let u = -PI + i as f64 * h;
                (u, self.psi(u))
            })
            .collect();
        if let Some((u, _)) = samples.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Lipschitz {
                detail: format!("psi is not finite at u = {u}"),
            });
        }
        let slack = |du: f64| self.lipschitz_constant * du * (1.0 + 1e-9) + 1e-12;
        let mut pairs = samples.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>();
        // Long-range pairs from a fixed stride permutation.
        pairs.extend((0..M).map(|i| (samples[i], samples[(i * 2731 + 17) % (M + 1)])));
        for ((u, fu), (v, fv)) in pairs {
            if (fu - fv).abs() > slack((u - v).abs()) {
                return Err(Error::Lipschitz {
                    detail: format!(
                        "|psi({u}) - psi({v})| = {:e} exceeds {} * |u - v|",
                        (fu - fv).abs(),
                        self.lipschitz_constant
                    ),
                });
            }
        }
        for &(u, fu) in samples.iter().step_by(64) {
            let shifted = self.psi(u + 2.0 * PI);
            if (shifted - fu).abs() > 1e-12 * (1.0 + fu.abs()) {
                return Err(Error::Lipschitz {
                    detail: format!("psi is not 2*pi-periodic at u = {u}"),
                });
            }
        }
        Ok(())
    }

    /// Integration breakpoints of the odd part on [0, π], endpoints included.
    pub(crate) fn half_interval_nodes(&self) -> Vec<f64> {
        let mut nodes = vec![0.0];
        let mut interior: Vec<f64> = self
            .breakpoints
            .iter()
            .map(|b| b.abs())
            .filter(|&b| b > 0.0 && b < PI)
            .collect();
        interior.sort_by(f64::total_cmp);
        interior.dedup();
        nodes.extend(interior);
        nodes.push(PI);
        nodes
    }
}
