use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The parameter pair (a, c) of the conjugate-parameter kernel
/// ₂F₁(a + iτ/2, a − iτ/2; c; −x²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiParams {
    a: f64,
    c: f64,
}

/// Which admissibility window a caller relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// c > max(0, a − 1/2): the closed-form kernel integral holds.
    Lemma,
    /// max(1/2, 2a − 1/2) < c < 2a + 1/2: both inversion formulas hold.
    Inversion,
    /// The inversion window plus the boundary point c = 1/2 with 0 < a < 1/2.
    InversionWithBoundary,
}

const LEMMA_CONDITION: &str = "c > max(0, a - 1/2)";
const INVERSION_CONDITION: &str = "max(1/2, 2a - 1/2) < c < 2a + 1/2";
const BOUNDARY_CONDITION: &str = "max(1/2, 2a - 1/2) < c < 2a + 1/2, or c = 1/2 with 0 < a < 1/2";

impl JacobiParams {
    pub fn new(a: f64, c: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) || !(c > 0.0 && c.is_finite()) {
            return Err(Error::Regime {
                a,
                c,
                condition: "a > 0 and c > 0",
            });
        }
        Ok(JacobiParams { a, c })
    }

    /// Constructs and validates against `regime` in one step.
    pub fn in_regime(a: f64, c: f64, regime: Regime) -> Result<Self> {
        let p = Self::new(a, c)?;
        p.require(regime)?;
        Ok(p)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn regime_lemma1(&self) -> bool {
        self.c > 0f64.max(self.a - 0.5)
    }

    /// Open inversion window; the c = 1/2 boundary is excluded here.
    pub fn regime_theorems(&self) -> bool {
        let (a, c) = (self.a, self.c);
        c > 0.5f64.max(2.0 * a - 0.5) && c < 2.0 * a + 0.5
    }

    /// The experimental boundary case c = 1/2, 0 < a < 1/2.
    pub fn is_boundary_case(&self) -> bool {
        self.c == 0.5 && self.a < 0.5
    }

    pub fn satisfies(&self, regime: Regime) -> bool {
        match regime {
            Regime::Lemma => self.regime_lemma1(),
            Regime::Inversion => self.regime_theorems(),
            Regime::InversionWithBoundary => self.regime_theorems() || self.is_boundary_case(),
        }
    }

    pub fn require(&self, regime: Regime) -> Result<()> {
        if self.satisfies(regime) {
            return Ok(());
        }
        let condition = match regime {
            Regime::Lemma => LEMMA_CONDITION,
            Regime::Inversion => INVERSION_CONDITION,
            Regime::InversionWithBoundary => BOUNDARY_CONDITION,
        };
        Err(Error::Regime {
            a: self.a,
            c: self.c,
            condition,
        })
    }

    pub fn decay(&self) -> KernelDecay {
        KernelDecay::for_params(self)
    }
}

/// Algebraic decay exponents of the two kernels in the variable x, where the
/// hypergeometric argument is −x².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelDecay {
    /// F_n(x) = O(x^(−2a)).
    pub exponent_forward: f64,
    /// G(x, u) = O(x^(2a − 2c − 1)) for fixed u.
    pub exponent_inverse: f64,
}

impl KernelDecay {
    pub fn for_params(p: &JacobiParams) -> Self {
        KernelDecay {
            exponent_forward: -2.0 * p.a,
            exponent_inverse: 2.0 * (p.a - p.c) - 1.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive() {
        assert!(JacobiParams::new(0.0, 1.0).is_err());
        assert!(JacobiParams::new(0.5, -1.0).is_err());
        assert!(JacobiParams::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn regimes() {
        let p = JacobiParams::new(0.75, 1.2).unwrap();
        assert!(p.regime_lemma1());
        assert!(p.regime_theorems());
        // c below 2a - 1/2
        let q = JacobiParams::new(0.75, 0.4).unwrap();
        assert!(q.regime_lemma1());
        assert!(!q.regime_theorems());
        let err = q.require(Regime::Inversion).unwrap_err();
        assert!(err.to_string().contains("max(1/2, 2a - 1/2) < c"));
        // c at or beyond 2a + 1/2
        assert!(!JacobiParams::new(0.75, 2.0).unwrap().regime_theorems());
        // boundary case
        let b = JacobiParams::new(0.3, 0.5).unwrap();
        assert!(!b.regime_theorems());
        assert!(b.satisfies(Regime::InversionWithBoundary));
        assert!(!JacobiParams::new(0.6, 0.5)
            .unwrap()
            .satisfies(Regime::InversionWithBoundary));
        // lemma fails when c <= a - 1/2
        assert!(!JacobiParams::new(2.0, 1.5).unwrap().regime_lemma1());
    }

    #[test]
    fn decay_exponents() {
        let d = JacobiParams::new(0.75, 1.2).unwrap().decay();
        assert_eq!(d.exponent_forward, -1.5);
        assert!((d.exponent_inverse - (-1.9)).abs() < 1e-15);
    }
}
