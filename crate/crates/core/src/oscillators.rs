//! Two coupled one-dimensional oscillators
//!
//! ```text
//! H = p1²/(2μ_a) + p2²/(2μ_b) + (k_a x1² + k_b x2² + k_c x1 x2)/2
//! ```
//!
//! Rescaling `x1 → (μ_b/μ_a)^{1/4} x1`, `x2 → (μ_a/μ_b)^{1/4} x2` gives a
//! common mass `μ = √(μ_a μ_b)` and stiffness matrix `[[a, c], [c, b]]` with
//! `a = √(μ_b/μ_a) k_a`, `b = √(μ_a/μ_b) k_b`, `c = k_c/2`. A rotation then
//! decouples it into stiffnesses `A` (continuously connected to `a`) and `B`.

use crate::error::{Error, Result};

const KC_ZERO: f64 = 1e-13;
const EPS_ZERO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscPair {
    pub mu_a: f64,
    pub mu_b: f64,
    pub k_a: f64,
    pub k_b: f64,
    pub k_c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalModes {
    pub a: f64,
    pub b: f64,
    pub mu: f64,
}

impl NormalModes {
    pub fn omega_a(&self) -> f64 {
        (self.a / self.mu).sqrt()
    }

    pub fn omega_b(&self) -> f64 {
        (self.b / self.mu).sqrt()
    }
}

impl OscPair {
    pub fn new(mu_a: f64, mu_b: f64, k_a: f64, k_b: f64, k_c: f64) -> Result<Self> {
        if !(mu_a > 0.0 && mu_b > 0.0) {
            return Err(Error::invalid(format!(
                "oscillator masses must be > 0, got {mu_a} and {mu_b}"
            )));
        }
        Ok(OscPair {
            mu_a,
            mu_b,
            k_a,
            k_b,
            k_c,
        })
    }

    /// Coupling parameter `ε`; `None` when the pair is decoupled.
    pub fn epsilon(&self) -> Option<f64> {
        if self.decoupled() {
            None
        } else {
            let (a, b) = self.rescaled();
            Some((b - a) / self.k_c)
        }
    }

    fn decoupled(&self) -> bool {
        self.k_c.abs() < KC_ZERO * self.k_a.abs().max(self.k_b.abs()) || self.k_c == 0.0
    }

    fn rescaled(&self) -> (f64, f64) {
        let r = (self.mu_b / self.mu_a).sqrt();
        (r * self.k_a, self.k_b / r)
    }

    pub fn normal_modes(&self) -> NormalModes {
        let mu = (self.mu_a * self.mu_b).sqrt();
        let (a, b) = self.rescaled();
        if self.decoupled() {
            return NormalModes { a, b, mu };
        }
        let c = self.k_c / 2.0;
        let eps = (b - a) / self.k_c;
        // sgn(ε)√(1+ε²) − ε without cancellation; ε → 0 takes the + side.
        let s = if eps.abs() < EPS_ZERO {
            1.0
        } else {
            eps.signum() / ((1.0 + eps * eps).sqrt() + eps.abs())
        };
        NormalModes {
            a: a - c * s,
            b: b + c * s,
            mu,
        }
    }

    /// `E_{nn'} = √(A/μ)(n + ½) + √(B/μ)(n' + ½)`.
    pub fn level(&self, n: u32, n_prime: u32) -> Result<f64> {
        let m = self.normal_modes();
        if m.a < 0.0 || m.b < 0.0 {
            return Err(Error::UnstableMode { a: m.a, b: m.b });
        }
        Ok(m.omega_a() * (n as f64 + 0.5) + m.omega_b() * (n_prime as f64 + 0.5))
    }

    /// Same pair with the two oscillators relabelled.
    pub fn swapped(&self) -> OscPair {
        OscPair {
            mu_a: self.mu_b,
            mu_b: self.mu_a,
            k_a: self.k_b,
            k_b: self.k_a,
            k_c: self.k_c,
        }
    }
}
