//! Kinetic-energy and pair-potential laws.
//!
//! A [`Law`] is a scalar function of one positive real (a momentum modulus
//! for kinetic laws, a distance for potentials) that can be evaluated
//! together with its exact first and second derivatives. Every built-in kind
//! lives on the open half line `(0, ∞)`; evaluating at or below zero is an
//! error rather than a clamped value.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Value and first two derivatives of a law at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivs {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Derivs {
    fn scaled(self, c: f64) -> Self {
        Derivs {
            value: c * self.value,
            d1: c * self.d1,
            d2: c * self.d2,
        }
    }
}

type CustomFn = dyn Fn(f64) -> Derivs + Send + Sync;

/// User-supplied law: a closure returning value and derivatives.
#[derive(Clone)]
pub struct CustomLaw {
    name: String,
    domain: (f64, f64),
    eval: Arc<CustomFn>,
}

#[derive(Clone)]
pub enum Law {
    /// `coefficient · x^exponent`
    Power {
        coefficient: f64,
        exponent: f64,
    },
    /// `−strength / x`
    Coulomb {
        strength: f64,
    },
    /// `stiffness · x²`
    Harmonic {
        stiffness: f64,
    },
    /// `amplitude · exp(−(x/range)²)`
    Gaussian {
        amplitude: f64,
        range: f64,
    },
    /// `amplitude · exp(−x/range)`
    Exponential {
        amplitude: f64,
        range: f64,
    },
    /// `Σ wᵢ · lawᵢ(x)`
    Sum(Arc<[(f64, Law)]>),
    Custom(CustomLaw),
}

impl Law {
    pub fn power(coefficient: f64, exponent: f64) -> Self {
        Law::Power {
            coefficient,
            exponent,
        }
    }

    /// `sgn(β)·G·x^β` with `G > 0` and `β ≠ 0`.
    pub fn signed_power(strength: f64, exponent: f64) -> Result<Self> {
        if !(strength > 0.0) || !strength.is_finite() {
            return Err(Error::invalid(format!(
                "signed power strength must be > 0, got {strength}"
            )));
        }
        if exponent == 0.0 || !exponent.is_finite() {
            return Err(Error::invalid(
                "signed power exponent must be finite and non-zero",
            ));
        }
        Ok(Law::power(exponent.signum() * strength, exponent))
    }

    /// Nonrelativistic kinetic energy `p²/(2m)`.
    pub fn nonrelativistic(mass: f64) -> Self {
        Law::power(0.5 / mass, 2.0)
    }

    /// Massless ultrarelativistic kinetic energy `|p|`.
    pub fn ultrarelativistic() -> Self {
        Law::power(1.0, 1.0)
    }

    pub fn coulomb(strength: f64) -> Self {
        Law::Coulomb { strength }
    }

    pub fn harmonic(stiffness: f64) -> Self {
        Law::Harmonic { stiffness }
    }

    pub fn gaussian(amplitude: f64, range: f64) -> Self {
        Law::Gaussian { amplitude, range }
    }

    pub fn exponential(amplitude: f64, range: f64) -> Self {
        Law::Exponential { amplitude, range }
    }

    pub fn weighted_sum(terms: Vec<(f64, Law)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptySum);
        }
        let (lo, hi) = terms
            .iter()
            .fold((0.0_f64, f64::INFINITY), |(lo, hi), (_, l)| {
                let (a, b) = l.domain();
                (lo.max(a), hi.min(b))
            });
        if lo >= hi {
            return Err(Error::invalid("weighted sum members have disjoint domains"));
        }
        Ok(Law::Sum(terms.into()))
    }

    /// Law backed by a closure. `domain` is the open interval on which the
    /// closure is trusted.
    pub fn custom<F>(name: impl Into<String>, domain: (f64, f64), eval: F) -> Self
    where
        F: Fn(f64) -> Derivs + Send + Sync + 'static,
    {
        Law::Custom(CustomLaw {
            name: name.into(),
            domain,
            eval: Arc::new(eval),
        })
    }

    /// Open interval on which the law and both derivatives are finite.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            Law::Sum(terms) => terms
                .iter()
                .fold((0.0_f64, f64::INFINITY), |(lo, hi), (_, l)| {
                    let (a, b) = l.domain();
                    (lo.max(a), hi.min(b))
                }),
            Law::Custom(c) => c.domain,
            _ => (0.0, f64::INFINITY),
        }
    }

    pub fn eval(&self, x: f64) -> Result<Derivs> {
        let (lo, hi) = self.domain();
        if !(x > lo && x < hi) {
            return Err(Error::OutOfDomain {
                law: self.to_string(),
                x,
            });
        }
        let d = self.eval_unchecked(x);
        if !(d.value.is_finite() && d.d1.is_finite() && d.d2.is_finite()) {
            return Err(Error::NonFinite {
                law: self.to_string(),
                x,
            });
        }
        Ok(d)
    }

    fn eval_unchecked(&self, x: f64) -> Derivs {
        match self {
            Law::Power {
                coefficient: c,
                exponent: e,
            } => {
                let xe2 = x.powf(e - 2.0);
                Derivs {
                    value: c * xe2 * x * x,
                    d1: c * e * xe2 * x,
                    d2: c * e * (e - 1.0) * xe2,
                }
            }
            Law::Coulomb { strength: g } => Derivs {
                value: -g / x,
                d1: g / (x * x),
                d2: -2.0 * g / (x * x * x),
            },
            Law::Harmonic { stiffness: k } => Derivs {
                value: k * x * x,
                d1: 2.0 * k * x,
                d2: 2.0 * k,
            },
            Law::Gaussian {
                amplitude: a,
                range: r,
            } => {
                let t = x / r;
                let g = a * (-t * t).exp();
                Derivs {
                    value: g,
                    d1: -2.0 * t / r * g,
                    d2: (4.0 * t * t - 2.0) / (r * r) * g,
                }
            }
            Law::Exponential {
                amplitude: a,
                range: r,
            } => {
                let g = a * (-x / r).exp();
                Derivs {
                    value: g,
                    d1: -g / r,
                    d2: g / (r * r),
                }
            }
            Law::Sum(terms) => terms.iter().fold(
                Derivs {
                    value: 0.0,
                    d1: 0.0,
                    d2: 0.0,
                },
                |acc, (w, l)| {
                    let d = l.eval_unchecked(x).scaled(*w);
                    Derivs {
                        value: acc.value + d.value,
                        d1: acc.d1 + d.d1,
                        d2: acc.d2 + d.d2,
                    }
                },
            ),
            Law::Custom(c) => (c.eval)(x),
        }
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        self.eval(x).map(|d| d.value)
    }

    pub fn d1(&self, x: f64) -> Result<f64> {
        self.eval(x).map(|d| d.d1)
    }

    pub fn d2(&self, x: f64) -> Result<f64> {
        self.eval(x).map(|d| d.d2)
    }

    /// `(coefficient, exponent)` if this is a single power term.
    pub fn as_power(&self) -> Option<(f64, f64)> {
        match self {
            Law::Power {
                coefficient,
                exponent,
            } => Some((*coefficient, *exponent)),
            Law::Harmonic { stiffness } => Some((*stiffness, 2.0)),
            Law::Coulomb { strength } => Some((-strength, -1.0)),
            _ => None,
        }
    }

    /// Checks the constraints a kinetic law must satisfy: finite and strictly
    /// increasing. Power laws need a positive coefficient and exponent; other
    /// kinds are sampled on a logarithmic grid.
    pub fn validate_kinetic(&self) -> Result<()> {
        if let Law::Power {
            coefficient,
            exponent,
        } = self
        {
            if !(*coefficient > 0.0 && *exponent > 0.0) {
                return Err(Error::invalid(format!(
                    "kinetic power law needs coefficient > 0 and exponent > 0, got {self}"
                )));
            }
            return Ok(());
        }
        let (lo, hi) = self.domain();
        for i in -40..=40 {
            let x = 10f64.powf(i as f64 * 0.2);
            if x <= lo || x >= hi {
                continue;
            }
            let d = self.eval(x)?;
            if d.d1 <= 0.0 {
                return Err(Error::invalid(format!(
                    "kinetic law {self} is not increasing at p = {x}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Law::Power {
                coefficient,
                exponent,
            } => write!(f, "{coefficient}*x^{exponent}"),
            Law::Coulomb { strength } => write!(f, "-{strength}/x"),
            Law::Harmonic { stiffness } => write!(f, "{stiffness}*x^2"),
            Law::Gaussian { amplitude, range } => write!(f, "{amplitude}*exp(-(x/{range})^2)"),
            Law::Exponential { amplitude, range } => write!(f, "{amplitude}*exp(-x/{range})"),
            Law::Sum(terms) => {
                for (i, (w, l)) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{w}*({l})")?;
                }
                Ok(())
            }
            Law::Custom(c) => write!(f, "custom:{}", c.name),
        }
    }
}

impl fmt::Debug for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Law({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn linear_and_quadratic_power() {
        let d = Law::power(1.0, 1.0).eval(2.5).unwrap();
        assert_eq!((d.value, d.d1, d.d2), (2.5, 1.0, 0.0));
        let d = Law::power(0.5, 2.0).eval(3.0).unwrap();
        assert_eq!((d.value, d.d1, d.d2), (4.5, 3.0, 1.0));
    }

    #[test]
    fn coulomb_derivatives() {
        let d = Law::coulomb(1.0).eval(2.0).unwrap();
        assert_eq!((d.value, d.d1, d.d2), (-0.5, 0.25, -0.25));
    }

    #[test]
    fn weighted_sums() {
        let s = Law::weighted_sum(vec![
            (1.0, Law::power(1.0, 1.0)),
            (-1.0, Law::power(1.0, -1.0)),
        ])
        .unwrap();
        assert_eq!(s.value(1.0).unwrap(), 0.0);

        let s = Law::weighted_sum(vec![(2.0, Law::harmonic(0.5))]).unwrap();
        assert_eq!(s.value(1.0).unwrap(), 1.0);

        let s = Law::weighted_sum(vec![(1.0, Law::signed_power(1.0, -1.0).unwrap())]).unwrap();
        assert_eq!(s.value(4.0).unwrap(), -0.25);

        assert_eq!(Law::weighted_sum(vec![]).unwrap_err(), Error::EmptySum);
    }

    #[test]
    fn domain_violations_are_errors() {
        for law in [Law::coulomb(1.0), Law::power(1.0, -0.5), Law::harmonic(1.0)] {
            assert!(matches!(law.eval(0.0), Err(Error::OutOfDomain { .. })));
            assert!(matches!(law.eval(-1.0), Err(Error::OutOfDomain { .. })));
            assert!(matches!(law.eval(f64::NAN), Err(Error::OutOfDomain { .. })));
        }
    }

    #[test]
    fn signed_power_convention() {
        assert_eq!(
            Law::signed_power(0.5, -1.0).unwrap().value(2.0).unwrap(),
            -0.25
        );
        assert_eq!(
            Law::signed_power(0.5, 2.0).unwrap().value(2.0).unwrap(),
            2.0
        );
        assert!(Law::signed_power(-1.0, 1.0).is_err());
        assert!(Law::signed_power(1.0, 0.0).is_err());
    }

    #[test]
    fn kinetic_validation() {
        assert!(Law::nonrelativistic(1.0).validate_kinetic().is_ok());
        assert!(Law::power(-1.0, 2.0).validate_kinetic().is_err());
        assert!(Law::power(1.0, 0.0).validate_kinetic().is_err());
        assert!(Law::coulomb(1.0).validate_kinetic().is_ok());
        assert!(Law::gaussian(1.0, 1.0).validate_kinetic().is_err());
    }

    #[test]
    fn custom_law_respects_declared_domain() {
        let law = Law::custom("shifted", (1.0, 10.0), |x| Derivs {
            value: (x - 1.0).ln(),
            d1: 1.0 / (x - 1.0),
            d2: -1.0 / ((x - 1.0) * (x - 1.0)),
        });
        assert!(law.eval(1.0).is_err());
        assert!(law.eval(10.0).is_err());
        assert_relative_eq!(law.value(2.0).unwrap(), 0.0);
    }
}
