//! Critical coupling constants for pair potentials `V(r) = −g v(r)` with a
//! positive short-range shape `v`, for nonrelativistic particles of mass `m`.

use crate::error::{Error, Result};
use crate::laws::Law;
use crate::roots::{self, Scan};

/// Root of `2 v(u) + u v'(u) = 0`, the smallest on the scan range.
pub fn u_star(v: &Law) -> Result<f64> {
    let roots = roots::find_all("2 v(u) + u v'(u)", Scan::SHAPE, |u| {
        let d = v.eval(u)?;
        Ok(2.0 * d.value + u * d.d1)
    })?;
    let u = roots[0];
    let vu = v.value(u)?;
    if !(vu > 0.0) {
        return Err(Error::invalid(format!(
            "shape must be positive at u* = {u}, got {vu}"
        )));
    }
    let tail = v.value(Scan::SHAPE.hi)?.abs();
    if tail > 1e-6 * vu {
        return Err(Error::invalid(format!(
            "shape does not vanish at large distance (v({:e}) = {tail})",
            Scan::SHAPE.hi
        )));
    }
    Ok(u)
}

/// `g = 2 Q² / (u² v(u) m N (N−1)²)`.
pub fn critical_g(v: &Law, mass: f64, n: usize, q: f64) -> Result<f64> {
    if !(mass > 0.0) || n < 2 || !(q > 0.0) {
        return Err(Error::invalid(format!(
            "critical coupling needs m > 0, N >= 2, Q > 0 (got m={mass}, N={n}, Q={q})"
        )));
    }
    let u = u_star(v)?;
    let nn = n as f64;
    Ok(2.0 * q * q / (u * u * v.value(u)? * mass * nn * (nn - 1.0).powi(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn shape_roots() {
        assert_relative_eq!(
            u_star(&Law::gaussian(1.0, 1.0)).unwrap(),
            1.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            u_star(&Law::exponential(1.0, 1.0)).unwrap(),
            2.0,
            max_relative = 1e-12
        );
        let lorentz2 = Law::custom("1/(1+u^2)^2", (0.0, f64::INFINITY), |u| {
            let s = 1.0 + u * u;
            crate::laws::Derivs {
                value: s.powi(-2),
                d1: -4.0 * u * s.powi(-3),
                d2: (-4.0 * s + 24.0 * u * u) * s.powi(-4),
            }
        });
        assert_relative_eq!(u_star(&lorentz2).unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn gaussian_two_body() {
        let g = critical_g(&Law::gaussian(1.0, 1.0), 1.0, 2, 1.5).unwrap();
        assert_relative_eq!(g, 2.25 * std::f64::consts::E, max_relative = 1e-12);
    }

    #[test]
    fn non_vanishing_shape_is_rejected() {
        assert!(u_star(&Law::power(1.0, 1.0)).is_err());
    }
}
