//! Quantum-number bookkeeping.
//!
//! The envelope equations depend on the internal Jacobi quantum numbers only
//! through aggregates: the radial sum `ν = Σ(nᵢ + 1/2)` and the orbital sum
//! `λ = Σ(lᵢ + (D−2)/2)`. The deformed global quantum number is
//! `Q_φ = φν + λ`; `φ = 2` gives back the usual `Σ(2nᵢ + lᵢ + D/2)`.
//!
//! Ground states of identical bosons put every quantum number to zero.
//! Fermion ground states pile particles on single-particle levels `(n, l)` of
//! a common central field in order of increasing `φn + l`, each level holding
//! `W_l^D` particles; the centre-of-mass removal shows up as additive tails
//! `(N−1)/2` and `(N−1)(D−2)/2` on `ν` and `λ`.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// One radial/orbital mode `(n, l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mode {
    pub n: u32,
    pub l: u32,
}

impl Mode {
    pub const GROUND: Mode = Mode { n: 0, l: 0 };

    pub fn new(n: u32, l: u32) -> Self {
        Mode { n, l }
    }
}

/// Aggregate radial and orbital quantum numbers `(ν, λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Split {
    pub nu: f64,
    pub lambda: f64,
}

impl Split {
    pub fn new(nu: f64, lambda: f64) -> Self {
        Split { nu, lambda }
    }

    /// All `count` modes in their ground state.
    pub fn ground(count: usize, dim: u32) -> Self {
        let c = count as f64;
        Split {
            nu: 0.5 * c,
            lambda: 0.5 * c * (dim as f64 - 2.0),
        }
    }

    fn from_modes(modes: &[Mode], dim: u32) -> Self {
        let half_orbital = 0.5 * (dim as f64 - 2.0);
        modes.iter().fold(Split::new(0.0, 0.0), |acc, m| Split {
            nu: acc.nu + m.n as f64 + 0.5,
            lambda: acc.lambda + m.l as f64 + half_orbital,
        })
    }

    /// `Q_φ = φν + λ`.
    pub fn q(&self, phi: f64) -> f64 {
        phi * self.nu + self.lambda
    }
}

/// Explicit quantum numbers for the internal Jacobi modes, plus the
/// relative mode of the distinct particle for `N_a + 1` systems.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumSpec {
    dim: u32,
    internal: Vec<Mode>,
    relative: Option<Mode>,
}

impl QuantumSpec {
    pub fn identical(dim: u32, internal: Vec<Mode>) -> Result<Self> {
        check_dim(dim)?;
        Ok(QuantumSpec {
            dim,
            internal,
            relative: None,
        })
    }

    pub fn n_plus_one(dim: u32, internal: Vec<Mode>, relative: Mode) -> Result<Self> {
        check_dim(dim)?;
        Ok(QuantumSpec {
            dim,
            internal,
            relative: Some(relative),
        })
    }

    /// Ground state of `n` identical particles (`n − 1` internal modes).
    pub fn identical_ground(dim: u32, n: usize) -> Result<Self> {
        Self::identical(dim, vec![Mode::GROUND; n.saturating_sub(1)])
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn internal(&self) -> &[Mode] {
        &self.internal
    }

    pub fn relative(&self) -> Option<Mode> {
        self.relative
    }

    /// `(ν, λ)` of the internal modes.
    pub fn split(&self) -> Split {
        Split::from_modes(&self.internal, self.dim)
    }

    /// `(ν_b, λ_b)` of the relative mode, if any.
    pub fn relative_split(&self) -> Option<Split> {
        self.relative.map(|m| Split::from_modes(&[m], self.dim))
    }

    /// Checks the number of internal modes against `expected`.
    pub fn expect_internal(&self, expected: usize) -> Result<()> {
        if self.internal.len() != expected {
            return Err(Error::invalid(format!(
                "expected {expected} internal modes, got {}",
                self.internal.len()
            )));
        }
        Ok(())
    }
}

fn check_dim(dim: u32) -> Result<()> {
    if dim < 2 {
        return Err(Error::invalid(format!("dimension must be >= 2, got {dim}")));
    }
    Ok(())
}

/// `Q_φ = φν + λ` of the internal modes of `spec`.
pub fn global_q(spec: &QuantumSpec, phi: f64) -> f64 {
    spec.split().q(phi)
}

fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of states `W_l^D` in a level of orbital momentum `l`, times the
/// internal degeneracy `d`.
pub fn level_degeneracy(l: u32, dim: u32, d: u32) -> u64 {
    let (l, dim, d) = (l as u64, dim as u64, d as u64);
    match dim {
        0 | 1 => 0,
        2 => d * if l == 0 { 1 } else { 2 },
        _ => {
            let w = (2 * l + dim - 2) as u128 * binom(l + dim - 3, dim - 3) / (dim - 2) as u128;
            d * w as u64
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    Boson,
    Fermion { degeneracy: u32 },
}

/// A single-particle level and how many particles sit on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilledLevel {
    pub n: u32,
    pub l: u32,
    pub occupancy: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundStateResult {
    pub particles: usize,
    pub dim: u32,
    pub phi: f64,
    pub statistics: Statistics,
    pub split: Split,
    pub q_phi: f64,
    pub levels: Vec<FilledLevel>,
}

impl GroundStateResult {
    fn from_levels(
        particles: usize,
        dim: u32,
        phi: f64,
        statistics: Statistics,
        levels: Vec<FilledLevel>,
    ) -> Self {
        let tail = (particles as f64 - 1.0) * 0.5;
        let (sn, sl) = levels.iter().fold((0u64, 0u64), |(sn, sl), lv| {
            (
                sn + lv.n as u64 * lv.occupancy,
                sl + lv.l as u64 * lv.occupancy,
            )
        });
        let split = Split {
            nu: sn as f64 + tail,
            lambda: sl as f64 + tail * (dim as f64 - 2.0),
        };
        GroundStateResult {
            particles,
            dim,
            phi,
            statistics,
            split,
            q_phi: split.q(phi),
            levels,
        }
    }

    /// Same filling (same `ν` and `λ`)?
    pub fn same_filling(&self, other: &GroundStateResult) -> bool {
        self.split == other.split
    }
}

/// Bosonic ground state: all quantum numbers vanish.
pub fn bgs(particles: usize, dim: u32, phi: f64) -> GroundStateResult {
    GroundStateResult::from_levels(
        particles,
        dim,
        phi,
        Statistics::Boson,
        vec![FilledLevel {
            n: 0,
            l: 0,
            occupancy: particles as u64,
        }],
    )
}

/// Fermionic ground state by filling levels in order of increasing `φn + l`
/// (lower `n` first within a tie).
pub fn fgs_fill(
    particles: usize,
    dim: u32,
    degeneracy: u32,
    phi: f64,
) -> Result<GroundStateResult> {
    if dim < 2 || degeneracy == 0 || !(phi > 0.0) || !phi.is_finite() {
        return Err(Error::invalid(format!(
            "fgs needs D >= 2, d >= 1, phi > 0 (got D={dim}, d={degeneracy}, phi={phi})"
        )));
    }
    let statistics = Statistics::Fermion { degeneracy };
    let mut cutoff = 2.0 * phi.max(1.0);
    loop {
        let mut levels: Vec<(f64, u32, u32, u64)> = Vec::new();
        let mut capacity = 0u64;
        let n_max = (cutoff / phi).floor() as u32;
        for n in 0..=n_max {
            let l_max = (cutoff - phi * n as f64).floor();
            if l_max < 0.0 {
                continue;
            }
            for l in 0..=l_max as u32 {
                let w = level_degeneracy(l, dim, degeneracy);
                capacity += w;
                levels.push((phi * n as f64 + l as f64, n, l, w));
            }
        }
        if capacity >= particles as u64 {
            levels.sort_by(|a, b| key_order(a.0, b.0).then(a.1.cmp(&b.1)));
            let mut left = particles as u64;
            let mut filled = Vec::new();
            for (_, n, l, w) in levels {
                if left == 0 {
                    break;
                }
                let take = w.min(left);
                filled.push(FilledLevel {
                    n,
                    l,
                    occupancy: take,
                });
                left -= take;
            }
            return Ok(GroundStateResult::from_levels(
                particles, dim, phi, statistics, filled,
            ));
        }
        cutoff *= 2.0;
    }
}

fn key_order(a: f64, b: f64) -> Ordering {
    if (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0) {
        Ordering::Equal
    } else {
        a.total_cmp(&b)
    }
}

/// The two fillings with a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// Harmonic-oscillator shells, `φ = 2`.
    Phi2,
    /// Shells of constant `n + l`, `φ = 1`.
    Phi1,
}

/// Closed-form fermionic `Q_φ` for `φ ∈ {1, 2}`: with `q` the largest shell
/// index leaving a non-negative remainder `r`, `Q = (filled-shell sum) + qr +
/// tail`.
pub fn fgs_closed(particles: usize, dim: u32, degeneracy: u32, form: ClosedForm) -> f64 {
    let (n, dd, d) = (particles as u128, dim as u64, degeneracy as u128);
    // (particles in shells below q, their summed shell index)
    let shells = |q: u64| -> (u128, f64) {
        match form {
            ClosedForm::Phi2 => (
                d * binom(q + dd - 1, dd),
                (d * dd as u128 * binom(q + dd - 1, dd + 1)) as f64,
            ),
            ClosedForm::Phi1 => {
                let count = d * (2 * q + dd - 2) as u128 * binom(q + dd - 2, dd - 1) / dd as u128;
                let sum = d as f64 * (2 * q * dd + dd * dd + 1 - 2 * dd) as f64 / (dd + 1) as f64
                    * binom(q + dd - 2, dd) as f64;
                (count, sum)
            }
        }
    };
    let mut q = 0u64;
    while shells(q + 1).0 <= n {
        q += 1;
    }
    let (below, sum) = shells(q);
    let r = (n - below) as f64;
    let tail = match form {
        ClosedForm::Phi2 => (particles as f64 - 1.0) * dim as f64 / 2.0,
        ClosedForm::Phi1 => (particles as f64 - 1.0) * (dim as f64 - 1.0) / 2.0,
    };
    sum + q as f64 * r + tail
}

/// Large-`N` estimate `D/(D+1) · (φ D!/(2d))^{1/D} · N^{(D+1)/D}`.
pub fn fgs_approx(particles: usize, dim: u32, degeneracy: u32, phi: f64) -> f64 {
    let dd = dim as f64;
    let factorial: f64 = (1..=dim).map(|k| k as f64).product();
    dd / (dd + 1.0)
        * (phi * factorial / (2.0 * degeneracy as f64)).powf(1.0 / dd)
        * (particles as f64).powf((dd + 1.0) / dd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn global_q_examples() {
        let s = QuantumSpec::identical_ground(3, 3).unwrap();
        assert_eq!(global_q(&s, 2.0), 3.0);
        let s = QuantumSpec::identical(3, vec![Mode::new(1, 0), Mode::new(0, 2)]).unwrap();
        assert_eq!(global_q(&s, 2.0), 7.0);
        let s = QuantumSpec::identical_ground(3, 3).unwrap();
        assert_relative_eq!(global_q(&s, 1.76), 2.76, epsilon = 1e-14);
    }

    #[test]
    fn relative_mode_split() {
        let s = QuantumSpec::n_plus_one(3, vec![Mode::new(1, 0)], Mode::new(0, 1)).unwrap();
        assert_eq!(s.split(), Split::new(1.5, 0.5));
        assert_eq!(s.relative_split(), Some(Split::new(0.5, 1.5)));
        assert!(QuantumSpec::identical(1, vec![]).is_err());
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(level_degeneracy(2, 3, 1), 5);
        assert_eq!(level_degeneracy(0, 2, 2), 2);
        assert_eq!(level_degeneracy(3, 2, 1), 2);
        assert_eq!(level_degeneracy(1, 4, 1), 4);
    }

    #[test]
    fn bgs_examples() {
        assert_eq!(bgs(3, 3, 2.0).q_phi, 3.0);
        assert_relative_eq!(
            bgs(3, 3, 3f64.sqrt()).q_phi,
            1.0 + 3f64.sqrt(),
            epsilon = 1e-14
        );
        assert_eq!(bgs(10, 3, 2.0).q_phi, 13.5);
    }

    #[test]
    fn fgs_examples() {
        assert_eq!(fgs_fill(3, 3, 2, 2.0).unwrap().q_phi, 4.0);
        assert_eq!(fgs_fill(2, 3, 2, 2.0).unwrap().q_phi, 1.5);
        assert_eq!(fgs_fill(4, 3, 2, 2.0).unwrap().q_phi, 6.5);
        assert_eq!(fgs_closed(3, 3, 2, ClosedForm::Phi2), 4.0);
        assert_eq!(fgs_closed(5, 3, 2, ClosedForm::Phi2), 9.0);
        assert_eq!(fgs_closed(2, 2, 1, ClosedForm::Phi1), 1.5);
        assert_eq!(fgs_fill(2, 2, 1, 1.0).unwrap().q_phi, 1.5);
    }

    #[test]
    fn fgs_occupancy_sums_to_n() {
        let g = fgs_fill(17, 3, 2, 1.3).unwrap();
        assert_eq!(g.levels.iter().map(|l| l.occupancy).sum::<u64>(), 17);
        assert_relative_eq!(g.q_phi, 1.3 * g.split.nu + g.split.lambda);
    }

    #[test]
    fn small_phi_puts_radial_levels_first() {
        // With φ < 1, (n=1, l=0) sits below (n=0, l=1).
        let g = fgs_fill(4, 3, 2, 0.9).unwrap();
        assert_eq!(
            g.levels[1],
            FilledLevel {
                n: 1,
                l: 0,
                occupancy: 2
            }
        );
        let g = fgs_fill(4, 3, 2, 1.1).unwrap();
        assert_eq!(
            g.levels[1],
            FilledLevel {
                n: 0,
                l: 1,
                occupancy: 2
            }
        );
    }

    #[test]
    fn fgs_rejects_bad_input() {
        assert!(fgs_fill(3, 1, 2, 2.0).is_err());
        assert!(fgs_fill(3, 3, 0, 2.0).is_err());
        assert!(fgs_fill(3, 3, 2, 0.0).is_err());
    }

    #[test]
    fn approx_improves_with_n() {
        let dev = |n| {
            let exact = fgs_fill(n, 2, 2, 1.0).unwrap().q_phi;
            (fgs_approx(n, 2, 2, 1.0) - exact).abs() / exact
        };
        assert!(dev(100) < dev(10));
        let exact = fgs_fill(1000, 3, 2, 2.0).unwrap().q_phi;
        assert!((fgs_approx(1000, 3, 2, 2.0) - exact).abs() / exact < 0.02);
        assert!(fgs_approx(10, 3, 2, 2.0).is_finite());
    }
}
