//! Envelope theory for `N` identical particles.
//!
//! The compact set ties the energy to two unknowns, the mean pair distance
//! `ρ0` and the mean momentum `p0`:
//!
//! ```text
//! E            = N T(p0) + C V(ρ0)          C = N(N−1)/2
//! N T'(p0) p0  = C V'(ρ0) ρ0
//! Q            = √C ρ0 p0
//! ```
//!
//! The quantisation condition eliminates `p0`, leaving one scalar equation in
//! `ρ0` that is bracketed on a geometric grid and refined. Solving the same
//! set with `Q → λ` gives the purely orbital motion around which small
//! radial oscillations are quantised; matching their spectrum against the
//! first-order response of the energy to `Q` yields the weight `φ` of the
//! improved theory.

use crate::error::{Error, Result};
use crate::laws::Law;
use crate::qnum::{self, QuantumSpec, Split};
use crate::roots::{self, Scan};
use crate::settle::{settle, SettledFilling};

/// Residuals above this relative size reject a candidate root.
pub const RESIDUAL_ACCEPT: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct IdenticalSystem {
    n: usize,
    dim: u32,
    kinetic: Law,
    potential: Law,
}

impl IdenticalSystem {
    pub fn new(n: usize, dim: u32, kinetic: Law, potential: Law) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid(format!(
                "need at least 2 particles, got {n}"
            )));
        }
        if dim < 2 {
            return Err(Error::invalid(format!("dimension must be >= 2, got {dim}")));
        }
        kinetic.validate_kinetic()?;
        Ok(IdenticalSystem {
            n,
            dim,
            kinetic,
            potential,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn kinetic(&self) -> &Law {
        &self.kinetic
    }

    pub fn potential(&self) -> &Law {
        &self.potential
    }

    /// Number of pairs `N(N−1)/2`.
    pub fn pairs(&self) -> f64 {
        let n = self.n as f64;
        n * (n - 1.0) / 2.0
    }

    /// Bound character of the plain (φ = 2) envelope eigenvalue, known only
    /// for pure power laws.
    pub fn variational(&self) -> Variational {
        Variational::from_laws(&[&self.kinetic, &self.potential])
    }
}

/// Whether an eigenvalue is a guaranteed bound on the exact one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variational {
    Upper,
    Lower,
    Exact,
    Unknown,
}

impl Variational {
    /// Every `f(√x)` concave gives an upper bound, every one convex a lower
    /// bound. Decidable for pure power laws only.
    pub fn from_laws(laws: &[&Law]) -> Self {
        let mut concave = true;
        let mut convex = true;
        for law in laws {
            let Some((c, e)) = law.as_power() else {
                return Variational::Unknown;
            };
            // f(√x) = c x^{e/2} has curvature of sign c e (e − 2).
            let curvature = c * e * (e - 2.0);
            concave &= curvature <= 0.0;
            convex &= curvature >= 0.0;
        }
        match (concave, convex) {
            (true, true) => Variational::Exact,
            (true, false) => Variational::Upper,
            (false, true) => Variational::Lower,
            (false, false) => Variational::Unknown,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Variational::Upper => "upper",
            Variational::Lower => "lower",
            Variational::Exact => "exact",
            Variational::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EtSolution {
    /// Global quantum number used.
    pub q: f64,
    pub energy: f64,
    pub rho0: f64,
    pub p0: f64,
    /// `|N T'(p0) p0 − C V'(ρ0) ρ0|` relative to the sum of magnitudes.
    pub motion_residual: f64,
    /// `|Q − √C ρ0 p0| / Q`.
    pub quantization_residual: f64,
    /// Number of accepted roots found on the scan range.
    pub root_count: usize,
    pub variational: Variational,
}

/// All solutions of the compact set for `q`, lowest energy first.
pub fn solve_et_all(system: &IdenticalSystem, q: f64) -> Result<Vec<EtSolution>> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::invalid(format!(
            "global quantum number must be > 0, got {q}"
        )));
    }
    if let (Some((_, alpha)), Some((g, beta))) =
        (system.kinetic.as_power(), system.potential.as_power())
    {
        if g * beta > 0.0 && alpha + beta <= 0.0 {
            return Err(Error::UnsupportedRegime(format!(
                "kinetic exponent {alpha} + potential exponent {beta} <= 0 admits no bound state"
            )));
        }
    }
    let n = system.n as f64;
    let c = system.pairs();
    let sc = c.sqrt();
    let t = &system.kinetic;
    let v = &system.potential;
    let motion = |rho: f64| -> Result<(f64, f64, f64)> {
        let p = q / (sc * rho);
        let lhs = n * t.d1(p)? * p;
        let rhs = c * v.d1(rho)? * rho;
        Ok((lhs, rhs, p))
    };
    let rhos = roots::find_all("ET equation of motion", Scan::SOLVER, |rho| {
        motion(rho).map(|(l, r, _)| l - r)
    })?;

    let mut out = Vec::with_capacity(rhos.len());
    for rho in rhos {
        let (lhs, rhs, p) = motion(rho)?;
        let motion_residual = relative_gap(lhs, rhs);
        if motion_residual > RESIDUAL_ACCEPT {
            continue;
        }
        let energy = n * t.value(p)? + c * v.value(rho)?;
        out.push(EtSolution {
            q,
            energy,
            rho0: rho,
            p0: p,
            motion_residual,
            quantization_residual: (q - sc * rho * p).abs() / q,
            root_count: 0,
            variational: system.variational(),
        });
    }
    if out.is_empty() {
        return Err(Error::NoRoot {
            what: "ET equation of motion (no candidate met the residual tolerance)".into(),
            lo: Scan::SOLVER.lo,
            hi: Scan::SOLVER.hi,
            trace: String::new(),
        });
    }
    out.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    let count = out.len();
    for s in &mut out {
        s.root_count = count;
    }
    Ok(out)
}

/// Lowest-energy solution of the compact set for `q`.
pub fn solve_et(system: &IdenticalSystem, q: f64) -> Result<EtSolution> {
    Ok(solve_et_all(system, q)?.swap_remove(0))
}

pub(crate) fn relative_gap(a: f64, b: f64) -> f64 {
    let scale = a.abs() + b.abs();
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Closed-form energy for `T = F p^α`, `V = sgn(β) G r^β`.
pub fn power_law_energy(n: usize, f: f64, alpha: f64, g: f64, beta: f64, q: f64) -> Result<f64> {
    if !(f > 0.0 && alpha > 0.0 && g > 0.0) || beta == 0.0 {
        return Err(Error::invalid(
            "power law energy needs F > 0, alpha > 0, G > 0 and beta != 0",
        ));
    }
    if alpha + beta <= 0.0 {
        return Err(Error::UnsupportedRegime(format!(
            "alpha + beta = {} <= 0 admits no bound state",
            alpha + beta
        )));
    }
    let nn = n as f64;
    let c = nn * (nn - 1.0) / 2.0;
    let inner = (c * g / alpha).powf(alpha)
        * (nn * f / beta.abs()).powf(beta)
        * (q / c.sqrt()).powf(alpha * beta);
    Ok(beta.signum() * (alpha + beta) * inner.powf(1.0 / (alpha + beta)))
}

/// Small radial oscillations around the purely orbital solution.
#[derive(Debug, Clone, PartialEq)]
pub struct DosmIdenticalReport {
    pub lambda: f64,
    /// Solution of the compact set with `Q → λ`.
    pub orbital: EtSolution,
    /// Effective mass of the radial motion.
    pub mu: f64,
    /// Stiffness of the radial motion.
    pub k: f64,
    pub phi: f64,
    n: usize,
}

impl DosmIdenticalReport {
    /// Radial excitation energy for radial quantum number `ν`.
    pub fn radial_energy(&self, nu: f64) -> f64 {
        let nn = self.n as f64;
        let c = nn * (nn - 1.0) / 2.0;
        (self.k / self.mu).sqrt() * nu / c.sqrt()
    }

    /// Orbital energy plus radial excitation.
    pub fn energy(&self, nu: f64) -> f64 {
        self.orbital.energy + self.radial_energy(nu)
    }
}

pub fn dosm_identical(system: &IdenticalSystem, lambda: f64) -> Result<DosmIdenticalReport> {
    if !(lambda > 0.0) {
        return Err(Error::DegenerateOrbital(format!(
            "orbital quantum number must be > 0, got {lambda}"
        )));
    }
    let orbital = solve_et(system, lambda)?;
    let n = system.n as f64;
    let c = system.pairs();
    let (p, rho) = (orbital.p0, orbital.rho0);
    let t = system.kinetic.eval(p)?;
    let v2 = system.potential.d2(rho)?;
    let mu = p / (n * t.d1);
    let k = 2.0 * n * p / (rho * rho) * t.d1 + n * p * p / (rho * rho) * t.d2 + c * v2;
    if !(k > 0.0) {
        return Err(Error::UnstableOrbital(format!(
            "radial stiffness k = {k} at rho = {rho}"
        )));
    }
    let phi = lambda / (n * p * t.d1) * (k / (c * mu)).sqrt();
    Ok(DosmIdenticalReport {
        lambda,
        orbital,
        mu,
        k,
        phi,
        n: system.n,
    })
}

/// `φ` extracted at orbital quantum number `λ`.
pub fn phi_identical(system: &IdenticalSystem, lambda: f64) -> Result<f64> {
    dosm_identical(system, lambda).map(|r| r.phi)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IetSolution {
    pub split: Split,
    pub phi: f64,
    pub q_phi: f64,
    pub et: EtSolution,
}

/// Improved envelope solution: `φ` from the orbital motion at `λ`, then the
/// compact set with `Q_φ = φν + λ`.
pub fn solve_iet(system: &IdenticalSystem, split: Split) -> Result<IetSolution> {
    if !(split.lambda > 0.0) {
        return Err(Error::DegenerateOrbital(
            "lambda = 0 (all l = 0 in D = 2) leaves no orbital motion to expand around".into(),
        ));
    }
    let phi = phi_identical(system, split.lambda)?;
    solve_with_phi(system, split, phi)
}

/// [`solve_iet`] with explicit Jacobi-mode quantum numbers.
pub fn solve_iet_spec(system: &IdenticalSystem, spec: &QuantumSpec) -> Result<IetSolution> {
    spec.expect_internal(system.n - 1)?;
    solve_iet(system, spec.split())
}

/// Improved solution for fermions of internal degeneracy `d`, with the
/// filling and `φ` made self-consistent.
pub fn solve_iet_fgs(
    system: &IdenticalSystem,
    degeneracy: u32,
) -> Result<SettledFilling<IetSolution>> {
    settle(
        |phi| qnum::fgs_fill(system.n, system.dim, degeneracy, phi),
        |f| phi_identical(system, f.split.lambda).map(|phi| (phi, phi)),
        |f, phi| {
            let s = solve_with_phi(system, f.split, phi)?;
            Ok((s.et.energy, s))
        },
    )
}

/// Compact set with `Q_φ` for a caller-chosen `φ`.
pub fn solve_with_phi(system: &IdenticalSystem, split: Split, phi: f64) -> Result<IetSolution> {
    let q_phi = split.q(phi);
    let mut et = solve_et(system, q_phi)?;
    if phi != 2.0 && et.variational != Variational::Exact {
        et.variational = Variational::Unknown;
    }
    Ok(IetSolution {
        split,
        phi,
        q_phi,
        et,
    })
}
