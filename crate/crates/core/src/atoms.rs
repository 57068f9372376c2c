//! Atoms as `N_e` electrons around a nucleus, in atomic units.

use crate::error::{Error, Result};
use crate::laws::Law;
use crate::nplus1::{self, NPlusOneSystem, Np1Solution};
use crate::qnum::{self, GroundStateResult, Split};

/// Hartree energy in eV.
pub const HARTREE_EV: f64 = 27.21;
/// Spin degeneracy of electron levels.
pub const ELECTRON_SPIN: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Et,
    Iet,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Et => "et",
            Method::Iet => "iet",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtomResult {
    pub z: f64,
    pub electrons: usize,
    pub nucleus_mass: f64,
    pub method: Method,
    /// Eigenvalue in hartree.
    pub energy: f64,
    /// `−energy` in eV.
    pub binding_ev: f64,
    pub phi_a: f64,
    pub phi_b: f64,
    pub filling: GroundStateResult,
    pub solution: Np1Solution,
    /// Filling/`φ_a` fixed-point iterations.
    pub fixed_point_iterations: usize,
    pub warnings: Vec<String>,
}

pub fn atom_system(z: f64, electrons: usize, nucleus_mass: f64) -> Result<NPlusOneSystem> {
    if !(z > 0.0) || !(nucleus_mass > 0.0) {
        return Err(Error::invalid(format!(
            "Z and nucleus mass must be > 0, got Z = {z}, M = {nucleus_mass}"
        )));
    }
    NPlusOneSystem::new(
        electrons,
        3,
        Law::nonrelativistic(1.0),
        Law::nonrelativistic(nucleus_mass),
        Law::coulomb(-1.0),
        Law::coulomb(z),
    )
}

/// Ground state of the atom; electrons fill levels with spin degeneracy 2.
pub fn solve_atom(
    z: f64,
    electrons: usize,
    nucleus_mass: f64,
    method: Method,
) -> Result<AtomResult> {
    let system = atom_system(z, electrons, nucleus_mass)?;
    let relative = Split::ground(1, 3);

    let (filling, phi_a, phi_b, solution, iterations, warnings) = match method {
        Method::Et => {
            let filling = qnum::fgs_fill(electrons, 3, ELECTRON_SPIN, 2.0)?;
            let sol = nplus1::solve_et_np1(&system, filling.split.q(2.0), relative.q(2.0))?;
            (filling, 2.0, 2.0, sol, 0, Vec::new())
        }
        Method::Iet => {
            let s = nplus1::solve_iet_np1_fgs(&system, ELECTRON_SPIN, relative)?;
            let (pa, pb) = (s.solution.phi_a, s.solution.phi_b);
            (s.filling, pa, pb, s.solution.et, s.iterations, s.warnings)
        }
    };
    if !(solution.energy < 0.0) {
        return Err(Error::NoBinding(format!(
            "Z = {z}, N_e = {electrons}: lowest eigenvalue {} is not negative",
            solution.energy
        )));
    }
    Ok(AtomResult {
        z,
        electrons,
        nucleus_mass,
        method,
        energy: solution.energy,
        binding_ev: -solution.energy * HARTREE_EV,
        phi_a,
        phi_b,
        filling,
        solution,
        fixed_point_iterations: iterations,
        warnings,
    })
}
