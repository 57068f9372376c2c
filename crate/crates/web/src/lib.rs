//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a flat `Float64Array`; scan points the solver cannot
//! handle come back as `NaN` so a plot can skip them.

use envelope::identical::{self, IdenticalSystem};
use envelope::nplus1;
use envelope::qnum::{self, Split};
use envelope::{repro, Law};
use wasm_bindgen::prelude::*;

/// Columns per point of [`identical_beta_scan`].
pub const IDENTICAL_COLUMNS: usize = 4;
/// Columns per point of [`kappa_scan`].
pub const KAPPA_COLUMNS: usize = 5;

fn identical_point(n: usize, mass: f64, strength: f64, beta: f64) -> envelope::Result<[f64; 3]> {
    let sys = IdenticalSystem::new(
        n,
        3,
        Law::nonrelativistic(mass),
        Law::signed_power(strength, beta)?,
    )?;
    let split = Split::ground(n - 1, 3);
    let et = identical::solve_et(&sys, split.q(2.0))?;
    let iet = identical::solve_iet(&sys, split)?;
    Ok([et.energy, iet.et.energy, iet.phi])
}

/// Bosonic ground state of `n` particles of mass `mass` with pair potential
/// `sgn(β)·strength·r^β`, for each `β`: rows `[β, E_ET, E_IET, φ]`.
#[wasm_bindgen]
pub fn identical_beta_scan(n: usize, mass: f64, strength: f64, betas: &[f64]) -> Vec<f64> {
    betas
        .iter()
        .flat_map(|&beta| {
            let [et, iet, phi] = if n >= 2 {
                identical_point(n, mass, strength, beta).unwrap_or([f64::NAN; 3])
            } else {
                [f64::NAN; 3]
            };
            [beta, et, iet, phi]
        })
        .collect()
}

fn kappa_point(kappa: f64) -> envelope::Result<[f64; 4]> {
    let sys = repro::build_uroh(kappa)?;
    let g = Split::ground(1, 3);
    let et = nplus1::solve_et_np1(&sys, g.q(2.0), g.q(2.0))?;
    let iet = nplus1::solve_iet_np1(&sys, g, g)?;
    Ok([et.energy, iet.et.energy, iet.phi_a, iet.phi_b])
}

/// Ground state of two massless particles plus a third with springs `r²`
/// and `κ r²`: rows `[κ, E_ET, E_IET, φ_a, φ_b]`.
#[wasm_bindgen]
pub fn kappa_scan(kappas: &[f64]) -> Vec<f64> {
    kappas
        .iter()
        .flat_map(|&k| {
            let [et, iet, pa, pb] = kappa_point(k).unwrap_or([f64::NAN; 4]);
            [k, et, iet, pa, pb]
        })
        .collect()
}

fn fill(particles: usize, dim: u32, degeneracy: u32, phi: f64) -> Result<Vec<f64>, String> {
    if particles == 0 {
        return Err("need at least one particle".into());
    }
    let g = qnum::fgs_fill(particles, dim, degeneracy, phi).map_err(|e| e.to_string())?;
    let mut out = vec![g.q_phi, g.split.nu, g.split.lambda];
    for lv in &g.levels {
        out.extend([
            lv.n as f64,
            lv.l as f64,
            lv.occupancy as f64,
            qnum::level_degeneracy(lv.l, dim, degeneracy) as f64,
        ]);
    }
    Ok(out)
}

/// Fermionic filling: `[Q_φ, ν, λ]` followed by `[n, l, occupancy,
/// capacity]` for each occupied level.
#[wasm_bindgen]
pub fn fermion_filling(
    particles: usize,
    dim: u32,
    degeneracy: u32,
    phi: f64,
) -> Result<Vec<f64>, JsError> {
    fill(particles, dim, degeneracy, phi).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_point_is_exact() {
        let row = identical_beta_scan(3, 1.0, 0.5, &[2.0]);
        assert_eq!(row.len(), IDENTICAL_COLUMNS);
        assert!((row[1] - 3.0 * 3.0f64.sqrt()).abs() < 1e-10);
        assert!((row[3] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn unsupported_points_are_nan() {
        let rows = identical_beta_scan(3, 1.0, 0.5, &[-3.0, 1.0]);
        assert!(rows[1].is_nan());
        assert!(rows[5].is_finite());
        assert!(identical_beta_scan(1, 1.0, 0.5, &[1.0])[1].is_nan());
    }

    #[test]
    fn kappa_one_is_the_identical_limit() {
        let row = kappa_scan(&[1.0]);
        assert_eq!(row.len(), KAPPA_COLUMNS);
        let want = identical::power_law_energy(3, 1.0, 1.0, 1.0, 2.0, 3.0).unwrap();
        assert!((row[1] - want).abs() < 1e-9 * want);
        assert!(row[3..].iter().all(|phi| (1.0..2.0).contains(phi)));
    }

    #[test]
    fn filling_layout() {
        let out = fill(8, 3, 2, 2.0).unwrap();
        // Shells (0,0) and (0,1) full: ν = 7/2, λ = 6 + 7/2.
        assert_eq!(&out[..3], &[16.5, 3.5, 9.5]);
        assert_eq!((out.len() - 3) % 4, 0);
        let placed: f64 = out[3..].chunks(4).map(|c| c[2]).sum();
        assert_eq!(placed, 8.0);
        assert!(fill(0, 3, 2, 2.0).is_err());
    }
}
