use std::fs;
use std::io::Read;

use anyhow::{bail, Context, Result};
use envelope::atoms::{self, Method as AtomMethodCore};
use envelope::identical::{self, EtSolution, IdenticalSystem};
use envelope::nplus1::{self, NPlusOneSystem, Np1Solution};
use envelope::qnum::{self, ClosedForm, QuantumSpec, Split};
use envelope::{critical, repro, Law};

use crate::definition::{self, Content, Method, State, SystemDefinition};
use crate::record::Record;
use crate::{
    AtomMethod, Cli, Command, DefinitionArg, InputError, Outcome, Shape, Statistics, TableArg,
};

pub fn run(cli: &Cli) -> Result<Outcome> {
    if !(cli.tol > 0.0) {
        return Err(InputError::new(format!("--tol must be > 0, got {}", cli.tol)).into());
    }
    match &cli.command {
        Command::SolveIdentical(arg) => identical_cmd(cli, "solve-identical", arg, None),
        Command::IetIdentical(arg) => identical_cmd(cli, "iet-identical", arg, Some(Method::Iet)),
        Command::SolveNp1(arg) => np1_cmd(cli, "solve-np1", arg, None),
        Command::IetNp1(arg) => np1_cmd(cli, "iet-np1", arg, Some(Method::Iet)),
        Command::Atom {
            z,
            electrons,
            method,
            mass,
            nucleus,
        } => atom_cmd(cli, *z, *electrons, *method, *mass, nucleus.as_deref()),
        Command::Fgs {
            particles,
            dim,
            degeneracy,
            phi,
        } => fgs_cmd(*particles, *dim, *degeneracy, *phi),
        Command::CriticalCoupling {
            shape,
            range,
            mass,
            particles,
            statistics,
            degeneracy,
            dim,
            asymptotic,
        } => critical_cmd(
            *shape,
            *range,
            *mass,
            *particles,
            *statistics,
            *degeneracy,
            *dim,
            *asymptotic,
        ),
        Command::Reproduce { table } => reproduce_cmd(*table),
    }
}

fn load(arg: &DefinitionArg) -> Result<SystemDefinition> {
    let text = if arg.file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading definition from stdin")?;
        s
    } else {
        fs::read_to_string(&arg.file).with_context(|| format!("reading {}", arg.file.display()))?
    };
    Ok(definition::parse(&text)?)
}

fn check_residual(cli: &Cli, what: &str, residual: f64) -> Result<()> {
    if !(residual <= cli.tol) {
        bail!("{what} residual {residual:e} exceeds --tol {:e}", cli.tol);
    }
    Ok(())
}

fn scaled(rec: &mut Record, def: &SystemDefinition, energy: f64) {
    if let Some(s) = def.scale {
        rec.push("scale", s).push("energy_scaled", s * energy);
    }
}

/// Internal split at `φ = 2` for bgs / fgs / explicit modes.
fn internal_split(def: &SystemDefinition, particles: usize) -> Result<Split> {
    Ok(match &def.state {
        State::Bgs => Split::ground(particles - 1, def.dim),
        State::Fgs { degeneracy } => qnum::fgs_fill(particles, def.dim, *degeneracy, 2.0)?.split,
        State::Explicit(modes) => {
            let spec = QuantumSpec::identical(def.dim, modes.clone())?;
            spec.expect_internal(particles - 1)
                .map_err(|e| InputError::new(e.to_string()))?;
            spec.split()
        }
    })
}

fn identical_cmd(
    cli: &Cli,
    name: &str,
    arg: &DefinitionArg,
    force: Option<Method>,
) -> Result<Outcome> {
    let def = load(arg)?;
    let Content::Identical {
        n,
        kinetic,
        potential,
    } = &def.content
    else {
        return Err(InputError::new(format!(
            "{name} needs `particles` in [system]; use the np1 commands for n_a"
        ))
        .into());
    };
    let system = IdenticalSystem::new(*n, def.dim, kinetic.clone(), potential.clone())?;
    let method = force.unwrap_or(def.method);
    let mut rec = Record::new()
        .with("command", name)
        .with("method", method.as_str())
        .with("particles", *n)
        .with("dimension", def.dim)
        .with("kinetic", kinetic.to_string())
        .with("potential", potential.to_string())
        .with("state", def.state.label());
    let mut notes = Vec::new();

    let (split, phi, q, energy, et, fill_iterations): (
        Split,
        f64,
        f64,
        f64,
        EtSolution,
        Option<usize>,
    ) = match (method, &def.state) {
        (Method::Iet, State::Fgs { degeneracy }) => {
            let s = identical::solve_iet_fgs(&system, *degeneracy)?;
            notes.extend(s.warnings.iter().map(|w| format!("warning: {w}")));
            let iet = s.solution;
            (
                iet.split,
                iet.phi,
                iet.q_phi,
                iet.et.energy,
                iet.et,
                Some(s.iterations),
            )
        }
        (Method::Iet, _) => {
            let iet = identical::solve_iet(&system, internal_split(&def, *n)?)?;
            (iet.split, iet.phi, iet.q_phi, iet.et.energy, iet.et, None)
        }
        (Method::Et, _) => {
            let split = internal_split(&def, *n)?;
            let et = identical::solve_et(&system, split.q(2.0))?;
            (split, 2.0, split.q(2.0), et.energy, et, None)
        }
        (Method::Dosm, _) => {
            let split = internal_split(&def, *n)?;
            let r = identical::dosm_identical(&system, split.lambda)?;
            rec.push("mu", r.mu)
                .push("k", r.k)
                .push("orbital_energy", r.orbital.energy);
            let energy = r.energy(split.nu);
            (split, r.phi, split.q(r.phi), energy, r.orbital, None)
        }
    };
    check_residual(cli, "equation-of-motion", et.motion_residual)?;

    rec.push("nu", split.nu)
        .push("lambda", split.lambda)
        .push("phi", phi)
        .push("q", q)
        .push("energy", energy);
    scaled(&mut rec, &def, energy);
    rec.push("rho0", et.rho0)
        .push("p0", et.p0)
        .push("motion_residual", et.motion_residual)
        .push("quantization_residual", et.quantization_residual)
        .push("root_count", et.root_count)
        .push("variational", et.variational.as_str());
    if let Some(it) = fill_iterations {
        rec.push("fill_iterations", it);
    }
    Ok(Outcome {
        records: vec![rec],
        notes,
        failed: None,
    })
}

fn push_np1(rec: &mut Record, s: &Np1Solution) {
    rec.push("p_a", s.p_a)
        .push("r_aa", s.r_aa)
        .push("p0", s.p0)
        .push("r0", s.r0)
        .push("p_a_prime", s.p_a_prime)
        .push("r0_prime", s.r0_prime)
        .push("motion_residual_a", s.motion_residuals[0])
        .push("motion_residual_b", s.motion_residuals[1])
        .push("quantization_residual_a", s.quantization_residuals[0])
        .push("quantization_residual_b", s.quantization_residuals[1])
        .push("iterations", s.iterations)
        .push("root_count", s.root_count)
        .push("variational", s.variational.as_str());
}

fn np1_cmd(cli: &Cli, name: &str, arg: &DefinitionArg, force: Option<Method>) -> Result<Outcome> {
    let def = load(arg)?;
    let Content::NPlusOne {
        n_a,
        t_a,
        t_b,
        v_aa,
        v_ab,
        relative,
    } = &def.content
    else {
        return Err(InputError::new(format!(
            "{name} needs `n_a` in [system]; use the identical commands for particles"
        ))
        .into());
    };
    let system = NPlusOneSystem::new(
        *n_a,
        def.dim,
        t_a.clone(),
        t_b.clone(),
        v_aa.clone(),
        v_ab.clone(),
    )?;
    let split_b = QuantumSpec::n_plus_one(def.dim, Vec::new(), *relative)?
        .relative_split()
        .expect("relative mode is set");
    let method = force.unwrap_or(def.method);
    let mut rec = Record::new()
        .with("command", name)
        .with("method", method.as_str())
        .with("n_a", *n_a)
        .with("dimension", def.dim)
        .with("kinetic_a", t_a.to_string())
        .with("kinetic_b", t_b.to_string())
        .with("potential_aa", v_aa.to_string())
        .with("potential_ab", v_ab.to_string())
        .with("state", def.state.label())
        .with("relative", format!("{} {}", relative.n, relative.l));
    let mut notes = Vec::new();

    let (split_a, phi_a, phi_b, energy, sol, fill_iterations) = match (method, &def.state) {
        (Method::Iet, State::Fgs { degeneracy }) => {
            let s = nplus1::solve_iet_np1_fgs(&system, *degeneracy, split_b)?;
            notes.extend(s.warnings.iter().map(|w| format!("warning: {w}")));
            let iet = s.solution;
            (
                iet.split_a,
                iet.phi_a,
                iet.phi_b,
                iet.et.energy,
                iet.et,
                Some(s.iterations),
            )
        }
        (Method::Iet, _) => {
            let iet = nplus1::solve_iet_np1(&system, internal_split(&def, *n_a)?, split_b)?;
            (
                iet.split_a,
                iet.phi_a,
                iet.phi_b,
                iet.et.energy,
                iet.et,
                None,
            )
        }
        (Method::Et, _) => {
            let split_a = internal_split(&def, *n_a)?;
            let et = nplus1::solve_et_np1(&system, split_a.q(2.0), split_b.q(2.0))?;
            (split_a, 2.0, 2.0, et.energy, et, None)
        }
        (Method::Dosm, _) => {
            let split_a = internal_split(&def, *n_a)?;
            let r = nplus1::dosm_np1(&system, split_a.lambda, split_b.lambda)?;
            rec.push("mu_a", r.mu_a)
                .push("mu_b", r.mu_b)
                .push("k_a", r.k_a)
                .push("k_b", r.k_b)
                .push("k_c", r.k_c)
                .push("mode_a", r.modes.a)
                .push("mode_b", r.modes.b)
                .push("d_a", r.d_a)
                .push("d_b", r.d_b)
                .push("orbital_energy", r.orbital.energy);
            (
                split_a,
                r.phi_a,
                r.phi_b,
                r.energy(split_a.nu, split_b.nu),
                r.orbital,
                None,
            )
        }
    };
    for (i, r) in sol.motion_residuals.iter().enumerate() {
        check_residual(
            cli,
            ["equation-of-motion (a)", "equation-of-motion (b)"][i],
            *r,
        )?;
    }

    rec.push("nu_a", split_a.nu)
        .push("lambda_a", split_a.lambda)
        .push("nu_b", split_b.nu)
        .push("lambda_b", split_b.lambda)
        .push("phi_a", phi_a)
        .push("phi_b", phi_b)
        .push("q_a", split_a.q(phi_a))
        .push("q_b", split_b.q(phi_b))
        .push("energy", energy);
    scaled(&mut rec, &def, energy);
    push_np1(&mut rec, &sol);
    if let Some(it) = fill_iterations {
        rec.push("fill_iterations", it);
    }
    Ok(Outcome {
        records: vec![rec],
        notes,
        failed: None,
    })
}

/// Fixture isotope used when `atom` gets no mass.
fn default_nucleus(z: f64) -> Option<&'static str> {
    match z {
        2.0 => Some("He-4"),
        3.0 => Some("Li-6"),
        6.0 => Some("C-12"),
        8.0 => Some("O-16"),
        _ => None,
    }
}

fn atom_cmd(
    cli: &Cli,
    z: f64,
    electrons: usize,
    method: AtomMethod,
    mass: Option<f64>,
    nucleus: Option<&str>,
) -> Result<Outcome> {
    let (nucleus, mass) = match (mass, nucleus) {
        (Some(m), _) => ("custom".to_string(), m),
        (None, Some(name)) => (name.to_string(), repro::nucleus_mass(name)?),
        (None, None) => {
            let name = default_nucleus(z).ok_or_else(|| {
                InputError::new(format!(
                    "no default nucleus for Z = {z}; pass --mass or --nucleus"
                ))
            })?;
            (name.to_string(), repro::nucleus_mass(name)?)
        }
    };
    let method = match method {
        AtomMethod::Et => AtomMethodCore::Et,
        AtomMethod::Iet => AtomMethodCore::Iet,
    };
    let r = atoms::solve_atom(z, electrons, mass, method)?;
    for (i, res) in r.solution.motion_residuals.iter().enumerate() {
        check_residual(
            cli,
            ["equation-of-motion (a)", "equation-of-motion (b)"][i],
            *res,
        )?;
    }
    let mut rec = Record::new()
        .with("command", "atom")
        .with("method", r.method.as_str())
        .with("z", r.z)
        .with("electrons", r.electrons)
        .with("nucleus", nucleus)
        .with("nucleus_mass", r.nucleus_mass)
        .with("energy", r.energy)
        .with("binding_ev", r.binding_ev)
        .with("phi_a", r.phi_a)
        .with("phi_b", r.phi_b)
        .with("nu_a", r.filling.split.nu)
        .with("lambda_a", r.filling.split.lambda)
        .with("q_a", r.solution.q_a)
        .with("q_b", r.solution.q_b);
    push_np1(&mut rec, &r.solution);
    rec.push("fill_iterations", r.fixed_point_iterations);
    Ok(Outcome {
        records: vec![rec],
        notes: r.warnings.iter().map(|w| format!("warning: {w}")).collect(),
        failed: None,
    })
}

fn fgs_cmd(particles: usize, dim: u32, degeneracy: u32, phi: f64) -> Result<Outcome> {
    if particles == 0 {
        return Err(InputError::new("--particles must be >= 1").into());
    }
    let g = qnum::fgs_fill(particles, dim, degeneracy, phi)?;
    let closed = match phi {
        2.0 => Some(qnum::fgs_closed(
            particles,
            dim,
            degeneracy,
            ClosedForm::Phi2,
        )),
        1.0 => Some(qnum::fgs_closed(
            particles,
            dim,
            degeneracy,
            ClosedForm::Phi1,
        )),
        _ => None,
    };
    let asymptotic = qnum::fgs_approx(particles, dim, degeneracy, phi);
    let records = g
        .levels
        .iter()
        .map(|lv| {
            let mut r = Record::new()
                .with("particles", particles)
                .with("dimension", dim)
                .with("degeneracy", degeneracy)
                .with("phi", phi)
                .with("nu", g.split.nu)
                .with("lambda", g.split.lambda)
                .with("q_phi", g.q_phi);
            if let Some(c) = closed {
                r.push("q_closed", c);
            }
            r.push("q_asymptotic", asymptotic)
                .push("n", lv.n)
                .push("l", lv.l)
                .push("occupancy", lv.occupancy)
                .push("capacity", qnum::level_degeneracy(lv.l, dim, degeneracy));
            r
        })
        .collect();
    Ok(Outcome {
        records,
        notes: Vec::new(),
        failed: None,
    })
}

#[allow(clippy::too_many_arguments)]
fn critical_cmd(
    shape: Shape,
    range: f64,
    mass: f64,
    particles: usize,
    statistics: Statistics,
    degeneracy: u32,
    dim: u32,
    asymptotic: bool,
) -> Result<Outcome> {
    if particles < 2 || dim < 2 || !(range > 0.0) {
        return Err(InputError::new(
            "critical-coupling needs --particles >= 2, --dim >= 2, --range > 0",
        )
        .into());
    }
    let (v, label) = match shape {
        Shape::Gaussian => (Law::gaussian(1.0, range), "gaussian"),
        Shape::Exponential => (Law::exponential(1.0, range), "exponential"),
    };
    let q = match statistics {
        Statistics::Boson => Split::ground(particles - 1, dim).q(2.0),
        Statistics::Fermion if asymptotic => qnum::fgs_approx(particles, dim, degeneracy, 2.0),
        Statistics::Fermion => qnum::fgs_fill(particles, dim, degeneracy, 2.0)?.q_phi,
    };
    let u = critical::u_star(&v)?;
    let g = critical::critical_g(&v, mass, particles, q)?;
    let mut rec = Record::new()
        .with("command", "critical-coupling")
        .with("shape", label)
        .with("range", range)
        .with("mass", mass)
        .with("particles", particles)
        .with("dimension", dim)
        .with(
            "statistics",
            match statistics {
                Statistics::Boson => "boson",
                Statistics::Fermion => "fermion",
            },
        );
    if statistics == Statistics::Fermion {
        rec.push("degeneracy", degeneracy)
            .push("asymptotic", asymptotic);
    }
    rec.push("q", q)
        .push("u_star", u)
        .push("v_u_star", v.value(u)?)
        .push("g", g);
    Ok(Outcome::single(rec))
}

fn reproduce_cmd(table: TableArg) -> Result<Outcome> {
    let ids: Vec<u8> = match table {
        TableArg::One => vec![1],
        TableArg::Two => vec![2],
        TableArg::Three => vec![3],
        TableArg::Four => vec![4],
        TableArg::All => repro::TABLES.to_vec(),
    };
    let mut records = Vec::new();
    let mut notes = Vec::new();
    let (mut failed, mut total) = (0, 0);
    for id in ids {
        let report = repro::run_table(id)?;
        for row in &report.rows {
            let mut r = Record::new()
                .with("table", id as usize)
                .with("row", row.label.clone())
                .with("pass", row.pass())
                .with("error", row.error.clone().unwrap_or_default());
            for c in &row.checks {
                r.push(c.quantity.clone(), c.computed)
                    .push(format!("{}_ref", c.quantity), c.reference)
                    .push(format!("{}_pass", c.quantity), c.pass);
            }
            records.push(r);
        }
        notes.push(format!(
            "table {id}: {}/{} rows pass",
            report.rows.len() - report.failed_rows(),
            report.rows.len()
        ));
        failed += report.failed_rows();
        total += report.rows.len();
    }
    Ok(Outcome {
        records,
        notes,
        failed: (failed > 0)
            .then(|| format!("{failed} of {total} reproduced rows outside tolerance")),
    })
}
