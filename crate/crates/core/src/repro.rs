//! Reference systems and golden-value comparison for the four benchmark
//! tables.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::atoms::{self, Method};
use crate::error::{Error, Result};
use crate::identical::{self, IdenticalSystem};
use crate::laws::Law;
use crate::nplus1::{self, NPlusOneSystem};
use crate::qnum::Split;

const FIXTURES: &str = include_str!("../fixtures/tables.txt");

pub const TABLES: [u8; 4] = [1, 2, 3, 4];

/// Three massless bosons with `r²` between the pair and `κ r²` to the third.
pub fn build_uroh(kappa: f64) -> Result<NPlusOneSystem> {
    if !(kappa > 0.0) {
        return Err(Error::invalid(format!("kappa must be > 0, got {kappa}")));
    }
    NPlusOneSystem::new(
        2,
        3,
        Law::ultrarelativistic(),
        Law::ultrarelativistic(),
        Law::harmonic(1.0),
        Law::harmonic(kappa),
    )
}

/// Two unit-mass bosons and a third of mass `m`, all pairs interacting via
/// `sgn(β) r^β / 2`.
pub fn build_power(m: f64, beta: f64) -> Result<NPlusOneSystem> {
    let v = Law::signed_power(0.5, beta)?;
    NPlusOneSystem::new(
        2,
        3,
        Law::nonrelativistic(1.0),
        Law::nonrelativistic(m),
        v.clone(),
        v,
    )
}

/// Exact spectrum of `N_a` particles of mass `m_a` with pair springs
/// `k_aa r²`, plus one of mass `m_b` tied by `k_ab r²`.
pub fn harmonic_exact(
    n_a: usize,
    m_a: f64,
    m_b: f64,
    k_aa: f64,
    k_ab: f64,
    q_a: f64,
    q_b: f64,
) -> f64 {
    let n = n_a as f64;
    let omega_a = (2.0 * (n * k_aa + k_ab) / m_a).sqrt();
    let reduced = n * m_a * m_b / (n * m_a + m_b);
    let omega_b = (2.0 * n * k_ab / reduced).sqrt();
    omega_a * q_a + omega_b * q_b
}

/// One fixture record.
#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub fields: BTreeMap<String, String>,
}

impl Fixture {
    pub fn text(&self, key: &str) -> Result<&str> {
        self.fields
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::invalid(format!("fixture record lacks '{key}'")))
    }

    pub fn num(&self, key: &str) -> Result<f64> {
        let t = self.text(key)?;
        t.parse()
            .map_err(|_| Error::invalid(format!("fixture field {key}={t} is not a number")))
    }

    pub fn table(&self) -> Option<u8> {
        self.fields.get("table").and_then(|t| t.parse().ok())
    }
}

pub fn fixtures() -> Result<Vec<Fixture>> {
    FIXTURES
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|line| {
            let fields = line
                .split_whitespace()
                .map(|kv| {
                    kv.split_once('=')
                        .map(|(k, v)| (k.to_string(), v.to_string()))
                        .ok_or_else(|| Error::invalid(format!("malformed fixture token '{kv}'")))
                })
                .collect::<Result<_>>()?;
            Ok(Fixture { fields })
        })
        .collect()
}

/// Nuclear mass (electron masses) for a named isotope.
pub fn nucleus_mass(name: &str) -> Result<f64> {
    fixtures()?
        .into_iter()
        .find(|f| {
            f.fields.get("kind").map(String::as_str) == Some("nucleus")
                && f.text("name").ok() == Some(name)
        })
        .ok_or_else(|| Error::invalid(format!("unknown nucleus {name}")))?
        .num("mass")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    Relative(f64),
    Absolute(f64),
}

impl Tolerance {
    pub fn accepts(&self, computed: f64, reference: f64) -> bool {
        match *self {
            Tolerance::Relative(t) => (computed - reference).abs() <= t * reference.abs(),
            Tolerance::Absolute(t) => (computed - reference).abs() <= t,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub quantity: String,
    pub computed: f64,
    pub reference: f64,
    pub tolerance: Tolerance,
    pub pass: bool,
}

impl Check {
    fn new(quantity: &str, computed: f64, reference: f64, tolerance: Tolerance) -> Self {
        Check {
            quantity: quantity.to_string(),
            computed,
            reference,
            tolerance,
            pass: tolerance.accepts(computed, reference),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowReport {
    pub table: u8,
    pub label: String,
    pub checks: Vec<Check>,
    /// Solver failure, if any; the row then fails.
    pub error: Option<String>,
}

impl RowReport {
    pub fn pass(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, quantity: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.quantity == quantity)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableReport {
    pub table: u8,
    pub rows: Vec<RowReport>,
}

impl TableReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(RowReport::pass)
    }

    pub fn failed_rows(&self) -> usize {
        self.rows.iter().filter(|r| !r.pass()).count()
    }
}

/// Energies quoted to 5–6 significant digits.
pub const TABLE1_REL: f64 = 5e-5;
/// Energies quoted to 3–4 decimals.
pub const TABLE23_REL: f64 = 5e-4;
/// `φ` quoted to two decimals.
pub const TABLE23_PHI: f64 = 0.005;
pub const TABLE4_EV: f64 = 1.0;
pub const TABLE4_PHI: f64 = 0.01;
pub const HARMONIC_EXACT: f64 = 1e-9;
/// Tolerance on quoted percentage errors, in percentage points.
pub const PERCENT_POINTS: f64 = 0.1;

pub fn run_table(id: u8) -> Result<TableReport> {
    if !TABLES.contains(&id) {
        return Err(Error::invalid(format!("unknown table {id}; expected 1-4")));
    }
    let rows: Vec<Fixture> = fixtures()?
        .into_iter()
        .filter(|f| f.table() == Some(id))
        .collect();
    let rows = rows
        .par_iter()
        .map(|f| {
            let label = row_label(id, f);
            let result = match id {
                1 => table1_row(f),
                2 => table2_row(f),
                3 => table3_row(f),
                _ => table4_row(f),
            };
            match result {
                Ok(checks) => RowReport {
                    table: id,
                    label,
                    checks,
                    error: None,
                },
                Err(e) => RowReport {
                    table: id,
                    label,
                    checks: Vec::new(),
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    Ok(TableReport { table: id, rows })
}

fn row_label(id: u8, f: &Fixture) -> String {
    let get = |k: &str| f.text(k).unwrap_or("?");
    match id {
        1 => format!("beta={}", get("beta")),
        2 => format!(
            "kappa={} <{},{},{},{}>",
            get("kappa"),
            get("nu_a"),
            get("lambda_a"),
            get("nu_b"),
            get("lambda_b")
        ),
        3 => format!("m={} beta={}", get("m"), get("beta")),
        _ => get("atom").to_string(),
    }
}

/// Quoted percentages carry one significant digit or more; accept the
/// larger of 0.1 point and half a unit in the last quoted place.
fn percent_check(
    quantity: &str,
    computed: f64,
    exact: f64,
    f: &Fixture,
    key: &str,
) -> Result<Check> {
    let quoted = f.num(key)?;
    let text = f.text(key)?;
    let half_unit = match text.split_once('.') {
        Some((_, frac)) => 0.5 * 10f64.powi(-(frac.len() as i32)),
        None => 0.5,
    };
    let pct = 100.0 * ((computed - exact) / exact).abs();
    Ok(Check::new(
        quantity,
        pct,
        quoted,
        Tolerance::Absolute(PERCENT_POINTS.max(half_unit)),
    ))
}

fn energy_checks(f: &Fixture, et: f64, iet: f64, rel: f64) -> Result<Vec<Check>> {
    let exact = f.num("exact")?;
    Ok(vec![
        Check::new("et", et, f.num("et")?, Tolerance::Relative(rel)),
        Check::new("iet", iet, f.num("iet")?, Tolerance::Relative(rel)),
        percent_check("et_err_pct", et, exact, f, "et_err")?,
        percent_check("iet_err_pct", iet, exact, f, "iet_err")?,
    ])
}

fn phi_checks(f: &Fixture, phi: (f64, f64), tol: f64) -> Result<Vec<Check>> {
    Ok(vec![
        Check::new("phi_a", phi.0, f.num("phi_a")?, Tolerance::Absolute(tol)),
        Check::new("phi_b", phi.1, f.num("phi_b")?, Tolerance::Absolute(tol)),
    ])
}

fn table1_row(f: &Fixture) -> Result<Vec<Check>> {
    let beta = f.num("beta")?;
    let sys = IdenticalSystem::new(3, 3, Law::power(0.5, 2.0), Law::signed_power(0.5, beta)?)?;
    let split = Split::ground(2, 3);
    let et = identical::solve_et(&sys, split.q(2.0))?.energy;
    let iet = identical::solve_iet(&sys, split)?.et.energy;
    let mut checks = energy_checks(f, et, iet, TABLE1_REL)?;
    if beta == 2.0 {
        let exact = 3.0 * 3f64.sqrt();
        checks.push(Check::new(
            "et_exact",
            et,
            exact,
            Tolerance::Relative(1e-10),
        ));
        checks.push(Check::new(
            "iet_exact",
            iet,
            exact,
            Tolerance::Relative(1e-10),
        ));
    }
    Ok(checks)
}

fn table2_row(f: &Fixture) -> Result<Vec<Check>> {
    let sys = build_uroh(f.num("kappa")?)?;
    let a = Split::new(f.num("nu_a")?, f.num("lambda_a")?);
    let b = Split::new(f.num("nu_b")?, f.num("lambda_b")?);
    let et = nplus1::solve_et_np1(&sys, a.q(2.0), b.q(2.0))?.energy;
    let iet = nplus1::solve_iet_np1(&sys, a, b)?;
    let mut checks = energy_checks(f, et, iet.et.energy, TABLE23_REL)?;
    checks.extend(phi_checks(f, (iet.phi_a, iet.phi_b), TABLE23_PHI)?);
    Ok(checks)
}

fn table3_row(f: &Fixture) -> Result<Vec<Check>> {
    let (m, beta) = (f.num("m")?, f.num("beta")?);
    let sys = build_power(m, beta)?;
    let ground = Split::ground(1, 3);
    let et = nplus1::solve_et_np1(&sys, ground.q(2.0), ground.q(2.0))?.energy;
    let iet = nplus1::solve_iet_np1(&sys, ground, ground)?;
    let mut checks = energy_checks(f, et, iet.et.energy, TABLE23_REL)?;
    if beta == 2.0 {
        let exact = harmonic_exact(2, 1.0, m, 0.5, 0.5, ground.q(2.0), ground.q(2.0));
        checks.push(Check::new(
            "et_exact",
            et,
            exact,
            Tolerance::Relative(HARMONIC_EXACT),
        ));
        checks.push(Check::new(
            "iet_exact",
            iet.et.energy,
            exact,
            Tolerance::Relative(HARMONIC_EXACT),
        ));
        checks.extend(phi_checks(f, (iet.phi_a, iet.phi_b), HARMONIC_EXACT)?);
    } else {
        checks.extend(phi_checks(f, (iet.phi_a, iet.phi_b), TABLE23_PHI)?);
    }
    Ok(checks)
}

fn table4_row(f: &Fixture) -> Result<Vec<Check>> {
    let z = f.num("z")?;
    let electrons = f.num("electrons")? as usize;
    let mass = nucleus_mass(f.text("nucleus")?)?;
    let et = atoms::solve_atom(z, electrons, mass, Method::Et)?;
    let iet = atoms::solve_atom(z, electrons, mass, Method::Iet)?;
    let mut checks = vec![
        Check::new(
            "et",
            et.binding_ev,
            f.num("et")?,
            Tolerance::Absolute(TABLE4_EV),
        ),
        Check::new(
            "iet",
            iet.binding_ev,
            f.num("iet")?,
            Tolerance::Absolute(TABLE4_EV),
        ),
    ];
    checks.extend(phi_checks(f, (iet.phi_a, iet.phi_b), TABLE4_PHI)?);
    Ok(checks)
}
