//! Envelope theory for `N_a` identical particles plus one distinct particle.
//!
//! With `p_a = Q_a/(√C r_aa)` and `P0 = Q_b/R0` substituted, the compact set
//! reduces to the two stationarity conditions of
//!
//! ```text
//! E(r, R) = N_a T_a(p') + T_b(P0) + C V_aa(r) + N_a V_ab(r0')
//! p'²  = p_a² + P0²/N_a²
//! r0'² = R² + (N_a − 1)/(2N_a) r²
//! ```
//!
//! which are solved for `(r_aa, R0)` by damped Newton iteration in
//! log-coordinates. The orbital-only solution (`Q → λ`) is expanded to
//! second order in the radial displacements, giving two coupled oscillators
//! whose normal modes fix the weights `φ_a` and `φ_b`.

use crate::error::{Error, Result};
use crate::identical::{self, IdenticalSystem, Variational};
use crate::laws::Law;
use crate::oscillators::{NormalModes, OscPair};
use crate::qnum::{self, QuantumSpec, Split};
use crate::roots::{self, Scan};
use crate::settle::{settle, SettledFilling};

pub const NEWTON_TOL: f64 = 1e-11;
const MAX_STEPS: usize = 200;
const MAX_HALVINGS: usize = 30;
const FD_STEP: f64 = 1e-6;
/// Largest Newton step in log-coordinates.
const MAX_LOG_STEP: f64 = 3.0;
/// Distinct converged roots differ by more than this in relative terms.
const SAME_ROOT: f64 = 1e-7;

#[derive(Debug, Clone)]
pub struct NPlusOneSystem {
    n_a: usize,
    dim: u32,
    t_a: Law,
    t_b: Law,
    v_aa: Law,
    v_ab: Law,
}

impl NPlusOneSystem {
    pub fn new(n_a: usize, dim: u32, t_a: Law, t_b: Law, v_aa: Law, v_ab: Law) -> Result<Self> {
        if n_a < 2 {
            return Err(Error::invalid(format!(
                "N_a must be >= 2, got {n_a}; use the identical solver with N = 2"
            )));
        }
        if dim < 2 {
            return Err(Error::invalid(format!("dimension must be >= 2, got {dim}")));
        }
        t_a.validate_kinetic()?;
        t_b.validate_kinetic()?;
        Ok(NPlusOneSystem {
            n_a,
            dim,
            t_a,
            t_b,
            v_aa,
            v_ab,
        })
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn t_a(&self) -> &Law {
        &self.t_a
    }

    pub fn t_b(&self) -> &Law {
        &self.t_b
    }

    pub fn v_aa(&self) -> &Law {
        &self.v_aa
    }

    pub fn v_ab(&self) -> &Law {
        &self.v_ab
    }

    /// Number of `a`–`a` pairs.
    pub fn pairs(&self) -> f64 {
        let n = self.n_a as f64;
        n * (n - 1.0) / 2.0
    }

    fn geometry(&self, q_a: f64, q_b: f64, r: f64, big_r: f64) -> Geometry {
        let n = self.n_a as f64;
        let p_a = q_a / (self.pairs().sqrt() * r);
        let p0 = q_b / big_r;
        Geometry {
            p_a,
            p0,
            p_prime: (p_a * p_a + p0 * p0 / (n * n)).sqrt(),
            r,
            big_r,
            r0_prime: (big_r * big_r + (n - 1.0) / (2.0 * n) * r * r).sqrt(),
        }
    }

    fn energy_at(&self, g: &Geometry) -> Result<f64> {
        let n = self.n_a as f64;
        Ok(n * self.t_a.value(g.p_prime)?
            + self.t_b.value(g.p0)?
            + self.pairs() * self.v_aa.value(g.r)?
            + n * self.v_ab.value(g.r0_prime)?)
    }

    /// Raw residuals of the two equations of motion and their sizes relative
    /// to the magnitudes of the balancing terms.
    fn residuals(&self, g: &Geometry) -> Result<([f64; 2], [f64; 2])> {
        let n = self.n_a as f64;
        let ta1 = self.t_a.d1(g.p_prime)?;
        let tb1 = self.t_b.d1(g.p0)?;
        let vaa1 = self.v_aa.d1(g.r)?;
        let vab1 = self.v_ab.d1(g.r0_prime)?;
        let a = [
            n * ta1 * g.p_a * g.p_a / g.p_prime,
            -self.pairs() * vaa1 * g.r,
            -(n - 1.0) / 2.0 * vab1 * g.r * g.r / g.r0_prime,
        ];
        let b = [
            ta1 * g.p0 * g.p0 / (n * g.p_prime),
            tb1 * g.p0,
            -n * vab1 * g.big_r * g.big_r / g.r0_prime,
        ];
        let raw = [a.iter().sum::<f64>(), b.iter().sum::<f64>()];
        let rel = |t: &[f64; 3], s: f64| {
            let scale: f64 = t.iter().map(|x| x.abs()).sum();
            if scale == 0.0 {
                0.0
            } else {
                s.abs() / scale
            }
        };
        Ok((raw, [rel(&a, raw[0]), rel(&b, raw[1])]))
    }
}

#[derive(Debug, Clone, Copy)]
struct Geometry {
    p_a: f64,
    p0: f64,
    p_prime: f64,
    r: f64,
    big_r: f64,
    r0_prime: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Np1Solution {
    pub q_a: f64,
    pub q_b: f64,
    pub energy: f64,
    pub p_a: f64,
    pub r_aa: f64,
    pub p0: f64,
    pub r0: f64,
    pub p_a_prime: f64,
    pub r0_prime: f64,
    /// Relative residuals of the two equations of motion.
    pub motion_residuals: [f64; 2],
    /// `|Q_a − √C p_a r_aa|/Q_a` and `|Q_b − P0 R0|/Q_b`.
    pub quantization_residuals: [f64; 2],
    /// Newton steps taken by the selected start.
    pub iterations: usize,
    /// Number of distinct converged roots over all starts.
    pub root_count: usize,
    pub variational: Variational,
}

struct Converged {
    x: [f64; 2],
    energy: f64,
    iterations: usize,
}

struct Stalled {
    x: [f64; 2],
    rel: [f64; 2],
    iterations: usize,
}

/// Lowest-energy solution of the five-equation compact set.
pub fn solve_et_np1(system: &NPlusOneSystem, q_a: f64, q_b: f64) -> Result<Np1Solution> {
    if !(q_a > 0.0 && q_b > 0.0) || !q_a.is_finite() || !q_b.is_finite() {
        return Err(Error::invalid(format!(
            "quantum numbers must be > 0, got Q_a = {q_a}, Q_b = {q_b}"
        )));
    }
    let base = initial_guess(system, q_a, q_b);
    let mut starts = Vec::with_capacity(9);
    if let Some((r, big_r)) = base {
        for fr in [1.0, 10.0, 0.1] {
            for fb in [1.0, 10.0, 0.1] {
                starts.push([(r * fr).ln(), (big_r * fb).ln()]);
            }
        }
    }
    let (mut found, mut worst) = run_starts(system, q_a, q_b, &starts);
    if found.is_empty() {
        if let Some(x) = grid_minimum(system, q_a, q_b) {
            let (f, w) = run_starts(system, q_a, q_b, &[x]);
            found = f;
            worst = worst.or(w);
        }
    }
    if found.is_empty() {
        let s = worst.unwrap_or(Stalled {
            x: [f64::NAN, f64::NAN],
            rel: [f64::NAN, f64::NAN],
            iterations: 0,
        });
        return Err(Error::NonConvergence {
            iterations: s.iterations,
            r_aa: s.x[0].exp(),
            r0: s.x[1].exp(),
            res_a: s.rel[0],
            res_b: s.rel[1],
        });
    }

    found.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    let mut distinct: Vec<&Converged> = Vec::new();
    for c in &found {
        let same = |d: &&Converged| (0..2).all(|i| (c.x[i] - d.x[i]).abs() < SAME_ROOT);
        if !distinct.iter().any(same) {
            distinct.push(c);
        }
    }
    let best = distinct[0];
    let g = system.geometry(q_a, q_b, best.x[0].exp(), best.x[1].exp());
    let (_, rel) = system.residuals(&g)?;
    let c = system.pairs().sqrt();
    Ok(Np1Solution {
        q_a,
        q_b,
        energy: best.energy,
        p_a: g.p_a,
        r_aa: g.r,
        p0: g.p0,
        r0: g.big_r,
        p_a_prime: g.p_prime,
        r0_prime: g.r0_prime,
        motion_residuals: rel,
        quantization_residuals: [
            (q_a - c * g.p_a * g.r).abs() / q_a,
            (q_b - g.p0 * g.big_r).abs() / q_b,
        ],
        iterations: best.iterations,
        root_count: distinct.len(),
        variational: variational(system),
    })
}

fn variational(system: &NPlusOneSystem) -> Variational {
    Variational::from_laws(&[&system.t_a, &system.t_b, &system.v_aa, &system.v_ab])
}

fn run_starts(
    system: &NPlusOneSystem,
    q_a: f64,
    q_b: f64,
    starts: &[[f64; 2]],
) -> (Vec<Converged>, Option<Stalled>) {
    let mut found = Vec::new();
    let mut worst = None;
    for &x0 in starts {
        match newton(system, q_a, q_b, x0) {
            Ok(c) => found.push(c),
            Err(s) => {
                if worst.is_none() {
                    worst = Some(s);
                }
            }
        }
    }
    (found, worst)
}

fn eval_log(system: &NPlusOneSystem, q_a: f64, q_b: f64, x: [f64; 2]) -> Option<([f64; 2], f64)> {
    let g = system.geometry(q_a, q_b, x[0].exp(), x[1].exp());
    match system.residuals(&g) {
        Ok((raw, rel)) if raw.iter().chain(&rel).all(|v| v.is_finite()) => {
            Some((raw, rel[0].max(rel[1])))
        }
        _ => None,
    }
}

fn newton(
    system: &NPlusOneSystem,
    q_a: f64,
    q_b: f64,
    x0: [f64; 2],
) -> std::result::Result<Converged, Stalled> {
    let mut x = x0;
    let stalled = |x: [f64; 2], iterations| {
        let g = system.geometry(q_a, q_b, x[0].exp(), x[1].exp());
        let rel = system
            .residuals(&g)
            .map(|(_, r)| r)
            .unwrap_or([f64::NAN, f64::NAN]);
        Stalled { x, rel, iterations }
    };
    let Some((mut raw, mut norm)) = eval_log(system, q_a, q_b, x) else {
        return Err(stalled(x, 0));
    };
    for step in 0..=MAX_STEPS {
        if norm < NEWTON_TOL {
            let g = system.geometry(q_a, q_b, x[0].exp(), x[1].exp());
            return match system.energy_at(&g) {
                Ok(energy) if energy.is_finite() => Ok(Converged {
                    x,
                    energy,
                    iterations: step,
                }),
                _ => Err(stalled(x, step)),
            };
        }
        if step == MAX_STEPS {
            break;
        }
        let mut jac = [[0.0; 2]; 2];
        for j in 0..2 {
            let (mut xp, mut xm) = (x, x);
            xp[j] += FD_STEP;
            xm[j] -= FD_STEP;
            let (Some((fp, _)), Some((fm, _))) = (
                eval_log(system, q_a, q_b, xp),
                eval_log(system, q_a, q_b, xm),
            ) else {
                return Err(stalled(x, step));
            };
            for i in 0..2 {
                jac[i][j] = (fp[i] - fm[i]) / (2.0 * FD_STEP);
            }
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det == 0.0 || !det.is_finite() {
            return Err(stalled(x, step));
        }
        let mut delta = [
            -(jac[1][1] * raw[0] - jac[0][1] * raw[1]) / det,
            -(jac[0][0] * raw[1] - jac[1][0] * raw[0]) / det,
        ];
        let size = delta[0].abs().max(delta[1].abs());
        if size > MAX_LOG_STEP {
            delta = delta.map(|d| d * MAX_LOG_STEP / size);
        }
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..=MAX_HALVINGS {
            let trial = [x[0] + t * delta[0], x[1] + t * delta[1]];
            if let Some((r, n)) = eval_log(system, q_a, q_b, trial) {
                if n < norm {
                    x = trial;
                    raw = r;
                    norm = n;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            return Err(stalled(x, step));
        }
    }
    Err(stalled(x, MAX_STEPS))
}

/// Decoupled estimates: `r_aa` from the `a`-only identical problem, `R0`
/// from the `b`-relative motion with `p_a = 0`.
fn initial_guess(system: &NPlusOneSystem, q_a: f64, q_b: f64) -> Option<(f64, f64)> {
    let r_guess = IdenticalSystem::new(
        system.n_a,
        system.dim,
        system.t_a.clone(),
        system.v_aa.clone(),
    )
    .and_then(|s| identical::solve_et(&s, q_a))
    .map(|s| s.rho0)
    .ok();
    let big_r_guess = relative_guess(system, q_b);
    match (r_guess, big_r_guess) {
        (Some(r), Some(big_r)) => Some((r, big_r)),
        (Some(r), None) => Some((r, r)),
        (None, Some(big_r)) => Some((big_r, big_r)),
        (None, None) => None,
    }
}

fn relative_guess(system: &NPlusOneSystem, q_b: f64) -> Option<f64> {
    let n = system.n_a as f64;
    let kinetic = |p: f64| -> Result<(f64, f64)> {
        let ta = system.t_a.eval(p / n)?;
        let tb = system.t_b.eval(p)?;
        Ok((n * ta.value + tb.value, ta.d1 + tb.d1))
    };
    let roots = roots::find_all("relative motion", Scan::SOLVER, |big_r| {
        let p = q_b / big_r;
        Ok(kinetic(p)?.1 * p - n * system.v_ab.d1(big_r)? * big_r)
    })
    .ok()?;
    roots
        .into_iter()
        .filter_map(|big_r| {
            let e = kinetic(q_b / big_r).ok()?.0 + n * system.v_ab.value(big_r).ok()?;
            e.is_finite().then_some((e, big_r))
        })
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, big_r)| big_r)
}

/// Lowest energy on a coarse logarithmic grid, as a last-resort start.
fn grid_minimum(system: &NPlusOneSystem, q_a: f64, q_b: f64) -> Option<[f64; 2]> {
    let pts: Vec<f64> = (0..=60)
        .map(|i| (1e-6f64).ln() + i as f64 * (1e12f64).ln() / 60.0)
        .collect();
    let mut best: Option<(f64, [f64; 2])> = None;
    for &lr in &pts {
        for &lb in &pts {
            let g = system.geometry(q_a, q_b, lr.exp(), lb.exp());
            if let Ok(e) = system.energy_at(&g) {
                if e.is_finite() && best.is_none_or(|(b, _)| e < b) {
                    best = Some((e, [lr, lb]));
                }
            }
        }
    }
    best.map(|(_, x)| x)
}

/// Second-order expansion around the orbital-only solution.
#[derive(Debug, Clone, PartialEq)]
pub struct DosmNp1Report {
    pub lambda_a: f64,
    pub lambda_b: f64,
    pub orbital: Np1Solution,
    pub mu_a: f64,
    pub mu_b: f64,
    pub k_a: f64,
    pub k_b: f64,
    pub k_c: f64,
    pub modes: NormalModes,
    /// First-order response of the energy to `Q_a` and `Q_b`, times `λ`.
    pub d_a: f64,
    pub d_b: f64,
    pub phi_a: f64,
    pub phi_b: f64,
    pairs: f64,
}

impl DosmNp1Report {
    /// `Ẽ + √(A/(Cμ)) ν_a + √(B/μ) ν_b`.
    pub fn energy(&self, nu_a: f64, nu_b: f64) -> f64 {
        let m = &self.modes;
        self.orbital.energy + (m.a / (self.pairs * m.mu)).sqrt() * nu_a + m.omega_b() * nu_b
    }
}

/// Radial masses and stiffnesses of the second-order expansion around an
/// orbital point `(p_a, r_aa, P0, R0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialCoefficients {
    pub mu_a: f64,
    pub mu_b: f64,
    pub k_a: f64,
    pub k_b: f64,
    pub k_c: f64,
}

pub fn radial_coefficients(
    system: &NPlusOneSystem,
    p_a: f64,
    r_aa: f64,
    p0: f64,
    r0: f64,
) -> Result<RadialCoefficients> {
    let n = system.n_a as f64;
    let c = system.pairs();
    let (p, big_p, r, big_r) = (p_a, p0, r_aa, r0);
    let pp = (p * p + big_p * big_p / (n * n)).sqrt();
    let r0p = (big_r * big_r + (n - 1.0) / (2.0 * n) * r * r).sqrt();
    let ta = system.t_a.eval(pp)?;
    let tb = system.t_b.eval(big_p)?;
    let vaa2 = system.v_aa.d2(r)?;
    let vab = system.v_ab.eval(r0p)?;
    let (p2, pp2, bp2) = (p * p, pp * pp, big_p * big_p);
    let (r2, br2, r02) = (r * r, big_r * big_r, r0p * r0p);

    let mu_a = pp / (n * ta.d1);
    let mu_b = 1.0 / (ta.d1 / (n * pp) + tb.d1 / big_p);
    let k_a = n * ta.d2 * p2 * p2 / (r2 * pp2)
        + n * ta.d1 * p2 / r2 * (3.0 / pp - p2 / (pp2 * pp))
        + c * vaa2
        + (n - 1.0).powi(2) * r2 / (4.0 * n * r02) * vab.d2
        + (n - 1.0) / 2.0 * (1.0 / r0p - (n - 1.0) * r2 / (2.0 * n * r02 * r0p)) * vab.d1;
    let k_b = ta.d2 * bp2 * bp2 / (n.powi(3) * br2 * pp2)
        + tb.d2 * bp2 / br2
        + ta.d1 * bp2 / (n * br2) * (3.0 / pp - bp2 / (n * n * pp2 * pp))
        + 2.0 * tb.d1 * big_p / br2
        + n * br2 / r02 * vab.d2
        + n * (1.0 / r0p - br2 / (r02 * r0p)) * vab.d1;
    let k_c = 2.0 * p2 * bp2 / (n * pp2 * r * big_r) * (ta.d2 - ta.d1 / pp)
        + (n - 1.0) * r * big_r / r02 * (vab.d2 - vab.d1 / r0p);
    Ok(RadialCoefficients {
        mu_a,
        mu_b,
        k_a,
        k_b,
        k_c,
    })
}

pub fn dosm_np1(system: &NPlusOneSystem, lambda_a: f64, lambda_b: f64) -> Result<DosmNp1Report> {
    if !(lambda_a > 0.0 && lambda_b > 0.0) {
        return Err(Error::DegenerateOrbital(format!(
            "orbital quantum numbers must be > 0, got lambda_a = {lambda_a}, lambda_b = {lambda_b}"
        )));
    }
    let orbital = solve_et_np1(system, lambda_a, lambda_b)?;
    let n = system.n_a as f64;
    let c = system.pairs();
    let RadialCoefficients {
        mu_a,
        mu_b,
        k_a,
        k_b,
        k_c,
    } = radial_coefficients(system, orbital.p_a, orbital.r_aa, orbital.p0, orbital.r0)?;
    let modes = OscPair::new(mu_a, mu_b, k_a, k_b, k_c)?.normal_modes();
    if !(modes.a > 0.0 && modes.b > 0.0) {
        return Err(Error::UnstableOrbital(format!(
            "radial normal modes A = {}, B = {}",
            modes.a, modes.b
        )));
    }
    let (p, pp, big_p) = (orbital.p_a, orbital.p_a_prime, orbital.p0);
    let ta1 = system.t_a.d1(pp)?;
    let tb1 = system.t_b.d1(big_p)?;
    let d_a = ta1 * n * p * p / pp;
    let d_b = ta1 * big_p * big_p / (n * pp) + tb1 * big_p;
    let phi_a = lambda_a / d_a * (modes.a / (c * modes.mu)).sqrt();
    let phi_b = lambda_b / d_b * modes.omega_b();
    Ok(DosmNp1Report {
        lambda_a,
        lambda_b,
        orbital,
        mu_a,
        mu_b,
        k_a,
        k_b,
        k_c,
        modes,
        d_a,
        d_b,
        phi_a,
        phi_b,
        pairs: c,
    })
}

pub fn phi_pair(system: &NPlusOneSystem, lambda_a: f64, lambda_b: f64) -> Result<(f64, f64)> {
    dosm_np1(system, lambda_a, lambda_b).map(|r| (r.phi_a, r.phi_b))
}

#[derive(Debug, Clone, PartialEq)]
pub struct IetNp1Solution {
    pub split_a: Split,
    pub split_b: Split,
    pub phi_a: f64,
    pub phi_b: f64,
    pub et: Np1Solution,
}

/// `φ_a, φ_b` from the orbital motion, then the compact set with
/// `Q_a = φ_a ν_a + λ_a` and `Q_b = φ_b ν_b + λ_b`.
pub fn solve_iet_np1(
    system: &NPlusOneSystem,
    split_a: Split,
    split_b: Split,
) -> Result<IetNp1Solution> {
    if !(split_a.lambda > 0.0 && split_b.lambda > 0.0) {
        return Err(Error::DegenerateOrbital(
            "lambda_a = 0 or lambda_b = 0 leaves no orbital motion to expand around".into(),
        ));
    }
    let (phi_a, phi_b) = phi_pair(system, split_a.lambda, split_b.lambda)?;
    solve_np1_with_phi(system, split_a, split_b, phi_a, phi_b)
}

/// [`solve_iet_np1`] with explicit Jacobi-mode quantum numbers.
pub fn solve_iet_np1_spec(system: &NPlusOneSystem, spec: &QuantumSpec) -> Result<IetNp1Solution> {
    spec.expect_internal(system.n_a - 1)?;
    let split_b = spec
        .relative_split()
        .ok_or_else(|| Error::invalid("N_a + 1 quantum numbers need a relative mode"))?;
    solve_iet_np1(system, spec.split(), split_b)
}

/// Improved solution with the `a` particles as fermions of internal
/// degeneracy `d` filling their levels self-consistently with `φ_a`.
pub fn solve_iet_np1_fgs(
    system: &NPlusOneSystem,
    degeneracy: u32,
    split_b: Split,
) -> Result<SettledFilling<IetNp1Solution>> {
    settle(
        |phi| qnum::fgs_fill(system.n_a, system.dim, degeneracy, phi),
        |f| {
            let (pa, pb) = phi_pair(system, f.split.lambda, split_b.lambda)?;
            Ok((pa, (pa, pb)))
        },
        |f, (pa, pb)| {
            let s = solve_np1_with_phi(system, f.split, split_b, pa, pb)?;
            Ok((s.et.energy, s))
        },
    )
}

pub fn solve_np1_with_phi(
    system: &NPlusOneSystem,
    split_a: Split,
    split_b: Split,
    phi_a: f64,
    phi_b: f64,
) -> Result<IetNp1Solution> {
    let mut et = solve_et_np1(system, split_a.q(phi_a), split_b.q(phi_b))?;
    if (phi_a, phi_b) != (2.0, 2.0) && et.variational != Variational::Exact {
        et.variational = Variational::Unknown;
    }
    Ok(IetNp1Solution {
        split_a,
        split_b,
        phi_a,
        phi_b,
        et,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn harmonic(n_a: usize, m_a: f64, m_b: f64, k_aa: f64, k_ab: f64) -> NPlusOneSystem {
        NPlusOneSystem::new(
            n_a,
            3,
            Law::nonrelativistic(m_a),
            Law::nonrelativistic(m_b),
            Law::harmonic(k_aa),
            Law::harmonic(k_ab),
        )
        .unwrap()
    }

    fn harmonic_exact(
        n_a: usize,
        m_a: f64,
        m_b: f64,
        k_aa: f64,
        k_ab: f64,
        q_a: f64,
        q_b: f64,
    ) -> f64 {
        let n = n_a as f64;
        let w_a = (2.0 * (n * k_aa + k_ab) / m_a).sqrt();
        let m_red = n * m_a * m_b / (n * m_a + m_b);
        let w_b = (2.0 * n * k_ab / m_red).sqrt();
        w_a * q_a + w_b * q_b
    }

    #[test]
    fn harmonic_oscillator_is_exact() {
        let (n_a, m_a, m_b, k_aa, k_ab) = (3, 1.0, 2.5, 0.7, 1.3);
        let sys = harmonic(n_a, m_a, m_b, k_aa, k_ab);
        let sol = solve_et_np1(&sys, 3.0, 1.5).unwrap();
        let exact = harmonic_exact(n_a, m_a, m_b, k_aa, k_ab, 3.0, 1.5);
        assert_relative_eq!(sol.energy, exact, max_relative = 1e-10);
        let (pa, pb) = phi_pair(&sys, 1.0, 0.5).unwrap();
        assert_relative_eq!(pa, 2.0, max_relative = 1e-9);
        assert_relative_eq!(pb, 2.0, max_relative = 1e-9);
    }

    #[test]
    fn solution_satisfies_compact_set() {
        let sys = NPlusOneSystem::new(
            2,
            3,
            Law::ultrarelativistic(),
            Law::ultrarelativistic(),
            Law::power(1.0, 1.0),
            Law::power(2.0, 1.0),
        )
        .unwrap();
        let s = solve_et_np1(&sys, 1.5, 1.5).unwrap();
        assert!(s.motion_residuals.iter().all(|r| *r < NEWTON_TOL));
        assert!(s.quantization_residuals.iter().all(|r| *r < 1e-14));
        let n = 2.0;
        assert_relative_eq!(
            s.p_a_prime.powi(2),
            s.p_a.powi(2) + s.p0.powi(2) / (n * n),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            s.r0_prime.powi(2),
            s.r0.powi(2) + (n - 1.0) / (2.0 * n) * s.r_aa.powi(2),
            max_relative = 1e-14
        );
    }

    #[test]
    fn identical_limit_recovers_symmetric_state() {
        let half = Law::nonrelativistic(1.0);
        let v = Law::harmonic(0.5);
        let sys = NPlusOneSystem::new(2, 3, half.clone(), half, v.clone(), v).unwrap();
        let s = solve_et_np1(&sys, 1.5, 1.5).unwrap();
        let exact = identical::power_law_energy(3, 0.5, 2.0, 0.5, 2.0, 3.0).unwrap();
        assert_relative_eq!(s.energy, exact, max_relative = 1e-10);
        assert_relative_eq!(s.r_aa, s.r0_prime, max_relative = 1e-9);
        assert_relative_eq!(s.p_a_prime, s.p0, max_relative = 1e-9);
    }

    #[test]
    fn repulsive_pair_potential_still_converges() {
        // Two electrons around a heavy nucleus.
        let sys = NPlusOneSystem::new(
            2,
            3,
            Law::nonrelativistic(1.0),
            Law::nonrelativistic(7294.3),
            Law::coulomb(-1.0),
            Law::coulomb(2.0),
        )
        .unwrap();
        let s = solve_et_np1(&sys, 1.5, 1.5).unwrap();
        assert!(s.energy < 0.0);
        assert!(s.motion_residuals.iter().all(|r| *r < NEWTON_TOL));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(NPlusOneSystem::new(
            1,
            3,
            Law::ultrarelativistic(),
            Law::ultrarelativistic(),
            Law::harmonic(1.0),
            Law::harmonic(1.0)
        )
        .is_err());
        let sys = harmonic(2, 1.0, 1.0, 1.0, 1.0);
        assert!(solve_et_np1(&sys, 0.0, 1.0).is_err());
        assert!(matches!(
            solve_iet_np1(&sys, Split::new(0.5, 0.0), Split::new(0.5, 0.5)),
            Err(Error::DegenerateOrbital(_))
        ));
    }
}
