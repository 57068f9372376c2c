mod common;

use approx::assert_relative_eq;
use envelope::identical::{self, IdenticalSystem};
use envelope::nplus1::{self, NPlusOneSystem, NEWTON_TOL};
use envelope::qnum::{Mode, QuantumSpec, Split};
use envelope::repro;
use envelope::{Error, Law};
use proptest::prelude::*;

fn power_np1() -> impl Strategy<Value = NPlusOneSystem> {
    (
        2usize..=5,
        (0.3f64..2.0, 1.0f64..2.5),
        (0.3f64..2.0, 1.0f64..2.5),
        (0.3f64..2.0, 0.5f64..3.0),
        (0.3f64..2.0, 0.5f64..3.0),
    )
        .prop_map(|(n_a, ta, tb, vaa, vab)| {
            NPlusOneSystem::new(
                n_a,
                3,
                Law::power(ta.0, ta.1),
                Law::power(tb.0, tb.1),
                Law::power(vaa.0, vaa.1),
                Law::power(vab.0, vab.1),
            )
            .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn solutions_satisfy_compact_set(sys in power_np1(), qa in 0.5f64..6.0, qb in 0.5f64..6.0) {
        let s = nplus1::solve_et_np1(&sys, qa, qb).unwrap();
        let n = sys.n_a() as f64;
        prop_assert!(s.motion_residuals.iter().all(|r| *r < NEWTON_TOL));
        prop_assert!(s.quantization_residuals.iter().all(|r| *r < 1e-13));
        prop_assert!((s.p_a_prime.powi(2) - s.p_a.powi(2) - s.p0.powi(2) / (n * n)).abs() <= 1e-13 * s.p_a_prime.powi(2));
        let r0sq = s.r0.powi(2) + (n - 1.0) / (2.0 * n) * s.r_aa.powi(2);
        prop_assert!((s.r0_prime.powi(2) - r0sq).abs() <= 1e-13 * r0sq);
        let c = sys.pairs();
        let e = n * sys.t_a().value(s.p_a_prime).unwrap()
            + sys.t_b().value(s.p0).unwrap()
            + c * sys.v_aa().value(s.r_aa).unwrap()
            + n * sys.v_ab().value(s.r0_prime).unwrap();
        prop_assert!((e - s.energy).abs() <= 1e-13 * e.abs());
    }

    #[test]
    fn phi_two_recovers_plain_envelope(sys in power_np1(), nu_a in 0.5f64..3.0, la in 0.5f64..3.0, nu_b in 0.5f64..2.0, lb in 0.5f64..2.0) {
        let (a, b) = (Split::new(nu_a, la), Split::new(nu_b, lb));
        let forced = nplus1::solve_np1_with_phi(&sys, a, b, 2.0, 2.0).unwrap();
        let plain = nplus1::solve_et_np1(&sys, a.q(2.0), b.q(2.0)).unwrap();
        prop_assert_eq!(forced.et.energy, plain.energy);
    }

    #[test]
    fn harmonic_systems_are_exact(
        n_a in 2usize..=6,
        m_a in 0.2f64..5.0,
        m_b in 0.2f64..5.0,
        k_aa in 0.2f64..5.0,
        k_ab in 0.2f64..5.0,
        extra in 0u32..3,
    ) {
        let sys = NPlusOneSystem::new(
            n_a, 3,
            Law::nonrelativistic(m_a), Law::nonrelativistic(m_b),
            Law::harmonic(k_aa), Law::harmonic(k_ab),
        ).unwrap();
        let a = Split::ground(n_a - 1, 3);
        let qa = a.q(2.0) + extra as f64;
        let s = nplus1::solve_et_np1(&sys, qa, 1.5).unwrap();
        let exact = common::harmonic_np1(n_a, m_a, m_b, k_aa, k_ab, qa, 1.5);
        prop_assert!((s.energy - exact).abs() <= 1e-9 * exact);
        let r = nplus1::dosm_np1(&sys, a.lambda, 0.5).unwrap();
        prop_assert!((r.phi_a - 2.0).abs() <= 1e-9 && (r.phi_b - 2.0).abs() <= 1e-9);
        prop_assert!((r.energy(a.nu, 0.5) - common::harmonic_np1(n_a, m_a, m_b, k_aa, k_ab, a.q(2.0), 1.5)).abs() <= 1e-9 * exact);
    }

    #[test]
    fn coefficients_match_energy_hessian(sys in power_np1(), la in 0.5f64..3.0, lb in 0.5f64..3.0) {
        let r = nplus1::dosm_np1(&sys, la, lb).unwrap();
        let laws = [sys.t_a(), sys.t_b(), sys.v_aa(), sys.v_ab()];
        let [err, ebb, erb] = common::fd_hessian(
            |x, y| common::np1_surface(sys.n_a(), laws, la, lb, x, y),
            r.orbital.r_aa,
            r.orbital.r0,
        );
        prop_assert!((r.k_a - err).abs() <= 1e-6 * err.abs());
        prop_assert!((r.k_b - ebb).abs() <= 1e-6 * ebb.abs());
        prop_assert!((r.k_c - 2.0 * erb).abs() <= 1e-6 * (2.0 * erb).abs());
    }

    #[test]
    fn slopes_match_first_order_response(sys in power_np1(), la in 0.5f64..3.0, lb in 0.5f64..3.0) {
        let r = nplus1::dosm_np1(&sys, la, lb).unwrap();
        let eps = 1e-4;
        let ea = nplus1::solve_et_np1(&sys, la * (1.0 + eps), lb).unwrap().energy;
        let eb = nplus1::solve_et_np1(&sys, la, lb * (1.0 + eps)).unwrap().energy;
        let (sa, sb) = ((ea - r.orbital.energy) / eps, (eb - r.orbital.energy) / eps);
        prop_assert!((sa - r.d_a).abs() <= 1e-3 * r.d_a.abs(), "{} vs {}", sa, r.d_a);
        prop_assert!((sb - r.d_b).abs() <= 1e-3 * r.d_b.abs(), "{} vs {}", sb, r.d_b);
    }

    #[test]
    fn symmetric_state_emerges_for_identical_laws(
        n_a in 2usize..=5,
        f in 0.3f64..2.0,
        alpha in 1.0f64..2.5,
        g in 0.3f64..2.0,
        beta in 0.3f64..3.0,
    ) {
        let (t, v) = (Law::power(f, alpha), Law::power(g, beta));
        let sys = NPlusOneSystem::new(n_a, 3, t.clone(), t.clone(), v.clone(), v.clone()).unwrap();
        let (qa, qb) = (Split::ground(n_a - 1, 3).q(2.0), 1.5);
        let s = nplus1::solve_et_np1(&sys, qa, qb).unwrap();
        let n = n_a as f64;
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-9 * y.abs();
        prop_assert!(close(s.r_aa, s.r0_prime));
        prop_assert!(close(s.p_a_prime, s.p0));
        prop_assert!(close(s.r0.powi(2), (n + 1.0) * s.r_aa.powi(2) / (2.0 * n)));
        prop_assert!(close(s.p_a.powi(2), (n * n - 1.0) * s.p0.powi(2) / (n * n)));
        let ident = IdenticalSystem::new(n_a + 1, 3, t, v).unwrap();
        let e = identical::solve_et(&ident, qa + qb).unwrap().energy;
        prop_assert!(close(s.energy, e));
    }
}

#[test]
fn table_fixture_examples() {
    let uroh = repro::build_uroh(0.1).unwrap();
    assert_relative_eq!(
        nplus1::solve_et_np1(&uroh, 1.5, 1.5).unwrap().energy,
        5.597,
        max_relative = 5e-4
    );
    let r = nplus1::dosm_np1(&uroh, 0.5, 0.5).unwrap();
    assert!((r.phi_a - 1.76).abs() < 0.005 && (r.phi_b - 1.79).abs() < 0.005);

    let uroh10 = repro::build_uroh(10.0).unwrap();
    let iet = nplus1::solve_iet_np1(&uroh10, Split::new(1.5, 0.5), Split::new(0.5, 0.5)).unwrap();
    assert_relative_eq!(iet.et.energy, 19.291, max_relative = 5e-4);

    let pl = repro::build_power(0.2, 1.0).unwrap();
    assert_relative_eq!(
        nplus1::solve_et_np1(&pl, 1.5, 1.5).unwrap().energy,
        5.2278,
        max_relative = 5e-4
    );
    let pl = repro::build_power(0.2, 0.1).unwrap();
    let g = Split::ground(1, 3);
    assert_relative_eq!(
        nplus1::solve_iet_np1(&pl, g, g).unwrap().et.energy,
        1.9489,
        max_relative = 5e-4
    );
    let pl = repro::build_power(0.2, 3.0).unwrap();
    let (pa, pb) = nplus1::phi_pair(&pl, 0.5, 0.5).unwrap();
    assert!((pa - 2.16).abs() < 0.005 && (pb - 2.20).abs() < 0.005);
    let pl = repro::build_power(5.0, -1.0).unwrap();
    assert_relative_eq!(
        nplus1::solve_et_np1(&pl, 1.5, 1.5).unwrap().energy,
        -0.1797,
        max_relative = 5e-4
    );
}

#[test]
fn explicit_quantum_numbers() {
    let sys = repro::build_uroh(10.0).unwrap();
    let spec = QuantumSpec::n_plus_one(3, vec![Mode::new(1, 0)], Mode::GROUND).unwrap();
    let via_spec = nplus1::solve_iet_np1_spec(&sys, &spec).unwrap();
    let direct = nplus1::solve_iet_np1(&sys, Split::new(1.5, 0.5), Split::new(0.5, 0.5)).unwrap();
    assert_eq!(via_spec, direct);

    let wrong = QuantumSpec::n_plus_one(3, vec![Mode::GROUND; 2], Mode::GROUND).unwrap();
    assert!(matches!(
        nplus1::solve_iet_np1_spec(&sys, &wrong),
        Err(Error::InvalidParameter(_))
    ));
    let degenerate = QuantumSpec::n_plus_one(2, vec![Mode::GROUND], Mode::GROUND).unwrap();
    assert!(matches!(
        nplus1::solve_iet_np1_spec(&sys, &degenerate),
        Err(Error::DegenerateOrbital(_))
    ));
}

#[test]
fn non_convergence_carries_last_iterate() {
    // Repulsive everywhere: no stationary point.
    let sys = NPlusOneSystem::new(
        2,
        3,
        Law::nonrelativistic(1.0),
        Law::nonrelativistic(1.0),
        Law::coulomb(-1.0),
        Law::coulomb(-1.0),
    )
    .unwrap();
    match nplus1::solve_et_np1(&sys, 1.5, 1.5) {
        Err(Error::NonConvergence { iterations, .. }) => assert!(iterations <= 200),
        other => panic!("expected non-convergence, got {other:?}"),
    }
}
