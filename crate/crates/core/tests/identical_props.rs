mod common;

use approx::assert_relative_eq;
use envelope::identical::{self, IdenticalSystem};
use envelope::qnum::Split;
use envelope::Law;
use proptest::prelude::*;

fn power_system() -> impl Strategy<Value = (IdenticalSystem, f64, f64)> {
    (
        2usize..=10,
        0.2f64..3.0,
        1.0f64..2.5,
        0.2f64..3.0,
        0.2f64..3.0,
    )
        .prop_map(|(n, f, alpha, g, beta)| {
            let sys =
                IdenticalSystem::new(n, 3, Law::power(f, alpha), Law::power(g, beta)).unwrap();
            (sys, alpha, beta)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn solutions_satisfy_compact_set((sys, _, _) in power_system(), q in 0.5f64..20.0) {
        let s = identical::solve_et(&sys, q).unwrap();
        prop_assert!(s.motion_residual < identical::RESIDUAL_ACCEPT);
        prop_assert!(s.quantization_residual < 1e-12);
        let n = sys.n() as f64;
        let c = sys.pairs();
        let e = n * sys.kinetic().value(s.p0).unwrap() + c * sys.potential().value(s.rho0).unwrap();
        prop_assert!((e - s.energy).abs() <= 1e-14 * e.abs());
    }

    #[test]
    fn phi_two_recovers_plain_envelope((sys, _, _) in power_system(), nu in 0.5f64..5.0, lambda in 0.5f64..5.0) {
        let split = Split::new(nu, lambda);
        let forced = identical::solve_with_phi(&sys, split, 2.0).unwrap();
        let plain = identical::solve_et(&sys, 2.0 * nu + lambda).unwrap();
        prop_assert_eq!(forced.et.energy, plain.energy);
    }

    #[test]
    fn stiffness_matches_energy_curvature((sys, _, _) in power_system(), lambda in 0.5f64..5.0) {
        let r = identical::dosm_identical(&sys, lambda).unwrap();
        let fd = common::fd_second(
            |rho| common::identical_surface(sys.n(), sys.kinetic(), sys.potential(), lambda, rho),
            r.orbital.rho0,
        );
        prop_assert!((r.k - fd).abs() <= 1e-6 * fd.abs(), "{} vs {}", r.k, fd);
    }

    #[test]
    fn three_body_duality(f in 0.2f64..3.0, alpha in 0.5f64..3.0, g in 0.2f64..3.0, beta in 0.5f64..3.0) {
        let a = IdenticalSystem::new(3, 3, Law::power(f, alpha), Law::power(g, beta)).unwrap();
        let b = IdenticalSystem::new(3, 3, Law::power(g, beta), Law::power(f, alpha)).unwrap();
        let split = Split::ground(2, 3);
        let (ea, eb) = (identical::solve_et(&a, 3.0).unwrap(), identical::solve_et(&b, 3.0).unwrap());
        prop_assert!((ea.energy - eb.energy).abs() <= 1e-10 * ea.energy.abs());
        let (ia, ib) = (identical::solve_iet(&a, split).unwrap(), identical::solve_iet(&b, split).unwrap());
        prop_assert!((ia.et.energy - ib.et.energy).abs() <= 1e-10 * ia.et.energy.abs());
    }
}

#[test]
fn numeric_solution_matches_closed_form() {
    for alpha in [1.0, 2.0] {
        for beta in [-1.0, -0.5, 0.1, 0.5, 1.0, 2.0, 3.0] {
            if alpha + beta <= 0.0 {
                continue;
            }
            for n in 2..=10usize {
                let sys = IdenticalSystem::new(
                    n,
                    3,
                    Law::power(0.5, alpha),
                    Law::signed_power(0.5, beta).unwrap(),
                )
                .unwrap();
                let q = Split::ground(n - 1, 3).q(2.0);
                let got = identical::solve_et(&sys, q).unwrap().energy;
                let want = identical::power_law_energy(n, 0.5, alpha, 0.5, beta, q).unwrap();
                assert_relative_eq!(got, want, max_relative = 1e-10);
            }
        }
    }
}

#[test]
fn several_extrema_are_all_reported() {
    // Attractive well plus a repulsive shoulder: the equation of motion
    // changes sign three times.
    let v = Law::weighted_sum(vec![
        (1.0, Law::harmonic(0.02)),
        (1.0, Law::gaussian(-30.0, 1.0)),
        (1.0, Law::gaussian(4.0, 3.0)),
    ])
    .unwrap();
    let sys = IdenticalSystem::new(3, 3, Law::nonrelativistic(1.0), v).unwrap();
    let all = identical::solve_et_all(&sys, 3.0).unwrap();
    assert!(all.len() >= 2, "{} roots", all.len());
    assert!(all.windows(2).all(|w| w[0].energy <= w[1].energy));
    assert_eq!(identical::solve_et(&sys, 3.0).unwrap(), all[0]);
    assert!(all.iter().all(|s| s.root_count == all.len()));
}
