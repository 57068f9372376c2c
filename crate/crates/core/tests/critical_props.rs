use approx::assert_relative_eq;
use envelope::critical;
use envelope::qnum::Split;
use envelope::Law;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn range_rescaling(range in 0.05f64..20.0, amp in 0.1f64..10.0, m in 0.1f64..10.0, n in 2usize..20) {
        let q = Split::ground(n - 1, 3).q(2.0);
        for (base, scaled) in [
            (Law::gaussian(amp, 1.0), Law::gaussian(amp, range)),
            (Law::exponential(amp, 1.0), Law::exponential(amp, range)),
        ] {
            let (u0, u1) = (critical::u_star(&base).unwrap(), critical::u_star(&scaled).unwrap());
            prop_assert!((u1 - range * u0).abs() <= 1e-10 * u1);
            let (g0, g1) = (
                critical::critical_g(&base, m, n, q).unwrap(),
                critical::critical_g(&scaled, m, n, q).unwrap(),
            );
            prop_assert!((g1 * range * range - g0).abs() <= 1e-9 * g0);
        }
    }

    #[test]
    fn mass_and_amplitude_enter_inversely(m in 0.1f64..10.0, amp in 0.1f64..10.0, n in 2usize..20) {
        let q = Split::ground(n - 1, 3).q(2.0);
        let unit = critical::critical_g(&Law::gaussian(1.0, 1.0), 1.0, n, q).unwrap();
        let g = critical::critical_g(&Law::gaussian(amp, 1.0), m, n, q).unwrap();
        prop_assert!((g * m * amp - unit).abs() <= 1e-10 * unit);
    }
}

#[test]
fn coupling_ratios_between_particle_numbers() {
    // Bosons in 3D: Q = 3(N−1)/2, so g(N)/g(2) = 2/N.
    for v in [Law::gaussian(1.0, 1.0), Law::exponential(1.0, 1.0)] {
        let g2 = critical::critical_g(&v, 1.0, 2, 1.5).unwrap();
        for n in [3usize, 5, 10, 50] {
            let q = Split::ground(n - 1, 3).q(2.0);
            let g = critical::critical_g(&v, 1.0, n, q).unwrap();
            assert_relative_eq!(g / g2, 2.0 / n as f64, max_relative = 1e-12);
        }
    }
}

#[test]
fn two_body_values() {
    // Gaussian: u* = 1, v(u*) = e⁻¹; exponential: u* = 2, v(u*) = e⁻².
    let e = std::f64::consts::E;
    let g = critical::critical_g(&Law::gaussian(1.0, 1.0), 1.0, 2, 1.5).unwrap();
    assert_relative_eq!(g, 2.25 * e, max_relative = 1e-12);
    let g = critical::critical_g(&Law::exponential(1.0, 1.0), 1.0, 2, 1.5).unwrap();
    assert_relative_eq!(g, 2.25 * e * e / 4.0, max_relative = 1e-12);
}

#[test]
fn invalid_input() {
    let v = Law::gaussian(1.0, 1.0);
    assert!(critical::critical_g(&v, 0.0, 2, 1.5).is_err());
    assert!(critical::critical_g(&v, 1.0, 1, 1.5).is_err());
    assert!(critical::critical_g(&v, 1.0, 2, 0.0).is_err());
    assert!(critical::u_star(&Law::coulomb(1.0)).is_err());
}
