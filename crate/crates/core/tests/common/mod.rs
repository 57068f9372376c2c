//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use envelope::Law;
use nalgebra::{Matrix2, SymmetricEigen};

/// Richardson-extrapolated central second difference.
pub fn fd_second<F: Fn(f64) -> f64>(f: F, x: f64) -> f64 {
    let d = |h: f64| (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    let h = 1e-3 * x.abs().max(1e-300);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

/// Richardson-extrapolated Hessian `[f_xx, f_yy, f_xy]`.
pub fn fd_hessian<F: Fn(f64, f64) -> f64>(f: F, x: f64, y: f64) -> [f64; 3] {
    let fxx = fd_second(|t| f(t, y), x);
    let fyy = fd_second(|t| f(x, t), y);
    let mixed = |h: f64, k: f64| {
        (f(x + h, y + k) - f(x + h, y - k) - f(x - h, y + k) + f(x - h, y - k)) / (4.0 * h * k)
    };
    let (h, k) = (1e-3 * x, 1e-3 * y);
    let fxy = (4.0 * mixed(h / 2.0, k / 2.0) - mixed(h, k)) / 3.0;
    [fxx, fyy, fxy]
}

/// Orbital energy surface of `N` identical particles.
pub fn identical_surface(n: usize, t: &Law, v: &Law, lambda: f64, rho: f64) -> f64 {
    let nn = n as f64;
    let c = nn * (nn - 1.0) / 2.0;
    nn * t.value(lambda / (c.sqrt() * rho)).unwrap() + c * v.value(rho).unwrap()
}

/// Orbital energy surface of `N_a + 1` particles in `(r_aa, R0)`.
#[allow(clippy::too_many_arguments)]
pub fn np1_surface(
    n_a: usize,
    laws: [&Law; 4],
    lambda_a: f64,
    lambda_b: f64,
    r: f64,
    big_r: f64,
) -> f64 {
    let [t_a, t_b, v_aa, v_ab] = laws;
    let n = n_a as f64;
    let c = n * (n - 1.0) / 2.0;
    let p_a = lambda_a / (c.sqrt() * r);
    let p0 = lambda_b / big_r;
    let pp = (p_a * p_a + p0 * p0 / (n * n)).sqrt();
    let r0 = (big_r * big_r + (n - 1.0) / (2.0 * n) * r * r).sqrt();
    n * t_a.value(pp).unwrap()
        + t_b.value(p0).unwrap()
        + c * v_aa.value(r).unwrap()
        + n * v_ab.value(r0).unwrap()
}

/// Exact spectrum of the `N_a + 1` harmonic system (`k r²` per pair,
/// `p²/(2m)` kinetic energies) from its two normal-mode frequencies.
pub fn harmonic_np1(
    n_a: usize,
    m_a: f64,
    m_b: f64,
    k_aa: f64,
    k_ab: f64,
    q_a: f64,
    q_b: f64,
) -> f64 {
    let n = n_a as f64;
    // Internal a-modes feel N_a k_aa + k_ab; the b-relative mode N_a k_ab with
    // the reduced mass of b against the a-cluster.
    let w_a = (2.0 * (n * k_aa + k_ab) / m_a).sqrt();
    let m_red = n * m_a * m_b / (n * m_a + m_b);
    let w_b = (2.0 * n * k_ab / m_red).sqrt();
    w_a * q_a + w_b * q_b
}

/// Frequencies of `p1²/(2μa) + p2²/(2μb) + (ka x1² + kb x2² + kc x1 x2)/2`
/// by diagonalising the mass-weighted stiffness matrix. The first returned
/// frequency belongs to the mode with the larger `x1` component.
pub fn oscillator_frequencies(mu_a: f64, mu_b: f64, k_a: f64, k_b: f64, k_c: f64) -> (f64, f64) {
    let (sa, sb) = (mu_a.sqrt(), mu_b.sqrt());
    let m = Matrix2::new(
        k_a / mu_a,
        k_c / (2.0 * sa * sb),
        k_c / (2.0 * sa * sb),
        k_b / mu_b,
    );
    let eig = SymmetricEigen::new(m);
    let (v0, v1) = (eig.eigenvectors.column(0), eig.eigenvectors.column(1));
    let (w0, w1) = (eig.eigenvalues[0].sqrt(), eig.eigenvalues[1].sqrt());
    if v0[0].abs() >= v1[0].abs() {
        (w0, w1)
    } else {
        (w1, w0)
    }
}
