//! Cross-checks the adaptive Kubo evaluation against a brute-force composite
//! Simpson rule in SI units on a compactified energy axis `ε = E_s u/(1−u)`,
//! which covers `[0, ∞)` without a separate tail formula.

use std::f64::consts::PI;

use graphene_hsf::constants::{EV, E_CHARGE, HBAR, K_B};
use graphene_hsf::material::{sigma_full_kubo, GrapheneState};
use graphene_hsf::quadrature::QuadratureSpec;
use graphene_hsf::Complex64;

fn fd(e: f64, mu: f64, kt: f64) -> f64 {
    let x = (e - mu) / kt;
    if x > 0.0 {
        let q = (-x).exp();
        q / (1.0 + q)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

fn fd_slope(e: f64, mu: f64, kt: f64) -> f64 {
    let q = (-((e - mu) / kt).abs()).exp();
    -q / (kt * (1.0 + q) * (1.0 + q))
}

fn simpson_kubo(f: f64, mu_ev: f64, tau: f64, temp: f64) -> Complex64 {
    let omega = 2.0 * PI * f;
    let a = Complex64::new(omega, -1.0 / tau);
    let mu = mu_ev * EV;
    let kt = K_B * temp;
    let scale = 0.5 * EV;

    // d/dε[f(−ε)] = −f'(−ε)
    let integrand = |e: f64| -> (f64, Complex64) {
        let intra = e * (fd_slope(e, mu, kt) + fd_slope(-e, mu, kt));
        let inter = (fd(-e, mu, kt) - fd(e, mu, kt)) / (a * a - 4.0 * (e / HBAR).powi(2));
        (intra, inter)
    };

    let n = 4_000_000usize;
    let h = 1.0 / n as f64;
    let mut intra = 0.0;
    let mut inter = Complex64::new(0.0, 0.0);
    for i in 0..=n {
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let (gi, ge) = if i == n {
            // u → 1: intraband vanishes, interband·jacobian → −ħ²/(4 E_s).
            (0.0, Complex64::new(-HBAR * HBAR / (4.0 * scale), 0.0))
        } else {
            let u = i as f64 * h;
            let e = scale * u / (1.0 - u);
            let jac = scale / ((1.0 - u) * (1.0 - u));
            let (x, y) = integrand(e);
            (x * jac, y * jac)
        };
        intra += w * gi;
        inter += w * ge;
    }
    intra *= h / 3.0;
    inter *= h / 3.0;

    let pref = Complex64::new(0.0, 1.0) * E_CHARGE * E_CHARGE * a / (PI * HBAR * HBAR);
    pref * (intra / (a * a) - inter)
}

fn check(f: f64, mu_ev: f64, tol: f64) {
    let state = GrapheneState::new(mu_ev, 1e-12, 300.0, 0.335e-9, 1e6).unwrap();
    let fast = sigma_full_kubo(f, &state, &QuadratureSpec::default())
        .unwrap()
        .value;
    let slow = simpson_kubo(f, mu_ev, 1e-12, 300.0);
    let rel = (fast - slow).norm() / slow.norm();
    assert!(
        rel < tol,
        "f = {f:e}, mu = {mu_ev}: adaptive {fast} vs simpson {slow} (rel {rel:e})"
    );
}

#[test]
fn intraband_dominated_terahertz() {
    check(2.5e12, 0.5, 1e-7);
}

#[test]
fn low_doping_terahertz() {
    check(1.0e12, 0.1, 1e-7);
}

#[test]
fn interband_onset_infrared() {
    check(250e12, 0.1, 1e-7);
}
