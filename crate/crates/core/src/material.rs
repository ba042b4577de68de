//! Graphene sheet conductivity, gate bias field and bulk-equivalent
//! permittivity.
//!
//! Time convention is `e^{+jωt}` throughout: a passive sheet has
//! `Re σ ≥ 0`, an inductive (Drude) sheet has `Im σ < 0`, and a lossy bulk
//! medium has `Im ε ≤ 0`. Chemical potential is accepted in eV and held in
//! joules.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::constants::{EPS0, EV, E_CHARGE, HBAR, K_B};
use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::quadrature::{integrate, integrate_real, QuadratureSpec};

const J: Complex64 = Complex64::new(0.0, 1.0);

/// Electronic state of a graphene monolayer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrapheneState {
    mu_c: f64,
    tau: f64,
    temperature: f64,
    t_g: f64,
    v_f: f64,
}

impl GrapheneState {
    pub const DEFAULT_THICKNESS: f64 = 0.335e-9;
    pub const DEFAULT_FERMI_VELOCITY: f64 = 1.0e6;

    pub fn new(mu_c_ev: f64, tau: f64, temperature: f64, t_g: f64, v_f: f64) -> Result<Self> {
        ensure_finite("mu_c", mu_c_ev)?;
        if mu_c_ev < 0.0 {
            return Err(Error::invalid(format!(
                "mu_c must be >= 0 eV, got {mu_c_ev}"
            )));
        }
        ensure_positive("tau", tau)?;
        ensure_positive("temperature", temperature)?;
        ensure_positive("t_g", t_g)?;
        ensure_positive("v_f", v_f)?;
        Ok(Self {
            mu_c: mu_c_ev * EV,
            tau,
            temperature,
            t_g,
            v_f,
        })
    }

    /// Same state with a different chemical potential.
    pub fn with_mu_c_ev(&self, mu_c_ev: f64) -> Result<Self> {
        Self::new(mu_c_ev, self.tau, self.temperature, self.t_g, self.v_f)
    }

    pub fn mu_c_ev(&self) -> f64 {
        self.mu_c / EV
    }

    /// Chemical potential in joules.
    pub fn mu_c(&self) -> f64 {
        self.mu_c
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn thickness(&self) -> f64 {
        self.t_g
    }

    pub fn fermi_velocity(&self) -> f64 {
        self.v_f
    }

    fn thermal_energy(&self) -> f64 {
        K_B * self.temperature
    }
}

impl Default for GrapheneState {
    /// µ_c = 0.5 eV, τ = 1 ps, T = 300 K, monolayer thickness, v_F = 1e6 m/s.
    fn default() -> Self {
        Self::new(
            0.5,
            1.0e-12,
            300.0,
            Self::DEFAULT_THICKNESS,
            Self::DEFAULT_FERMI_VELOCITY,
        )
        .expect("default graphene state is valid")
    }
}

/// Complex sheet conductivity (S per square) at a given frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheetConductivity {
    pub value: Complex64,
    pub frequency: f64,
}

impl SheetConductivity {
    pub fn angular_frequency(&self) -> f64 {
        2.0 * PI * self.frequency
    }
}

/// Fermi–Dirac occupancy `1 / (exp(x) + 1)` for reduced energy `x`,
/// evaluated without overflow for any finite `x`.
pub(crate) fn fermi_reduced(x: f64) -> f64 {
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// `-d f/dx` of [`fermi_reduced`]; even in `x`.
fn fermi_slope_reduced(x: f64) -> f64 {
    let e = (-x.abs()).exp();
    e / ((1.0 + e) * (1.0 + e))
}

/// Fermi–Dirac occupancy of a state at `energy` (J).
pub fn fermi_dirac(energy: f64, mu_c: f64, temperature: f64) -> Result<f64> {
    ensure_finite("energy", energy)?;
    ensure_finite("mu_c", mu_c)?;
    ensure_positive("temperature", temperature)?;
    Ok(fermi_reduced((energy - mu_c) / (K_B * temperature)))
}

fn check_frequency(frequency: f64) -> Result<f64> {
    ensure_positive("frequency", frequency)?;
    Ok(2.0 * PI * frequency)
}

/// Closed-form intraband (Drude-like) conductivity.
pub fn sigma_intraband(frequency: f64, state: &GrapheneState) -> Result<SheetConductivity> {
    let omega = check_frequency(frequency)?;
    let kt = state.thermal_energy();
    let m = state.mu_c / kt;
    let bracket = m + 2.0 * (-m).exp().ln_1p();
    let damped = Complex64::new(omega, -1.0 / state.tau);
    let value = -J * (E_CHARGE * E_CHARGE * kt * bracket) / (PI * HBAR * HBAR * damped);
    Ok(SheetConductivity { value, frequency })
}

/// Intraband and interband parts of the Kubo conductivity, with the summed
/// quadrature error estimate (S).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KuboTerms {
    pub frequency: f64,
    pub intraband: Complex64,
    pub interband: Complex64,
    pub error: f64,
}

impl KuboTerms {
    pub fn total(&self) -> SheetConductivity {
        SheetConductivity {
            value: self.intraband + self.interband,
            frequency: self.frequency,
        }
    }
}

/// Sorted, de-duplicated breakpoints clipped to `[0, upper]`.
fn breakpoints(upper: f64, interior: &[f64]) -> Vec<f64> {
    let mut pts = vec![0.0, upper];
    pts.extend(interior.iter().copied().filter(|&x| x > 0.0 && x < upper));
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|b, a| (*b - *a).abs() <= 1e-12 * upper);
    pts
}

/// Evaluates both Kubo integrals numerically.
///
/// Energies are integrated in units of `k_B T`. The Fermi-factor integrals are
/// truncated at `µ_c + max(40 k_B T, 10 ħω)`; beyond that point the interband
/// numerator is 1 to within `e^-40`, and its algebraic `1/ε²` tail is added in
/// closed form.
pub fn kubo_terms(
    frequency: f64,
    state: &GrapheneState,
    spec: &QuadratureSpec,
) -> Result<KuboTerms> {
    let omega = check_frequency(frequency)?;
    let kt = state.thermal_energy();
    let m = state.mu_c / kt;
    let a = Complex64::new(omega, -1.0 / state.tau);
    let b = 2.0 * kt / HBAR;
    let x_pole = HBAR * omega / (2.0 * kt);
    let upper = (m + 40f64.max(10.0 * HBAR * omega / kt)).max(2.0 * a.norm() / b);
    let pts = breakpoints(upper, &[m, x_pole]);

    // ∫ ε (∂f(ε)/∂ε − ∂f(−ε)/∂ε) dε, with ∂f(−ε)/∂ε = −f'(−ε).
    let (intra_reduced, intra_err) = integrate_real(
        |x| -x * (fermi_slope_reduced(x - m) + fermi_slope_reduced(x + m)),
        &pts,
        spec,
    )?;
    let intra_integral = kt * intra_reduced;

    // ∫ (f(−ε) − f(ε)) / ((ω − j/τ)² − 4ε²/ħ²) dε
    let inter = integrate(
        |x| {
            let occupancy = fermi_reduced(-x - m) - fermi_reduced(x - m);
            occupancy / (a * a - b * b * x * x)
        },
        &pts,
        spec,
    )?;
    let tail = -((b * upper + a) / (b * upper - a)).ln() / (2.0 * a * b);
    let inter_integral = kt * (inter.value + tail);

    let pref = E_CHARGE * E_CHARGE / (PI * HBAR * HBAR);
    let intraband = J * pref * intra_integral / a;
    let interband = -J * pref * a * inter_integral;
    let error = pref * kt * (intra_err / a.norm() + a.norm() * inter.error);
    Ok(KuboTerms {
        frequency,
        intraband,
        interband,
        error,
    })
}

/// Full Kubo conductivity (intraband + interband) by numerical quadrature.
pub fn sigma_full_kubo(
    frequency: f64,
    state: &GrapheneState,
    spec: &QuadratureSpec,
) -> Result<SheetConductivity> {
    Ok(kubo_terms(frequency, state, spec)?.total())
}

/// Static field `E_0` (V/m) that induces chemical potential `µ_c`.
pub fn bias_field(state: &GrapheneState, spec: &QuadratureSpec) -> Result<f64> {
    let kt = state.thermal_energy();
    let m = state.mu_c / kt;
    let pts = breakpoints(m + 60.0, &[m]);
    let (reduced, _) = integrate_real(
        |x| x * (fermi_reduced(x - m) - fermi_reduced(x + m)),
        &pts,
        spec,
    )?;
    let integral = kt * kt * reduced;
    Ok(E_CHARGE * integral / (PI * EPS0 * HBAR * HBAR * state.v_f * state.v_f))
}

/// Relative permittivity of a slab of thickness `t_g` equivalent to the sheet.
pub fn graphene_permittivity(sigma: &SheetConductivity, t_g: f64) -> Result<Complex64> {
    ensure_positive("t_g", t_g)?;
    let omega = check_frequency(sigma.frequency)?;
    Ok(1.0 + sigma.value / (J * omega * EPS0 * t_g))
}

/// Inverse of [`graphene_permittivity`].
pub fn conductivity_from_permittivity(
    eps: Complex64,
    frequency: f64,
    t_g: f64,
) -> Result<SheetConductivity> {
    ensure_positive("t_g", t_g)?;
    let omega = check_frequency(frequency)?;
    Ok(SheetConductivity {
        value: (eps - 1.0) * J * omega * EPS0 * t_g,
        frequency,
    })
}

/// Intraband conductivity at `µ_c = 0`, where the bracket collapses to `2 ln 2`.
pub fn sigma_neutral_point(frequency: f64, state: &GrapheneState) -> Result<SheetConductivity> {
    let omega = check_frequency(frequency)?;
    let kt = state.thermal_energy();
    let damped = Complex64::new(omega, -1.0 / state.tau);
    Ok(SheetConductivity {
        value: -J * E_CHARGE * E_CHARGE * kt * 2.0 * LN_2 / (PI * HBAR * HBAR * damped),
        frequency,
    })
}
