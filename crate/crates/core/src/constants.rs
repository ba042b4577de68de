//! Physical constants (CODATA 2018 exact or recommended values, SI units).

/// Elementary charge (C).
pub const E_CHARGE: f64 = 1.602_176_634e-19;
/// Boltzmann constant (J/K).
pub const K_B: f64 = 1.380_649e-23;
/// Reduced Planck constant (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Vacuum permittivity (F/m).
pub const EPS0: f64 = 8.854_187_812_8e-12;
/// Speed of light in vacuum (m/s).
pub const C0: f64 = 299_792_458.0;
/// Vacuum permeability (H/m), derived so that `MU0 * EPS0 * C0^2 == 1`.
pub const MU0: f64 = 1.0 / (EPS0 * C0 * C0);
/// Free-space wave impedance (Ω).
pub const Z0: f64 = 1.0 / (EPS0 * C0);
/// Joules per electron-volt.
pub const EV: f64 = E_CHARGE;

/// Bundle of the constants above, for callers that want them as a value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub e: f64,
    pub k_b: f64,
    pub hbar: f64,
    pub eps0: f64,
    pub c0: f64,
    pub z0: f64,
}

impl PhysicalConstants {
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        e: E_CHARGE,
        k_b: K_B,
        hbar: HBAR,
        eps0: EPS0,
        c0: C0,
        z0: Z0,
    };
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA
    }
}
