//! Anomalous reflection from a linear phase-gradient supercell.
//!
//! A supercell of `N_c` cells of pitch `d` carries a reflection phase ramp
//! of `2π` over `D = N_c·d`, which adds `λ/(n_i·D)` to the tangential
//! wavevector: `sin θr = sin θi + λ/(n_i·D)`.

use std::f64::consts::PI;

use crate::error::{ensure_finite, ensure_positive, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupercellSpec {
    pub theta_i_deg: f64,
    pub cells: u64,
    /// Cell pitch (m).
    pub pitch: f64,
    /// Free-space wavelength (m).
    pub wavelength: f64,
    pub n_i: f64,
}

impl SupercellSpec {
    pub fn new(theta_i_deg: f64, cells: u64, pitch: f64, wavelength: f64) -> Result<Self> {
        let spec = Self {
            theta_i_deg,
            cells,
            pitch,
            wavelength,
            n_i: 1.0,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite("theta_i", self.theta_i_deg)?;
        if !(0.0..90.0).contains(&self.theta_i_deg) {
            return Err(Error::invalid(format!(
                "incidence angle must lie in [0, 90) degrees, got {}",
                self.theta_i_deg
            )));
        }
        if self.cells < 2 {
            return Err(Error::invalid(format!(
                "supercell needs N_c >= 2 cells, got {}",
                self.cells
            )));
        }
        ensure_positive("cell pitch d", self.pitch)?;
        ensure_positive("wavelength", self.wavelength)?;
        ensure_positive("incidence index n_i", self.n_i)
    }

    /// Supercell length `D = N_c·d`.
    pub fn length(&self) -> f64 {
        self.cells as f64 * self.pitch
    }

    fn sin_theta_r(&self) -> f64 {
        self.theta_i_deg.to_radians().sin() + self.wavelength / (self.n_i * self.length())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReflectionOutcome {
    Propagating {
        theta_r_deg: f64,
    },
    /// `|sin θr| > 1`: the anomalous order does not radiate.
    Evanescent {
        sin_theta_r: f64,
    },
}

impl ReflectionOutcome {
    pub fn is_propagating(&self) -> bool {
        matches!(self, Self::Propagating { .. })
    }

    pub fn sin_theta_r(&self) -> f64 {
        match *self {
            Self::Propagating { theta_r_deg } => theta_r_deg.to_radians().sin(),
            Self::Evanescent { sin_theta_r } => sin_theta_r,
        }
    }

    pub fn theta_r_deg(&self) -> Option<f64> {
        match *self {
            Self::Propagating { theta_r_deg } => Some(theta_r_deg),
            Self::Evanescent { .. } => None,
        }
    }
}

pub fn reflection_angle(spec: &SupercellSpec) -> Result<ReflectionOutcome> {
    spec.validate()?;
    Ok(outcome(spec.sin_theta_r()))
}

fn outcome(s: f64) -> ReflectionOutcome {
    if s.abs() <= 1.0 {
        ReflectionOutcome::Propagating {
            theta_r_deg: s.asin().to_degrees(),
        }
    } else {
        ReflectionOutcome::Evanescent { sin_theta_r: s }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupercellDesign {
    pub spec: SupercellSpec,
    pub outcome: ReflectionOutcome,
}

/// Sizes a supercell for a target reflection angle.
///
/// The ideal length `D* = λ/(n_i (sin θr − sin θi))` is truncated to whole
/// cells (never fewer than 2); truncation slightly overshoots the target, so
/// a result that fell into the evanescent regime is grown one cell at a time.
pub fn design_supercell(
    theta_i_deg: f64,
    theta_r_target_deg: f64,
    wavelength: f64,
    pitch: f64,
    n_i: f64,
) -> Result<SupercellDesign> {
    ensure_finite("target reflection angle", theta_r_target_deg)?;
    if theta_r_target_deg <= theta_i_deg {
        return Err(Error::TargetBelowSpecular {
            theta_i_deg,
            theta_r_deg: theta_r_target_deg,
        });
    }
    if theta_r_target_deg >= 90.0 {
        return Err(Error::invalid(
            "target reflection angle must be below 90 degrees",
        ));
    }
    let probe = SupercellSpec {
        theta_i_deg,
        cells: 2,
        pitch,
        wavelength,
        n_i,
    };
    probe.validate()?;

    let delta = theta_r_target_deg.to_radians().sin() - theta_i_deg.to_radians().sin();
    let ideal = wavelength / (n_i * delta) / pitch;
    if !ideal.is_finite() || ideal >= u64::MAX as f64 {
        return Err(Error::invalid(
            "target too close to specular: supercell length overflows",
        ));
    }
    let mut spec = SupercellSpec {
        cells: (ideal.floor() as u64).max(2),
        ..probe
    };
    let mut result = outcome(spec.sin_theta_r());
    while !result.is_propagating() {
        spec.cells += 1;
        result = outcome(spec.sin_theta_r());
    }
    Ok(SupercellDesign {
        spec,
        outcome: result,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseProfile {
    /// Reflection phase of each cell, in `[0, 2π)`.
    pub phases: Vec<f64>,
    /// `dφ/dx = 2π/D` (rad/m).
    pub gradient: f64,
}

pub fn phase_profile(spec: &SupercellSpec) -> Result<PhaseProfile> {
    spec.validate()?;
    let n = spec.cells;
    let phases = (0..n)
        .map(|k| (2.0 * PI * k as f64 / n as f64).rem_euclid(2.0 * PI))
        .collect();
    Ok(PhaseProfile {
        phases,
        gradient: 2.0 * PI / spec.length(),
    })
}

/// Reference design points `(θi, N_c, θr)` at 2.5 THz with 8.5 µm pitch.
/// The `(15°, 19)` entry is past grazing: its order is evanescent.
pub const TABLE2: [(f64, u64, f64); 8] = [
    (15.0, 58, 30.0),
    (15.0, 31, 45.0),
    (15.0, 23, 60.0),
    (15.0, 19, 75.0),
    (30.0, 68, 45.0),
    (30.0, 38, 60.0),
    (30.0, 32, 70.0),
    (30.0, 29, 80.0),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table2Row {
    pub theta_i_deg: f64,
    pub cells: u64,
    pub listed_theta_r_deg: f64,
    pub outcome: ReflectionOutcome,
}

/// Evaluates every row of [`TABLE2`] for the given wavelength and pitch.
pub fn table2_rows(wavelength: f64, pitch: f64) -> Result<Vec<Table2Row>> {
    TABLE2
        .iter()
        .map(|&(theta_i_deg, cells, listed)| {
            let spec = SupercellSpec::new(theta_i_deg, cells, pitch, wavelength)?;
            Ok(Table2Row {
                theta_i_deg,
                cells,
                listed_theta_r_deg: listed,
                outcome: reflection_angle(&spec)?,
            })
        })
        .collect()
}
