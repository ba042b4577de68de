//! JSON run configuration. SI units throughout except `mu_c_eV` and `tau_ps`.

use std::path::Path;

use graphene_hsf::homogenization::{
    AbsorberDesign, HomogenizationModel, StackMaterials, UnitCellGeometry,
};
use graphene_hsf::material::GrapheneState;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub graphene: GrapheneSection,
    pub geometry: GeometrySection,
    pub materials: MaterialsSection,
    pub model: ModelSection,
    pub sweep: SweepSection,
    pub supercell: SupercellSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GrapheneSection {
    #[serde(rename = "mu_c_eV")]
    pub mu_c_ev: f64,
    pub tau_ps: f64,
    #[serde(rename = "T_K")]
    pub temperature_k: f64,
    pub t_g_m: f64,
    pub v_f: f64,
}

impl Default for GrapheneSection {
    fn default() -> Self {
        Self {
            mu_c_ev: 0.5,
            tau_ps: 1.0,
            temperature_k: 300.0,
            t_g_m: 0.335e-9,
            v_f: 1e6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometrySection {
    #[serde(rename = "P")]
    pub period: f64,
    pub d: f64,
    pub h: f64,
    pub t_ox: f64,
    pub t_poly: f64,
}

impl Default for GeometrySection {
    fn default() -> Self {
        let g = UnitCellGeometry::default();
        Self {
            period: g.period,
            d: g.patch,
            h: g.substrate,
            t_ox: g.spacer,
            t_poly: g.gate,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MaterialsSection {
    #[serde(rename = "eps_Si")]
    pub eps_si: f64,
    #[serde(rename = "eps_SiO2")]
    pub eps_sio2: f64,
    pub eps_poly: f64,
}

impl Default for MaterialsSection {
    fn default() -> Self {
        let m = StackMaterials::default();
        Self {
            eps_si: m.silicon,
            eps_sio2: m.oxide,
            eps_poly: m.poly,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelSection {
    pub kappa: f64,
    pub sheet_scale: f64,
    pub calibrated: bool,
    /// Set by `calibrate`; informational only.
    pub calibrated_at: Option<String>,
    #[serde(rename = "target_f_Hz")]
    pub target_f_hz: f64,
}

impl Default for ModelSection {
    fn default() -> Self {
        Self {
            kappa: 1.0,
            sheet_scale: 1.0,
            calibrated: false,
            calibrated_at: None,
            target_f_hz: 2.5e12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    #[serde(rename = "f_lo_Hz")]
    pub f_lo_hz: f64,
    #[serde(rename = "f_hi_Hz")]
    pub f_hi_hz: f64,
    pub points: usize,
    #[serde(rename = "mu_lo_eV")]
    pub mu_lo_ev: f64,
    #[serde(rename = "mu_hi_eV")]
    pub mu_hi_ev: f64,
    pub mu_steps: usize,
    #[serde(rename = "band_lo_Hz")]
    pub band_lo_hz: f64,
    #[serde(rename = "band_hi_Hz")]
    pub band_hi_hz: f64,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            f_lo_hz: 1e12,
            f_hi_hz: 4e12,
            points: 401,
            mu_lo_ev: 0.5,
            mu_hi_ev: 0.65,
            mu_steps: 7,
            band_lo_hz: 1.5e12,
            band_hi_hz: 4.5e12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SupercellSection {
    pub pitch_m: f64,
    /// Operating frequency; the wavelength is `c/f`.
    #[serde(rename = "frequency_Hz")]
    pub frequency_hz: f64,
    pub n_i: f64,
}

impl Default for SupercellSection {
    fn default() -> Self {
        Self {
            pitch_m: 8.5e-6,
            frequency_hz: 2.5e12,
            n_i: 1.0,
        }
    }
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, ConfigError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| ConfigError(format!("invalid config {}: {e}", path.display())))?;
        cfg.validate()
            .map_err(|e| ConfigError(format!("invalid config {}: {e}", path.display())))?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serializes");
        s.push('\n');
        s
    }

    pub fn validate(&self) -> Result<(), graphene_hsf::Error> {
        self.graphene_state()?;
        self.design().validate()?;
        let s = &self.sweep;
        for (name, v) in [
            ("sweep.f_lo_Hz", s.f_lo_hz),
            ("sweep.band_lo_Hz", s.band_lo_hz),
            ("sweep.mu_lo_eV", s.mu_lo_ev),
            ("supercell.pitch_m", self.supercell.pitch_m),
            ("supercell.frequency_Hz", self.supercell.frequency_hz),
            ("supercell.n_i", self.supercell.n_i),
            ("model.target_f_Hz", self.model.target_f_hz),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(graphene_hsf::Error::InvalidInput(format!(
                    "{name} must be a positive number, got {v}"
                )));
            }
        }
        if [
            (s.f_lo_hz, s.f_hi_hz),
            (s.band_lo_hz, s.band_hi_hz),
            (s.mu_lo_ev, s.mu_hi_ev),
        ]
        .iter()
        .any(|&(lo, hi)| hi.partial_cmp(&lo) != Some(std::cmp::Ordering::Greater))
        {
            return Err(graphene_hsf::Error::InvalidInput(
                "sweep upper bounds must exceed lower bounds".into(),
            ));
        }
        if s.points < 2 || s.mu_steps < 2 {
            return Err(graphene_hsf::Error::InvalidInput(
                "sweep.points and sweep.mu_steps must be at least 2".into(),
            ));
        }
        Ok(())
    }

    pub fn graphene_state(&self) -> graphene_hsf::Result<GrapheneState> {
        let g = &self.graphene;
        GrapheneState::new(g.mu_c_ev, g.tau_ps * 1e-12, g.temperature_k, g.t_g_m, g.v_f)
    }

    pub fn design(&self) -> AbsorberDesign {
        let g = &self.geometry;
        let m = &self.materials;
        AbsorberDesign {
            geometry: UnitCellGeometry {
                period: g.period,
                patch: g.d,
                substrate: g.h,
                spacer: g.t_ox,
                gate: g.t_poly,
            },
            materials: StackMaterials {
                silicon: m.eps_si,
                oxide: m.eps_sio2,
                poly: m.eps_poly,
            },
            model: HomogenizationModel {
                kappa: self.model.kappa,
                sheet_scale: self.model.sheet_scale,
                calibrated: self.model.calibrated,
            },
        }
    }
}
