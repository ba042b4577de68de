//! Chemical-potential sweeps of the absorber resonance.

use crate::error::{ensure_positive, Error, Result};
use crate::homogenization::{AbsorberDesign, ResonanceSearch};
use crate::material::{bias_field, GrapheneState};
use crate::quadrature::QuadratureSpec;
use crate::schedule::Schedule;

/// Default tracking band (Hz), wide enough for the peak to shift upward.
pub const DEFAULT_BAND: (f64, f64) = (1.5e12, 4.5e12);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconfigPoint {
    pub mu_c_ev: f64,
    pub f_res: f64,
    pub a_peak: f64,
    /// Bias field needed for this chemical potential (V/m).
    pub e0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRequest {
    pub mu_lo_ev: f64,
    pub mu_hi_ev: f64,
    pub steps: usize,
    pub band: (f64, f64),
}

impl SweepRequest {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("mu_lo", self.mu_lo_ev)?;
        ensure_positive("mu_hi", self.mu_hi_ev)?;
        if self.mu_hi_ev <= self.mu_lo_ev {
            return Err(Error::invalid(format!(
                "chemical potential sweep needs mu_lo < mu_hi, got [{}, {}] eV",
                self.mu_lo_ev, self.mu_hi_ev
            )));
        }
        if self.steps < 2 {
            return Err(Error::invalid(format!(
                "sweep needs at least 2 steps, got {}",
                self.steps
            )));
        }
        ensure_positive("band start", self.band.0)?;
        if self.band.1 <= self.band.0 {
            return Err(Error::invalid("tracking band must satisfy f_lo < f_hi"));
        }
        Ok(())
    }

    /// Evenly spaced chemical potentials, endpoints exact.
    pub fn mu_values(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.mu_hi_ev
                } else {
                    self.mu_lo_ev + (self.mu_hi_ev - self.mu_lo_ev) * i as f64 / last as f64
                }
            })
            .collect()
    }
}

/// Tracks the absorption peak and required bias field across `µ_c`.
///
/// Each chemical potential is independent and runs under `schedule`; the
/// result is ordered by `µ_c` regardless. Failures carry the offending `µ_c`.
pub fn sweep_mu(
    design: &AbsorberDesign,
    base: &GrapheneState,
    request: &SweepRequest,
    search: &ResonanceSearch,
    schedule: Schedule,
) -> Result<Vec<ReconfigPoint>> {
    request.validate()?;
    design.validate()?;
    if !design.model.calibrated {
        return Err(Error::invalid(
            "chemical potential sweep needs a calibrated model",
        ));
    }
    let quad = QuadratureSpec::default();
    schedule.try_map(&request.mu_values(), |&mu| {
        let point = || -> Result<ReconfigPoint> {
            let state = base.with_mu_c_ev(mu)?;
            let r = design.resonance(&state, request.band.0, request.band.1, search, schedule)?;
            Ok(ReconfigPoint {
                mu_c_ev: mu,
                f_res: r.frequency,
                a_peak: r.absorptance,
                e0: bias_field(&state, &quad)?,
            })
        };
        point().map_err(|e| Error::AtChemicalPotential {
            mu_c_ev: mu,
            source: Box::new(e),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homogenization::calibrate;

    fn calibrated() -> AbsorberDesign {
        let d = AbsorberDesign::default();
        let m = calibrate(&d.geometry, &d.materials, &GrapheneState::default(), 2.5e12).unwrap();
        d.with_model(m)
    }

    fn request(steps: usize) -> SweepRequest {
        SweepRequest {
            mu_lo_ev: 0.5,
            mu_hi_ev: 0.65,
            steps,
            band: DEFAULT_BAND,
        }
    }

    #[test]
    fn tuning_is_monotone_and_absorbing() {
        let pts = sweep_mu(
            &calibrated(),
            &GrapheneState::default(),
            &request(7),
            &ResonanceSearch::default(),
            Schedule::default(),
        )
        .unwrap();
        assert_eq!(pts.len(), 7);
        assert!((pts[0].f_res / 2.5e12 - 1.0).abs() < 5e-3);
        for w in pts.windows(2) {
            assert!(w[1].mu_c_ev > w[0].mu_c_ev);
            assert!(w[1].f_res > w[0].f_res);
            assert!(w[1].e0 > w[0].e0);
        }
        assert!(pts.iter().all(|p| p.a_peak >= 0.9 && p.a_peak <= 1.0));
        // Regression of the homogenized model: ~2.88 THz at 0.65 eV.
        assert!((pts[6].f_res - 2.883e12).abs() < 5e9, "{}", pts[6].f_res);
    }

    #[test]
    fn schedules_agree_bitwise() {
        let d = calibrated();
        let st = GrapheneState::default();
        let s = sweep_mu(
            &d,
            &st,
            &request(4),
            &ResonanceSearch::default(),
            Schedule::Sequential,
        )
        .unwrap();
        let p = sweep_mu(
            &d,
            &st,
            &request(4),
            &ResonanceSearch::default(),
            Schedule::Parallel,
        )
        .unwrap();
        for (a, b) in s.iter().zip(&p) {
            assert_eq!(a.f_res.to_bits(), b.f_res.to_bits());
            assert_eq!(a.e0.to_bits(), b.e0.to_bits());
        }
    }

    #[test]
    fn preconditions() {
        let d = calibrated();
        let st = GrapheneState::default();
        let s = ResonanceSearch::default();
        let flat = SweepRequest {
            mu_hi_ev: 0.5,
            ..request(2)
        };
        assert!(sweep_mu(&d, &st, &flat, &s, Schedule::Sequential).is_err());
        assert!(sweep_mu(&d, &st, &request(1), &s, Schedule::Sequential).is_err());
        assert!(sweep_mu(
            &AbsorberDesign::default(),
            &st,
            &request(2),
            &s,
            Schedule::Sequential
        )
        .is_err());
    }

    #[test]
    fn missing_resonance_names_mu() {
        let narrow = SweepRequest {
            band: (3.5e12, 4.5e12),
            ..request(3)
        };
        let e = sweep_mu(
            &calibrated(),
            &GrapheneState::default(),
            &narrow,
            &ResonanceSearch::default(),
            Schedule::default(),
        )
        .unwrap_err();
        match e {
            Error::AtChemicalPotential { mu_c_ev, source } => {
                assert_eq!(mu_c_ev, 0.5);
                assert!(matches!(*source, Error::NoResonanceInBand { .. }));
            }
            other => panic!("{other:?}"),
        }
    }
}
