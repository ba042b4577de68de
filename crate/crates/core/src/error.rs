use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(
        "quadrature did not converge after {evaluations} evaluations \
         (partial estimate {estimate}, error estimate {error:e})"
    )]
    QuadratureNonConvergence {
        estimate: Complex64,
        error: f64,
        evaluations: usize,
    },

    #[error("at f = {frequency:e} Hz: {source}")]
    AtFrequency {
        frequency: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("at mu_c = {mu_c_ev} eV: {source}")]
    AtChemicalPotential {
        mu_c_ev: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("no resonance in band: absorptance has no local maximum strictly inside [{f_lo:e}, {f_hi:e}] Hz")]
    NoResonanceInBand { f_lo: f64, f_hi: f64 },

    #[error("calibration failed for target {target:e} Hz: {reason}{}", fmt_range(.achievable))]
    CalibrationFailed {
        target: f64,
        reason: String,
        achievable: Option<(f64, f64)>,
    },

    #[error(
        "opaque slab at f = {frequency:e} Hz: |S21| below 1e-12, two-port retrieval undefined"
    )]
    OpaqueSlab { frequency: f64 },

    #[error(
        "degenerate S-parameter sample at f = {frequency:e} Hz: impedance denominator vanishes"
    )]
    DegenerateSample { frequency: f64 },

    #[error("target below specular: reflection angle {theta_r_deg}° must exceed incidence angle {theta_i_deg}°")]
    TargetBelowSpecular { theta_i_deg: f64, theta_r_deg: f64 },
}

fn fmt_range(range: &Option<(f64, f64)>) -> String {
    match range {
        Some((lo, hi)) => format!("; achievable targets span {lo:e} to {hi:e} Hz"),
        None => "; no achievable target found in the scanned range".to_string(),
    }
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Wraps the error with the frequency at which it occurred.
    pub fn at_frequency(self, frequency: f64) -> Self {
        Error::AtFrequency {
            frequency,
            source: Box::new(self),
        }
    }

    /// Strips `AtFrequency` / `AtChemicalPotential` context wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtFrequency { source, .. } | Error::AtChemicalPotential { source, .. } => {
                source.root()
            }
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "{name} must be finite, got {value}"
        )))
    }
}

pub(crate) fn ensure_positive(name: &str, value: f64) -> Result<()> {
    ensure_finite(name, value)?;
    if value > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be > 0, got {value}")))
    }
}
