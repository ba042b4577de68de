//! Effective-medium parameters from two-port S-parameters.
//!
//! For a slab of thickness `L` in vacuum with `S11`, `S21` referenced to its
//! faces:
//!
//! ```text
//! z = sqrt(((1+S11)² − S21²) / ((1−S11)² − S21²)),   Re z ≥ 0
//! X = S21 / (1 − S11 (z−1)/(z+1)) = exp(−j n k0 L)
//! n = (j ln X + 2π m) / (k0 L)
//! ```
//!
//! The integer `m` selects the branch of the logarithm.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::constants::C0;
use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::solver::{solve, Excitation, LayerStack, Termination};

const J: Complex64 = Complex64::new(0.0, 1.0);
const PASSIVE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPortSample {
    pub frequency: f64,
    pub s11: Complex64,
    pub s21: Complex64,
    pub thickness: f64,
}

impl TwoPortSample {
    pub fn new(frequency: f64, s11: Complex64, s21: Complex64, thickness: f64) -> Result<Self> {
        let s = Self {
            frequency,
            s11,
            s21,
            thickness,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("frequency", self.frequency)?;
        ensure_positive("slab thickness", self.thickness)?;
        for (name, v) in [("S11", self.s11), ("S21", self.s21)] {
            ensure_finite(name, v.re)?;
            ensure_finite(name, v.im)?;
            if v.norm() > 1.0 + PASSIVE_SLACK {
                return Err(Error::invalid(format!(
                    "|{name}| = {} exceeds 1 at f = {:e} Hz; sample is not passive",
                    v.norm(),
                    self.frequency
                )));
            }
        }
        Ok(())
    }

    /// Normal-incidence S-parameters of an open-terminated stack, with the
    /// slab thickness taken from its layers.
    pub fn from_stack(stack: &LayerStack, frequency: f64) -> Result<Self> {
        if stack.termination != Termination::vacuum() {
            return Err(Error::invalid("two-port sample needs a vacuum exit medium"));
        }
        let p = solve(stack, &Excitation::normal(frequency))?;
        Self::new(frequency, p.r, p.t, stack.total_thickness())
    }

    fn k0l(&self) -> f64 {
        2.0 * PI * self.frequency / C0 * self.thickness
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetrievedParams {
    pub frequency: f64,
    pub n: Complex64,
    pub z: Complex64,
    pub eps: Complex64,
    pub mu: Complex64,
    pub branch: i64,
}

/// Branch-free part of the retrieval: impedance and `X = exp(−j n k0 L)`.
fn impedance_and_phase(sample: &TwoPortSample) -> Result<(Complex64, Complex64)> {
    sample.validate()?;
    let (s11, s21) = (sample.s11, sample.s21);
    if s21.norm() < 1e-12 {
        return Err(Error::OpaqueSlab {
            frequency: sample.frequency,
        });
    }
    let num = (1.0 + s11).powi(2) - s21 * s21;
    let den = (1.0 - s11).powi(2) - s21 * s21;
    if den.norm() < 1e-14 {
        return Err(Error::DegenerateSample {
            frequency: sample.frequency,
        });
    }
    let z0 = (num / den).sqrt();
    let x_of = |z: Complex64| -> Option<Complex64> {
        let d = 1.0 - s11 * (z - 1.0) / (z + 1.0);
        (d.norm() > 1e-14 && (z + 1.0).norm() > 1e-14).then(|| s21 / d)
    };
    let z = if z0.re.abs() < 1e-9 {
        // Lossless boundary case: the sign of z is fixed by |X| ≤ 1 instead.
        match x_of(z0) {
            Some(x) if x.norm() <= 1.0 + PASSIVE_SLACK => z0,
            _ => -z0,
        }
    } else if z0.re < 0.0 {
        -z0
    } else {
        z0
    };
    let x = x_of(z).ok_or(Error::DegenerateSample {
        frequency: sample.frequency,
    })?;
    Ok((z, x))
}

fn assemble(sample: &TwoPortSample, z: Complex64, x: Complex64, branch: i64) -> RetrievedParams {
    let n = (J * x.ln() + 2.0 * PI * branch as f64) / sample.k0l();
    RetrievedParams {
        frequency: sample.frequency,
        n,
        z,
        eps: n / z,
        mu: n * z,
        branch,
    }
}

/// Retrieval on an explicit logarithm branch.
pub fn retrieve_on_branch(sample: &TwoPortSample, branch: i64) -> Result<RetrievedParams> {
    let (z, x) = impedance_and_phase(sample)?;
    Ok(assemble(sample, z, x, branch))
}

/// Single-sample retrieval on the branch of minimal `|n|`.
///
/// The principal logarithm already puts `Re(n k0 L)` in `(−π, π]`, and all
/// branches share `Im n`, so the minimal branch is `m = 0`.
pub fn retrieve(sample: &TwoPortSample) -> Result<RetrievedParams> {
    retrieve_on_branch(sample, 0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dispersion {
    pub points: Vec<RetrievedParams>,
    /// Indices where no branch kept the phase `n k0 L` within π/2 of its
    /// predecessor.
    pub flagged: Vec<usize>,
}

/// Frequency-swept retrieval with branch continuity.
///
/// The first sample uses the minimal-`|n|` branch; each later sample takes
/// the branch whose phase `Re(n k0 L)` is closest to the previous one.
pub fn retrieve_dispersion(samples: &[TwoPortSample]) -> Result<Dispersion> {
    if samples.is_empty() {
        return Err(Error::invalid("retrieval sweep is empty"));
    }
    if samples.windows(2).any(|w| w[1].frequency <= w[0].frequency) {
        return Err(Error::invalid(
            "retrieval samples must be strictly increasing in frequency",
        ));
    }
    let mut points = Vec::with_capacity(samples.len());
    let mut flagged = Vec::new();
    let mut prev_phase: Option<f64> = None;
    for (i, sample) in samples.iter().enumerate() {
        let (z, x) = impedance_and_phase(sample).map_err(|e| e.at_frequency(sample.frequency))?;
        let principal = (J * x.ln()).re;
        let branch = match prev_phase {
            None => 0,
            Some(prev) => {
                let m: f64 = ((prev - principal) / (2.0 * PI)).round();
                if (principal + 2.0 * PI * m - prev).abs() > 0.5 * PI {
                    flagged.push(i);
                }
                m as i64
            }
        };
        let p = assemble(sample, z, x, branch);
        prev_phase = Some(p.n.re * sample.k0l());
        points.push(p);
    }
    Ok(Dispersion { points, flagged })
}
