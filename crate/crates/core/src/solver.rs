//! Transfer-matrix (transmission-line) solver for planar stacks.
//!
//! Each homogeneous layer is a section of transmission line with normalized
//! wave impedance `η = µ/q` (TE) or `η = q/ε` (TM), where `q = k_z/k_0`.
//! Zero-thickness conductive sheets are shunt admittances: tangential E is
//! continuous and tangential H jumps by `Y_s E`. Fields are tangential
//! components, so for TM incidence `r` and `t` are tangential-E ratios.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::constants::{C0, Z0};
use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::schedule::Schedule;

const J: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer {
    /// Thickness (m).
    pub thickness: f64,
    pub permittivity: Complex64,
    pub permeability: Complex64,
}

impl Layer {
    pub fn new(thickness: f64, permittivity: Complex64, permeability: Complex64) -> Self {
        Self {
            thickness,
            permittivity,
            permeability,
        }
    }

    /// Non-magnetic layer.
    pub fn dielectric(thickness: f64, permittivity: impl Into<Complex64>) -> Self {
        Self::new(thickness, permittivity.into(), ONE)
    }

    fn validate(&self) -> Result<()> {
        ensure_finite("layer thickness", self.thickness)?;
        if self.thickness < 0.0 {
            return Err(Error::invalid(format!(
                "layer thickness must be >= 0, got {}",
                self.thickness
            )));
        }
        check_complex("layer permittivity", self.permittivity)?;
        check_complex("layer permeability", self.permeability)
    }
}

/// Zero-thickness conductive sheet at an interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheetBoundary {
    /// Sheet admittance (S per square).
    pub admittance: Complex64,
}

impl SheetBoundary {
    pub fn new(admittance: Complex64) -> Self {
        Self { admittance }
    }

    pub fn from_impedance(impedance: Complex64) -> Self {
        Self {
            admittance: 1.0 / impedance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StackElement {
    Sheet(SheetBoundary),
    Layer(Layer),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Termination {
    /// Perfect electric conductor directly below the last element.
    Pec,
    /// Semi-infinite non-magnetic exit medium with the given permittivity.
    Open(Complex64),
}

impl Termination {
    pub fn vacuum() -> Self {
        Termination::Open(ONE)
    }
}

/// Elements ordered from the incidence side downward.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerStack {
    pub elements: Vec<StackElement>,
    pub termination: Termination,
}

impl LayerStack {
    pub fn new(termination: Termination) -> Self {
        Self {
            elements: Vec::new(),
            termination,
        }
    }

    pub fn with_layer(mut self, layer: Layer) -> Self {
        self.elements.push(StackElement::Layer(layer));
        self
    }

    pub fn with_sheet(mut self, sheet: SheetBoundary) -> Self {
        self.elements.push(StackElement::Sheet(sheet));
        self
    }

    pub fn layer_count(&self) -> usize {
        self.elements
            .iter()
            .filter(|e| matches!(e, StackElement::Layer(_)))
            .count()
    }

    pub fn sheet_count(&self) -> usize {
        self.elements.len() - self.layer_count()
    }

    pub fn total_thickness(&self) -> f64 {
        self.elements
            .iter()
            .map(|e| match e {
                StackElement::Layer(l) => l.thickness,
                StackElement::Sheet(_) => 0.0,
            })
            .sum()
    }

    pub fn validate(&self) -> Result<()> {
        for el in &self.elements {
            match el {
                StackElement::Layer(l) => l.validate()?,
                StackElement::Sheet(s) => check_complex("sheet admittance", s.admittance)?,
            }
        }
        if let Termination::Open(eps) = self.termination {
            check_complex("exit permittivity", eps)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    Te,
    Tm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Excitation {
    /// Frequency (Hz).
    pub frequency: f64,
    /// Angle of incidence from the normal (degrees).
    pub angle_deg: f64,
    pub polarization: Polarization,
    /// Real relative permittivity of the (lossless) incidence medium.
    pub incidence_permittivity: f64,
}

impl Excitation {
    pub fn normal(frequency: f64) -> Self {
        Self {
            frequency,
            angle_deg: 0.0,
            polarization: Polarization::Te,
            incidence_permittivity: 1.0,
        }
    }

    pub fn at_frequency(&self, frequency: f64) -> Self {
        Self { frequency, ..*self }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("frequency", self.frequency)?;
        ensure_finite("incidence angle", self.angle_deg)?;
        if !(0.0..90.0).contains(&self.angle_deg) {
            return Err(Error::invalid(format!(
                "incidence angle must satisfy 0 <= theta < 90 degrees, got {}",
                self.angle_deg
            )));
        }
        ensure_positive("incidence permittivity", self.incidence_permittivity)
    }

    fn free_space_wavenumber(&self) -> f64 {
        2.0 * PI * self.frequency / C0
    }

    /// Tangential wavenumber normalized to k0, conserved through the stack.
    fn transverse_index(&self) -> f64 {
        if self.angle_deg == 0.0 {
            0.0
        } else {
            self.incidence_permittivity.sqrt() * self.angle_deg.to_radians().sin()
        }
    }
}

/// Solver output for one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub frequency: f64,
    pub r: Complex64,
    /// Tangential-field transmission coefficient; exactly zero for PEC.
    pub t: Complex64,
    /// Transmitted power fraction.
    pub transmittance: f64,
    pub absorptance: f64,
    /// Input impedance normalized to the incidence-medium wave impedance.
    pub zin_norm: Complex64,
}

impl SpectralPoint {
    pub fn reflectance(&self) -> f64 {
        self.r.norm_sqr()
    }
}

fn check_complex(name: &str, z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be finite, got {z}")))
    }
}

/// Normalized longitudinal wavenumber with `Im q <= 0` (decay under e^{+jωt}).
fn longitudinal_index(eps: Complex64, mu: Complex64, s: f64) -> Complex64 {
    let q = (eps * mu - s * s).sqrt();
    if q.im > 0.0 || (q.im == 0.0 && q.re < 0.0) {
        -q
    } else {
        q
    }
}

/// Normalized wave impedance `Z/Z0` of a medium for the given polarization.
fn wave_impedance(
    eps: Complex64,
    mu: Complex64,
    s: f64,
    pol: Polarization,
) -> Result<(Complex64, Complex64)> {
    let q = longitudinal_index(eps, mu, s);
    if q == ZERO {
        return Err(Error::invalid(
            "wave propagates exactly parallel to a layer (k_z = 0)",
        ));
    }
    // At normal incidence both polarizations share one expression so their
    // results are bit-identical.
    let eta = match pol {
        Polarization::Tm if s != 0.0 => q / eps,
        _ => mu / q,
    };
    Ok((q, eta))
}

type Abcd = [[Complex64; 2]; 2];

fn mul(a: &Abcd, b: &Abcd) -> Abcd {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

const IDENTITY: Abcd = [[ONE, ZERO], [ZERO, ONE]];

fn element_matrix(el: &StackElement, k0: f64, s: f64, pol: Polarization) -> Result<Abcd> {
    match el {
        StackElement::Sheet(sheet) => Ok([[ONE, ZERO], [sheet.admittance * Z0, ONE]]),
        StackElement::Layer(layer) => {
            let (q, eta) = wave_impedance(layer.permittivity, layer.permeability, s, pol)?;
            let phase = q * (k0 * layer.thickness);
            let (c, sn) = (phase.cos(), phase.sin());
            Ok([[c, J * eta * sn], [J * sn / eta, c]])
        }
    }
}

/// Cascaded ABCD matrix of the stack (normalized to Z0).
fn cascade(stack: &LayerStack, exc: &Excitation) -> Result<Abcd> {
    let k0 = exc.free_space_wavenumber();
    let s = exc.transverse_index();
    stack.elements.iter().try_fold(IDENTITY, |acc, el| {
        Ok(mul(&acc, &element_matrix(el, k0, s, exc.polarization)?))
    })
}

/// Solves one stack under one plane-wave excitation.
pub fn solve(stack: &LayerStack, exc: &Excitation) -> Result<SpectralPoint> {
    exc.validate()?;
    stack.validate()?;
    let s = exc.transverse_index();
    let (_, eta_in) = wave_impedance(
        Complex64::new(exc.incidence_permittivity, 0.0),
        ONE,
        s,
        exc.polarization,
    )?;
    let m = cascade(stack, exc)?;

    // Load fields normalized to I_L = 1.
    let (v_load, eta_load) = match stack.termination {
        Termination::Pec => (ZERO, None),
        Termination::Open(eps) => {
            let (_, eta) = wave_impedance(eps, ONE, s, exc.polarization)?;
            (eta, Some(eta))
        }
    };
    let v_in = m[0][0] * v_load + m[0][1];
    let i_in = m[1][0] * v_load + m[1][1];
    let forward = v_in + eta_in * i_in;
    if forward == ZERO {
        return Err(Error::invalid("stack has no incident-wave solution"));
    }
    let r = (v_in - eta_in * i_in) / forward;

    let (t, transmittance) = match eta_load {
        None => (ZERO, 0.0),
        Some(eta) => {
            let t = 2.0 * v_load / forward;
            let ratio = (1.0 / eta).re / (1.0 / eta_in).re;
            (t, t.norm_sqr() * ratio)
        }
    };
    let absorptance = 1.0 - r.norm_sqr() - transmittance;
    Ok(SpectralPoint {
        frequency: exc.frequency,
        r,
        t,
        transmittance,
        absorptance,
        zin_norm: impedance_from_reflection(r),
    })
}

/// `Z_in / Z_ref` from the reflection coefficient; `r = 1` maps to infinity.
pub fn impedance_from_reflection(r: Complex64) -> Complex64 {
    if r == ONE {
        Complex64::new(f64::INFINITY, 0.0)
    } else {
        (1.0 + r) / (1.0 - r)
    }
}

/// Normalized input impedance at the top reference plane of the stack.
pub fn input_impedance(stack: &LayerStack, exc: &Excitation) -> Result<Complex64> {
    Ok(solve(stack, exc)?.zin_norm)
}

/// `n` evenly spaced frequencies from `f_start` to `f_stop`, both inclusive.
pub fn frequency_grid(f_start: f64, f_stop: f64, n_points: usize) -> Result<Vec<f64>> {
    ensure_positive("f_start", f_start)?;
    ensure_finite("f_stop", f_stop)?;
    if f_start >= f_stop {
        return Err(Error::invalid(format!(
            "sweep needs f_start < f_stop, got {f_start:e} >= {f_stop:e}"
        )));
    }
    if n_points < 2 {
        return Err(Error::invalid(format!(
            "sweep needs n_points >= 2, got {n_points}"
        )));
    }
    let last = (n_points - 1) as f64;
    Ok((0..n_points)
        .map(|i| {
            if i + 1 == n_points {
                f_stop
            } else {
                f_start + (f_stop - f_start) * (i as f64 / last)
            }
        })
        .collect())
}

/// Sweeps a frequency-dependent stack. The builder is called once per
/// frequency so dispersive sheets are re-evaluated at every point.
pub fn spectrum<F>(
    builder: F,
    f_start: f64,
    f_stop: f64,
    n_points: usize,
    template: &Excitation,
    schedule: Schedule,
) -> Result<Vec<SpectralPoint>>
where
    F: Fn(f64) -> Result<LayerStack> + Sync + Send,
{
    let freqs = frequency_grid(f_start, f_stop, n_points)?;
    schedule.try_map(&freqs, |&f| {
        let exc = template.at_frequency(f);
        builder(f)
            .and_then(|stack| solve(&stack, &exc))
            .map_err(|e| e.at_frequency(f))
    })
}

/// Index of the largest absorptance in a sweep (first one on ties).
pub fn peak_index(points: &[SpectralPoint]) -> Option<usize> {
    points
        .iter()
        .enumerate()
        .fold(None, |best: Option<(usize, f64)>, (i, p)| match best {
            Some((_, a)) if a >= p.absorptance => best,
            _ => Some((i, p.absorptance)),
        })
        .map(|(i, _)| i)
}
