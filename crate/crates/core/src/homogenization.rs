//! Homogenized model of the graphene patch-array absorber.
//!
//! The patterned graphene is replaced by an equivalent sheet impedance
//!
//! ```text
//! Z_s(ω) = s·(P/d)²/σ(ω) − j/(ω C_grid),
//! C_grid = κ·(2 P ε0 ε_eff / π)·ln csc(π (P − d) / (2P))
//! ```
//!
//! sitting on SiO2 / poly-Si / Si over a PEC ground. `κ` and `s` absorb the
//! error of the quasi-static circuit against a full-wave unit-cell solution;
//! [`calibrate`] fixes both from the matching condition at one frequency.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::constants::{EPS0, Z0};
use crate::error::{ensure_positive, Error, Result};
use crate::material::{sigma_intraband, GrapheneState, SheetConductivity};
use crate::schedule::Schedule;
use crate::solver::{solve, spectrum, Excitation, Layer, LayerStack, SheetBoundary, Termination};

const J: Complex64 = Complex64::new(0.0, 1.0);

/// Sanity bounds on calibrated scalars.
pub const KAPPA_BOUNDS: (f64, f64) = (0.1, 10.0);
pub const SHEET_SCALE_BOUNDS: (f64, f64) = (0.1, 100.0);

/// Unit-cell dimensions (m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitCellGeometry {
    pub period: f64,
    pub patch: f64,
    pub substrate: f64,
    pub spacer: f64,
    pub gate: f64,
}

impl Default for UnitCellGeometry {
    fn default() -> Self {
        Self {
            period: 14e-6,
            patch: 8.5e-6,
            substrate: 9e-6,
            spacer: 50e-9,
            gate: 50e-9,
        }
    }
}

impl UnitCellGeometry {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("period P", self.period)?;
        ensure_positive("patch length d", self.patch)?;
        if self.patch >= self.period {
            return Err(Error::invalid(format!(
                "patch length d = {:e} m must be smaller than the period P = {:e} m (gap closes)",
                self.patch, self.period
            )));
        }
        ensure_positive("substrate height h", self.substrate)?;
        ensure_positive("spacer thickness t_ox", self.spacer)?;
        ensure_positive("gate thickness t_poly", self.gate)
    }

    /// Area ratio `(P/d)²` scaling the graphene term.
    pub fn fill_ratio(&self) -> f64 {
        (self.period / self.patch).powi(2)
    }
}

/// Relative permittivities of the dielectric layers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StackMaterials {
    pub silicon: f64,
    pub oxide: f64,
    pub poly: f64,
}

impl Default for StackMaterials {
    fn default() -> Self {
        Self {
            silicon: 11.7,
            oxide: 3.9,
            poly: 11.7,
        }
    }
}

impl StackMaterials {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("eps_Si", self.silicon)?;
        ensure_positive("eps_SiO2", self.oxide)?;
        ensure_positive("eps_poly", self.poly)
    }

    /// Mean of the media on either side of the sheet (vacuum above, oxide below).
    pub fn grid_permittivity(&self) -> f64 {
        0.5 * (1.0 + self.oxide)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogenizationModel {
    /// Multiplier on the grid capacitance.
    pub kappa: f64,
    /// Multiplier on the `(P/d)²/σ` graphene term.
    pub sheet_scale: f64,
    pub calibrated: bool,
}

impl Default for HomogenizationModel {
    fn default() -> Self {
        Self {
            kappa: 1.0,
            sheet_scale: 1.0,
            calibrated: false,
        }
    }
}

impl HomogenizationModel {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("kappa", self.kappa)?;
        ensure_positive("sheet_scale", self.sheet_scale)
    }

    pub fn within_sanity_bounds(&self) -> bool {
        (KAPPA_BOUNDS.0..=KAPPA_BOUNDS.1).contains(&self.kappa)
            && (SHEET_SCALE_BOUNDS.0..=SHEET_SCALE_BOUNDS.1).contains(&self.sheet_scale)
    }
}

/// Grid capacitance of the patch gaps (F), including `κ`.
pub fn grid_capacitance(geometry: &UnitCellGeometry, kappa: f64, eps_eff: f64) -> f64 {
    let p = geometry.period;
    let gap = p - geometry.patch;
    let log_csc = -(PI * gap / (2.0 * p)).sin().ln();
    kappa * (2.0 * p * EPS0 * eps_eff / PI) * log_csc
}

/// Equivalent sheet impedance (Ω per square) of the patch array.
pub fn patch_sheet_impedance(
    geometry: &UnitCellGeometry,
    sigma: &SheetConductivity,
    model: &HomogenizationModel,
    eps_eff: f64,
) -> Result<Complex64> {
    geometry.validate()?;
    model.validate()?;
    ensure_positive("frequency", sigma.frequency)?;
    ensure_positive("effective grid permittivity", eps_eff)?;
    if sigma.value.re < 0.0 {
        return Err(Error::invalid(
            "sheet conductivity must be passive (Re σ >= 0)",
        ));
    }
    if sigma.value.norm() == 0.0 {
        return Err(Error::invalid(
            "sheet conductivity is zero; patch impedance is unbounded",
        ));
    }
    let omega = sigma.angular_frequency();
    let c = grid_capacitance(geometry, model.kappa, eps_eff);
    Ok(model.sheet_scale * geometry.fill_ratio() / sigma.value - J / (omega * c))
}

/// Geometry, dielectrics and homogenization constants of one absorber.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AbsorberDesign {
    pub geometry: UnitCellGeometry,
    pub materials: StackMaterials,
    pub model: HomogenizationModel,
}

impl AbsorberDesign {
    pub fn validate(&self) -> Result<()> {
        self.geometry.validate()?;
        self.materials.validate()?;
        self.model.validate()
    }

    pub fn with_model(&self, model: HomogenizationModel) -> Self {
        Self { model, ..*self }
    }

    pub fn sheet_impedance(&self, state: &GrapheneState, frequency: f64) -> Result<Complex64> {
        let sigma = sigma_intraband(frequency, state)?;
        patch_sheet_impedance(
            &self.geometry,
            &sigma,
            &self.model,
            self.materials.grid_permittivity(),
        )
    }

    fn dielectric_layers(&self) -> [Layer; 3] {
        [
            Layer::dielectric(self.geometry.spacer, self.materials.oxide),
            Layer::dielectric(self.geometry.gate, self.materials.poly),
            Layer::dielectric(self.geometry.substrate, self.materials.silicon),
        ]
    }

    fn stack_with(&self, sheet: Option<SheetBoundary>, termination: Termination) -> LayerStack {
        let mut stack = LayerStack::new(termination);
        if let Some(sheet) = sheet {
            stack = stack.with_sheet(sheet);
        }
        self.dielectric_layers()
            .into_iter()
            .fold(stack, LayerStack::with_layer)
    }

    /// Sheet / SiO2 / poly-Si / Si / PEC.
    pub fn stack(&self, state: &GrapheneState, frequency: f64) -> Result<LayerStack> {
        self.validate()?;
        let zs = self.sheet_impedance(state, frequency)?;
        Ok(self.stack_with(Some(SheetBoundary::from_impedance(zs)), Termination::Pec))
    }

    /// The dielectric backing without the graphene sheet.
    pub fn backing(&self) -> Result<LayerStack> {
        self.validate()?;
        Ok(self.stack_with(None, Termination::Pec))
    }

    /// The absorber with the ground plane removed and vacuum below, used for
    /// two-port parameter retrieval.
    pub fn ground_free_slab(&self, state: &GrapheneState, frequency: f64) -> Result<LayerStack> {
        self.validate()?;
        let zs = self.sheet_impedance(state, frequency)?;
        Ok(self.stack_with(
            Some(SheetBoundary::from_impedance(zs)),
            Termination::vacuum(),
        ))
    }

    /// Physical thickness of the ground-free slab.
    pub fn slab_thickness(&self) -> f64 {
        self.geometry.spacer + self.geometry.gate + self.geometry.substrate
    }

    /// Absorption resonance at normal incidence within `[f_lo, f_hi]`.
    pub fn resonance(
        &self,
        state: &GrapheneState,
        f_lo: f64,
        f_hi: f64,
        search: &ResonanceSearch,
        schedule: Schedule,
    ) -> Result<Resonance> {
        find_resonance(
            |f| self.stack(state, f),
            &Excitation::normal(f_lo),
            f_lo,
            f_hi,
            search,
            schedule,
        )
    }
}

/// Free-function form of [`AbsorberDesign::stack`].
pub fn build_hsf_stack(
    design: &AbsorberDesign,
    state: &GrapheneState,
    frequency: f64,
) -> Result<LayerStack> {
    design.stack(state, frequency)
}

/// Coarse-grid plus golden-section settings for [`find_resonance`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceSearch {
    pub grid_points: usize,
    /// Relative frequency tolerance of the golden-section refinement.
    pub rel_tol: f64,
}

impl Default for ResonanceSearch {
    fn default() -> Self {
        Self {
            grid_points: 401,
            rel_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub frequency: f64,
    pub absorptance: f64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Locates the strongest interior absorption maximum of a frequency-dependent
/// stack: grid scan, then golden-section refinement between the neighbours
/// of the best grid point.
pub fn find_resonance<F>(
    builder: F,
    template: &Excitation,
    f_lo: f64,
    f_hi: f64,
    search: &ResonanceSearch,
    schedule: Schedule,
) -> Result<Resonance>
where
    F: Fn(f64) -> Result<LayerStack> + Sync + Send,
{
    if search.grid_points < 201 {
        return Err(Error::invalid(format!(
            "resonance search needs at least 201 grid points, got {}",
            search.grid_points
        )));
    }
    ensure_positive("resonance rel_tol", search.rel_tol)?;
    let grid = spectrum(&builder, f_lo, f_hi, search.grid_points, template, schedule)?;
    let a: Vec<f64> = grid.iter().map(|p| p.absorptance).collect();

    let best = (1..a.len() - 1)
        .filter(|&i| a[i] > a[i - 1] && a[i] >= a[i + 1])
        .fold(None, |best: Option<usize>, i| match best {
            Some(b) if a[b] >= a[i] => Some(b),
            _ => Some(i),
        })
        .ok_or(Error::NoResonanceInBand { f_lo, f_hi })?;

    let absorptance = |f: f64| -> Result<f64> {
        let stack = builder(f).map_err(|e| e.at_frequency(f))?;
        Ok(solve(&stack, &template.at_frequency(f))
            .map_err(|e| e.at_frequency(f))?
            .absorptance)
    };

    let (mut lo, mut hi) = (grid[best - 1].frequency, grid[best + 1].frequency);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut a1 = absorptance(x1)?;
    let mut a2 = absorptance(x2)?;
    let mut top = Resonance {
        frequency: grid[best].frequency,
        absorptance: a[best],
    };
    while hi - lo > search.rel_tol * 0.5 * (hi + lo) {
        if a1 >= a2 {
            hi = x2;
            x2 = x1;
            a2 = a1;
            x1 = hi - INV_PHI * (hi - lo);
            a1 = absorptance(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            a1 = a2;
            x2 = lo + INV_PHI * (hi - lo);
            a2 = absorptance(x2)?;
        }
    }
    for (f, val) in [(x1, a1), (x2, a2)] {
        if val > top.absorptance {
            top = Resonance {
                frequency: f,
                absorptance: val,
            };
        }
    }
    Ok(top)
}

/// Solves for `(κ, s)` such that the absorber is perfectly matched
/// (`Y_s + Y_backing = 1/Z0`) at `target` for the given graphene state.
///
/// Both scalars follow in closed form: the real part of the required sheet
/// impedance fixes `s`, the remaining reactance fixes `κ`.
pub fn calibrate(
    geometry: &UnitCellGeometry,
    materials: &StackMaterials,
    state: &GrapheneState,
    target: f64,
) -> Result<HomogenizationModel> {
    ensure_positive("target frequency", target)?;
    match solve_matching(geometry, materials, state, target)? {
        Ok(model) => Ok(model),
        Err(reason) => Err(Error::CalibrationFailed {
            target,
            reason,
            achievable: achievable_range(geometry, materials, state)?,
        }),
    }
}

fn solve_matching(
    geometry: &UnitCellGeometry,
    materials: &StackMaterials,
    state: &GrapheneState,
    target: f64,
) -> Result<std::result::Result<HomogenizationModel, String>> {
    let design = AbsorberDesign {
        geometry: *geometry,
        materials: *materials,
        model: HomogenizationModel::default(),
    };
    let backing = solve(&design.backing()?, &Excitation::normal(target))?;
    let y_backing = 1.0 / backing.zin_norm;
    let required = Z0 / (1.0 - y_backing);

    let sigma = sigma_intraband(target, state)?;
    let graphene = geometry.fill_ratio() / sigma.value;
    if graphene.re <= 0.0 {
        return Ok(Err(
            "graphene sheet is lossless; resistance cannot be matched".into(),
        ));
    }
    let sheet_scale = required.re / graphene.re;
    let reactance = sheet_scale * graphene.im - required.im;
    if reactance <= 0.0 {
        return Ok(Err("matching would need a negative grid capacitance".into()));
    }
    let omega = 2.0 * PI * target;
    let unit_c = grid_capacitance(geometry, 1.0, materials.grid_permittivity());
    let kappa = 1.0 / (omega * unit_c * reactance);
    let model = HomogenizationModel {
        kappa,
        sheet_scale,
        calibrated: true,
    };
    if model.within_sanity_bounds() {
        Ok(Ok(model))
    } else {
        Ok(Err(format!(
            "kappa = {kappa:.4} or sheet_scale = {sheet_scale:.4} outside sanity bounds \
             kappa in [{}, {}], sheet_scale in [{}, {}]",
            KAPPA_BOUNDS.0, KAPPA_BOUNDS.1, SHEET_SCALE_BOUNDS.0, SHEET_SCALE_BOUNDS.1
        )))
    }
}

/// Range of calibratable targets, scanned on a log grid spanning three
/// decades below the period-scale frequency `c/P`.
fn achievable_range(
    geometry: &UnitCellGeometry,
    materials: &StackMaterials,
    state: &GrapheneState,
) -> Result<Option<(f64, f64)>> {
    let top = crate::constants::C0 / geometry.period;
    let n = 600;
    let mut lo: Option<f64> = None;
    let mut hi: Option<f64> = None;
    for i in 0..=n {
        let f = top * 10f64.powf(-3.0 * (1.0 - i as f64 / n as f64));
        if let Ok(Ok(_)) = solve_matching(geometry, materials, state, f) {
            lo.get_or_insert(f);
            hi = Some(f);
        }
    }
    Ok(lo.zip(hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::C0;

    const THZ: f64 = 1e12;

    fn calibrated() -> AbsorberDesign {
        let d = AbsorberDesign::default();
        let model = calibrate(
            &d.geometry,
            &d.materials,
            &GrapheneState::default(),
            2.5 * THZ,
        )
        .unwrap();
        d.with_model(model)
    }

    #[test]
    fn perfect_conductor_limit_is_capacitive() {
        let g = UnitCellGeometry::default();
        let sigma = SheetConductivity {
            value: Complex64::new(1e12, -1e12),
            frequency: 2.5 * THZ,
        };
        let zs = patch_sheet_impedance(&g, &sigma, &HomogenizationModel::default(), 2.45).unwrap();
        let c = grid_capacitance(&g, 1.0, 2.45);
        let cap = -1.0 / (2.0 * PI * 2.5 * THZ * c);
        assert!(zs.re.abs() < 1e-9);
        assert!((zs.im - cap).abs() < 1e-9 * cap.abs());
    }

    #[test]
    fn graphene_term_depends_on_ratio_only() {
        let g = UnitCellGeometry::default();
        let g2 = UnitCellGeometry {
            period: 2.0 * g.period,
            patch: 2.0 * g.patch,
            ..g
        };
        assert!((g.fill_ratio() - g2.fill_ratio()).abs() < 1e-15);
    }

    #[test]
    fn closed_gap_rejected() {
        let g = UnitCellGeometry {
            patch: 14e-6,
            ..Default::default()
        };
        let sigma = sigma_intraband(2.5 * THZ, &GrapheneState::default()).unwrap();
        assert!(patch_sheet_impedance(&g, &sigma, &HomogenizationModel::default(), 2.45).is_err());
    }

    #[test]
    fn stack_structure() {
        let s = AbsorberDesign::default()
            .stack(&GrapheneState::default(), 2.5 * THZ)
            .unwrap();
        assert_eq!(s.sheet_count(), 1);
        assert_eq!(s.layer_count(), 3);
        assert_eq!(s.termination, Termination::Pec);
    }

    #[test]
    fn calibrated_absorber_matches_at_target() {
        let d = calibrated();
        let st = GrapheneState::default();
        let p = solve(
            &d.stack(&st, 2.5 * THZ).unwrap(),
            &Excitation::normal(2.5 * THZ),
        )
        .unwrap();
        assert!(p.absorptance > 0.99);
        assert!((p.zin_norm - 1.0).norm() < 1e-9);

        let off = solve(
            &d.stack(&st, 1.0 * THZ).unwrap(),
            &Excitation::normal(1.0 * THZ),
        )
        .unwrap();
        assert!(off.absorptance < 0.5);
        // Regression value of the calibrated model.
        assert!(
            (off.absorptance - 1.875e-4).abs() < 1e-6,
            "{}",
            off.absorptance
        );
    }

    #[test]
    fn resonance_condition_holds_at_peak() {
        let d = calibrated();
        let st = GrapheneState::default();
        let zs = d.sheet_impedance(&st, 2.5 * THZ).unwrap();
        let backing = solve(&d.backing().unwrap(), &Excitation::normal(2.5 * THZ)).unwrap();
        let total = Z0 / zs + 1.0 / backing.zin_norm;
        assert!((total - 1.0).norm() < 1e-12);
        // The backing is not exactly quarter-wave, so the matched sheet keeps
        // a small inductive reactance (regression value).
        assert!(zs.re > 0.0);
        assert!((zs.im - 67.55).abs() < 0.05, "Im Z_s = {}", zs.im);
    }

    #[test]
    fn calibrated_constants_regression() {
        let m = calibrated().model;
        assert!(m.calibrated);
        assert!((m.kappa - 0.10648).abs() < 1e-4, "{}", m.kappa);
        assert!((m.sheet_scale - 7.9018).abs() < 1e-3, "{}", m.sheet_scale);
    }

    #[test]
    fn calibrated_resonance_at_target() {
        let d = calibrated();
        let r = d
            .resonance(
                &GrapheneState::default(),
                1.0 * THZ,
                4.0 * THZ,
                &ResonanceSearch::default(),
                Schedule::default(),
            )
            .unwrap();
        assert!((r.frequency / (2.5 * THZ) - 1.0).abs() < 1e-3);
        assert!(r.absorptance > 0.99);
    }

    #[test]
    fn calibration_deterministic_and_idempotent() {
        let g = UnitCellGeometry::default();
        let m = StackMaterials::default();
        let st = GrapheneState::default();
        let a = calibrate(&g, &m, &st, 2.5 * THZ).unwrap();
        let b = calibrate(&g, &m, &st, 2.5 * THZ).unwrap();
        assert_eq!(a.kappa.to_bits(), b.kappa.to_bits());
        assert_eq!(a.sheet_scale.to_bits(), b.sheet_scale.to_bits());
    }

    #[test]
    fn calibration_target_shift_moves_kappa() {
        // Closed-form sweep of κ against target frequency: 2.4 → 0.1103,
        // 2.5 → 0.1065, 2.6 → 0.1127, 2.7 → 0.1275. κ rises for 2.6 THz.
        let g = UnitCellGeometry::default();
        let m = StackMaterials::default();
        let st = GrapheneState::default();
        let base = calibrate(&g, &m, &st, 2.5 * THZ).unwrap();
        let up = calibrate(&g, &m, &st, 2.6 * THZ).unwrap();
        assert!(up.kappa > base.kappa);
        assert!((up.kappa - 0.11266).abs() < 1e-4);
        let d = AbsorberDesign::default().with_model(up);
        let r = d
            .resonance(
                &st,
                1.0 * THZ,
                4.0 * THZ,
                &ResonanceSearch::default(),
                Schedule::default(),
            )
            .unwrap();
        assert!((r.frequency / (2.6 * THZ) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn impossible_target_reports_range() {
        let g = UnitCellGeometry::default();
        let err = calibrate(
            &g,
            &StackMaterials::default(),
            &GrapheneState::default(),
            0.5 * THZ,
        )
        .unwrap_err();
        match err {
            Error::CalibrationFailed {
                achievable: Some((lo, hi)),
                ..
            } => {
                assert!(lo < 2.5 * THZ && hi > 2.5 * THZ);
                assert!(lo > 0.5 * THZ);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn salisbury_resonance_found() {
        let f0 = 2.2 * THZ;
        let stack = LayerStack::new(Termination::Pec)
            .with_sheet(SheetBoundary::new(Complex64::new(1.0 / Z0, 0.0)))
            .with_layer(Layer::dielectric(C0 / f0 / 4.0, 1.0));
        let r = find_resonance(
            |_| Ok(stack.clone()),
            &Excitation::normal(f0),
            1.3 * THZ,
            3.1 * THZ,
            &ResonanceSearch::default(),
            Schedule::Sequential,
        )
        .unwrap();
        assert!((r.frequency / f0 - 1.0).abs() < 1e-3);
        assert!((r.absorptance - 1.0).abs() < 1e-9);
    }

    #[test]
    fn monotone_absorber_has_no_resonance() {
        let f0 = 5.0 * THZ;
        let stack = LayerStack::new(Termination::Pec)
            .with_sheet(SheetBoundary::new(Complex64::new(1.0 / Z0, 0.0)))
            .with_layer(Layer::dielectric(C0 / f0 / 4.0, 1.0));
        let err = find_resonance(
            |_| Ok(stack.clone()),
            &Excitation::normal(f0),
            1.0 * THZ,
            3.0 * THZ,
            &ResonanceSearch::default(),
            Schedule::Sequential,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NoResonanceInBand { .. }));
    }

    #[test]
    fn sheet_impedance_passive() {
        let d = calibrated();
        for mu in [0.3, 0.45, 0.6, 0.8] {
            let st = GrapheneState::default().with_mu_c_ev(mu).unwrap();
            for i in 0..=45 {
                let f = (0.5 + 0.1 * i as f64) * THZ;
                assert!(d.sheet_impedance(&st, f).unwrap().re >= 0.0);
            }
        }
    }

    #[test]
    fn single_strong_peak_per_mu() {
        let d = calibrated();
        for k in 0..=6 {
            let st = GrapheneState::default()
                .with_mu_c_ev(0.5 + 0.025 * k as f64)
                .unwrap();
            let pts = spectrum(
                |f| d.stack(&st, f),
                1.0 * THZ,
                4.0 * THZ,
                601,
                &Excitation::normal(THZ),
                Schedule::default(),
            )
            .unwrap();
            let a: Vec<f64> = pts.iter().map(|p| p.absorptance).collect();
            let strong = (1..a.len() - 1)
                .filter(|&i| a[i] > a[i - 1] && a[i] >= a[i + 1] && a[i] > 0.9)
                .count();
            assert_eq!(strong, 1, "mu step {k}");
        }
    }

    #[test]
    fn grid_refinement_stable() {
        let d = calibrated();
        let st = GrapheneState::default().with_mu_c_ev(0.6).unwrap();
        let exc = Excitation::normal(THZ);
        let coarse = spectrum(
            |f| d.stack(&st, f),
            1.0 * THZ,
            4.0 * THZ,
            151,
            &exc,
            Schedule::default(),
        )
        .unwrap();
        let fine = spectrum(
            |f| d.stack(&st, f),
            1.0 * THZ,
            4.0 * THZ,
            302,
            &exc,
            Schedule::default(),
        )
        .unwrap();
        let step = 3.0 * THZ / 150.0;
        let fc = coarse[crate::solver::peak_index(&coarse).unwrap()].frequency;
        let ff = fine[crate::solver::peak_index(&fine).unwrap()].frequency;
        assert!((fc - ff).abs() <= step);
    }
}
