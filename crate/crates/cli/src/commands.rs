use std::path::{Path, PathBuf};

use graphene_hsf::homogenization::{calibrate, AbsorberDesign, ResonanceSearch};
use graphene_hsf::material::{bias_field, sigma_full_kubo, sigma_intraband, GrapheneState};
use graphene_hsf::quadrature::QuadratureSpec;
use graphene_hsf::reconfig::{sweep_mu, SweepRequest};
use graphene_hsf::retrieval::{retrieve_dispersion, Dispersion, TwoPortSample};
use graphene_hsf::solver::{frequency_grid, spectrum, Excitation, Polarization};
use graphene_hsf::supercell::{design_supercell, table2_rows, ReflectionOutcome};
use graphene_hsf::{Complex64, Error, Schedule};

use crate::config::RunConfig;
use crate::output::{sci, Table};
use crate::{Band, Command, Common, Pol};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
    Core(Error),
}

impl CliError {
    pub fn io(e: impl std::fmt::Display) -> Self {
        CliError::Io(e.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Core(e) => match e.root() {
                Error::InvalidInput(_) | Error::TargetBelowSpecular { .. } => 2,
                Error::CalibrationFailed { .. } => 4,
                _ => 3,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) | CliError::Io(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn dispatch(common: &Common, command: Command) -> Result<()> {
    let cfg = RunConfig::load(common.config.as_deref()).map_err(|e| CliError::Config(e.0))?;
    let out = common.out.as_deref();
    match command {
        Command::Conductivity { band, full_kubo } => {
            conductivity(&cfg, band, full_kubo)?.write(out)
        }
        Command::Spectrum { band, angle, pol } => {
            warn_if_uncalibrated(&cfg);
            spectrum_table(&cfg, band, angle, pol)?.write(out)
        }
        Command::Calibrate { target } => {
            let updated = calibrated_config(&cfg, target)?;
            eprintln!(
                "calibrated at {:e} Hz: kappa = {:.10}, sheet_scale = {:.10}",
                updated.model.target_f_hz, updated.model.kappa, updated.model.sheet_scale
            );
            let dest = out.or(common.config.as_deref());
            crate::output::emit(dest, updated.to_json().as_bytes())
        }
        Command::Design { theta_i, theta_r } => design(&cfg, theta_i, theta_r)?.write(out),
        Command::Table2 => table2(&cfg)?.write(out),
        Command::Reconfigure {
            mu_lo,
            mu_hi,
            steps,
            band_lo,
            band_hi,
        } => {
            let request = SweepRequest {
                mu_lo_ev: mu_lo.unwrap_or(cfg.sweep.mu_lo_ev),
                mu_hi_ev: mu_hi.unwrap_or(cfg.sweep.mu_hi_ev),
                steps: steps.unwrap_or(cfg.sweep.mu_steps),
                band: (
                    band_lo.unwrap_or(cfg.sweep.band_lo_hz),
                    band_hi.unwrap_or(cfg.sweep.band_hi_hz),
                ),
            };
            warn_if_uncalibrated(&cfg);
            reconfigure(&cfg, &request)?.write(out)
        }
        Command::Sparams { band } => {
            warn_if_uncalibrated(&cfg);
            sparams(&cfg, band)?.write(out)
        }
        Command::Retrieve { input } => {
            let samples = read_samples(&input)?;
            let (table, flagged) = retrieval_table(&samples)?;
            eprintln!("flagged points: {flagged}");
            table.write(out)
        }
        Command::Reproduce { out_dir } => reproduce(&cfg, &out_dir),
    }
}

fn warn_if_uncalibrated(cfg: &RunConfig) {
    if !cfg.model.calibrated {
        eprintln!(
            "warning: uncalibrated model (kappa = {}, sheet_scale = {}); run `hsf calibrate`",
            cfg.model.kappa, cfg.model.sheet_scale
        );
    }
}

fn grid(cfg: &RunConfig, band: Band) -> Result<Vec<f64>> {
    Ok(frequency_grid(
        band.f_lo.unwrap_or(cfg.sweep.f_lo_hz),
        band.f_hi.unwrap_or(cfg.sweep.f_hi_hz),
        band.points.unwrap_or(cfg.sweep.points),
    )?)
}

fn conductivity(cfg: &RunConfig, band: Band, full_kubo: bool) -> Result<Table> {
    let state = cfg.graphene_state()?;
    let freqs = grid(cfg, band)?;
    let quad = QuadratureSpec::default();
    let rows = Schedule::default().try_map(&freqs, |&f| {
        let intra = sigma_intraband(f, &state)?.value;
        let full = if full_kubo {
            Some(sigma_full_kubo(f, &state, &quad)?.value)
        } else {
            None
        };
        Ok((f, intra, full))
    })?;
    let mut table = if full_kubo {
        Table::new(&[
            "f_Hz",
            "re_sigma_S",
            "im_sigma_S",
            "re_sigma_kubo_S",
            "im_sigma_kubo_S",
        ])
    } else {
        Table::new(&["f_Hz", "re_sigma_S", "im_sigma_S"])
    };
    for (f, s, full) in rows {
        let mut row = vec![sci(f), sci(s.re), sci(s.im)];
        if let Some(k) = full {
            row.extend([sci(k.re), sci(k.im)]);
        }
        table.push(row);
    }
    Ok(table)
}

fn spectrum_table(cfg: &RunConfig, band: Band, angle: f64, pol: Pol) -> Result<Table> {
    let design = cfg.design();
    let state = cfg.graphene_state()?;
    let freqs = grid(cfg, band)?;
    let template = Excitation {
        angle_deg: angle,
        polarization: match pol {
            Pol::Te => Polarization::Te,
            Pol::Tm => Polarization::Tm,
        },
        ..Excitation::normal(freqs[0])
    };
    let points = spectrum(
        |f| design.stack(&state, f),
        freqs[0],
        freqs[freqs.len() - 1],
        freqs.len(),
        &template,
        Schedule::default(),
    )?;
    let mut table = Table::new(&["f_Hz", "reR", "imR", "A", "reZin", "imZin"]);
    for p in points {
        table.push(vec![
            sci(p.frequency),
            sci(p.r.re),
            sci(p.r.im),
            sci(p.absorptance),
            sci(p.zin_norm.re),
            sci(p.zin_norm.im),
        ]);
    }
    Ok(table)
}

fn calibrated_config(cfg: &RunConfig, target: Option<f64>) -> Result<RunConfig> {
    let target = target.unwrap_or(cfg.model.target_f_hz);
    let design = cfg.design();
    let model = calibrate(
        &design.geometry,
        &design.materials,
        &cfg.graphene_state()?,
        target,
    )?;
    let mut updated = cfg.clone();
    updated.model.kappa = model.kappa;
    updated.model.sheet_scale = model.sheet_scale;
    updated.model.calibrated = true;
    updated.model.target_f_hz = target;
    updated.model.calibrated_at =
        Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    Ok(updated)
}

fn wavelength(cfg: &RunConfig) -> f64 {
    graphene_hsf::constants::C0 / cfg.supercell.frequency_hz
}

fn outcome_cells(o: &ReflectionOutcome) -> [String; 2] {
    match o {
        ReflectionOutcome::Propagating { theta_r_deg } => [sci(*theta_r_deg), sci(o.sin_theta_r())],
        ReflectionOutcome::Evanescent { sin_theta_r } => {
            ["EVANESCENT".to_string(), sci(*sin_theta_r)]
        }
    }
}

fn design(cfg: &RunConfig, theta_i: f64, theta_r: f64) -> Result<Table> {
    let sc = &cfg.supercell;
    let d = design_supercell(theta_i, theta_r, wavelength(cfg), sc.pitch_m, sc.n_i)?;
    let mut table = Table::new(&[
        "theta_i_deg",
        "theta_r_target_deg",
        "N_c",
        "theta_r_deg_or_EVANESCENT",
        "sin_theta_r",
    ]);
    let [angle, sin] = outcome_cells(&d.outcome);
    table.push(vec![
        sci(theta_i),
        sci(theta_r),
        d.spec.cells.to_string(),
        angle,
        sin,
    ]);
    Ok(table)
}

fn table2(cfg: &RunConfig) -> Result<Table> {
    if cfg.supercell.n_i != 1.0 {
        return Err(CliError::Config(
            "table2 assumes incidence from air (supercell.n_i = 1)".into(),
        ));
    }
    let rows = table2_rows(wavelength(cfg), cfg.supercell.pitch_m)?;
    let mut table = Table::new(&[
        "theta_i_deg",
        "N_c",
        "theta_r_deg_or_EVANESCENT",
        "sin_theta_r",
    ]);
    for row in rows {
        let [angle, sin] = outcome_cells(&row.outcome);
        table.push(vec![
            sci(row.theta_i_deg),
            row.cells.to_string(),
            angle,
            sin,
        ]);
    }
    Ok(table)
}

fn reconfigure(cfg: &RunConfig, request: &SweepRequest) -> Result<Table> {
    let points = sweep_mu(
        &cfg.design(),
        &cfg.graphene_state()?,
        request,
        &ResonanceSearch::default(),
        Schedule::default(),
    )?;
    let mut table = Table::new(&["mu_c_eV", "f_res_Hz", "A_peak", "E0_V_per_m"]);
    for p in points {
        table.push(vec![sci(p.mu_c_ev), sci(p.f_res), sci(p.a_peak), sci(p.e0)]);
    }
    Ok(table)
}

fn slab_samples(
    design: &AbsorberDesign,
    state: &GrapheneState,
    freqs: &[f64],
) -> Result<Vec<TwoPortSample>> {
    Ok(Schedule::default().try_map(freqs, |&f| {
        TwoPortSample::from_stack(&design.ground_free_slab(state, f)?, f)
            .map_err(|e| e.at_frequency(f))
    })?)
}

const SPARAM_HEADER: [&str; 6] = ["f_Hz", "reS11", "imS11", "reS21", "imS21", "L_m"];

fn sparams(cfg: &RunConfig, band: Band) -> Result<Table> {
    let samples = slab_samples(&cfg.design(), &cfg.graphene_state()?, &grid(cfg, band)?)?;
    Ok(sparam_table(&samples))
}

fn sparam_table(samples: &[TwoPortSample]) -> Table {
    let mut table = Table::new(&SPARAM_HEADER);
    for s in samples {
        table.push(vec![
            sci(s.frequency),
            sci(s.s11.re),
            sci(s.s11.im),
            sci(s.s21.re),
            sci(s.s21.im),
            sci(s.thickness),
        ]);
    }
    table
}

fn read_samples(path: &Path) -> Result<Vec<TwoPortSample>> {
    let bad = |msg: String| CliError::Config(format!("{}: {msg}", path.display()));
    let mut reader = csv::Reader::from_path(path).map_err(|e| bad(e.to_string()))?;
    let header = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    if header.iter().map(str::trim).ne(SPARAM_HEADER) {
        return Err(bad(format!("expected header {}", SPARAM_HEADER.join(","))));
    }
    let mut samples = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| bad(e.to_string()))?;
        let v: Vec<f64> = record
            .iter()
            .map(|x| x.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| bad(format!("row {}: {e}", i + 1)))?;
        let sample = TwoPortSample::new(
            v[0],
            Complex64::new(v[1], v[2]),
            Complex64::new(v[3], v[4]),
            v[5],
        )
        .map_err(|e| bad(format!("row {}: {e}", i + 1)))?;
        samples.push(sample);
    }
    if samples.is_empty() {
        return Err(bad("no data rows".into()));
    }
    Ok(samples)
}

fn retrieval_table(samples: &[TwoPortSample]) -> Result<(Table, usize)> {
    let Dispersion { points, flagged } = retrieve_dispersion(samples)?;
    let mut table = Table::new(&[
        "f_Hz", "re_n", "im_n", "re_z", "im_z", "re_eps", "im_eps", "re_mu", "im_mu", "branch",
    ]);
    for p in points {
        table.push(vec![
            sci(p.frequency),
            sci(p.n.re),
            sci(p.n.im),
            sci(p.z.re),
            sci(p.z.im),
            sci(p.eps.re),
            sci(p.eps.im),
            sci(p.mu.re),
            sci(p.mu.im),
            p.branch.to_string(),
        ]);
    }
    Ok((table, flagged.len()))
}

fn reproduce(cfg: &RunConfig, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let file = |name: &str| -> PathBuf { dir.join(name) };

    let cfg = if cfg.model.calibrated {
        cfg.clone()
    } else {
        eprintln!("model is uncalibrated; calibrating in memory");
        let mut c = calibrated_config(cfg, None)?;
        c.model.calibrated_at = None;
        c
    };
    std::fs::write(file("config.json"), cfg.to_json()).map_err(CliError::io)?;

    let band = Band {
        f_lo: None,
        f_hi: None,
        points: None,
    };
    conductivity(&cfg, band, true)?.write(Some(&file("conductivity.csv")))?;
    spectrum_table(&cfg, band, 0.0, Pol::Te)?.write(Some(&file("spectrum.csv")))?;
    table2(&cfg)?.write(Some(&file("table2.csv")))?;

    let request = SweepRequest {
        mu_lo_ev: cfg.sweep.mu_lo_ev,
        mu_hi_ev: cfg.sweep.mu_hi_ev,
        steps: cfg.sweep.mu_steps,
        band: (cfg.sweep.band_lo_hz, cfg.sweep.band_hi_hz),
    };
    reconfigure(&cfg, &request)?.write(Some(&file("reconfigure.csv")))?;

    let state = cfg.graphene_state()?;
    let samples = slab_samples(&cfg.design(), &state, &grid(&cfg, band)?)?;
    sparam_table(&samples).write(Some(&file("sparams.csv")))?;
    let (table, flagged) = retrieval_table(&samples)?;
    table.write(Some(&file("retrieval.csv")))?;

    let design = cfg.design();
    let r = design.resonance(
        &state,
        cfg.sweep.f_lo_hz,
        cfg.sweep.f_hi_hz,
        &ResonanceSearch::default(),
        Schedule::default(),
    )?;
    eprintln!(
        "resonance: {:.6e} Hz, A_peak = {:.6}",
        r.frequency, r.absorptance
    );
    eprintln!(
        "bias field at {} eV: {:.4e} V/m",
        state.mu_c_ev(),
        bias_field(&state, &QuadratureSpec::default())?
    );
    eprintln!("retrieval: {} points, {flagged} flagged", table.len());
    eprintln!("wrote results to {}", dir.display());
    Ok(())
}
