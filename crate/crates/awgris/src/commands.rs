//! Subcommands that do not run a full scenario.

use std::fs;
use std::path::Path;

use awgris_core::diode::angular;
use awgris_core::signal::{SampledSignal, SignalUnit};
use serde::Serialize;

use crate::config::{Scenario, SpectrumConfig, UnitConfig};
use crate::csv::{read_series, write_columns};
use crate::error::{CliError, Result};
use crate::manifest::Manifest;
use crate::runner::{peak_summary, write_json, write_spectrum, PeakSummary};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub points: usize,
    /// Upper end of the sweep; defaults to the diode's reference bias.
    pub v_max: Option<f64>,
}

/// Bias sweep over `[0, v_max]`: `unit_rc.csv` with |Γ| and ∠Γ.
pub fn unit_rc(config: Option<&Path>, out: &Path, opts: SweepOptions) -> Result<Manifest> {
    let (unit, carrier) = match config {
        Some(p) => {
            let s = Scenario::load(p)?;
            (s.unit, s.scene.carrier_hz)
        }
        None => (UnitConfig::default(), 5.8e9),
    };
    if opts.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let model = unit.model();
    let omega = angular(carrier);
    model.validate(omega)?;
    let v_max = opts.v_max.unwrap_or(model.diode.v_ref);
    if !(v_max.is_finite() && v_max > 0.0) {
        return Err(CliError::Usage(format!("--v-max must be positive, got {v_max}")));
    }
    let n = opts.points;
    let mut v = Vec::with_capacity(n);
    let mut mag = Vec::with_capacity(n);
    let mut phase = Vec::with_capacity(n);
    for i in 0..n {
        let x = v_max * i as f64 / (n - 1) as f64;
        let rc = model.rc_state(x, omega);
        v.push(x);
        mag.push(rc.magnitude);
        phase.push(rc.phase.to_degrees());
    }
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let path = out.join("unit_rc.csv");
    write_columns(&path, &["v_ab_v", "magnitude", "phase_deg"], &[&v, &mag, &phase])?;
    let mut m = Manifest::default();
    m.add(out, &path)?;
    m.write(out)?;
    Ok(m)
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumSummary {
    pub input: String,
    pub sample_rate: f64,
    pub num_samples: usize,
    pub noise_floor_db: f64,
    pub peaks: Vec<PeakSummary>,
}

/// One-sided amplitude spectrum of a `time_s,value` CSV. The scenario in
/// `config`, if any, supplies the `spectrum` settings.
pub fn spectrum(input: &Path, config: Option<&Path>, out: &Path) -> Result<(Manifest, SpectrumSummary)> {
    let cfg = match config {
        Some(p) => Scenario::load(p)?.spectrum.unwrap_or_default(),
        None => SpectrumConfig::default(),
    };
    let series = read_series(input)?;
    let fs = series
        .sample_rate()
        .ok_or_else(|| CliError::config(input, "time column does not define a sample rate"))?;
    let signal = SampledSignal::new(series.values, fs, SignalUnit::Dimensionless)?;
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let (spec, csv) = write_spectrum(out, &signal, &cfg)?;
    let summary = SpectrumSummary {
        input: input.display().to_string(),
        sample_rate: fs,
        num_samples: signal.len(),
        noise_floor_db: spec.noise_floor_db(),
        peaks: peak_summary(&spec, cfg.threshold_db),
    };
    let json = write_json(&out.join(crate::runner::SUMMARY), &summary)?;
    let mut m = Manifest::default();
    m.add(out, &csv)?;
    m.add(out, &json)?;
    m.write(out)?;
    Ok((m, summary))
}
