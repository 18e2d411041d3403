//! Executes scenarios and writes their artifacts.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use awgris_core::array::{beam_pattern_with, scattered_field, waveform_factor, AngleGrid, ArrayScene};
use awgris_core::link::{dc_filter, modulation_efficiency, received_far_field, received_signal};
use awgris_core::signal::{SampledSignal, SignalUnit};
use awgris_core::spectrum::Spectrum;
use awgris_core::stft::{stft, BandAssignment, Spectrogram, StftPlan};
use awgris_core::synth::{
    design_multi_input, design_single_input_with, image_correlation, image_to_control, row_of_bin,
    spectrogram_image, symmetrize, SynthOptions,
};
use awgris_core::Warning;
use serde::Serialize;

use crate::config::{
    GridKind, InputSpec, ReceiverConfig, Scenario, SpectrumConfig, SynthTuning, SynthesisConfig,
};
use crate::csv::{read_series, write_columns, write_table};
use crate::error::{CliError, Result};
use crate::manifest::Manifest;
use crate::pgm;

pub const EFFECTIVE_CONFIG: &str = "effective_config.json";
pub const SUMMARY: &str = "summary.json";

/// What a subcommand asks of a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    /// Pattern only.
    BeamPattern,
    /// Everything the scenario describes.
    Simulate,
    SynthSingle,
    SynthMulti,
    SynthImage,
}

impl Task {
    fn accepts(self, s: &SynthesisConfig) -> bool {
        match self {
            Task::BeamPattern | Task::Simulate => true,
            Task::SynthSingle => matches!(s, SynthesisConfig::Single { .. }),
            Task::SynthMulti => matches!(s, SynthesisConfig::Multi { .. }),
            Task::SynthImage => matches!(s, SynthesisConfig::Image { .. }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Argmax {
    pub theta_deg: f64,
    pub phi_deg: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeakSummary {
    pub freq_hz: f64,
    pub magnitude_db: f64,
    pub above_floor_db: f64,
}

/// Contents of `summary.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub num_units: usize,
    /// Row-major ON/OFF bits.
    pub codebook: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pattern_argmax: Option<Argmax>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub num_samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulation_efficiency: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise_floor_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peaks: Option<Vec<PeakSummary>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image_correlation: Option<f64>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub out_dir: PathBuf,
    pub runs: Vec<RunSummary>,
    pub manifest: Manifest,
}

/// Load `config`, run the base scenario and each variant, and write the
/// manifest. `out` overrides the scenario's `output_dir`; `seed` its noise
/// seed.
pub fn run_scenario(config: &Path, out: Option<&Path>, seed: Option<u64>, task: Task) -> Result<RunReport> {
    let mut scenario = Scenario::load(config)?;
    if let Some(s) = seed {
        scenario.link.seed = s;
    }
    let out = match (out, &scenario.output_dir) {
        (Some(o), _) => o.to_path_buf(),
        (None, Some(o)) => o.clone(),
        (None, None) => {
            return Err(CliError::Usage(
                "no output directory: pass --out or set `output_dir`".into(),
            ))
        }
    };
    scenario.output_dir = None;
    run_loaded(&scenario, &out, task)
}

pub fn run_loaded(scenario: &Scenario, out: &Path, task: Task) -> Result<RunReport> {
    let runs = scenario.expand()?;
    for (variant, s) in &runs {
        if !task.accepts(&s.synthesis) {
            let what = variant.as_deref().unwrap_or("base scenario");
            return Err(CliError::Usage(format!(
                "{what}: synthesis kind does not match this subcommand"
            )));
        }
    }
    mkdir(out)?;
    let mut files = vec![write_json(&out.join(EFFECTIVE_CONFIG), scenario)?];
    let mut summaries = Vec::new();
    for (variant, s) in runs {
        let dir = match &variant {
            Some(name) => out.join(name),
            None => out.to_path_buf(),
        };
        mkdir(&dir)?;
        let (written, mut summary) = run_one(&s, &dir, task)?;
        summary.variant = variant;
        files.extend(written);
        files.push(write_json(&dir.join(SUMMARY), &summary)?);
        summaries.push(summary);
    }
    let mut manifest = Manifest::default();
    for f in &files {
        manifest.add(out, f)?;
    }
    manifest.write(out)?;
    Ok(RunReport {
        out_dir: out.to_path_buf(),
        runs: summaries,
        manifest,
    })
}

fn mkdir(p: &Path) -> Result<()> {
    fs::create_dir_all(p).map_err(|e| CliError::io(p, e))
}

pub(crate) fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<PathBuf> {
    let mut text = serde_json::to_string_pretty(value).map_err(CliError::from_json)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::io(path, e))?;
    Ok(path.to_path_buf())
}

fn degrees(r: f64) -> f64 {
    r * 180.0 / PI
}

fn times(len: usize, fs: f64) -> Vec<f64> {
    (0..len).map(|n| n as f64 / fs).collect()
}

fn write_signal(path: &Path, header: &str, s: &SampledSignal) -> Result<PathBuf> {
    let t = times(s.len(), s.sample_rate);
    write_columns(path, &["time_s", header], &[&t, &s.samples])?;
    Ok(path.to_path_buf())
}

pub fn pattern_grid(s: &Scenario, scene: &ArrayScene) -> Result<AngleGrid> {
    let step = s.pattern.step_deg;
    if !(step.is_finite() && step > 0.0) {
        return Err(CliError::Scenario(format!("pattern.step_deg must be positive, got {step}")));
    }
    Ok(match s.pattern.grid {
        GridKind::Auto if step == 1.0 => AngleGrid::default_for(scene),
        GridKind::Auto => match (scene.rows, scene.cols) {
            (1, c) if c > 1 => AngleGrid::theta_cut(0.0, step),
            (r, 1) if r > 1 => AngleGrid::theta_cut(PI / 2.0, step),
            _ => AngleGrid::hemisphere(step),
        },
        GridKind::Hemisphere => AngleGrid::hemisphere(step),
        GridKind::Cut { phi_deg } => AngleGrid::theta_cut(phi_deg * PI / 180.0, step),
    })
}

/// Render a list of input specs, each `len` samples long at `fs`.
pub fn render_inputs(specs: &[InputSpec], fs: f64, len: usize, unit: SignalUnit) -> Result<Vec<SampledSignal>> {
    specs
        .iter()
        .map(|spec| match spec {
            InputSpec::Waveform(w) => Ok(w.render(fs, len, unit)?),
            InputSpec::File { path } => {
                let series = read_series(path)?;
                if let Some(file_fs) = series.sample_rate() {
                    if (file_fs - fs).abs() > 1e-6 * fs {
                        return Err(CliError::config(
                            path,
                            format!("sampled at {file_fs} Hz, scenario runs at {fs} Hz"),
                        ));
                    }
                }
                if series.values.len() != len {
                    return Err(CliError::config(
                        path,
                        format!("{} samples, scenario needs {len}", series.values.len()),
                    ));
                }
                Ok(SampledSignal::new(series.values, fs, unit)?)
            }
        })
        .collect()
}

fn sum_signals(parts: Vec<SampledSignal>, fs: f64, len: usize) -> Result<SampledSignal> {
    let mut acc = vec![0.0; len];
    for p in parts {
        for (a, v) in acc.iter_mut().zip(&p.samples) {
            *a += v;
        }
    }
    Ok(SampledSignal::dimensionless(acc, fs)?)
}

fn options(t: &SynthTuning) -> SynthOptions {
    SynthOptions {
        margin: t.margin,
        reg_eps: t.reg_eps,
        check_bandwidth: t.check_bandwidth,
    }
}

fn need_len(s: &Scenario) -> Result<usize> {
    s.num_samples
        .ok_or_else(|| CliError::Scenario(format!("{}: num_samples is required", s.name)))
}

fn check_inputs(want: usize, got: usize, what: &str) -> Result<()> {
    if want != got {
        return Err(CliError::Scenario(format!(
            "wiring has {want} inputs but {what} provides {got}"
        )));
    }
    Ok(())
}

/// Everything the signal chain needs before forward simulation.
struct Drive {
    controls: Vec<SampledSignal>,
    target: Option<SampledSignal>,
    image: Option<(StftPlan, awgris_core::synth::GrayImage)>,
    warnings: Vec<Warning>,
}

fn drive(s: &Scenario, scene: &ArrayScene, num_inputs: usize) -> Result<Option<Drive>> {
    let fs = s.sample_rate;
    let unit = &scene.unit;
    let omega = scene.omega();
    let cc = s.control_circuit()?;
    let plain = |controls| Drive {
        controls,
        target: None,
        image: None,
        warnings: Vec::new(),
    };
    Ok(Some(match &s.synthesis {
        SynthesisConfig::None if s.inputs.is_empty() => {
            // no inputs: idle at 0 V, or pattern only when no record is asked for
            let Some(len) = s.num_samples else { return Ok(None) };
            plain(vec![SampledSignal::constant(0.0, len, fs, SignalUnit::Volt)?; num_inputs])
        }
        SynthesisConfig::None => {
            check_inputs(num_inputs, s.inputs.len(), "`inputs`")?;
            plain(render_inputs(&s.inputs, fs, need_len(s)?, SignalUnit::Volt)?)
        }
        SynthesisConfig::Single { target, options: t } => {
            check_inputs(num_inputs, 1, "single-input synthesis")?;
            let len = need_len(s)?;
            let y = sum_signals(render_inputs(target, fs, len, SignalUnit::Dimensionless)?, fs, len)?;
            let d = design_single_input_with(&y, unit, &cc, omega, &options(t))?;
            Drive {
                controls: vec![d.control],
                target: Some(y),
                image: None,
                warnings: Vec::new(),
            }
        }
        SynthesisConfig::Multi {
            target,
            dft_len,
            hop,
            band_edges,
            bands,
            options: t,
        } => {
            let len = need_len(s)?;
            let plan = StftPlan::hamming(*dft_len, *hop, fs)?;
            let assignment = match (band_edges, bands) {
                (Some(e), None) => BandAssignment::contiguous(e, *dft_len)?,
                (None, Some(b)) => BandAssignment::with_mirrors(b.clone(), *dft_len)?,
                _ => unreachable!("validated on load"),
            };
            check_inputs(num_inputs, assignment.len(), "the band assignment")?;
            let y = sum_signals(render_inputs(target, fs, len, SignalUnit::Dimensionless)?, fs, len)?;
            let d = design_multi_input(&y, &assignment, &plan, unit, &[cc], omega, &options(t))?;
            Drive {
                controls: d.inputs.into_iter().map(|i| i.control).collect(),
                target: Some(y),
                image: None,
                warnings: Vec::new(),
            }
        }
        SynthesisConfig::Image {
            path,
            dft_len,
            hop,
            options: t,
        } => {
            check_inputs(num_inputs, 1, "image synthesis")?;
            let img = pgm::read(path)?;
            let plan = StftPlan::hamming(*dft_len, *hop, fs)?;
            let d = image_to_control(&img, &plan, unit, &cc, omega, &options(t))?;
            Drive {
                controls: vec![d.design.control],
                target: Some(d.target),
                image: Some((plan, symmetrize(&img).0)),
                warnings: d.warnings,
            }
        }
    }))
}

fn run_one(s: &Scenario, dir: &Path, task: Task) -> Result<(Vec<PathBuf>, RunSummary)> {
    let mut files = Vec::new();
    let scene = s.array_scene();
    scene.validate()?;
    let cb = s.codebook(&scene)?;
    let mut summary = RunSummary {
        name: s.name.clone(),
        variant: None,
        num_units: scene.num_units(),
        codebook: cb.bits.iter().map(|&b| if b { '1' } else { '0' }).collect(),
        pattern_argmax: None,
        num_samples: None,
        modulation_efficiency: None,
        noise_floor_db: None,
        peaks: None,
        image_correlation: None,
        warnings: Vec::new(),
    };

    if s.pattern.enabled || task == Task::BeamPattern {
        let grid = pattern_grid(s, &scene)?;
        let p = beam_pattern_with(&scene, &cb, &grid, s.pattern.form.into())?;
        let n = grid.len();
        let (mut th, mut ph) = (Vec::with_capacity(n), Vec::with_capacity(n));
        for i in 0..n {
            let (t, f) = grid.point(i);
            th.push(degrees(t));
            ph.push(degrees(f));
        }
        let path = dir.join("pattern.csv");
        write_columns(&path, &["theta_deg", "phi_deg", "value"], &[&th, &ph, &p.values])?;
        files.push(path);
        let (t, f, v) = p.argmax();
        summary.pattern_argmax = Some(Argmax {
            theta_deg: degrees(t),
            phi_deg: degrees(f),
            value: v,
        });
    }
    if task == Task::BeamPattern {
        return Ok((files, summary));
    }

    let wiring = s.wiring()?;
    let Some(drive) = drive(s, &scene, wiring.num_inputs)? else {
        return Ok((files, summary));
    };
    let mut warnings = drive.warnings;
    for (j, x) in drive.controls.iter().enumerate() {
        files.push(write_signal(&dir.join(format!("control_{j}.csv")), "voltage_v", x)?);
    }
    if let Some(t) = &drive.target {
        files.push(write_signal(&dir.join("target.csv"), "value", t)?);
    }

    let cc = s.control_circuit()?;
    let a = waveform_factor(&cb, &wiring, &scene.unit, &[cc], &drive.controls, scene.omega())?;
    let received = match s.receiver {
        ReceiverConfig::Sum => received_signal(&a, &s.link)?,
        ReceiverConfig::FarField {
            theta_deg,
            phi_deg,
            range_m,
        } => {
            let f = scattered_field(
                &scene,
                &cb,
                &a,
                theta_deg * PI / 180.0,
                phi_deg * PI / 180.0,
                range_m,
                None,
            )?;
            warnings.extend(f.warnings);
            received_far_field(&f.field, &s.link)?
        }
    };
    files.push(write_signal(&dir.join("received.csv"), "value", &received)?);
    summary.num_samples = Some(received.len());
    summary.modulation_efficiency = Some(modulation_efficiency(&a, &cb)?);
    let ac = dc_filter(&received, &s.link)?;

    if let Some(cfg) = &s.spectrum {
        let (spec, written) = write_spectrum(dir, &ac, cfg)?;
        files.push(written);
        summary.noise_floor_db = Some(spec.noise_floor_db());
        summary.peaks = Some(peak_summary(&spec, cfg.threshold_db));
    }

    if let Some((plan, target_img)) = &drive.image {
        let analysed = stft(&ac, plan)?;
        let got = spectrogram_image(&analysed);
        let target = crop(target_img, got.width);
        let dc_row = BTreeSet::from([row_of_bin(0, plan.dft_len)]);
        summary.image_correlation = Some(image_correlation(&target, &got, &dc_row));
        for (name, img) in [("target_spectrogram.pgm", &target), ("received_spectrogram.pgm", &got)] {
            let p = dir.join(name);
            pgm::write(&p, img)?;
            files.push(p);
        }
        files.extend(write_spectrogram_tables(dir, &analysed)?);
    }

    summary.warnings = warnings.iter().map(|w| w.to_string()).collect();
    Ok((files, summary))
}

fn crop(img: &awgris_core::synth::GrayImage, width: usize) -> awgris_core::synth::GrayImage {
    if img.width <= width {
        return img.clone();
    }
    let pixels = img.pixels.chunks(img.width).flat_map(|r| r[..width].to_vec()).collect();
    awgris_core::synth::GrayImage {
        width,
        height: img.height,
        pixels,
    }
}

/// One-sided spectrum of `signal` after trimming; returns it and the CSV
/// path.
pub fn write_spectrum(dir: &Path, signal: &SampledSignal, cfg: &SpectrumConfig) -> Result<(Spectrum, PathBuf)> {
    let n = signal.len();
    if 2 * cfg.trim_samples >= n {
        return Err(CliError::Scenario(format!(
            "spectrum.trim_samples = {} leaves nothing of {n} samples",
            cfg.trim_samples
        )));
    }
    let kept = signal.samples[cfg.trim_samples..n - cfg.trim_samples].to_vec();
    let spec = Spectrum::of(&SampledSignal::new(kept, signal.sample_rate, signal.unit)?);
    let path = dir.join("spectrum.csv");
    let db = spec.magnitude_db();
    write_columns(
        &path,
        &["freq_hz", "magnitude", "magnitude_db"],
        &[&spec.freq_hz, &spec.magnitude, &db],
    )?;
    Ok((spec, path))
}

pub fn peak_summary(spec: &Spectrum, threshold_db: f64) -> Vec<PeakSummary> {
    spec.peaks(threshold_db)
        .into_iter()
        .map(|p| PeakSummary {
            freq_hz: p.freq_hz,
            magnitude_db: p.magnitude_db,
            above_floor_db: p.above_floor_db,
        })
        .collect()
}

/// `spectrogram.csv` (frame, bin, re, im) and `spectrogram_db.csv`
/// (frame, bin, magnitude_db).
fn write_spectrogram_tables(dir: &Path, s: &Spectrogram) -> Result<Vec<PathBuf>> {
    let (l, m) = (s.num_bins(), s.num_frames());
    let (mut frame, mut bin) = (Vec::with_capacity(l * m), Vec::with_capacity(l * m));
    let (mut re, mut im, mut db) = (Vec::new(), Vec::new(), Vec::new());
    for j in 0..m {
        for b in 0..l {
            let z = s.get(b, j);
            frame.push(j);
            bin.push(b);
            re.push(z.re);
            im.push(z.im);
            db.push(20.0 * z.norm().max(f64::MIN_POSITIVE).log10());
        }
    }
    let a = dir.join("spectrogram.csv");
    write_table(&a, &["frame", "bin", "re", "im"], &[&frame, &bin], &[&re, &im])?;
    let b = dir.join("spectrogram_db.csv");
    write_table(&b, &["frame", "bin", "magnitude_db"], &[&frame, &bin], &[&db])?;
    Ok(vec![a, b])
}
