//! Scenario files: a JSON document describing one simulation, plus optional
//! named variants expressed as JSON merge patches over the base document.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use awgris_core::array::{ArrayScene, Codebook, Incidence, PatternForm, Wiring};
use awgris_core::control::{ControlCircuitModel, DEFAULT_REG_EPS};
use awgris_core::diode::{DiodeModel, UnitModel};
use awgris_core::link::LinkConfig;
use awgris_core::synth::DEFAULT_MARGIN;
use awgris_core::waveform::Waveform;
use awgris_core::SPEED_OF_LIGHT;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub sample_rate: f64,
    /// Record length; image synthesis derives it from the image width.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num_samples: Option<usize>,
    #[serde(default)]
    pub unit: UnitConfig,
    pub scene: SceneConfig,
    pub beam: BeamConfig,
    #[serde(default)]
    pub wiring: WiringConfig,
    #[serde(default)]
    pub control_circuit: CircuitConfig,
    #[serde(default)]
    pub link: LinkConfig,
    #[serde(default)]
    pub receiver: ReceiverConfig,
    #[serde(default)]
    pub inputs: Vec<InputSpec>,
    #[serde(default)]
    pub synthesis: SynthesisConfig,
    #[serde(default)]
    pub pattern: PatternConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub variants: Vec<Variant>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Variant {
    pub name: String,
    /// Merge patch applied to the base scenario (arrays are replaced whole).
    pub patch: Value,
}

/// [`UnitModel`] with phases in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct UnitConfig {
    pub diode: DiodeModel,
    pub r_rf: f64,
    pub l_rf: f64,
    pub c_rf: f64,
    pub z0: f64,
    pub phi_on_deg: f64,
    pub phi_off_deg: f64,
    pub alpha: f64,
    pub phase_jitter_deg: f64,
}

impl Default for UnitConfig {
    fn default() -> Self {
        let u = UnitModel::default();
        Self {
            diode: u.diode,
            r_rf: u.r_rf,
            l_rf: u.l_rf,
            c_rf: u.c_rf,
            z0: u.z0,
            phi_on_deg: 180.0,
            phi_off_deg: 0.0,
            alpha: u.alpha,
            phase_jitter_deg: 5.0,
        }
    }
}

impl UnitConfig {
    pub fn model(&self) -> UnitModel {
        UnitModel {
            diode: self.diode,
            r_rf: self.r_rf,
            l_rf: self.l_rf,
            c_rf: self.c_rf,
            z0: self.z0,
            phi_on: deg(self.phi_on_deg),
            phi_off: deg(self.phi_off_deg),
            alpha: self.alpha,
            phase_jitter: deg(self.phase_jitter_deg),
        }
    }
}

fn deg(d: f64) -> f64 {
    d * PI / 180.0
}

fn default_carrier() -> f64 {
    5.8e9
}

fn default_feed() -> [f64; 3] {
    [0.0, 0.0, 0.5]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneConfig {
    pub rows: usize,
    pub cols: usize,
    #[serde(default = "default_carrier")]
    pub carrier_hz: f64,
    /// Defaults to half a carrier wavelength.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacing_m: Option<f64>,
    #[serde(default = "default_feed")]
    pub feed_pos_m: [f64; 3],
    #[serde(default)]
    pub incidence: IncidenceConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum IncidenceConfig {
    #[default]
    Spherical,
    Plane {
        #[serde(default)]
        theta_deg: f64,
        #[serde(default)]
        phi_deg: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Direction {
    pub theta_deg: f64,
    #[serde(default)]
    pub phi_deg: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamConfig {
    /// Explicit ON (1) / OFF (0) bits, row-major.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codebook: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_direction: Option<Direction>,
    /// ON phase assumed while designing the codebook; defaults to the
    /// unit's own `phi_on_deg`. Lets a scenario keep a codebook fixed while
    /// the hardware phase drifts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub design_phi_on_deg: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WiringConfig {
    /// Every unit on input 0.
    #[default]
    Uniform,
    /// Columns grouped `width` at a time; group `g` drives input
    /// `input_of_group[g]` (default: input `g`).
    ColumnGroups {
        width: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        input_of_group: Option<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        num_inputs: Option<usize>,
    },
    Explicit {
        input_of_unit: Vec<usize>,
        num_inputs: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CircuitConfig {
    #[default]
    Identity,
    SecondOrder {
        cutoff_hz: f64,
        damping: f64,
    },
    Taps {
        taps: Vec<f64>,
        #[serde(default)]
        origin: usize,
    },
    /// One tap per CSV row (last column).
    File {
        path: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ReceiverConfig {
    /// Plain sum of the unit magnitudes.
    #[default]
    Sum,
    /// Coherent field observed at a far-field point.
    FarField {
        theta_deg: f64,
        #[serde(default)]
        phi_deg: f64,
        #[serde(default = "default_range")]
        range_m: f64,
    },
}

fn default_range() -> f64 {
    10.0
}

/// A DAC input: a parametric waveform or a sampled signal read from CSV.
#[derive(Debug, Clone, PartialEq)]
pub enum InputSpec {
    Waveform(Waveform),
    File { path: PathBuf },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum FileInput {
    File { path: PathBuf },
}

impl Serialize for InputSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            InputSpec::Waveform(w) => w.serialize(s),
            InputSpec::File { path } => FileInput::File { path: path.clone() }.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for InputSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let v = Value::deserialize(d)?;
        if v.get("kind").and_then(Value::as_str) == Some("file") {
            let FileInput::File { path } = FileInput::deserialize(v).map_err(D::Error::custom)?;
            Ok(InputSpec::File { path })
        } else {
            Waveform::deserialize(v).map(InputSpec::Waveform).map_err(D::Error::custom)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SynthesisConfig {
    /// Drive the inputs listed under `inputs` directly.
    #[default]
    None,
    /// Design one input that radiates the sum of `target`.
    Single {
        target: Vec<InputSpec>,
        #[serde(default)]
        options: SynthTuning,
    },
    /// Split the sum of `target` across bands, one input per band. Give
    /// either `band_edges` (contiguous one-sided bands `[e_i, e_{i+1})`, the
    /// last running to Nyquist) or `bands` (explicit one-sided bin lists);
    /// mirror bins are added either way.
    Multi {
        target: Vec<InputSpec>,
        dft_len: usize,
        hop: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        band_edges: Option<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bands: Option<Vec<Vec<usize>>>,
        #[serde(default)]
        options: SynthTuning,
    },
    /// Treat a PGM image as a spectrogram magnitude (row per bin).
    Image {
        path: PathBuf,
        dft_len: usize,
        hop: usize,
        #[serde(default)]
        options: SynthTuning,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthTuning {
    pub margin: f64,
    pub reg_eps: f64,
    pub check_bandwidth: bool,
}

impl Default for SynthTuning {
    fn default() -> Self {
        Self {
            margin: DEFAULT_MARGIN,
            reg_eps: DEFAULT_REG_EPS,
            check_bandwidth: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PatternConfig {
    pub enabled: bool,
    pub step_deg: f64,
    /// `auto` picks a θ cut for line arrays and the hemisphere otherwise.
    pub grid: GridKind,
    pub form: FormConfig,
}

impl Default for PatternConfig {
    fn default() -> Self {
        Self {
            enabled: true,
            step_deg: 1.0,
            grid: GridKind::Auto,
            form: FormConfig::Coherent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridKind {
    Auto,
    Hemisphere,
    /// θ sweep at fixed φ (degrees).
    Cut { phi_deg: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormConfig {
    Coherent,
    LiteralPowerSum,
}

impl From<FormConfig> for PatternForm {
    fn from(f: FormConfig) -> Self {
        match f {
            FormConfig::Coherent => PatternForm::Coherent,
            FormConfig::LiteralPowerSum => PatternForm::LiteralPowerSum,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectrumConfig {
    /// Samples dropped at each end of the dc-removed received trace before
    /// the FFT.
    pub trim_samples: usize,
    /// Minimum peak height above the noise floor (dB).
    pub threshold_db: f64,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        Self {
            trim_samples: 0,
            threshold_db: 30.0,
        }
    }
}

impl Scenario {
    /// Parse a scenario file. Relative paths inside it are resolved against
    /// the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let value: Value = serde_json::from_str(&text).map_err(|e| CliError::config(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_value(value, path)?.resolve_paths(base)
    }

    pub fn from_value(value: Value, origin: &Path) -> Result<Self> {
        let s: Scenario = serde_json::from_value(value).map_err(|e| CliError::config(origin, e))?;
        s.validate().map_err(|msg| CliError::config(origin, msg))?;
        Ok(s)
    }

    fn validate(&self) -> std::result::Result<(), String> {
        if !(self.sample_rate.is_finite() && self.sample_rate > 0.0) {
            return Err("sample_rate: must be positive".into());
        }
        match (&self.beam.codebook, &self.beam.target_direction) {
            (Some(_), None) | (None, Some(_)) => {}
            _ => return Err("beam: set exactly one of `codebook` and `target_direction`".into()),
        }
        if self.beam.codebook.is_some() && self.beam.design_phi_on_deg.is_some() {
            return Err("beam.design_phi_on_deg: only meaningful with `target_direction`".into());
        }
        if let Some(cb) = &self.beam.codebook {
            if cb.iter().any(|&b| b > 1) {
                return Err("beam.codebook: entries must be 0 or 1".into());
            }
        }
        if let SynthesisConfig::Multi {
            band_edges, bands, ..
        } = &self.synthesis
        {
            if band_edges.is_some() == bands.is_some() {
                return Err("synthesis: set exactly one of `band_edges` and `bands`".into());
            }
        }
        let mut names: Vec<&str> = self.variants.iter().map(|v| v.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err("variants: names must be unique".into());
        }
        for v in &self.variants {
            if v.name.is_empty() || v.name.contains(['/', '\\']) || v.name.starts_with('.') {
                return Err(format!("variants.name: `{}` is not a plain directory name", v.name));
            }
            if v.patch.get("variants").is_some() {
                return Err(format!("variants.{}: variants cannot nest", v.name));
            }
        }
        Ok(())
    }

    /// Base scenario followed by each variant, variants stripped.
    pub fn expand(&self) -> Result<Vec<(Option<String>, Scenario)>> {
        let mut out = Vec::with_capacity(1 + self.variants.len());
        let mut base = self.clone();
        base.variants.clear();
        let base_value = serde_json::to_value(&base).map_err(CliError::from_json)?;
        out.push((None, base));
        for v in &self.variants {
            let mut value = base_value.clone();
            json_patch::merge(&mut value, &v.patch);
            let origin = PathBuf::from(format!("<variant {}>", v.name));
            let s = Scenario::from_value(value, &origin)?;
            out.push((Some(v.name.clone()), s));
        }
        Ok(out)
    }

    fn resolve_paths(mut self, base: &Path) -> Result<Self> {
        let abs = |p: &mut PathBuf| -> Result<()> {
            if p.is_relative() {
                *p = base.join(&*p);
            }
            *p = std::path::absolute(&*p).map_err(|e| CliError::io(p, e))?;
            if !p.exists() {
                return Err(CliError::Config {
                    path: p.clone(),
                    msg: "referenced file does not exist".into(),
                });
            }
            Ok(())
        };
        let inputs = |list: &mut Vec<InputSpec>| -> Result<()> {
            for i in list {
                if let InputSpec::File { path } = i {
                    abs(path)?;
                }
            }
            Ok(())
        };
        inputs(&mut self.inputs)?;
        match &mut self.synthesis {
            SynthesisConfig::None => {}
            SynthesisConfig::Single { target, .. } | SynthesisConfig::Multi { target, .. } => {
                inputs(target)?
            }
            SynthesisConfig::Image { path, .. } => abs(path)?,
        }
        if let CircuitConfig::File { path } = &mut self.control_circuit {
            abs(path)?;
        }
        if let Some(out) = &mut self.output_dir {
            if out.is_relative() {
                *out = base.join(&*out);
            }
            *out = std::path::absolute(&*out).map_err(|e| CliError::io(out, e))?;
        }
        for v in &mut self.variants {
            // paths inside patches are resolved when the variant is parsed
            resolve_patch_paths(&mut v.patch, base);
        }
        Ok(self)
    }

    pub fn unit_model(&self) -> UnitModel {
        self.unit.model()
    }

    pub fn array_scene(&self) -> ArrayScene {
        let sc = &self.scene;
        let incidence = match sc.incidence {
            IncidenceConfig::Spherical => Incidence::Spherical,
            IncidenceConfig::Plane { theta_deg, phi_deg } => Incidence::Plane {
                theta: deg(theta_deg),
                phi: deg(phi_deg),
            },
        };
        ArrayScene {
            rows: sc.rows,
            cols: sc.cols,
            spacing: sc.spacing_m.unwrap_or(SPEED_OF_LIGHT / sc.carrier_hz / 2.0),
            feed_pos: sc.feed_pos_m,
            carrier_freq: sc.carrier_hz,
            incidence,
            unit: self.unit_model(),
        }
    }

    pub fn codebook(&self, scene: &ArrayScene) -> Result<Codebook> {
        if let Some(bits) = &self.beam.codebook {
            let cb = Codebook::new(bits.iter().map(|&b| b == 1).collect());
            cb.check_len(scene.num_units())?;
            return Ok(cb);
        }
        let d = self.beam.target_direction.expect("validated");
        let mut design = scene.clone();
        if let Some(p) = self.beam.design_phi_on_deg {
            design.unit.phi_on = deg(p);
        }
        Ok(Codebook::design_for_direction(&design, deg(d.theta_deg), deg(d.phi_deg))?)
    }

    pub fn wiring(&self) -> Result<Wiring> {
        let (rows, cols) = (self.scene.rows, self.scene.cols);
        Ok(match &self.wiring {
            WiringConfig::Uniform => Wiring::uniform(rows * cols),
            WiringConfig::ColumnGroups {
                width,
                input_of_group,
                num_inputs,
            } => {
                let groups = if *width == 0 { 0 } else { cols.div_ceil(*width) };
                let map = input_of_group.clone().unwrap_or_else(|| (0..groups).collect());
                let n = num_inputs.unwrap_or_else(|| map.iter().max().map_or(0, |m| m + 1));
                Wiring::column_groups(rows, cols, *width, &map, n)?
            }
            WiringConfig::Explicit {
                input_of_unit,
                num_inputs,
            } => Wiring::new(input_of_unit.clone(), *num_inputs)?,
        })
    }

    pub fn control_circuit(&self) -> Result<ControlCircuitModel> {
        let fs = self.sample_rate;
        let passband = (0.0, 0.4 * fs);
        Ok(match &self.control_circuit {
            CircuitConfig::Identity => ControlCircuitModel::identity(fs, passband)?,
            CircuitConfig::SecondOrder { cutoff_hz, damping } => {
                ControlCircuitModel::second_order_lowpass(fs, *cutoff_hz, *damping, passband)?
            }
            CircuitConfig::Taps { taps, origin } => {
                ControlCircuitModel::with_origin(taps.clone(), *origin, fs, passband)?
            }
            CircuitConfig::File { path } => {
                let taps = crate::csv::read_column(path)?;
                ControlCircuitModel::new(taps, fs, passband)?
            }
        })
    }
}

/// Make relative `path` strings inside a variant patch absolute, so they
/// resolve like the paths of the base document.
fn resolve_patch_paths(v: &mut Value, base: &Path) {
    match v {
        Value::Object(map) => {
            for (k, item) in map.iter_mut() {
                if k == "path" {
                    if let Value::String(s) = item {
                        let p = Path::new(s.as_str());
                        if p.is_relative() {
                            if let Ok(a) = std::path::absolute(base.join(p)) {
                                *s = a.to_string_lossy().into_owned();
                            }
                        }
                    }
                } else {
                    resolve_patch_paths(item, base);
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|i| resolve_patch_paths(i, base)),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn minimal() -> Value {
        json!({
            "name": "t",
            "sample_rate": 1.0e6,
            "num_samples": 64,
            "scene": {"rows": 1, "cols": 4},
            "beam": {"codebook": [1, 0, 1, 0]}
        })
    }

    #[test]
    fn defaults_fill_in() {
        let s = Scenario::from_value(minimal(), Path::new("t.json")).unwrap();
        assert_eq!(s.link, LinkConfig::default());
        assert_eq!(s.wiring, WiringConfig::Uniform);
        let u = s.unit_model();
        assert!((u.phi_on - PI).abs() < 1e-15);
        let scene = s.array_scene();
        assert!((scene.spacing - SPEED_OF_LIGHT / 5.8e9 / 2.0).abs() < 1e-15);
    }

    #[test]
    fn codebook_and_direction_are_exclusive() {
        let mut v = minimal();
        v["beam"]["target_direction"] = json!({"theta_deg": 30.0});
        let err = Scenario::from_value(v, Path::new("t.json")).unwrap_err();
        assert!(err.to_string().contains("exactly one"), "{err}");
        let mut v = minimal();
        v["beam"] = json!({});
        assert!(Scenario::from_value(v, Path::new("t.json")).is_err());
    }

    #[test]
    fn unknown_field_names_the_field_and_file() {
        let mut v = minimal();
        v["scene"]["colz"] = json!(3);
        let err = Scenario::from_value(v, Path::new("cfg/x.json")).unwrap_err().to_string();
        assert!(err.contains("colz") && err.contains("cfg/x.json"), "{err}");
    }

    #[test]
    fn inputs_accept_waveforms_and_files() {
        let mut v = minimal();
        v["inputs"] = json!([
            {"kind": "sine", "freq_hz": 1e3, "amplitude": 0.1, "offset": 0.9},
            {"kind": "file", "path": "/tmp/x.csv"}
        ]);
        let s = Scenario::from_value(v, Path::new("t.json")).unwrap();
        assert!(matches!(s.inputs[0], InputSpec::Waveform(Waveform::Sine { .. })));
        assert_eq!(s.inputs[1], InputSpec::File { path: "/tmp/x.csv".into() });
        let back = serde_json::to_value(&s).unwrap();
        assert_eq!(Scenario::from_value(back, Path::new("t.json")).unwrap(), s);
    }

    #[test]
    fn variants_merge_over_base() {
        let mut v = minimal();
        v["variants"] = json!([
            {"name": "a", "patch": {"unit": {"phi_on_deg": 190.0}}},
            {"name": "b", "patch": {"beam": {"codebook": [0, 0, 0, 0]}}}
        ]);
        let s = Scenario::from_value(v, Path::new("t.json")).unwrap();
        let all = s.expand().unwrap();
        assert_eq!(all.len(), 3);
        assert!(all.iter().all(|(_, s)| s.variants.is_empty()));
        assert_eq!(all[1].1.unit.phi_on_deg, 190.0);
        assert_eq!(all[1].1.beam, all[0].1.beam);
        assert_eq!(all[2].1.beam.codebook, Some(vec![0, 0, 0, 0]));
    }

    #[test]
    fn column_groups_default_to_one_input_each() {
        let mut v = minimal();
        v["scene"] = json!({"rows": 2, "cols": 4});
        v["beam"] = json!({"codebook": vec![1; 8]});
        v["wiring"] = json!({"kind": "column_groups", "width": 2});
        let s = Scenario::from_value(v, Path::new("t.json")).unwrap();
        let w = s.wiring().unwrap();
        assert_eq!(w.num_inputs, 2);
        assert_eq!(w.input_of_unit, vec![0, 0, 1, 1, 0, 0, 1, 1]);
    }

    #[test]
    fn multi_synthesis_parses_band_edges() {
        let mut v = minimal();
        v["synthesis"] = json!({
            "kind": "multi",
            "target": [{"kind": "sine", "freq_hz": 1e4, "amplitude": 1.0}],
            "dft_len": 64, "hop": 32, "band_edges": [0, 4]
        });
        let s = Scenario::from_value(v, Path::new("t.json")).unwrap();
        match s.synthesis {
            SynthesisConfig::Multi {
                band_edges, options, ..
            } => {
                assert_eq!(band_edges, Some(vec![0, 4]));
                assert_eq!(options, SynthTuning::default());
            }
            other => panic!("{other:?}"),
        }
    }
}
