//! Planar-array geometry, steering vectors, beam patterns and scattered
//! fields.
//!
//! Units sit in the `z = 0` plane on a `rows x cols` grid centred on the
//! origin. Unit `k = n * cols + m` (row `n`, column `m`, both 0-based) lies
//! at `x = (m - (cols-1)/2) d`, `y = (n - (rows-1)/2) d`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // inherent f64 methods win when std is linked
use num_traits::Float;

use crate::control::{ControlCircuitModel, Edge};
use crate::diode::UnitModel;
use crate::signal::{ComplexSignal, SampledSignal, SignalUnit};
use crate::{Complex64, Error, Result, Warning, SPEED_OF_LIGHT};

/// Warn when the aperture exceeds this fraction of the shortest baseband
/// wavelength.
const APERTURE_FRACTION: f64 = 0.1;
/// Warn when `fs/2` exceeds this fraction of the carrier.
const NARROWBAND_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Incidence {
    /// Point feed at `feed_pos`; amplitude falls off as 1/distance.
    #[default]
    Spherical,
    /// Plane wave arriving from direction `(theta, phi)` (radians).
    Plane { theta: f64, phi: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArrayScene {
    pub rows: usize,
    pub cols: usize,
    /// Unit spacing (m), equal in x and y.
    pub spacing: f64,
    pub feed_pos: [f64; 3],
    pub carrier_freq: f64,
    pub incidence: Incidence,
    pub unit: UnitModel,
}

/// Unit vector for direction `(theta, phi)`.
pub fn direction(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

impl ArrayScene {
    pub fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::Geometry("array needs at least one row and column".into()));
        }
        if !(self.spacing.is_finite() && self.spacing > 0.0) {
            return Err(Error::Geometry("spacing must be positive".into()));
        }
        if !(self.carrier_freq.is_finite() && self.carrier_freq > 0.0) {
            return Err(Error::Geometry("carrier frequency must be positive".into()));
        }
        if self.feed_pos.iter().any(|v| !v.is_finite()) {
            return Err(Error::Geometry("feed position must be finite".into()));
        }
        if let Incidence::Spherical = self.incidence {
            if self.feed_pos[2] == 0.0 {
                return Err(Error::Geometry("spherical feed lies in the array plane".into()));
            }
        }
        self.unit.validate(self.omega())
    }

    pub fn num_units(&self) -> usize {
        self.rows * self.cols
    }

    /// Carrier angular frequency.
    pub fn omega(&self) -> f64 {
        2.0 * PI * self.carrier_freq
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_freq
    }

    pub fn position(&self, k: usize) -> [f64; 3] {
        let (n, m) = (k / self.cols, k % self.cols);
        [
            (m as f64 - (self.cols as f64 - 1.0) / 2.0) * self.spacing,
            (n as f64 - (self.rows as f64 - 1.0) / 2.0) * self.spacing,
            0.0,
        ]
    }

    pub fn positions(&self) -> Vec<[f64; 3]> {
        (0..self.num_units()).map(|k| self.position(k)).collect()
    }

    /// Largest distance between two units (m).
    pub fn aperture(&self) -> f64 {
        let w = (self.cols as f64 - 1.0) * self.spacing;
        let h = (self.rows as f64 - 1.0) * self.spacing;
        (w * w + h * h).sqrt()
    }

    /// Incident delays `τ_k` (s) and amplitudes `w_k`.
    pub fn incident_delays_and_weights(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        let n = self.num_units();
        let mut tau = Vec::with_capacity(n);
        let mut w = Vec::with_capacity(n);
        match self.incidence {
            Incidence::Spherical => {
                for k in 0..n {
                    let r = self.position(k);
                    let d = [
                        r[0] - self.feed_pos[0],
                        r[1] - self.feed_pos[1],
                        r[2] - self.feed_pos[2],
                    ];
                    let dist = dot(d, d).sqrt();
                    if dist <= 1e-12 * self.spacing {
                        return Err(Error::Geometry(format!("feed coincides with unit {k}")));
                    }
                    tau.push(dist / SPEED_OF_LIGHT);
                    w.push(1.0 / dist);
                }
            }
            Incidence::Plane { theta, phi } => {
                let a = direction(theta, phi);
                for k in 0..n {
                    tau.push(-dot(a, self.position(k)) / SPEED_OF_LIGHT);
                    w.push(1.0);
                }
            }
        }
        Ok((tau, w))
    }

    /// `e^{j ω τ_k}` for the incident wave.
    pub fn steering_incident(&self) -> Result<Vec<Complex64>> {
        let omega = self.omega();
        let (tau, _) = self.incident_delays_and_weights()?;
        Ok(tau.iter().map(|t| Complex64::from_polar(1.0, omega * t)).collect())
    }

    /// `e^{j ω aᵀr_k / c}` towards `(theta, phi)`.
    pub fn steering_outgoing(&self, theta: f64, phi: f64) -> Vec<Complex64> {
        let a = direction(theta, phi);
        let k0 = self.omega() / SPEED_OF_LIGHT;
        (0..self.num_units())
            .map(|k| Complex64::from_polar(1.0, k0 * dot(a, self.position(k))))
            .collect()
    }

    /// `w_k e^{jωτ_k}` per unit: the incident term of the coherent sum.
    fn incident_terms(&self) -> Result<Vec<Complex64>> {
        let omega = self.omega();
        let (tau, w) = self.incident_delays_and_weights()?;
        Ok(tau
            .iter()
            .zip(&w)
            .map(|(t, w)| Complex64::from_polar(*w, omega * t))
            .collect())
    }
}

/// Per-unit ON/OFF bits, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    pub bits: Vec<bool>,
}

impl Codebook {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn all(n: usize, on: bool) -> Self {
        Self { bits: vec![on; n] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_on(&self, k: usize) -> bool {
        self.bits[k]
    }

    pub fn check_len(&self, units: usize) -> Result<()> {
        if self.bits.len() != units {
            return Err(Error::config(format!(
                "codebook has {} bits, array has {units} units",
                self.bits.len()
            )));
        }
        Ok(())
    }

    /// 1-bit quantization of the phase that would focus the array towards
    /// `(theta, phi)`; ties go to the ON state.
    pub fn design_for_direction(scene: &ArrayScene, theta: f64, phi: f64) -> Result<Self> {
        let omega = scene.omega();
        let (tau_i, _) = scene.incident_delays_and_weights()?;
        let a = direction(theta, phi);
        let (p1, p0) = (scene.unit.phi_on, scene.unit.phi_off);
        let bits = (0..scene.num_units())
            .map(|k| {
                let tau_r = dot(a, scene.position(k)) / SPEED_OF_LIGHT;
                let ideal = -omega * (tau_i[k] + tau_r);
                (ideal - p1).cos() >= (ideal - p0).cos()
            })
            .collect();
        Ok(Self { bits })
    }
}

/// `e^{jψ_k}` with `ψ_k` the ON or OFF phase.
pub fn beamforming_factor(codebook: &Codebook, unit: &UnitModel) -> Vec<Complex64> {
    let on = Complex64::from_polar(1.0, unit.phi_on);
    let off = Complex64::from_polar(1.0, unit.phi_off);
    codebook.bits.iter().map(|&b| if b { on } else { off }).collect()
}

/// Which DAC output feeds each unit (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wiring {
    pub input_of_unit: Vec<usize>,
    pub num_inputs: usize,
}

impl Wiring {
    pub fn new(input_of_unit: Vec<usize>, num_inputs: usize) -> Result<Self> {
        if num_inputs == 0 {
            return Err(Error::config("wiring needs at least one input"));
        }
        if let Some((k, &j)) = input_of_unit.iter().enumerate().find(|(_, &j)| j >= num_inputs) {
            return Err(Error::config(format!(
                "unit {k} is wired to input {j}, but there are only {num_inputs} inputs"
            )));
        }
        Ok(Self {
            input_of_unit,
            num_inputs,
        })
    }

    /// Every unit on input 0.
    pub fn uniform(units: usize) -> Self {
        Self {
            input_of_unit: vec![0; units],
            num_inputs: 1,
        }
    }

    /// Columns grouped `width` at a time, group `g` wired to
    /// `input_of_group[g]`.
    pub fn column_groups(
        rows: usize,
        cols: usize,
        width: usize,
        input_of_group: &[usize],
        num_inputs: usize,
    ) -> Result<Self> {
        if width == 0 {
            return Err(Error::config("column group width must be positive"));
        }
        let groups = cols.div_ceil(width);
        if input_of_group.len() != groups {
            return Err(Error::config(format!(
                "{groups} column groups but {} group assignments",
                input_of_group.len()
            )));
        }
        let map = (0..rows * cols)
            .map(|k| input_of_group[(k % cols) / width])
            .collect();
        Self::new(map, num_inputs)
    }

    pub fn check_len(&self, units: usize) -> Result<()> {
        if self.input_of_unit.len() != units {
            return Err(Error::config(format!(
                "wiring covers {} units, array has {units}",
                self.input_of_unit.len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Source {
    Trace(usize),
    Constant(f64),
}

/// Per-unit reflection magnitudes `A_k(t)`. Units sharing a DAC input share
/// one stored trace.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveformFactor {
    pub sample_rate: f64,
    len: usize,
    traces: Vec<Vec<f64>>,
    sources: Vec<Source>,
}

impl WaveformFactor {
    /// One explicit trace per unit.
    pub fn from_unit_traces(traces: Vec<Vec<f64>>, sample_rate: f64) -> Result<Self> {
        let len = traces.first().map_or(0, Vec::len);
        if let Some(k) = traces.iter().position(|t| t.len() != len) {
            return Err(Error::config(format!(
                "unit {k} trace has {} samples, expected {len}",
                traces[k].len()
            )));
        }
        let sources = (0..traces.len()).map(Source::Trace).collect();
        Ok(Self {
            sample_rate,
            len,
            traces,
            sources,
        })
    }

    pub fn num_units(&self) -> usize {
        self.sources.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn value(&self, k: usize, n: usize) -> f64 {
        match self.sources[k] {
            Source::Trace(s) => self.traces[s][n],
            Source::Constant(c) => c,
        }
    }

    pub fn unit_trace(&self, k: usize) -> Vec<f64> {
        match self.sources[k] {
            Source::Trace(s) => self.traces[s].clone(),
            Source::Constant(c) => vec![c; self.len],
        }
    }

    pub fn unit_signal(&self, k: usize) -> SampledSignal {
        SampledSignal {
            samples: self.unit_trace(k),
            sample_rate: self.sample_rate,
            unit: SignalUnit::Dimensionless,
        }
    }

    /// `Σ_k c_k A_k(n)` for every sample, grouped by shared trace.
    pub fn weighted_sum<T>(&self, coeffs: &[T]) -> Vec<T>
    where
        T: Copy + Default + core::ops::Add<Output = T> + core::ops::Mul<f64, Output = T>,
    {
        let mut per_trace = vec![T::default(); self.traces.len()];
        let mut constant = T::default();
        for (c, src) in coeffs.iter().zip(&self.sources) {
            match *src {
                Source::Trace(s) => per_trace[s] = per_trace[s] + *c,
                Source::Constant(a) => constant = constant + *c * a,
            }
        }
        (0..self.len)
            .map(|n| {
                per_trace
                    .iter()
                    .zip(&self.traces)
                    .fold(constant, |acc, (c, t)| acc + *c * t[n])
            })
            .collect()
    }
}

/// `A_k(t) = 𝓛{(h_cc * x_j)(t)}` for ON units (wired to input `j`), `α` for
/// OFF units.
///
/// `circuits` holds either one shared control circuit or one per input. The
/// circuit runs in steady state: the input is held at its end values outside
/// the record.
pub fn waveform_factor(
    codebook: &Codebook,
    wiring: &Wiring,
    unit: &UnitModel,
    circuits: &[ControlCircuitModel],
    inputs: &[SampledSignal],
    omega: f64,
) -> Result<WaveformFactor> {
    let units = codebook.len();
    wiring.check_len(units)?;
    if inputs.len() != wiring.num_inputs {
        return Err(Error::config(format!(
            "wiring expects {} inputs, got {}",
            wiring.num_inputs,
            inputs.len()
        )));
    }
    if circuits.len() != 1 && circuits.len() != wiring.num_inputs {
        return Err(Error::config(format!(
            "need 1 or {} control circuits, got {}",
            wiring.num_inputs,
            circuits.len()
        )));
    }
    let fs = inputs[0].sample_rate;
    let len = inputs[0].len();
    for x in inputs {
        if x.sample_rate != fs {
            return Err(Error::RateMismatch {
                expected: fs,
                found: x.sample_rate,
            });
        }
        if x.len() != len {
            return Err(Error::config(format!(
                "inputs differ in length ({} vs {len} samples)",
                x.len()
            )));
        }
    }

    // first ON unit per input, used for error reporting and to skip idle inputs
    let mut first_on = vec![None; wiring.num_inputs];
    for k in (0..units).filter(|&k| codebook.is_on(k)) {
        let j = wiring.input_of_unit[k];
        first_on[j].get_or_insert(k);
    }

    let mut traces = Vec::new();
    let mut trace_of_input = vec![None; wiring.num_inputs];
    for (j, x) in inputs.iter().enumerate() {
        let Some(k0) = first_on[j] else { continue };
        let cc = &circuits[if circuits.len() == 1 { 0 } else { j }];
        let v = cc.apply_response_with(x, Edge::Hold)?;
        let mut a = Vec::with_capacity(len);
        for (n, &vn) in v.samples.iter().enumerate() {
            if vn.is_nan() || vn < unit.diode.v_forward {
                return Err(Error::ModulationUnderflow {
                    unit: k0,
                    input: j,
                    sample: n,
                    value: vn,
                });
            }
            a.push(unit.magnitude_map(vn, omega)?);
        }
        trace_of_input[j] = Some(traces.len());
        traces.push(a);
    }
    let sources = (0..units)
        .map(|k| {
            if codebook.is_on(k) {
                Source::Trace(trace_of_input[wiring.input_of_unit[k]].unwrap())
            } else {
                Source::Constant(unit.alpha)
            }
        })
        .collect();
    Ok(WaveformFactor {
        sample_rate: fs,
        len,
        traces,
        sources,
    })
}

/// Angular sampling grid (radians), `theta` outer, `phi` inner.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleGrid {
    pub theta: Vec<f64>,
    pub phi: Vec<f64>,
    /// Integration weights per axis (1 for a single-point axis).
    pub d_theta: f64,
    pub d_phi: f64,
}

impl AngleGrid {
    pub fn new(theta: Vec<f64>, phi: Vec<f64>, d_theta: f64, d_phi: f64) -> Result<Self> {
        if theta.is_empty() || phi.is_empty() {
            return Err(Error::config("angle grid must be nonempty"));
        }
        Ok(Self {
            theta,
            phi,
            d_theta,
            d_phi,
        })
    }

    /// `theta` in `[0°, 90°]`, `phi` in `[0°, 360°)`.
    pub fn hemisphere(step_deg: f64) -> Self {
        let step = step_deg.to_radians();
        let nt = (90.0 / step_deg).round() as usize + 1;
        let np = (360.0 / step_deg).round() as usize;
        Self {
            theta: (0..nt).map(|i| i as f64 * step).collect(),
            phi: (0..np).map(|i| i as f64 * step).collect(),
            d_theta: step,
            d_phi: step,
        }
    }

    /// `theta` in `[0°, 90°]` at a fixed `phi`.
    pub fn theta_cut(phi: f64, step_deg: f64) -> Self {
        let step = step_deg.to_radians();
        let nt = (90.0 / step_deg).round() as usize + 1;
        Self {
            theta: (0..nt).map(|i| i as f64 * step).collect(),
            phi: vec![phi],
            d_theta: step,
            d_phi: 1.0,
        }
    }

    /// 1° grid: a `theta` cut along the array axis for linear arrays, the
    /// full hemisphere otherwise.
    pub fn default_for(scene: &ArrayScene) -> Self {
        match (scene.rows, scene.cols) {
            (1, c) if c > 1 => Self::theta_cut(0.0, 1.0),
            (r, 1) if r > 1 => Self::theta_cut(PI / 2.0, 1.0),
            _ => Self::hemisphere(1.0),
        }
    }

    pub fn len(&self) -> usize {
        self.theta.len() * self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(theta, phi)` of flat index `i`.
    pub fn point(&self, i: usize) -> (f64, f64) {
        let np = self.phi.len();
        (self.theta[i / np], self.phi[i % np])
    }

    pub fn cell_weight(&self) -> f64 {
        self.d_theta * self.d_phi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PatternForm {
    /// `|Σ_k ...|²`, the physical far-field power.
    #[default]
    Coherent,
    /// `Σ_k |...|²`, direction independent; kept for comparison only.
    LiteralPowerSum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BeamPattern {
    pub grid: AngleGrid,
    pub values: Vec<f64>,
    pub normalized: bool,
}

impl BeamPattern {
    /// Grid integral `Σ value · dθ dφ`.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.cell_weight()
    }

    /// `(theta, phi, value)` of the first maximum.
    pub fn argmax(&self) -> (f64, f64, f64) {
        let mut best = 0;
        for (i, &v) in self.values.iter().enumerate() {
            if v > self.values[best] {
                best = i;
            }
        }
        let (t, p) = self.grid.point(best);
        (t, p, self.values[best])
    }
}

pub fn beam_pattern(scene: &ArrayScene, codebook: &Codebook, grid: &AngleGrid) -> Result<BeamPattern> {
    beam_pattern_with(scene, codebook, grid, PatternForm::Coherent)
}

pub fn beam_pattern_with(
    scene: &ArrayScene,
    codebook: &Codebook,
    grid: &AngleGrid,
    form: PatternForm,
) -> Result<BeamPattern> {
    let psi = beamforming_factor(codebook, &scene.unit);
    pattern_from_phases(scene, &psi, grid, form)
}

/// Pattern for arbitrary per-unit phasors `e^{jψ_k}`.
pub fn pattern_from_phases(
    scene: &ArrayScene,
    psi: &[Complex64],
    grid: &AngleGrid,
    form: PatternForm,
) -> Result<BeamPattern> {
    if psi.len() != scene.num_units() {
        return Err(Error::config(format!(
            "{} phases for {} units",
            psi.len(),
            scene.num_units()
        )));
    }
    if grid.is_empty() {
        return Err(Error::config("angle grid must be nonempty"));
    }
    let inc = scene.incident_terms()?;
    let c: Vec<Complex64> = psi.iter().zip(&inc).map(|(p, i)| p * i).collect();
    let k0 = scene.omega() / SPEED_OF_LIGHT;
    let pos = scene.positions();
    let mut values = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        let (theta, phi) = grid.point(i);
        let a = direction(theta, phi);
        let v = match form {
            PatternForm::Coherent => c
                .iter()
                .zip(&pos)
                .map(|(ck, r)| ck * Complex64::from_polar(1.0, k0 * dot(a, *r)))
                .sum::<Complex64>()
                .norm_sqr(),
            PatternForm::LiteralPowerSum => c.iter().map(|ck| ck.norm_sqr()).sum(),
        };
        values.push(v);
    }
    let total = values.iter().sum::<f64>() * grid.cell_weight();
    let normalized = total > 0.0 && total.is_finite();
    if normalized {
        let beta = 1.0 / total;
        for v in &mut values {
            *v *= beta;
        }
    }
    Ok(BeamPattern {
        grid: grid.clone(),
        values,
        normalized,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatteredField {
    pub field: ComplexSignal,
    pub warnings: Vec<Warning>,
}

/// Complex envelope observed at range `range_m` towards `(theta, phi)`:
/// `(1/r) Σ_k e^{jωτ^r_k} e^{jψ_k} A_k(t) w_k e^{jωτ^i_k} E_i(t)`.
///
/// `incident = None` means a unit, unmodulated carrier.
pub fn scattered_field(
    scene: &ArrayScene,
    codebook: &Codebook,
    a: &WaveformFactor,
    theta: f64,
    phi: f64,
    range_m: f64,
    incident: Option<&ComplexSignal>,
) -> Result<ScatteredField> {
    let units = scene.num_units();
    codebook.check_len(units)?;
    if a.num_units() != units {
        return Err(Error::config(format!(
            "waveform factor has {} units, array has {units}",
            a.num_units()
        )));
    }
    if !(range_m.is_finite() && range_m > 0.0) {
        return Err(Error::Geometry("observation range must be positive".into()));
    }
    if let Some(e) = incident {
        if e.len() != a.len() {
            return Err(Error::config("incident envelope length differs from the inputs"));
        }
        if e.sample_rate != a.sample_rate {
            return Err(Error::RateMismatch {
                expected: a.sample_rate,
                found: e.sample_rate,
            });
        }
    }
    let psi = beamforming_factor(codebook, &scene.unit);
    let out = scene.steering_outgoing(theta, phi);
    let inc = scene.incident_terms()?;
    let coeffs: Vec<Complex64> = (0..units).map(|k| out[k] * psi[k] * inc[k] / range_m).collect();
    let mut samples = a.weighted_sum(&coeffs);
    if let Some(e) = incident {
        for (s, ei) in samples.iter_mut().zip(&e.samples) {
            *s *= ei;
        }
    }

    let mut warnings = Vec::new();
    let nyquist = a.sample_rate / 2.0;
    let wavelength = SPEED_OF_LIGHT / nyquist;
    if scene.aperture() > APERTURE_FRACTION * wavelength {
        warnings.push(Warning::ApertureVsBasebandWavelength {
            aperture_m: scene.aperture(),
            wavelength_m: wavelength,
        });
    }
    if nyquist > NARROWBAND_FRACTION * scene.carrier_freq {
        warnings.push(Warning::NotNarrowband {
            bandwidth_hz: nyquist,
            carrier_hz: scene.carrier_freq,
        });
    }
    Ok(ScatteredField {
        field: ComplexSignal {
            samples,
            sample_rate: a.sample_rate,
        },
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diode::angular;
    use approx::assert_abs_diff_eq;

    const F: f64 = 5.8e9;

    fn scene(rows: usize, cols: usize, incidence: Incidence) -> ArrayScene {
        ArrayScene {
            rows,
            cols,
            spacing: SPEED_OF_LIGHT / F / 2.0,
            feed_pos: [0.0, 0.0, 1.0],
            carrier_freq: F,
            incidence,
            unit: UnitModel::default(),
        }
    }

    fn normal() -> Incidence {
        Incidence::Plane { theta: 0.0, phi: 0.0 }
    }

    #[test]
    fn positions_row_major_centred() {
        let s = scene(2, 3, normal());
        let d = s.spacing;
        assert_eq!(s.position(0), [-d, -d / 2.0, 0.0]);
        assert_eq!(s.position(5), [d, d / 2.0, 0.0]);
    }

    #[test]
    fn incident_on_boresight_centre_unit() {
        let mut s = scene(1, 1, Incidence::Spherical);
        s.feed_pos = [0.0, 0.0, 0.37];
        let v = s.steering_incident().unwrap();
        let want = s.omega() * 0.37 / SPEED_OF_LIGHT;
        assert!((v[0] - Complex64::from_polar(1.0, want)).norm() < 1e-12);
    }

    #[test]
    fn incident_2x2_distances() {
        let s = scene(2, 2, Incidence::Spherical);
        let v = s.steering_incident().unwrap();
        let h = s.spacing / 2.0;
        let dist = (2.0 * h * h + 1.0).sqrt();
        let want = Complex64::from_polar(1.0, 2.0 * PI * F * dist / SPEED_OF_LIGHT);
        for z in v {
            assert!((z - want).norm() < 1e-9);
            assert_abs_diff_eq!(z.norm(), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn geometry_errors() {
        let mut s = scene(1, 1, Incidence::Spherical);
        s.feed_pos = [0.0, 0.0, 0.0];
        assert!(matches!(s.steering_incident(), Err(Error::Geometry(_))));
        assert!(matches!(s.validate(), Err(Error::Geometry(_))));
    }

    #[test]
    fn outgoing_boresight_and_conjugate_symmetry() {
        let s = scene(4, 4, normal());
        assert!(s.steering_outgoing(0.0, 1.2).iter().all(|z| (z - 1.0).norm() < 1e-15));
        let a = s.steering_outgoing(0.4, 0.3);
        let b = s.steering_outgoing(0.4, 0.3 + PI);
        // the grid is point-symmetric: unit k mirrors unit N-1-k
        let n = s.num_units();
        for k in 0..n {
            assert!((a[k] - b[k].conj()).norm() < 1e-12);
            assert!((a[k] - a[n - 1 - k].conj()).norm() < 1e-12);
        }
        let one = scene(1, 1, normal());
        assert_eq!(one.steering_outgoing(1.0, 2.0)[0], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn beamforming_factor_cases() {
        let u = UnitModel::default();
        let off = beamforming_factor(&Codebook::all(3, false), &u);
        assert!(off.iter().all(|z| *z == Complex64::from_polar(1.0, u.phi_off)));
        let alt = beamforming_factor(&Codebook::new(vec![true, false, true]), &u);
        assert!((alt[0] + alt[1]).norm() < 1e-15);
        assert_eq!(alt[0], alt[2]);
    }

    #[test]
    fn single_unit_pattern_is_flat() {
        let s = scene(1, 1, normal());
        let g = AngleGrid::hemisphere(5.0);
        let p = beam_pattern(&s, &Codebook::all(1, true), &g).unwrap();
        assert!(p.normalized);
        assert_abs_diff_eq!(p.integral(), 1.0, epsilon = 1e-12);
        let v0 = p.values[0];
        assert!(p.values.iter().all(|v| (v - v0).abs() < 1e-12 * v0));
    }

    #[test]
    fn sixteen_unit_steering_to_sixty_degrees() {
        let s = scene(1, 16, normal());
        let cb = Codebook::design_for_direction(&s, 60f64.to_radians(), 0.0).unwrap();
        let g = AngleGrid::default_for(&s);
        let p = beam_pattern(&s, &cb, &g).unwrap();
        let (t, _, _) = p.argmax();
        assert!((t.to_degrees() - 60.0).abs() <= 1.0 + 1e-9);
        // brute-force oracle at the argmax
        let k0 = 2.0 * PI / s.wavelength();
        let raw: Complex64 = (0..16)
            .map(|k| {
                let x = (k as f64 - 7.5) * s.spacing;
                let psi = if cb.bits[k] { PI } else { 0.0 };
                Complex64::from_polar(1.0, k0 * x * t.sin() + psi)
            })
            .sum();
        let raw_total: f64 = g
            .theta
            .iter()
            .map(|th| {
                (0..16)
                    .map(|k| {
                        let x = (k as f64 - 7.5) * s.spacing;
                        let psi = if cb.bits[k] { PI } else { 0.0 };
                        Complex64::from_polar(1.0, k0 * x * th.sin() + psi)
                    })
                    .sum::<Complex64>()
                    .norm_sqr()
            })
            .sum::<f64>()
            * g.cell_weight();
        assert_abs_diff_eq!(p.argmax().2, raw.norm_sqr() / raw_total, epsilon = 1e-9);
    }

    #[test]
    fn literal_power_sum_is_flat() {
        let s = scene(2, 4, Incidence::Spherical);
        let cb = Codebook::new(vec![true, false, true, true, false, false, true, false]);
        let g = AngleGrid::hemisphere(10.0);
        let p = beam_pattern_with(&s, &cb, &g, PatternForm::LiteralPowerSum).unwrap();
        let v0 = p.values[0];
        assert!(p.values.iter().all(|v| (v - v0).abs() < 1e-12 * v0));
    }

    #[test]
    fn column_group_wiring() {
        let w = Wiring::column_groups(2, 4, 2, &[1, 0], 2).unwrap();
        assert_eq!(w.input_of_unit, vec![1, 1, 0, 0, 1, 1, 0, 0]);
        assert!(Wiring::new(vec![0, 2], 2).is_err());
        assert!(Wiring::column_groups(2, 4, 2, &[0], 2).is_err());
    }

    fn flat(fs: f64) -> ControlCircuitModel {
        ControlCircuitModel::identity(fs, (0.0, fs / 4.0)).unwrap()
    }

    #[test]
    fn waveform_factor_cases() {
        let u = UnitModel::default();
        let w = angular(F);
        let fs = 1e5;
        let x = SampledSignal::volts(vec![1.0; 8], fs).unwrap();
        let off = waveform_factor(
            &Codebook::all(4, false),
            &Wiring::uniform(4),
            &u,
            &[flat(fs)],
            core::slice::from_ref(&x),
            w,
        )
        .unwrap();
        assert!((0..4).all(|k| off.unit_trace(k).iter().all(|&v| v == u.alpha)));

        let on = waveform_factor(&Codebook::all(4, true), &Wiring::uniform(4), &u, &[flat(fs)], &[x], w)
            .unwrap();
        let l_ref = u.magnitude_map(u.diode.v_ref, w).unwrap();
        assert!((0..4).all(|k| on.unit_trace(k).iter().all(|&v| v == l_ref)));

        let sq: Vec<f64> = (0..16).map(|n| if (n / 4) % 2 == 0 { 0.95 } else { 0.8 }).collect();
        let sq = SampledSignal::volts(sq, fs).unwrap();
        let a = waveform_factor(&Codebook::all(1, true), &Wiring::uniform(1), &u, &[flat(fs)], &[sq.clone()], w)
            .unwrap();
        for (n, &v) in sq.samples.iter().enumerate() {
            assert_eq!(a.value(0, n), u.magnitude_map(v, w).unwrap());
        }
    }

    #[test]
    fn underflow_names_sample() {
        let u = UnitModel::default();
        let fs = 1e5;
        let mut v = vec![1.0; 10];
        v[6] = 0.5;
        let x = SampledSignal::volts(v, fs).unwrap();
        let wiring = Wiring::new(vec![0, 0, 1], 2).unwrap();
        let cb = Codebook::new(vec![false, true, true]);
        let ok = SampledSignal::volts(vec![1.0; 10], fs).unwrap();
        let err = waveform_factor(&cb, &wiring, &u, &[flat(fs)], &[x.clone(), ok.clone()], angular(F)).unwrap_err();
        assert_eq!(
            err,
            Error::ModulationUnderflow {
                unit: 1,
                input: 0,
                sample: 6,
                value: 0.5
            }
        );
        // an input that only drives OFF units is not checked
        let cb = Codebook::new(vec![false, false, true]);
        assert!(waveform_factor(&cb, &wiring, &u, &[flat(fs)], &[x, ok], angular(F)).is_ok());
    }

    #[test]
    fn scattered_field_single_and_range() {
        let mut s = scene(1, 1, normal());
        s.unit.phi_on = 0.0;
        let a = WaveformFactor::from_unit_traces(vec![vec![0.3, 0.5, 0.9]], 1e5).unwrap();
        let cb = Codebook::all(1, true);
        let f = scattered_field(&s, &cb, &a, 0.2, 0.1, 1.0, None).unwrap();
        for (n, z) in f.field.samples.iter().enumerate() {
            assert!((z - a.value(0, n)).norm() < 1e-15);
        }
        let f2 = scattered_field(&s, &cb, &a, 0.2, 0.1, 2.0, None).unwrap();
        for (z1, z2) in f.field.samples.iter().zip(&f2.field.samples) {
            assert!((z1 - 2.0 * z2).norm() < 1e-15);
        }
    }

    #[test]
    fn scattered_field_two_unit_phasor_sum() {
        let mut s = scene(1, 2, Incidence::Spherical);
        s.feed_pos = [0.1, 0.0, 0.5];
        let a = WaveformFactor::from_unit_traces(vec![vec![0.2, 0.4, 0.6], vec![0.9, 0.7, 0.5]], 1e5).unwrap();
        let cb = Codebook::new(vec![true, false]);
        let (theta, phi, r) = (0.3, 0.7, 4.0);
        let f = scattered_field(&s, &cb, &a, theta, phi, r, None).unwrap();
        let k0 = 2.0 * PI * F / SPEED_OF_LIGHT;
        let ad = direction(theta, phi);
        for n in 0..3 {
            let mut want = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                let p = s.position(k);
                let dist = ((p[0] - 0.1).powi(2) + p[1].powi(2) + 0.25).sqrt();
                let psi = if cb.bits[k] { s.unit.phi_on } else { s.unit.phi_off };
                let ph = k0 * (ad[0] * p[0] + ad[1] * p[1]) + psi + k0 * dist;
                want += Complex64::from_polar(a.value(k, n) / dist, ph);
            }
            assert!((f.field.samples[n] - want / r).norm() < 1e-12);
        }
    }
}
