//! Control-signal design: make the array's reflection magnitude follow a
//! target waveform.
//!
//! The single-input path maps the target affinely onto the achievable
//! magnitude span, inverts the bias-to-magnitude map sample by sample and
//! pre-compensates the control circuit with its regularized inverse. The
//! multi-input path splits a target spectrogram into disjoint bands and runs
//! each band through the single-input path with one shared scale, so the
//! array sum reproduces the whole target.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent f64 methods win when std is linked
use num_traits::Float;

use crate::control::{ControlCircuitModel, Edge, DEFAULT_REG_EPS};
use crate::diode::UnitModel;
use crate::signal::SampledSignal;
use crate::stft::{band_mask, istft, stft, BandAssignment, Spectrogram, StftPlan};
use crate::{fft, Complex64, Error, Result, Warning};

/// Default lower margin, as a fraction of the magnitude span.
pub const DEFAULT_MARGIN: f64 = 0.01;
/// Fraction of ac energy that must fall inside the control band.
pub const BANDWIDTH_ENERGY: f64 = 0.999;
/// Bins whose peak magnitude is within this factor of the spectrogram peak
/// must be covered by some band (-60 dB).
const COVERAGE_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthOptions {
    pub margin: f64,
    pub reg_eps: f64,
    /// Reject targets whose bandwidth exceeds the control circuit's reliable
    /// band.
    pub check_bandwidth: bool,
}

impl Default for SynthOptions {
    fn default() -> Self {
        Self {
            margin: DEFAULT_MARGIN,
            reg_eps: DEFAULT_REG_EPS,
            check_bandwidth: true,
        }
    }
}

/// Result of designing one input.
#[derive(Debug, Clone, PartialEq)]
pub struct InputDesign {
    /// DAC voltage `x(t)`.
    pub control: SampledSignal,
    /// Bias the diode should see, `𝓛⁻¹` of the mapped target.
    pub bias: SampledSignal,
    /// Target after the affine map onto the magnitude span.
    pub magnitude: SampledSignal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct MagnitudeSpan {
    lo: f64,
    hi: f64,
    min: f64,
    max: f64,
}

impl MagnitudeSpan {
    fn new(unit: &UnitModel, omega: f64, margin: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&margin) {
            return Err(Error::config(format!("margin {margin} must lie in [0, 1)")));
        }
        let (min, max) = unit.magnitude_range(omega)?;
        Ok(Self {
            lo: min + margin * (max - min),
            hi: max,
            min,
            max,
        })
    }

    fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

fn extent(x: &[f64]) -> (f64, f64) {
    x.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)))
}

/// Smallest frequency below which `BANDWIDTH_ENERGY` of the ac energy lies.
pub fn occupied_bandwidth(x: &SampledSignal) -> f64 {
    let n = x.len();
    if n < 2 {
        return 0.0;
    }
    let m = x.mean();
    let centred: Vec<f64> = x.samples.iter().map(|v| v - m).collect();
    let spec = fft::fft_real(&centred, n);
    let half = n / 2;
    let e: Vec<f64> = spec[..=half].iter().map(|z| z.norm_sqr()).collect();
    let total: f64 = e.iter().sum();
    if total == 0.0 {
        return 0.0;
    }
    let mut acc = 0.0;
    for (k, v) in e.iter().enumerate() {
        acc += v;
        if acc >= BANDWIDTH_ENERGY * total {
            return k as f64 * x.sample_rate / n as f64;
        }
    }
    x.sample_rate / 2.0
}

fn check_band(target: &SampledSignal, cc: &ControlCircuitModel, opts: &SynthOptions) -> Result<()> {
    if !opts.check_bandwidth {
        return Ok(());
    }
    let bw = occupied_bandwidth(target);
    let (lo, hi) = cc.reliable_band(opts.reg_eps);
    if bw > hi {
        return Err(Error::Infeasible {
            bandwidth_hz: bw,
            band_lo_hz: lo,
            band_hi_hz: hi,
        });
    }
    Ok(())
}

/// Inverse map + inverse filter for an already mapped magnitude trace.
fn realize(
    magnitude: Vec<f64>,
    sample_rate: f64,
    unit: &UnitModel,
    cc: &ControlCircuitModel,
    omega: f64,
    span: &MagnitudeSpan,
    opts: &SynthOptions,
) -> Result<InputDesign> {
    if cc.sample_rate != sample_rate {
        return Err(Error::RateMismatch {
            expected: cc.sample_rate,
            found: sample_rate,
        });
    }
    let bias = magnitude
        .iter()
        .map(|&m| unit.inverse_in_range(m.clamp(span.min, span.max), omega, span.min, span.max))
        .collect::<Result<Vec<f64>>>()?;
    let bias = SampledSignal::volts(bias, sample_rate)?;
    let inv = cc.inverse_filter(opts.reg_eps)?;
    let control = inv.apply_response_with(&bias, Edge::Hold)?;
    Ok(InputDesign {
        control,
        bias,
        magnitude: SampledSignal::dimensionless(magnitude, sample_rate)?,
    })
}

/// Map several traces onto the span with one shared gain, each centred on
/// the span midpoint. A single trace fills `[lo, hi]` exactly.
fn map_shared(traces: &[&[f64]], span: &MagnitudeSpan) -> Vec<Vec<f64>> {
    let extents: Vec<(f64, f64)> = traces.iter().map(|t| extent(t)).collect();
    let widest = extents.iter().map(|(a, b)| b - a).fold(0.0, f64::max);
    let gain = if widest > 0.0 { span.width() / widest } else { 0.0 };
    traces
        .iter()
        .zip(&extents)
        .map(|(t, (a, b))| {
            let centre = 0.5 * (a + b);
            t.iter()
                .map(|v| (span.mid() + gain * (v - centre)).clamp(span.lo, span.hi))
                .collect()
        })
        .collect()
}

/// DAC voltage whose forward simulation reproduces `target` up to an affine
/// change of scale.
pub fn design_single_input(
    target: &SampledSignal,
    unit: &UnitModel,
    cc: &ControlCircuitModel,
    carrier_omega: f64,
) -> Result<SampledSignal> {
    Ok(design_single_input_with(target, unit, cc, carrier_omega, &SynthOptions::default())?.control)
}

pub fn design_single_input_with(
    target: &SampledSignal,
    unit: &UnitModel,
    cc: &ControlCircuitModel,
    carrier_omega: f64,
    opts: &SynthOptions,
) -> Result<InputDesign> {
    unit.validate(carrier_omega)?;
    check_band(target, cc, opts)?;
    let span = MagnitudeSpan::new(unit, carrier_omega, opts.margin)?;
    let mapped = map_shared(&[&target.samples], &span).pop().unwrap();
    realize(mapped, target.sample_rate, unit, cc, carrier_omega, &span, opts)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiDesign {
    pub inputs: Vec<InputDesign>,
    /// Band-limited target components `y_k`; they sum to the full-band
    /// reconstruction.
    pub components: Vec<SampledSignal>,
}

/// Split `target` across the bands of `bands` and design one input per band.
///
/// `circuits` holds one shared control circuit or one per band.
pub fn design_multi_input(
    target: &SampledSignal,
    bands: &BandAssignment,
    plan: &StftPlan,
    unit: &UnitModel,
    circuits: &[ControlCircuitModel],
    carrier_omega: f64,
    opts: &SynthOptions,
) -> Result<MultiDesign> {
    let k = bands.len();
    if circuits.len() != 1 && circuits.len() != k {
        return Err(Error::config(format!(
            "need 1 or {k} control circuits, got {}",
            circuits.len()
        )));
    }
    if let Some(b) = bands.mirror_violation(plan.dft_len) {
        return Err(Error::config(format!(
            "bin {b} and its mirror {} are in different bands",
            plan.mirror(b)
        )));
    }
    unit.validate(carrier_omega)?;
    let s = stft(target, plan)?;
    check_coverage(&s, bands)?;
    let components = bands
        .bands()
        .iter()
        .map(|b| istft(&band_mask(&s, b)?))
        .collect::<Result<Vec<_>>>()?;
    let cc_of = |i: usize| &circuits[if circuits.len() == 1 { 0 } else { i }];
    for (i, c) in components.iter().enumerate() {
        check_band(c, cc_of(i), opts)?;
    }
    let span = MagnitudeSpan::new(unit, carrier_omega, opts.margin)?;
    let refs: Vec<&[f64]> = components.iter().map(|c| c.samples.as_slice()).collect();
    let mapped = map_shared(&refs, &span);
    let inputs = mapped
        .into_iter()
        .enumerate()
        .map(|(i, m)| realize(m, target.sample_rate, unit, cc_of(i), carrier_omega, &span, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiDesign { inputs, components })
}

fn check_coverage(s: &Spectrogram, bands: &BandAssignment) -> Result<()> {
    let l = s.num_bins();
    let mut peak_per_bin = vec![0.0f64; l];
    for j in 0..s.num_frames() {
        for (b, z) in s.frame(j).iter().enumerate() {
            peak_per_bin[b] = peak_per_bin[b].max(z.norm());
        }
    }
    let peak = peak_per_bin.iter().cloned().fold(0.0, f64::max);
    for (b, &p) in peak_per_bin.iter().enumerate() {
        if p > COVERAGE_FLOOR * peak && !bands.covers(b) {
            return Err(Error::config(format!(
                "bin {b} carries energy at {:.1} dB of peak but is in no band",
                20.0 * (p / peak).log10()
            )));
        }
    }
    Ok(())
}

/// Grayscale image, row-major, intensities in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<f64>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(Error::config(format!(
                "{} pixels for a {width}x{height} image",
                pixels.len()
            )));
        }
        if pixels.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::Domain("pixel intensities must be finite and non-negative"));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.width + col]
    }
}

/// Image row displaying bin `bin` of an `L`-bin spectrogram: positive
/// frequencies on top, dc at row `L/2`, Nyquist in row 0.
pub fn row_of_bin(bin: usize, dft_len: usize) -> usize {
    (dft_len / 2 + dft_len - bin) % dft_len
}

/// Mirror-symmetrize the rows (`r ↔ L - r`); warns when they differed.
pub fn symmetrize(image: &GrayImage) -> (GrayImage, Option<Warning>) {
    let l = image.height;
    let mut out = image.clone();
    let mut mismatch = 0.0f64;
    for r in 0..l {
        let m = (l - r) % l;
        for c in 0..image.width {
            let (a, b) = (image.get(r, c), image.get(m, c));
            mismatch = mismatch.max((a - b).abs());
            out.pixels[r * image.width + c] = 0.5 * (a + b);
        }
    }
    if mismatch > 0.0 {
        (out, Some(Warning::ImageSymmetrized { max_mismatch: mismatch }))
    } else {
        (image.clone(), None)
    }
}

/// Spectrogram with `|Y| = image` and zero phase about each frame's centre.
pub fn image_spectrogram(image: &GrayImage, plan: &StftPlan) -> Result<Spectrogram> {
    let l = plan.dft_len;
    if image.height != l {
        return Err(Error::config(format!(
            "image has {} rows, STFT length is {l}",
            image.height
        )));
    }
    let mut values = Vec::with_capacity(l * image.width);
    for j in 0..image.width {
        for b in 0..l {
            // centre of the frame is sample L/2: phase e^{-jπb}
            let sign = if b % 2 == 0 { 1.0 } else { -1.0 };
            values.push(Complex64::new(sign * image.get(row_of_bin(b, l), j), 0.0));
        }
    }
    Spectrogram::from_values(values, plan.clone())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImageDesign {
    pub design: InputDesign,
    /// Time-domain target reconstructed from the image.
    pub target: SampledSignal,
    pub warnings: Vec<Warning>,
}

/// Treat pixel intensity as spectrogram magnitude and design one input that
/// radiates it.
pub fn image_to_control(
    image: &GrayImage,
    plan: &StftPlan,
    unit: &UnitModel,
    cc: &ControlCircuitModel,
    carrier_omega: f64,
    opts: &SynthOptions,
) -> Result<ImageDesign> {
    let (img, warning) = symmetrize(image);
    let spec = image_spectrogram(&img, plan)?;
    let target = istft(&spec)?;
    let design = design_single_input_with(&target, unit, cc, carrier_omega, opts)?;
    Ok(ImageDesign {
        design,
        target,
        warnings: warning.into_iter().collect(),
    })
}

/// Magnitude spectrogram laid out like an input image (row per bin, see
/// [`row_of_bin`]).
pub fn spectrogram_image(s: &Spectrogram) -> GrayImage {
    let (l, m) = (s.num_bins(), s.num_frames());
    let mut pixels = vec![0.0; l * m];
    for j in 0..m {
        for b in 0..l {
            pixels[row_of_bin(b, l) * m + j] = s.get(b, j).norm();
        }
    }
    GrayImage {
        width: m,
        height: l,
        pixels,
    }
}

/// Correlation between two equally sized images, skipping the given rows.
pub fn image_correlation(a: &GrayImage, b: &GrayImage, skip_rows: &BTreeSet<usize>) -> f64 {
    let mut xa = Vec::new();
    let mut xb = Vec::new();
    let w = a.width.min(b.width);
    for r in (0..a.height.min(b.height)).filter(|r| !skip_rows.contains(r)) {
        for c in 0..w {
            xa.push(a.get(r, c));
            xb.push(b.get(r, c));
        }
    }
    crate::signal::normalized_correlation(&xa, &xb)
}
