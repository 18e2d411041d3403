//! Single-link received baseband, dc removal and modulation efficiency.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent f64 methods win when std is linked
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::array::{Codebook, WaveformFactor};
use crate::signal::{ComplexSignal, SampledSignal, SignalUnit};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct LinkConfig {
    pub beam_gain: f64,
    /// Scalar attenuation of the modulated component; multiplies `beam_gain`.
    pub mod_attenuation: f64,
    /// Standard deviation of the additive real Gaussian noise.
    pub noise_std: f64,
    pub seed: u64,
    /// dc-estimation window (s); `None` uses the whole record.
    pub dc_window: Option<f64>,
}

impl Default for LinkConfig {
    fn default() -> Self {
        Self {
            beam_gain: 1.0,
            mod_attenuation: 1.0,
            noise_std: 0.0,
            seed: 0,
            dc_window: None,
        }
    }
}

impl LinkConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.beam_gain.is_finite() && self.beam_gain > 0.0) {
            return Err(Error::config("beam_gain must be positive"));
        }
        if !(self.mod_attenuation.is_finite() && self.mod_attenuation > 0.0) {
            return Err(Error::config("mod_attenuation must be positive"));
        }
        if !(self.noise_std.is_finite() && self.noise_std >= 0.0) {
            return Err(Error::config("noise_std must be non-negative"));
        }
        if let Some(w) = self.dc_window {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::config(format!("dc_window must be positive, got {w}")));
            }
        }
        Ok(())
    }

    fn gain(&self) -> f64 {
        self.beam_gain * self.mod_attenuation
    }

    fn add_noise(&self, y: &mut [f64]) -> Result<()> {
        if self.noise_std == 0.0 {
            return Ok(());
        }
        let normal =
            Normal::new(0.0, self.noise_std).map_err(|_| Error::config("invalid noise_std"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for v in y {
            *v += normal.sample(&mut rng);
        }
        Ok(())
    }
}

/// `y(t) = G_b L_m Σ_k A_k(t) + n(t)`.
pub fn received_signal(a: &WaveformFactor, link: &LinkConfig) -> Result<SampledSignal> {
    link.validate()?;
    let g = link.gain();
    let mut y = a.weighted_sum(&alloc::vec![g; a.num_units()]);
    link.add_noise(&mut y)?;
    SampledSignal::new(y, a.sample_rate, SignalUnit::Dimensionless)
}

/// Coherently demodulated far-field envelope, scaled and with noise added.
pub fn received_far_field(field: &ComplexSignal, link: &LinkConfig) -> Result<SampledSignal> {
    link.validate()?;
    let g = link.gain();
    let mut y: Vec<f64> = field.coherent_projection().samples.iter().map(|v| g * v).collect();
    link.add_noise(&mut y)?;
    SampledSignal::new(y, field.sample_rate, SignalUnit::Dimensionless)
}

fn window_len(link: &LinkConfig, fs: f64, len: usize) -> usize {
    match link.dc_window {
        Some(w) => ((w * fs).round() as usize).clamp(1, len.max(1)),
        None => len.max(1),
    }
}

fn remove_window_means(x: &mut [f64], win: usize) {
    for chunk in x.chunks_mut(win) {
        let m = crate::signal::mean(chunk);
        for v in chunk {
            *v -= m;
        }
    }
}

/// Subtract the mean of each consecutive `dc_window` block (the last block
/// may be shorter).
pub fn dc_filter(y: &SampledSignal, link: &LinkConfig) -> Result<SampledSignal> {
    link.validate()?;
    let mut out = y.samples.clone();
    remove_window_means(&mut out, window_len(link, y.sample_rate, y.len()));
    Ok(y.with_samples(out))
}

/// `G_b L_m Σ_{k∈B1} A_k^ac(t)`, with ac parts taken per dc window.
pub fn modulated_component(a: &WaveformFactor, codebook: &Codebook, link: &LinkConfig) -> Result<SampledSignal> {
    link.validate()?;
    codebook.check_len(a.num_units())?;
    let g = link.gain();
    let coeffs: Vec<f64> = codebook.bits.iter().map(|&b| if b { g } else { 0.0 }).collect();
    let mut y = a.weighted_sum(&coeffs);
    remove_window_means(&mut y, window_len(link, a.sample_rate, a.len()));
    SampledSignal::new(y, a.sample_rate, SignalUnit::Dimensionless)
}

struct Energies {
    ac_sq: f64,
    on_sq: f64,
    off_sq: f64,
    ac_norm: f64,
    on_norm: f64,
    off_norm: f64,
}

fn energies(a: &WaveformFactor, codebook: &Codebook) -> Result<Energies> {
    codebook.check_len(a.num_units())?;
    let mut e = Energies {
        ac_sq: 0.0,
        on_sq: 0.0,
        off_sq: 0.0,
        ac_norm: 0.0,
        on_norm: 0.0,
        off_norm: 0.0,
    };
    for k in 0..a.num_units() {
        let t = a.unit_trace(k);
        let sq: f64 = t.iter().map(|v| v * v).sum();
        if codebook.is_on(k) {
            // a constant trace's mean can be an ulp off its value
            let ac: f64 = if t.iter().all(|&v| v == t[0]) {
                0.0
            } else {
                let m = crate::signal::mean(&t);
                t.iter().map(|v| (v - m) * (v - m)).sum()
            };
            e.ac_sq += ac;
            e.on_sq += sq;
            e.ac_norm += ac.sqrt();
            e.on_norm += sq.sqrt();
        } else {
            e.off_sq += sq;
            // α² per unit, as printed
            e.off_norm += t.first().map_or(0.0, |v| v * v);
        }
    }
    Ok(e)
}

/// Fraction of reflected energy in the ac part of the ON units:
/// `Σ_{B1} ‖A_k^ac‖² / (Σ_{B1} ‖A_k‖² + Σ_{B0} ‖A_k‖²)`, with the ac part
/// taken over the whole record. Zero when no unit is ON.
pub fn modulation_efficiency(a: &WaveformFactor, codebook: &Codebook) -> Result<f64> {
    if !codebook.bits.iter().any(|&b| b) || a.is_empty() {
        codebook.check_len(a.num_units())?;
        return Ok(0.0);
    }
    let e = energies(a, codebook)?;
    let den = e.on_sq + e.off_sq;
    Ok(if den > 0.0 { (e.ac_sq / den).clamp(0.0, 1.0) } else { 0.0 })
}

/// The same ratio with unsquared norms in the ON terms and a bare `α²` per
/// OFF unit. Not an energy ratio; kept for comparison.
pub fn modulation_efficiency_unsquared(a: &WaveformFactor, codebook: &Codebook) -> Result<f64> {
    if !codebook.bits.iter().any(|&b| b) || a.is_empty() {
        codebook.check_len(a.num_units())?;
        return Ok(0.0);
    }
    let e = energies(a, codebook)?;
    let den = e.on_norm + e.off_norm;
    Ok(if den > 0.0 { e.ac_norm / den } else { 0.0 })
}
