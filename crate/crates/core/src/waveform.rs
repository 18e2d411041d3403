//! Test-signal generators used as DAC inputs and synthesis targets.

use core::f64::consts::PI;

#[allow(unused_imports)] // inherent f64 methods win when std is linked
use num_traits::Float;

use crate::signal::{SampledSignal, SignalUnit};
use crate::Result;

/// A parametric waveform, sampled on `t = n / fs`. Phases are in degrees.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)
)]
pub enum Waveform {
    Constant {
        value: f64,
    },
    Sine {
        freq_hz: f64,
        amplitude: f64,
        #[cfg_attr(feature = "serde", serde(default))]
        offset: f64,
        #[cfg_attr(feature = "serde", serde(default))]
        phase_deg: f64,
    },
    /// `offset + amplitude` for the first `duty` of each period, then
    /// `offset - amplitude`.
    Square {
        freq_hz: f64,
        amplitude: f64,
        #[cfg_attr(feature = "serde", serde(default))]
        offset: f64,
        #[cfg_attr(feature = "serde", serde(default))]
        phase_deg: f64,
        #[cfg_attr(feature = "serde", serde(default = "half"))]
        duty: f64,
    },
    GaussPulse {
        center_s: f64,
        sigma_s: f64,
        amplitude: f64,
        #[cfg_attr(feature = "serde", serde(default))]
        offset: f64,
    },
    /// `sin(πB(t-c)) / (πB(t-c))`; first zeros at `c ± 1/B`.
    Sinc {
        center_s: f64,
        bandwidth_hz: f64,
        amplitude: f64,
        #[cfg_attr(feature = "serde", serde(default))]
        offset: f64,
    },
    /// Linear sweep from `f0_hz` to `f1_hz` over the rendered record.
    Chirp {
        f0_hz: f64,
        f1_hz: f64,
        amplitude: f64,
        #[cfg_attr(feature = "serde", serde(default))]
        offset: f64,
        #[cfg_attr(feature = "serde", serde(default))]
        phase_deg: f64,
    },
}

#[cfg(feature = "serde")]
fn half() -> f64 {
    0.5
}

fn frac(x: f64) -> f64 {
    x - x.floor()
}

impl Waveform {
    /// Value at time `t` in a record lasting `duration` seconds.
    pub fn value(&self, t: f64, duration: f64) -> f64 {
        match *self {
            Waveform::Constant { value } => value,
            Waveform::Sine {
                freq_hz,
                amplitude,
                offset,
                phase_deg,
            } => offset + amplitude * (2.0 * PI * freq_hz * t + phase_deg.to_radians()).sin(),
            Waveform::Square {
                freq_hz,
                amplitude,
                offset,
                phase_deg,
                duty,
            } => {
                let p = frac(freq_hz * t + phase_deg / 360.0);
                if p < duty {
                    offset + amplitude
                } else {
                    offset - amplitude
                }
            }
            Waveform::GaussPulse {
                center_s,
                sigma_s,
                amplitude,
                offset,
            } => {
                let u = (t - center_s) / sigma_s;
                offset + amplitude * (-0.5 * u * u).exp()
            }
            Waveform::Sinc {
                center_s,
                bandwidth_hz,
                amplitude,
                offset,
            } => {
                let x = PI * bandwidth_hz * (t - center_s);
                let s = if x == 0.0 { 1.0 } else { x.sin() / x };
                offset + amplitude * s
            }
            Waveform::Chirp {
                f0_hz,
                f1_hz,
                amplitude,
                offset,
                phase_deg,
            } => {
                let k = if duration > 0.0 { (f1_hz - f0_hz) / duration } else { 0.0 };
                let ph = 2.0 * PI * (f0_hz * t + 0.5 * k * t * t) + phase_deg.to_radians();
                offset + amplitude * ph.sin()
            }
        }
    }

    /// Highest frequency the waveform is designed to occupy (Hz); pulses
    /// report their effective width.
    pub fn nominal_bandwidth(&self) -> f64 {
        match *self {
            Waveform::Constant { .. } => 0.0,
            Waveform::Sine { freq_hz, .. } | Waveform::Square { freq_hz, .. } => freq_hz.abs(),
            Waveform::GaussPulse { sigma_s, .. } => 3.0 / (2.0 * PI * sigma_s.abs()),
            Waveform::Sinc { bandwidth_hz, .. } => bandwidth_hz.abs() / 2.0,
            Waveform::Chirp { f0_hz, f1_hz, .. } => f0_hz.abs().max(f1_hz.abs()),
        }
    }

    pub fn render(&self, sample_rate: f64, len: usize, unit: SignalUnit) -> Result<SampledSignal> {
        let duration = len as f64 / sample_rate;
        let samples = (0..len)
            .map(|n| self.value(n as f64 / sample_rate, duration))
            .collect();
        SampledSignal::new(samples, sample_rate, unit)
    }
}
