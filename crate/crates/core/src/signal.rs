//! Uniformly sampled signals.

use alloc::vec::Vec;

#[allow(unused_imports)] // inherent f64 methods win when std is linked
use num_traits::Float;

use crate::{Complex64, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SignalUnit {
    Volt,
    Dimensionless,
}

/// A real, uniformly sampled waveform.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    pub samples: Vec<f64>,
    pub sample_rate: f64,
    pub unit: SignalUnit,
}

impl SampledSignal {
    /// Validating constructor: rate must be positive and every sample finite.
    pub fn new(samples: Vec<f64>, sample_rate: f64, unit: SignalUnit) -> Result<Self> {
        if !(sample_rate.is_finite() && sample_rate > 0.0) {
            return Err(Error::Domain("sample rate must be positive and finite"));
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::Domain("signal samples must be finite"));
        }
        Ok(Self {
            samples,
            sample_rate,
            unit,
        })
    }

    pub fn volts(samples: Vec<f64>, sample_rate: f64) -> Result<Self> {
        Self::new(samples, sample_rate, SignalUnit::Volt)
    }

    pub fn dimensionless(samples: Vec<f64>, sample_rate: f64) -> Result<Self> {
        Self::new(samples, sample_rate, SignalUnit::Dimensionless)
    }

    pub fn constant(value: f64, len: usize, sample_rate: f64, unit: SignalUnit) -> Result<Self> {
        Self::new(alloc::vec![value; len], sample_rate, unit)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate
    }

    pub fn time(&self, index: usize) -> f64 {
        index as f64 / self.sample_rate
    }

    pub fn mean(&self) -> f64 {
        mean(&self.samples)
    }

    pub(crate) fn with_samples(&self, samples: Vec<f64>) -> Self {
        Self {
            samples,
            sample_rate: self.sample_rate,
            unit: self.unit,
        }
    }
}

/// Complex baseband envelope, e.g. a scattered field.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSignal {
    pub samples: Vec<Complex64>,
    pub sample_rate: f64,
}

impl ComplexSignal {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn magnitude(&self) -> SampledSignal {
        SampledSignal {
            samples: self.samples.iter().map(|z| z.norm()).collect(),
            sample_rate: self.sample_rate,
            unit: SignalUnit::Dimensionless,
        }
    }

    /// Coherent demodulation: project every sample onto the direction of the
    /// record's mean phasor. Linear in the field, so superposition survives.
    pub fn coherent_projection(&self) -> SampledSignal {
        let n = self.samples.len().max(1) as f64;
        let mean: Complex64 = self.samples.iter().sum::<Complex64>() / n;
        let rot = if mean.norm() > 0.0 {
            mean.conj() / mean.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        SampledSignal {
            samples: self.samples.iter().map(|z| (z * rot).re).collect(),
            sample_rate: self.sample_rate,
            unit: SignalUnit::Dimensionless,
        }
    }
}

pub(crate) fn mean(x: &[f64]) -> f64 {
    if x.is_empty() {
        0.0
    } else {
        x.iter().sum::<f64>() / x.len() as f64
    }
}

/// Normalized cross-correlation at zero lag after removing each signal's
/// mean. Returns 0 when either input is constant.
pub fn normalized_correlation(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().min(b.len());
    let (a, b) = (&a[..n], &b[..n]);
    let (ma, mb) = (mean(a), mean(b));
    let mut num = 0.0;
    let mut ea = 0.0;
    let mut eb = 0.0;
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        num += dx * dy;
        ea += dx * dx;
        eb += dy * dy;
    }
    if ea == 0.0 || eb == 0.0 {
        return 0.0;
    }
    num / (ea * eb).sqrt()
}
