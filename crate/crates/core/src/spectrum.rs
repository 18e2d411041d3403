//! One-sided amplitude spectra and a simple peak picker.

use alloc::vec::Vec;

#[allow(unused_imports)] // inherent f64 methods win when std is linked
use num_traits::Float;

use crate::fft;
use crate::signal::SampledSignal;

/// Magnitudes more than this far below the strongest bin are treated as
/// rounding residue when estimating the floor.
pub const NUMERICAL_RANGE_DB: f64 = 240.0;

/// One-sided amplitude spectrum: a sinusoid of amplitude `A` on a bin
/// centre reads `A`, dc reads the mean.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub freq_hz: Vec<f64>,
    pub magnitude: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub bin: usize,
    pub freq_hz: f64,
    pub magnitude_db: f64,
    pub above_floor_db: f64,
}

fn to_db(m: f64) -> f64 {
    20.0 * m.max(1e-300).log10()
}

impl Spectrum {
    /// Rectangular-window FFT of the whole record.
    pub fn of(signal: &SampledSignal) -> Self {
        let n = signal.len();
        if n == 0 {
            return Self {
                freq_hz: Vec::new(),
                magnitude: Vec::new(),
            };
        }
        let x = fft::fft_real(&signal.samples, n);
        let half = n / 2;
        let df = signal.sample_rate / n as f64;
        let mut freq_hz = Vec::with_capacity(half + 1);
        let mut magnitude = Vec::with_capacity(half + 1);
        for (k, z) in x.iter().enumerate().take(half + 1) {
            let edge = k == 0 || (n.is_multiple_of(2) && k == half);
            let scale = if edge { 1.0 } else { 2.0 };
            freq_hz.push(k as f64 * df);
            magnitude.push(scale * z.norm() / n as f64);
        }
        Self { freq_hz, magnitude }
    }

    pub fn magnitude_db(&self) -> Vec<f64> {
        self.magnitude.iter().map(|&m| to_db(m)).collect()
    }

    /// Index of the bin closest to `freq_hz`.
    pub fn bin_of(&self, freq_hz: f64) -> usize {
        if self.freq_hz.len() < 2 {
            return 0;
        }
        let df = self.freq_hz[1] - self.freq_hz[0];
        ((freq_hz / df).round().max(0.0) as usize).min(self.freq_hz.len() - 1)
    }

    /// Median level of the non-dc bins (dB), but never below
    /// [`NUMERICAL_RANGE_DB`] under the strongest non-dc bin.
    pub fn noise_floor_db(&self) -> f64 {
        let mut db: Vec<f64> = self.magnitude_db().into_iter().skip(1).collect();
        if db.is_empty() {
            return f64::NEG_INFINITY;
        }
        let max = db.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        db.sort_by(|a, b| a.total_cmp(b));
        let mid = db.len() / 2;
        let median = if db.len().is_multiple_of(2) {
            0.5 * (db[mid - 1] + db[mid])
        } else {
            db[mid]
        };
        median.max(max - NUMERICAL_RANGE_DB)
    }

    /// Local maxima (excluding dc) standing at least `threshold_db` above
    /// [`Self::noise_floor_db`].
    pub fn peaks(&self, threshold_db: f64) -> Vec<Peak> {
        let db = self.magnitude_db();
        let floor = self.noise_floor_db();
        let n = db.len();
        let mut out = Vec::new();
        for k in 1..n {
            let left = db[k - 1];
            let right = if k + 1 < n { db[k + 1] } else { f64::NEG_INFINITY };
            if db[k] >= left && db[k] > right && db[k] - floor >= threshold_db {
                out.push(Peak {
                    bin: k,
                    freq_hz: self.freq_hz[k],
                    magnitude_db: db[k],
                    above_floor_db: db[k] - floor,
                });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn tone(f: f64, fs: f64, n: usize) -> SampledSignal {
        SampledSignal::dimensionless(
            (0..n).map(|i| 0.7 * (2.0 * PI * f * i as f64 / fs).sin() + 0.2).collect(),
            fs,
        )
        .unwrap()
    }

    #[test]
    fn amplitude_calibration() {
        let s = Spectrum::of(&tone(10e3, 1.28e6, 1 << 14));
        let k = s.bin_of(10e3);
        assert!((s.magnitude[k] - 0.7).abs() < 1e-12);
        assert!((s.magnitude[0] - 0.2).abs() < 1e-12);
    }

    #[test]
    fn single_tone_single_peak() {
        let s = Spectrum::of(&tone(10e3, 1.28e6, 1 << 14));
        let p = s.peaks(30.0);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].freq_hz, 10e3);
    }

    #[test]
    fn floor_is_clamped_to_numerical_range() {
        let s = Spectrum::of(&tone(5.0, 64.0, 64));
        let floor = s.noise_floor_db();
        let peak = 20.0 * 0.7f64.log10();
        assert!(floor >= peak - NUMERICAL_RANGE_DB - 1e-9);
    }
}
