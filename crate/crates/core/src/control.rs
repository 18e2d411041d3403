//! Bias network between a DAC output and the diode terminals, modelled as a
//! linear time-invariant FIR response, plus its regularized inverse.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // inherent f64 methods win when std is linked
use num_traits::Float;

use crate::fft;
use crate::signal::{SampledSignal, SignalUnit};
use crate::{Complex64, Error, Result};

/// Default Tikhonov weight relative to `max |H|²`.
pub const DEFAULT_REG_EPS: f64 = 1e-6;

/// Taps shorter than this are convolved directly.
const DIRECT_CONV_TAPS: usize = 32;

/// How samples outside the input record are treated when filtering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Edge {
    /// Zero initial (and final) state.
    #[default]
    Zero,
    /// The input is held at its first value before the record and its last
    /// value after it (steady state).
    Hold,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flatness {
    pub ripple_db: f64,
    pub min_gain_db: f64,
}

/// FIR model of a control circuit.
///
/// `impulse_response.samples[origin]` is the tap at zero delay; a causal
/// response has `origin == 0`. Regularized inverses are non-causal and carry
/// a centred origin.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlCircuitModel {
    pub impulse_response: SampledSignal,
    pub origin: usize,
    pub sample_rate: f64,
    /// `(f_lo, f_hi)` in Hz over which flatness is specified.
    pub passband: (f64, f64),
}

impl ControlCircuitModel {
    pub fn new(taps: Vec<f64>, sample_rate: f64, passband: (f64, f64)) -> Result<Self> {
        Self::with_origin(taps, 0, sample_rate, passband)
    }

    pub fn with_origin(
        taps: Vec<f64>,
        origin: usize,
        sample_rate: f64,
        passband: (f64, f64),
    ) -> Result<Self> {
        if taps.is_empty() {
            return Err(Error::config("control circuit needs at least one tap"));
        }
        if origin >= taps.len() {
            return Err(Error::config("control circuit origin outside the tap range"));
        }
        let impulse_response = SampledSignal::new(taps, sample_rate, SignalUnit::Dimensionless)?;
        let (lo, hi) = passband;
        if !(lo.is_finite() && hi.is_finite() && lo >= 0.0) {
            return Err(Error::config("passband edges must be finite and >= 0"));
        }
        if sample_rate <= 2.0 * hi {
            return Err(Error::config("control circuit sample rate must exceed 2·f_hi"));
        }
        Ok(Self {
            impulse_response,
            origin,
            sample_rate,
            passband,
        })
    }

    /// Flat, delay-free response.
    pub fn identity(sample_rate: f64, passband: (f64, f64)) -> Result<Self> {
        Self::new(vec![1.0], sample_rate, passband)
    }

    /// Sampled impulse response of a series-RLC second-order low-pass
    /// `ω0² / (s² + 2ζω0·s + ω0²)`, truncated once its envelope decays below
    /// 1e-12 of the peak and normalized to unit dc gain.
    pub fn second_order_lowpass(
        sample_rate: f64,
        cutoff_hz: f64,
        damping: f64,
        passband: (f64, f64),
    ) -> Result<Self> {
        if !(cutoff_hz > 0.0 && cutoff_hz.is_finite()) || !(damping > 0.0 && damping.is_finite()) {
            return Err(Error::config("low-pass cutoff and damping must be > 0"));
        }
        if !(sample_rate > 0.0 && sample_rate.is_finite()) {
            return Err(Error::Domain("sample rate must be positive and finite"));
        }
        let w0 = 2.0 * PI * cutoff_hz;
        let dt = 1.0 / sample_rate;
        // slowest decay rate of the impulse-response envelope
        let decay = if damping < 1.0 {
            damping * w0
        } else {
            w0 * (damping - (damping * damping - 1.0).sqrt())
        };
        let span = (28.0 / decay) / dt; // e^{-28} ≈ 7e-13
        let len = (span.ceil() as usize).clamp(8, 1 << 20);
        let h = |t: f64| -> f64 {
            if damping < 1.0 {
                let wd = w0 * (1.0 - damping * damping).sqrt();
                w0 * w0 / wd * (-damping * w0 * t).exp() * (wd * t).sin()
            } else if damping == 1.0 {
                w0 * w0 * t * (-w0 * t).exp()
            } else {
                let root = (damping * damping - 1.0).sqrt();
                let s1 = -w0 * (damping - root);
                let s2 = -w0 * (damping + root);
                w0 * w0 / (s1 - s2) * ((s1 * t).exp() - (s2 * t).exp())
            }
        };
        let mut taps: Vec<f64> = (0..len).map(|n| h(n as f64 * dt) * dt).collect();
        let dc: f64 = taps.iter().sum();
        if dc.abs() < f64::MIN_POSITIVE || !dc.is_finite() {
            return Err(Error::DegenerateFilter);
        }
        for t in &mut taps {
            *t /= dc;
        }
        Self::new(taps, sample_rate, passband)
    }

    pub fn taps(&self) -> &[f64] {
        &self.impulse_response.samples
    }

    /// Convolve `v` with the response, zero initial state, output truncated
    /// to `v.len()`.
    pub fn apply_response(&self, v: &SampledSignal) -> Result<SampledSignal> {
        self.apply_response_with(v, Edge::Zero)
    }

    pub fn apply_response_with(&self, v: &SampledSignal, edge: Edge) -> Result<SampledSignal> {
        if v.sample_rate != self.sample_rate {
            return Err(Error::RateMismatch {
                expected: self.sample_rate,
                found: v.sample_rate,
            });
        }
        Ok(v.with_samples(self.filter(&v.samples, edge)))
    }

    pub(crate) fn filter(&self, x: &[f64], edge: Edge) -> Vec<f64> {
        if x.is_empty() {
            return Vec::new();
        }
        let h = self.taps();
        let lead = h.len() - 1;
        let trail = self.origin;
        let (first, last) = match edge {
            Edge::Zero => (0.0, 0.0),
            Edge::Hold => (x[0], x[x.len() - 1]),
        };
        let mut padded = Vec::with_capacity(lead + x.len() + trail);
        padded.extend(core::iter::repeat_n(first, lead));
        padded.extend_from_slice(x);
        padded.extend(core::iter::repeat_n(last, trail));
        let full = if h.len() <= DIRECT_CONV_TAPS {
            fft::convolve_direct(&padded, h)
        } else {
            fft::convolve(&padded, h)
        };
        let start = lead + self.origin;
        full[start..start + x.len()].to_vec()
    }

    /// DTFT of the taps at `freq_hz`, referenced to the origin tap.
    pub fn frequency_response(&self, freq_hz: f64) -> Complex64 {
        let w = 2.0 * PI * freq_hz / self.sample_rate;
        self.taps()
            .iter()
            .enumerate()
            .map(|(n, &h)| {
                let k = n as f64 - self.origin as f64;
                Complex64::from_polar(h, -w * k)
            })
            .sum()
    }

    /// Default FFT grid length for [`Self::inverse_filter`].
    pub fn default_fft_len(&self) -> usize {
        (8 * self.taps().len()).max(1024).next_power_of_two()
    }

    fn grid_response(&self, n_fft: usize) -> Vec<Complex64> {
        let mut buf = vec![Complex64::new(0.0, 0.0); n_fft];
        for (m, &h) in self.taps().iter().enumerate() {
            let idx = (m as isize - self.origin as isize).rem_euclid(n_fft as isize) as usize;
            buf[idx].re += h;
        }
        fft::fft(&mut buf);
        buf
    }

    /// Tikhonov-regularized inverse `H*/(|H|² + reg_eps·max|H|²)` on the
    /// default FFT grid, rescaled so the cascade has unit gain at the
    /// response peak. A single-tap response is inverted exactly.
    pub fn inverse_filter(&self, reg_eps: f64) -> Result<Self> {
        self.inverse_filter_with_len(reg_eps, self.default_fft_len())
    }

    pub fn inverse_filter_with_len(&self, reg_eps: f64, n_fft: usize) -> Result<Self> {
        if !(reg_eps > 0.0 && reg_eps.is_finite()) {
            return Err(Error::config("reg_eps must be > 0"));
        }
        if n_fft < self.taps().len() {
            return Err(Error::config("inverse-filter FFT length shorter than the response"));
        }
        if let [h0] = self.taps() {
            if *h0 == 0.0 {
                return Err(Error::DegenerateFilter);
            }
            return Self::with_origin(vec![1.0 / h0], 0, self.sample_rate, self.passband);
        }
        let resp = self.grid_response(n_fft);
        let peak = resp.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max);
        if peak == 0.0 {
            return Err(Error::DegenerateFilter);
        }
        let floor = reg_eps * peak;
        let gain = (peak + floor) / peak;
        let mut g: Vec<Complex64> = resp
            .iter()
            .map(|h| h.conj() * gain / (h.norm_sqr() + floor))
            .collect();
        fft::ifft(&mut g);

        // unwrap the circular response into a centred FIR
        let half = n_fft / 2;
        let taps: Vec<f64> = (0..n_fft)
            .map(|i| g[(i + n_fft - half) % n_fft].re)
            .collect();
        let max = taps.iter().fold(0.0_f64, |m, t| m.max(t.abs()));
        let keep = |t: &f64| t.abs() > max * 1e-16;
        let first = taps.iter().position(keep).unwrap_or(half);
        let last = taps.iter().rposition(keep).unwrap_or(half);
        let (first, last) = (first.min(half), last.max(half));
        Self::with_origin(
            taps[first..=last].to_vec(),
            half - first,
            self.sample_rate,
            self.passband,
        )
    }

    /// Contiguous frequency interval, containing the response peak, on which
    /// `|H(f)| >= 10·√reg_eps·max|H|`. This is where the regularized inverse
    /// is accurate to 1%.
    pub fn reliable_band(&self, reg_eps: f64) -> (f64, f64) {
        let n_fft = self.default_fft_len();
        let resp = self.grid_response(n_fft);
        let half = n_fft / 2;
        let mags: Vec<f64> = resp[..=half].iter().map(|z| z.norm()).collect();
        let (peak_idx, peak) = mags
            .iter()
            .enumerate()
            .fold((0, 0.0), |acc, (i, &m)| if m > acc.1 { (i, m) } else { acc });
        let thresh = 10.0 * reg_eps.sqrt() * peak;
        let mut lo = peak_idx;
        while lo > 0 && mags[lo - 1] >= thresh {
            lo -= 1;
        }
        let mut hi = peak_idx;
        while hi < half && mags[hi + 1] >= thresh {
            hi += 1;
        }
        let df = self.sample_rate / n_fft as f64;
        (lo as f64 * df, hi as f64 * df)
    }

    /// Passband ripple (max − min of `|H|` in dB) and minimum gain.
    pub fn flatness_metric(&self) -> Result<Flatness> {
        let (lo, hi) = self.passband;
        if hi.is_nan() || lo.is_nan() || hi <= lo {
            return Err(Error::config("empty passband"));
        }
        const POINTS: usize = 512;
        let mut max_db = f64::NEG_INFINITY;
        let mut min_db = f64::INFINITY;
        for i in 0..=POINTS {
            let f = lo + (hi - lo) * i as f64 / POINTS as f64;
            let db = 20.0 * self.frequency_response(f).norm().log10();
            max_db = max_db.max(db);
            min_db = min_db.min(db);
        }
        Ok(Flatness {
            ripple_db: max_db - min_db,
            min_gain_db: min_db,
        })
    }
}
