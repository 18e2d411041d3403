//! Short-time Fourier analysis with a unitary DFT, and weighted overlap-add
//! synthesis.
//!
//! Frames follow a generalized Hankel layout: frame `j` holds samples
//! `y[jH .. jH + L]`, zero-padded past the end of the record, multiplied by
//! the window and transformed with the unitary DFT. Bin indices are 0-based;
//! bin `l` and bin `L - l` are conjugate mirrors for real signals.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // inherent f64 methods win when std is linked
use num_traits::Float;

use crate::fft;
use crate::signal::{SampledSignal, SignalUnit};
use crate::{Complex64, Error, Result};

/// Hamming coefficient of the analysis window.
pub const HAMMING_A0: f64 = 25.0 / 46.0;

/// Dense `L x L` unitary DFT matrix, row-major: entry `(p, q)` is
/// `exp(-j 2π p q / L) / sqrt(L)`.
pub fn dft_matrix(len: usize) -> Result<Vec<Complex64>> {
    if len == 0 {
        return Err(Error::Domain("DFT length must be at least 1"));
    }
    let scale = 1.0 / (len as f64).sqrt();
    let mut m = Vec::with_capacity(len * len);
    for p in 0..len {
        for q in 0..len {
            // reduce the exponent first so large L keeps full precision
            let k = (p * q) % len;
            let ang = -2.0 * PI * k as f64 / len as f64;
            m.push(Complex64::from_polar(scale, ang));
        }
    }
    Ok(m)
}

/// Periodic Hamming window of even length `L`, centred on index `L/2`:
/// `w[i] = a0 + (1 - a0) cos(2π (i - L/2) / L)`.
pub fn hamming_window(len: usize) -> Result<Vec<f64>> {
    if len == 0 || !len.is_multiple_of(2) {
        return Err(Error::Domain("Hamming window length must be even and positive"));
    }
    let half = (len / 2) as i64;
    Ok((0..len as i64)
        .map(|i| {
            let n = i - half;
            if n == 0 {
                1.0
            } else {
                HAMMING_A0 + (1.0 - HAMMING_A0) * (2.0 * PI * n as f64 / len as f64).cos()
            }
        })
        .collect())
}

/// Frame `b` into an `L x floor(N/H)` matrix, column-major (`out[j*L + i] =
/// b[jH + i]`), zero-padding reads past the end.
pub fn hankelize(b: &[f64], len: usize, hop: usize) -> Result<Vec<f64>> {
    if len == 0 || hop == 0 {
        return Err(Error::Domain("frame length and hop must be at least 1"));
    }
    let frames = b.len() / hop;
    let mut out = vec![0.0; len * frames];
    for j in 0..frames {
        let start = j * hop;
        let end = (start + len).min(b.len());
        out[j * len..j * len + (end - start)].copy_from_slice(&b[start..end]);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StftPlan {
    pub dft_len: usize,
    pub hop: usize,
    pub window: Vec<f64>,
    pub sample_rate: f64,
}

impl StftPlan {
    /// Plan with the periodic Hamming window.
    pub fn hamming(dft_len: usize, hop: usize, sample_rate: f64) -> Result<Self> {
        Self::with_window(dft_len, hop, hamming_window(dft_len)?, sample_rate)
    }

    pub fn with_window(dft_len: usize, hop: usize, window: Vec<f64>, sample_rate: f64) -> Result<Self> {
        if dft_len == 0 {
            return Err(Error::config("STFT length must be at least 1"));
        }
        if hop == 0 || hop > dft_len {
            return Err(Error::config(format!(
                "hop {hop} must lie in [1, {dft_len}]"
            )));
        }
        if window.len() != dft_len {
            return Err(Error::config(format!(
                "window has {} samples, expected {dft_len}",
                window.len()
            )));
        }
        if window.iter().any(|w| !w.is_finite()) {
            return Err(Error::Domain("window samples must be finite"));
        }
        if !(sample_rate.is_finite() && sample_rate > 0.0) {
            return Err(Error::Domain("sample rate must be positive and finite"));
        }
        Ok(Self {
            dft_len,
            hop,
            window,
            sample_rate,
        })
    }

    /// Width of one frequency bin (Hz).
    pub fn bin_width(&self) -> f64 {
        self.sample_rate / self.dft_len as f64
    }

    /// Frequency of bin `l` folded into `(-fs/2, fs/2]`.
    pub fn bin_frequency(&self, bin: usize) -> f64 {
        let l = self.dft_len;
        let signed = if 2 * bin > l { bin as f64 - l as f64 } else { bin as f64 };
        signed * self.bin_width()
    }

    /// Conjugate-mirror bin of `bin`.
    pub fn mirror(&self, bin: usize) -> usize {
        (self.dft_len - bin % self.dft_len) % self.dft_len
    }

    pub fn num_frames(&self, signal_len: usize) -> usize {
        signal_len / self.hop
    }
}

/// `L x Mf` complex spectrogram, stored column-major (one frame per column).
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrogram {
    pub values: Vec<Complex64>,
    pub plan: StftPlan,
    /// Length of the signal that `istft` reconstructs.
    pub signal_len: usize,
}

impl Spectrogram {
    /// Wrap externally built values; `values.len()` must be a multiple of
    /// `L`. The reconstructed length is `frames * H`.
    pub fn from_values(values: Vec<Complex64>, plan: StftPlan) -> Result<Self> {
        if !values.len().is_multiple_of(plan.dft_len) {
            return Err(Error::config(format!(
                "spectrogram has {} values, not a multiple of L = {}",
                values.len(),
                plan.dft_len
            )));
        }
        let signal_len = values.len() / plan.dft_len * plan.hop;
        Ok(Self {
            values,
            plan,
            signal_len,
        })
    }

    pub fn num_bins(&self) -> usize {
        self.plan.dft_len
    }

    pub fn num_frames(&self) -> usize {
        self.values.len() / self.plan.dft_len
    }

    pub fn get(&self, bin: usize, frame: usize) -> Complex64 {
        self.values[frame * self.plan.dft_len + bin]
    }

    pub fn frame(&self, frame: usize) -> &[Complex64] {
        let l = self.plan.dft_len;
        &self.values[frame * l..(frame + 1) * l]
    }

    /// Number of leading output samples covered by at least one frame.
    pub fn covered_len(&self) -> usize {
        match self.num_frames() {
            0 => 0,
            m => ((m - 1) * self.plan.hop + self.plan.dft_len).min(self.signal_len),
        }
    }

    /// `|Y|` as a row-major `L x Mf` matrix (row = bin).
    pub fn magnitude_rows(&self) -> Vec<f64> {
        let (l, m) = (self.num_bins(), self.num_frames());
        let mut out = vec![0.0; l * m];
        for j in 0..m {
            for i in 0..l {
                out[i * m + j] = self.get(i, j).norm();
            }
        }
        out
    }
}

/// `Y = Ξ W H(y)`, computed with the FFT.
pub fn stft(y: &SampledSignal, plan: &StftPlan) -> Result<Spectrogram> {
    if y.sample_rate != plan.sample_rate {
        return Err(Error::RateMismatch {
            expected: plan.sample_rate,
            found: y.sample_rate,
        });
    }
    let l = plan.dft_len;
    let frames = hankelize(&y.samples, l, plan.hop)?;
    let scale = 1.0 / (l as f64).sqrt();
    let mut values = Vec::with_capacity(frames.len());
    let mut buf = vec![Complex64::new(0.0, 0.0); l];
    for col in frames.chunks_exact(l) {
        for ((b, &x), &w) in buf.iter_mut().zip(col).zip(&plan.window) {
            *b = Complex64::new(x * w, 0.0);
        }
        fft::fft(&mut buf);
        values.extend(buf.iter().map(|z| z * scale));
    }
    Ok(Spectrogram {
        values,
        plan: plan.clone(),
        signal_len: y.len(),
    })
}

/// Weighted overlap-add inverse: each frame goes through `Ξ^H`, is multiplied
/// by the window again, accumulated, and divided by `Σ w²`. The real part is
/// returned. Samples beyond the last frame are zero.
pub fn istft(s: &Spectrogram) -> Result<SampledSignal> {
    let plan = &s.plan;
    let (l, h) = (plan.dft_len, plan.hop);
    let frames = s.num_frames();
    let span = if frames == 0 { 0 } else { (frames - 1) * h + l };
    let mut num = vec![0.0; span];
    let mut den = vec![0.0; span];
    let scale = (l as f64).sqrt();
    let mut buf = vec![Complex64::new(0.0, 0.0); l];
    for j in 0..frames {
        buf.copy_from_slice(s.frame(j));
        fft::ifft(&mut buf);
        let off = j * h;
        for (i, (z, &w)) in buf.iter().zip(&plan.window).enumerate() {
            num[off + i] += w * z.re * scale;
            den[off + i] += w * w;
        }
    }
    let mut out = vec![0.0; s.signal_len];
    for (n, o) in out.iter_mut().enumerate().take(span.min(s.signal_len)) {
        if den[n] == 0.0 {
            return Err(Error::Coverage(n));
        }
        *o = num[n] / den[n];
    }
    SampledSignal::new(out, plan.sample_rate, SignalUnit::Dimensionless)
}

/// Zero every row outside `bins`.
pub fn band_mask(s: &Spectrogram, bins: &BTreeSet<usize>) -> Result<Spectrogram> {
    let l = s.num_bins();
    if let Some(&bad) = bins.iter().find(|&&b| b >= l) {
        return Err(Error::config(format!("bin {bad} out of range for L = {l}")));
    }
    let mut out = s.clone();
    for (idx, v) in out.values.iter_mut().enumerate() {
        if !bins.contains(&(idx % l)) {
            *v = Complex64::new(0.0, 0.0);
        }
    }
    Ok(out)
}

/// Disjoint sets of 0-based bins, one per analog input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandAssignment {
    bands: Vec<BTreeSet<usize>>,
}

impl BandAssignment {
    pub fn new(bands: Vec<BTreeSet<usize>>, dft_len: usize) -> Result<Self> {
        if bands.is_empty() {
            return Err(Error::config("band assignment needs at least one band"));
        }
        let mut seen = BTreeSet::new();
        for (k, band) in bands.iter().enumerate() {
            for &b in band {
                if b >= dft_len {
                    return Err(Error::config(format!(
                        "band {k}: bin {b} out of range for L = {dft_len}"
                    )));
                }
                if !seen.insert(b) {
                    return Err(Error::config(format!("band {k}: bin {b} assigned twice")));
                }
            }
        }
        Ok(Self { bands })
    }

    /// Build from one-sided bin lists, adding each bin's conjugate mirror.
    pub fn with_mirrors(one_sided: Vec<Vec<usize>>, dft_len: usize) -> Result<Self> {
        let bands = one_sided
            .into_iter()
            .map(|b| {
                b.into_iter()
                    .flat_map(|x| [x, (dft_len - x % dft_len) % dft_len])
                    .collect()
            })
            .collect();
        Self::new(bands, dft_len)
    }

    /// Contiguous bands split at the given one-sided bin edges: band `k`
    /// covers `[edges[k], edges[k+1])`, the last band runs to `L/2`
    /// inclusive, and mirrors are added.
    pub fn contiguous(edges: &[usize], dft_len: usize) -> Result<Self> {
        if edges.is_empty() || edges[0] != 0 || edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::config("band edges must start at 0 and increase"));
        }
        let half = dft_len / 2;
        if *edges.last().unwrap() > half {
            return Err(Error::config("band edges must not exceed L/2"));
        }
        let mut one_sided = Vec::with_capacity(edges.len());
        for (k, &lo) in edges.iter().enumerate() {
            let hi = edges.get(k + 1).copied().unwrap_or(half + 1);
            one_sided.push((lo..hi).collect());
        }
        Self::with_mirrors(one_sided, dft_len)
    }

    pub fn bands(&self) -> &[BTreeSet<usize>] {
        &self.bands
    }

    pub fn len(&self) -> usize {
        self.bands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }

    /// First bin whose mirror lives in a different band, if any.
    pub fn mirror_violation(&self, dft_len: usize) -> Option<usize> {
        for band in &self.bands {
            for &b in band {
                let m = (dft_len - b) % dft_len;
                if !band.contains(&m) {
                    return Some(b);
                }
            }
        }
        None
    }

    pub fn covers(&self, bin: usize) -> bool {
        self.bands.iter().any(|b| b.contains(&bin))
    }
}
