//! Forward simulation and inverse waveform design for reflecting surfaces
//! whose units switch a 1-bit phase digitally while an analog bias sets the
//! reflection magnitude.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, configuration and
//! the command-line front end live in the `awgris` crate.
//!
//! Module map:
//!
//! * [`diode`]: PIN-diode impedance and the unit reflection coefficient,
//!   including the monotone bias-to-magnitude map and its inverse.
//! * [`control`]: linear control-circuit response and its regularized inverse.
//! * [`array`]: planar-array geometry, steering vectors, beam patterns and
//!   scattered fields.
//! * [`link`]: single-link received baseband, dc removal, modulation
//!   efficiency.
//! * [`stft`]: unitary-DFT short-time Fourier analysis and weighted
//!   overlap-add synthesis.
//! * [`synth`]: control-signal design for single inputs, band-split multiple
//!   inputs and spectrogram images.
//! * [`waveform`], [`spectrum`]: test-signal generators and amplitude spectra.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod array;
pub mod control;
pub mod diode;
pub mod error;
pub mod fft;
pub mod link;
pub mod signal;
pub mod spectrum;
pub mod stft;
pub mod synth;
pub mod warning;
pub mod waveform;

pub use error::{Error, Result};
pub use warning::Warning;
pub use num_complex::Complex64;

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
