//! Non-fatal diagnostics returned alongside results.

use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// The array aperture is not small against the shortest baseband
    /// wavelength, so per-unit baseband delays are not negligible.
    ApertureVsBasebandWavelength { aperture_m: f64, wavelength_m: f64 },
    /// The representable baseband bandwidth is not small against the carrier.
    NotNarrowband { bandwidth_hz: f64, carrier_hz: f64 },
    /// A spectrogram image was not mirror-symmetric and has been averaged
    /// with its mirror.
    ImageSymmetrized { max_mismatch: f64 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::ApertureVsBasebandWavelength {
                aperture_m,
                wavelength_m,
            } => write!(
                f,
                "array aperture {aperture_m:.3e} m is not small against the baseband wavelength {wavelength_m:.3e} m"
            ),
            Warning::NotNarrowband {
                bandwidth_hz,
                carrier_hz,
            } => write!(
                f,
                "baseband bandwidth {bandwidth_hz:.3e} Hz is not small against the carrier {carrier_hz:.3e} Hz"
            ),
            Warning::ImageSymmetrized { max_mismatch } => write!(
                f,
                "image rows were not mirror-symmetric (max mismatch {max_mismatch:.3e}); averaged with the mirror"
            ),
        }
    }
}
