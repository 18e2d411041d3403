use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("non-finite or out-of-domain input: {0}")]
    Domain(&'static str),

    #[error("reflection coefficient is singular (Z_eff = -z0)")]
    Singularity,

    #[error("bias {v} V is below the forward voltage {v_forward} V")]
    BelowForward { v: f64, v_forward: f64 },

    #[error("target magnitude {target} outside achievable range [{min}, {max}]")]
    OutOfRange { target: f64, min: f64, max: f64 },

    #[error("sample rate mismatch: expected {expected} Hz, found {found} Hz")]
    RateMismatch { expected: f64, found: f64 },

    #[error("degenerate filter: impulse response has no energy")]
    DegenerateFilter,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error(
        "unit {unit} (input {input}) is driven to {value} V at sample {sample}, below the forward voltage"
    )]
    ModulationUnderflow {
        unit: usize,
        input: usize,
        sample: usize,
        value: f64,
    },

    #[error("overlap-add coverage is zero at sample {0}")]
    Coverage(usize),

    #[error("target bandwidth {bandwidth_hz} Hz exceeds the reliable control band [{band_lo_hz}, {band_hi_hz}] Hz")]
    Infeasible {
        bandwidth_hz: f64,
        band_lo_hz: f64,
        band_hi_hz: f64,
    },
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
