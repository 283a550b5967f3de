use thiserror::Error;

/// Errors produced by synthesis operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum DspError {
    #[error("sample rate must be positive, got {0}")]
    InvalidSampleRate(f64),
    #[error("sample index {index} precedes reset epoch {epoch}")]
    BeforeResetEpoch { index: i64, epoch: i64 },
    #[error("envelope is empty")]
    EmptyEnvelope,
    #[error("envelope sample magnitude {0} exceeds full scale 1.0")]
    EnvelopeOverRange(f64),
    #[error("envelope rate divisor {0} not supported (must be 1 or 16)")]
    BadRateDivisor(u32),
    #[error("envelope length {len} exceeds memory capacity {max}")]
    EnvelopeCapacity { len: usize, max: usize },
    #[error("{count} tones exceeds mux generator capacity {max}")]
    MuxCapacity { count: usize, max: usize },
    #[error("tone frequency {freq} Hz outside first Nyquist zone of {f_s} Hz clock")]
    ToneOutOfBand { freq: f64, f_s: f64 },
    #[error("fixed point format invalid: total_bits={total_bits}, frac_bits={frac_bits}")]
    BadFixedPointFormat { total_bits: u32, frac_bits: u32 },
    #[error("waveform sample magnitude {0} exceeds full scale 1.0")]
    SampleOverRange(f64),
    #[error("csv parse error at line {line}: {msg}")]
    CsvParse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for DspError {
    fn from(e: std::io::Error) -> Self {
        DspError::Io(e.to_string())
    }
}
