use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DeviceSimError {
    #[error("transfer-function time constant must be positive, got {0} s")]
    NonPositiveTau(f64),
    #[error("sample interval must be positive, got {0} s")]
    NonPositiveDt(f64),
    #[error("pulse length {t} exceeds flux waveform support {len}")]
    BeyondPulseSupport { t: usize, len: usize },
    #[error("state vector dimension {0} is not 4")]
    BadStateDimension(usize),
    #[error("gate sequence is empty")]
    EmptySequence,
    #[error("crosstalk matrix invalid: {0}")]
    BadCrosstalkMatrix(String),
    #[error("bloch vector norm {0} exceeds 1")]
    BlochOverRange(f64),
}
