use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReadoutError {
    #[error("input length {len} shorter than one filter span ({span} samples)")]
    InputTooShort { len: usize, span: usize },
    #[error("demodulation window must be positive")]
    EmptyWindow,
    #[error("window {window} exceeds stream length {len}")]
    WindowTooLong { window: usize, len: usize },
    #[error("{count} simultaneous readouts exceed the limit of {max}")]
    TooManyReadouts { count: usize, max: usize },
    #[error("frequency {freq} Hz folds onto the Nyquist edge of f_adc = {f_adc} Hz")]
    OnNyquistEdge { freq: f64, f_adc: f64 },
    #[error("tones {f_a} Hz and {f_b} Hz collide in frequency bin {bin}")]
    BinCollision { f_a: f64, f_b: f64, bin: usize },
    #[error("prototype filter must have at least {min} taps, got {got}")]
    PrototypeTooShort { min: usize, got: usize },
    #[error("csv parse error at line {line}: {msg}")]
    CsvParse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for ReadoutError {
    fn from(e: std::io::Error) -> Self {
        ReadoutError::Io(e.to_string())
    }
}
