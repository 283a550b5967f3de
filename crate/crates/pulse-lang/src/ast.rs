use thiserror::Error;

/// A source-located diagnostic, machine-readable as
/// `file:line:col: CODE: message` records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub file: String,
    pub line: usize,
    pub col: usize,
    pub code: &'static str,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}:{}:{}: {}: {}",
            self.file, self.line, self.col, self.code, self.message
        )
    }
}

/// Errors from parsing, scheduling, checking, or executing a program.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum PulseError {
    #[error("{0}")]
    Syntax(Diagnostic),
    #[error("play on channel '{channel}' at line {second_line} (start {second_start}) overlaps the pulse from line {first_line} (ends {first_end})")]
    Overlap {
        channel: String,
        first_line: usize,
        first_end: i64,
        second_line: usize,
        second_start: i64,
    },
    #[error("constraint references channel '{0}' absent from the program")]
    UnknownConstraintChannel(String),
    #[error("coherence constraint needs at least two terms")]
    ConstraintTooSmall,
    #[error("analog LO model missing a frequency for channel '{0}'")]
    MissingLoFrequency(String),
    #[error("mux channel '{0}' only plays flat envelopes")]
    MuxNeedsFlatEnvelope(String),
    #[error("synthesis error: {0}")]
    Synthesis(#[from] dsp_core::DspError),
}

/// Kind of generator behind a declared channel.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelKind {
    /// Single-tone generator.
    Single,
    /// Multiplexed generator summing the listed tone frequencies (Hz).
    Mux { tones: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelDecl {
    pub name: String,
    pub kind: ChannelKind,
    pub freq: f64,
    pub phase: f64,
    pub gain: f64,
    /// Line of the declaration, for diagnostics.
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EnvelopeSpec {
    Flat { len: usize },
    Gaussian { len: usize, sigma: f64 },
    Drag { len: usize, sigma: f64, beta: f64 },
    Triangle { len: usize },
}

impl EnvelopeSpec {
    pub fn len(&self) -> usize {
        match self {
            EnvelopeSpec::Flat { len }
            | EnvelopeSpec::Gaussian { len, .. }
            | EnvelopeSpec::Drag { len, .. }
            | EnvelopeSpec::Triangle { len } => *len,
        }
    }

    pub fn build(&self) -> dsp_core::Envelope {
        match self {
            EnvelopeSpec::Flat { len } => dsp_core::Envelope::flat(*len),
            EnvelopeSpec::Gaussian { len, sigma } => dsp_core::Envelope::gaussian(*len, *sigma),
            EnvelopeSpec::Drag { len, sigma, beta } => {
                dsp_core::Envelope::drag(*len, *sigma, *beta)
            }
            EnvelopeSpec::Triangle { len } => dsp_core::Envelope::triangle(*len),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeDecl {
    pub name: String,
    pub spec: EnvelopeSpec,
    pub line: usize,
}

/// One body statement. Channel and envelope references are indices into the
/// program's declaration tables, resolved during parsing.
#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    SetFreq {
        ch: usize,
        hz: f64,
        line: usize,
    },
    SetPhase {
        ch: usize,
        rad: f64,
        line: usize,
    },
    SetGain {
        ch: usize,
        gain: f64,
        line: usize,
    },
    Play {
        ch: usize,
        env: usize,
        at: Option<i64>,
        line: usize,
    },
    Wait {
        samples: i64,
        line: usize,
    },
    PhaseReset {
        chans: Vec<usize>,
        line: usize,
    },
    TriggerReadout {
        channel: u8,
        window: u32,
        at: Option<i64>,
        line: usize,
    },
    Repeat {
        count: u32,
        period: i64,
        body: Vec<Statement>,
        line: usize,
    },
}

/// A parsed pulse program.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseProgram {
    /// Generator sample rate, Hz.
    pub clock_hz: f64,
    pub channels: Vec<ChannelDecl>,
    pub envelopes: Vec<EnvelopeDecl>,
    /// Named frequency constants `(name, hz)`.
    pub freqs: Vec<(String, f64)>,
    pub body: Vec<Statement>,
}

impl PulseProgram {
    pub fn channel_index(&self, name: &str) -> Option<usize> {
        self.channels.iter().position(|c| c.name == name)
    }
}

/// Signed linear combination of channel phases required constant across
/// repetitions. Coefficients are restricted to {-1, +1, -1/2, +1/2}, stored
/// doubled so the arithmetic stays integral.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceConstraint {
    /// `(channel name, 2 * coefficient)` with the doubled coefficient in
    /// {-2, -1, 1, 2}.
    pub terms: Vec<(String, i8)>,
}

impl CoherenceConstraint {
    /// Build from half-unit coefficients; rejects anything outside the
    /// allowed set or constraints with fewer than two terms.
    pub fn new(terms: Vec<(String, f64)>) -> Result<Self, PulseError> {
        if terms.len() < 2 {
            return Err(PulseError::ConstraintTooSmall);
        }
        let mut doubled = Vec::with_capacity(terms.len());
        for (name, c) in terms {
            let d = (c * 2.0).round();
            if (c * 2.0 - d).abs() > 1e-12 || !matches!(d as i64, -2 | -1 | 1 | 2) {
                return Err(PulseError::Syntax(Diagnostic {
                    file: String::new(),
                    line: 0,
                    col: 0,
                    code: "E010",
                    message: format!("coefficient {c} for '{name}' not in {{±1, ±1/2}}"),
                }));
            }
            doubled.push((name, d as i8));
        }
        Ok(Self { terms: doubled })
    }

    /// Difference-frequency constraint `phi_1 + phi_p - phi_2`.
    pub fn exchange(ch1: &str, pump: &str, ch2: &str) -> Self {
        Self {
            terms: vec![
                (ch1.to_string(), 2),
                (pump.to_string(), 2),
                (ch2.to_string(), -2),
            ],
        }
    }

    /// Measurement-axis constraint `phi_q - (phi_g - phi_c)/2`.
    pub fn measurement_axis(qubit: &str, gain: &str, conversion: &str) -> Self {
        Self {
            terms: vec![
                (qubit.to_string(), 2),
                (gain.to_string(), -1),
                (conversion.to_string(), 1),
            ],
        }
    }
}
