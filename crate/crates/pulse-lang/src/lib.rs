//! A small timed pulse-program language.
//!
//! Programs are line-oriented assembly: declarations first (clock, channels,
//! envelopes, named frequencies), then one timed statement per line. The
//! scheduler turns a program into absolute-sample-time instructions with
//! zero-latency pulse abutment; the coherence checker statically verifies
//! phase relationships between channels across repetitions; the executor
//! renders per-channel waveforms through the synthesis core.
//!
//! # Grammar
//!
//! ```text
//! # comment
//! clock 6881.28MHz                  # generator sample rate, once
//! channel q0 freq 95MHz [phase 0] [gain 1.0]
//! muxchannel ro tones 880MHz 134MHz -685.6MHz 1041MHz [gain 0.2]
//! envelope e1 flat 256              # name shape args...
//! envelope e2 gaussian 160 40      # len sigma
//! envelope e3 drag 160 40 0.5      # len sigma beta
//! envelope e4 triangle 200
//! freq f_d 95MHz                    # named frequency constant
//!
//! set_freq q0 f_d                   # or a literal frequency
//! set_phase q0 90deg                # radians unless 'deg' suffix
//! set_gain q0 0.5
//! play q0 e2 [at 1200]              # start at cursor, or absolute sample
//! wait 100                          # barrier all channels, advance 100
//! phase_reset q0 q1                 # synchronous reset of listed channels
//! trigger_readout 3 256 [at 40]     # readout channel, window samples
//! repeat 100 period 2000
//!   ...
//! end
//! ```
//!
//! Times are integer samples, or `ns` literals converted through the clock
//! (round to nearest, warning when inexact). Frequencies accept `Hz`, `kHz`,
//! `MHz`, `GHz` suffixes; bare frequency numbers are Hz.

mod ast;
mod coherence;
mod execute;
mod parser;
mod printer;
mod schedule;

pub use ast::{
    ChannelDecl, ChannelKind, CoherenceConstraint, Diagnostic, EnvelopeDecl, EnvelopeSpec,
    PulseError, PulseProgram, Statement,
};
pub use coherence::{
    check_phase_coherence, simulate_constraint, CoherenceReport, PhaseModel, COHERENCE_TOLERANCE,
};
pub use execute::{execute, ExecConfig, Execution, Trigger};
pub use parser::{parse, ParseOutcome};
pub use printer::pretty_print;
pub use schedule::{schedule, Schedule, ScheduledAction, TimedInstruction};
