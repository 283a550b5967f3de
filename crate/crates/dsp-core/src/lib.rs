//! Deterministic digital synthesis primitives.
//!
//! This crate models the generation side of an FPGA qubit controller in
//! software: numerically-controlled oscillators with integer phase
//! accumulators, full-speed and interpolated envelopes, frequency-multiplexed
//! tone generation, synchronous phase reset, and DAC-style fixed-point
//! quantization.
//!
//! Everything here is a pure function of its inputs. Two runs of the same
//! program produce bit-identical waveforms, and the phase of every oscillator
//! at every sample is an exact function of `(frequency word, phase offset,
//! reset epoch, sample index)` — there is no hidden accumulator state.

mod clock;
mod dds;
mod envelope;
mod error;
mod fixed;
mod io;
mod waveform;

pub use clock::SampleClock;
pub use dds::{phase_reset, DdsChannel, PHASE_WORD_BITS};
pub use envelope::{
    interpolate_envelope, interpolation_kernel, kaiser_window, Envelope, EnvelopeShape,
    INTERP_FACTOR,
};
pub use error::DspError;
pub use fixed::{quantize, FixedPointFormat, QuantizeFlags};
pub use io::{
    read_waveform_csv, read_waveform_csv_file, write_waveform_csv, write_waveform_csv_file,
};
pub use waveform::{
    synthesize_mux, synthesize_pulse, synthesize_pulse_limited, ComplexWaveform,
    DEFAULT_MAX_ENV_SAMPLES, MAX_MUX_TONES,
};
