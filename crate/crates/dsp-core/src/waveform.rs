use num_complex::Complex64;

use crate::clock::SampleClock;
use crate::dds::DdsChannel;
use crate::envelope::{interpolate_envelope, Envelope};
use crate::error::DspError;

/// Default envelope memory capacity, in DAC samples.
pub const DEFAULT_MAX_ENV_SAMPLES: usize = 65536;

/// Default number of tones a multiplexed generator can sum.
pub const MAX_MUX_TONES: usize = 8;

/// A uniformly sampled complex waveform tied to a sample clock.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexWaveform {
    pub samples: Vec<Complex64>,
    pub clock: SampleClock,
    /// Sample index of `samples[0]` on `clock`.
    pub start: i64,
}

impl ComplexWaveform {
    pub fn new(samples: Vec<Complex64>, clock: SampleClock, start: i64) -> Self {
        Self {
            samples,
            clock,
            start,
        }
    }

    pub fn zeros(len: usize, clock: SampleClock, start: i64) -> Self {
        Self {
            samples: vec![Complex64::new(0.0, 0.0); len],
            clock,
            start,
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sum of squared magnitudes.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum()
    }

    /// Real part, e.g. what a single physical DAC pin would emit.
    pub fn to_real(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.re).collect()
    }

    /// Add another waveform sample-by-sample; both must share clock rate and
    /// start. Lengths may differ, the shorter is zero-extended.
    pub fn add_in_place(&mut self, other: &ComplexWaveform) {
        debug_assert_eq!(self.clock.f_s, other.clock.f_s);
        debug_assert_eq!(self.start, other.start);
        if other.samples.len() > self.samples.len() {
            self.samples
                .resize(other.samples.len(), Complex64::new(0.0, 0.0));
        }
        for (a, b) in self.samples.iter_mut().zip(&other.samples) {
            *a += b;
        }
    }
}

/// Synthesize one pulse: `gain * env[k] * exp(i * phase(start + k))`.
///
/// Interpolated-rate envelopes are upsampled to the DAC rate first. The
/// carrier phase comes from the channel's integer phase accumulator, so the
/// pulse is phase coherent with every other pulse of the same frequency on
/// the same clock.
pub fn synthesize_pulse(
    ch: &DdsChannel,
    env: &Envelope,
    start: i64,
    clock: &SampleClock,
) -> Result<ComplexWaveform, DspError> {
    synthesize_pulse_limited(ch, env, start, clock, DEFAULT_MAX_ENV_SAMPLES)
}

/// [`synthesize_pulse`] with an explicit envelope memory capacity.
pub fn synthesize_pulse_limited(
    ch: &DdsChannel,
    env: &Envelope,
    start: i64,
    clock: &SampleClock,
    max_env_samples: usize,
) -> Result<ComplexWaveform, DspError> {
    if env.is_empty() {
        return Err(DspError::EmptyEnvelope);
    }
    if env.len() > max_env_samples {
        return Err(DspError::EnvelopeCapacity {
            len: env.len(),
            max: max_env_samples,
        });
    }
    if start < ch.reset_epoch {
        return Err(DspError::BeforeResetEpoch {
            index: start,
            epoch: ch.reset_epoch,
        });
    }
    let upsampled;
    let samples = if env.rate_divisor == 16 {
        upsampled = interpolate_envelope(env)?;
        &upsampled.samples
    } else {
        &env.samples
    };

    // Walk the accumulator incrementally; word arithmetic makes this exactly
    // equal to evaluating phase_at(start + k) for each k.
    let ftw = ch.freq_word(clock);
    let mut word = ch.phase_word_at(clock, start)?;
    let mut out = Vec::with_capacity(samples.len());
    for &e in samples {
        let phase = word as f64 / 4294967296.0 * std::f64::consts::TAU;
        let (s, c) = phase.sin_cos();
        out.push(e * Complex64::new(c, s) * ch.gain);
        word = word.wrapping_add(ftw);
    }
    Ok(ComplexWaveform::new(out, *clock, start))
}

/// Multiplexed generation: the pointwise sum of flat-envelope tones.
///
/// Tones are synthesized independently and added in list order, so the mux
/// output is bit-identical to summing the per-tone pulses yourself.
pub fn synthesize_mux(
    tones: &[(DdsChannel, f64)],
    start: i64,
    length: usize,
    clock: &SampleClock,
) -> Result<ComplexWaveform, DspError> {
    if tones.is_empty() || tones.len() > MAX_MUX_TONES {
        return Err(DspError::MuxCapacity {
            count: tones.len(),
            max: MAX_MUX_TONES,
        });
    }
    for (ch, _) in tones {
        if ch.freq.abs() >= clock.f_s / 2.0 {
            return Err(DspError::ToneOutOfBand {
                freq: ch.freq,
                f_s: clock.f_s,
            });
        }
    }
    let env = Envelope::flat(length);
    let mut acc = ComplexWaveform::zeros(length, *clock, start);
    for (ch, extra_gain) in tones {
        let scaled = DdsChannel {
            gain: ch.gain * extra_gain,
            ..*ch
        };
        let pulse = synthesize_pulse_limited(&scaled, &env, start, clock, usize::MAX)?;
        acc.add_in_place(&pulse);
    }
    Ok(acc)
}
