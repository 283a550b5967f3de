use std::f64::consts::TAU;

use crate::clock::SampleClock;
use crate::error::DspError;

/// Width of the DDS phase accumulator in bits, matching a hardware-style
/// 32-bit numerically controlled oscillator.
pub const PHASE_WORD_BITS: u32 = 32;

const WORD_SCALE: f64 = 4294967296.0; // 2^32

/// One direct-digital-synthesis channel.
///
/// The channel does not accumulate state sample by sample. Its phase at any
/// sample index is computed exactly from the 32-bit frequency tuning word,
/// the 32-bit phase offset word, and the index of the last synchronous phase
/// reset. Integer word arithmetic wraps exactly, so pulses of the same
/// frequency played at different times are slices of one ideal oscillator.
///
/// Programmed frequency and phase are rounded to the nearest word:
/// `ftw = round(freq / f_s * 2^32)`, `pow = round(offset / 2pi * 2^32)`.
/// The realized tone frequency is `ftw / 2^32 * f_s`, within
/// `f_s / 2^33` of the request. [`DdsChannel::phase_at_ideal`] provides an
/// unquantized real-valued reference path for comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdsChannel {
    /// Programmed tone frequency in Hz. May be negative.
    pub freq: f64,
    /// Programmed phase offset in radians, wrapped into [0, 2pi).
    pub phase_offset: f64,
    /// Linear gain in [-1, 1].
    pub gain: f64,
    /// Sample index of the last synchronous phase reset.
    pub reset_epoch: i64,
}

impl DdsChannel {
    pub fn new(freq: f64, phase_offset: f64, gain: f64) -> Self {
        Self {
            freq,
            phase_offset: phase_offset.rem_euclid(TAU),
            gain,
            reset_epoch: 0,
        }
    }

    /// Frequency tuning word: `round(freq / f_s * 2^32)` reduced mod 2^32.
    pub fn freq_word(&self, clock: &SampleClock) -> u32 {
        let turns_per_sample = self.freq / clock.f_s;
        let w = (turns_per_sample * WORD_SCALE).round() as i64;
        w as u32
    }

    /// Phase offset word: `round(offset / 2pi * 2^32)` reduced mod 2^32.
    pub fn phase_word(&self) -> u32 {
        let turns = self.phase_offset / TAU;
        let w = (turns * WORD_SCALE).round() as i64;
        w as u32
    }

    /// The frequency actually synthesized after word rounding, in Hz,
    /// interpreted in [-f_s/2, f_s/2).
    pub fn quantized_freq(&self, clock: &SampleClock) -> f64 {
        let ftw = self.freq_word(clock) as i32;
        ftw as f64 / WORD_SCALE * clock.f_s
    }

    /// Phase accumulator word at sample `n`, i.e. `ftw*(n - epoch) + pow`
    /// reduced mod 2^32. Requires `n >= reset_epoch`.
    pub fn phase_word_at(&self, clock: &SampleClock, n: i64) -> Result<u32, DspError> {
        if n < self.reset_epoch {
            return Err(DspError::BeforeResetEpoch {
                index: n,
                epoch: self.reset_epoch,
            });
        }
        let dn = (n - self.reset_epoch) as u64;
        let ftw = self.freq_word(clock);
        // Truncating a u128 product to u32 is an exact mod-2^32 reduction.
        let acc = (ftw as u128).wrapping_mul(dn as u128) as u32;
        Ok(acc.wrapping_add(self.phase_word()))
    }

    /// DDS phase at sample `n`, in radians in [0, 2pi).
    ///
    /// This is the hardware-style path: the value is the 32-bit accumulator
    /// word scaled to radians, so it equals the ideal phase up to frequency
    /// word rounding (growing as `2pi * 0.5/2^32` per sample) plus one-word
    /// phase offset rounding.
    pub fn phase_at(&self, clock: &SampleClock, n: i64) -> Result<f64, DspError> {
        Ok(self.phase_word_at(clock, n)? as f64 / WORD_SCALE * TAU)
    }

    /// Reference real-valued phase path:
    /// `wrap(2pi * freq * (n - epoch) / f_s + offset)` computed in f64
    /// without word quantization. Used as an oracle for [`Self::phase_at`].
    pub fn phase_at_ideal(&self, clock: &SampleClock, n: i64) -> Result<f64, DspError> {
        if n < self.reset_epoch {
            return Err(DspError::BeforeResetEpoch {
                index: n,
                epoch: self.reset_epoch,
            });
        }
        let dn = (n - self.reset_epoch) as f64;
        // Reduce turns before multiplying by 2pi to keep precision at large dn.
        let turns = (self.freq / clock.f_s * dn).rem_euclid(1.0);
        Ok((turns * TAU + self.phase_offset).rem_euclid(TAU))
    }

    /// Copy of this channel with the reset epoch moved to `t`.
    pub fn with_reset(&self, t: i64) -> Self {
        Self {
            reset_epoch: t,
            ..*self
        }
    }
}

/// Synchronous phase reset: move every channel's reset epoch to sample `t`.
///
/// Immediately after the reset each channel's phase at `t` is exactly its
/// programmed offset, so the relative phase of any two channels at `t` is the
/// difference of their offsets, independent of anything played before.
pub fn phase_reset(channels: &[DdsChannel], t: i64) -> Result<Vec<DdsChannel>, DspError> {
    for ch in channels {
        if t < ch.reset_epoch {
            return Err(DspError::BeforeResetEpoch {
                index: t,
                epoch: ch.reset_epoch,
            });
        }
    }
    Ok(channels.iter().map(|ch| ch.with_reset(t)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clk(f_s: f64) -> SampleClock {
        SampleClock::new(f_s).unwrap()
    }

    #[test]
    fn quarter_rate_tone_phase_is_exact() {
        let clock = clk(1000.0);
        let ch = DdsChannel::new(250.0, 0.0, 1.0);
        // f_s/4 divides the word scale exactly, so no rounding anywhere.
        let phase = ch.phase_at(&clock, 3).unwrap();
        assert_eq!(phase, 3.0 * std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn dc_channel_returns_offset() {
        let clock = clk(1000.0);
        let ch = DdsChannel::new(0.0, 1.0, 1.0);
        for n in [0, 7, 1_000_000] {
            let ideal = ch.phase_at_ideal(&clock, n).unwrap();
            assert_eq!(ideal, 1.0);
            // Hardware path quantizes the offset to one 32-bit word.
            let hw = ch.phase_at(&clock, n).unwrap();
            assert!((hw - 1.0).abs() <= TAU / WORD_SCALE);
        }
    }

    /// 128-bit rational oracle for the accumulator: computes
    /// (ftw*dn + pow) mod 2^32 with explicit u128 arithmetic.
    fn phase_word_oracle(ftw: u32, pow: u32, dn: u64) -> u32 {
        let acc = ((ftw as u128) * (dn as u128) + pow as u128) % (1u128 << 32);
        acc as u32
    }

    #[test]
    fn million_sample_phase_matches_extended_precision_oracle() {
        // 91 MHz tone on the 6881.28 MHz generator clock, one million samples.
        let clock = clk(6_881_280_000.0);
        let ch = DdsChannel::new(91e6, 0.0, 1.0);
        let n = 1_000_000i64;

        let ftw = ch.freq_word(&clock);
        let expect_word = phase_word_oracle(ftw, ch.phase_word(), n as u64);
        assert_eq!(ch.phase_word_at(&clock, n).unwrap(), expect_word);

        // The ideal-path phase from exact integer rationals:
        // turns = frac(91e6 * n / 6881.28e6), both in integer Hz.
        let num: u128 = 91_000_000u128 * n as u128;
        let den: u128 = 6_881_280_000u128;
        let frac = (num % den) as f64 / den as f64;
        let ideal = ch.phase_at_ideal(&clock, n).unwrap();
        assert!((ideal - frac * TAU).abs() < 1e-9, "ideal={ideal}");

        // Hardware path deviates from ideal only by ftw rounding:
        // at most 2pi * 0.5 * dn / 2^32.
        let hw = ch.phase_at(&clock, n).unwrap();
        let bound = TAU * 0.5 * n as f64 / WORD_SCALE + TAU / WORD_SCALE;
        let mut diff = (hw - ideal).abs();
        if diff > std::f64::consts::PI {
            diff = TAU - diff;
        }
        assert!(diff <= bound, "diff={diff} bound={bound}");
    }

    #[test]
    fn phase_before_epoch_is_domain_error() {
        let clock = clk(1000.0);
        let ch = DdsChannel::new(100.0, 0.0, 1.0).with_reset(10);
        assert!(matches!(
            ch.phase_at(&clock, 9),
            Err(DspError::BeforeResetEpoch { index: 9, epoch: 10 })
        ));
        assert!(ch.phase_at(&clock, 10).is_ok());
    }

    #[test]
    fn reset_pins_phase_to_offsets() {
        let clock = clk(1000.0);
        let chans = vec![
            DdsChannel::new(123.456, 0.0, 1.0),
            DdsChannel::new(77.7, std::f64::consts::FRAC_PI_2, 1.0),
        ];
        let reset = phase_reset(&chans, 5000).unwrap();
        let p0 = reset[0].phase_at(&clock, 5000).unwrap();
        let p1 = reset[1].phase_at(&clock, 5000).unwrap();
        assert_eq!(p0, 0.0);
        // Offset of pi/2 is representable exactly in the 32-bit word.
        assert_eq!(p1, std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn reset_backwards_in_time_rejected() {
        let chans = vec![DdsChannel::new(1.0, 0.0, 1.0).with_reset(100)];
        assert!(phase_reset(&chans, 99).is_err());
    }

    #[test]
    fn negative_frequency_runs_backwards() {
        let clock = clk(1000.0);
        let fwd = DdsChannel::new(250.0, 0.0, 1.0);
        let rev = DdsChannel::new(-250.0, 0.0, 1.0);
        let pf = fwd.phase_at(&clock, 1).unwrap();
        let pr = rev.phase_at(&clock, 1).unwrap();
        assert_eq!((pf + pr).rem_euclid(TAU), 0.0);
    }
}
