use crate::error::DspError;

/// A sample clock: everything in the generation chain is timestamped with
/// integer sample indices against one of these.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleClock {
    /// Sample rate in Hz.
    pub f_s: f64,
    /// Epoch sample index. Index 0 of a waveform with `start == t0` is the
    /// clock origin; the epoch exists so programs can be shifted in absolute
    /// time without touching their internal timing.
    pub t0: i64,
}

impl SampleClock {
    pub fn new(f_s: f64) -> Result<Self, DspError> {
        if !(f_s > 0.0) || !f_s.is_finite() {
            return Err(DspError::InvalidSampleRate(f_s));
        }
        Ok(Self { f_s, t0: 0 })
    }

    /// Seconds spanned by `n` samples.
    pub fn samples_to_seconds(&self, n: i64) -> f64 {
        n as f64 / self.f_s
    }

    /// Nearest sample count for a duration in seconds.
    pub fn seconds_to_samples(&self, t: f64) -> i64 {
        (t * self.f_s).round() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive_rate() {
        assert!(SampleClock::new(0.0).is_err());
        assert!(SampleClock::new(-1.0).is_err());
        assert!(SampleClock::new(f64::NAN).is_err());
    }

    #[test]
    fn second_conversions_roundtrip() {
        let clk = SampleClock::new(6_881_280_000.0).unwrap();
        assert_eq!(clk.seconds_to_samples(clk.samples_to_seconds(12345)), 12345);
    }
}
