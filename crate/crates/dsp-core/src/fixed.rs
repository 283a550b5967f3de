use num_complex::Complex64;

use crate::error::DspError;
use crate::waveform::ComplexWaveform;

/// Signed fixed-point word layout for DAC/ADC emulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedPointFormat {
    pub total_bits: u32,
    pub frac_bits: u32,
}

impl FixedPointFormat {
    pub fn new(total_bits: u32, frac_bits: u32) -> Result<Self, DspError> {
        if frac_bits == 0 || frac_bits > total_bits || total_bits > 32 {
            return Err(DspError::BadFixedPointFormat {
                total_bits,
                frac_bits,
            });
        }
        Ok(Self {
            total_bits,
            frac_bits,
        })
    }

    /// 16-bit converter word with 15 fractional bits: full scale is
    /// [-1.0, 1.0 - 2^-15], the default for commodity RFSoC converters.
    pub fn dac16() -> Self {
        Self {
            total_bits: 16,
            frac_bits: 15,
        }
    }

    fn max_code(&self) -> i64 {
        (1i64 << (self.total_bits - 1)) - 1
    }

    fn min_code(&self) -> i64 {
        -(1i64 << (self.total_bits - 1))
    }

    /// Quantize one real value: round to nearest (ties to even) at
    /// `frac_bits`, saturating at the representable range.
    /// Returns the quantized value and whether saturation occurred.
    pub fn quantize_value(&self, x: f64) -> (f64, bool) {
        let scale = (1u64 << self.frac_bits) as f64;
        let code = (x * scale).round_ties_even() as i64;
        let clamped = code.clamp(self.min_code(), self.max_code());
        (clamped as f64 / scale, clamped != code)
    }
}

/// Flags raised while quantizing a waveform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct QuantizeFlags {
    /// At least one sample exceeded the representable range and was clamped.
    pub saturated: bool,
}

/// Quantize a waveform's I and Q to the given fixed-point format.
///
/// Idempotent: quantizing an already-quantized waveform is a no-op.
pub fn quantize(w: &ComplexWaveform, fmt: FixedPointFormat) -> (ComplexWaveform, QuantizeFlags) {
    let mut flags = QuantizeFlags::default();
    let samples = w
        .samples
        .iter()
        .map(|s| {
            let (re, sat_re) = fmt.quantize_value(s.re);
            let (im, sat_im) = fmt.quantize_value(s.im);
            flags.saturated |= sat_re || sat_im;
            Complex64::new(re, im)
        })
        .collect();
    (
        ComplexWaveform::new(samples, w.clock, w.start),
        flags,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clock::SampleClock;

    fn wave(vals: &[f64]) -> ComplexWaveform {
        ComplexWaveform::new(
            vals.iter().map(|v| Complex64::new(*v, 0.0)).collect(),
            SampleClock::new(1000.0).unwrap(),
            0,
        )
    }

    #[test]
    fn zero_stays_zero() {
        let (q, flags) = quantize(&wave(&[0.0]), FixedPointFormat::dac16());
        assert_eq!(q.samples[0].re, 0.0);
        assert!(!flags.saturated);
    }

    #[test]
    fn full_scale_saturates_to_max_code() {
        let fmt = FixedPointFormat::dac16();
        let (q, flags) = quantize(&wave(&[1.0]), fmt);
        assert_eq!(q.samples[0].re, 32767.0 / 32768.0);
        assert!(flags.saturated);
    }

    #[test]
    fn negative_full_scale_is_representable() {
        let fmt = FixedPointFormat::dac16();
        let (q, flags) = quantize(&wave(&[-1.0]), fmt);
        assert_eq!(q.samples[0].re, -1.0);
        assert!(!flags.saturated);
    }

    #[test]
    fn quantize_is_idempotent() {
        let fmt = FixedPointFormat::dac16();
        let vals: Vec<f64> = (0..400).map(|i| ((i as f64) * 0.7).sin() * 0.99).collect();
        let (once, _) = quantize(&wave(&vals), fmt);
        let (twice, flags) = quantize(&once, fmt);
        assert_eq!(once.samples, twice.samples);
        assert!(!flags.saturated);
    }

    #[test]
    fn ties_round_to_even() {
        // 0.5 LSB above an even code stays at the even code.
        let fmt = FixedPointFormat::new(16, 15).unwrap();
        let lsb = 1.0 / 32768.0;
        let (q, _) = quantize(&wave(&[2.5 * lsb]), fmt);
        assert_eq!(q.samples[0].re, 2.0 * lsb);
        let (q, _) = quantize(&wave(&[3.5 * lsb]), fmt);
        assert_eq!(q.samples[0].re, 4.0 * lsb);
    }

    #[test]
    fn rejects_bad_formats() {
        assert!(FixedPointFormat::new(16, 0).is_err());
        assert!(FixedPointFormat::new(16, 17).is_err());
        assert!(FixedPointFormat::new(40, 8).is_err());
    }
}
