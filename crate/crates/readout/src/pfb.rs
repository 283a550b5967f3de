use num_complex::Complex64;

use dsp_core::kaiser_window;

use crate::error::ReadoutError;

/// Number of readout channels exposed by the filter bank.
pub const N_CHANNELS: usize = 8;

/// Internal polyphase branches. Channel spacing is `f_s / PFB_BRANCHES`
/// and real input covers channels `0..N_CHANNELS` of the transform.
pub const PFB_BRANCHES: usize = 16;

/// Decimation between ADC samples and channel samples. Half the branch
/// count, which makes the bank 2x oversampled and gives the 50% overlap.
const DECIMATION: usize = 8;

/// Polyphase filter bank configuration.
#[derive(Debug, Clone)]
pub struct PfbConfig {
    /// Taps per polyphase branch; the prototype spans
    /// `taps_per_branch * PFB_BRANCHES` ADC samples.
    pub taps_per_branch: usize,
    /// Kaiser shape parameter for the default prototype.
    pub kaiser_beta: f64,
    /// Explicit prototype coefficients (e.g. firmware taps loaded from CSV).
    /// When set, `taps_per_branch` is derived from its length.
    pub prototype: Option<Vec<f64>>,
}

impl Default for PfbConfig {
    fn default() -> Self {
        Self {
            taps_per_branch: 16,
            kaiser_beta: 8.0,
            prototype: None,
        }
    }
}

/// One decimated channel stream produced by [`PfbChannelizer::channelize_real`].
#[derive(Debug, Clone)]
pub struct ChannelStream {
    /// Channel index, 0..8.
    pub channel: usize,
    /// Channel center frequency in Hz (`channel * f_s / 16`).
    pub center_hz: f64,
    /// Sample rate of this stream in Hz (`f_s / 8`).
    pub rate_hz: f64,
    /// Decimated samples. Sample `s` corresponds to ADC sample `s * 8`.
    pub samples: Vec<Complex64>,
    /// Index of the first sample free of filter fill-in transients;
    /// earlier samples are computed from a partially empty delay line.
    pub valid_from: usize,
}

impl ChannelStream {
    /// Post-transient view of the stream.
    pub fn valid(&self) -> &[Complex64] {
        &self.samples[self.valid_from.min(self.samples.len())..]
    }
}

/// 8-channel polyphase filter bank, 2x oversampled (50% overlap).
///
/// Channel `k` is centered at `k * f_s/16` and decimated by 8: output frame
/// `s` evaluates the bandpass filter at ADC sample `s*8`. The per-channel
/// complex gain for a tone offset `delta` from the channel center is
/// [`PfbChannelizer::response`], which readout uses to undo filter droop.
pub struct PfbChannelizer {
    f_s: f64,
    prototype: Vec<f64>,
    /// Twiddle table: `twiddle[k][r] = exp(-i 2 pi k r / 16)`.
    twiddle: Vec<Vec<Complex64>>,
}

impl PfbChannelizer {
    pub fn new(cfg: &PfbConfig, f_s: f64) -> Result<Self, ReadoutError> {
        let prototype = match &cfg.prototype {
            Some(p) => {
                if p.len() < PFB_BRANCHES {
                    return Err(ReadoutError::PrototypeTooShort {
                        min: PFB_BRANCHES,
                        got: p.len(),
                    });
                }
                let sum: f64 = p.iter().sum();
                p.iter().map(|t| t / sum).collect()
            }
            None => Self::design_prototype(cfg.taps_per_branch, cfg.kaiser_beta),
        };
        let twiddle = (0..PFB_BRANCHES)
            .map(|k| {
                (0..PFB_BRANCHES)
                    .map(|r| {
                        let ang =
                            -std::f64::consts::TAU * (k * r % PFB_BRANCHES) as f64
                                / PFB_BRANCHES as f64;
                        Complex64::new(ang.cos(), ang.sin())
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            f_s,
            prototype,
            twiddle,
        })
    }

    /// Kaiser-windowed sinc lowpass prototype, normalized to unit DC gain.
    ///
    /// The passband half-width is half the channel spacing, i.e. the full
    /// channel width is `f_s/16` and adjacent channel responses cross at
    /// half amplitude midway between centers. A tone at one channel's center
    /// is deep in its neighbors' stopbands.
    fn design_prototype(taps_per_branch: usize, beta: f64) -> Vec<f64> {
        let n = taps_per_branch * PFB_BRANCHES;
        let center = (n - 1) as f64 / 2.0;
        let window = kaiser_window(n, beta);
        // Two-sided cutoff f_s/32 -> normalized width 2*(1/32).
        let nu = 1.0 / PFB_BRANCHES as f64;
        let mut taps: Vec<f64> = (0..n)
            .map(|m| {
                let t = nu * (m as f64 - center);
                let sinc = if t == 0.0 {
                    1.0
                } else {
                    (std::f64::consts::PI * t).sin() / (std::f64::consts::PI * t)
                };
                sinc * window[m]
            })
            .collect();
        let sum: f64 = taps.iter().sum();
        for t in &mut taps {
            *t /= sum;
        }
        taps
    }

    pub fn prototype(&self) -> &[f64] {
        &self.prototype
    }

    /// ADC samples spanned by the filter.
    pub fn span(&self) -> usize {
        self.prototype.len()
    }

    /// Complex gain seen by a tone `delta_hz` away from a channel center.
    pub fn response(&self, delta_hz: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, &h) in self.prototype.iter().enumerate() {
            let ang = -std::f64::consts::TAU * delta_hz * m as f64 / self.f_s;
            acc += h * Complex64::new(ang.cos(), ang.sin());
        }
        acc
    }

    /// Channelize a real ADC stream into 8 decimated channel streams.
    ///
    /// Outputs follow the one-sided (analytic) spectrum convention: every
    /// channel is scaled by 2, so a real tone `A*cos(2 pi f t + phi)` at
    /// offset `delta` from a channel center appears there with complex
    /// amplitude `A * H(delta) * exp(i phi)`. DC content reads doubled.
    pub fn channelize_real(&self, input: &[f64]) -> Result<Vec<ChannelStream>, ReadoutError> {
        self.channelize_impl(input.len(), |n| Complex64::new(input[n], 0.0), true)
    }

    /// Channelize an analytic (complex) stream; content must lie in
    /// `[0, f_s/2)` to land in the 8 exposed channels. Unit gain.
    pub fn channelize_complex(
        &self,
        input: &[Complex64],
    ) -> Result<Vec<ChannelStream>, ReadoutError> {
        self.channelize_impl(input.len(), |n| input[n], false)
    }

    fn channelize_impl(
        &self,
        len: usize,
        sample: impl Fn(usize) -> Complex64,
        real_input: bool,
    ) -> Result<Vec<ChannelStream>, ReadoutError> {
        let span = self.span();
        if len < span {
            return Err(ReadoutError::InputTooShort { len, span });
        }
        let n_frames = len / DECIMATION;
        let valid_from = span.div_ceil(DECIMATION);
        let mut channels: Vec<ChannelStream> = (0..N_CHANNELS)
            .map(|k| ChannelStream {
                channel: k,
                center_hz: k as f64 * self.f_s / PFB_BRANCHES as f64,
                rate_hz: self.f_s / DECIMATION as f64,
                samples: Vec::with_capacity(n_frames),
                valid_from,
            })
            .collect();

        let mut folded = [Complex64::new(0.0, 0.0); PFB_BRANCHES];
        for s in 0..n_frames {
            let p = s * DECIMATION;
            folded.fill(Complex64::new(0.0, 0.0));
            // Fold h[m]*x[p-m] into residue classes r = (p - m) mod 16.
            let m_max = span.min(p + 1);
            for m in 0..m_max {
                let n = p - m;
                folded[n % PFB_BRANCHES] += self.prototype[m] * sample(n);
            }
            for k in 0..N_CHANNELS {
                let mut acc = Complex64::new(0.0, 0.0);
                for r in 0..PFB_BRANCHES {
                    acc += folded[r] * self.twiddle[k][r];
                }
                if real_input {
                    acc *= 2.0;
                }
                channels[k].samples.push(acc);
            }
        }
        Ok(channels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tone(f: f64, f_s: f64, phi: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| (std::f64::consts::TAU * f * i as f64 / f_s + phi).cos())
            .collect()
    }

    fn channel_energy(ch: &ChannelStream) -> f64 {
        ch.valid().iter().map(|s| s.norm_sqr()).sum()
    }

    #[test]
    fn dc_lands_in_channel_zero() {
        let f_s = 2_457_600_000.0;
        let pfb = PfbChannelizer::new(&PfbConfig::default(), f_s).unwrap();
        let input = vec![1.0; 4096];
        let chans = pfb.channelize_real(&input).unwrap();
        let energies: Vec<f64> = chans.iter().map(channel_energy).collect();
        let total: f64 = energies.iter().sum();
        assert!(
            energies[0] / total > 0.999,
            "DC energy fraction {}",
            energies[0] / total
        );
    }

    #[test]
    fn tone_at_channel_three_center_stays_there() {
        let f_s = 2_457_600_000.0;
        let pfb = PfbChannelizer::new(&PfbConfig::default(), f_s).unwrap();
        let f = 3.0 * f_s / 16.0;
        let input = tone(f, f_s, 0.3, 8192);
        let chans = pfb.channelize_real(&input).unwrap();
        let energies: Vec<f64> = chans.iter().map(channel_energy).collect();
        let total: f64 = energies.iter().sum();
        assert!(
            energies[3] / total >= 0.99,
            "channel 3 fraction {}",
            energies[3] / total
        );
    }

    #[test]
    fn midway_tone_splits_evenly() {
        let f_s = 2_457_600_000.0;
        let pfb = PfbChannelizer::new(&PfbConfig::default(), f_s).unwrap();
        let f = 2.5 * f_s / 16.0;
        let input = tone(f, f_s, 0.0, 8192);
        let chans = pfb.channelize_real(&input).unwrap();
        let e2 = channel_energy(&chans[2]);
        let e3 = channel_energy(&chans[3]);
        let asym = (e2 - e3).abs() / (e2 + e3);
        assert!(asym < 0.01, "energy asymmetry {asym}");
    }

    #[test]
    fn short_input_rejected() {
        let pfb = PfbChannelizer::new(&PfbConfig::default(), 1e9).unwrap();
        let input = vec![0.0; pfb.span() - 1];
        assert!(matches!(
            pfb.channelize_real(&input),
            Err(ReadoutError::InputTooShort { .. })
        ));
    }

    #[test]
    fn custom_prototype_is_normalized() {
        let cfg = PfbConfig {
            prototype: Some(vec![2.0; 64]),
            ..Default::default()
        };
        let pfb = PfbChannelizer::new(&cfg, 1e9).unwrap();
        let sum: f64 = pfb.prototype().iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn channel_center_gain_is_unity() {
        let f_s = 2_457_600_000.0;
        let pfb = PfbChannelizer::new(&PfbConfig::default(), f_s).unwrap();
        let h0 = pfb.response(0.0);
        assert!((h0 - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }
}
