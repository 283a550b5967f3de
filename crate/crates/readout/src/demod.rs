use num_complex::Complex64;

use dsp_core::{DdsChannel, SampleClock};

use crate::bins::{assign_bin, fold_to_first_nyquist};
use crate::error::ReadoutError;
use crate::pfb::{ChannelStream, PfbChannelizer, PFB_BRANCHES};

/// How many channels the firmware can integrate at once.
pub const MAX_SIMULTANEOUS_READOUTS: usize = 4;

/// Accumulated I/Q from one readout window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadoutResult {
    pub i: f64,
    pub q: f64,
    pub channel: usize,
    pub n_samples: usize,
}

impl ReadoutResult {
    pub fn complex(&self) -> Complex64 {
        Complex64::new(self.i, self.q)
    }

    pub fn magnitude(&self) -> f64 {
        self.complex().norm()
    }

    pub fn phase(&self) -> f64 {
        self.complex().arg()
    }
}

/// Demodulate-and-accumulate against the channel's DDS:
/// `sum over k of stream[k] * conj(exp(i * phase(k)))`.
///
/// The DDS runs on the decimated clock (`stream.rate_hz`), with `k` counting
/// decimated samples from the stream origin, so the result phase is a pure
/// function of the program's reset epochs.
pub fn demodulate_accumulate(
    stream: &ChannelStream,
    dds: &DdsChannel,
    window: usize,
) -> Result<ReadoutResult, ReadoutError> {
    demodulate_accumulate_from(stream, dds, 0, window)
}

/// [`demodulate_accumulate`] starting at decimated sample `skip` (e.g. past
/// the filter transient). The DDS phase is still referenced to the stream
/// origin, not to the window start.
pub fn demodulate_accumulate_from(
    stream: &ChannelStream,
    dds: &DdsChannel,
    skip: usize,
    window: usize,
) -> Result<ReadoutResult, ReadoutError> {
    if window == 0 {
        return Err(ReadoutError::EmptyWindow);
    }
    if skip + window > stream.samples.len() {
        return Err(ReadoutError::WindowTooLong {
            window: skip + window,
            len: stream.samples.len(),
        });
    }
    let clock = SampleClock::new(stream.rate_hz).expect("channel stream rate is positive");
    let mut acc = Complex64::new(0.0, 0.0);
    for k in skip..skip + window {
        let phase = dds
            .phase_at(&clock, k as i64)
            .expect("stream indices are non-negative");
        acc += stream.samples[k] * Complex64::from_polar(1.0, -phase);
    }
    Ok(ReadoutResult {
        i: acc.re,
        q: acc.im,
        channel: stream.channel,
        n_samples: window,
    })
}

/// Demodulate several channels over one window, enforcing the 4-readout
/// hardware limit.
pub fn demodulate_simultaneous(
    requests: &[(&ChannelStream, DdsChannel)],
    skip: usize,
    window: usize,
) -> Result<Vec<ReadoutResult>, ReadoutError> {
    if requests.len() > MAX_SIMULTANEOUS_READOUTS {
        return Err(ReadoutError::TooManyReadouts {
            count: requests.len(),
            max: MAX_SIMULTANEOUS_READOUTS,
        });
    }
    requests
        .iter()
        .map(|(stream, dds)| demodulate_accumulate_from(stream, dds, skip, window))
        .collect()
}

/// A tone recovered from the channelized stream, corrected for the filter
/// bank's complex gain at the tone's offset from its channel center.
#[derive(Debug, Clone, Copy)]
pub struct ToneEstimate {
    /// Recovered amplitude of the real tone `A cos(2 pi f t + phi)`.
    pub amplitude: f64,
    /// Recovered phase `phi` in radians.
    pub phase: f64,
    pub channel: usize,
    /// Where the tone folded to in the first Nyquist zone, Hz.
    pub folded_hz: f64,
}

/// Recover a single tone's amplitude and phase from channelized real input.
///
/// `freq_hz` is the tone frequency before sampling; it may sit in any
/// Nyquist zone. Demodulation happens in the channel whose center is nearest
/// the folded tone (where the filter gain is highest; [`assign_bin`] edges
/// and centers are offset by half a bin), and the estimate divides out the
/// filter-bank response at the tone's offset from that center.
pub fn recover_tone(
    pfb: &PfbChannelizer,
    channels: &[ChannelStream],
    freq_hz: f64,
    f_adc: f64,
    skip: usize,
    window: usize,
) -> Result<ToneEstimate, ReadoutError> {
    let folded = fold_to_first_nyquist(freq_hz, f_adc);
    assign_bin(freq_hz, f_adc)?;
    let spacing = f_adc / PFB_BRANCHES as f64;
    let bin = ((folded.abs() / spacing).round() as usize).min(channels.len() - 1);
    let stream = &channels[bin];
    let delta = folded.abs() - stream.center_hz;
    let dds = DdsChannel::new(delta, 0.0, 1.0);
    let result = demodulate_accumulate_from(stream, &dds, skip, window)?;
    let gain = pfb.response(delta);
    let est = result.complex() / (window as f64 * gain);
    // A negative folded frequency conjugates the positive-frequency
    // component the channelizer sees, flipping the recovered phase.
    let phase = if folded < 0.0 { -est.arg() } else { est.arg() };
    Ok(ToneEstimate {
        amplitude: est.norm(),
        phase,
        channel: bin,
        folded_hz: folded,
    })
}

/// Center frequency of channel `k` for a sampler at `f_adc`.
pub fn channel_center(k: usize, f_adc: f64) -> f64 {
    k as f64 * f_adc / PFB_BRANCHES as f64
}
