use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Slow phase-wander process of one analog signal generator: a periodic
/// component from phase-locked-loop imperfection, a linear thermal ramp,
/// and an optional seeded random walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftConfig {
    /// Amplitude of the periodic wander, radians.
    pub periodic_amp: f64,
    /// Period of the wander, seconds (6 minutes is typical of a struggling
    /// reference loop).
    pub period: f64,
    /// Starting phase of the periodic component, radians.
    pub periodic_phase: f64,
    /// Linear drift rate, radians per second (thermal).
    pub ramp: f64,
    /// Standard deviation of the per-evaluation random-walk step, radians.
    pub walk_sigma: f64,
}

impl Default for DriftConfig {
    fn default() -> Self {
        Self {
            periodic_amp: 0.3,
            period: 360.0,
            periodic_phase: 0.0,
            ramp: 2.0e-5,
            walk_sigma: 0.0,
        }
    }
}

impl DriftConfig {
    /// No drift at all (an ideal generator).
    pub fn none() -> Self {
        Self {
            periodic_amp: 0.0,
            period: 360.0,
            periodic_phase: 0.0,
            ramp: 0.0,
            walk_sigma: 0.0,
        }
    }
}

/// One analog LO channel: a free-running generator at `f_lo` whose phase
/// can never be reset, plus its drift process.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalogLoChannel {
    pub f_lo: f64,
    pub drift: DriftConfig,
}

/// Analog up-conversion model: per-channel free-running LOs.
///
/// The total phase of channel `i` at time `t` is
/// `2 pi f_lo_i t + drift_i(t) + phi_program`, where the first term
/// accumulates forever (there is no reset) and the drift term is
/// reproducible from the model seed.
#[derive(Debug, Clone)]
pub struct AnalogLoModel {
    pub channels: Vec<AnalogLoChannel>,
    pub seed: u64,
}

impl AnalogLoModel {
    pub fn new(channels: Vec<AnalogLoChannel>, seed: u64) -> Self {
        Self { channels, seed }
    }

    /// LO phases of one channel at a list of absolute times (seconds).
    ///
    /// Times must be non-decreasing for the random-walk component to mean
    /// anything; the walk takes one step per evaluation point.
    pub fn channel_phases(&self, channel: usize, times: &[f64]) -> Vec<f64> {
        let ch = &self.channels[channel];
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ (channel as u64).wrapping_mul(0x9e3779b9));
        let mut walk = 0.0f64;
        times
            .iter()
            .map(|&t| {
                if ch.drift.walk_sigma > 0.0 {
                    let gauss: f64 = {
                        // Box-Muller from two uniforms keeps us off
                        // rand_distr for one draw.
                        let u1: f64 = rng.gen_range(1e-12..1.0);
                        let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                        (-2.0 * u1.ln()).sqrt() * u2.cos()
                    };
                    walk += ch.drift.walk_sigma * gauss;
                }
                std::f64::consts::TAU * ch.f_lo * t
                    + ch.drift.periodic_amp
                        * (std::f64::consts::TAU * t / ch.drift.period + ch.drift.periodic_phase).sin()
                    + ch.drift.ramp * t
                    + walk
            })
            .collect()
    }

    /// Drift-only part of the phase (no `2 pi f t` accumulation), useful
    /// when the LO frequency combination cancels algebraically and only the
    /// wander remains observable.
    pub fn channel_drift(&self, channel: usize, times: &[f64]) -> Vec<f64> {
        let mut clone = self.clone();
        clone.channels[channel].f_lo = 0.0;
        clone.channel_phases(channel, times)
    }
}
