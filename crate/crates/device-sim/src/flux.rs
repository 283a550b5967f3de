use num_complex::Complex64;

use crate::error::DeviceSimError;

/// Flux-tunable qubit biased at its sweet spot: frequency is first-order
/// insensitive to flux there, so the response to a flux excursion `x` is
/// `f(x) = f_sweet - curvature * (flux_gain * x)^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxQubit {
    /// Qubit frequency at the sweet spot, Hz.
    pub f_sweet: f64,
    /// Second-order flux sensitivity, Hz per (flux quantum)^2.
    pub curvature: f64,
    /// Flux quanta per unit of control waveform amplitude.
    pub flux_gain: f64,
}

impl FluxQubit {
    /// Frequency-vs-time trace for a flux control waveform.
    pub fn qubit_freq(&self, flux_waveform: &[f64]) -> Vec<f64> {
        flux_waveform
            .iter()
            .map(|&x| self.f_sweet - self.curvature * (self.flux_gain * x).powi(2))
            .collect()
    }

    /// Detuning from a drive parked at the sweet-spot frequency.
    pub fn detuning(&self, flux_waveform: &[f64]) -> Vec<f64> {
        flux_waveform
            .iter()
            .map(|&x| -self.curvature * (self.flux_gain * x).powi(2))
            .collect()
    }
}

/// Axis of the second pi/2 pulse in a Ramsey sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RamseyAxis {
    X,
    Y,
}

type Mat2 = [[Complex64; 2]; 2];

fn mat2_apply(m: &Mat2, v: [Complex64; 2]) -> [Complex64; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

fn rx_half_pi() -> Mat2 {
    let c = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mi = Complex64::new(0.0, -std::f64::consts::FRAC_1_SQRT_2);
    [[c, mi], [mi, c]]
}

fn ry_half_pi() -> Mat2 {
    let c = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[c, -c], [c, c]]
}

fn free_evolution(phase: f64) -> Mat2 {
    let zero = Complex64::new(0.0, 0.0);
    [
        [Complex64::new(1.0, 0.0), zero],
        [zero, Complex64::from_polar(1.0, -phase)],
    ]
}

/// Excited-state population after `X_pi/2 -- free evolution -- (X|Y)_pi/2`
/// where the free evolution accumulated phase `phi`.
fn ramsey_population_from_phase(phi: f64, axis: RamseyAxis) -> f64 {
    let second = match axis {
        RamseyAxis::X => rx_half_pi(),
        RamseyAxis::Y => ry_half_pi(),
    };
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let psi = mat2_apply(&rx_half_pi(), [one, zero]);
    let psi = mat2_apply(&free_evolution(phi), psi);
    let psi = mat2_apply(&second, psi);
    psi[1].norm_sqr()
}

/// Ramsey experiment against a flux pulse: prepare superposition, let the
/// qubit accumulate phase `2 pi * integral of detuning` for `t_samples` of
/// the flux waveform, then read out along the chosen axis.
///
/// The population comes from exact 2x2 unitary composition, not small-angle
/// approximations.
pub fn ramsey_population(
    q: &FluxQubit,
    flux_pulse: &[f64],
    dt: f64,
    t_samples: usize,
    axis: RamseyAxis,
) -> Result<f64, DeviceSimError> {
    if t_samples > flux_pulse.len() {
        return Err(DeviceSimError::BeyondPulseSupport {
            t: t_samples,
            len: flux_pulse.len(),
        });
    }
    if !(dt > 0.0) {
        return Err(DeviceSimError::NonPositiveDt(dt));
    }
    let phi = std::f64::consts::TAU
        * q.detuning(&flux_pulse[..t_samples])
            .iter()
            .map(|d| d * dt)
            .sum::<f64>();
    Ok(ramsey_population_from_phase(phi, axis))
}

/// Centered Ramsey quadratures `(X, Y) = (cos phi, sin phi)` for every
/// prefix length of the flux pulse, computed with one cumulative pass.
///
/// `X[t] = 2*P_X(t) - 1` and `Y[t] = 1 - 2*P_Y(t)` where `P_X`, `P_Y` are
/// the populations measured after a final X or Y pi/2 pulse.
pub fn ramsey_quadrature_traces(
    q: &FluxQubit,
    flux_pulse: &[f64],
    dt: f64,
) -> Result<(Vec<f64>, Vec<f64>), DeviceSimError> {
    if !(dt > 0.0) {
        return Err(DeviceSimError::NonPositiveDt(dt));
    }
    let det = q.detuning(flux_pulse);
    let mut phi = 0.0;
    let mut xs = Vec::with_capacity(det.len());
    let mut ys = Vec::with_capacity(det.len());
    for d in det {
        let px = ramsey_population_from_phase(phi, RamseyAxis::X);
        let py = ramsey_population_from_phase(phi, RamseyAxis::Y);
        xs.push(2.0 * px - 1.0);
        ys.push(1.0 - 2.0 * py);
        phi += std::f64::consts::TAU * d * dt;
    }
    Ok((xs, ys))
}

/// Weak spectroscopy probe: a Gaussian drive pulse whose Fourier-limited
/// linewidth sets the response width.
#[derive(Debug, Clone, Copy)]
pub struct SpectroscopyProbe {
    /// Gaussian sigma of the probe envelope, seconds.
    pub sigma: f64,
    /// Peak population at exact resonance (weak drive, below a pi pulse).
    pub peak_population: f64,
}

impl Default for SpectroscopyProbe {
    fn default() -> Self {
        Self {
            sigma: 7e-9,
            peak_population: 0.3,
        }
    }
}

impl SpectroscopyProbe {
    /// Lorentzian half-width at half-maximum in Hz, Fourier-limited by the
    /// probe duration: `sqrt(ln 2) / (2 pi sigma)`.
    pub fn linewidth(&self) -> f64 {
        (2f64.ln()).sqrt() / (std::f64::consts::TAU * self.sigma)
    }

    /// Probe window in samples: +/- 3 sigma around the probe center.
    pub fn window_samples(&self, dt: f64) -> usize {
        ((6.0 * self.sigma) / dt).ceil() as usize
    }
}

/// Qubit population measured by a weak Gaussian probe applied after `delay`
/// samples of the flux pulse.
///
/// The response is a Lorentzian in probe frequency centered on the
/// envelope-weighted average qubit frequency over the probe window; the
/// qubit frequency drifting during the probe shifts the line rather than
/// broadening it, which is exactly the systematic the long-time calibration
/// has to live with.
pub fn spectroscopy_population(
    q: &FluxQubit,
    flux_pulse: &[f64],
    dt: f64,
    delay_samples: usize,
    probe_freq: f64,
    probe: &SpectroscopyProbe,
) -> Result<f64, DeviceSimError> {
    if !(dt > 0.0) {
        return Err(DeviceSimError::NonPositiveDt(dt));
    }
    let window = probe.window_samples(dt);
    if delay_samples + window > flux_pulse.len() {
        return Err(DeviceSimError::BeyondPulseSupport {
            t: delay_samples + window,
            len: flux_pulse.len(),
        });
    }
    let freqs = q.qubit_freq(&flux_pulse[delay_samples..delay_samples + window]);
    let center = window as f64 / 2.0;
    let mut wsum = 0.0;
    let mut fsum = 0.0;
    for (i, f) in freqs.iter().enumerate() {
        let u = (i as f64 - center) / (probe.sigma / dt);
        let w = (-u * u).exp(); // envelope^2 weighting
        wsum += w;
        fsum += w * f;
    }
    let f_avg = fsum / wsum;
    let gamma = probe.linewidth();
    let x = (probe_freq - f_avg) / gamma;
    Ok(probe.peak_population / (1.0 + x * x))
}

/// Spectroscopy sweep over delays and probe frequencies; rows are delays.
pub fn spectroscopy_sweep(
    q: &FluxQubit,
    flux_pulse: &[f64],
    dt: f64,
    delays: &[usize],
    probe_freqs: &[f64],
    probe: &SpectroscopyProbe,
) -> Result<Vec<Vec<f64>>, DeviceSimError> {
    delays
        .iter()
        .map(|&d| {
            probe_freqs
                .iter()
                .map(|&f| spectroscopy_population(q, flux_pulse, dt, d, f, probe))
                .collect()
        })
        .collect()
}
