use num_complex::Complex64;

use dsp_core::ComplexWaveform;

use crate::error::DeviceSimError;

/// Sum-of-exponentials step-response model of a distorted control line.
///
/// The step response is `s(t) = 1 + sum_k a_k * exp(-t / tau_k)` with unit
/// DC gain by construction. Applying the channel to a sampled waveform uses
/// one one-pole recursion per term, which reproduces `s` exactly at the
/// sample times for step inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferFunction {
    /// `(a_k, tau_k)` pairs; amplitudes dimensionless, time constants in
    /// seconds.
    terms: Vec<(f64, f64)>,
}

impl TransferFunction {
    pub fn new(terms: Vec<(f64, f64)>) -> Result<Self, DeviceSimError> {
        for &(_, tau) in &terms {
            if !(tau > 0.0) || !tau.is_finite() {
                return Err(DeviceSimError::NonPositiveTau(tau));
            }
        }
        Ok(Self { terms })
    }

    /// The undistorted line.
    pub fn identity() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    /// Closed-form step response at time `t` seconds.
    pub fn step_response(&self, t: f64) -> f64 {
        1.0 + self
            .terms
            .iter()
            .map(|&(a, tau)| a * (-t / tau).exp())
            .sum::<f64>()
    }

    /// Instantaneous gain `s(0+) = 1 + sum a_k`: what the line transmits of
    /// a step edge at the first sample.
    pub fn instantaneous_gain(&self) -> f64 {
        1.0 + self.terms.iter().map(|&(a, _)| a).sum::<f64>()
    }

    /// Per-term pole `p_k = exp(-dt / tau_k)` for a given sample interval.
    pub fn poles(&self, dt: f64) -> Vec<f64> {
        self.terms.iter().map(|&(_, tau)| (-dt / tau).exp()).collect()
    }

    /// Discrete impulse response truncated to `len` samples.
    ///
    /// `h[0] = 1 + sum a_k`, `h[n] = sum_k a_k p_k^(n-1) (p_k - 1)` for
    /// n >= 1; this is exactly the filter [`apply_channel_real`] implements.
    pub fn impulse_response(&self, dt: f64, len: usize) -> Vec<f64> {
        let poles = self.poles(dt);
        let mut h = Vec::with_capacity(len);
        if len == 0 {
            return h;
        }
        h.push(self.instantaneous_gain());
        let mut pow: Vec<f64> = vec![1.0; poles.len()];
        for _ in 1..len {
            let mut v = 0.0;
            for ((&(a, _), &p), pw) in self.terms.iter().zip(&poles).zip(pow.iter_mut()) {
                v += a * *pw * (p - 1.0);
                *pw *= p;
            }
            h.push(v);
        }
        h
    }
}

/// Send a real sampled waveform through the distorted line.
///
/// Exact for the exponential family: each term runs the recursion
/// `v_k[n] = p_k v_k[n-1] + x[n] - x[n-1]` and the output is
/// `y[n] = x[n] + sum_k a_k v_k[n]` (x[-1] taken as 0, i.e. the line is
/// relaxed before the waveform starts).
pub fn apply_channel_real(
    x: &[f64],
    h: &TransferFunction,
    dt: f64,
) -> Result<Vec<f64>, DeviceSimError> {
    if !(dt > 0.0) {
        return Err(DeviceSimError::NonPositiveDt(dt));
    }
    let poles = h.poles(dt);
    let mut state = vec![0.0f64; poles.len()];
    let mut prev = 0.0f64;
    let mut y = Vec::with_capacity(x.len());
    for &xn in x {
        let dx = xn - prev;
        let mut acc = xn;
        for ((&(a, _), &p), v) in h.terms.iter().zip(&poles).zip(state.iter_mut()) {
            *v = p * *v + dx;
            acc += a * *v;
        }
        y.push(acc);
        prev = xn;
    }
    Ok(y)
}

/// [`apply_channel_real`] for complex waveforms; the line acts on I and Q
/// independently.
pub fn apply_channel(
    w: &ComplexWaveform,
    h: &TransferFunction,
) -> Result<ComplexWaveform, DeviceSimError> {
    let dt = 1.0 / w.clock.f_s;
    let poles = h.poles(dt);
    let mut state = vec![Complex64::new(0.0, 0.0); poles.len()];
    let mut prev = Complex64::new(0.0, 0.0);
    let mut samples = Vec::with_capacity(w.samples.len());
    for &xn in &w.samples {
        let dx = xn - prev;
        let mut acc = xn;
        for ((&(a, _), &p), v) in h.terms.iter().zip(&poles).zip(state.iter_mut()) {
            *v = p * *v + dx;
            acc += a * *v;
        }
        samples.push(acc);
        prev = xn;
    }
    Ok(ComplexWaveform::new(samples, w.clock, w.start))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_channel_passes_through() {
        let h = TransferFunction::identity();
        let x: Vec<f64> = (0..100).map(|i| (i as f64 * 0.13).sin()).collect();
        let y = apply_channel_real(&x, &h, 1e-9).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn step_through_single_pole_matches_closed_form() {
        let tau = 100e-9;
        let h = TransferFunction::new(vec![(-0.2, tau)]).unwrap();
        let dt = 1e-9;
        let n = 1000;
        let x = vec![1.0; n];
        let y = apply_channel_real(&x, &h, dt).unwrap();
        for t_check in [0.0, tau, 5.0 * tau] {
            let idx = (t_check / dt).round() as usize;
            let expect = 1.0 - 0.2 * (-t_check / tau).exp();
            assert!(
                (y[idx] - expect).abs() < 1e-12,
                "t={t_check}: {} vs {expect}",
                y[idx]
            );
        }
    }

    #[test]
    fn multi_term_step_matches_closed_form_everywhere() {
        let h = TransferFunction::new(vec![
            (-0.15, 30e-9),
            (0.08, 200e-9),
            (-0.03, 2e-6),
            (0.01, 8e-6),
        ])
        .unwrap();
        let dt = 0.5e-9;
        let n = 40_000;
        let x = vec![1.0; n];
        let y = apply_channel_real(&x, &h, dt).unwrap();
        let mut worst = 0.0f64;
        for (i, &v) in y.iter().enumerate() {
            worst = worst.max((v - h.step_response(i as f64 * dt)).abs());
        }
        assert!(worst < 1e-12, "worst deviation {worst}");
    }

    #[test]
    fn rejects_bad_tau() {
        assert!(TransferFunction::new(vec![(0.1, 0.0)]).is_err());
        assert!(TransferFunction::new(vec![(0.1, -1e-9)]).is_err());
    }

    #[test]
    fn impulse_response_matches_filter_on_impulse() {
        let h = TransferFunction::new(vec![(-0.2, 50e-9), (0.05, 400e-9)]).unwrap();
        let dt = 1e-9;
        let mut x = vec![0.0; 256];
        x[0] = 1.0;
        let y = apply_channel_real(&x, &h, dt).unwrap();
        let hd = h.impulse_response(dt, 256);
        for (a, b) in y.iter().zip(&hd) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}
