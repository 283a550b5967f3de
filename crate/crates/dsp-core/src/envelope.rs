use num_complex::Complex64;

use crate::error::DspError;

/// Upsampling factor between the interpolated envelope rate and the DAC rate.
pub const INTERP_FACTOR: usize = 16;

/// Taps per polyphase branch of the interpolation filter.
const INTERP_TAPS_PER_BRANCH: usize = 16;

/// Kaiser window shape parameter for the interpolation prototype.
const INTERP_KAISER_BETA: f64 = 8.0;

/// Tag describing how an envelope was constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeShape {
    Gaussian,
    Drag,
    Triangle,
    Flat,
    User,
}

/// A pulse envelope: complex samples at either the full DAC rate
/// (`rate_divisor == 1`) or 1/16 of it (`rate_divisor == 16`).
///
/// Sample magnitudes never exceed full scale 1.0; constructors enforce this.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub samples: Vec<Complex64>,
    pub rate_divisor: u32,
    pub shape: EnvelopeShape,
}

impl Envelope {
    /// Envelope from raw samples. Rejects empty input, magnitudes above
    /// full scale, and rate divisors other than 1 or 16.
    pub fn from_samples(
        samples: Vec<Complex64>,
        rate_divisor: u32,
        shape: EnvelopeShape,
    ) -> Result<Self, DspError> {
        if samples.is_empty() {
            return Err(DspError::EmptyEnvelope);
        }
        if rate_divisor != 1 && rate_divisor != 16 {
            return Err(DspError::BadRateDivisor(rate_divisor));
        }
        if let Some(bad) = samples.iter().find(|s| !s.norm().is_finite() || s.norm() > 1.0 + 1e-12)
        {
            return Err(DspError::EnvelopeOverRange(bad.norm()));
        }
        Ok(Self {
            samples,
            rate_divisor,
            shape,
        })
    }

    /// Flat (rectangular) envelope of amplitude 1.
    pub fn flat(len: usize) -> Self {
        Self {
            samples: vec![Complex64::new(1.0, 0.0); len.max(1)],
            rate_divisor: 1,
            shape: EnvelopeShape::Flat,
        }
    }

    /// Gaussian envelope, peak 1 at the midpoint.
    pub fn gaussian(len: usize, sigma: f64) -> Self {
        let len = len.max(1);
        let c = (len - 1) as f64 / 2.0;
        let samples = (0..len)
            .map(|i| {
                let x = (i as f64 - c) / sigma;
                Complex64::new((-0.5 * x * x).exp(), 0.0)
            })
            .collect();
        Self {
            samples,
            rate_divisor: 1,
            shape: EnvelopeShape::Gaussian,
        }
    }

    /// DRAG envelope: Gaussian in-phase, scaled Gaussian derivative in
    /// quadrature, renormalized so the peak magnitude is 1.
    pub fn drag(len: usize, sigma: f64, beta: f64) -> Self {
        let len = len.max(1);
        let c = (len - 1) as f64 / 2.0;
        let mut samples: Vec<Complex64> = (0..len)
            .map(|i| {
                let x = (i as f64 - c) / sigma;
                let g = (-0.5 * x * x).exp();
                Complex64::new(g, -beta * x / sigma * g)
            })
            .collect();
        let peak = samples.iter().map(|s| s.norm()).fold(0.0, f64::max);
        if peak > 1.0 {
            for s in &mut samples {
                *s /= peak;
            }
        }
        Self {
            samples,
            rate_divisor: 1,
            shape: EnvelopeShape::Drag,
        }
    }

    /// Symmetric triangle envelope, peak 1.
    pub fn triangle(len: usize) -> Self {
        let len = len.max(1);
        let c = (len - 1) as f64 / 2.0;
        let samples = (0..len)
            .map(|i| {
                let v = if c > 0.0 {
                    1.0 - (i as f64 - c).abs() / c
                } else {
                    1.0
                };
                Complex64::new(v, 0.0)
            })
            .collect();
        Self {
            samples,
            rate_divisor: 1,
            shape: EnvelopeShape::Triangle,
        }
    }

    /// Same envelope marked as interpolated (samples at 1/16 the DAC rate).
    pub fn at_interpolated_rate(mut self) -> Self {
        self.rate_divisor = 16;
        self
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Length in DAC samples once any interpolation is applied.
    pub fn output_len(&self) -> usize {
        self.samples.len() * self.rate_divisor as usize
    }
}

/// Modified Bessel function of the first kind, order zero (power series).
fn bessel_i0(x: f64) -> f64 {
    let mut sum = 1.0;
    let mut term = 1.0;
    let half_x = x / 2.0;
    for k in 1..64 {
        term *= half_x / k as f64;
        let t2 = term * term;
        sum += t2;
        if t2 < 1e-18 * sum {
            break;
        }
    }
    sum
}

/// Kaiser window of length `n` with shape parameter `beta`.
///
/// Symmetric; endpoints fall to `1/I0(beta)`. Used for the interpolation
/// prototype here and exported for other filter designs in the workspace.
pub fn kaiser_window(n: usize, beta: f64) -> Vec<f64> {
    let denom = bessel_i0(beta);
    let center = (n - 1) as f64 / 2.0;
    (0..n)
        .map(|k| {
            let u = if center > 0.0 {
                (k as f64 - center) / center
            } else {
                0.0
            };
            bessel_i0(beta * (1.0 - u * u).max(0.0).sqrt()) / denom
        })
        .collect()
}

/// Polyphase branches of the interpolation prototype.
///
/// The prototype is a Kaiser-windowed sinc of length 16*16 + 1 with cutoff at
/// the envelope Nyquist rate, split into 16 branches. Each branch is
/// normalized to unit sum so a constant envelope interpolates to exactly the
/// same constant; branch 0 reduces to a pure delay, so every 16th output
/// sample reproduces an input sample exactly.
fn interp_branches() -> Vec<Vec<f64>> {
    let l = INTERP_FACTOR;
    let n = l * INTERP_TAPS_PER_BRANCH + 1;
    let center = (n - 1) as f64 / 2.0;
    let window = kaiser_window(n, INTERP_KAISER_BETA);
    let proto: Vec<f64> = (0..n)
        .map(|k| {
            let t = (k as f64 - center) / l as f64;
            let sinc = if t == 0.0 {
                1.0
            } else {
                (std::f64::consts::PI * t).sin() / (std::f64::consts::PI * t)
            };
            sinc * window[k]
        })
        .collect();
    (0..l)
        .map(|r| {
            let mut taps: Vec<f64> = (0..n).filter(|k| k % l == r).map(|k| proto[k]).collect();
            let sum: f64 = taps.iter().sum();
            for t in &mut taps {
                *t /= sum;
            }
            taps
        })
        .collect()
}

/// The interpolator's impulse response: what a unit impulse in the middle of
/// a zero envelope interpolates to, trimmed to the kernel support.
pub fn interpolation_kernel() -> Vec<f64> {
    let branches = interp_branches();
    let l = INTERP_FACTOR;
    // Reassemble the normalized prototype in output-sample order.
    let max_t = branches.iter().map(|b| b.len()).max().unwrap();
    let mut kernel = Vec::new();
    for t in 0..max_t {
        for (r, b) in branches.iter().enumerate() {
            let _ = r;
            if t < b.len() {
                kernel.push(b[t]);
            } else {
                kernel.push(0.0);
            }
        }
    }
    let _ = l;
    kernel
}

/// Upsample an interpolated-rate envelope (rate divisor 16) to the DAC rate.
///
/// Output length is exactly 16x the input length. Boundary samples are
/// edge-replicated, so constant envelopes stay constant out to the ends.
/// For band-limited content the reconstruction matches ideal band-limited
/// upsampling within the filter's ripple (see the crate's property tests).
pub fn interpolate_envelope(env: &Envelope) -> Result<Envelope, DspError> {
    if env.samples.is_empty() {
        return Err(DspError::EmptyEnvelope);
    }
    if env.rate_divisor != 16 {
        return Err(DspError::BadRateDivisor(env.rate_divisor));
    }
    let branches = interp_branches();
    let l = INTERP_FACTOR;
    let half = INTERP_TAPS_PER_BRANCH / 2;
    let input = &env.samples;
    let len = input.len() as i64;
    let clamped = |i: i64| -> Complex64 { input[i.clamp(0, len - 1) as usize] };

    let mut out = Vec::with_capacity(input.len() * l);
    for q in 0..len {
        for branch in &branches {
            let mut acc = Complex64::new(0.0, 0.0);
            for (t, &tap) in branch.iter().enumerate() {
                acc += clamped(q + half as i64 - t as i64) * tap;
            }
            out.push(acc);
        }
    }
    // Ringing on sharp full-scale edges can overshoot full scale; saturate
    // those samples the way the DAC would.
    for s in &mut out {
        let norm = s.norm();
        if norm > 1.0 {
            *s /= norm;
        }
    }
    Ok(Envelope {
        samples: out,
        rate_divisor: 1,
        shape: env.shape,
    })
}
