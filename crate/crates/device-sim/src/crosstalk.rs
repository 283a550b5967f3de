use num_complex::Complex64;

use crate::error::DeviceSimError;

/// Flux-crosstalk ground truth for the two-qubit drive experiment.
///
/// Lines are ordered `[coupler, qubit_a, qubit_b]`. `matrix[i][j]` is the
/// flux seen by line `i`'s loop per unit drive on line `j`; the diagonal is
/// 1 and off-diagonal magnitudes stay at or below 0.25.
///
/// Driving the coupler leaks onto both qubit loops, Stark-shifting the
/// two-photon `|00> <-> |11>` resonance below the bare sum frequency
/// `f_a + f_b`. Compensation pulses on the qubit lines can null the
/// residual and restore the bare resonance.
#[derive(Debug, Clone, PartialEq)]
pub struct CrosstalkScenario {
    pub matrix: [[f64; 3]; 3],
    /// Stark coefficient, Hz per (residual drive amplitude)^2.
    pub stark_coeff: f64,
    /// Bare qubit frequencies, Hz.
    pub f_a: f64,
    pub f_b: f64,
    /// Two-photon Rabi rate at full contrast, Hz.
    pub rabi_rate: f64,
    /// Coupler drive amplitude (dimensionless units of the crosstalk matrix).
    pub drive_amp: f64,
    /// Coupler drive phase, radians.
    pub drive_phase: f64,
}

impl CrosstalkScenario {
    pub fn new(matrix: [[f64; 3]; 3], stark_coeff: f64, f_a: f64, f_b: f64) -> Result<Self, DeviceSimError> {
        for i in 0..3 {
            if matrix[i][i] != 1.0 {
                return Err(DeviceSimError::BadCrosstalkMatrix(format!(
                    "diagonal element [{i}][{i}] must be 1, got {}",
                    matrix[i][i]
                )));
            }
            for j in 0..3 {
                if i != j && matrix[i][j].abs() > 0.25 {
                    return Err(DeviceSimError::BadCrosstalkMatrix(format!(
                        "off-diagonal [{i}][{j}] = {} exceeds 0.25",
                        matrix[i][j]
                    )));
                }
            }
        }
        Ok(Self {
            matrix,
            stark_coeff,
            f_a,
            f_b,
            rabi_rate: 1e6,
            drive_amp: 1.0,
            drive_phase: 0.0,
        })
    }

    /// Scenario with a single leaking line (`coupler -> qubit_a`) tuned so
    /// the uncompensated Stark shift equals `shift_hz`.
    pub fn with_stark_shift(shift_hz: f64, coupling: f64, f_a: f64, f_b: f64) -> Self {
        let mut matrix = [[0.0; 3]; 3];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        matrix[1][0] = coupling;
        let stark_coeff = shift_hz / coupling.powi(2);
        Self {
            matrix,
            stark_coeff,
            f_a,
            f_b,
            rabi_rate: 1e6,
            drive_amp: 1.0,
            drive_phase: 0.0,
        }
    }

    /// Residual complex drive on each qubit loop given compensation pulses
    /// `comp = [(amp_a, phase_a), (amp_b, phase_b)]` played alongside the
    /// coupler drive.
    pub fn residual_drives(&self, comp: &[(f64, f64); 2]) -> [Complex64; 2] {
        let drives = [
            Complex64::from_polar(self.drive_amp, self.drive_phase),
            Complex64::from_polar(comp[0].0, comp[0].1),
            Complex64::from_polar(comp[1].0, comp[1].1),
        ];
        let mut out = [Complex64::new(0.0, 0.0); 2];
        for (q, item) in out.iter_mut().enumerate() {
            let row = &self.matrix[q + 1];
            *item = row[0] * drives[0] + row[1] * drives[1] + row[2] * drives[2];
        }
        out
    }

    /// Stark shift of the two-photon resonance for given compensation.
    pub fn stark_shift(&self, comp: &[(f64, f64); 2]) -> f64 {
        let r = self.residual_drives(comp);
        self.stark_coeff * (r[0].norm_sqr() + r[1].norm_sqr())
    }
}

/// Where the Rabi chevron is centered for given compensation settings.
pub fn chevron_center(s: &CrosstalkScenario, comp: &[(f64, f64); 2]) -> f64 {
    s.f_a + s.f_b - s.stark_shift(comp)
}

/// Two-level Rabi population on the `|00> <-> |11>` transition:
/// `P = Omega^2/(Omega^2 + delta^2) * sin^2(sqrt(Omega^2 + delta^2) t / 2)`.
pub fn rabi_population(s: &CrosstalkScenario, comp: &[(f64, f64); 2], f_drive: f64, t: f64) -> f64 {
    let omega = std::f64::consts::TAU * s.rabi_rate;
    let delta = std::f64::consts::TAU * (f_drive - chevron_center(s, comp));
    let w2 = omega * omega + delta * delta;
    if w2 == 0.0 {
        return 0.0;
    }
    (omega * omega / w2) * ((w2.sqrt() * t / 2.0).sin()).powi(2)
}

/// Population grid over (drive frequency, pulse length): rows are drive
/// frequencies, columns pulse lengths.
pub fn chevron_map(
    s: &CrosstalkScenario,
    comp: &[(f64, f64); 2],
    freqs: &[f64],
    lengths: &[f64],
) -> Vec<Vec<f64>> {
    freqs
        .iter()
        .map(|&f| lengths.iter().map(|&t| rabi_population(s, comp, f, t)).collect())
        .collect()
}
