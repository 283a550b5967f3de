use crate::error::DeviceSimError;

/// Frequencies and phases of a parametric exchange setup: two qubits, a
/// pump near their difference frequency, and the phases carried by each
/// drive channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParametricScenario {
    pub f1: f64,
    pub f2: f64,
    /// Pump frequency; convention `fp = f2 - f1 + delta` with `f2 > f1`.
    pub fp: f64,
    pub delta: f64,
    /// Effective exchange rate, Hz.
    pub g_eff: f64,
    pub phi_1: f64,
    pub phi_p: f64,
    pub phi_2: f64,
    pub phi_q: f64,
    pub phi_g: f64,
    pub phi_c: f64,
}

impl ParametricScenario {
    pub fn new(f1: f64, f2: f64, delta: f64, g_eff: f64) -> Self {
        Self {
            f1,
            f2,
            fp: f2 - f1 + delta,
            delta,
            g_eff,
            phi_1: 0.0,
            phi_p: 0.0,
            phi_2: 0.0,
            phi_q: 0.0,
            phi_g: 0.0,
            phi_c: 0.0,
        }
    }

    /// Parametric measurement axis angle `(phi_g - phi_c) / 2`.
    pub fn measurement_axis(&self) -> f64 {
        (self.phi_g - self.phi_c) / 2.0
    }
}

/// Readout of the swapped superposition phase: after a complete exchange
/// with pump phase `phi_p`, a final pi/2 analysis pulse at phase `phi_2`
/// measures `<sigma_z> = -cos(phi_1 + phi_p - phi_2)`.
pub fn iswap_readout_phase(phi_1: f64, phi_p: f64, phi_2: f64) -> f64 {
    -(phi_1 + phi_p - phi_2).cos()
}

/// Project a Bloch vector onto the parametric measurement axis.
///
/// The gain/conversion pump phases select the axis
/// `(cos phi_m, -sin phi_m, 0)` with `phi_m = (phi_g - phi_c)/2`; the
/// component along that axis survives, everything else (including the z
/// component) collapses to zero.
pub fn parametric_project(
    bloch: [f64; 3],
    phi_g: f64,
    phi_c: f64,
) -> Result<[f64; 3], DeviceSimError> {
    let norm = (bloch[0] * bloch[0] + bloch[1] * bloch[1] + bloch[2] * bloch[2]).sqrt();
    if norm > 1.0 + 1e-12 {
        return Err(DeviceSimError::BlochOverRange(norm));
    }
    let phi_m = (phi_g - phi_c) / 2.0;
    let axis = [phi_m.cos(), -phi_m.sin(), 0.0];
    let dot = bloch[0] * axis[0] + bloch[1] * axis[1];
    Ok([dot * axis[0], dot * axis[1], 0.0])
}
