//! Serde-ready scenario descriptions for config files.
//!
//! Field names carry their units: `_hz` (hertz), `_ns` (nanoseconds),
//! `_deg` (degrees). Conversion to the internal SI/radian types happens in
//! the `build` methods.

use serde::{Deserialize, Serialize};

use crate::crosstalk::CrosstalkScenario;
use crate::drift::{AnalogLoChannel, AnalogLoModel, DriftConfig};
use crate::error::DeviceSimError;
use crate::flux::FluxQubit;
use crate::gates::GatePhases;
use crate::transfer::TransferFunction;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransferTermConfig {
    pub amplitude: f64,
    pub tau_ns: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransferFunctionConfig {
    pub terms: Vec<TransferTermConfig>,
}

impl TransferFunctionConfig {
    pub fn build(&self) -> Result<TransferFunction, DeviceSimError> {
        TransferFunction::new(
            self.terms
                .iter()
                .map(|t| (t.amplitude, t.tau_ns * 1e-9))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FluxQubitConfig {
    pub f_sweet_hz: f64,
    pub curvature_hz: f64,
    pub flux_gain: f64,
}

impl FluxQubitConfig {
    pub fn build(&self) -> FluxQubit {
        FluxQubit {
            f_sweet: self.f_sweet_hz,
            curvature: self.curvature_hz,
            flux_gain: self.flux_gain,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrosstalkScenarioConfig {
    pub f_a_hz: f64,
    pub f_b_hz: f64,
    /// Uncompensated Stark shift the scenario should exhibit, Hz.
    pub stark_shift_hz: f64,
    /// Coupler-to-qubit-A flux leak (<= 0.25).
    pub coupling: f64,
    pub rabi_rate_hz: f64,
}

impl CrosstalkScenarioConfig {
    pub fn build(&self) -> CrosstalkScenario {
        let mut s = CrosstalkScenario::with_stark_shift(
            self.stark_shift_hz,
            self.coupling,
            self.f_a_hz,
            self.f_b_hz,
        );
        s.rabi_rate = self.rabi_rate_hz;
        s
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GatePhasesConfig {
    pub theta_deg: f64,
    pub phi_d_deg: f64,
    pub phi_01_deg: f64,
    pub phi_10_deg: f64,
    pub phi_zz_deg: f64,
}

impl GatePhasesConfig {
    pub fn build(&self) -> GatePhases {
        GatePhases::new(
            self.theta_deg.to_radians(),
            self.phi_d_deg.to_radians(),
            self.phi_01_deg.to_radians(),
            self.phi_10_deg.to_radians(),
            self.phi_zz_deg.to_radians(),
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DriftScenarioConfig {
    /// Per-channel LO frequencies, Hz.
    pub lo_freqs_hz: Vec<f64>,
    pub periodic_amp_rad: f64,
    pub period_s: f64,
    pub ramp_rad_per_s: f64,
    #[serde(default)]
    pub walk_sigma_rad: f64,
    #[serde(default)]
    pub seed: u64,
}

impl DriftScenarioConfig {
    pub fn build(&self) -> AnalogLoModel {
        let drift = DriftConfig {
            periodic_amp: self.periodic_amp_rad,
            period: self.period_s,
            periodic_phase: 0.0,
            ramp: self.ramp_rad_per_s,
            walk_sigma: self.walk_sigma_rad,
        };
        AnalogLoModel::new(
            self.lo_freqs_hz
                .iter()
                .map(|&f_lo| AnalogLoChannel { f_lo, drift })
                .collect(),
            self.seed,
        )
    }
}
