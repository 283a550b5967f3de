//! Ground-truth device models for closed-loop calibration.
//!
//! Each simulator here is a pure function of a scenario and (where noise is
//! involved) a seed. Calibration code never reads scenario parameters
//! directly -- it only sees what an experiment would measure -- so these
//! models serve as the hidden ground truth the calibration algorithms are
//! judged against.

mod crosstalk;
mod drift;
mod error;
mod flux;
mod gates;
mod parametric;
mod scenario;
mod transfer;

pub use crosstalk::{chevron_center, chevron_map, rabi_population, CrosstalkScenario};
pub use drift::{AnalogLoChannel, AnalogLoModel, DriftConfig};
pub use error::DeviceSimError;
pub use flux::{
    ramsey_population, ramsey_quadrature_traces, spectroscopy_population, spectroscopy_sweep,
    FluxQubit, RamseyAxis, SpectroscopyProbe,
};
pub use gates::{
    bswap_unitary, mat4_apply, mat4_mul, run_gate_sequence, GateOp, GatePhases, Mat4,
    TwoQubitState,
};
pub use parametric::{iswap_readout_phase, parametric_project, ParametricScenario};
pub use scenario::{
    CrosstalkScenarioConfig, DriftScenarioConfig, FluxQubitConfig, GatePhasesConfig,
    TransferFunctionConfig, TransferTermConfig,
};
pub use transfer::{apply_channel, apply_channel_real, TransferFunction};
