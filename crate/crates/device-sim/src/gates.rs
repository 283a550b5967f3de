use num_complex::Complex64;

use crate::error::DeviceSimError;

/// 4x4 complex matrix in the computational basis |00>, |01>, |10>, |11>.
pub type Mat4 = [[Complex64; 4]; 4];

/// Phases parameterizing the driven two-qubit swap gate.
///
/// `theta` is the rotation angle in the {|00>, |11>} subspace (pi/4 for the
/// half-swap entangler), `phi_d` the coupler drive phase, and the `phi_xy`
/// are drive-induced level phases with `phi_11 = phi_01 + phi_10 + phi_zz`
/// by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GatePhases {
    pub theta: f64,
    pub phi_d: f64,
    pub phi_01: f64,
    pub phi_10: f64,
    pub phi_zz: f64,
}

impl GatePhases {
    pub fn new(theta: f64, phi_d: f64, phi_01: f64, phi_10: f64, phi_zz: f64) -> Self {
        Self {
            theta,
            phi_d,
            phi_01,
            phi_10,
            phi_zz,
        }
    }

    /// Half-swap entangler with all drive-induced phases zero.
    pub fn ideal_half_swap() -> Self {
        Self::new(std::f64::consts::FRAC_PI_4, 0.0, 0.0, 0.0, 0.0)
    }

    pub fn phi_11(&self) -> f64 {
        self.phi_01 + self.phi_10 + self.phi_zz
    }
}

/// The driven |00> <-> |11> swap unitary:
///
/// ```text
/// [ cos(th)              0            0        i e^{i phi_D} sin(th) ]
/// [ 0              e^{i phi_01}       0                 0            ]
/// [ 0                    0      e^{i phi_10}            0            ]
/// [ i e^{i(phi_11 - phi_D)} sin(th)   0    0      e^{i phi_11} cos(th)]
/// ```
///
/// Unitary for any parameter values.
pub fn bswap_unitary(g: &GatePhases) -> Mat4 {
    let zero = Complex64::new(0.0, 0.0);
    let c = Complex64::new(g.theta.cos(), 0.0);
    let s = g.theta.sin();
    let i = Complex64::new(0.0, 1.0);
    let phi_11 = g.phi_11();
    let mut m = [[zero; 4]; 4];
    m[0][0] = c;
    m[0][3] = i * Complex64::from_polar(s, g.phi_d);
    m[1][1] = Complex64::from_polar(1.0, g.phi_01);
    m[2][2] = Complex64::from_polar(1.0, g.phi_10);
    m[3][0] = i * Complex64::from_polar(s, phi_11 - g.phi_d);
    m[3][3] = Complex64::from_polar(1.0, phi_11) * c;
    m
}

/// Independent Z rotations on the two qubits:
/// `diag(1, e^{i phi_b}, e^{i phi_a}, e^{i (phi_a + phi_b)})`.
pub fn z_phases_unitary(phi_a: f64, phi_b: f64) -> Mat4 {
    let zero = Complex64::new(0.0, 0.0);
    let mut m = [[zero; 4]; 4];
    m[0][0] = Complex64::new(1.0, 0.0);
    m[1][1] = Complex64::from_polar(1.0, phi_b);
    m[2][2] = Complex64::from_polar(1.0, phi_a);
    m[3][3] = Complex64::from_polar(1.0, phi_a + phi_b);
    m
}

pub fn mat4_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let zero = Complex64::new(0.0, 0.0);
    let mut out = [[zero; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            let mut acc = zero;
            for k in 0..4 {
                acc += a[r][k] * b[k][c];
            }
            out[r][c] = acc;
        }
    }
    out
}

pub fn mat4_apply(m: &Mat4, v: &[Complex64; 4]) -> [Complex64; 4] {
    let zero = Complex64::new(0.0, 0.0);
    let mut out = [zero; 4];
    for r in 0..4 {
        for k in 0..4 {
            out[r] += m[r][k] * v[k];
        }
    }
    out
}

/// Two-qubit pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitState {
    pub amplitudes: [Complex64; 4],
}

impl TwoQubitState {
    pub fn ground() -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let mut amplitudes = [zero; 4];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn from_amplitudes(amps: &[Complex64]) -> Result<Self, DeviceSimError> {
        if amps.len() != 4 {
            return Err(DeviceSimError::BadStateDimension(amps.len()));
        }
        Ok(Self {
            amplitudes: [amps[0], amps[1], amps[2], amps[3]],
        })
    }

    pub fn populations(&self) -> [f64; 4] {
        let n: f64 = self.amplitudes.iter().map(|a| a.norm_sqr()).sum();
        [
            self.amplitudes[0].norm_sqr() / n,
            self.amplitudes[1].norm_sqr() / n,
            self.amplitudes[2].norm_sqr() / n,
            self.amplitudes[3].norm_sqr() / n,
        ]
    }

    /// Overlap fidelity `|<other|self>|^2` with both states normalized.
    pub fn fidelity(&self, other: &TwoQubitState) -> f64 {
        let mut overlap = Complex64::new(0.0, 0.0);
        let mut na = 0.0;
        let mut nb = 0.0;
        for (a, b) in self.amplitudes.iter().zip(&other.amplitudes) {
            overlap += b.conj() * a;
            na += a.norm_sqr();
            nb += b.norm_sqr();
        }
        overlap.norm_sqr() / (na * nb)
    }

    /// Purity `Tr(rho^2)` of the density matrix this state induces; exactly
    /// 1 for any pure state, evaluated explicitly as a numeric check.
    pub fn purity(&self) -> f64 {
        let n: f64 = self.amplitudes.iter().map(|a| a.norm_sqr()).sum();
        let mut tr = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let rho_ij = self.amplitudes[i] * self.amplitudes[j].conj() / n;
                tr += (rho_ij * rho_ij.conj()).re;
            }
        }
        tr
    }
}

/// One step of a gate sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateOp {
    /// Driven swap gate with the given phases.
    Bswap(GatePhases),
    /// Software Z phase gates on qubits A and B.
    ZPhases { phi_a: f64, phi_b: f64 },
}

impl GateOp {
    pub fn unitary(&self) -> Mat4 {
        match self {
            GateOp::Bswap(g) => bswap_unitary(g),
            GateOp::ZPhases { phi_a, phi_b } => z_phases_unitary(*phi_a, *phi_b),
        }
    }
}

/// Apply a gate sequence to an initial state by exact state-vector products.
pub fn run_gate_sequence(
    ops: &[GateOp],
    initial: &TwoQubitState,
) -> Result<TwoQubitState, DeviceSimError> {
    if ops.is_empty() {
        return Err(DeviceSimError::EmptySequence);
    }
    let mut amps = initial.amplitudes;
    for op in ops {
        amps = mat4_apply(&op.unitary(), &amps);
    }
    Ok(TwoQubitState { amplitudes: amps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat4_dagger(m: &Mat4) -> Mat4 {
        let zero = Complex64::new(0.0, 0.0);
        let mut out = [[zero; 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                out[r][c] = m[c][r].conj();
            }
        }
        out
    }

    fn max_dev_from_identity(m: &Mat4) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..4 {
            for c in 0..4 {
                let expect = if r == c {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                worst = worst.max((m[r][c] - expect).norm());
            }
        }
        worst
    }

    #[test]
    fn zero_angle_zero_phases_is_identity() {
        let u = bswap_unitary(&GatePhases::new(0.0, 0.0, 0.0, 0.0, 0.0));
        assert!(max_dev_from_identity(&u) < 1e-15);
    }

    #[test]
    fn full_angle_maps_ground_to_i_times_excited() {
        let u = bswap_unitary(&GatePhases::new(std::f64::consts::FRAC_PI_2, 0.0, 0.0, 0.0, 0.0));
        let out = mat4_apply(&u, &TwoQubitState::ground().amplitudes);
        assert!((out[3] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!(out[0].norm() < 1e-15);
    }

    #[test]
    fn random_phases_stay_unitary() {
        let mut rng_state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            rng_state ^= rng_state << 13;
            rng_state ^= rng_state >> 7;
            rng_state ^= rng_state << 17;
            (rng_state >> 11) as f64 / (1u64 << 53) as f64 * std::f64::consts::TAU
        };
        for _ in 0..100 {
            let g = GatePhases::new(next(), next(), next(), next(), next());
            let u = bswap_unitary(&g);
            let prod = mat4_mul(&u, &mat4_dagger(&u));
            assert!(max_dev_from_identity(&prod) < 1e-12);
        }
    }

    #[test]
    fn four_half_swaps_return_initial_population() {
        let g = GatePhases::ideal_half_swap();
        let u = bswap_unitary(&g);
        let mut m = u;
        for _ in 0..3 {
            m = mat4_mul(&u, &m);
        }
        let out = mat4_apply(&m, &TwoQubitState::ground().amplitudes);
        let state = TwoQubitState { amplitudes: out };
        let pops = state.populations();
        assert!((pops[0] - 1.0).abs() < 1e-12, "pops {pops:?}");
    }

    #[test]
    fn two_half_swaps_with_phase_correction_complete_the_swap() {
        // With phi_11 nonzero, interleaving Z gates with
        // phi_a + phi_b = -phi_11 restores the full pi rotation.
        let g = GatePhases::new(std::f64::consts::FRAC_PI_4, 0.3, 1.0, 0.7, 0.25);
        let phi_11 = g.phi_11();
        let ops = [
            GateOp::Bswap(g),
            GateOp::ZPhases {
                phi_a: -phi_11 / 2.0,
                phi_b: -phi_11 / 2.0,
            },
            GateOp::Bswap(g),
        ];
        let out = run_gate_sequence(&ops, &TwoQubitState::ground()).unwrap();
        let pops = out.populations();
        assert!((pops[3] - 1.0).abs() < 1e-12, "pops {pops:?}");
    }

    #[test]
    fn uncorrected_phases_leave_transfer_incomplete() {
        let g = GatePhases::new(std::f64::consts::FRAC_PI_4, 0.0, 1.0, 0.7, 0.25);
        let ops = [GateOp::Bswap(g), GateOp::Bswap(g)];
        let out = run_gate_sequence(&ops, &TwoQubitState::ground()).unwrap();
        let pops = out.populations();
        assert!(pops[3] < 0.75, "pops {pops:?}");
    }

    #[test]
    fn single_half_swap_prepares_bell_state() {
        let u = bswap_unitary(&GatePhases::ideal_half_swap());
        let out = mat4_apply(&u, &TwoQubitState::ground().amplitudes);
        let state = TwoQubitState { amplitudes: out };
        let ideal = TwoQubitState {
            amplitudes: [
                Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2),
            ],
        };
        assert!(state.fidelity(&ideal) > 1.0 - 1e-12);
        assert!(state.purity() > 1.0 - 1e-12);
    }

    #[test]
    fn empty_sequence_rejected() {
        assert!(matches!(
            run_gate_sequence(&[], &TwoQubitState::ground()),
            Err(DeviceSimError::EmptySequence)
        ));
    }
}
