//! Spin-3/2 quadrupolar NMR model of the ququart experiment.
//!
//! Rotating-frame Hamiltonian `H = (ω_Q/6)(3I_z² - I²) + ω₁(I_x cos φ + I_y sin φ)`
//! with `ħ = 1`, pulse propagators by exact diagonalization, gate synthesis
//! by Nelder-Mead over rectangular rf segments, and the three-stage protocol
//! on pseudo-pure states.

pub mod nelder_mead;
mod noise;
mod protocol;
mod pulse;
mod smp;
mod spin;

pub use noise::{inject_readout_noise, DEFAULT_READOUT_SIGMA};
pub use protocol::{
    deviation, epsilon_component, pseudo_pure, run_protocol, stage_unitary, GateSource,
    OracleChoice, ProtocolOutcome, PseudoPureSpec, Stage,
};
pub use pulse::{pulse_propagator, sequence_propagator, ControlModel, PulseSegment};
pub use smp::{smp_optimize, OptimizerConfig, SmpResult};
pub use spin::{
    spin_operators, static_hamiltonian, Frame, SpinOperators, SpinSystem, MIN_LARMOR_TO_QUAD_RATIO,
    SODIUM_LARMOR, SODIUM_QUAD,
};
