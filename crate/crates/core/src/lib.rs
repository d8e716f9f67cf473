//! Exact simulation of a single qudit deciding whether a hidden cyclic
//! permutation is positive or negative with one oracle call.
//!
//! - [`linalg`]: dense complex states, unitaries and density matrices.
//! - [`permutation`]: permutations, parity, cyclic chirality, oracle matrices.
//! - [`algorithm`]: Fourier gates, the one-query circuit, the classical
//!   two-query baseline and the exhaustive one-query lower bound.
//! - [`nmr`]: a spin-3/2 quadrupolar model with pulse synthesis, used to
//!   replay the ququart protocol on pseudo-pure states.

pub mod algorithm;
pub mod error;
pub mod linalg;
pub mod nmr;
pub mod permutation;

#[cfg(test)]
pub(crate) mod testing;

pub use algorithm::{
    one_query_insufficient, phase_table, qft, run_classical, run_quantum, FourierKind,
    FourierVariant, Oracle, RunReport,
};
pub use error::{Error, Result};
pub use linalg::{Complex, DensityMatrix, Matrix, StateVector, Unitary};
pub use permutation::{enumerate_cyclic, Chirality, CyclicClass, Parity, Permutation};
