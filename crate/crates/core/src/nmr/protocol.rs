//! The ququart experiment replayed on a pseudo-pure state: prepare `|2⟩`,
//! then apply one synthesized gate per stage (`F`, `U_i F`, `F† U_i F`).

use serde::{Deserialize, Serialize};

use super::pulse::{ControlModel, PulseSegment};
use super::smp::{smp_optimize, OptimizerConfig};
use super::spin::SpinSystem;
use crate::algorithm::{qft, FourierKind};
use crate::error::{Error, Result};
use crate::linalg::{Complex, DensityMatrix, Matrix, StateVector, Unitary};
use crate::permutation::Permutation;

/// `ρ = (1 - ε)/d · I + ε |i⟩⟨i|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PseudoPureSpec {
    pub epsilon: f64,
    /// 1-based.
    pub basis_index: usize,
}

impl Default for PseudoPureSpec {
    fn default() -> Self {
        Self {
            epsilon: 1e-5,
            basis_index: 2,
        }
    }
}

pub fn pseudo_pure(spec: &PseudoPureSpec, dim: usize) -> Result<DensityMatrix> {
    let eps = spec.epsilon;
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in [0, 1], got {eps}"
        )));
    }
    let pure = DensityMatrix::outer(&StateVector::basis(dim, spec.basis_index)?)?;
    let m = Matrix::identity(dim)?
        .scale(Complex::new((1.0 - eps) / dim as f64, 0.0))
        .try_add(&pure.matrix().scale(Complex::new(eps, 0.0)))?;
    DensityMatrix::new(m)
}

/// Traceless part `ρ - Tr(ρ)/d · I`.
pub fn deviation(rho: &DensityMatrix) -> DensityMatrix {
    let d = rho.dim();
    let shift = Matrix::identity(d)
        .expect("valid dimension")
        .scale(Complex::new(rho.trace() / d as f64, 0.0));
    DensityMatrix::new(rho.matrix().try_sub(&shift).expect("same dimension")).expect("Hermitian")
}

/// The trace-one `ε` component `(ρ - (1 - ε)/d · I) / ε` of a pseudo-pure state.
pub fn epsilon_component(rho: &DensityMatrix, epsilon: f64) -> Result<DensityMatrix> {
    if epsilon <= 0.0 {
        return Err(Error::InvalidParameter(
            "epsilon component needs epsilon > 0".into(),
        ));
    }
    let d = rho.dim();
    let background = Matrix::identity(d)?.scale(Complex::new((1.0 - epsilon) / d as f64, 0.0));
    DensityMatrix::with_tolerance(
        rho.matrix()
            .try_sub(&background)?
            .scale(Complex::new(1.0 / epsilon, 0.0)),
        1e-10 / epsilon,
    )
}

/// Which ququart oracle the protocol runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleChoice {
    /// `U_2`, the positive cyclic `(2,3,4,1)`.
    U2,
    /// `U_6`, the negative cyclic `(3,2,1,4)`.
    U6,
}

impl OracleChoice {
    pub fn permutation(self) -> Permutation {
        match self {
            OracleChoice::U2 => Permutation::new(vec![2, 3, 4, 1]),
            OracleChoice::U6 => Permutation::new(vec![3, 2, 1, 4]),
        }
        .expect("valid literal")
    }

    /// Basis state the full circuit should end in.
    pub fn outcome_index(self) -> usize {
        match self {
            OracleChoice::U2 => 2,
            OracleChoice::U6 => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    AfterQft,
    AfterOracle,
    Full,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GateSource {
    Ideal,
    Smp(OptimizerConfig),
}

/// Ideal unitary for a stage: `F`, `U_i F` or `F† U_i F` on the ququart.
pub fn stage_unitary(oracle: OracleChoice, stage: Stage) -> Unitary {
    let f = qft(4, &FourierKind::standard()).expect("d = 4");
    let u = oracle.permutation().oracle_unitary();
    match stage {
        Stage::AfterQft => f,
        Stage::AfterOracle => u.then_after(&f).expect("same dimension"),
        Stage::Full => f
            .adjoint()
            .then_after(&u)
            .and_then(|g| g.then_after(&f))
            .expect("same dimension"),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolOutcome {
    pub stage: Stage,
    pub oracle: OracleChoice,
    pub initial: PseudoPureSpec,
    pub rho: DensityMatrix,
    /// `⟨target| σ |target⟩` for the normalized `ε` component `σ` of `rho`.
    pub fidelity_to_theory: f64,
    pub target_state: StateVector,
    /// Gate fidelity of the applied propagator against the ideal one.
    pub gate_fidelity: f64,
    pub pulses: Option<Vec<PulseSegment>>,
    pub converged: bool,
}

impl ProtocolOutcome {
    /// 1-based index of the largest diagonal entry of the deviation matrix.
    pub fn dominant_population(&self) -> usize {
        deviation(&self.rho)
            .populations()
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i + 1)
            .expect("non-empty")
    }
}

/// Evolves the pseudo-pure state through one stage of the protocol.
///
/// Requires a spin-3/2 system. With [`GateSource::Smp`] the stage unitary is
/// synthesized first; an unconverged synthesis is reported through
/// `converged = false` rather than an error.
pub fn run_protocol(
    sys: &SpinSystem,
    oracle: OracleChoice,
    stage: Stage,
    source: &GateSource,
    initial: PseudoPureSpec,
) -> Result<ProtocolOutcome> {
    if sys.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: sys.dim(),
        });
    }
    if initial.epsilon <= 0.0 {
        return Err(Error::InvalidParameter("protocol needs epsilon > 0".into()));
    }
    let ideal = stage_unitary(oracle, stage);
    let (applied, pulses, converged) = match source {
        GateSource::Ideal => (ideal.clone(), None, true),
        GateSource::Smp(config) => {
            let result = smp_optimize(sys, &ideal, config)?;
            let u = ControlModel::new(sys).sequence(&result.segments);
            (u, Some(result.segments), result.converged)
        }
    };

    let rho0 = pseudo_pure(&initial, 4)?;
    let rho = rho0.evolve(&applied)?;
    let target_state = ideal.apply(&StateVector::basis(4, initial.basis_index)?)?;
    let fidelity_to_theory = epsilon_component(&rho, initial.epsilon)?.fidelity(&target_state)?;

    Ok(ProtocolOutcome {
        stage,
        oracle,
        initial,
        gate_fidelity: ideal.gate_fidelity(&applied)?,
        rho,
        fidelity_to_theory,
        target_state,
        pulses,
        converged,
    })
}
