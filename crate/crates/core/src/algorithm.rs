//! The one-query classification circuit `F† · U_f · F` and its classical
//! two-query counterpart.
//!
//! For the standard transform the circuit starts in `|2⟩`: a positive cyclic
//! oracle returns the qudit to `|2⟩`, a negative one sends it to `|d⟩`. The
//! qutrit spin-basis transform starts in `|1⟩` (`m = 1`) and ends in `|1⟩` or
//! `|3⟩` (`m = -1`); `|2⟩` (`m = 0`) is never reached.

use std::cell::Cell;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Complex, Matrix, StateVector, Unitary};
use crate::permutation::{enumerate_cyclic, Chirality, Parity, Permutation};

/// Which Fourier matrix the circuit is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FourierVariant {
    /// `U[k', k] = exp(i 2π (k-1)(k'-1) / d) / √d`, any `d >= 2`.
    Standard,
    /// The qutrit transform written in the `S_z` basis `m = 1, 0, -1`.
    Qutrit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FourierKind {
    pub variant: FourierVariant,
    /// Basis relabeling `sigma`; the gate becomes `P_sigma · F`.
    pub relabeling: Option<Permutation>,
}

impl FourierKind {
    pub fn standard() -> Self {
        Self {
            variant: FourierVariant::Standard,
            relabeling: None,
        }
    }

    pub fn qutrit() -> Self {
        Self {
            variant: FourierVariant::Qutrit,
            relabeling: None,
        }
    }

    pub fn relabeled(sigma: Permutation) -> Self {
        Self {
            variant: FourierVariant::Standard,
            relabeling: Some(sigma),
        }
    }

    /// 1-based basis state the circuit starts from.
    pub fn initial_index(&self) -> usize {
        match self.variant {
            FourierVariant::Standard => 2,
            FourierVariant::Qutrit => 1,
        }
    }

    /// Output index signalling each chirality.
    pub fn outcome_index(&self, dim: usize, chirality: Chirality) -> Option<usize> {
        match (self.variant, chirality) {
            (_, Chirality::NotCyclic) => None,
            (FourierVariant::Standard, Chirality::PositiveCyclic) => Some(2),
            (FourierVariant::Standard, Chirality::NegativeCyclic) => Some(dim),
            (FourierVariant::Qutrit, Chirality::PositiveCyclic) => Some(1),
            (FourierVariant::Qutrit, Chirality::NegativeCyclic) => Some(3),
        }
    }

    fn chirality_of_outcome(&self, dim: usize, index: usize) -> Chirality {
        [Chirality::PositiveCyclic, Chirality::NegativeCyclic]
            .into_iter()
            .find(|&c| self.outcome_index(dim, c) == Some(index))
            .unwrap_or(Chirality::NotCyclic)
    }

    fn classify(&self, p: &Permutation) -> Result<Chirality> {
        Ok(match &self.relabeling {
            Some(sigma) => p.classify_cyclic_relabeled(sigma)?.chirality,
            None => p.classify_cyclic().chirality,
        })
    }
}

/// `exp(i 2π n / d)`, exact when it is one of `±1, ±i`.
fn root_of_unity(n: usize, d: usize) -> Complex {
    let n = n % d;
    if (4 * n).is_multiple_of(d) {
        match 4 * n / d {
            0 => Complex::new(1.0, 0.0),
            1 => Complex::new(0.0, 1.0),
            2 => Complex::new(-1.0, 0.0),
            _ => Complex::new(0.0, -1.0),
        }
    } else {
        Complex::from_polar(1.0, 2.0 * PI * n as f64 / d as f64)
    }
}

/// Fourier gate for the given variant and optional relabeling.
pub fn qft(dim: usize, kind: &FourierKind) -> Result<Unitary> {
    if dim < 2 {
        return Err(Error::InvalidParameter(format!(
            "Fourier transform needs d >= 2, got {dim}"
        )));
    }
    let base = match kind.variant {
        FourierVariant::Standard => {
            let norm = 1.0 / (dim as f64).sqrt();
            Matrix::from_fn(dim, |r, c| root_of_unity(r * c, dim) * norm)?
        }
        FourierVariant::Qutrit => {
            if dim != 3 {
                return Err(Error::InvalidParameter(format!(
                    "the qutrit transform is only defined for d = 3, got {dim}"
                )));
            }
            let w = root_of_unity(1, 3);
            let one = Complex::new(1.0, 0.0);
            let norm = 1.0 / 3f64.sqrt();
            Matrix::from_rows(vec![
                vec![w * norm, one * norm, w.conj() * norm],
                vec![one * norm, one * norm, one * norm],
                vec![w.conj() * norm, one * norm, w * norm],
            ])?
        }
    };
    let u = Unitary::new(base)?;
    match &kind.relabeling {
        None => Ok(u),
        Some(sigma) => {
            if sigma.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: sigma.dim(),
                });
            }
            sigma.oracle_unitary().then_after(&u)
        }
    }
}

/// Black box around a hidden permutation that counts every access.
///
/// Counters are per instance and not shared across threads.
#[derive(Debug)]
pub struct Oracle {
    hidden: Permutation,
    unitary: Unitary,
    queries: Cell<usize>,
    applications: Cell<usize>,
}

impl Oracle {
    pub fn new(hidden: Permutation) -> Self {
        let unitary = hidden.oracle_unitary();
        Self {
            hidden,
            unitary,
            queries: Cell::new(0),
            applications: Cell::new(0),
        }
    }

    pub fn dim(&self) -> usize {
        self.hidden.dim()
    }

    /// Classical evaluation of `f(x)`.
    pub fn query(&self, x: usize) -> Result<usize> {
        self.queries.set(self.queries.get() + 1);
        self.hidden.apply(x)
    }

    /// Quantum application `U_f |psi⟩`.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        self.applications.set(self.applications.get() + 1);
        self.unitary.apply(psi)
    }

    pub fn queries(&self) -> usize {
        self.queries.get()
    }

    pub fn applications(&self) -> usize {
        self.applications.get()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunMode {
    Quantum,
    Classical,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Phase {
    pub re: f64,
    pub im: f64,
}

impl From<Complex> for Phase {
    fn from(z: Complex) -> Self {
        Phase { re: z.re, im: z.im }
    }
}

impl From<Phase> for Complex {
    fn from(p: Phase) -> Self {
        Complex::new(p.re, p.im)
    }
}

/// Outcome of one classification run.
///
/// Classical runs carry no state: `measured_index`, `phase` and
/// `final_state` are `None` there.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub mode: RunMode,
    pub dim: usize,
    pub permutation: Permutation,
    pub oracle_queries: usize,
    pub measured_index: Option<usize>,
    pub classification: Chirality,
    pub phase: Option<Phase>,
    pub final_state: Option<StateVector>,
}

impl RunReport {
    /// Probability of each 1-based outcome, empty for classical runs.
    pub fn probabilities(&self) -> Vec<f64> {
        self.final_state
            .as_ref()
            .map(|s| s.probabilities())
            .unwrap_or_default()
    }
}

/// Runs `F† · U_f · F` on the kind's initial basis state with one oracle call.
///
/// Inputs outside the promise (not cyclic under the kind's labeling) are
/// refused.
pub fn run_quantum(p: &Permutation, kind: &FourierKind) -> Result<RunReport> {
    let oracle = Oracle::new(p.clone());
    let report = run_quantum_with(&oracle, p, kind)?;
    debug_assert_eq!(oracle.applications(), 1);
    Ok(report)
}

/// Same as [`run_quantum`] against a caller-owned oracle, so the caller can
/// inspect its access counters afterwards.
pub fn run_quantum_with(oracle: &Oracle, p: &Permutation, kind: &FourierKind) -> Result<RunReport> {
    let d = p.dim();
    if oracle.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: oracle.dim(),
        });
    }
    if d < 3 {
        return Err(Error::InvalidParameter(format!(
            "classification needs d >= 3, got {d}"
        )));
    }
    if kind.classify(p)? == Chirality::NotCyclic {
        return Err(Error::NotCyclic(p.to_string()));
    }

    let f = qft(d, kind)?;
    let before = oracle.applications();
    let prepared = f.apply(&StateVector::basis(d, kind.initial_index())?)?;
    let queried = oracle.apply(&prepared)?;
    let final_state = f.adjoint().apply(&queried)?;

    let probs = final_state.probabilities();
    let measured = probs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i + 1)
        .expect("d >= 3");
    let phase = final_state.amplitude(measured)?;

    Ok(RunReport {
        mode: RunMode::Quantum,
        dim: d,
        permutation: p.clone(),
        oracle_queries: oracle.applications() - before,
        measured_index: Some(measured),
        classification: kind.chirality_of_outcome(d, measured),
        phase: Some(phase.into()),
        final_state: Some(final_state),
    })
}

/// Classical baseline: evaluate `f(1)` and `f(2)` and match them against the
/// `2d` candidates (relabeled by `sigma` when given).
pub fn run_classical(p: &Permutation, relabeling: Option<&Permutation>) -> Result<RunReport> {
    let oracle = Oracle::new(p.clone());
    run_classical_with(&oracle, p.dim(), relabeling).map(|(classification, queries)| RunReport {
        mode: RunMode::Classical,
        dim: p.dim(),
        permutation: p.clone(),
        oracle_queries: queries,
        measured_index: None,
        classification,
        phase: None,
        final_state: None,
    })
}

/// Returns the inferred chirality and the number of queries spent. Only the
/// oracle is consulted.
pub fn run_classical_with(
    oracle: &Oracle,
    dim: usize,
    relabeling: Option<&Permutation>,
) -> Result<(Chirality, usize)> {
    if dim < 3 {
        return Err(Error::InvalidParameter(format!(
            "classification needs d >= 3, got {dim}"
        )));
    }
    let candidates = cyclic_candidates(dim, relabeling)?;
    let before = oracle.queries();
    let y1 = oracle.query(1)?;
    let y2 = oracle.query(2)?;
    let mut consistent = candidates
        .iter()
        .filter(|(q, _)| q.image()[0] == y1 && q.image()[1] == y2)
        .map(|(_, c)| *c);
    let chirality = match (consistent.next(), consistent.next()) {
        (Some(c), None) => c,
        // Two answers never leave two candidates for d >= 3; anything else
        // means the promise is broken.
        _ => Chirality::NotCyclic,
    };
    Ok((chirality, oracle.queries() - before))
}

fn cyclic_candidates(
    dim: usize,
    relabeling: Option<&Permutation>,
) -> Result<Vec<(Permutation, Chirality)>> {
    enumerate_cyclic(dim)?
        .into_iter()
        .map(|q| {
            let c = q.classify_cyclic().chirality;
            let q = match relabeling {
                Some(sigma) => q.relabel(sigma)?,
                None => q,
            };
            Ok((q, c))
        })
        .collect()
}

/// True iff no single classical query can separate the two chiralities:
/// for every query point `x` and answer `y`, the cyclic permutations with
/// `f(x) = y` include both a positive and a negative one.
pub fn one_query_insufficient(dim: usize) -> Result<bool> {
    if !(3..=8).contains(&dim) {
        return Err(Error::InvalidParameter(format!(
            "exhaustive check supports 3 <= d <= 8, got {dim}"
        )));
    }
    let family = cyclic_candidates(dim, None)?;
    Ok((1..=dim).all(|x| {
        (1..=dim).all(|y| {
            let answers: Vec<Chirality> = family
                .iter()
                .filter(|(q, _)| q.image()[x - 1] == y)
                .map(|(_, c)| *c)
                .collect();
            answers.contains(&Chirality::PositiveCyclic)
                && answers.contains(&Chirality::NegativeCyclic)
        })
    }))
}

/// Global phase convention for the standard circuit: positive shift `r`
/// gives `exp(-i2πr/d)`, negative shift `r` gives `exp(i2π(r-1)/d)`.
pub fn expected_phase(dim: usize, chirality: Chirality, shift: usize) -> Option<Complex> {
    match chirality {
        Chirality::PositiveCyclic => Some(root_of_unity(dim - shift % dim, dim)),
        Chirality::NegativeCyclic => Some(root_of_unity(shift % dim + dim - 1, dim)),
        Chirality::NotCyclic => None,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseEntry {
    pub permutation: Permutation,
    pub chirality: Chirality,
    pub shift: usize,
    pub phase: Phase,
}

/// Simulated final-state phase for every cyclic permutation, in
/// [`enumerate_cyclic`] order, using the standard transform.
pub fn phase_table(dim: usize) -> Result<Vec<PhaseEntry>> {
    let kind = FourierKind::standard();
    enumerate_cyclic(dim)?
        .into_iter()
        .map(|p| {
            let class = p.classify_cyclic();
            let report = run_quantum(&p, &kind)?;
            Ok(PhaseEntry {
                chirality: class.chirality,
                shift: class.shift.expect("cyclic by construction"),
                phase: report.phase.expect("quantum run"),
                permutation: p,
            })
        })
        .collect()
}

/// Draws `shots` outcomes from the Born distribution of `state`.
/// Returns counts per 1-based index (slot 0 unused).
pub fn sample_outcomes(state: &StateVector, shots: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probs = state.probabilities();
    let total: f64 = probs.iter().sum();
    let mut counts = vec![0; state.dim() + 1];
    for _ in 0..shots {
        let mut u = rng.random_range(0.0..total);
        let mut pick = probs.len();
        for (i, &p) in probs.iter().enumerate() {
            if u < p {
                pick = i + 1;
                break;
            }
            u -= p;
        }
        counts[pick] += 1;
    }
    counts
}

/// Per-dimension verification summary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub dim: usize,
    pub permutations: usize,
    pub classifications_ok: bool,
    /// Largest probability mass outside the expected outcome.
    pub max_leakage: f64,
    pub phases_ok: bool,
    /// Exhaustive classical check, only run for `d <= 8`.
    pub one_query_insufficient: Option<bool>,
    pub classical_ok: bool,
    /// Whether chirality coincides with even/odd parity on the whole family.
    pub parity_matches_chirality: bool,
}

impl VerifyRow {
    pub fn passed(&self) -> bool {
        self.classifications_ok
            && self.phases_ok
            && self.classical_ok
            && self.one_query_insufficient.unwrap_or(true)
    }
}

pub const VERIFY_LEAKAGE_TOL: f64 = 1e-9;
pub const VERIFY_PHASE_TOL: f64 = 1e-10;

pub fn verify_dimension(dim: usize) -> Result<VerifyRow> {
    let kind = FourierKind::standard();
    let family = enumerate_cyclic(dim)?;
    let mut classifications_ok = true;
    let mut phases_ok = true;
    let mut classical_ok = true;
    let mut max_leakage: f64 = 0.0;
    let mut parity_matches = true;

    for p in &family {
        let class = p.classify_cyclic();
        let report = run_quantum(p, &kind)?;
        let expected = kind.outcome_index(dim, class.chirality);
        classifications_ok &= report.classification == class.chirality
            && report.measured_index == expected
            && report.oracle_queries == 1;
        let probs = report.probabilities();
        max_leakage = max_leakage.max(1.0 - expected.map(|i| probs[i - 1]).unwrap_or(0.0));

        let want = expected_phase(dim, class.chirality, class.shift.unwrap_or(0));
        let got = report.phase.map(Complex::from);
        phases_ok &=
            matches!((want, got), (Some(w), Some(g)) if (w - g).norm() <= VERIFY_PHASE_TOL);

        let classical = run_classical(p, None)?;
        classical_ok &=
            classical.classification == class.chirality && classical.oracle_queries == 2;

        parity_matches &=
            (p.parity() == Parity::Even) == (class.chirality == Chirality::PositiveCyclic);
    }
    classifications_ok &= max_leakage <= VERIFY_LEAKAGE_TOL;

    Ok(VerifyRow {
        dim,
        permutations: family.len(),
        classifications_ok,
        max_leakage,
        phases_ok,
        one_query_insufficient: if dim <= 8 {
            Some(one_query_insufficient(dim)?)
        } else {
            None
        },
        classical_ok,
        parity_matches_chirality: parity_matches,
    })
}

/// Runs [`verify_dimension`] for every `d` in `3..=dmax`, in parallel.
pub fn verify_up_to(dmax: usize) -> Result<Vec<VerifyRow>> {
    if !(3..=12).contains(&dmax) {
        return Err(Error::InvalidParameter(format!(
            "dmax must lie in 3..=12, got {dmax}"
        )));
    }
    (3..=dmax).into_par_iter().map(verify_dimension).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn standard_qft_for_ququart_is_exact() {
        let i = c(0.0, 1.0);
        let one = c(1.0, 0.0);
        let rows = vec![
            vec![one, one, one, one],
            vec![one, i, -one, -i],
            vec![one, -one, one, -one],
            vec![one, -i, -one, i],
        ];
        let expected = Matrix::from_rows(rows).unwrap().scale(c(0.5, 0.0));
        let got = qft(4, &FourierKind::standard()).unwrap();
        assert_eq!(got.matrix(), &expected);
    }

    #[test]
    fn qft_two_is_hadamard() {
        let h = Matrix::from_real_rows(&[&[1.0, 1.0], &[1.0, -1.0]])
            .unwrap()
            .scale(c(1.0 / 2f64.sqrt(), 0.0));
        let got = qft(2, &FourierKind::standard()).unwrap();
        assert!(got.matrix().max_abs_diff(&h).unwrap() < 1e-15);
    }

    #[test]
    fn qutrit_qft_middle_row() {
        let u = qft(3, &FourierKind::qutrit()).unwrap();
        for z in u.matrix().row(1) {
            assert!((z - c(1.0 / 3f64.sqrt(), 0.0)).norm() < 1e-15);
        }
        assert!(qft(4, &FourierKind::qutrit()).is_err());
        assert!(qft(1, &FourierKind::standard()).is_err());
    }

    #[test]
    fn qft_unitarity_and_adjoint() {
        for d in 2..=12 {
            let u = qft(d, &FourierKind::standard()).unwrap();
            assert!(u.matrix().unitarity_error() < 1e-10, "d={d}");
            let prod = u.adjoint().then_after(&u).unwrap();
            assert!(
                prod.matrix()
                    .max_abs_diff(&Matrix::identity(d).unwrap())
                    .unwrap()
                    < 1e-10
            );
        }
    }

    #[test]
    fn ququart_runs() {
        let r = run_quantum(&p("2,3,4,1"), &FourierKind::standard()).unwrap();
        assert_eq!(r.measured_index, Some(2));
        assert_eq!(r.classification, Chirality::PositiveCyclic);
        assert_eq!(r.oracle_queries, 1);
        let ph: Complex = r.phase.unwrap().into();
        assert!((ph - c(0.0, -1.0)).norm() < 1e-12);

        let r = run_quantum(&p("4,3,2,1"), &FourierKind::standard()).unwrap();
        assert_eq!(r.measured_index, Some(4));
        assert_eq!(r.classification, Chirality::NegativeCyclic);
        let ph: Complex = r.phase.unwrap().into();
        assert!((ph - c(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn qutrit_runs_never_hit_middle_level() {
        let kind = FourierKind::qutrit();
        // f4: 1 -> -1, 0 -> 0, -1 -> 1.
        let r = run_quantum(&p("3,2,1"), &kind).unwrap();
        assert_eq!(r.measured_index, Some(3));
        for q in enumerate_cyclic(3).unwrap() {
            let r = run_quantum(&q, &kind).unwrap();
            assert_ne!(r.measured_index, Some(2));
            assert!(r.probabilities()[1] < 1e-12);
        }
    }

    #[test]
    fn qutrit_variant_phases() {
        // In the spin basis f2 picks up exp(+i2π/3): ψ1 = exp(-i2π/3) ψ2.
        let r = run_quantum(&p("2,3,1"), &FourierKind::qutrit()).unwrap();
        let ph: Complex = r.phase.unwrap().into();
        assert!((ph - Complex::from_polar(1.0, 2.0 * PI / 3.0)).norm() < 1e-12);
    }

    #[test]
    fn five_level_rotation() {
        let r = run_quantum(
            &Permutation::rotation(5, 2).unwrap(),
            &FourierKind::standard(),
        )
        .unwrap();
        assert_eq!(r.measured_index, Some(2));
    }

    #[test]
    fn not_cyclic_is_refused() {
        let err = run_quantum(&p("1,3,2,4"), &FourierKind::standard()).unwrap_err();
        assert!(matches!(err, Error::NotCyclic(_)));
    }

    #[test]
    fn classical_examples() {
        let r = run_classical(&p("2,3,4,1"), None).unwrap();
        assert_eq!(
            (r.classification, r.oracle_queries),
            (Chirality::PositiveCyclic, 2)
        );
        let r = run_classical(&p("1,2,3,4"), None).unwrap();
        assert_eq!(r.classification, Chirality::PositiveCyclic);
        let r = run_classical(&p("3,2,1,4"), None).unwrap();
        assert_eq!(r.classification, Chirality::NegativeCyclic);
        let r = run_classical(&p("1,3,2,4"), None).unwrap();
        assert_eq!(r.classification, Chirality::NotCyclic);
        assert!(run_classical(&p("2,1"), None).is_err());
    }

    #[test]
    fn oracle_counts_accesses() {
        let q = p("3,4,1,2");
        let oracle = Oracle::new(q.clone());
        run_quantum_with(&oracle, &q, &FourierKind::standard()).unwrap();
        assert_eq!((oracle.applications(), oracle.queries()), (1, 0));
        let (_, n) = run_classical_with(&oracle, 4, None).unwrap();
        assert_eq!((n, oracle.queries()), (2, 2));
    }

    #[test]
    fn one_query_is_never_enough() {
        for d in 3..=8 {
            assert!(one_query_insufficient(d).unwrap(), "d={d}");
        }
        assert!(one_query_insufficient(2).is_err());
        assert!(one_query_insufficient(9).is_err());
    }

    #[test]
    fn ququart_phase_table() {
        let table = phase_table(4).unwrap();
        let want = [
            c(1.0, 0.0),
            c(0.0, -1.0),
            c(-1.0, 0.0),
            c(0.0, 1.0),
            c(0.0, -1.0),
            c(-1.0, 0.0),
            c(0.0, 1.0),
            c(1.0, 0.0),
        ];
        for (entry, w) in table.iter().zip(want) {
            let got: Complex = entry.phase.into();
            assert!((got - w).norm() < 1e-10, "{}", entry.permutation);
        }
    }

    #[test]
    fn qutrit_phase_table_standard_convention() {
        let table = phase_table(3).unwrap();
        let want = [
            c(1.0, 0.0),
            Complex::from_polar(1.0, -2.0 * PI / 3.0),
            Complex::from_polar(1.0, 2.0 * PI / 3.0),
        ];
        for (entry, w) in table.iter().zip(want) {
            let got: Complex = entry.phase.into();
            assert!((got - w).norm() < 1e-10);
        }
    }

    #[test]
    fn sampling_is_seeded_and_concentrated() {
        let r = run_quantum(&p("4,1,2,3"), &FourierKind::standard()).unwrap();
        let state = r.final_state.unwrap();
        let a = sample_outcomes(&state, 200, 9);
        assert_eq!(a, sample_outcomes(&state, 200, 9));
        assert_eq!(a[2], 200);
    }

    #[test]
    fn report_json_shape() {
        let r = run_quantum(&p("2,3,4,1"), &FourierKind::standard()).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        for key in [
            "dim",
            "permutation",
            "oracle_queries",
            "measured_index",
            "classification",
            "phase",
            "final_state",
        ] {
            assert!(j.get(key).is_some(), "missing {key}");
        }
        assert_eq!(j["classification"], "positive-cyclic");
        assert_eq!(j["permutation"]["image"], serde_json::json!([2, 3, 4, 1]));
        assert!(j["phase"]["re"].is_number() && j["phase"]["im"].is_number());
        let back: RunReport = serde_json::from_value(j).unwrap();
        assert_eq!(back, r);
    }
}
