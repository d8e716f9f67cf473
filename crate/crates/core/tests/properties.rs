mod common;

use common::*;
use proptest::prelude::*;
use qudit_core::{
    qft, run_quantum, Chirality, DensityMatrix, FourierKind, Permutation, StateVector,
};

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: CASES,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn unitaries_preserve_norm((psi, u) in state_and_unitary()) {
        check_unitarity_and_norm(&psi, &u)?;
    }

    #[test]
    fn fourier_gates_are_unitary_and_preserve_norm(psi in (2usize..=8).prop_flat_map(state)) {
        let f = qft(psi.dim(), &FourierKind::standard()).unwrap();
        prop_assert!(f.matrix().unitarity_error() < 1e-10);
        prop_assert!((f.apply(&psi).unwrap().norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn parity_is_a_homomorphism((p, q) in perm_pair()) {
        check_parity_homomorphism(&p, &q)?;
    }

    #[test]
    fn oracle_matrices_are_a_homomorphism((p, q) in perm_pair()) {
        check_oracle_homomorphism(&p, &q)?;
    }

    #[test]
    fn global_phase_equivalence_is_an_equivalence((psi, a, b) in phase_triple()) {
        check_phase_equivalence(&psi, a, b)?;
    }

    #[test]
    fn relative_sign_flip_breaks_equivalence(
        psi in (2usize..=8).prop_flat_map(state).prop_filter("spread", |p| p.probabilities().iter().all(|&x| x < 0.99)),
    ) {
        let mut amps = psi.amps().to_vec();
        let k = amps.iter().enumerate().max_by(|x, y| x.1.norm().total_cmp(&y.1.norm())).unwrap().0;
        amps[k] = -amps[k];
        let other = StateVector::new(amps).unwrap();
        prop_assert!(!psi.equal_up_to_global_phase(&other, 1e-10).unwrap());
    }

    #[test]
    fn pure_states_have_unit_self_fidelity(psi in (1usize..=8).prop_flat_map(state)) {
        let rho = DensityMatrix::outer(&psi).unwrap();
        prop_assert!((rho.fidelity(&psi).unwrap() - 1.0).abs() < 1e-10);
        prop_assert!((rho.trace() - 1.0).abs() < 1e-10);
        prop_assert!(rho.is_physical(1e-10));
    }

    #[test]
    fn one_query_circuit_classifies_every_cyclic_input(
        (d, r, negative) in (3usize..=12).prop_flat_map(|d| (Just(d), 0..d, any::<bool>())),
    ) {
        let p = if negative { Permutation::reflection(d, r) } else { Permutation::rotation(d, r) }.unwrap();
        let report = run_quantum(&p, &FourierKind::standard()).unwrap();
        let want = if negative { Chirality::NegativeCyclic } else { Chirality::PositiveCyclic };
        prop_assert_eq!(report.classification, want);
        prop_assert_eq!(report.measured_index, Some(if negative { d } else { 2 }));
        prop_assert_eq!(report.oracle_queries, 1);
    }

    #[test]
    fn relabeled_circuit_classifies_conjugated_oracles(
        (sigma, r, negative) in (3usize..=8).prop_flat_map(|d| (permutation(d), 0..d, any::<bool>())),
    ) {
        let d = sigma.dim();
        let base = if negative { Permutation::reflection(d, r) } else { Permutation::rotation(d, r) }.unwrap();
        let hidden = base.relabel(&sigma).unwrap();
        let kind = FourierKind::relabeled(sigma.clone());
        let report = run_quantum(&hidden, &kind).unwrap();
        let want = if negative { Chirality::NegativeCyclic } else { Chirality::PositiveCyclic };
        prop_assert_eq!(report.classification, want);
    }
}
