#![allow(dead_code)]

use proptest::prelude::*;
use qudit_core::{Complex, Matrix, Permutation, StateVector, Unitary};

pub const CASES: u32 = 500;

pub fn amplitudes(dim: usize) -> impl Strategy<Value = Vec<Complex>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim)
        .prop_map(|v| v.into_iter().map(|(re, im)| Complex::new(re, im)).collect())
}

pub fn state(dim: usize) -> impl Strategy<Value = StateVector> {
    amplitudes(dim)
        .prop_filter("non-degenerate", |a| {
            a.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3
        })
        .prop_map(|a| StateVector::normalized(a).unwrap())
}

/// Gram-Schmidt on random columns.
pub fn unitary(dim: usize) -> impl Strategy<Value = Unitary> {
    prop::collection::vec(amplitudes(dim), dim).prop_filter_map("rank deficient", move |cols| {
        let mut basis: Vec<Vec<Complex>> = Vec::with_capacity(dim);
        for mut v in cols {
            for b in &basis {
                let proj: Complex = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= proj * y);
            }
            let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n < 1e-3 {
                return None;
            }
            basis.push(v.into_iter().map(|z| z / n).collect());
        }
        Unitary::new(Matrix::from_fn(dim, |r, c| basis[c][r]).unwrap()).ok()
    })
}

pub fn permutation(dim: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=dim).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

pub fn perm_pair() -> impl Strategy<Value = (Permutation, Permutation)> {
    (3usize..=8).prop_flat_map(|d| (permutation(d), permutation(d)))
}

pub fn state_and_unitary() -> impl Strategy<Value = (StateVector, Unitary)> {
    (2usize..=8).prop_flat_map(|d| (state(d), unitary(d)))
}

pub fn check_unitarity_and_norm(psi: &StateVector, u: &Unitary) -> Result<(), TestCaseError> {
    prop_assert!(u.matrix().unitarity_error() < 1e-10);
    let out = u.apply(psi).unwrap();
    prop_assert!((out.norm() - 1.0).abs() < 1e-10);
    let back = u.adjoint().apply(&out).unwrap();
    prop_assert!(back.distance(psi).unwrap() < 1e-10);
    Ok(())
}

pub fn check_parity_homomorphism(p: &Permutation, q: &Permutation) -> Result<(), TestCaseError> {
    prop_assert_eq!(
        p.compose(q).unwrap().parity(),
        p.parity().combine(q.parity())
    );
    prop_assert_eq!(p.parity(), p.transposition_parity());
    prop_assert_eq!(p.inverse().parity(), p.parity());
    Ok(())
}

pub fn check_oracle_homomorphism(p: &Permutation, q: &Permutation) -> Result<(), TestCaseError> {
    let lhs = p.compose(q).unwrap().oracle_unitary();
    let rhs = p.oracle_unitary().then_after(&q.oracle_unitary()).unwrap();
    prop_assert_eq!(lhs.matrix().max_abs_diff(rhs.matrix()).unwrap(), 0.0);
    let inv = p.inverse().oracle_unitary();
    prop_assert_eq!(
        inv.matrix()
            .max_abs_diff(p.oracle_unitary().adjoint().matrix())
            .unwrap(),
        0.0
    );
    Ok(())
}

pub fn phase_triple() -> impl Strategy<Value = (StateVector, f64, f64)> {
    (
        (1usize..=8).prop_flat_map(state),
        0.0..std::f64::consts::TAU,
        0.0..std::f64::consts::TAU,
    )
}

/// Reflexive, symmetric and transitive on `psi ~ e^{ia} psi ~ e^{i(a+b)} psi`.
pub fn check_phase_equivalence(psi: &StateVector, a: f64, b: f64) -> Result<(), TestCaseError> {
    let tol = 1e-10;
    let phi = psi.scale(Complex::from_polar(1.0, a));
    let chi = phi.scale(Complex::from_polar(1.0, b));
    prop_assert!(psi.equal_up_to_global_phase(psi, tol).unwrap());
    prop_assert!(psi.equal_up_to_global_phase(&phi, tol).unwrap());
    prop_assert!(phi.equal_up_to_global_phase(psi, tol).unwrap());
    prop_assert!(phi.equal_up_to_global_phase(&chi, tol).unwrap());
    prop_assert!(psi.equal_up_to_global_phase(&chi, tol).unwrap());
    Ok(())
}
