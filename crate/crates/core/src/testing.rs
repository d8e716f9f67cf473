//! Seeded random fixtures shared by unit tests.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Complex, Matrix, StateVector, Unitary};

pub fn random_complex(rng: &mut ChaCha8Rng) -> Complex {
    Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> StateVector {
    let amps = (0..dim).map(|_| random_complex(rng)).collect();
    StateVector::normalized(amps).unwrap()
}

/// Gram-Schmidt on the columns of a random complex matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> Unitary {
    let mut cols: Vec<Vec<Complex>> = Vec::new();
    while cols.len() < dim {
        let mut v: Vec<Complex> = (0..dim).map(|_| random_complex(rng)).collect();
        for q in &cols {
            let proj: Complex = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= proj * qi;
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-6 {
            cols.push(v.into_iter().map(|z| z / n).collect());
        }
    }
    Unitary::new(Matrix::from_fn(dim, |r, k| cols[k][r]).unwrap()).unwrap()
}

/// Random Hermitian matrix with entries in the unit box.
pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> Matrix {
    let m = Matrix::from_fn(dim, |_, _| random_complex(rng)).unwrap();
    crate::linalg::hermitize(m)
}
