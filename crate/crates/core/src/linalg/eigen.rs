//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, and the
//! propagator `exp(-i H t)` built from it.

use super::{Complex, Matrix, Unitary};

const MAX_SWEEPS: usize = 64;

/// Eigenvalues (ascending) and matching orthonormal eigenvectors stored as
/// the columns of `vectors`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

/// Diagonalizes a Hermitian matrix. Only the upper triangle's relation to
/// the lower one is assumed; a non-Hermitian input gives meaningless output.
pub fn hermitian_eigen(h: &Matrix) -> HermitianEigen {
    let d = h.dim();
    let mut a = h.data.clone();
    let mut v = Matrix::identity(d).expect("valid dimension").data;

    let scale = a
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
        .max(f64::MIN_POSITIVE);
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..d)
            .flat_map(|r| (0..d).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| a[r * d + c].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                rotate(&mut a, &mut v, d, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a[i * d + i].re.total_cmp(&a[j * d + j].re));
    let values = order.iter().map(|&i| a[i * d + i].re).collect();
    let vectors = Matrix::from_fn(d, |r, c| v[r * d + order[c]]).expect("valid dimension");
    HermitianEigen { values, vectors }
}

/// One Jacobi step zeroing `a[p][q]`: `A <- J† A J`, `V <- V J` with
/// `J = diag(1, e^{-iφ}) · R(θ)` on the `(p, q)` plane.
fn rotate(a: &mut [Complex], v: &mut [Complex], d: usize, p: usize, q: usize) {
    let apq = a[p * d + q];
    let mag = apq.norm();
    if mag < 1e-300 {
        return;
    }
    let phase = apq / mag;
    let app = a[p * d + p].re;
    let aqq = a[q * d + q].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // Entries of J; jpp = c, jpq = s.
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    for k in 0..d {
        let akp = a[k * d + p];
        let akq = a[k * d + q];
        a[k * d + p] = akp * c + akq * jqp;
        a[k * d + q] = akp * s + akq * jqq;

        let vkp = v[k * d + p];
        let vkq = v[k * d + q];
        v[k * d + p] = vkp * c + vkq * jqp;
        v[k * d + q] = vkp * s + vkq * jqq;
    }
    for k in 0..d {
        let apk = a[p * d + k];
        let aqk = a[q * d + k];
        a[p * d + k] = apk * c + aqk * jqp.conj();
        a[q * d + k] = apk * s + aqk * jqq.conj();
    }
    a[p * d + q] = Complex::new(0.0, 0.0);
    a[q * d + p] = Complex::new(0.0, 0.0);
}

/// `exp(-i H t)` for Hermitian `H`, exact up to the eigensolver's round-off.
pub fn unitary_evolution(h: &Matrix, t: f64) -> Unitary {
    let HermitianEigen { values, vectors } = hermitian_eigen(h);
    let d = h.dim();
    let phases: Vec<Complex> = values
        .iter()
        .map(|&l| Complex::from_polar(1.0, -l * t))
        .collect();
    let m = Matrix::from_fn(d, |r, c| {
        (0..d)
            .map(|k| vectors[(r, k)] * phases[k] * vectors[(c, k)].conj())
            .sum()
    })
    .expect("valid dimension");
    Unitary::from_trusted(m)
}
