//! Wire schema: `{"dim", "re", "im"}` with flat lists for vectors and
//! row-major nested lists for matrices.

use serde::{Deserialize, Serialize};

use super::{Complex, DensityMatrix, Matrix, StateVector, Unitary};
use crate::error::Error;

#[derive(Serialize, Deserialize)]
pub(crate) struct VectorRepr {
    dim: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct MatrixRepr {
    dim: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl From<StateVector> for VectorRepr {
    fn from(v: StateVector) -> Self {
        VectorRepr {
            dim: v.dim(),
            re: v.amps.iter().map(|z| z.re).collect(),
            im: v.amps.iter().map(|z| z.im).collect(),
        }
    }
}

impl TryFrom<VectorRepr> for StateVector {
    type Error = Error;

    fn try_from(r: VectorRepr) -> Result<Self, Error> {
        if r.re.len() != r.dim {
            return Err(Error::DimensionMismatch {
                expected: r.dim,
                found: r.re.len(),
            });
        }
        if r.im.len() != r.dim {
            return Err(Error::DimensionMismatch {
                expected: r.dim,
                found: r.im.len(),
            });
        }
        StateVector::new(
            r.re.into_iter()
                .zip(r.im)
                .map(|(a, b)| Complex::new(a, b))
                .collect(),
        )
    }
}

impl From<&Matrix> for MatrixRepr {
    fn from(m: &Matrix) -> Self {
        let d = m.dim();
        MatrixRepr {
            dim: d,
            re: (0..d)
                .map(|r| m.row(r).iter().map(|z| z.re).collect())
                .collect(),
            im: (0..d)
                .map(|r| m.row(r).iter().map(|z| z.im).collect())
                .collect(),
        }
    }
}

impl TryFrom<MatrixRepr> for Matrix {
    type Error = Error;

    fn try_from(r: MatrixRepr) -> Result<Self, Error> {
        let d = r.dim;
        if r.re.len() != d || r.im.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: r.re.len().max(r.im.len()),
            });
        }
        let rows =
            r.re.into_iter()
                .zip(r.im)
                .map(|(re, im)| {
                    if re.len() != d || im.len() != d {
                        return Err(Error::DimensionMismatch {
                            expected: d,
                            found: re.len().max(im.len()),
                        });
                    }
                    Ok(re
                        .into_iter()
                        .zip(im)
                        .map(|(a, b)| Complex::new(a, b))
                        .collect())
                })
                .collect::<Result<Vec<Vec<Complex>>, Error>>()?;
        Matrix::from_rows(rows)
    }
}

impl From<Unitary> for MatrixRepr {
    fn from(u: Unitary) -> Self {
        MatrixRepr::from(&u.0)
    }
}

impl TryFrom<MatrixRepr> for Unitary {
    type Error = Error;

    fn try_from(r: MatrixRepr) -> Result<Self, Error> {
        Unitary::new(Matrix::try_from(r)?)
    }
}

impl From<DensityMatrix> for MatrixRepr {
    fn from(rho: DensityMatrix) -> Self {
        MatrixRepr::from(&rho.0)
    }
}

impl TryFrom<MatrixRepr> for DensityMatrix {
    type Error = Error;

    fn try_from(r: MatrixRepr) -> Result<Self, Error> {
        DensityMatrix::new(Matrix::try_from(r)?)
    }
}
