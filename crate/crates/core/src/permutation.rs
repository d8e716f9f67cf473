//! Permutations of `{1..d}`, their parity and cyclic chirality, and the
//! black-box oracle unitaries built from them.
//!
//! A permutation is stored by its image list: `image[x-1] = f(x)`, 1-based.
//! The positive cyclic family is the `d` rotations of `(1, 2, .., d)`; the
//! negative family is the `d` rotations of its reversal. For `d = 3` these
//! coincide with even and odd permutations, for `d >= 4` they do not.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{check_dim, Complex, Matrix, Unitary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Chirality {
    PositiveCyclic,
    NegativeCyclic,
    NotCyclic,
}

impl Chirality {
    pub fn label(self) -> &'static str {
        match self {
            Chirality::PositiveCyclic => "positive-cyclic",
            Chirality::NegativeCyclic => "negative-cyclic",
            Chirality::NotCyclic => "not-cyclic",
        }
    }
}

impl fmt::Display for Chirality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Chirality, parity and (for cyclic permutations) the shift `r`.
///
/// Positive: `f(x) = ((x - 1 + r) mod d) + 1`.
/// Negative: `f(x) = ((r - x) mod d) + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicClass {
    pub chirality: Chirality,
    pub parity: Parity,
    pub shift: Option<usize>,
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PermutationRepr", into = "PermutationRepr")]
pub struct Permutation {
    image: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PermutationRepr {
    dim: usize,
    image: Vec<usize>,
}

impl From<Permutation> for PermutationRepr {
    fn from(p: Permutation) -> Self {
        PermutationRepr {
            dim: p.dim(),
            image: p.image,
        }
    }
}

impl TryFrom<PermutationRepr> for Permutation {
    type Error = Error;

    fn try_from(r: PermutationRepr) -> Result<Self> {
        if r.image.len() != r.dim {
            return Err(Error::DimensionMismatch {
                expected: r.dim,
                found: r.image.len(),
            });
        }
        Permutation::new(r.image)
    }
}

impl Permutation {
    /// Validates that `image` is a bijection on `{1..len}`.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let d = image.len();
        check_dim(d)?;
        let mut seen = vec![false; d];
        for &y in &image {
            if y == 0 || y > d {
                return Err(Error::InvalidPermutation(format!(
                    "value {y} outside 1..={d}"
                )));
            }
            if std::mem::replace(&mut seen[y - 1], true) {
                return Err(Error::InvalidPermutation(format!(
                    "value {y} appears twice"
                )));
            }
        }
        Ok(Self { image })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::new((1..=dim).collect())
    }

    /// Positive cyclic permutation with shift `r`: `x -> x + r (mod d)`.
    pub fn rotation(dim: usize, shift: usize) -> Result<Self> {
        Self::new((0..dim).map(|x| (x + shift) % dim + 1).collect())
    }

    /// Negative cyclic permutation with shift `r`: `x -> r - x (mod d)`.
    pub fn reflection(dim: usize, shift: usize) -> Result<Self> {
        check_dim(dim)?;
        Self::new(
            (1..=dim)
                .map(|x| (shift % dim + dim * 2 - x) % dim + 1)
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `f(x)` for 1-based `x`.
    pub fn apply(&self, x: usize) -> Result<usize> {
        self.image
            .get(x.wrapping_sub(1))
            .copied()
            .ok_or(Error::IndexOutOfRange {
                index: x,
                dim: self.dim(),
            })
    }

    /// `self ∘ other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(Permutation {
            image: other.image.iter().map(|&y| self.image[y - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.dim()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y - 1] = x + 1;
        }
        Permutation { image: inv }
    }

    pub fn inversion_count(&self) -> usize {
        let img = &self.image;
        (0..img.len())
            .map(|i| img[i + 1..].iter().filter(|&&b| b < img[i]).count())
            .sum()
    }

    /// Parity from the inversion count.
    pub fn parity(&self) -> Parity {
        if self.inversion_count().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Parity from the cycle decomposition: a `k`-cycle is `k - 1` transpositions.
    pub fn transposition_parity(&self) -> Parity {
        let d = self.dim();
        let mut visited = vec![false; d];
        let mut transpositions = 0;
        for start in 0..d {
            let mut len: usize = 0;
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                x = self.image[x] - 1;
                len += 1;
            }
            transpositions += len.saturating_sub(1);
        }
        if transpositions % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn classify_cyclic(&self) -> CyclicClass {
        let d = self.dim();
        let parity = self.parity();
        let first = self.image[0];

        let r = (first - 1) % d;
        if Self::rotation(d, r).is_ok_and(|q| q == *self) {
            return CyclicClass {
                chirality: Chirality::PositiveCyclic,
                parity,
                shift: Some(r),
            };
        }
        let r = first % d;
        if Self::reflection(d, r).is_ok_and(|q| q == *self) {
            return CyclicClass {
                chirality: Chirality::NegativeCyclic,
                parity,
                shift: Some(r),
            };
        }
        CyclicClass {
            chirality: Chirality::NotCyclic,
            parity,
            shift: None,
        }
    }

    /// Conjugation `sigma ∘ self ∘ sigma⁻¹`: the same function with every
    /// label `x` renamed to `sigma(x)`.
    pub fn relabel(&self, sigma: &Permutation) -> Result<Permutation> {
        sigma.compose(self)?.compose(&sigma.inverse())
    }

    /// Classification after undoing the relabeling `sigma`.
    pub fn classify_cyclic_relabeled(&self, sigma: &Permutation) -> Result<CyclicClass> {
        Ok(self.relabel(&sigma.inverse())?.classify_cyclic())
    }

    /// Sequence notation relative to a base ordering: the list obtained by
    /// applying `self` to the entries of `base`, i.e. `self ∘ base`.
    ///
    /// With `base` the identity this is the image list itself. For the
    /// relabeled families the members are conventionally written this way,
    /// e.g. `(3,2,4,1)` relative to the base ordering `(1,3,2,4)`.
    pub fn to_arrangement(&self, base: &Permutation) -> Result<Permutation> {
        self.compose(base)
    }

    /// Inverse of [`Permutation::to_arrangement`].
    pub fn from_arrangement(arrangement: &Permutation, base: &Permutation) -> Result<Permutation> {
        arrangement.compose(&base.inverse())
    }

    /// 0/1 matrix with `U|x⟩ = |f(x)⟩`: column `x` has its single 1 in row `f(x)`.
    pub fn oracle_unitary(&self) -> Unitary {
        let m = Matrix::from_fn(self.dim(), |r, c| {
            if self.image[c] == r + 1 {
                Complex::new(1.0, 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }
        })
        .expect("dimension validated at construction");
        Unitary::from_trusted(m)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.image.iter().map(|y| y.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses comma-separated images such as `"2,3,4,1"`; surrounding
    /// parentheses and whitespace are tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let image = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(format!("cannot parse {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(image)
    }
}

/// The `2d` cyclic permutations: the `d` rotations of `(1..d)` followed by
/// the `d` rotations of `(d..1)`, each family in list-rotation order.
pub fn enumerate_cyclic(dim: usize) -> Result<Vec<Permutation>> {
    if dim < 3 {
        return Err(Error::InvalidParameter(format!(
            "cyclic families need d >= 3, got {dim}"
        )));
    }
    check_dim(dim)?;
    let positive = (0..dim).map(|r| Permutation::rotation(dim, r));
    let negative = (0..dim).map(|j| Permutation::reflection(dim, (dim - j) % dim));
    positive.chain(negative).collect()
}
