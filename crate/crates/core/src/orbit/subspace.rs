use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::KVector;
use crate::matrix::{nullspace_from_rref, rref_rows, Matrix};
use crate::scalar::Scalar;

/// A linear subspace of `R^n`, stored as the reduced row echelon basis of
/// its spanning vectors. Two subspaces are equal iff their bases are.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Subspace {
    n: usize,
    basis: Vec<Vec<Scalar>>,
    #[serde(skip)]
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { n, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Self::span(n, Matrix::identity(n).row_vecs()).expect("square identity")
    }

    /// Span of coordinate vectors of length `n`.
    pub fn span(n: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
        let (basis, pivots) = rref_rows(vectors, n);
        Ok(Subspace { n, basis, pivots })
    }

    pub fn span_vectors(n: usize, vectors: &[KVector]) -> Result<Self> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.grade() != 1 {
                return Err(Error::GradeMismatch { expected: 1, found: v.grade() });
            }
            if v.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.dim() });
            }
            rows.push(v.to_dense());
        }
        Self::span(n, rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Echelon basis as coordinate rows.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<KVector> {
        self.basis.iter().map(|v| KVector::vector(v).expect("n >= 1")).collect()
    }

    /// 0-based pivot coordinates of the echelon basis.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.len() != self.n {
            return false;
        }
        // reduce by the echelon basis
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        r.iter().all(Scalar::is_zero)
    }

    /// Image under a linear map given by its matrix.
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: m.cols() });
        }
        Self::span(m.rows(), self.basis.iter().map(|v| m.mul_vec(v)).collect())
    }

    /// Standard basis vectors completing the echelon basis to a basis of
    /// `R^n` (the non-pivot coordinates).
    pub fn standard_complement(&self) -> Vec<Vec<Scalar>> {
        let mut out = Vec::new();
        for j in (0..self.n).filter(|j| !self.pivots.contains(j)) {
            let mut v = vec![Scalar::zero(); self.n];
            v[j] = Scalar::one();
            out.push(v);
        }
        out
    }

    /// Orthogonal complement with respect to the standard pairing, viewed
    /// as a subspace of the dual space.
    pub fn annihilator_in_dual(&self) -> Subspace {
        let free = nullspace_from_rref(&self.basis, &self.pivots, self.n);
        Self::span(self.n, free).expect("consistent lengths")
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(n={}, dim={}, basis=[", self.n, self.dim())?;
        for (i, v) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
            write!(f, "{}", parts.join(","))?;
        }
        write!(f, "])")
    }
}
