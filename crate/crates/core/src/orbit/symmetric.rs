use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Sylvester signature: positive, zero and negative directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub p: usize,
    pub z: usize,
    pub q: usize,
}

impl Signature {
    pub fn new(p: usize, z: usize, q: usize) -> Self {
        Signature { p, z, q }
    }

    /// The signature of `-S`.
    pub fn swapped(self) -> Self {
        Signature { p: self.q, z: self.z, q: self.p }
    }

    /// Representative of `{self, self.swapped()}` with `p <= q`.
    pub fn unordered(self) -> Self {
        if self.p <= self.q {
            self
        } else {
            self.swapped()
        }
    }

    pub fn rank(self) -> usize {
        self.p + self.q
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.z, self.q)
    }
}

/// A symmetric rational matrix, viewed as a bilinear form.
#[derive(Clone, PartialEq, Eq)]
pub struct SymmetricForm {
    matrix: Matrix,
}

impl SymmetricForm {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        if !matrix.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(SymmetricForm { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `gᵀ S g`.
    pub fn congruent(&self, g: &Matrix) -> Result<SymmetricForm> {
        if g.rows() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: g.rows() });
        }
        SymmetricForm::new(&(&g.transpose() * &self.matrix) * g)
    }

    pub fn scale(&self, s: &Scalar) -> SymmetricForm {
        SymmetricForm { matrix: self.matrix.scale(s) }
    }

    /// Signs of a diagonalization by exact symmetric elimination. When every
    /// remaining diagonal entry vanishes, a row and column `i` are replaced
    /// by the sums with some `j` having `a_ij != 0`, creating the pivot
    /// `2 a_ij`.
    pub fn signature(&self) -> Signature {
        let n = self.dim();
        let mut a = self.matrix.row_vecs();
        let mut active: Vec<usize> = (0..n).collect();
        let (mut p, mut q) = (0, 0);
        while !active.is_empty() {
            let pivot = active.iter().copied().filter(|&i| !a[i][i].is_zero()).min_by_key(|&i| a[i][i].size_hint());
            let piv = match pivot {
                Some(i) => i,
                None => {
                    let pair = active
                        .iter()
                        .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                        .find(|&(i, j)| i != j && !a[i][j].is_zero());
                    let Some((i, j)) = pair else { break };
                    // row_i += row_j, col_i += col_j
                    for c in 0..n {
                        let v = a[j][c].clone();
                        a[i][c] += &v;
                    }
                    for r in 0..n {
                        let v = a[r][j].clone();
                        a[r][i] += &v;
                    }
                    i
                }
            };
            let d = a[piv][piv].clone();
            if d.is_positive() {
                p += 1;
            } else {
                q += 1;
            }
            active.retain(|&i| i != piv);
            let inv = d.recip();
            for &r in &active {
                if a[r][piv].is_zero() {
                    continue;
                }
                let f = &a[r][piv] * &inv;
                for &c in &active {
                    if !a[piv][c].is_zero() {
                        let v = &f * &a[piv][c];
                        a[r][c] -= &v;
                    }
                }
            }
        }
        Signature { p, z: n - p - q, q }
    }
}

impl fmt::Debug for SymmetricForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetricForm({})", self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_gl, rng_from_seed, DetSign};

    fn sym(rows: &[&[i64]]) -> SymmetricForm {
        SymmetricForm::new(Matrix::from_int_rows(rows)).unwrap()
    }

    #[test]
    fn basic_signatures() {
        assert_eq!(sym(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]).signature(), Signature::new(2, 0, 1));
        assert_eq!(SymmetricForm::new(Matrix::zeros(4, 4)).unwrap().signature(), Signature::new(0, 4, 0));
        // hyperbolic plane needs the off-diagonal pivot
        assert_eq!(sym(&[&[0, 1], &[1, 0]]).signature(), Signature::new(1, 0, 1));
        assert_eq!(sym(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]).signature(), Signature::new(1, 1, 1));
        assert!(SymmetricForm::new(Matrix::from_int_rows(&[&[0, 1], &[2, 0]])).is_err());
    }

    #[test]
    fn sylvester_law_under_random_congruence() {
        let s = sym(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, -3, 1], &[0, 0, 1, 0]]);
        let base = s.signature();
        let mut rng = rng_from_seed(11);
        for _ in 0..50 {
            let g = random_gl(&mut rng, 4, DetSign::Any);
            assert_eq!(s.congruent(g.matrix()).unwrap().signature(), base);
        }
    }
}
