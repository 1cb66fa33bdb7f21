//! Dense exact-rational matrices and the elimination kernels behind rank,
//! null space and determinant.
//!
//! Rank uses fraction-free elimination on integer rows (each row is scaled
//! to a primitive integer vector first and re-normalized by its content after
//! every update), which keeps the entries on the `i64` fast path of
//! [`Scalar`] for the structured matrices produced by the orbit analysis.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn scalar_identity(n: usize, lambda: &Scalar) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = lambda.clone();
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Panics if rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
    }

    pub fn from_columns(cols: &[Vec<Scalar>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged matrix");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_of_product(&self, other: &Matrix) -> Scalar {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = Scalar::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let (a, b) = (&self[(i, j)], &other[(j, i)]);
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
        }
        acc
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(self.row_vecs())
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (rows, pivots) = rref_rows(self.row_vecs(), self.cols);
        let mut m = Matrix::zeros(rows.len(), self.cols);
        for (i, r) in rows.into_iter().enumerate() {
            for (j, x) in r.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        (m, pivots)
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column, with a 1
    /// in its free position.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (rows, pivots) = rref_rows(self.row_vecs(), self.cols);
        nullspace_from_rref(&rows, &pivots, self.cols)
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).filter(|&r| !a[r][col].is_zero()).min_by_key(|&r| a[r][col].size_hint()) else {
                return Ok(Scalar::zero());
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det *= &pivot;
            let inv = pivot.recip();
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] * &inv;
                let (top, bottom) = a.split_at_mut(r);
                for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(l, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(i, j)] += &p;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

/// Text form `a,b;c,d` (rows separated by `;`).
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_matrix(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses `1,0;1/2,1` or a JSON array of arrays of rational strings (or
/// integers).
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let t = text.trim();
    if t.starts_with('[') {
        let v: serde_json::Value = serde_json::from_str(t)
            .map_err(|e| Error::Parse { pos: e.column(), msg: format!("invalid JSON matrix: {e}") })?;
        let rows = v.as_array().ok_or_else(|| parse_err(0, "expected an array of rows"))?;
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| parse_err(0, "expected an array of entries"))?;
            let mut r = Vec::with_capacity(row.len());
            for x in row {
                let s = match x {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(n) if n.is_i64() => n.to_string(),
                    _ => return Err(parse_err(0, "entries must be rational strings")),
                };
                r.push(s.parse::<Scalar>().map_err(|e| parse_err(0, &e.to_string()))?);
            }
            out.push(r);
        }
        return checked_rows(out);
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for row in t.split(';') {
        let mut r = Vec::new();
        let mut col = offset;
        for entry in row.split(',') {
            let s: Scalar = entry.parse().map_err(|_| parse_err(col, &format!("invalid entry {:?}", entry.trim())))?;
            r.push(s);
            col += entry.len() + 1;
        }
        offset += row.len() + 1;
        out.push(r);
    }
    checked_rows(out)
}

fn parse_err(pos: usize, msg: &str) -> Error {
    Error::Parse { pos, msg: msg.to_string() }
}

fn checked_rows(rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
    if rows.is_empty() || rows[0].is_empty() {
        return Err(parse_err(0, "empty matrix"));
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(parse_err(0, "rows have different lengths"));
    }
    Ok(Matrix::from_rows(rows))
}

/// Scales a rational row to a primitive integer row (content 1, first
/// nonzero entry sign preserved). Returns `false` for a zero row.
pub(crate) fn make_primitive(row: &mut [Scalar]) -> bool {
    let mut lcm = Scalar::one();
    let mut any = false;
    for x in row.iter() {
        if !x.is_zero() {
            any = true;
            if !x.is_integer() {
                lcm = lcm.lcm_int(&Scalar::from_bigint(x.denom()));
            }
        }
    }
    if !any {
        return false;
    }
    if !lcm.is_one() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &lcm;
            }
        }
    }
    divide_content(row);
    true
}

fn divide_content(row: &mut [Scalar]) {
    let mut g = Scalar::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd_int(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = x.div_exact_int(&g);
        }
    }
}

/// Fraction-free forward elimination; returns the echelon rows and pivot
/// columns. Rows are primitive integer vectors throughout.
pub(crate) fn echelon_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut rows: Vec<Vec<Scalar>> =
        rows.into_iter().filter_map(|mut r| if make_primitive(&mut r) { Some(r) } else { None }).collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..cols {
        if top == rows.len() {
            break;
        }
        let Some(p) = (top..rows.len()).filter(|&r| !rows[r][col].is_zero()).min_by_key(|&r| rows[r][col].size_hint())
        else {
            continue;
        };
        rows.swap(top, p);
        let pivot_row = rows[top].clone();
        let pivot = &pivot_row[col];
        let mut r = top + 1;
        while r < rows.len() {
            let row = &mut rows[r];
            if row[col].is_zero() {
                r += 1;
                continue;
            }
            let g = pivot.gcd_int(&row[col]);
            let mp = pivot.div_exact_int(&g);
            let mr = row[col].div_exact_int(&g);
            for j in col..cols {
                let a = &row[j];
                let b = &pivot_row[j];
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                let mut v = if a.is_zero() { Scalar::zero() } else { a * &mp };
                if !b.is_zero() {
                    v -= &(b * &mr);
                }
                row[j] = v;
            }
            if row[col..].iter().all(Scalar::is_zero) {
                rows.swap_remove(r);
            } else {
                divide_content(&mut row[col..]);
                r += 1;
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    (rows, pivots)
}

pub fn rank_of_rows(rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let integral: Option<Vec<Vec<i128>>> =
        rows.iter().map(|r| r.iter().map(|x| x.to_i64().map(i128::from)).collect()).collect();
    if let Some(rank) = integral.and_then(|ints| integer_capped_rank(ints, cols)) {
        return rank;
    }
    echelon_rows(rows, cols).1.len()
}

/// `None` on overflow. Rows are kept primitive, so entries stay small.
pub(crate) fn integer_capped_rank(vectors: Vec<Vec<i128>>, cap: usize) -> Option<usize> {
    let mut rows: Vec<(usize, Vec<i128>)> = Vec::new();
    for mut v in vectors {
        if rows.len() >= cap {
            break;
        }
        for (p, row) in &rows {
            let f = v[*p];
            if f == 0 {
                continue;
            }
            let a = row[*p];
            for (x, y) in v.iter_mut().zip(row) {
                *x = x.checked_mul(a)?.checked_sub(f.checked_mul(*y)?)?;
            }
            // dividing out the content is only worth it once entries grow
            if v.iter().any(|x| x.unsigned_abs() > 1 << 40) {
                let g = v.iter().fold(0u128, |g, x| gcd_u128(g, x.unsigned_abs()));
                if g > 1 {
                    let g = g as i128;
                    v.iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        if let Some(p) = v.iter().position(|&x| x != 0) {
            rows.push((p, v));
        }
    }
    Some(rows.len())
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Reduced row echelon form over the rationals.
pub fn rref_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let (mut rows, pivots) = echelon_rows(rows, cols);
    for (i, &pc) in pivots.iter().enumerate().rev() {
        let inv = rows[i][pc].recip();
        for x in rows[i].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let (above, here) = rows.split_at_mut(i);
        let pivot_row = &here[0];
        for row in above.iter_mut() {
            if row[pc].is_zero() {
                continue;
            }
            let f = row[pc].clone();
            for (x, y) in row.iter_mut().zip(pivot_row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
    }
    (rows, pivots)
}

pub fn nullspace_from_rref(rows: &[Vec<Scalar>], pivots: &[usize], cols: usize) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (row, &pc) in rows.iter().zip(pivots) {
            if !row[free].is_zero() {
                v[pc] = -&row[free];
            }
        }
        out.push(v);
    }
    out
}
