//! Homogeneous elements of the exterior algebra: k-vectors in `Λ^k(V)` and
//! k-forms in `Λ^k(V*)`, with wedge, contraction, pairing and the natural
//! `GL(V)` actions.
//!
//! Both kinds share one sparse representation, [`Alternating`], tagged with
//! a zero-sized variance marker so that forms and multivectors cannot be
//! mixed by accident. The group acts on multivectors from the left,
//! `g·(v_1∧…∧v_k) = gv_1∧…∧gv_k`, and on forms by pullback,
//! `g·α = α∘θ_{k,g}`, which is a right action: `(gh)·α = h·(g·α)`.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use crate::blade::{self, Blade, MAX_DIM};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

mod sealed {
    pub trait Sealed {}
}

/// Distinguishes contravariant (`Λ^k V`) from covariant (`Λ^k V*`) elements.
pub trait Variance: sealed::Sealed + Clone + Copy + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    const COVARIANT: bool;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Contra;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Co;

impl sealed::Sealed for Contra {}
impl sealed::Sealed for Co {}

impl Variance for Contra {
    const COVARIANT: bool = false;
}

impl Variance for Co {
    const COVARIANT: bool = true;
}

/// Sparse homogeneous element of grade `k` over an `n`-dimensional space.
/// Zero coefficients are never stored; the zero element keeps its `(n, k)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alternating<V: Variance> {
    n: usize,
    k: usize,
    coeffs: BTreeMap<Blade, Scalar>,
    _variance: PhantomData<V>,
}

pub type KVector = Alternating<Contra>;
pub type KForm = Alternating<Co>;

fn check_dims(n: usize, k: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    if k > n {
        return Err(Error::GradeTooLarge { n, k });
    }
    Ok(())
}

impl<V: Variance> Alternating<V> {
    pub fn zero(n: usize, k: usize) -> Result<Self> {
        check_dims(n, k)?;
        Ok(Alternating { n, k, coeffs: BTreeMap::new(), _variance: PhantomData })
    }

    /// The grade-0 element `c`.
    pub fn scalar(n: usize, c: Scalar) -> Result<Self> {
        let mut z = Self::zero(n, 0)?;
        z.add_term(Blade::EMPTY, c);
        Ok(z)
    }

    /// Builds from `(blade, coefficient)` terms, summing repeats.
    pub fn from_terms(n: usize, k: usize, terms: impl IntoIterator<Item = (Blade, Scalar)>) -> Result<Self> {
        let mut out = Self::zero(n, k)?;
        for (b, c) in terms {
            if b.grade() != k {
                return Err(Error::GradeMismatch { expected: k, found: b.grade() });
            }
            if b.max_index() > n {
                return Err(Error::IndexOutOfRange { index: b.max_index(), n });
            }
            out.add_term(b, c);
        }
        Ok(out)
    }

    /// Single basis blade from 1-based ascending indices.
    pub fn basis_blade(n: usize, indices: &[usize]) -> Result<Self> {
        let b = Blade::from_sorted(indices)?;
        Self::from_terms(n, indices.len(), [(b, Scalar::one())])
    }

    /// Dense coefficients in lexicographic blade order.
    pub fn from_dense(n: usize, k: usize, values: &[Scalar]) -> Result<Self> {
        let basis = blade::basis(n, k);
        if values.len() != basis.len() {
            return Err(Error::GradeMismatch { expected: basis.len(), found: values.len() });
        }
        Self::from_terms(n, k, basis.into_iter().zip(values.iter().cloned()))
    }

    pub(crate) fn add_term(&mut self, b: Blade, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn grade(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, b: Blade) -> Scalar {
        self.coeffs.get(&b).cloned().unwrap_or_default()
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Scalar)> {
        self.coeffs.iter().map(|(b, c)| (*b, c))
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); blade::binomial(self.n, self.k)];
        for (b, c) in &self.coeffs {
            out[blade::rank_in_basis(self.n, *b)] = c.clone();
        }
        out
    }

    /// Coefficient of the empty blade for grade 0, of `{1..n}` for grade n.
    pub fn scalar_part(&self) -> Scalar {
        self.coeffs.values().next().cloned().unwrap_or_default()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        if self.k != other.k {
            return Err(Error::GradeMismatch { expected: self.k, found: other.k });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self { coeffs: BTreeMap::new(), ..self.clone() };
        }
        Self { coeffs: self.coeffs.iter().map(|(b, c)| (*b, c * s)).collect(), ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(b, c)| (*b, -c)).collect(), ..self.clone() }
    }

    /// Exterior product; grades add.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        let k = self.k + other.k;
        let mut out = Self::zero(self.n, k)?;
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                if let Some(s) = a.wedge_sign(*b) {
                    let c = x * y;
                    out.add_term(a.union(*b), if s < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Same coefficients on a space of dimension `n + 1`.
    pub fn extend_dim(&self) -> Result<Self> {
        check_dims(self.n + 1, self.k)?;
        Ok(Self { n: self.n + 1, ..self.clone() })
    }

    /// Drops to dimension `m`; fails if a blade uses an index above `m`.
    pub fn truncate_dim(&self, m: usize) -> Result<Self> {
        check_dims(m, self.k)?;
        if let Some(b) = self.coeffs.keys().find(|b| b.max_index() > m) {
            return Err(Error::IndexOutOfRange { index: b.max_index(), n: m });
        }
        Ok(Self { n: m, ..self.clone() })
    }

    /// The same coefficient array read with the opposite variance (the basis
    /// identification `e_i <-> e^i`).
    pub fn reinterpret<W: Variance>(&self) -> Alternating<W> {
        Alternating { n: self.n, k: self.k, coeffs: self.coeffs.clone(), _variance: PhantomData }
    }

    /// `Σ_B c_B ∧_{b∈B} w_b` where `w_b` is column `b` of `m`. This is the
    /// compound-matrix product underlying both group actions.
    fn apply_columns(&self, m: &Matrix) -> Self {
        let n = self.n;
        let mut out = Self { coeffs: BTreeMap::new(), ..self.clone() };
        for (b, c) in &self.coeffs {
            let mut acc: BTreeMap<Blade, Scalar> = BTreeMap::from([(Blade::EMPTY, c.clone())]);
            for col in b.indices() {
                let mut next: BTreeMap<Blade, Scalar> = BTreeMap::new();
                for (partial, pc) in &acc {
                    for row in 1..=n {
                        let entry = &m[(row - 1, col - 1)];
                        if entry.is_zero() || partial.contains(row) {
                            continue;
                        }
                        let e = Blade::single(row);
                        let s = partial.wedge_sign(e).expect("disjoint");
                        let v = pc * entry;
                        let v = if s < 0 { -v } else { v };
                        let slot = next.entry(partial.union(e)).or_default();
                        *slot += &v;
                    }
                }
                next.retain(|_, v| !v.is_zero());
                acc = next;
            }
            for (blade, v) in acc {
                out.add_term(blade, v);
            }
        }
        out
    }

    /// Derivation extension of `x ∈ gl(V)`: the derivative at the identity of
    /// the group action. Vectors: `X·e_s = Σ_t X_ts e_t`; covectors:
    /// `X·e^t = Σ_s X_ts e^s`; extended by the Leibniz rule.
    pub fn infinitesimal(&self, x: &Matrix) -> Result<Self> {
        self.check_matrix(x)?;
        let mut out = Self { coeffs: BTreeMap::new(), ..self.clone() };
        for i in 1..=self.n {
            for j in 1..=self.n {
                let entry = &x[(i - 1, j - 1)];
                if entry.is_zero() {
                    continue;
                }
                for (b, c) in self.elementary_terms(i, j) {
                    out.add_term(b, c * entry);
                }
            }
        }
        Ok(out)
    }

    /// Unsimplified terms of `E_ij · self`, where `E_ij` is the matrix unit
    /// with a single 1 in row `i`, column `j` (1-based).
    pub fn elementary_terms(&self, i: usize, j: usize) -> Vec<(Blade, Scalar)> {
        // forms: e^i -> e^j; vectors: e_j -> e_i
        let (from, to) = if V::COVARIANT { (i, j) } else { (j, i) };
        let mut out = Vec::new();
        for (b, c) in &self.coeffs {
            if !b.contains(from) {
                continue;
            }
            if from == to {
                out.push((*b, c.clone()));
                continue;
            }
            if b.contains(to) {
                continue;
            }
            // replace `from` by `to` in place, then move it to sorted position
            let rest = b.without(Blade::single(from));
            let moves = b.position(from) + rest.position(to);
            out.push((rest.union(Blade::single(to)), if moves % 2 == 0 { c.clone() } else { -c }));
        }
        out
    }

    fn check_matrix(&self, m: &Matrix) -> Result<()> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        if m.rows() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: m.rows() });
        }
        Ok(())
    }
}

impl KVector {
    /// Left action `θ_{k,g}`.
    pub fn act(&self, g: &GlElement) -> Result<KVector> {
        self.check_matrix(g.matrix())?;
        Ok(self.apply_columns(g.matrix()))
    }

    /// Left action by an arbitrary (possibly singular) matrix.
    pub fn act_matrix(&self, m: &Matrix) -> Result<KVector> {
        self.check_matrix(m)?;
        Ok(self.apply_columns(m))
    }

    /// Grade-1 vector from its coordinates.
    pub fn vector(values: &[Scalar]) -> Result<KVector> {
        Self::from_dense(values.len(), 1, values)
    }
}

impl KForm {
    /// Pullback `θ^k_g(α) = α∘θ_{k,g}`, a right action.
    pub fn act(&self, g: &GlElement) -> Result<KForm> {
        self.check_matrix(g.matrix())?;
        Ok(self.apply_columns(&g.matrix().transpose()))
    }

    /// Pullback by an arbitrary (possibly singular) matrix.
    pub fn pullback(&self, m: &Matrix) -> Result<KForm> {
        self.check_matrix(m)?;
        Ok(self.apply_columns(&m.transpose()))
    }

    /// `ι_v α` for a grade-1 vector `v`.
    pub fn contract_vector(&self, v: &KVector) -> Result<KForm> {
        if v.k != 1 {
            return Err(Error::GradeMismatch { expected: 1, found: v.k });
        }
        contract(v, self)
    }

    /// `ι_ξ α`, extended by `ι_{ξ∧ζ} = ι_ζ ∘ ι_ξ`.
    pub fn contract_multi(&self, xi: &KVector) -> Result<KForm> {
        contract(xi, self)
    }

    /// `⟨α, ξ⟩` with `⟨e^S, e_T⟩ = δ_{ST}`.
    pub fn evaluate(&self, xi: &KVector) -> Result<Scalar> {
        if self.n != xi.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: xi.n });
        }
        if self.k != xi.k {
            return Err(Error::GradeMismatch { expected: self.k, found: xi.k });
        }
        Ok(self.coeffs.iter().filter_map(|(b, c)| xi.coeffs.get(b).map(|d| c * d)).sum())
    }
}

/// Shared left-first contraction `ι_ξ α` of a multivector into a form; on
/// blades `ι_{e_S} e^T = ±e^{T∖S}` with the sign of removing `s_1, s_2, …`
/// in turn.
pub fn contract(xi: &KVector, alpha: &KForm) -> Result<KForm> {
    if xi.n != alpha.n {
        return Err(Error::DimensionMismatch { expected: alpha.n, found: xi.n });
    }
    if alpha.k == 0 && xi.k == 1 {
        return Err(Error::GradeZero);
    }
    if xi.k > alpha.k {
        return Err(Error::GradeTooLarge { n: alpha.k, k: xi.k });
    }
    let mut out = KForm::zero(alpha.n, alpha.k - xi.k)?;
    for (s, x) in &xi.coeffs {
        for (t, a) in &alpha.coeffs {
            if let Some((sign, rest)) = t.contract_sign(*s) {
                let v = x * a;
                out.add_term(rest, if sign < 0 { -v } else { v });
            }
        }
    }
    Ok(out)
}

/// Dual contraction `ι_β ξ` of a form into a multivector, same sign rule.
pub fn contract_into_vector(beta: &KForm, xi: &KVector) -> Result<KVector> {
    if xi.n != beta.n {
        return Err(Error::DimensionMismatch { expected: xi.n, found: beta.n });
    }
    if beta.k > xi.k {
        return Err(Error::GradeTooLarge { n: xi.k, k: beta.k });
    }
    let mut out = KVector::zero(xi.n, xi.k - beta.k)?;
    for (s, b) in &beta.coeffs {
        for (t, x) in &xi.coeffs {
            if let Some((sign, rest)) = t.contract_sign(*s) {
                let v = b * x;
                out.add_term(rest, if sign < 0 { -v } else { v });
            }
        }
    }
    Ok(out)
}

/// An invertible `n×n` rational matrix with its determinant. Column `j` is
/// the image of the basis vector `e_{j+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GlElement {
    matrix: Matrix,
    det: Scalar,
}

impl GlElement {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        let det = matrix.determinant()?;
        if det.is_zero() {
            return Err(Error::Singular);
        }
        Ok(GlElement { matrix, det })
    }

    pub fn identity(n: usize) -> Self {
        GlElement { matrix: Matrix::identity(n), det: Scalar::one() }
    }

    /// `λ·id`; panics for `λ = 0`.
    pub fn scalar(n: usize, lambda: &Scalar) -> Self {
        assert!(!lambda.is_zero());
        GlElement { matrix: Matrix::scalar_identity(n, lambda), det: lambda.pow(n as u32) }
    }

    pub fn diagonal(entries: &[Scalar]) -> Result<Self> {
        Self::new(Matrix::diagonal(entries))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn det(&self) -> &Scalar {
        &self.det
    }

    pub fn compose(&self, other: &GlElement) -> GlElement {
        GlElement { matrix: &self.matrix * &other.matrix, det: &self.det * &other.det }
    }

    pub fn inverse(&self) -> GlElement {
        let inv = self.matrix.inverse().expect("invertible by construction");
        GlElement { matrix: inv, det: self.det.recip() }
    }

    pub fn transpose(&self) -> GlElement {
        GlElement { matrix: self.matrix.transpose(), det: self.det.clone() }
    }

    /// Image of a grade-1 vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }
}

impl fmt::Debug for GlElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GL({:?}, det {})", self.matrix, self.det)
    }
}

impl fmt::Display for GlElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.matrix, f)
    }
}

/// `Ω = c·e^{1…n}` with `c ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeForm {
    form: KForm,
}

impl VolumeForm {
    pub fn standard(n: usize) -> Result<Self> {
        Self::scaled(n, Scalar::one())
    }

    pub fn scaled(n: usize, c: Scalar) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Singular);
        }
        Ok(VolumeForm { form: KForm::from_terms(n, n, [(Blade::full(n), c)])? })
    }

    pub fn dim(&self) -> usize {
        self.form.n
    }

    pub fn coefficient(&self) -> Scalar {
        self.form.coeff(Blade::full(self.form.n))
    }

    pub fn as_form(&self) -> &KForm {
        &self.form
    }
}

impl<V: Variance> fmt::Debug for Alternating<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[n={}, k={}]({})", if V::COVARIANT { "Form" } else { "Vector" }, self.n, self.k, self)
    }
}
