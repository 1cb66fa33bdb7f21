use serde::{Deserialize, Serialize};

use crate::blade::{self, Blade};
use crate::error::{Error, Result};
use crate::exterior::{contract, contract_into_vector, Alternating, GlElement, KForm, KVector, Variance, VolumeForm};
use crate::matrix::{integer_capped_rank, rank_of_rows, Matrix};
use crate::orbit::subspace::Subspace;
use crate::orbit::symmetric::{Signature, SymmetricForm};
use crate::scalar::Scalar;

/// Kernel of `v ↦ ι_v α`.
pub fn annihilator(alpha: &KForm) -> Result<Subspace> {
    let n = alpha.dim();
    let k = alpha.grade();
    if k == 0 {
        return Err(Error::GradeZero);
    }
    // column i holds the coefficients of ι_{e_i} α
    let lower = blade::basis(n, k - 1);
    let mut m = Matrix::zeros(lower.len(), n);
    for (b, c) in alpha.terms() {
        for i in b.indices() {
            let (sign, rest) = b.remove_sign(i).expect("index in blade");
            let r = blade::rank_in_basis(n, rest);
            m[(r, i - 1)] = if sign < 0 { -c } else { c.clone() };
        }
    }
    Subspace::span(n, m.nullspace())
}

pub fn is_nondegenerate(alpha: &KForm) -> Result<bool> {
    Ok(annihilator(alpha)?.is_zero())
}

/// Smallest `W` with `ξ ∈ Λ^k(W)`: the span of all contractions of `ξ` by
/// basis `(k-1)`-forms.
pub fn support(xi: &KVector) -> Subspace {
    let n = xi.dim();
    let k = xi.grade();
    if k == 0 || xi.is_zero() {
        return Subspace::zero(n);
    }
    let mut vectors = Vec::new();
    for b in blade::basis(n, k - 1) {
        let beta = KForm::from_terms(n, k - 1, [(b, Scalar::one())]).expect("valid blade");
        let v = contract_into_vector(&beta, xi).expect("grades fit");
        if !v.is_zero() {
            vectors.push(v.to_dense());
        }
    }
    Subspace::span(n, vectors).expect("length n")
}

/// `X·α` for any square matrix `X`.
pub fn infinitesimal_action<V: Variance>(x: &Matrix, alpha: &Alternating<V>) -> Result<Alternating<V>> {
    alpha.infinitesimal(x)
}

/// Rows `E_ij · α` in row-major order of `(i, j)`, as dense coefficient
/// vectors of length `C(n, k)`.
pub fn tangent_rows<V: Variance>(alpha: &Alternating<V>) -> Vec<Vec<Scalar>> {
    let n = alpha.dim();
    let k = alpha.grade();
    let width = blade::binomial(n, k);
    let mut rows = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let mut row = vec![Scalar::zero(); width];
            for (b, c) in alpha.elementary_terms(i, j) {
                row[blade::rank_in_basis(n, b)] += &c;
            }
            rows.push(row);
        }
    }
    rows
}

/// Rank of `X ↦ X·α` on `gl(n)`.
pub fn orbit_tangent_rank<V: Variance>(alpha: &Alternating<V>) -> usize {
    if alpha.is_zero() {
        return 0;
    }
    rank_of_rows(tangent_rows(alpha))
}

pub fn stabilizer_dim<V: Variance>(alpha: &Alternating<V>) -> usize {
    alpha.dim() * alpha.dim() - orbit_tangent_rank(alpha)
}

/// The orbit is open iff the infinitesimal action is onto.
pub fn is_stable<V: Variance>(alpha: &Alternating<V>) -> bool {
    orbit_tangent_rank(alpha) == blade::binomial(alpha.dim(), alpha.grade())
}

/// Basis of the stabilizer algebra `{X : X·α = 0}`.
pub fn stabilizer_algebra<V: Variance>(alpha: &Alternating<V>) -> Vec<Matrix> {
    let n = alpha.dim();
    let rows = tangent_rows(alpha);
    let width = blade::binomial(n, alpha.grade());
    let mut m = Matrix::zeros(width, n * n);
    for (x, row) in rows.iter().enumerate() {
        for (r, v) in row.iter().enumerate() {
            if !v.is_zero() {
                m[(r, x)] = v.clone();
            }
        }
    }
    m.nullspace()
        .into_iter()
        .map(|v| Matrix::from_rows(primitive(v).chunks(n).map(<[Scalar]>::to_vec).collect()))
        .collect()
}

/// Rescales a nonzero rational vector to a primitive integer vector, which
/// keeps later products on the machine-word path.
fn primitive(mut v: Vec<Scalar>) -> Vec<Scalar> {
    let den =
        v.iter().filter(|x| !x.is_zero()).fold(Scalar::one(), |acc, x| acc.lcm_int(&Scalar::from_bigint(x.denom())));
    for x in v.iter_mut() {
        *x = &*x * &den;
    }
    let g = v.iter().filter(|x| !x.is_zero()).fold(Scalar::zero(), |acc, x| acc.gcd_int(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = x.div_exact_int(&g);
        }
    }
    v
}

/// Derived algebra dimension of an integer matrix basis, with brackets and
/// fraction-free elimination in `i128`. `None` for non-integral input or on
/// overflow.
fn integer_derived_dim(basis: &[Matrix]) -> Option<usize> {
    let d = basis.len();
    let n = basis.first().map_or(0, Matrix::rows);
    let mats: Vec<Vec<i128>> = basis
        .iter()
        .map(|m| m.entries().iter().map(|x| x.to_i64().map(i128::from)).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let mut brackets = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            let (x, y) = (&mats[a], &mats[b]);
            let mut c = vec![0i128; n * n];
            for i in 0..n {
                for l in 0..n {
                    let (xil, yil) = (x[i * n + l], y[i * n + l]);
                    if xil == 0 && yil == 0 {
                        continue;
                    }
                    for j in 0..n {
                        let t = xil.checked_mul(y[l * n + j])?.checked_sub(yil.checked_mul(x[l * n + j])?)?;
                        c[i * n + j] = c[i * n + j].checked_add(t)?;
                    }
                }
            }
            if c.iter().any(|&v| v != 0) {
                brackets.push(c);
            }
        }
    }
    integer_capped_rank(brackets, d)
}

fn rational_capped_rank(vectors: impl Iterator<Item = Vec<Scalar>>, cap: usize) -> usize {
    // rows are kept with a unit pivot at `pivots[i]`
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for mut v in vectors {
        if rows.len() >= cap {
            break;
        }
        for (row, &p) in rows.iter().zip(&pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { continue };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        rows.push(v);
        pivots.push(p);
    }
    rows.len()
}

/// Conjugation invariants of a matrix Lie algebra: dimension, signature of
/// the trace form `tr(XY)` and dimension of the derived algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraProfile {
    pub dim: usize,
    pub trace_form: Signature,
    pub derived_dim: usize,
}

pub fn algebra_profile(basis: &[Matrix]) -> AlgebraProfile {
    let d = basis.len();
    let mut gram = Matrix::zeros(d, d);
    for a in 0..d {
        for b in a..d {
            let t = basis[a].trace_of_product(&basis[b]);
            gram[(a, b)] = t.clone();
            gram[(b, a)] = t;
        }
    }
    let trace_form = SymmetricForm::new(gram).expect("symmetric by construction").signature();
    // the derived algebra lies inside the algebra, so its rank is capped by d
    let derived_dim = integer_derived_dim(basis).unwrap_or_else(|| {
        let brackets = (0..d)
            .flat_map(|a| (a + 1..d).map(move |b| (a, b)))
            .map(|(a, b)| (&basis[a] * &basis[b]).sub(&(&basis[b] * &basis[a])))
            .filter(|c| !c.is_zero())
            .map(|c| c.entries().to_vec());
        rational_capped_rank(brackets, d)
    });
    AlgebraProfile { dim: d, trace_form, derived_dim }
}

pub fn stabilizer_profile<V: Variance>(alpha: &Alternating<V>) -> AlgebraProfile {
    algebra_profile(&stabilizer_algebra(alpha))
}

fn check_volume(n: usize, omega: &VolumeForm) -> Result<()> {
    if omega.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: omega.dim() });
    }
    Ok(())
}

/// `c(ξ) = ι_ξ Ω`.
pub fn hodge_dual(xi: &KVector, omega: &VolumeForm) -> Result<KForm> {
    check_volume(xi.dim(), omega)?;
    contract(xi, omega.as_form())
}

/// The inverse of [`hodge_dual`].
pub fn inverse_hodge_dual(rho: &KForm, omega: &VolumeForm) -> Result<KVector> {
    let n = rho.dim();
    check_volume(n, omega)?;
    let full = Blade::full(n);
    let scale = omega.coefficient();
    let terms: Vec<(Blade, Scalar)> = rho
        .terms()
        .map(|(t, c)| {
            let s = t.complement(n);
            let (sign, _) = full.contract_sign(s).expect("subset of full blade");
            let v = c / &scale;
            (s, if sign < 0 { -v } else { v })
        })
        .collect();
    KVector::from_terms(n, n - rho.grade(), terms)
}

/// Antisymmetric Gram matrix `A_ij = α(e_i, e_j)` of a grade-2 element.
pub fn gram_matrix<V: Variance>(alpha: &Alternating<V>) -> Result<Matrix> {
    if alpha.grade() != 2 {
        return Err(Error::GradeMismatch { expected: 2, found: alpha.grade() });
    }
    let n = alpha.dim();
    let mut m = Matrix::zeros(n, n);
    for (b, c) in alpha.terms() {
        let idx: Vec<usize> = b.indices().collect();
        m[(idx[0] - 1, idx[1] - 1)] = c.clone();
        m[(idx[1] - 1, idx[0] - 1)] = -c;
    }
    Ok(m)
}

pub fn two_form_rank<V: Variance>(alpha: &Alternating<V>) -> Result<usize> {
    Ok(gram_matrix(alpha)?.rank())
}

/// `Pf(A)` for a grade-2 element on an even-dimensional space, read off from
/// `α^{n/2} = (n/2)! Pf(A) e^{1…n}`; zero in odd dimension.
pub fn pfaffian<V: Variance>(alpha: &Alternating<V>) -> Result<Scalar> {
    if alpha.grade() != 2 {
        return Err(Error::GradeMismatch { expected: 2, found: alpha.grade() });
    }
    let n = alpha.dim();
    if n % 2 == 1 {
        return Ok(Scalar::zero());
    }
    let mut power = alpha.clone();
    let mut factorial = Scalar::one();
    for m in 2..=n / 2 {
        power = power.wedge(alpha)?;
        factorial *= &Scalar::from_int(m as i64);
    }
    Ok(power.coeff(Blade::full(n)) / factorial)
}

fn require_case<V: Variance>(
    alpha: &Alternating<V>,
    op: &'static str,
    n: usize,
    k: usize,
    expected: &'static str,
) -> Result<()> {
    if alpha.dim() != n || alpha.grade() != k {
        return Err(Error::WrongCase { op, expected, n: alpha.dim(), k: alpha.grade() });
    }
    Ok(())
}

/// The endomorphism `K` with `ι_{Kv} Ω = ι_v α ∧ α`, `Ω = e^{1…6}`.
pub fn hitchin_endomorphism(alpha: &KForm) -> Result<Matrix> {
    require_case(alpha, "hitchin invariant", 6, 3, "(6, 3)")?;
    let omega = VolumeForm::standard(6)?;
    let mut columns = Vec::with_capacity(6);
    for i in 1..=6 {
        let e = KVector::basis_blade(6, &[i])?;
        let five = alpha.contract_vector(&e)?.wedge(alpha)?;
        columns.push(inverse_hodge_dual(&five, &omega)?.to_dense());
    }
    Ok(Matrix::from_columns(&columns))
}

/// `λ(α) = tr(K²) / 6`.
pub fn hitchin_lambda(alpha: &KForm) -> Result<Scalar> {
    let k = hitchin_endomorphism(alpha)?;
    Ok(k.trace_of_product(&k) / Scalar::from_int(6))
}

pub fn hitchin_sign(alpha: &KForm) -> Result<i8> {
    Ok(hitchin_lambda(alpha)?.signum() as i8)
}

/// `B_φ(u, v) Ω = ι_u φ ∧ ι_v φ ∧ φ` with `Ω = e^{1…7}`.
pub fn b_form(phi: &KForm) -> Result<SymmetricForm> {
    require_case(phi, "B-form", 7, 3, "(7, 3)")?;
    let full = Blade::full(7);
    let iota: Vec<KForm> =
        (1..=7).map(|i| phi.contract_vector(&KVector::basis_blade(7, &[i]).expect("valid"))).collect::<Result<_>>()?;
    let mut m = Matrix::zeros(7, 7);
    for i in 0..7 {
        let left = iota[i].wedge(phi)?;
        for j in i..7 {
            let v = iota[j].wedge(&left)?.coeff(full);
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    SymmetricForm::new(m)
}

/// `g·ξ = ξ` and `det g < 0`.
pub fn verify_negdet_certificate(g: &GlElement, xi: &KVector) -> bool {
    g.det().is_negative() && xi.act(g).map(|y| &y == xi).unwrap_or(false)
}

/// `g·ξ = s ξ` with `s·det g < 0`. Then `g⁻¹·c(ξ) = (s / det g)·c(ξ)` is a
/// negative multiple of `c(ξ)`, so `c(ξ)` and `-c(ξ)` share an orbit.
pub fn verify_sign_certificate(g: &GlElement, s: &Scalar, xi: &KVector) -> bool {
    if s.is_zero() || (s * g.det()).signum() >= 0 {
        return false;
    }
    xi.act(g).map(|y| y == xi.scale(s)).unwrap_or(false)
}

/// For `ξ` whose support `W` is a proper subspace: the map fixing `W` and
/// the other standard complement vectors and negating one vector `a ∉ W`.
/// It stabilizes `ξ` and has determinant `-1`.
pub fn reflection_certificate(xi: &KVector) -> Option<GlElement> {
    let w = support(xi);
    let n = xi.dim();
    if w.dim() == n {
        return None;
    }
    let mut columns: Vec<Vec<Scalar>> = w.basis().to_vec();
    columns.extend(w.standard_complement());
    let p = Matrix::from_columns(&columns);
    let mut d = vec![Scalar::one(); n];
    d[w.dim()] = -Scalar::one();
    let g = &(&p * &Matrix::diagonal(&d)) * &p.inverse().expect("basis");
    Some(GlElement::new(g).expect("conjugate of a reflection"))
}

/// `ξ` written in a basis starting with a basis of its support, as an
/// element of `Λ^k(R^w)`, `w = dim support(ξ)`. Determined up to `GL(w)`.
pub fn restrict_to_support(xi: &KVector) -> Result<KVector> {
    let w = support(xi);
    let n = xi.dim();
    if w.dim() == n || w.dim() == 0 {
        return Ok(xi.clone());
    }
    let mut columns: Vec<Vec<Scalar>> = w.basis().to_vec();
    columns.extend(w.standard_complement());
    let p = GlElement::new(Matrix::from_columns(&columns))?;
    xi.act(&p.inverse())?.truncate_dim(w.dim())
}

/// `α ⊕ 0` on a space one dimension larger.
pub fn embed_form(alpha: &KForm) -> Result<KForm> {
    alpha.extend_dim()
}

/// A change of basis that moves the annihilator of a degenerate nonzero
/// form into the last coordinates, together with the form it induces on
/// the first `n - dim ann` coordinates. `None` for zero or non-degenerate
/// forms.
pub fn restriction(alpha: &KForm) -> Result<Option<(KForm, GlElement)>> {
    if alpha.is_zero() || alpha.grade() == 0 {
        return Ok(None);
    }
    let ann = annihilator(alpha)?;
    if ann.is_zero() {
        return Ok(None);
    }
    let n = alpha.dim();
    let mut columns = ann.standard_complement();
    let m = columns.len();
    columns.extend(ann.basis().iter().cloned());
    let p = GlElement::new(Matrix::from_columns(&columns))?;
    let restricted = alpha.act(&p)?.truncate_dim(m)?;
    debug_assert_eq!(n - ann.dim(), m);
    Ok(Some((restricted, p)))
}
