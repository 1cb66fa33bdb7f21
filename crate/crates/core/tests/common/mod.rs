//! Reference implementations built directly from the definitions, sharing
//! no code with the library beyond the number type: multilinear evaluation
//! on basis vectors, permutation signs and the Leibniz determinant.
#![allow(dead_code)]

use std::collections::BTreeMap;

use formorbits::exterior::{Alternating, Variance};
use formorbits::{Blade, Matrix, Scalar};

/// Coefficients keyed by strictly increasing 1-based index lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dense {
    pub n: usize,
    pub k: usize,
    pub coeffs: BTreeMap<Vec<usize>, Scalar>,
}

impl Dense {
    pub fn new(n: usize, k: usize) -> Dense {
        Dense { n, k, coeffs: BTreeMap::new() }
    }

    pub fn from_alt<V: Variance>(x: &Alternating<V>) -> Dense {
        let mut d = Dense::new(x.dim(), x.grade());
        for (b, c) in x.terms() {
            d.coeffs.insert(b.indices().collect(), c.clone());
        }
        d
    }

    pub fn add(&mut self, key: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(key.clone()).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn get(&self, key: &[usize]) -> Scalar {
        self.coeffs.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficients on all increasing index lists, lexicographic.
    pub fn dense_vector(&self) -> Vec<Scalar> {
        subsets(self.n, self.k).iter().map(|s| self.get(s)).collect()
    }
}

/// Increasing `k`-subsets of `1..=n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Sign of the permutation sorting `seq`, `0` if an entry repeats.
pub fn perm_sign(seq: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] == seq[j] {
                return 0;
            }
            if seq[i] > seq[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// `α(e_{a_1}, …, e_{a_k})` for arbitrary (unsorted, repeating) indices.
pub fn eval_basis(alpha: &Dense, args: &[usize]) -> Scalar {
    let s = perm_sign(args);
    if s == 0 {
        return Scalar::zero();
    }
    let mut sorted = args.to_vec();
    sorted.sort_unstable();
    &alpha.get(&sorted) * &Scalar::from_int(s)
}

/// Row-major copy of a library matrix.
pub fn rows_of(m: &Matrix) -> Vec<Vec<Scalar>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Leibniz expansion.
pub fn det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut total = Scalar::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let mut term = Scalar::from_int(perm_sign(p));
        for (i, &j) in p.iter().enumerate() {
            term = &term * &m[i][j];
            if term.is_zero() {
                return;
            }
        }
        total += &term;
    });
    total
}

fn permute(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, f);
        p.swap(i, j);
    }
}

/// `(g·α)(e_S) = α(g e_{s_1}, …, g e_{s_k})`, expanded multilinearly.
pub fn pullback(g: &[Vec<Scalar>], alpha: &Dense) -> Dense {
    let n = alpha.n;
    let mut out = Dense::new(n, alpha.k);
    for s in subsets(n, alpha.k) {
        let mut total = Scalar::zero();
        for (t, c) in &alpha.coeffs {
            // α = Σ c e^T pairs with wedge of columns: a minor
            let minor: Vec<Vec<Scalar>> =
                t.iter().map(|&ti| s.iter().map(|&sj| g[ti - 1][sj - 1].clone()).collect()).collect();
            total += &(c * &det(&minor));
        }
        out.add(s, total);
    }
    out
}

/// `g·ξ`: the blade `e_T` goes to the wedge of the columns `g e_{t_i}`.
pub fn push(g: &[Vec<Scalar>], xi: &Dense) -> Dense {
    let n = xi.n;
    let mut out = Dense::new(n, xi.k);
    for s in subsets(n, xi.k) {
        let mut total = Scalar::zero();
        for (t, c) in &xi.coeffs {
            let minor: Vec<Vec<Scalar>> =
                s.iter().map(|&si| t.iter().map(|&tj| g[si - 1][tj - 1].clone()).collect()).collect();
            total += &(c * &det(&minor));
        }
        out.add(s, total);
    }
    out
}

/// `c(ξ)(e_S) = Ω(e_{t_1}, …, e_{t_l}, e_{s_1}, …)` for `Ω = e^{1…n}`: the
/// contraction inserts the factors of `ξ` into the leading slots in order.
pub fn hodge(xi: &Dense) -> Dense {
    let n = xi.n;
    let mut out = Dense::new(n, n - xi.k);
    for (t, c) in &xi.coeffs {
        let s: Vec<usize> = (1..=n).filter(|i| !t.contains(i)).collect();
        let seq: Vec<usize> = t.iter().chain(&s).copied().collect();
        out.add(s, c * &Scalar::from_int(perm_sign(&seq)));
    }
    out
}

/// `ι_{e_v} α`.
pub fn contract_basis(v: usize, alpha: &Dense) -> Dense {
    let mut out = Dense::new(alpha.n, alpha.k - 1);
    for s in subsets(alpha.n, alpha.k - 1) {
        let args: Vec<usize> = std::iter::once(v).chain(s.iter().copied()).collect();
        out.add(s, eval_basis(alpha, &args));
    }
    out
}

/// Coefficient of `e^{1…n}` in `a_1 ∧ … ∧ a_m`, summed over all ways of
/// splitting `1..=n` into blades of the factors.
pub fn wedge_top(factors: &[&Dense]) -> Scalar {
    fn rec(factors: &[&Dense], used: &mut Vec<usize>, acc: Scalar, total: &mut Scalar) {
        let Some((first, rest)) = factors.split_first() else {
            let n = used.len();
            let mut sorted = used.clone();
            sorted.sort_unstable();
            if sorted == (1..=n).collect::<Vec<_>>() {
                *total += &(&acc * &Scalar::from_int(perm_sign(used)));
            }
            return;
        };
        for (t, c) in &first.coeffs {
            if t.iter().any(|i| used.contains(i)) {
                continue;
            }
            let len = used.len();
            used.extend(t);
            rec(rest, used, &acc * c, total);
            used.truncate(len);
        }
    }
    let mut total = Scalar::zero();
    rec(factors, &mut Vec::new(), Scalar::one(), &mut total);
    total
}

/// `(E_{ij}·α)(e_S) = Σ_slots α(…, E_{ij} e_{s}, …)`, where `E_{ij}` sends
/// `e_j` to `e_i` (1-based).
pub fn elementary_action(i: usize, j: usize, alpha: &Dense) -> Dense {
    let mut out = Dense::new(alpha.n, alpha.k);
    for s in subsets(alpha.n, alpha.k) {
        let mut total = Scalar::zero();
        for slot in 0..s.len() {
            if s[slot] == j {
                let mut args = s.clone();
                args[slot] = i;
                total += &eval_basis(alpha, &args);
            }
        }
        out.add(s, total);
    }
    out
}

/// Rank by fraction-valued Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for cc in c..cols {
                    let d = &f * &rows[r][cc];
                    rows[i][cc] = &rows[i][cc] - &d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Dimension of the span of `{X·α : X ∈ gl(n)}`.
pub fn tangent_rank(alpha: &Dense) -> usize {
    let mut rows = Vec::new();
    for i in 1..=alpha.n {
        for j in 1..=alpha.n {
            rows.push(elementary_action(i, j, alpha).dense_vector());
        }
    }
    rank(rows)
}

pub fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Sign of `tr(K²)` for `K` defined by `ι_{Kv} Ω = ι_v α ∧ α`, `Ω = e^{1…6}`.
pub fn hitchin_sign(alpha: &Dense) -> i32 {
    assert_eq!((alpha.n, alpha.k), (6, 3));
    let n = 6;
    // column v of K: ι_w Ω has coefficient (-1)^{j-1} on e^{[n] \ j} for w = e_j
    let mut k = vec![vec![Scalar::zero(); n]; n];
    for v in 1..=n {
        let iv = contract_basis(v, alpha);
        for j in 1..=n {
            let rest: Vec<usize> = (1..=n).filter(|&i| i != j).collect();
            // coefficient of e^{rest} in ι_v α ∧ α, via the top coefficient of (… ) ∧ e^j
            let mut ej = Dense::new(n, 1);
            ej.add(vec![j], Scalar::one());
            let top = wedge_top(&[&iv, alpha, &ej]);
            let sign_rest = perm_sign(&rest.iter().copied().chain([j]).collect::<Vec<_>>());
            let coeff = &top * &Scalar::from_int(sign_rest);
            let sj = if j % 2 == 1 { 1 } else { -1 };
            k[j - 1][v - 1] = &coeff * &Scalar::from_int(sj);
        }
    }
    let mut tr = Scalar::zero();
    for a in 0..n {
        for b in 0..n {
            tr += &(&k[a][b] * &k[b][a]);
        }
    }
    tr.signum()
}

/// `B(e_i, e_j)` for a 3-form in dimension 7, `Ω = e^{1…7}`.
pub fn b_matrix(phi: &Dense) -> Vec<Vec<Scalar>> {
    let n = 7;
    let contractions: Vec<Dense> = (1..=n).map(|i| contract_basis(i, phi)).collect();
    (0..n).map(|i| (0..n).map(|j| wedge_top(&[&contractions[i], &contractions[j], phi])).collect()).collect()
}

pub fn blade(indices: &[usize]) -> Blade {
    Blade::from_sorted(indices).expect("valid blade")
}
