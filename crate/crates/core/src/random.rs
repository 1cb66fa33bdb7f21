//! Seeded pseudorandom group elements and forms.
//!
//! Group elements are products of a signed permutation, a few elementary
//! transvections with coefficients in {±1, ±2} and an optional small
//! diagonal. Entries stay small, so the exact arithmetic downstream stays on
//! the machine-integer fast path, while the generated subgroup is all of
//! `GL(n, Q)`'s sign classes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blade;
use crate::exterior::{Alternating, GlElement, Variance};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Required sign of the determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetSign {
    Any,
    Positive,
    Negative,
}

pub fn random_gl<R: Rng + ?Sized>(rng: &mut R, n: usize, sign: DetSign) -> GlElement {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = Matrix::zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        m[(i, j)] = if rng.gen_bool(0.5) { Scalar::one() } else { -Scalar::one() };
    }
    if n > 1 {
        for _ in 0..n + 2 {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c = Scalar::from_int(*[-2, -1, 1, 2].choose(rng).expect("nonempty"));
            // column j += c * column i
            for r in 0..n {
                let v = &m[(r, i)] * &c;
                if !v.is_zero() {
                    m[(r, j)] += &v;
                }
            }
        }
    }
    if rng.gen_bool(0.3) {
        let col = rng.gen_range(0..n);
        let d = Scalar::new(*[2, 3].choose(rng).expect("nonempty"), *[1, 2].choose(rng).expect("nonempty"));
        for r in 0..n {
            m[(r, col)] = &m[(r, col)] * &d;
        }
    }
    let mut g = GlElement::new(m).expect("product of invertible factors");
    let flip = match sign {
        DetSign::Any => false,
        DetSign::Positive => g.det().is_negative(),
        DetSign::Negative => g.det().is_positive(),
    };
    if flip {
        let mut m = g.matrix().clone();
        let col = rng.gen_range(0..n);
        for r in 0..n {
            m[(r, col)] = -&m[(r, col)];
        }
        g = GlElement::new(m).expect("invertible");
    }
    g
}

/// Random element with about `density` of the basis blades populated by
/// small nonzero integers.
pub fn random_alternating<V: Variance, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    k: usize,
    density: f64,
) -> Alternating<V> {
    let terms = blade::basis(n, k).into_iter().filter_map(|b| {
        if rng.gen_bool(density) {
            let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            Some((b, Scalar::from_int(c)))
        } else {
            None
        }
    });
    let terms: Vec<_> = terms.collect();
    Alternating::from_terms(n, k, terms).expect("valid dimensions")
}

/// Random `n×n` integer matrix with entries in `-2..=2`.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = Scalar::from_int(rng.gen_range(-2..=2));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_sign_is_respected() {
        let mut rng = rng_from_seed(7);
        for n in 1..=6 {
            for _ in 0..20 {
                assert!(random_gl(&mut rng, n, DetSign::Positive).det().is_positive());
                assert!(random_gl(&mut rng, n, DetSign::Negative).det().is_negative());
            }
        }
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_gl(&mut rng_from_seed(3), 5, DetSign::Any);
        let b = random_gl(&mut rng_from_seed(3), 5, DetSign::Any);
        assert_eq!(a, b);
    }
}
