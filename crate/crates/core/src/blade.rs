//! Basis blades `e_S` / `e^S` indexed by strictly increasing index sets.
//!
//! Indices are 1-based as in the expression grammar; internally bit `i - 1`
//! of a `u64` marks index `i`, which caps the ambient dimension at 64.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(u64);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    /// Builds a blade from indices in any order, returning the sign of the
    /// sorting permutation. Repeated indices give `None` (the wedge vanishes).
    pub fn from_unsorted(indices: &[usize]) -> Option<(i32, Blade)> {
        let mut bits = 0u64;
        let mut sign = 1;
        for &i in indices {
            debug_assert!((1..=MAX_DIM).contains(&i));
            let bit = 1u64 << (i - 1);
            if bits & bit != 0 {
                return None;
            }
            // every earlier index greater than i is an inversion
            if (bits >> i).count_ones() % 2 == 1 {
                sign = -sign;
            }
            bits |= bit;
        }
        Some((sign, Blade(bits)))
    }

    /// Strictly increasing 1-based indices.
    pub fn from_sorted(indices: &[usize]) -> Result<Blade> {
        let mut bits = 0u64;
        for &i in indices {
            if !(1..=MAX_DIM).contains(&i) {
                return Err(Error::IndexOutOfRange { index: i, n: MAX_DIM });
            }
            let bit = 1u64 << (i - 1);
            if bits & bit != 0 {
                return Err(Error::DuplicateIndex { index: i });
            }
            bits |= bit;
        }
        Ok(Blade(bits))
    }

    pub fn single(i: usize) -> Blade {
        Blade(1u64 << (i - 1))
    }

    /// The blade `{1, ..., n}`.
    pub fn full(n: usize) -> Blade {
        if n == 64 {
            Blade(u64::MAX)
        } else {
            Blade((1u64 << n) - 1)
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1u64 << (i - 1)) != 0
    }

    /// Largest index, or 0 for the empty blade.
    pub fn max_index(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i + 1)
            }
        })
    }

    pub fn is_disjoint(self, other: Blade) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Blade) -> Blade {
        Blade(self.0 | other.0)
    }

    pub fn without(self, other: Blade) -> Blade {
        Blade(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Blade) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement inside `{1, ..., n}`.
    pub fn complement(self, n: usize) -> Blade {
        Blade(Blade::full(n).0 & !self.0)
    }

    /// Sign of `e_self ∧ e_other`, or `None` if they share an index.
    pub fn wedge_sign(self, other: Blade) -> Option<i32> {
        if !self.is_disjoint(other) {
            return None;
        }
        // count pairs (s, t) with s in self, t in other, s > t
        let mut inversions = 0u32;
        for t in other.indices() {
            inversions += (self.0 >> t).count_ones();
        }
        Some(if inversions % 2 == 0 { 1 } else { -1 })
    }

    /// 0-based position of index `i` within the ascending index list.
    pub fn position(self, i: usize) -> usize {
        (self.0 & ((1u64 << (i - 1)) - 1)).count_ones() as usize
    }

    /// Sign and remainder of contracting the single index `i` from the left:
    /// `(-1)^pos(i)` and `self \ {i}`.
    pub fn remove_sign(self, i: usize) -> Option<(i32, Blade)> {
        if !self.contains(i) {
            return None;
        }
        let sign = if self.position(i) % 2 == 0 { 1 } else { -1 };
        Some((sign, Blade(self.0 & !(1u64 << (i - 1)))))
    }

    /// Sign of iterated left-first contraction of `inner` (ascending order)
    /// out of `self`, together with the remaining blade.
    pub fn contract_sign(self, inner: Blade) -> Option<(i32, Blade)> {
        if !inner.is_subset_of(self) {
            return None;
        }
        let mut sign = 1;
        let mut rest = self;
        for i in inner.indices() {
            let (s, r) = rest.remove_sign(i)?;
            sign *= s;
            rest = r;
        }
        Some((sign, rest))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Grade first, then lexicographic order of the ascending index tuples.
impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.grade().cmp(&other.grade()) {
            Ordering::Equal => {}
            o => return o,
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        if self.0 & low != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{{")?;
        for (j, i) in self.indices().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

/// All grade-`k` blades in `{1, ..., n}` in lexicographic order.
pub fn basis(n: usize, k: usize) -> Vec<Blade> {
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut idx: Vec<usize> = (1..=k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(Blade::from_sorted(&idx).expect("valid combination"));
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - (k - 1 - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Position of `blade` in [`basis`]`(n, blade.grade())`.
pub fn rank_in_basis(n: usize, blade: Blade) -> usize {
    // combinatorial number system, lexicographic variant
    let k = blade.grade();
    let mut rank = 0;
    let mut prev = 0;
    for (pos, i) in blade.indices().enumerate() {
        for skipped in prev + 1..i {
            rank += binomial(n - skipped, k - pos - 1);
        }
        prev = i;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorting_sign() {
        assert_eq!(Blade::from_unsorted(&[2, 1]), Some((-1, Blade::from_sorted(&[1, 2]).unwrap())));
        assert_eq!(Blade::from_unsorted(&[3, 1, 2]).unwrap().0, 1);
        assert_eq!(Blade::from_unsorted(&[1, 1]), None);
    }

    #[test]
    fn wedge_signs() {
        let e = |v: &[usize]| Blade::from_sorted(v).unwrap();
        assert_eq!(e(&[1]).wedge_sign(e(&[2])), Some(1));
        assert_eq!(e(&[2]).wedge_sign(e(&[1])), Some(-1));
        assert_eq!(e(&[1, 2]).wedge_sign(e(&[1, 2])), None);
        assert_eq!(e(&[2, 4]).wedge_sign(e(&[1, 3])), Some(-1));
    }

    #[test]
    fn contraction_signs() {
        let e = |v: &[usize]| Blade::from_sorted(v).unwrap();
        assert_eq!(e(&[1, 2, 3]).remove_sign(2), Some((-1, e(&[1, 3]))));
        assert_eq!(e(&[1, 2, 3]).contract_sign(e(&[1, 2])), Some((1, e(&[3]))));
        assert_eq!(e(&[1, 2, 3, 4, 5, 6, 7]).contract_sign(e(&[1, 2, 3])), Some((1, e(&[4, 5, 6, 7]))));
    }

    #[test]
    fn basis_is_lexicographic_and_ranked() {
        for n in 1..=9 {
            for k in 0..=n {
                let b = basis(n, k);
                assert_eq!(b.len(), binomial(n, k));
                for (i, blade) in b.iter().enumerate() {
                    assert_eq!(rank_in_basis(n, *blade), i);
                }
                assert!(b.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }
}
