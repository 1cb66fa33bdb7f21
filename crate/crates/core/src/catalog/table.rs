use std::fmt;

use serde::{Serialize, Serializer};

use crate::blade::binomial;

/// An orbit count, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Count {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(c) => write!(f, "{c}"),
            Count::Infinite => f.write_str("∞"),
        }
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Count::Finite(c) => s.serialize_u64(*c as u64),
            Count::Infinite => s.serialize_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CaseCounts {
    pub n: usize,
    pub k: usize,
    pub total: Count,
    pub nondegenerate: Count,
    pub stable: usize,
}

impl fmt::Display for CaseCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.total, self.nondegenerate, self.stable)
    }
}

/// Label of the table row governing `(n, k)`. Rows overlap for small `n`
/// (e.g. `k = 1 = n - 1`); all overlapping rows give the same counts and
/// the first matching label is returned.
pub fn row_label(n: usize, k: usize) -> Option<&'static str> {
    if n < 2 || k == 0 || k > n {
        return None;
    }
    Some(match (n, k) {
        (_, 1) => "k=1",
        (n, 2) if n % 2 == 0 => "k=2, n even",
        (_, 2) => "k=2, n odd",
        (6, 3) => "k=3, n=6",
        (7, 3) => "k=3, n=7",
        (8, 3) => "k=3, n=8",
        (7, 4) => "k=4, n=7",
        (8, 4) => "k=4, n=8",
        (8, 5) => "k=5, n=8",
        (n, k) if k == n => "k=n",
        (n, k) if k + 1 == n => "k=n-1",
        (n, k) if k + 2 == n && n % 4 == 2 => "k=n-2, n=2 mod 4",
        (n, k) if k + 2 == n => "k=n-2, n!=2 mod 4",
        _ => "3<=k<=n-3, n>=9",
    })
}

/// The published counts (orbits, non-degenerate orbits, stable orbits).
pub fn reference_counts(n: usize, k: usize) -> Option<CaseCounts> {
    use Count::{Finite, Infinite};
    let label = row_label(n, k)?;
    let (total, nondegenerate, stable) = match label {
        "k=1" => (Finite(2), Finite(0), 1),
        "k=2, n even" => (Finite(n / 2 + 1), Finite(1), 1),
        "k=2, n odd" => (Finite((n + 1) / 2), Finite(0), 1),
        "k=3, n=6" => (Finite(6), Finite(3), 2),
        "k=3, n=7" => (Finite(14), Finite(8), 2),
        "k=3, n=8" => (Finite(35), Finite(21), 3),
        "k=4, n=7" => (Finite(20), Finite(15), 4),
        "k=4, n=8" => (Infinite, Infinite, 0),
        "k=5, n=8" => (Finite(35), Finite(31), 3),
        "3<=k<=n-3, n>=9" => (Infinite, Infinite, 0),
        "k=n-2, n=2 mod 4" => (Finite(n / 2 + 2), Finite(n / 2), 2),
        "k=n-2, n!=2 mod 4" => (Finite(n / 2 + 1), Finite(n / 2 - 1), 1),
        "k=n-1" => (Finite(2), Finite(0), 1),
        "k=n" => (Finite(2), Finite(1), 1),
        _ => unreachable!("every label is listed"),
    };
    Some(CaseCounts { n, k, total, nondegenerate, stable })
}

/// `dim GL(n) < dim Λ^k`: no orbit is open and there are uncountably many
/// orbits, both in total and among the (open, dense) non-degenerate forms.
pub fn dimension_forces_infinite(n: usize, k: usize) -> bool {
    n * n < binomial(n, k)
}
