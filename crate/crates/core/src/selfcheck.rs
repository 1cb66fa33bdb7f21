//! Seeded randomized checks of the library against its own structural
//! identities and the builtin catalogs. Each suite reports independently.

use serde::Serialize;

use crate::catalog::{
    builtin_catalog, dimension_forces_infinite, lemma2_consistency, theorem_table, verify_table, Catalog,
};
use crate::error::Result;
use crate::exterior::{KVector, VolumeForm};
use crate::orbit::{hodge_dual, inverse_hodge_dual, is_stable};
use crate::random::{random_alternating, random_gl, rng_from_seed, DetSign};

/// Largest dimension covered by the orbit count table.
pub const MAX_DIM: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    /// Number of individual checks performed.
    pub checks: usize,
    /// At most a handful of failure descriptions.
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn from_failures(name: &'static str, checks: usize, failures: Vec<String>) -> Self {
        SuiteResult { name, passed: failures.is_empty(), checks, failures: failures.into_iter().take(5).collect() }
    }
}

/// `(n, k)` with `2 <= n <= MAX_DIM`, `1 <= k <= n` and finitely many orbits.
pub fn finite_cases() -> Vec<(usize, usize)> {
    (2..=MAX_DIM)
        .flat_map(|n| (1..=n).map(move |k| (n, k)))
        .filter(|&(n, k)| !dimension_forces_infinite(n, k))
        .collect()
}

/// Every finite catalog, in `finite_cases` order.
pub fn all_catalogs() -> Result<Vec<std::sync::Arc<Catalog>>> {
    finite_cases().into_iter().map(|(n, k)| builtin_catalog(n, k)).collect()
}

/// `g·c(ξ) = det(g)·c(g⁻¹·ξ)` for `trials` random pairs per finite case.
pub fn duality_equivariance(seed: u64, trials: usize) -> Result<SuiteResult> {
    let mut rng = rng_from_seed(seed);
    let mut failures = Vec::new();
    let mut checks = 0;
    for (n, k) in finite_cases() {
        let omega = VolumeForm::standard(n)?;
        for t in 0..trials {
            let g = random_gl(&mut rng, n, DetSign::Any);
            let xi: KVector = random_alternating(&mut rng, n, k, 0.5);
            let lhs = hodge_dual(&xi, &omega)?.act(&g)?;
            let rhs = hodge_dual(&xi.act(&g.inverse())?, &omega)?.scale(g.det());
            checks += 1;
            if lhs != rhs {
                failures.push(format!("({n}, {k}) trial {t}: g = {g}, xi = {xi}"));
            }
        }
    }
    Ok(SuiteResult::from_failures("duality_equivariance", checks, failures))
}

/// `is_stable(ξ) = is_stable(c(ξ))` for every catalog representative, read
/// both as a multivector `ξ` and as the dual `c⁻¹(α)` of the form `α`.
pub fn duality_stability() -> Result<SuiteResult> {
    let mut failures = Vec::new();
    let mut checks = 0;
    for c in all_catalogs()? {
        // top degree pairs with degree 0, where every element is unstable
        if c.k() == c.n() {
            continue;
        }
        let omega = VolumeForm::standard(c.n())?;
        for e in c.entries() {
            let xi = e.as_multivector();
            let pre = inverse_hodge_dual(&e.rep, &omega)?;
            checks += 2;
            if is_stable(&xi) != is_stable(&hodge_dual(&xi, &omega)?) || is_stable(&pre) != is_stable(&e.rep) {
                failures.push(e.id.clone());
            }
        }
    }
    Ok(SuiteResult::from_failures("duality_stability", checks, failures))
}

/// Degenerate orbits against the orbits one dimension down, for every pair
/// of finite cases.
pub fn lemma2_suite() -> Result<SuiteResult> {
    let finite = finite_cases();
    let mut failures = Vec::new();
    let mut checks = 0;
    for &(n, k) in &finite {
        if n < 3 || k == n || !finite.contains(&(n - 1, k)) {
            continue;
        }
        checks += 1;
        if let Err(e) = lemma2_consistency(n, k) {
            failures.push(format!("({n}, {k}): {e}"));
        }
    }
    Ok(SuiteResult::from_failures("lemma2_consistency", checks, failures))
}

/// Shipped and constructed certificates verify, and every `(7, 3)` entry is
/// decided one way or the other.
pub fn certificate_audit() -> Result<SuiteResult> {
    use crate::catalog::CertificateStatus as S;
    let mut failures = Vec::new();
    let mut checks = 0;
    for c in all_catalogs()? {
        for a in c.validate()?.certificate_audit {
            checks += 1;
            if matches!(a.status, S::Invalid | S::Undecided) {
                failures.push(format!("{}: {:?}", a.id, a.status));
            }
        }
    }
    Ok(SuiteResult::from_failures("certificate_audit", checks, failures))
}

/// Seeded samples of every orbit classify back to their orbit.
pub fn classification_round_trip(seed: u64, trials: usize) -> Result<SuiteResult> {
    let mut failures = Vec::new();
    let mut checks = 0;
    for c in all_catalogs()? {
        for (i, e) in c.entries().iter().enumerate() {
            for t in 0..trials {
                let s = seed.wrapping_mul(1_000_003).wrapping_add((i * trials + t) as u64);
                let alpha = c.sample(&e.id, s)?;
                checks += 1;
                match c.classify(&alpha) {
                    Ok(r) if r.id == e.id && r.candidates.len() == 1 => {}
                    Ok(r) => failures.push(format!("{} seed {s}: got {:?}", e.id, r.candidates)),
                    Err(err) => failures.push(format!("{} seed {s}: {err}", e.id)),
                }
            }
        }
    }
    Ok(SuiteResult::from_failures("classification_round_trip", checks, failures))
}

/// The computed orbit count table against the reference counts.
pub fn table_suite() -> Result<SuiteResult> {
    let table = theorem_table(MAX_DIM)?;
    let failures = verify_table(&table)
        .into_iter()
        .map(|m| format!("({}, {}) {}: computed {}, expected {}", m.n, m.k, m.column, m.computed, m.expected))
        .collect();
    Ok(SuiteResult::from_failures("orbit_table", table.len(), failures))
}

/// All suites, ordered by name.
pub fn run(seed: u64, trials: usize) -> Result<Vec<SuiteResult>> {
    let mut out = vec![
        certificate_audit()?,
        classification_round_trip(seed, trials)?,
        duality_equivariance(seed, trials)?,
        duality_stability()?,
        lemma2_suite()?,
        table_suite()?,
    ];
    out.sort_by_key(|s| s.name);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_cases_cover_the_table() {
        let cases = finite_cases();
        assert!(cases.contains(&(7, 4)) && cases.contains(&(8, 5)) && cases.contains(&(9, 7)));
        assert!(!cases.contains(&(8, 4)) && !cases.contains(&(9, 3)));
    }

    #[test]
    fn small_run_passes() {
        for s in run(3, 1).unwrap() {
            assert!(s.passed, "{}: {:?}", s.name, s.failures);
        }
    }
}
