use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::catalog::derive::{derive_by_duality, DualitySource};
use crate::catalog::entry::{CatalogEntry, EntryRecord, Provenance};
use crate::catalog::table::{dimension_forces_infinite, reference_counts, row_label, CaseCounts, Count};
use crate::error::{Error, Result};
use crate::exterior::{GlElement, KForm, KVector, VolumeForm};
use crate::orbit::{
    b_form, fingerprint, is_nondegenerate, is_stable, reflection_certificate, verify_negdet_certificate,
    OrbitFingerprint,
};
use crate::random::{random_gl, rng_from_seed, DetSign};
use crate::scalar::Scalar;

const DATA_6_3: &str = include_str!("../../data/6-3.json");
const DATA_7_3: &str = include_str!("../../data/7-3.json");
const DATA_8_3: &str = include_str!("../../data/8-3.json");

/// All orbit representatives of one `(n, k)`.
#[derive(Debug)]
pub struct Catalog {
    n: usize,
    k: usize,
    entries: Vec<CatalogEntry>,
    keys: OnceLock<Vec<OrbitFingerprint>>,
}

impl Clone for Catalog {
    fn clone(&self) -> Self {
        Catalog::new(self.n, self.k, self.entries.clone())
    }
}

impl Catalog {
    fn new(n: usize, k: usize, entries: Vec<CatalogEntry>) -> Self {
        Catalog { n, k, entries, keys: OnceLock::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// Orientation-free fingerprints, one per entry, computed once.
    pub fn orbit_keys(&self) -> Result<&[OrbitFingerprint]> {
        if let Some(k) = self.keys.get() {
            return Ok(k);
        }
        let keys = self.entries.iter().map(|e| Ok(fingerprint(&e.rep)?.orbit_key())).collect::<Result<Vec<_>>>()?;
        Ok(self.keys.get_or_init(|| keys))
    }

    /// Counts from recomputed flags, not the stored ones.
    pub fn counts(&self) -> Result<CaseCounts> {
        let mut nondegenerate = 0;
        let mut stable = 0;
        for e in &self.entries {
            if is_nondegenerate(&e.rep)? {
                nondegenerate += 1;
            }
            if is_stable(&e.rep) {
                stable += 1;
            }
        }
        Ok(CaseCounts {
            n: self.n,
            k: self.k,
            total: Count::Finite(self.entries.len()),
            nondegenerate: Count::Finite(nondegenerate),
            stable,
        })
    }

    /// Parses a catalog file (a JSON array of entry records) and checks
    /// every entry's flags and certificate.
    pub fn from_json(text: &str) -> Result<Catalog> {
        let records: Vec<EntryRecord> =
            serde_json::from_str(text).map_err(|e| Error::Catalog(format!("invalid catalog file: {e}")))?;
        let Some(first) = records.first() else {
            return Err(Error::Catalog("empty catalog file".into()));
        };
        let (n, k) = (first.n, first.k);
        let mut entries = Vec::with_capacity(records.len());
        for r in records {
            if (r.n, r.k) != (n, k) {
                return Err(Error::Catalog(format!("{}: mixed (n, k) in one catalog", r.id)));
            }
            let e = r.into_entry()?;
            e.check()?;
            entries.push(e);
        }
        let mut ids: Vec<&str> = entries.iter().map(|e| e.id.as_str()).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Catalog(format!("duplicate id {}", w[0])));
        }
        Ok(Catalog::new(n, k, entries))
    }

    pub fn to_json(&self) -> String {
        let records: Vec<EntryRecord> = self.entries.iter().map(EntryRecord::from_entry).collect();
        serde_json::to_string_pretty(&records).expect("plain data")
    }

    /// Matches `alpha` against the entries by orientation-free fingerprint.
    pub fn classify(&self, alpha: &KForm) -> Result<Classification> {
        if (alpha.dim(), alpha.grade()) != (self.n, self.k) {
            return Err(Error::Catalog(format!(
                "form is in Λ^{}(R^{}), catalog is for ({}, {})",
                alpha.grade(),
                alpha.dim(),
                self.n,
                self.k
            )));
        }
        let key = fingerprint(alpha)?.orbit_key();
        let keys = self.orbit_keys()?;
        let candidates: Vec<String> =
            self.entries.iter().zip(keys).filter(|(_, k)| **k == key).map(|(e, _)| e.id.clone()).collect();
        let exact_case = self.k == 1 || self.k == 2 || self.k + 1 == self.n || self.k == self.n;
        match candidates.len() {
            0 => Err(Error::Catalog(format!(
                "no ({}, {}) catalog entry has fingerprint {}",
                self.n,
                self.k,
                key.to_json()
            ))),
            1 => Ok(Classification {
                id: candidates[0].clone(),
                certainty: if exact_case { Certainty::Exact } else { Certainty::FingerprintUnique },
                candidates,
            }),
            _ => Ok(Classification { id: candidates[0].clone(), certainty: Certainty::Ambiguous, candidates }),
        }
    }

    /// `g·rep` for a seeded random `g`; `det g > 0` for orientation-split
    /// entries.
    pub fn sample(&self, id: &str, seed: u64) -> Result<KForm> {
        let e = self.get(id).ok_or_else(|| Error::UnknownId(id.to_string()))?;
        let sign = if e.orientation.is_some() { DetSign::Positive } else { DetSign::Any };
        let g = random_gl(&mut rng_from_seed(seed), self.n, sign);
        e.rep.act(&g)
    }

    /// Counts, pairwise separation by orientation-free fingerprint and the
    /// certificate audit.
    pub fn validate(&self) -> Result<ValidationReport> {
        for e in &self.entries {
            e.check()?;
        }
        let keys = self.orbit_keys()?;
        let m = self.entries.len();
        let mut separation_matrix = vec![vec![1u8; m]; m];
        let mut collisions = Vec::new();
        for i in 0..m {
            separation_matrix[i][i] = 0;
            for j in i + 1..m {
                if keys[i] == keys[j] {
                    separation_matrix[i][j] = 0;
                    separation_matrix[j][i] = 0;
                    let (a, b) = (&self.entries[i], &self.entries[j]);
                    collisions.push(Collision {
                        a: a.id.clone(),
                        b: b.id.clone(),
                        explained: a.provenance == Provenance::Literature && b.provenance == Provenance::Literature,
                    });
                }
            }
        }
        let certificate_audit = self.entries.iter().map(|e| self.audit(e)).collect::<Result<Vec<_>>>()?;
        Ok(ValidationReport {
            case: format!("{}-{}", self.n, self.k),
            counts: self.counts()?,
            separation_matrix,
            collisions,
            certificate_audit,
        })
    }

    fn audit(&self, e: &CatalogEntry) -> Result<CertificateAudit> {
        let status = match &e.certificate {
            Some(g) if verify_negdet_certificate(g, &e.as_multivector()) => CertificateStatus::Verified,
            Some(_) => CertificateStatus::Invalid,
            None if (self.n, self.k) == (7, 3) => {
                // a det < 0 stabilizer would make the B-form congruent to its negative
                let sig = b_form(&e.rep)?.signature();
                if sig.p != sig.q {
                    CertificateStatus::ExcludedByBSignature
                } else {
                    CertificateStatus::Undecided
                }
            }
            None => CertificateStatus::Absent,
        };
        Ok(CertificateAudit { id: e.id.clone(), status })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certainty {
    /// Decided by rank and zero tests.
    Exact,
    /// Exactly one entry shares the fingerprint.
    FingerprintUnique,
    /// Several entries share the fingerprint; see `candidates`.
    Ambiguous,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub id: String,
    pub certainty: Certainty,
    pub candidates: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub a: String,
    pub b: String,
    /// Both entries carry literature provenance vouching for inequivalence.
    pub explained: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateStatus {
    /// A shipped or constructed `det < 0` stabilizer verifies.
    Verified,
    /// A certificate is present but fails.
    Invalid,
    /// No `det < 0` stabilizer exists: the B-form signature has `p != q`.
    ExcludedByBSignature,
    /// Neither a certificate nor an obstruction is known.
    Undecided,
    /// Not applicable to this case.
    Absent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateAudit {
    pub id: String,
    pub status: CertificateStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub case: String,
    pub counts: CaseCounts,
    /// `1` where the two entries have different fingerprints.
    pub separation_matrix: Vec<Vec<u8>>,
    pub collisions: Vec<Collision>,
    pub certificate_audit: Vec<CertificateAudit>,
}

impl ValidationReport {
    pub fn unexplained_collisions(&self) -> usize {
        self.collisions.iter().filter(|c| !c.explained).count()
    }
}

fn entry(n: usize, k: usize, index: usize, rep: KForm, notes: &str) -> Result<CatalogEntry> {
    Ok(CatalogEntry {
        id: format!("{n}-{k}-{index:02}"),
        degenerate: !is_nondegenerate(&rep)?,
        stable: is_stable(&rep),
        rep,
        provenance: Provenance::Construction,
        certificate: None,
        orientation: None,
        notes: notes.to_string(),
    })
}

/// `Σ_{i<=r} e_{2i-1} ∧ e_{2i}` (forms or, reinterpreted, multivectors).
fn symplectic_sum(n: usize, r: usize) -> Result<KForm> {
    let terms = (1..=r).map(|i| (crate::blade::Blade::from_sorted(&[2 * i - 1, 2 * i]).expect("valid"), Scalar::one()));
    KForm::from_terms(n, 2, terms.collect::<Vec<_>>())
}

fn two_vector_sources(n: usize) -> Result<Vec<DualitySource>> {
    (0..=n / 2)
        .map(|r| {
            let xi: KVector = symplectic_sum(n, r)?.reinterpret();
            let certificate = if 2 * r < n {
                reflection_certificate(&xi).map(|g| (g, Scalar::one()))
            } else {
                // alternate sign flips negate every e_{2i-1} ∧ e_{2i}
                let d: Vec<Scalar> = (0..n).map(|i| if i % 2 == 0 { -Scalar::one() } else { Scalar::one() }).collect();
                Some((GlElement::diagonal(&d)?, -Scalar::one()))
            };
            Ok(DualitySource { id: format!("{n}-2-{:02}", r + 1), xi, certificate })
        })
        .collect()
}

fn load_data(text: &str) -> Result<Vec<CatalogEntry>> {
    let records: Vec<EntryRecord> =
        serde_json::from_str(text).map_err(|e| Error::Catalog(format!("invalid builtin data: {e}")))?;
    records
        .into_iter()
        .map(|r| {
            let mut e = r.into_entry()?;
            if e.degenerate && e.certificate.is_none() {
                e.certificate = reflection_certificate(&e.as_multivector());
            }
            e.check()?;
            Ok(e)
        })
        .collect()
}

fn sources_from(catalog: &Catalog) -> Vec<DualitySource> {
    catalog
        .entries
        .iter()
        .map(|e| DualitySource {
            id: e.id.clone(),
            xi: e.as_multivector(),
            certificate: e.certificate.clone().map(|g| (g, Scalar::one())),
        })
        .collect()
}

fn build(n: usize, k: usize) -> Result<Catalog> {
    if n < 2 || n > crate::blade::MAX_DIM {
        return Err(Error::UnsupportedCase { n, k });
    }
    if k == 0 {
        return Err(Error::InfiniteFamily { n, k, row: "k=0: every scalar is fixed by the action" });
    }
    if k > n {
        return Err(Error::GradeTooLarge { n, k });
    }
    if dimension_forces_infinite(n, k) {
        return Err(Error::InfiniteFamily { n, k, row: row_label(n, k).unwrap_or("dimension count") });
    }
    let omega = VolumeForm::standard(n)?;
    let zero = KForm::zero(n, k)?;
    let entries = if k == n {
        vec![entry(n, k, 1, zero, "zero form")?, entry(n, k, 2, omega.as_form().clone(), "volume form")?]
    } else if k == 1 {
        vec![entry(n, k, 1, zero, "zero form")?, entry(n, k, 2, KForm::basis_blade(n, &[1])?, "nonzero covector")?]
    } else if k == 2 {
        (0..=n / 2)
            .map(|r| entry(n, k, r + 1, symplectic_sum(n, r)?, &format!("rank {}", 2 * r)))
            .collect::<Result<_>>()?
    } else if k + 1 == n {
        let top: Vec<usize> = (2..=n).collect();
        vec![entry(n, k, 1, zero, "zero form")?, entry(n, k, 2, KForm::basis_blade(n, &top)?, "dual of e_1")?]
    } else if k + 2 == n {
        derive_by_duality(n, k, &two_vector_sources(n)?, &omega, Provenance::Construction)?
    } else {
        match (n, k) {
            (6, 3) => load_data(DATA_6_3)?,
            (7, 3) => load_data(DATA_7_3)?,
            (8, 3) => load_data(DATA_8_3)?,
            (7, 4) => derive_by_duality(7, 4, &sources_from(&*builtin_catalog(7, 3)?), &omega, Provenance::Paper)?,
            (8, 5) => derive_by_duality(8, 5, &sources_from(&*builtin_catalog(8, 3)?), &omega, Provenance::Paper)?,
            _ => return Err(Error::UnsupportedCase { n, k }),
        }
    };
    let catalog = Catalog::new(n, k, entries);
    let expected = reference_counts(n, k).map(|c| c.total);
    if expected != Some(Count::Finite(catalog.len())) {
        return Err(Error::CountMismatch {
            n,
            k,
            column: "orbits",
            computed: catalog.len().to_string(),
            expected: expected.map_or("none".into(), |c| c.to_string()),
        });
    }
    Ok(catalog)
}

type Cache = Mutex<HashMap<(usize, usize), Arc<Catalog>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The catalog for a finite case, built once per process.
pub fn builtin_catalog(n: usize, k: usize) -> Result<Arc<Catalog>> {
    if let Some(c) = cache().lock().expect("cache lock").get(&(n, k)) {
        return Ok(c.clone());
    }
    // built outside the lock: derived catalogs recurse into their sources
    let built = Arc::new(build(n, k)?);
    Ok(cache().lock().expect("cache lock").entry((n, k)).or_insert(built).clone())
}

/// Orbit of `alpha` in its builtin catalog.
pub fn classify(alpha: &KForm) -> Result<Classification> {
    builtin_catalog(alpha.dim(), alpha.grade())?.classify(alpha)
}

fn parse_id(id: &str) -> Result<(usize, usize)> {
    let mut parts = id.splitn(3, '-');
    let n = parts.next().and_then(|s| s.parse().ok());
    let k = parts.next().and_then(|s| s.parse().ok());
    match (n, k, parts.next()) {
        (Some(n), Some(k), Some(_)) => Ok((n, k)),
        _ => Err(Error::UnknownId(id.to_string())),
    }
}

/// A seeded random point of the orbit with the given id.
pub fn sample_orbit(id: &str, seed: u64) -> Result<KForm> {
    let (n, k) = parse_id(id)?;
    let catalog = builtin_catalog(n, k).map_err(|e| match e {
        Error::UnsupportedCase { .. } | Error::GradeTooLarge { .. } => Error::UnknownId(id.to_string()),
        other => other,
    })?;
    catalog.sample(id, seed)
}

/// Counts for every `2 <= n <= n_max`, `1 <= k <= n`: from the catalogs for
/// finite cases, from the dimension count otherwise.
pub fn theorem_table(n_max: usize) -> Result<Vec<CaseCounts>> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        for k in 1..=n {
            if dimension_forces_infinite(n, k) {
                out.push(CaseCounts { n, k, total: Count::Infinite, nondegenerate: Count::Infinite, stable: 0 });
            } else {
                out.push(builtin_catalog(n, k)?.counts()?);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableMismatch {
    pub n: usize,
    pub k: usize,
    pub column: &'static str,
    pub computed: String,
    pub expected: String,
}

impl From<TableMismatch> for Error {
    fn from(m: TableMismatch) -> Error {
        Error::CountMismatch { n: m.n, k: m.k, column: m.column, computed: m.computed, expected: m.expected }
    }
}

/// Cells of `computed` that differ from the reference counts.
pub fn verify_table(computed: &[CaseCounts]) -> Vec<TableMismatch> {
    let mut out = Vec::new();
    for c in computed {
        let Some(r) = reference_counts(c.n, c.k) else {
            out.push(TableMismatch {
                n: c.n,
                k: c.k,
                column: "row",
                computed: c.to_string(),
                expected: "no row".into(),
            });
            continue;
        };
        let cells = [
            ("orbits", c.total.to_string(), r.total.to_string()),
            ("non-degenerate orbits", c.nondegenerate.to_string(), r.nondegenerate.to_string()),
            ("stable orbits", c.stable.to_string(), r.stable.to_string()),
        ];
        for (column, computed, expected) in cells {
            if computed != expected {
                out.push(TableMismatch { n: c.n, k: c.k, column, computed, expected });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma2Report {
    pub n: usize,
    pub k: usize,
    pub degenerate_entries: usize,
    pub lower_total: usize,
    /// `(lower id, matching degenerate id)` for each embedded representative.
    pub matches: Vec<(String, String)>,
}

/// Degenerate orbits in dimension `n` against all orbits in dimension
/// `n - 1`: equal counts, and the embedding of each lower representative
/// matches a distinct degenerate entry by fingerprint.
pub fn lemma2_consistency(n: usize, k: usize) -> Result<Lemma2Report> {
    if n < 3 || k > n - 1 {
        return Err(Error::UnsupportedCase { n, k });
    }
    let upper = builtin_catalog(n, k)?;
    let lower = builtin_catalog(n - 1, k)?;
    let degenerate: Vec<usize> = (0..upper.len()).filter(|&i| upper.entries[i].degenerate).collect();
    if degenerate.len() != lower.len() {
        return Err(Error::CountMismatch {
            n,
            k,
            column: "degenerate orbits",
            computed: degenerate.len().to_string(),
            expected: lower.len().to_string(),
        });
    }
    let keys = upper.orbit_keys()?;
    let mut used = vec![false; upper.len()];
    let mut matches = Vec::new();
    for e in lower.entries() {
        let key = fingerprint(&crate::orbit::embed_form(&e.rep)?)?.orbit_key();
        let hits: Vec<usize> = degenerate.iter().copied().filter(|&i| keys[i] == key).collect();
        match hits.as_slice() {
            [i] if !used[*i] => {
                used[*i] = true;
                matches.push((e.id.clone(), upper.entries[*i].id.clone()));
            }
            _ => {
                return Err(Error::Catalog(format!(
                    "embedding of {} matches {} degenerate ({n}, {k}) entries",
                    e.id,
                    hits.len()
                )))
            }
        }
    }
    Ok(Lemma2Report { n, k, degenerate_entries: degenerate.len(), lower_total: lower.len(), matches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Orientation;

    #[test]
    fn small_constructed_catalogs() {
        let c = builtin_catalog(6, 2).unwrap();
        assert_eq!(c.len(), 4);
        let ranks: Vec<usize> = c.entries().iter().map(|e| crate::orbit::two_form_rank(&e.rep).unwrap()).collect();
        assert_eq!(ranks, vec![0, 2, 4, 6]);
        assert_eq!(builtin_catalog(7, 5).unwrap().len(), 4);
        assert!(matches!(builtin_catalog(8, 4), Err(Error::InfiniteFamily { .. })));
        assert!(matches!(builtin_catalog(5, 0), Err(Error::InfiniteFamily { .. })));
    }

    #[test]
    fn six_four_splits_top_rank() {
        let c = builtin_catalog(6, 4).unwrap();
        let ids: Vec<&str> = c.entries().iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, vec!["6-4-01", "6-4-02", "6-4-03", "6-4-04+", "6-4-04-"]);
        assert_eq!(c.entries()[3].orientation, Some(Orientation::Plus));
    }

    #[test]
    fn ids_parse() {
        assert_eq!(parse_id("7-4-13+").unwrap(), (7, 4));
        assert!(parse_id("nonsense").is_err());
        assert!(matches!(sample_orbit("7-4-99", 1), Err(Error::UnknownId(_))));
    }
}
