//! Orbit catalogs for every finite case of the orbit count table with
//! `n <= 9`, the table itself, and classification by fingerprint.
//!
//! Catalogs for `k ∈ {1, 2, n-1, n}` are constructed directly. The 3-form
//! catalogs in dimensions 6, 7 and 8 are shipped as data. The remaining
//! finite cases are obtained from those through the duality map
//! `c(ξ) = ι_ξ Ω`: the orbit of `c(ξ)` determines the orbit of `ξ`, and
//! `c(ξ)` and `-c(ξ)` share an orbit exactly when some `g` has
//! `g·ξ = s ξ` with `s·det g < 0`.

mod derive;
mod entry;
mod registry;
mod table;

pub use derive::{derive_by_duality, DualitySource};
pub use entry::{CatalogEntry, EntryRecord, Orientation, Provenance};
pub use registry::{
    builtin_catalog, classify, lemma2_consistency, sample_orbit, theorem_table, verify_table, Catalog, Certainty,
    CertificateAudit, CertificateStatus, Classification, Collision, Lemma2Report, TableMismatch, ValidationReport,
};
pub use table::{dimension_forces_infinite, reference_counts, row_label, CaseCounts, Count};
