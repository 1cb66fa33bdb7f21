use crate::catalog::entry::{CatalogEntry, Orientation, Provenance};
use crate::catalog::table::{reference_counts, Count};
use crate::error::{Error, Result};
use crate::exterior::{GlElement, KVector, VolumeForm};
use crate::orbit::{hodge_dual, is_nondegenerate, is_stable, verify_sign_certificate};
use crate::scalar::Scalar;

/// One orbit of a complete multivector catalog.
#[derive(Debug, Clone)]
pub struct DualitySource {
    /// Identifier of the source orbit, echoed in the notes.
    pub id: String,
    pub xi: KVector,
    /// `(g, s)` with `g·ξ = s ξ` and `s·det g < 0`, if one is known.
    pub certificate: Option<(GlElement, Scalar)>,
}

/// Forms `c(ξ)` for a complete list of multivector orbits `ξ ∈ Λ^k(V)`,
/// producing the catalog of `Λ^{n-k}(V*)`.
///
/// Distinct source orbits give distinct `±` pairs. A pair collapses to one
/// orbit when `n - k` is odd (`-id` negates `c(ξ)`) or when the
/// source carries a verified sign certificate; otherwise both `c(ξ)` and
/// `-c(ξ)` are emitted, tagged `+` and `-`. Fails unless the source and the
/// output sizes both match the reference counts.
pub fn derive_by_duality(
    n: usize,
    target_k: usize,
    sources: &[DualitySource],
    omega: &VolumeForm,
    provenance: Provenance,
) -> Result<Vec<CatalogEntry>> {
    if target_k > n {
        return Err(Error::GradeTooLarge { n, k: target_k });
    }
    let source_k = n - target_k;
    if let Some(bad) = sources.iter().find(|s| s.xi.dim() != n || s.xi.grade() != source_k) {
        return Err(Error::Catalog(format!("source {} is not in Λ^{source_k}(R^{n})", bad.id)));
    }
    let expected_source = reference_counts(n, source_k).map(|c| c.total);
    if expected_source != Some(Count::Finite(sources.len())) {
        return Err(Error::CountMismatch {
            n,
            k: source_k,
            column: "source orbits",
            computed: sources.len().to_string(),
            expected: expected_source.map_or("none".into(), |c| c.to_string()),
        });
    }
    let mut out = Vec::new();
    for (i, src) in sources.iter().enumerate() {
        let rho = hodge_dual(&src.xi, omega)?;
        let merged =
            target_k % 2 == 1 || src.certificate.as_ref().is_some_and(|(g, s)| verify_sign_certificate(g, s, &src.xi));
        let base = format!("{n}-{target_k}-{:02}", i + 1);
        let members: Vec<(String, _, Option<Orientation>)> = if merged {
            vec![(base, rho, None)]
        } else {
            vec![
                (format!("{base}+"), rho.clone(), Some(Orientation::Plus)),
                (format!("{base}-"), rho.neg(), Some(Orientation::Minus)),
            ]
        };
        for (id, rep, orientation) in members {
            let notes = match orientation {
                Some(Orientation::Minus) => format!("negated dual of {}", src.id),
                _ => format!("dual of {}", src.id),
            };
            out.push(CatalogEntry {
                id,
                degenerate: target_k == 0 || !is_nondegenerate(&rep)?,
                stable: is_stable(&rep),
                rep,
                provenance,
                certificate: None,
                orientation,
                notes,
            });
        }
    }
    let expected = reference_counts(n, target_k).map(|c| c.total);
    if expected != Some(Count::Finite(out.len())) {
        return Err(Error::CountMismatch {
            n,
            k: target_k,
            column: "orbits",
            computed: out.len().to_string(),
            expected: expected.map_or("none".into(), |c| c.to_string()),
        });
    }
    Ok(out)
}
