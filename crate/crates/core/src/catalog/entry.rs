use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{format_with, parse, BladeStyle};
use crate::exterior::{GlElement, KForm, KVector};
use crate::matrix::parse_matrix;
use crate::orbit::{is_nondegenerate, is_stable, verify_negdet_certificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Count or identification stated in the reference text.
    Paper,
    /// Produced by an explicit rule from simpler data.
    Construction,
    /// Representative taken from the published classifications.
    Literature,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Paper => "paper",
            Provenance::Construction => "construction",
            Provenance::Literature => "literature",
        })
    }
}

/// Which member of a `±` pair an orientation-split entry is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

/// An orbit representative with its flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub rep: KForm,
    pub degenerate: bool,
    pub stable: bool,
    pub provenance: Provenance,
    /// `g` with `g·ξ = ξ` and `det g < 0`, where `ξ` is `rep` read as a
    /// multivector.
    pub certificate: Option<GlElement>,
    /// Set for the two members of a split `±` pair.
    pub orientation: Option<Orientation>,
    pub notes: String,
}

impl CatalogEntry {
    pub fn n(&self) -> usize {
        self.rep.dim()
    }

    pub fn k(&self) -> usize {
        self.rep.grade()
    }

    /// `rep` read as a multivector through `e^i <-> e_i`.
    pub fn as_multivector(&self) -> KVector {
        self.rep.reinterpret()
    }

    /// Recomputes the flags and checks the certificate.
    pub fn check(&self) -> Result<()> {
        let degenerate = self.k() == 0 || !is_nondegenerate(&self.rep)?;
        if degenerate != self.degenerate {
            return Err(Error::Catalog(format!(
                "{}: stored degenerate = {}, computed {}",
                self.id, self.degenerate, degenerate
            )));
        }
        let stable = is_stable(&self.rep);
        if stable != self.stable {
            return Err(Error::Catalog(format!("{}: stored stable = {}, computed {}", self.id, self.stable, stable)));
        }
        if let Some(g) = &self.certificate {
            if !verify_negdet_certificate(g, &self.as_multivector()) {
                return Err(Error::Catalog(format!("{}: certificate does not verify", self.id)));
            }
        }
        Ok(())
    }
}

/// On-disk form of an entry. `rep` uses the expression grammar and
/// `certificate` the `;`/`,` matrix syntax.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub id: String,
    pub n: usize,
    pub k: usize,
    pub rep: String,
    pub degenerate: bool,
    pub stable: bool,
    pub provenance: Provenance,
    #[serde(default)]
    pub certificate: Option<String>,
    #[serde(default)]
    pub orientation: Option<Orientation>,
    #[serde(default)]
    pub notes: String,
}

impl EntryRecord {
    pub fn into_entry(self) -> Result<CatalogEntry> {
        let rep = parse(&self.rep, self.n, Some(self.k))
            .map_err(|e| Error::Catalog(format!("{}: bad representative: {e}", self.id)))?;
        let certificate = match &self.certificate {
            Some(text) => Some(
                parse_matrix(text)
                    .and_then(GlElement::new)
                    .map_err(|e| Error::Catalog(format!("{}: bad certificate: {e}", self.id)))?,
            ),
            None => None,
        };
        Ok(CatalogEntry {
            id: self.id,
            rep,
            degenerate: self.degenerate,
            stable: self.stable,
            provenance: self.provenance,
            certificate,
            orientation: self.orientation,
            notes: self.notes,
        })
    }

    pub fn from_entry(e: &CatalogEntry) -> EntryRecord {
        EntryRecord {
            id: e.id.clone(),
            n: e.n(),
            k: e.k(),
            rep: format_with(&e.rep, BladeStyle::Compact),
            degenerate: e.degenerate,
            stable: e.stable,
            provenance: e.provenance,
            certificate: e.certificate.as_ref().map(|g| g.matrix().to_string()),
            orientation: e.orientation,
            notes: e.notes.clone(),
        }
    }
}
