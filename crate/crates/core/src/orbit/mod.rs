//! Orbit-theoretic predicates and invariants of forms under `GL(n, R)`.

mod analysis;
mod fingerprint;
mod subspace;
mod symmetric;

pub use analysis::*;
pub use fingerprint::{fingerprint, OrbitFingerprint, Special};
pub use subspace::Subspace;
pub use symmetric::{Signature, SymmetricForm};
