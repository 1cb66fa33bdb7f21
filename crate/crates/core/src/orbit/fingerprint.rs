use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exterior::{KForm, VolumeForm};
use crate::orbit::analysis::{
    annihilator, b_form, hitchin_sign, inverse_hodge_dual, orbit_tangent_rank, pfaffian, restrict_to_support,
    restriction, stabilizer_profile, support, two_form_rank, AlgebraProfile,
};
use crate::orbit::symmetric::Signature;

/// Case-specific orbit invariant.
///
/// `BSignature` is the ordered signature with respect to `Ω = e^{1…7}`; it
/// swaps under orientation-reversing maps. All other variants are invariant
/// under the full group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Special {
    /// Rank of a 2-form.
    TwoFormRank { rank: usize },
    /// Sign of Hitchin's quartic invariant, `(6, 3)`.
    HitchinSign { sign: i8 },
    /// Ordered signature of the B-form, `(7, 3)`.
    BSignature { signature: Signature },
    /// Invariants of the dual 3-vector, `(7, 4)`: the ordered B-form
    /// signature (the scaling picked up under `g` is `det(g)^2`, so the order
    /// is invariant) and, when its support is 6-dimensional, the Hitchin sign
    /// of its restriction to the support.
    DualThreeVector { b_signature: Signature, support_hitchin_sign: Option<i8> },
    /// Rank of the dual 2-vector for `k = n - 2`, and the sign of its
    /// Pfaffian when that sign is an invariant (`n ≡ 2 mod 4`, full rank).
    DualTwoVector { rank: usize, pfaffian_sign: Option<i8> },
    /// Stabilizer algebra of a non-degenerate `(8, 3)` form.
    StabilizerProfile { profile: AlgebraProfile },
    /// Stabilizer algebra of the dual 3-vector of an `(8, 5)` form.
    DualStabilizerProfile { profile: AlgebraProfile },
}

impl Special {
    /// The orientation-free version: `BSignature` is replaced by its
    /// unordered pair.
    pub fn unoriented(self) -> Special {
        match self {
            Special::BSignature { signature } => Special::BSignature { signature: signature.unordered() },
            other => other,
        }
    }

    /// The value after acting by an orientation-reversing map.
    pub fn reversed(self) -> Special {
        match self {
            Special::BSignature { signature } => Special::BSignature { signature: signature.swapped() },
            other => other,
        }
    }
}

/// Computable orbit invariants of a form. Field order is the canonical
/// JSON order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitFingerprint {
    pub n: usize,
    pub k: usize,
    pub kernel_dim: usize,
    pub support_dim: usize,
    pub stabilizer_dim: usize,
    pub stable: bool,
    pub special: Option<Special>,
    pub restriction: Option<Box<OrbitFingerprint>>,
}

impl OrbitFingerprint {
    /// Invariant under the whole group: identical on a full orbit.
    pub fn orbit_key(&self) -> OrbitFingerprint {
        OrbitFingerprint {
            special: self.special.map(Special::unoriented),
            restriction: self.restriction.as_ref().map(|r| Box::new(r.orbit_key())),
            ..self.clone()
        }
    }

    /// Expected fingerprint of `g·α` for `det g < 0`.
    pub fn reversed(&self) -> OrbitFingerprint {
        OrbitFingerprint { special: self.special.map(Special::reversed), ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

fn special_for(alpha: &KForm, kernel_dim: usize, omega: &VolumeForm) -> Result<Option<Special>> {
    let n = alpha.dim();
    let k = alpha.grade();
    Ok(match (n, k) {
        (_, 2) => Some(Special::TwoFormRank { rank: two_form_rank(alpha)? }),
        (6, 3) => Some(Special::HitchinSign { sign: hitchin_sign(alpha)? }),
        (7, 3) => Some(Special::BSignature { signature: b_form(alpha)?.signature() }),
        (7, 4) => {
            let xi = inverse_hodge_dual(alpha, omega)?;
            let b_signature = b_form(&xi.reinterpret())?.signature();
            let restricted = restrict_to_support(&xi)?;
            let support_hitchin_sign =
                if restricted.dim() == 6 { Some(hitchin_sign(&restricted.reinterpret())?) } else { None };
            Some(Special::DualThreeVector { b_signature, support_hitchin_sign })
        }
        (8, 3) if kernel_dim == 0 => Some(Special::StabilizerProfile { profile: stabilizer_profile(alpha) }),
        (8, 5) => {
            let xi = inverse_hodge_dual(alpha, omega)?;
            Some(Special::DualStabilizerProfile { profile: stabilizer_profile(&xi) })
        }
        (n, k) if k >= 3 && k + 2 == n => {
            let zeta = inverse_hodge_dual(alpha, omega)?;
            let rank = two_form_rank(&zeta)?;
            let pfaffian_sign = if n % 4 == 2 && rank == n { Some(pfaffian(&zeta)?.signum() as i8) } else { None };
            Some(Special::DualTwoVector { rank, pfaffian_sign })
        }
        _ => None,
    })
}

/// Invariants of `α`. For a degenerate nonzero form the fingerprint of the
/// induced non-degenerate form on `V / ann(α)` is attached, in its
/// orientation-free version (the quotient carries no preferred orientation).
pub fn fingerprint(alpha: &KForm) -> Result<OrbitFingerprint> {
    let n = alpha.dim();
    let k = alpha.grade();
    let omega = VolumeForm::standard(n)?;
    let kernel_dim = if k == 0 {
        if alpha.is_zero() {
            n
        } else {
            0
        }
    } else {
        annihilator(alpha)?.dim()
    };
    let support_dim = support(&inverse_hodge_dual(alpha, &omega)?).dim();
    let rank = orbit_tangent_rank(alpha);
    let stable = rank == crate::blade::binomial(n, k);
    let special = special_for(alpha, kernel_dim, &omega)?;
    let restriction = match restriction(alpha)? {
        Some((r, _)) => Some(Box::new(fingerprint(&r)?.orbit_key())),
        None => None,
    };
    Ok(OrbitFingerprint { n, k, kernel_dim, support_dim, stabilizer_dim: n * n - rank, stable, special, restriction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::random::{random_gl, rng_from_seed, DetSign};

    #[test]
    fn stable_six_three() {
        let f = fingerprint(&parse("e123+e456", 6, None).unwrap()).unwrap();
        assert_eq!(f.kernel_dim, 0);
        assert!(f.stable);
        assert_eq!(f.special, Some(Special::HitchinSign { sign: 1 }));
        assert_eq!(f.restriction, None);
    }

    #[test]
    fn zero_form() {
        let f = fingerprint(&parse("0", 6, Some(3)).unwrap()).unwrap();
        assert_eq!((f.kernel_dim, f.stabilizer_dim, f.stable), (6, 36, false));
        assert_eq!(f.support_dim, 0);
    }

    #[test]
    fn canonical_json_field_order() {
        let f = fingerprint(&parse("e12", 3, None).unwrap()).unwrap();
        assert_eq!(
            f.to_json(),
            concat!(
                r#"{"n":3,"k":2,"kernel_dim":1,"support_dim":1,"stabilizer_dim":6,"stable":true,"#,
                r#""special":{"kind":"two_form_rank","rank":2},"#,
                r#""restriction":{"n":2,"k":2,"kernel_dim":0,"support_dim":0,"stabilizer_dim":3,"stable":true,"#,
                r#""special":{"kind":"two_form_rank","rank":2},"restriction":null}}"#
            )
        );
    }

    #[test]
    fn invariant_under_positive_determinant() {
        let alpha: KForm = parse("e123+e145+e246+e167", 7, None).unwrap();
        let base = fingerprint(&alpha).unwrap();
        let mut rng = rng_from_seed(5);
        for _ in 0..5 {
            let g = random_gl(&mut rng, 7, DetSign::Positive);
            assert_eq!(fingerprint(&alpha.act(&g).unwrap()).unwrap(), base);
            let h = random_gl(&mut rng, 7, DetSign::Negative);
            assert_eq!(fingerprint(&alpha.act(&h).unwrap()).unwrap(), base.reversed());
        }
    }
}
