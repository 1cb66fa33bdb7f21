mod common;

use common::Dense;
use formorbits::catalog::builtin_catalog;
use formorbits::exterior::{Co, Contra};
use formorbits::orbit::{
    annihilator, fingerprint, hodge_dual, infinitesimal_action, inverse_hodge_dual, is_stable, orbit_tangent_rank,
    support, SymmetricForm,
};
use formorbits::random::{random_alternating, random_gl, random_matrix, rng_from_seed, DetSign, SeededRng};
use formorbits::selfcheck::finite_cases;
use formorbits::{format_with, parse, BladeStyle, GlElement, KForm, KVector, Matrix, Scalar, VolumeForm};
use proptest::prelude::*;

fn rng(seed: u64) -> SeededRng {
    rng_from_seed(seed)
}

fn form(r: &mut SeededRng, n: usize, k: usize) -> KForm {
    random_alternating(r, n, k, 0.5)
}

fn multivector(r: &mut SeededRng, n: usize, k: usize) -> KVector {
    random_alternating(r, n, k, 0.5)
}

fn vector(r: &mut SeededRng, n: usize) -> KVector {
    random_alternating(r, n, 1, 0.7)
}

/// `(n, p, q)` with `p + q <= n`.
fn dims() -> impl Strategy<Value = (usize, usize, usize)> {
    (2usize..=7).prop_flat_map(|n| (Just(n), 0..=n)).prop_flat_map(|(n, p)| (Just(n), Just(p), 0..=n - p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_of_vectors_is_antisymmetric(seed: u64, n in 2usize..=9) {
        let mut r = rng(seed);
        let (u, v) = (vector(&mut r, n), vector(&mut r, n));
        prop_assert_eq!(u.wedge(&v).unwrap(), v.wedge(&u).unwrap().neg());
        prop_assert!(u.wedge(&u).unwrap().is_zero());
    }

    #[test]
    fn wedge_is_associative(seed: u64, n in 3usize..=7) {
        let mut r = rng(seed);
        let (a, b, c) = (multivector(&mut r, n, 1), multivector(&mut r, n, 1), multivector(&mut r, n, n - 2));
        prop_assert_eq!(a.wedge(&b).unwrap().wedge(&c).unwrap(), a.wedge(&b.wedge(&c).unwrap()).unwrap());
    }

    #[test]
    fn action_commutes_with_wedge(seed: u64, (n, p, q) in dims()) {
        let mut r = rng(seed);
        let g = random_gl(&mut r, n, DetSign::Any);
        let (xi, zeta) = (multivector(&mut r, n, p), multivector(&mut r, n, q));
        prop_assert_eq!(
            xi.wedge(&zeta).unwrap().act(&g).unwrap(),
            xi.act(&g).unwrap().wedge(&zeta.act(&g).unwrap()).unwrap()
        );
    }

    #[test]
    fn multivector_action_is_a_left_action(seed: u64, n in 2usize..=7, k in 0usize..=7) {
        let k = k.min(n);
        let mut r = rng(seed);
        let (g, h) = (random_gl(&mut r, n, DetSign::Any), random_gl(&mut r, n, DetSign::Any));
        let xi = multivector(&mut r, n, k);
        prop_assert_eq!(xi.act(&g.compose(&h)).unwrap(), xi.act(&h).unwrap().act(&g).unwrap());
    }

    #[test]
    fn form_action_is_a_right_action(seed: u64, n in 2usize..=7, k in 0usize..=7) {
        let k = k.min(n);
        let mut r = rng(seed);
        let (g, h) = (random_gl(&mut r, n, DetSign::Any), random_gl(&mut r, n, DetSign::Any));
        let alpha = form(&mut r, n, k);
        prop_assert_eq!(alpha.act(&g.compose(&h)).unwrap(), alpha.act(&g).unwrap().act(&h).unwrap());
    }

    #[test]
    fn form_action_matches_evaluation_oracle(seed: u64, n in 2usize..=6, k in 1usize..=6) {
        let k = k.min(n);
        let mut r = rng(seed);
        let g = random_gl(&mut r, n, DetSign::Any);
        let alpha = form(&mut r, n, k);
        let oracle = common::pullback(&common::rows_of(g.matrix()), &Dense::from_alt(&alpha));
        prop_assert_eq!(Dense::from_alt(&alpha.act(&g).unwrap()), oracle);
        let xi = multivector(&mut r, n, k);
        let oracle = common::push(&common::rows_of(g.matrix()), &Dense::from_alt(&xi));
        prop_assert_eq!(Dense::from_alt(&xi.act(&g).unwrap()), oracle);
    }

    #[test]
    fn pairing_is_natural(seed: u64, n in 2usize..=7, k in 1usize..=7) {
        let k = k.min(n);
        let mut r = rng(seed);
        let g = random_gl(&mut r, n, DetSign::Any);
        let (alpha, xi) = (form(&mut r, n, k), multivector(&mut r, n, k));
        prop_assert_eq!(alpha.act(&g).unwrap().evaluate(&xi).unwrap(), alpha.evaluate(&xi.act(&g).unwrap()).unwrap());
    }

    #[test]
    fn contraction_is_natural(seed: u64, n in 2usize..=7, k in 1usize..=7) {
        let k = k.min(n);
        let mut r = rng(seed);
        let g = random_gl(&mut r, n, DetSign::Any);
        let alpha = form(&mut r, n, k);
        let v = vector(&mut r, n);
        let xi = multivector(&mut r, n, k - 1);
        let lhs = alpha.contract_vector(&v.act(&g).unwrap()).unwrap().evaluate(&xi.act(&g).unwrap()).unwrap();
        let rhs = alpha.act(&g).unwrap().contract_vector(&v).unwrap().evaluate(&xi).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn contraction_by_a_wedge_is_left_first(seed: u64, n in 3usize..=7, k in 2usize..=7) {
        let k = k.min(n);
        let mut r = rng(seed);
        let alpha = form(&mut r, n, k);
        let (u, v) = (vector(&mut r, n), vector(&mut r, n));
        let step = alpha.contract_vector(&u).unwrap().contract_vector(&v).unwrap();
        prop_assert_eq!(alpha.contract_multi(&u.wedge(&v).unwrap()).unwrap(), step);
    }

    #[test]
    fn duality_is_equivariant_up_to_determinant(seed: u64, n in 2usize..=8, k in 0usize..=8) {
        let k = k.min(n);
        let mut r = rng(seed);
        let omega = VolumeForm::standard(n).unwrap();
        let g = random_gl(&mut r, n, DetSign::Any);
        let xi = multivector(&mut r, n, k);
        let lhs = hodge_dual(&xi, &omega).unwrap().act(&g).unwrap();
        let rhs = hodge_dual(&xi.act(&g.inverse()).unwrap(), &omega).unwrap().scale(g.det());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn duality_matches_oracle_and_inverts(seed: u64, n in 1usize..=8, k in 0usize..=8) {
        let k = k.min(n);
        let mut r = rng(seed);
        let xi = multivector(&mut r, n, k);
        let omega = VolumeForm::standard(n).unwrap();
        let c = hodge_dual(&xi, &omega).unwrap();
        prop_assert_eq!(Dense::from_alt(&c), common::hodge(&Dense::from_alt(&xi)));
        prop_assert_eq!(inverse_hodge_dual(&c, &omega).unwrap(), xi);
    }

    #[test]
    fn scalar_matrices_scale_by_a_power(seed: u64, n in 1usize..=8, k in 0usize..=8, num in -5i64..=5, den in 1i64..=4) {
        prop_assume!(num != 0);
        let k = k.min(n);
        let mut r = rng(seed);
        let lambda = Scalar::new(num, den);
        let rho = form(&mut r, n, k);
        prop_assert_eq!(rho.act(&GlElement::scalar(n, &lambda)).unwrap(), rho.scale(&lambda.pow(k as u32)));
    }

    #[test]
    fn annihilator_is_equivariant(seed: u64, n in 2usize..=7, k in 1usize..=4) {
        let k = k.min(n);
        let mut r = rng(seed);
        let g = random_gl(&mut r, n, DetSign::Any);
        // sparse forms are often degenerate
        let alpha: KForm = random_alternating(&mut r, n, k, 0.2);
        let moved = annihilator(&alpha.act(&g).unwrap()).unwrap();
        let expected = annihilator(&alpha).unwrap().image(g.inverse().matrix()).unwrap();
        prop_assert_eq!(moved.basis().to_vec(), expected.basis().to_vec());
        for v in moved.basis() {
            let vec = KVector::vector(v).unwrap();
            prop_assert!(alpha.act(&g).unwrap().contract_vector(&vec).unwrap().is_zero());
        }
    }

    #[test]
    fn support_is_equivariant_and_minimal(seed: u64, n in 2usize..=7, k in 1usize..=4, m in 0usize..=3) {
        let k = k.min(n);
        let mut r = rng(seed);
        let g = random_gl(&mut r, n, DetSign::Any);
        // a random element living on the first w coordinates
        let w = n.saturating_sub(m).max(k);
        let small: KVector = random_alternating(&mut r, w, k, 0.6);
        let xi = (w..n).fold(small, |x, _| x.extend_dim().unwrap());
        let s = support(&xi);
        prop_assert!(s.dim() <= w);
        prop_assert_eq!(support(&xi.act(&g).unwrap()).basis().to_vec(), s.image(g.matrix()).unwrap().basis().to_vec());
        // ξ ∈ Λ^k(W): every contraction by a (k-1)-coform lands in W
        let moved = xi.act(&g).unwrap();
        let ws = support(&moved);
        for b in formorbits::blade::basis(n, k.saturating_sub(1)) {
            let beta = KForm::from_terms(n, k - 1, vec![(b, Scalar::one())]).unwrap();
            let v = formorbits::exterior::contract_into_vector(&beta, &moved).unwrap();
            prop_assert!(ws.contains(&v.to_dense()));
        }
    }

    #[test]
    fn signature_obeys_sylvester(seed: u64, n in 1usize..=7) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, n);
        let s = SymmetricForm::new(a.add(&a.transpose())).unwrap();
        let g = random_gl(&mut r, n, DetSign::Any);
        let moved = s.congruent(g.matrix()).unwrap();
        prop_assert_eq!(moved.signature(), s.signature());
        let sig = s.signature();
        prop_assert_eq!(sig.p + sig.z + sig.q, n);
        prop_assert_eq!(sig.rank(), common::rank(common::rows_of(s.matrix())));
    }

    #[test]
    fn infinitesimal_action_is_linear_with_euler_identity(seed: u64, n in 2usize..=6, k in 1usize..=6) {
        let k = k.min(n);
        let mut r = rng(seed);
        let alpha = form(&mut r, n, k);
        let (x, y) = (random_matrix(&mut r, n), random_matrix(&mut r, n));
        let sum = infinitesimal_action(&x.add(&y), &alpha).unwrap();
        let parts = infinitesimal_action(&x, &alpha).unwrap().add(&infinitesimal_action(&y, &alpha).unwrap()).unwrap();
        prop_assert_eq!(sum, parts);
        prop_assert_eq!(infinitesimal_action(&Matrix::identity(n), &alpha).unwrap(), alpha.scale(&Scalar::from_int(k as i64)));
    }

    #[test]
    fn tangent_rank_matches_oracle(seed: u64, n in 2usize..=6, k in 1usize..=5, density in 0.1f64..0.9) {
        let k = k.min(n);
        let mut r = rng(seed);
        let alpha: KForm = random_alternating(&mut r, n, k, density);
        prop_assert_eq!(orbit_tangent_rank(&alpha), common::tangent_rank(&Dense::from_alt(&alpha)));
    }

    #[test]
    fn parse_and_format_round_trip(seed: u64, n in 1usize..=12, k in 0usize..=4, braced: bool) {
        let k = k.min(n);
        let mut r = rng(seed);
        let x: KForm = random_alternating(&mut r, n, k, 0.4);
        let x = x.scale(&Scalar::new(3, 7));
        let style = if braced { BladeStyle::Braced } else { BladeStyle::Compact };
        let text = format_with(&x, style);
        prop_assert_eq!(parse::<Co>(&text, n, Some(k)).unwrap(), x.clone());
        prop_assert_eq!(parse::<Contra>(&text, n, Some(k)).unwrap(), x.reinterpret::<Contra>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn volume_form_scales_by_the_determinant(seed: u64, n in 1usize..=9) {
        let mut r = rng(seed);
        let g = random_gl(&mut r, n, DetSign::Any);
        let omega = VolumeForm::standard(n).unwrap();
        prop_assert_eq!(omega.as_form().act(&g).unwrap(), omega.as_form().scale(g.det()));
        if n <= 7 {
            prop_assert_eq!(&common::det(&common::rows_of(g.matrix())), g.det());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fingerprints_are_invariant(seed: u64, case in 0usize..6) {
        let (n, k) = [(5, 2), (6, 3), (7, 3), (7, 4), (8, 3), (8, 5)][case];
        let mut r = rng(seed);
        let catalog = builtin_catalog(n, k).unwrap();
        let entry = &catalog.entries()[(seed as usize) % catalog.len()];
        let base = formorbits::orbit::fingerprint(&entry.rep).unwrap();
        let g = random_gl(&mut r, n, DetSign::Positive);
        prop_assert_eq!(&fingerprint(&entry.rep.act(&g).unwrap()).unwrap(), &base);
        let h = random_gl(&mut r, n, DetSign::Negative);
        prop_assert_eq!(fingerprint(&entry.rep.act(&h).unwrap()).unwrap(), base.reversed());
    }
}

/// Degenerate entries are unstable wherever a non-degenerate entry exists.
#[test]
fn degenerate_entries_are_unstable() {
    for (n, k) in finite_cases() {
        let c = builtin_catalog(n, k).unwrap();
        if c.entries().iter().any(|e| !e.degenerate) {
            for e in c.entries().iter().filter(|e| e.degenerate) {
                assert!(!is_stable(&e.rep), "{}", e.id);
            }
        }
    }
}

/// Every derived catalog is rebuilt identically.
#[test]
fn catalogs_are_deterministic() {
    for (n, k) in [(7, 4), (8, 5), (6, 4), (9, 7)] {
        let a = builtin_catalog(n, k).unwrap().to_json();
        let c = formorbits::catalog::Catalog::from_json(&a).unwrap();
        assert_eq!(c.to_json(), a);
    }
}
