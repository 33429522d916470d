use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use clarkson_lab::conjecture::{
    haar_unitary, necessary_conditions, residual, unitary_search, verify_certificate, ConjectureInstance, SearchBudget,
    Status,
};
use clarkson_lab::ensembles::{generate_trial, ginibre, EnsembleKind, EnsembleSpec};
use clarkson_lab::inequalities::{ak, bcl, clarkson_pair, cm, hk_ntuple, mccarthy};
use clarkson_lab::matcore::{
    abs_power, c, expm_skew, frobenius, herm_eigvals, identity, polar, svd, unitarity_defect, ComplexMatrix, PolarSide,
};
use clarkson_lab::proofs::{ak_via_duality, duality_images, lemma22_check, witness_defects, witness_set};
use clarkson_lab::schatten::{dual_exponent, holder_check, norm, norm_pow_p};
use clarkson_lab::OperatorTuple;

fn tuple(n: std::ops::RangeInclusive<usize>, d: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = OperatorTuple> {
    (n, d, any::<u64>(), 0usize..8).prop_map(|(n, d, seed, k)| {
        let kind = EnsembleKind::preset(d)[k];
        generate_trial(&EnsembleSpec::new(kind, n, d, seed), 0).unwrap()
    })
}

fn matrix(d: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ComplexMatrix> {
    tuple(1..=1, d).prop_map(|t| t.get(0).clone())
}

fn unitary(d: usize, seed: u64) -> ComplexMatrix {
    haar_unitary(&mut ChaCha8Rng::seed_from_u64(seed), d)
}

fn close(a: f64, b: f64, rtol: f64) -> bool {
    (a - b).abs() <= rtol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn svd_and_polar_reconstruct(x in matrix(1..=6)) {
        let scale = frobenius(&x).max(1.0);
        let f = svd(&x).unwrap();
        prop_assert!(frobenius(&(f.reconstruct() - &x)) <= 1e-12 * scale);
        prop_assert!(f.spectrum.values().windows(2).all(|w| w[0] >= w[1]));
        for side in [PolarSide::Left, PolarSide::Right] {
            let parts = polar(&x, side).unwrap();
            prop_assert!(frobenius(&(parts.reconstruct() - &x)) <= 1e-12 * scale);
            prop_assert!(unitarity_defect(&parts.isometry) <= 1e-12);
            prop_assert!(*herm_eigvals(&parts.modulus).unwrap().last().unwrap() >= -1e-12 * scale);
        }
    }

    #[test]
    fn abs_square_is_gram(x in matrix(1..=6)) {
        let gram = x.adjoint() * &x;
        prop_assert!(frobenius(&(abs_power(&x, 2.0).unwrap() - &gram)) <= 1e-11 * frobenius(&gram).max(1.0));
    }

    #[test]
    fn skew_exponential_is_unitary(x in matrix(1..=6), eta in 0.0f64..3.0) {
        let k = (&x - x.adjoint()) * c(eta, 0.0);
        prop_assert!(unitarity_defect(&expm_skew(&k).unwrap()) <= 1e-12);
    }

    #[test]
    fn schatten_norms_decrease_in_p(x in matrix(1..=6), p in 0.3f64..5.0, dp in 0.01f64..3.0) {
        prop_assert!(norm(&x, p + dp).unwrap() <= norm(&x, p).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn schatten_norms_are_unitarily_invariant(x in matrix(1..=5), p in 0.3f64..5.0, s in any::<u64>()) {
        let d = x.nrows();
        let y = unitary(d, s) * &x * unitary(d, s.wrapping_add(1));
        prop_assert!(close(norm(&y, p).unwrap(), norm(&x, p).unwrap(), 1e-11));
    }

    #[test]
    fn schatten_norm_is_homogeneous(x in matrix(1..=5), p in 0.3f64..5.0, r in 0.1f64..10.0, phase in -3.0f64..3.0) {
        let scaled = &x * num_complex::Complex64::from_polar(r, phase);
        prop_assert!(close(norm(&scaled, p).unwrap(), r * norm(&x, p).unwrap(), 1e-12));
    }

    #[test]
    fn triangle_and_holder(t in tuple(2..=2, 1..=5), p in 1.0f64..5.0) {
        let (a, b) = (t.get(0), t.get(1));
        prop_assert!(norm(&(a + b), p).unwrap() <= (norm(a, p).unwrap() + norm(b, p).unwrap()) * (1.0 + 1e-12) + 1e-12);
        if p > 1.0 {
            prop_assert!(holder_check(a, b, p).unwrap().satisfied);
        }
    }

    #[test]
    fn pairwise_family_holds(t in tuple(2..=2, 1..=5), p in 0.2f64..6.0) {
        let (a, b) = (t.get(0), t.get(1));
        for r in clarkson_pair(a, b, p).unwrap() {
            prop_assert!(r.satisfied, "{r:?}");
        }
        if p >= 1.0 {
            let r = bcl(a, b, p).unwrap();
            prop_assert!(r.satisfied, "{r:?}");
        }
        if p > 1.0 {
            let r = mccarthy(a, b, p).unwrap();
            prop_assert!(r.satisfied, "{r:?}");
        }
    }

    #[test]
    fn tuple_family_holds(t in tuple(2..=5, 1..=4), p in 0.2f64..6.0) {
        let r = hk_ntuple(&t, p).unwrap();
        prop_assert!(r.satisfied, "{r:?}");
        if p > 1.0 {
            let r = ak(&t, p).unwrap();
            prop_assert!(r.satisfied, "{r:?}");
            let r = cm(&t, p).unwrap();
            prop_assert!(r.satisfied, "{r:?}");
        }
    }

    #[test]
    fn pairing_bound_holds_for_arbitrary_duals(t in tuple(2..=4, 1..=4), p in 1.05f64..2.0, s in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let d = t.d();
        let y = ginibre(&mut rng, d);
        let pairs = t.pairs().map(|k| (k, ginibre(&mut rng, d))).collect();
        let r = lemma22_check(&t, &y, &pairs, p).unwrap();
        prop_assert!(r.satisfied, "{r:?}");
    }

    #[test]
    fn witnesses_attain_duality(t in tuple(2..=4, 1..=4), p in 1.05f64..2.0) {
        let w = witness_set(&t, p).unwrap();
        for (b, y) in std::iter::once(t.sum()).chain(t.differences()).zip(w.all()) {
            if norm_pow_p(&b, p).unwrap() > 0.0 {
                let (a, n) = witness_defects(&b, y, p).unwrap();
                prop_assert!(a <= 1e-9 && n <= 1e-9);
            }
        }
    }

    #[test]
    fn duality_images_are_normalized(t in tuple(2..=4, 1..=4), q in 2.0f64..5.0) {
        prop_assume!(t.matrices().iter().any(|m| frobenius(m) > 0.0));
        let p = dual_exponent(q).unwrap();
        let mass: f64 = duality_images(&t, q).unwrap().matrices().iter().map(|x| norm_pow_p(x, p).unwrap()).sum();
        prop_assert!((mass - 1.0).abs() <= 1e-10);
        let r = ak_via_duality(&t, q).unwrap();
        prop_assert!(r.report.satisfied && r.chain_holds(1e-9));
    }

    #[test]
    fn orbit_residual_is_conjugation_invariant(t in tuple(2..=3, 1..=4), p in 0.5f64..4.0, s in any::<u64>()) {
        let w = unitary(t.d(), s);
        let rotated = t.map(|m| &w * m * w.adjoint());
        let a = ConjectureInstance::new(t, p).unwrap();
        let b = ConjectureInstance::new(rotated, p).unwrap();
        let ids = vec![identity(a.tuple.d()); a.unitary_count()];
        let (ra, rb) = (residual(&a, &ids).unwrap(), residual(&b, &ids).unwrap());
        prop_assert!((ra - rb).abs() <= 1e-9 * ra.abs().max(1.0), "{ra} vs {rb}");
    }

    #[test]
    fn trace_condition_follows_from_tuple_inequality(t in tuple(2..=4, 1..=4), p in 0.3f64..5.0) {
        let inst = ConjectureInstance::new(t.clone(), p).unwrap();
        if hk_ntuple(&t, p).unwrap().satisfied {
            prop_assert!(necessary_conditions(&inst).unwrap().trace_holds);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn feasible_certificates_reverify(t in tuple(2..=3, 1..=3), p in prop::sample::select(vec![0.5, 1.5, 2.5, 3.0, 4.0]), s in any::<u64>()) {
        let inst = ConjectureInstance::new(t, p).unwrap();
        let budget = SearchBudget { iterations: 500, restarts: 3 };
        let cert = unitary_search(&inst, budget, s).unwrap();
        if cert.status == Status::Feasible {
            prop_assert!(verify_certificate(&inst, &cert, 1e-7).unwrap().holds);
            prop_assert!(cert.unitary_matrices().iter().all(|u| unitarity_defect(u) <= 1e-12));
        }
        let again = unitary_search(&inst, budget, s).unwrap();
        prop_assert_eq!(serde_json::to_string(&cert).unwrap(), serde_json::to_string(&again).unwrap());
    }

    #[test]
    fn generation_is_deterministic(n in 1usize..5, d in 1usize..6, seed in any::<u64>(), trial in any::<u64>(), k in 0usize..8) {
        let spec = EnsembleSpec::new(EnsembleKind::preset(d)[k], n, d, seed);
        prop_assert_eq!(generate_trial(&spec, trial).unwrap(), generate_trial(&spec, trial).unwrap());
    }
}
