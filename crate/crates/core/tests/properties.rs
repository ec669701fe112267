use itertools::Itertools;
use proptest::prelude::*;

use gvcp::canonical;
use gvcp::classifier::{classify, conjugate, Verdict};
use gvcp::exterior::{ExteriorForm, SkewEndo, Vector};
use gvcp::json;
use gvcp::lifting::{f_map, lift, restrict};
use gvcp::sampling;
use gvcp::spectral::{contraction_endo, newton_traces, orbit_signature, DEFAULT_CLUSTER_TOL};

fn sign(e: usize) -> f64 {
    if e.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Sparse form with small integer-and-half coefficients, about a third of
/// the blades populated.
fn form_with(dim: usize, degree: usize) -> impl Strategy<Value = ExteriorForm> {
    let blades: Vec<Vec<usize>> = (1..=dim).combinations(degree).collect();
    let len = blades.len();
    prop::collection::vec(
        prop_oneof![2 => Just(0.0), 1 => (-6i32..=6).prop_map(|c| f64::from(c) / 2.0)],
        len,
    )
    .prop_map(move |coeffs| {
        ExteriorForm::from_terms(
            dim,
            degree,
            blades.iter().zip(&coeffs).map(|(b, &c)| (b.as_slice(), c)),
        )
        .unwrap()
    })
}

fn any_form(max_dim: usize) -> impl Strategy<Value = (usize, usize, ExteriorForm)> {
    (1..=max_dim)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, k)| (Just(n), Just(k), form_with(n, k)))
}

fn form_pair(max_dim: usize) -> impl Strategy<Value = (usize, ExteriorForm, ExteriorForm)> {
    (1..=max_dim)
        .prop_flat_map(|n| (Just(n), 0..=n, 0..=n))
        .prop_flat_map(|(n, k, l)| (Just(n), form_with(n, k), form_with(n, l)))
}

fn unit_vector(dim: usize) -> impl Strategy<Value = Vector> {
    any::<u64>().prop_map(move |s| sampling::random_unit_vector(&mut sampling::rng(s), dim))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graded_commutativity((_, a, b) in form_pair(7)) {
        if let (Ok(ab), Ok(ba)) = (a.wedge(&b), b.wedge(&a)) {
            let s = sign(a.degree() * b.degree());
            prop_assert!(ab.max_abs_diff(&ba.scaled(s)).unwrap() < 1e-12);
        } else {
            prop_assert!(a.degree() + b.degree() > a.dim());
        }
    }

    #[test]
    fn interior_is_an_antiderivation((n, a, b) in form_pair(7), seed in any::<u64>()) {
        prop_assume!(a.degree() + b.degree() <= n && a.degree() + b.degree() > 0);
        let v = sampling::random_vector(&mut sampling::rng(seed), n);
        let k = a.degree();
        let lhs = a.wedge(&b).unwrap().interior(&v).unwrap();
        let mut rhs = ExteriorForm::zero(n, k + b.degree() - 1).unwrap();
        if k > 0 {
            rhs = rhs.add(&a.interior(&v).unwrap().wedge(&b).unwrap()).unwrap();
        }
        if b.degree() > 0 {
            rhs = rhs.add(&a.wedge(&b.interior(&v).unwrap()).unwrap().scaled(sign(k))).unwrap();
        }
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-10 * (1.0 + a.norm() * b.norm() * v.norm()));
    }

    #[test]
    fn hodge_involution((n, k, a) in any_form(9)) {
        prop_assert_eq!(a.hodge().hodge(), a.scaled(sign(k * (n - k))));
        prop_assert_eq!(a.hodge().norm_squared(), a.norm_squared());
    }

    #[test]
    fn wedge_with_star_is_inner_product((n, a, b) in (1usize..=7).prop_flat_map(|n| (Just(n), 0..=n)).prop_flat_map(|(n, k)| (Just(n), form_with(n, k), form_with(n, k)))) {
        let lhs = a.wedge(&b.hodge()).unwrap();
        let rhs = ExteriorForm::volume(n).unwrap().scaled(a.inner(&b).unwrap());
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn contraction_norm_identity((n, tau) in (3usize..=9).prop_flat_map(|n| (Just(n), form_with(n, 3)))) {
        let lhs: f64 = (1..=n).map(|i| tau.interior_basis(i).unwrap().norm_squared()).sum();
        prop_assert!((lhs - 3.0 * tau.norm_squared()).abs() < 1e-10);
    }

    #[test]
    fn trace_of_square_is_minus_twice_norm((_, beta) in (2usize..=8).prop_flat_map(|n| (Just(n), form_with(n, 2)))) {
        let a = SkewEndo::from_two_form(&beta).unwrap();
        prop_assert!((a.square().trace() + 2.0 * beta.norm_squared()).abs() < 1e-12);
        prop_assert_eq!(a.to_two_form(), beta);
    }

    #[test]
    fn signature_invariant_under_conjugation_and_scaling(
        (n, beta) in (2usize..=8).prop_flat_map(|n| (Just(n), form_with(n, 2))),
        seed in any::<u64>(),
        t in 0.25f64..4.0,
    ) {
        let a = SkewEndo::from_two_form(&beta).unwrap();
        let Ok(sig) = orbit_signature(&a, DEFAULT_CLUSTER_TOL) else {
            return Ok(());
        };
        let q = sampling::random_orthogonal(seed, n);
        let conj = orbit_signature(&a.conjugated(&q), DEFAULT_CLUSTER_TOL).unwrap();
        prop_assert!(conj.matches(&sig, 1e-9), "{conj} vs {sig}");
        let scaled = orbit_signature(&a.scaled(t), DEFAULT_CLUSTER_TOL).unwrap();
        prop_assert!(scaled.matches(&sig.scaled(t), 1e-9), "{scaled} vs {}", sig.scaled(t));
        for (v, m) in sig.nonzero() {
            prop_assert!(v < 0.0 && m % 2 == 0);
        }
    }

    #[test]
    fn newton_traces_agree_with_signature(
        (n, tau) in (3usize..=8).prop_flat_map(|n| (Just(n), form_with(n, 3))),
        seed in any::<u64>(),
    ) {
        let x = sampling::random_unit_vector(&mut sampling::rng(seed), n);
        let Ok(sig) = orbit_signature(&contraction_endo(&tau, &x).unwrap(), DEFAULT_CLUSTER_TOL) else {
            return Ok(());
        };
        let kmax = n / 2;
        let direct = newton_traces(&tau, &x, kmax).unwrap();
        let from_sig = sig.power_traces(kmax);
        let scale = 1.0 + tau.norm().powi(2 * kmax as i32);
        prop_assert!(direct.max_abs_diff(&from_sig) < 1e-7 * scale);
    }

    #[test]
    fn json_print_parse_idempotent((_, _, a) in any_form(10)) {
        let text = json::print_form(&a);
        let back = json::parse_form(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(json::print_form(&back), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn classification_is_equivariant_and_homogeneous(seed in any::<u64>(), t in 0.1f64..10.0) {
        for (base, verdict) in [
            (canonical::tau0(), Verdict::G2),
            (canonical::sigma0(), Verdict::Su3),
            (canonical::vol3(), Verdict::Vol3),
        ] {
            let q = sampling::random_orthogonal(seed, base.dim());
            let form = conjugate(&base, &q).unwrap().scaled(t);
            let r = classify(&form).unwrap();
            prop_assert_eq!(r.verdict, verdict);
            prop_assert!((r.scale.unwrap() - t).abs() <= 1e-7 * t);
        }
    }

    #[test]
    fn negatives_stay_negative(seed in any::<u64>(), n in prop::sample::select(vec![4usize, 5, 8])) {
        let tau = sampling::random_form(&mut sampling::rng(seed), n, 3).unwrap();
        prop_assert_eq!(classify(&tau).unwrap().verdict, Verdict::NotGvcp);
    }

    #[test]
    fn lift_restrict_roundtrip(seed in any::<u64>()) {
        let sigma = conjugate(&canonical::sigma0(), &sampling::random_orthogonal(seed, 6)).unwrap();
        let tau = lift(&sigma).unwrap();
        prop_assert_eq!(restrict(&tau, &Vector::basis(7, 7)).unwrap(), sigma);
        prop_assert_eq!(classify(&tau).unwrap().verdict, Verdict::G2);
    }

    #[test]
    fn restriction_of_g2_is_su3(v in unit_vector(7), seed in any::<u64>()) {
        let tau = conjugate(&canonical::tau0(), &sampling::random_orthogonal(seed, 7)).unwrap();
        let r = classify(&restrict(&tau, &v).unwrap()).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Su3);
        prop_assert!((r.scale.unwrap() - 1.0).abs() < 1e-7);
    }

    #[test]
    fn f_map_contract(seed in any::<u64>(), xs in any::<u64>()) {
        let sigma = conjugate(&canonical::sigma0(), &sampling::random_orthogonal(seed, 6)).unwrap();
        let x = sampling::random_vector(&mut sampling::rng(xs), 6);
        let fx = f_map(&sigma, &x).unwrap();
        prop_assert!((fx.norm() - x.norm()).abs() < 1e-10);
        prop_assert!(fx.dot(&x).abs() < 1e-10);
        prop_assert!(contraction_endo(&sigma, &x).unwrap().apply(&fx).norm() < 1e-10);
        let ffx = f_map(&sigma, &fx).unwrap();
        prop_assert!(ffx.add(&x).norm() < 1e-10);
    }
}
