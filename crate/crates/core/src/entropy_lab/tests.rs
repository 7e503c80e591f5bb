use std::sync::Arc;

use rand::{Rng, SeedableRng};

use super::*;
use crate::endo_actions::{abelian_matrix, coordinate_permutation, power_map, product_power_map, EndoAction};
use crate::exact_linalg::rational::int;
use crate::fit::least_squares;
use crate::rr_engine::{euler_pairing, twist_action, KClassSum};
use crate::variety_models::{builtin, VarietyModel};

fn model(name: &str) -> Arc<VarietyModel> {
    Arc::new(builtin(name).unwrap())
}

fn synthetic(f: impl Fn(f64) -> f64, n_max: u32) -> EntropySequence {
    EntropySequence {
        descriptor: "synthetic".into(),
        terms: (1..=n_max).map(|n| (n, f(f64::from(n)))).collect(),
        exact: Vec::new(),
    }
}

fn golden_log2() -> f64 {
    // 2 log φ from the eigenvalues φ, ψ of M: the largest |λ_i λ_j| on Λ²H¹
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let psi = (1.0 - 5f64.sqrt()) / 2.0;
    let eig = [phi, phi, psi, psi];
    let mut best = 0f64;
    for i in 0..4 {
        for j in i + 1..4 {
            best = best.max((eig[i] * eig[j]).abs());
        }
    }
    best.ln()
}

#[test]
fn p1_chi_sequence_matches_closed_form() {
    let f = power_map(model("Pd:1"), 2).unwrap();
    let seq = chi_sequence(&f, 20).unwrap();
    // χ(O(i), O(-2^n j)) = 1 - i - 2^n j summed over i, j ∈ {1, 2}
    for (n, chi) in (1..=20).zip(&seq.exact) {
        let expected = -2 - 6 * (1i64 << n);
        assert_eq!(chi, &int(expected), "n = {n}");
    }
    assert_eq!(seq.exact[0], int(-14));
    let h = extract_limit(&chi_sequence(&f, DEFAULT_N_MAX).unwrap()).unwrap();
    assert!((h.h - 2f64.ln()).abs() < 1e-6, "{h:?}");
}

#[test]
fn identity_sequence_is_constant() {
    let seq = chi_sequence(&EndoAction::identity(model("Pd:2")), 16).unwrap();
    assert!(seq.exact.windows(2).all(|w| w[0] == w[1]));
    assert!(extract_limit(&seq).unwrap().h.abs() < 1e-12);
}

#[test]
fn product_map_entropy() {
    let f = product_power_map(model("P1xP1"), &[2, 3]).unwrap();
    let h = extract_limit(&chi_sequence(&f, 48).unwrap()).unwrap();
    assert!((h.h - 6f64.ln()).abs() < 1e-6, "{h:?}");
}

#[test]
fn chi_sequence_is_reproducible_from_fresh_powers() {
    for f in [
        power_map(model("Pd:3"), 3).unwrap(),
        abelian_matrix(model("ExE"), [[1, 1], [1, 0]]).unwrap(),
        product_power_map(model("P1xP2"), &[2, 3]).unwrap(),
    ] {
        let seq = chi_sequence(&f, 24).unwrap();
        for n in [1u32, 2, 7, 24] {
            assert_eq!(chi_term(&f, n).unwrap(), seq.exact[n as usize - 1]);
        }
    }
}

#[test]
fn extract_limit_examples() {
    let linear = extract_limit(&synthetic(|n| 3.0 * n, 48)).unwrap();
    assert!((linear.h - 3.0).abs() < 1e-12);
    assert!(linear.error_bar < 1e-9, "{linear:?}");
    let corrected = extract_limit(&synthetic(|n| 2.0 * n + 5.0 * n.ln() + 1.0, 64)).unwrap();
    assert!((corrected.h - 2.0).abs() < 0.01);
    let bounded = extract_limit(&synthetic(|_| 7.0, 48)).unwrap();
    assert!(bounded.h.abs() < 1e-12);
    assert_eq!(
        extract_limit(&synthetic(|n| n, 7)),
        Err(EntropyError::TooFewTerms { len: 7 })
    );
}

#[test]
fn entropy_equality_examples() {
    let t = Tolerances::default();
    let report = verify_theorem1(&power_map(model("Pd:2"), 2).unwrap(), t, 48).unwrap();
    assert!(report.all_pass(), "{:?}", report.verdicts);
    let expected = 2.0 * 2f64.ln();
    assert!((report.h.h - expected).abs() < 1e-4);
    assert!((report.rho.ln_midpoint() - expected).abs() < 1e-6);

    let id = verify_theorem1(&EndoAction::identity(model("Pd:2")), t, 48).unwrap();
    assert!(id.all_pass());
    assert!(id.h.h.abs() < 1e-6);

    let fib = verify_theorem1(&abelian_matrix(model("ExE"), [[1, 1], [1, 0]]).unwrap(), t, 48).unwrap();
    assert!(fib.all_pass(), "{:?}", fib.verdicts);
    let oracle = golden_log2();
    assert!((fib.h.h - oracle).abs() < 1e-3);
    assert!((fib.log_max_dq() - oracle).abs() < 1e-3);
}

fn example_actions() -> Vec<EndoAction> {
    vec![
        power_map(model("Pd:1"), 2).unwrap(),
        power_map(model("Pd:2"), 3).unwrap(),
        power_map(model("Pd:3"), 2).unwrap(),
        product_power_map(model("P1xP1"), &[2, 3]).unwrap(),
        coordinate_permutation(model("P1xP1"), &[1, 0]).unwrap(),
        abelian_matrix(model("ExE"), [[1, 1], [1, 0]]).unwrap(),
        abelian_matrix(model("ExE"), [[2, 1], [1, 1]]).unwrap(),
        EndoAction::identity(model("(P1)^3")),
    ]
}

#[test]
fn entropy_is_nonnegative_and_bounded_by_degrees() {
    let t = Tolerances::default();
    for f in example_actions() {
        let r = verify_theorem1(&f, t, 40).unwrap();
        assert!(r.h.h >= -1e-6, "{}", f.model().name());
        assert!(r.log_rho().1 <= r.log_max_rq().1 + 1e-6);
    }
}

#[test]
fn iterate_law_within_error_bars() {
    for f in [power_map(model("Pd:1"), 2).unwrap(), power_map(model("Pd:2"), 3).unwrap(), power_map(model("P1xP1"), 2).unwrap()] {
        let h1 = extract_limit(&chi_sequence(&f, 48).unwrap()).unwrap();
        let h2 = extract_limit(&chi_sequence(&f.compose(&f).unwrap(), 48).unwrap()).unwrap();
        let gap = (h2.h - 2.0 * h1.h).abs();
        assert!(gap <= h2.error_bar + 2.0 * h1.error_bar + 1e-12, "{gap} vs {h1:?} {h2:?}");
    }
}

#[test]
fn anti_ample_twist_selection() {
    let p1 = model("Pd:1");
    // K = -2H, so O(5) needs l = 3 to reach O(-1)
    assert_eq!(anti_ample_twist(&p1, &[int(5)]).unwrap(), (3, vec![int(-1)]));
    assert_eq!(anti_ample_twist(&p1, &[int(-4)]).unwrap(), (0, vec![int(-4)]));
    let q = model("P1xP1");
    assert_eq!(anti_ample_twist(&q, &[int(1), int(-3)]).unwrap(), (1, vec![int(-1), int(-5)]));
}

#[test]
fn autoeq_examples() {
    let t = Tolerances { tol: 1e-6, h_tol: 1e-3 };
    let p1 = model("Pd:1");
    let twist = standard_autoeq_entropy(&EndoAction::identity(p1.clone()), &[int(5)], 0, t, 48).unwrap();
    assert!(twist.all_pass(), "{:?}", twist.verdicts);
    assert!(twist.rho.contains(&int(1)));
    let shift = standard_autoeq_entropy(&EndoAction::identity(model("Pd:2")), &[int(0)], 3, t, 48).unwrap();
    assert!(shift.all_pass(), "{:?}", shift.verdicts);
    let mixed = standard_autoeq_entropy(&EndoAction::identity(p1), &[int(1)], 1, t, 48).unwrap();
    assert!(mixed.h.h.abs() <= 1e-3);
    let exe = EndoAction::identity(model("ExE"));
    assert!(matches!(
        standard_autoeq_entropy(&exe, &[int(0), int(0), int(0)], 0, t, 48),
        Err(EntropyError::NotCanonicallyAmple(_))
    ));
    let not_auto = power_map(model("Pd:1"), 2).unwrap();
    assert!(standard_autoeq_entropy(&not_auto, &[int(0)], 0, t, 48).is_err());
}

#[test]
fn autoeq_sequence_matches_matrix_iteration() {
    let q = model("P1xP1");
    let f = coordinate_permutation(q.clone(), &[1, 0]).unwrap();
    let l_prime = [int(2), int(-1)];
    let r = standard_autoeq_entropy(&f, &l_prime, 0, Tolerances::default(), 12).unwrap();
    // [F′] = [f^*] ∘ [⊗ L″] applied n times to ch(G*)
    let twist = twist_action(&q, &q.divisor(&r.anti_ample_twist).unwrap()).unwrap();
    let f_prime = crate::rr_engine::endo_k_action(&f).compose(&twist).unwrap();
    let l = q.c1l().part(1).to_vec();
    let g = KClassSum::twists_of(&l, 1..=3).chern_class(&q).unwrap();
    let mut v = KClassSum::twists_of(&l, (1..=3).map(|i| -i)).chern_class(&q).unwrap();
    for n in 1..=12 {
        v = f_prime.apply(&q, &v).unwrap();
        assert_eq!(euler_pairing(&q, &g, &v).unwrap(), r.sequence.exact[n - 1], "n = {n}");
    }
}

#[test]
fn random_autoequivalences_have_zero_entropy() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(17);
    let t = Tolerances { tol: 1e-6, h_tol: 1e-3 };
    for _ in 0..6 {
        let d = rng.gen_range(1..=2usize);
        let m = model(&format!("Pd:{d}"));
        let mut perm: Vec<usize> = (0..=d).collect();
        perm.rotate_left(rng.gen_range(0..=d));
        let f = coordinate_permutation(m, &perm).unwrap();
        let r = standard_autoeq_entropy(&f, &[int(rng.gen_range(-5..=5))], rng.gen_range(-2..=2), t, 48).unwrap();
        assert!(r.all_pass(), "{:?}", r.verdicts);
        assert!(r.rho.width() <= crate::exact_linalg::rational::ten_pow_neg(9));
    }
}

#[test]
fn shift_entropy_is_mt() {
    for m in [-2i64, -1, 1, 2] {
        let grid = [-1.0, -0.3, 0.0, 0.7, 1.0];
        let points = entropy_function_t(1, Functor::shift(m), &grid, 48).unwrap();
        for p in &points {
            assert!((p.h.h - m as f64 * p.t).abs() <= 1e-6, "m={m} t={}", p.t);
        }
        // affine in t with slope m
        let ts: Vec<f64> = points.iter().map(|p| p.t).collect();
        let hs: Vec<f64> = points.iter().map(|p| p.h.h).collect();
        let fit = least_squares(&[ts, vec![1.0; grid.len()]], &hs).unwrap();
        assert!(fit.max_residual < 1e-9);
        assert!((fit.coefficients[0] - m as f64).abs() < 1e-9);
    }
    let p1 = entropy_function_t(1, Functor::shift(1), &[-1.0, 0.0, 0.5, 1.0], 48).unwrap();
    assert!(p1.iter().all(|p| (p.h.h - p.t).abs() < 1e-6));
}

#[test]
fn twist_and_pullback_functors() {
    let twist = entropy_function_t(1, Functor::twist(1), &[0.0], 48).unwrap();
    assert!(twist[0].h.h.abs() < 1e-3, "{twist:?}");
    let pull = entropy_function_t(1, Functor::pullback(2), &[0.0], 48).unwrap();
    assert!((pull[0].h.h - 2f64.ln()).abs() < 1e-6);
    let pull3 = entropy_function_t(2, Functor::pullback(3), &[0.0, 0.5], 48).unwrap();
    for p in pull3 {
        assert!((p.h.h - 2.0 * 3f64.ln()).abs() < 1e-6, "{p:?}");
    }
    assert!(matches!(
        entropy_function_t(1, Functor::pullback(0), &[0.0], 48),
        Err(EntropyError::UnsupportedFunctor(_))
    ));
}

#[test]
fn zero_chi_aborts() {
    // with f^*H = cH on P^1, χ_1 = -2 - 6c
    let action = EndoAction::new(
        model("Pd:1"),
        vec![
            crate::exact_linalg::RationalMatrix::identity(1),
            crate::exact_linalg::RationalMatrix::scalar(1, crate::exact_linalg::rational::rational(-1, 3)),
        ],
        num_bigint::BigInt::from(1),
    );
    assert_eq!(chi_sequence(&action, 4), Err(EntropyError::ZeroChi { n: 1 }));
}
