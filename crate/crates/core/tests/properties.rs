use entrodyn_core::exact_linalg::rational::{int, ten_pow_neg};
use entrodyn_core::exact_linalg::{
    char_poly, growth_order, mat_mul, mat_pow, root_radius, spectral_radius, BigRational, RationalMatrix,
};
use entrodyn_core::variety_models::builtin;
use num_traits::Zero;
use proptest::prelude::*;

fn small_matrix(max_dim: usize) -> impl Strategy<Value = RationalMatrix> {
    (1..=max_dim).prop_flat_map(|n| {
        prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
            RationalMatrix::new(n, n, v.into_iter().map(int).collect()).unwrap()
        })
    })
}

fn unimodular(n: usize) -> impl Strategy<Value = RationalMatrix> {
    // product of elementary row operations, hence determinant 1
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..6).prop_map(move |ops| {
        let mut p = RationalMatrix::identity(n);
        for (i, j, c) in ops {
            if i == j {
                continue;
            }
            let mut e = RationalMatrix::identity(n).to_rows();
            e[i][j] = int(c);
            p = mat_mul(&RationalMatrix::from_rows(e).unwrap(), &p).unwrap();
        }
        p
    })
}

/// Block-diagonal Jordan matrix from `(eigenvalue, block size)` pairs.
fn jordan(blocks: &[(i64, usize)]) -> RationalMatrix {
    let parts: Vec<RationalMatrix> = blocks
        .iter()
        .map(|&(lambda, size)| {
            let mut rows = RationalMatrix::scalar(size, int(lambda)).to_rows();
            for i in 0..size - 1 {
                rows[i][i + 1] = int(1);
            }
            RationalMatrix::from_rows(rows).unwrap()
        })
        .collect();
    RationalMatrix::block_diagonal(&parts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cayley_hamilton(m in small_matrix(4)) {
        let p = char_poly(&m).unwrap();
        prop_assert!(p.eval_matrix(&m).unwrap().is_zero());
    }

    #[test]
    fn power_law(m in small_matrix(3), a in 0u64..6, b in 0u64..6) {
        let lhs = mat_pow(&m, a + b).unwrap();
        let rhs = mat_mul(&mat_pow(&m, a).unwrap(), &mat_pow(&m, b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn root_radius_within_cauchy_bound(m in small_matrix(4)) {
        let p = char_poly(&m).unwrap();
        let r = root_radius(&p, &ten_pow_neg(6)).unwrap();
        prop_assert!(r.lower() >= &BigRational::zero());
        prop_assert!(r.upper() <= &p.cauchy_bound());
        prop_assert!(r.width() <= ten_pow_neg(6));
    }

    #[test]
    fn radius_of_powers(m in small_matrix(3), k in 1u32..4) {
        let tol = ten_pow_neg(8);
        let r = spectral_radius(&m, &tol).unwrap().pow(k);
        let rk = spectral_radius(&mat_pow(&m, u64::from(k)).unwrap(), &tol).unwrap();
        prop_assert!(rk.lower() <= r.upper() && r.lower() <= rk.upper(), "{:?} vs {:?}", rk, r);
    }

    #[test]
    fn growth_order_is_conjugation_invariant(
        blocks in prop::collection::vec((1i64..=3, 1usize..=2), 1..=3),
        p in unimodular(6),
    ) {
        let j = jordan(&blocks);
        let n = j.rows();
        let p = RationalMatrix::from_rows(
            p.to_rows().into_iter().take(n).map(|r| r.into_iter().take(n).collect()).collect(),
        ).unwrap();
        prop_assume!(!p.determinant().unwrap().is_zero());
        let conj = mat_mul(&mat_mul(&p, &j).unwrap(), &p.inverse().unwrap()).unwrap();
        let tol = ten_pow_neg(9);
        let g = growth_order(&j, &tol, 64).unwrap();
        let h = growth_order(&conj, &tol, 64).unwrap();
        prop_assert_eq!(g.multiplicity, h.multiplicity);
        let top = blocks.iter().map(|b| b.0).max().unwrap();
        let expected = blocks.iter().filter(|b| b.0 == top).map(|b| b.1).max().unwrap();
        prop_assert_eq!(g.multiplicity, expected);
        prop_assert!(h.radius.contains(&int(top)));
    }

    #[test]
    fn cup_product_is_associative_on_random_classes(
        coeffs in prop::collection::vec(-3i64..=3, 24),
    ) {
        for name in ["Pd:3", "P1xP2", "(P1)^3", "ExE"] {
            let m = builtin(name).unwrap();
            let total = m.total_rank();
            let classes: Vec<_> = (0..3)
                .map(|k| {
                    let flat: Vec<BigRational> = (0..total).map(|i| int(coeffs[(k * 8 + i) % 24])).collect();
                    entrodyn_core::variety_models::GradedClass::from_flat(m.ranks(), &flat)
                })
                .collect();
            let (x, y, z) = (&classes[0], &classes[1], &classes[2]);
            let left = m.cup(&m.cup(x, y).unwrap(), z).unwrap();
            let right = m.cup(x, &m.cup(y, z).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            prop_assert_eq!(m.cup(x, y).unwrap(), m.cup(y, x).unwrap());
        }
    }
}
