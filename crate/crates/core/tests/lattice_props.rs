mod common;

use common::{chain, lens};
use lenscape::lattice::*;
use lenscape::numbers::neg_cf_expand;
use lenscape::Limits;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

proptest! {
    #[test]
    fn chain_determinant_is_signed_order(l in lens(10_000)) {
        let cf = neg_cf_expand(&l);
        let dets = chain_determinants(&cf);
        for (i, d) in dets.iter().enumerate() {
            prop_assert_eq!(d.is_negative(), i % 2 == 1);
        }
        prop_assert_eq!(chain_determinant(&cf).abs(), l.p().clone());
        if cf.len() <= 12 {
            prop_assert_eq!(linking_matrix(&cf).determinant(), chain_determinant(&cf));
        }
    }

    #[test]
    fn inverse_linking_matrix_is_entrywise_negative(cf in chain(2, 9, 8)) {
        let q = linking_matrix(&cf);
        prop_assert!(q.is_negative_definite());
        let inv = exact_inverse(&q).unwrap();
        for i in 0..q.dim() {
            for j in 0..q.dim() {
                prop_assert!(inv.get(i, j).is_negative(), "entry ({}, {}) = {}", i, j, inv.get(i, j));
            }
        }
        prop_assert!(inv.left_mul(&q).is_identity());
    }

    #[test]
    fn greedy_embedding_realizes_the_form(cf in chain(2, 6, 5)) {
        let plumbing = LinearPlumbing::from_cf(&cf).unwrap();
        let e = max_irreducible_embedding(&plumbing).unwrap();
        prop_assert_eq!(e.gram(), plumbing.form());
        prop_assert!(e.is_irreducible());
        let complement = orthogonal_complement(&e);
        prop_assert_eq!(complement.dim(), e.t - cf.len());
        if complement.dim() > 0 {
            let shortest = short_vectors(&complement.negated(), &BigInt::one(), &Limits::default()).unwrap();
            prop_assert!(shortest.is_empty());
        }
    }
}

#[test]
fn oracle_agrees_with_greedy_on_small_chains() {
    let limits = Limits::default();
    for weights in [vec![-2], vec![-3], vec![-2, -2], vec![-2, -3], vec![-3, -3], vec![-2, -3, -2], vec![-4, -2]] {
        let p = LinearPlumbing::new(weights.clone()).unwrap();
        let e = max_irreducible_embedding(&p).unwrap();
        let found: Vec<_> =
            embedding_oracle(&p, e.t, &limits).unwrap().into_iter().filter(|x| x.is_irreducible()).collect();
        assert_eq!(found, vec![e.canonical()], "weights {weights:?}");
        let above: Vec<_> =
            embedding_oracle(&p, e.t + 1, &limits).unwrap().into_iter().filter(|x| x.is_irreducible()).collect();
        assert!(above.is_empty(), "weights {weights:?}");
    }
}

#[test]
fn short_vectors_of_the_square_lattice() {
    let id = SymmetricIntMatrix::from_i64(&[vec![1, 0], vec![0, 1]]).unwrap();
    assert_eq!(short_vectors(&id, &BigInt::from(1), &Limits::default()).unwrap().len(), 4);
    assert_eq!(short_vectors(&id, &BigInt::from(2), &Limits::default()).unwrap().len(), 8);
}
