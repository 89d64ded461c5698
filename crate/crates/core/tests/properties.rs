use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use semisimplicial::homalg::{invariant_factors, smith_normal_form, ChainComplex, IntMatrix, Ring};
use semisimplicial::sset::{random_semi_simplicial, random_simplicial, RandomShape, SimplexRef};
use semisimplicial::theorems;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn squares_to_zero(c: &ChainComplex) -> bool {
    (2..=c.top()).all(|k| (&c.boundary(k - 1) * &c.boundary(k)).is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn random_semi_simplicial_sets_are_valid(seed in any::<u64>()) {
        let x = random_semi_simplicial(seed, RandomShape::default());
        prop_assert!(x.validate().valid);
        prop_assert!(squares_to_zero(&ChainComplex::unnormalized(&x, Ring::Z)));
    }

    #[test]
    fn euler_characteristic_matches_rational_betti_numbers(seed in any::<u64>()) {
        let x = random_semi_simplicial(seed, RandomShape::default());
        let c = ChainComplex::unnormalized(&x, Ring::Q);
        let chi: i64 = c.homology_all().iter().enumerate().map(|(k, h)| if k % 2 == 0 { h.group.rank as i64 } else { -(h.group.rank as i64) }).sum();
        prop_assert_eq!(c.euler_characteristic().unwrap(), chi);
    }

    #[test]
    fn random_simplicial_sets_are_valid(seed in any::<u64>()) {
        let y = random_simplicial(seed, RandomShape::default());
        prop_assert!(y.validate(4).is_ok());
        prop_assert!(squares_to_zero(&ChainComplex::normalized(&y, Ring::Z, 5)));
    }

    #[test]
    fn normalized_and_unnormalized_homology_agree(seed in any::<u64>()) {
        let y = random_simplicial(seed, RandomShape { max_dim: 2, max_per_level: 3 });
        let normalized = ChainComplex::normalized(&y, Ring::Z, 4);
        let unnormalized = ChainComplex::unnormalized(&y.enumerate(4).sset, Ring::Z);
        let d = 3;
        prop_assert_eq!(unnormalized.trusted_through(), Some(d));
        let a: Vec<_> = normalized.homology_through(d).unwrap().into_iter().map(|h| h.group).collect();
        let b: Vec<_> = unnormalized.homology_through(d).unwrap().into_iter().map(|h| h.group).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn faces_of_simplices_are_normal(seed in any::<u64>()) {
        let y = random_simplicial(seed, RandomShape::default());
        let e = y.enumerate(4);
        let refs = e.simplices.as_ref().unwrap();
        for n in 1..refs.len() {
            for (s, r) in refs[n].iter().enumerate() {
                for i in 0..=n {
                    let f: SimplexRef = y.normalize_face(i, r);
                    prop_assert_eq!(f.word.len() + f.deg, n - 1);
                    prop_assert_eq!(&refs[n - 1][e.sset.face(n, i, s)], &f);
                }
            }
        }
    }

    #[test]
    fn unit_is_a_homology_isomorphism(seed in any::<u64>()) {
        let x = random_semi_simplicial(seed, RandomShape { max_dim: 2, max_per_level: 4 });
        prop_assert!(theorems::check_adj_units(&x, 4).unwrap().passed());
    }

    #[test]
    fn smith_form_is_a_factorization(rows in small_matrix()) {
        let a = IntMatrix::from_dense(&rows);
        let s = smith_normal_form(&a, true);
        let t = s.transforms.as_ref().unwrap();
        prop_assert_eq!(&(&(&t.u * &a) * &t.v), &s.diagonal());
        prop_assert_eq!(&t.u * &t.u_inv, IntMatrix::identity(a.rows()));
        prop_assert_eq!(&t.v * &t.v_inv, IntMatrix::identity(a.cols()));
        for w in s.factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(s.factors.iter().all(|d| *d >= BigInt::one()));
        prop_assert_eq!(invariant_factors(&a), s.factors.clone());
    }
}
