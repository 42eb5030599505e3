//! Randomized invariants: things that must hold for arbitrary inputs, not
//! just the tabulated cases.

use fjrw_core::correlators::{three_point, LoopSpace};
use fjrw_core::frobenius::validate;
use fjrw_core::mirror::grid_algebra;
use fjrw_core::qpoly::{classify, loop_potential, weights_of};
use fjrw_core::rational::{q_from_string, q_to_string, qr};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_strings_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let x = qr(n, d);
        prop_assert_eq!(q_from_string(&q_to_string(&x)), Some(x));
    }

    /// Swapping the two variables of a loop gives the swapped classification
    /// and swapped weights.
    #[test]
    fn loop_classification_ignores_labels(a1 in 2u32..8, a2 in 2u32..8) {
        let w = loop_potential(a1, a2);
        let swapped = w.relabel(&[1, 0]);
        prop_assert_eq!(
            classify(&w).unwrap().describe(),
            classify(&swapped).unwrap().describe()
        );
        let q = weights_of(&w).unwrap();
        let qs = weights_of(&swapped).unwrap();
        prop_assert_eq!(&q.weights[0], &qs.weights[1]);
        prop_assert_eq!(&q.weights[1], &qs.weights[0]);
    }

    #[test]
    fn three_point_is_permutation_invariant(
        a1 in 2u32..5, a2 in 2u32..5, seed in any::<u64>()
    ) {
        let ls = LoopSpace::new(a1, a2).unwrap();
        let n = ls.space.dim() as u64;
        let i = (seed % n) as usize;
        let j = ((seed / n) % n) as usize;
        let k = ((seed / (n * n)) % n) as usize;
        let base = three_point(&ls.space, [i, j, k]).unwrap();
        for p in [[j, k, i], [k, i, j], [j, i, k], [i, k, j], [k, j, i]] {
            prop_assert_eq!(&three_point(&ls.space, p).unwrap(), &base);
        }
    }

    /// Every dual-side algebra passes the full Frobenius checks.
    #[test]
    fn grid_algebra_is_frobenius(a1 in 2u32..8, a2 in 2u32..8) {
        let g = grid_algebra(a1, a2).unwrap();
        let alg = g.as_frobenius().unwrap();
        let v = validate(&alg);
        prop_assert!(v.is_valid(), "{:?}", v);
    }
}
