//! Property tests for field arithmetic and exact linear algebra.

use proptest::prelude::*;
use superpoint_core::{FiniteField, Mat, Scalar};

fn fields() -> Vec<FiniteField> {
    [(3u64, 1u32), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)]
        .iter()
        .map(|&(p, e)| FiniteField::new(p, e, None).unwrap())
        .collect()
}

proptest! {
    #[test]
    fn frobenius_is_a_field_automorphism(
        field_idx in 0usize..6,
        a in 0u32..343,
        b in 0u32..343,
    ) {
        let f = &fields()[field_idx];
        let a = f.scalar(a % f.order());
        let b = f.scalar(b % f.order());
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.pth_root(f.frobenius(a)), a);
        prop_assert_eq!(f.frobenius(f.pth_root(a)), a);
    }

    #[test]
    fn square_roots_square_back(field_idx in 0usize..6, a in 0u32..343) {
        let f = &fields()[field_idx];
        let a = f.scalar(a % f.order());
        if let Some(r) = f.square_root(a) {
            prop_assert_eq!(f.mul(r, r), a);
            // canonical choice: the smaller of the two encodings
            prop_assert!(r.encoding() <= f.neg(r).encoding());
        } else {
            // no root: a times any nonzero square is again a non-square
            prop_assert!(!a.is_zero());
        }
    }

    #[test]
    fn rank_laws(
        rows in 1usize..6,
        inner in 1usize..6,
        cols in 1usize..6,
        seed in 0u64..10_000,
    ) {
        let f = FiniteField::new(3, 2, None).unwrap();
        let q = f.order() as u64;
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            f.scalar(((state >> 33) % q) as u32)
        };
        let a = Mat::from_fn(rows, inner, |_, _| next());
        let b = Mat::from_fn(inner, cols, |_, _| next());
        let ab = a.mul(&b, &f);
        prop_assert!(ab.rank(&f) <= a.rank(&f).min(b.rank(&f)));
        // rank-nullity
        let k = a.kernel_basis(&f);
        prop_assert_eq!(a.rank(&f) + k.cols, a.cols);
        prop_assert!(a.mul(&k, &f).is_zero());
        // every solve result actually solves
        let rhs = a.col(0);
        if let Some(x) = a.solve(&(0..rows).map(|i| rhs[i]).collect::<Vec<Scalar>>(), &f).unwrap() {
            prop_assert_eq!(a.mul_vec(&x, &f), rhs);
        }
    }

    #[test]
    fn scalar_encoding_round_trips(field_idx in 0usize..6, enc in 0u32..343) {
        let f = &fields()[field_idx];
        let enc = enc % f.order();
        let s = f.scalar(enc);
        prop_assert_eq!(f.from_coords(&f.coords(s)), s);
        prop_assert_eq!(s.encoding(), enc);
    }
}
