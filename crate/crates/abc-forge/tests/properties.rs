//! Property tests for the library invariants that quantify over random
//! inputs.

use abc_forge::exact_poly::{factor_shape_mod_p, field_discriminant, FactorBudget, FieldDisc, IntPoly};
use abc_forge::num_bigint::BigInt;
use abc_forge::num_rational::BigRational;
use abc_forge::real_embeddings::{isolate_real_roots, refine_root};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn int_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    proptest::collection::vec(-bound..=bound, 1..=max_deg + 1)
        .prop_map(|c| IntPoly::from_i64(&c))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn monic_poly(deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    proptest::collection::vec(-bound..=bound, deg).prop_map(move |mut c| {
        c.push(1);
        IntPoly::from_i64(&c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_multiplicative(
        f in int_poly(4, 12),
        g in int_poly(3, 12),
        h in int_poly(3, 12),
    ) {
        let gh = g.mul(&h);
        prop_assume!(!gh.is_zero());
        let lhs = f.resultant(&gh).unwrap();
        let rhs = f.resultant(&g).unwrap() * f.resultant(&h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn discriminant_vanishes_iff_repeated_root(f in monic_poly(6, 50)) {
        let disc_zero = f.discriminant().unwrap().is_zero();
        let gcd_nonconst = f.gcd(&f.derivative()).deg() > 0;
        prop_assert_eq!(disc_zero, gcd_nonconst);
    }

    #[test]
    fn factor_shapes_account_for_degree(
        f in monic_poly(5, 30),
        p_idx in 0usize..6,
    ) {
        let p = [2u64, 3, 5, 7, 11, 13][p_idx];
        let shape = factor_shape_mod_p(&f, p).unwrap();
        prop_assert_eq!(shape.total_degree(), f.deg());
    }

    #[test]
    fn field_disc_divides_with_square_quotient(f in monic_poly(2, 40)) {
        prop_assume!(f.is_squarefree());
        let disc = f.discriminant().unwrap();
        if let FieldDisc::Value(dk) = field_discriminant(&f, FactorBudget::default()).unwrap() {
            let q = &disc / &dk;
            prop_assert!((&disc % &dk).is_zero());
            let r = q.sqrt();
            prop_assert_eq!(&r * &r, q);
        }
    }

    #[test]
    fn refinement_never_loses_the_root(
        roots in proptest::collection::btree_set(-30i64..=30, 1..=4),
        bits in 8u32..40,
    ) {
        let rs: Vec<BigInt> = roots.iter().map(|&r| BigInt::from(r)).collect();
        let f = IntPoly::from_roots(&rs);
        let eps = BigRational::new(BigInt::from(1), BigInt::from(1u64) << bits);
        let boxes = isolate_real_roots(&f).unwrap();
        prop_assert_eq!(boxes.len(), rs.len());
        for bx in &boxes {
            let tight = refine_root(&f, bx, &eps);
            prop_assert!(tight.width() <= eps);
            let lo = f.eval_rational(&tight.lo);
            let hi = f.eval_rational(&tight.hi);
            prop_assert!(lo.is_negative() != hi.is_negative() || lo.is_zero() || hi.is_zero());
        }
    }
}
