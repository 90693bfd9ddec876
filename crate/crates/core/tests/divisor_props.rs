mod common;

use common::*;
use proptest::prelude::*;
use ratequiv::divisor_calc::{
    boundary, divisor_on, omega, ord_along, principal_divisor, restrict_tame, verify_difference,
    verify_reciprocity, Subvariety,
};
use ratequiv::factor::factor;
use ratequiv::{Polynomial, RationalFunction};

fn function() -> impl Strategy<Value = RationalFunction> {
    (nonzero_poly(plane(), 2, 3), nonzero_poly(plane(), 2, 3)).prop_map(|(a, b)| RationalFunction::new(a, b).unwrap())
}

fn irreducible() -> impl Strategy<Value = Polynomial> {
    nonconstant_poly(plane(), 2, 3).prop_map(|p| factor(&p).unwrap().factors[0].0.clone())
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn divisor_is_a_homomorphism(x in function(), y in function()) {
        let dx = principal_divisor(&x).unwrap().weil_divisor();
        let dy = principal_divisor(&y).unwrap().weil_divisor();
        let dxy = principal_divisor(&x.mul(&y).unwrap()).unwrap().weil_divisor();
        prop_assert_eq!(dxy, dx.add(&dy));
        let inv = principal_divisor(&x.recip().unwrap()).unwrap().weil_divisor();
        prop_assert_eq!(inv, dx.neg());
    }

    #[test]
    fn valuation_laws(x in function(), y in function(), f in irreducible(), k in -3i64..=3) {
        let v = |g: &RationalFunction| ord_along(g, &f).unwrap();
        prop_assert_eq!(v(&x.mul(&y).unwrap()), v(&x) + v(&y));
        prop_assert_eq!(v(&x.pow(k).unwrap()), k * v(&x));
        let with_f = x.mul(&RationalFunction::from_poly(f.clone())).unwrap();
        prop_assert_eq!(v(&with_f), v(&x) + 1);
    }

    #[test]
    fn tame_symbol_is_antisymmetric(x in function(), y in function(), f in irreducible()) {
        let xy = restrict_tame(&x, &y, &f).unwrap();
        let yx = restrict_tame(&y, &x, &f).unwrap();
        let carrier = Subvariety::Hypersurface(f.clone());
        let a = divisor_on(&carrier, &xy).unwrap();
        let b = divisor_on(&carrier, &yx).unwrap();
        prop_assert_eq!(a, b.neg());
    }

    #[test]
    fn reciprocity_on_random_pairs(x in function(), y in function()) {
        prop_assume!(!x.is_constant() && !y.is_constant());
        let check = verify_reciprocity(&x, &y).unwrap();
        prop_assert!(check.holds(), "{} vs {}", check.lhs, check.rhs);
    }

    #[test]
    fn difference_is_the_boundary_of_omega(g in function(), s in irreducible(), a in 1i64..=2, b in -2i64..=2) {
        prop_assume!(b != 0);
        let sf = RationalFunction::from_poly(s.clone());
        let x = g.mul(&sf.pow(a).unwrap()).unwrap();
        let y = sf.pow(b).unwrap();
        prop_assume!(ord_along(&x, &s).unwrap() != 0);
        let d = principal_divisor(&x).unwrap();
        let e = principal_divisor(&y).unwrap();
        prop_assert!(!omega(&d, &e).unwrap().is_empty());
        let check = verify_difference(&d, &e).unwrap();
        prop_assert!(check.holds(), "{} vs {}", check.lhs, check.rhs);
        prop_assert_eq!(boundary(&omega(&d, &e).unwrap()).unwrap(), check.rhs);
    }
}
