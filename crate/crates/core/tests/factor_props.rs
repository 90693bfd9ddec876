mod common;

use common::*;
use proptest::prelude::*;
use ratequiv::factor::{factor, is_irreducible};
use ratequiv::poly::gcd;
use ratequiv::Ring;

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn univariate_round_trip(p in nonzero_poly(Ring::new(["u"]), 8, 6)) {
        let f = factor(&p).unwrap();
        prop_assert!(f.certified);
        prop_assert_eq!(f.expand(p.ring()), p);
    }

    #[test]
    fn bivariate_round_trip_and_coprimality(a in nonconstant_poly(plane(), 2, 3), b in nonconstant_poly(plane(), 2, 3), k in 1u32..=2) {
        let p = &a.pow(k) * &b;
        let f = factor(&p).unwrap();
        prop_assert_eq!(f.expand(p.ring()), p);
        for (i, (g, _)) in f.factors.iter().enumerate() {
            prop_assert!(!g.is_constant());
            prop_assert!(is_irreducible(g).unwrap());
            for (h, _) in &f.factors[i + 1..] {
                prop_assert!(gcd(g, h).unwrap().is_constant());
            }
        }
    }

    #[test]
    fn trivariate_round_trip(a in nonconstant_poly(space(), 2, 3), b in nonconstant_poly(space(), 1, 3)) {
        let p = &a * &b;
        let f = factor(&p).unwrap();
        prop_assert_eq!(f.expand(p.ring()), p);
        prop_assert!(f.factors.len() >= 2 || f.factors.iter().any(|(_, e)| *e >= 2));
    }
}
