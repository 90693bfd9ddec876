mod common;

use common::*;
use proptest::prelude::*;
use ratequiv::groebner::{Ideal, MonomialOrder};
use ratequiv::Polynomial;

const ORDERS: [MonomialOrder; 3] = [MonomialOrder::Lex, MonomialOrder::GrLex, MonomialOrder::GRevLex];

fn ideal() -> impl Strategy<Value = Ideal> {
    prop::collection::vec(nonzero_poly(space(), 2, 3), 1..=3).prop_map(|g| Ideal::new(&space(), g).unwrap())
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn normal_form_is_idempotent_and_congruent(i in ideal(), p in poly(space(), 3, 5), k in 0usize..3) {
        let order = ORDERS[k];
        let r = i.normal_form(&p, order).unwrap();
        prop_assert_eq!(i.normal_form(&r, order).unwrap(), r.clone());
        prop_assert!(i.contains(&(&p - &r)).unwrap());
    }

    #[test]
    fn generators_reduce_to_zero(i in ideal(), k in 0usize..3) {
        for g in i.generators() {
            prop_assert!(i.normal_form(g, ORDERS[k]).unwrap().is_zero());
        }
    }

    #[test]
    fn bases_agree_across_orders(i in ideal()) {
        let a = Ideal::new(i.ring(), i.groebner_basis(MonomialOrder::Lex).unwrap().iter().cloned()).unwrap();
        let b = Ideal::new(i.ring(), i.groebner_basis(MonomialOrder::GRevLex).unwrap().iter().cloned()).unwrap();
        prop_assert!(a.same_ideal(&b).unwrap());
        prop_assert!(a.same_ideal(&i).unwrap());
    }

    #[test]
    fn saturation_is_idempotent(i in ideal(), f in nonconstant_poly(space(), 1, 2)) {
        let s = i.saturate(&f).unwrap();
        prop_assert!(s.contains_ideal(&i).unwrap());
        prop_assert!(s.saturate(&f).unwrap().same_ideal(&s).unwrap());
    }

    #[test]
    fn products_lie_in_both_factors(i in ideal(), j in ideal()) {
        let p = i.product(&j).unwrap();
        prop_assert!(i.contains_ideal(&p).unwrap());
        prop_assert!(j.contains_ideal(&p).unwrap());
    }
}

#[test]
fn elimination_keeps_the_implicit_equation() {
    let r = space();
    let [u, v, x] = [0, 1, 2].map(|i| Polynomial::variable(&r, i));
    let i = Ideal::new(&r, [&u - &x.pow(2), &v - &x.pow(3)]).unwrap();
    let e = i.eliminate(&[2]).unwrap();
    assert_eq!(e.ring(), &plane());
    let cusp = (&u.pow(3) - &v.pow(2)).embed(&plane()).unwrap();
    assert!(e.contains(&cusp).unwrap());
    assert!(Ideal::new(&plane(), [cusp]).unwrap().same_ideal(&e).unwrap());
}
