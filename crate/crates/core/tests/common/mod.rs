#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use ratequiv::{Monomial, Polynomial, Ring};

pub fn plane() -> Ring {
    Ring::new(["u", "v"])
}

pub fn space() -> Ring {
    Ring::new(["u", "v", "x"])
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Sparse polynomials with small integer coefficients and bounded degree.
pub fn poly(ring: Ring, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let n = ring.len();
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), -6i64..=6), 0..=max_terms).prop_map(
        move |terms| {
            Polynomial::from_terms(
                &ring,
                terms
                    .into_iter()
                    .filter(|(e, _)| e.iter().sum::<u32>() <= max_deg)
                    .map(|(e, c)| (Monomial::from_exponents(e), q(c))),
            )
        },
    )
}

pub fn nonzero_poly(ring: Ring, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly(ring, max_deg, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn nonconstant_poly(ring: Ring, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly(ring, max_deg, max_terms).prop_filter("nonconstant", |p| !p.is_constant())
}

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
