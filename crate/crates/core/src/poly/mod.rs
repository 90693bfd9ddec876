//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] is a map from exponent vectors to nonzero [`BigRational`]
//! coefficients, tied to a [`Ring`] that names its variables. Terms are kept in
//! a `BTreeMap`, so iteration order is lexicographic with the first ring
//! variable most significant; display and normalization use graded-lex.

mod dense;
pub(crate) mod gcd;
mod rational;

pub use dense::UniPoly;
pub use gcd::{content_in, gcd, squarefree_part};
pub use rational::RationalFunction;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An ordered list of variable names.
// Equality only adds a pointer fast path, so the derived hash agrees with it.
#[allow(clippy::derived_hash_with_manual_eq)]
#[derive(Clone, Debug, Eq, Hash, PartialOrd, Ord)]
pub struct Ring {
    vars: Arc<[String]>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }
}

impl Ring {
    pub fn new<I, S>(names: I) -> Ring
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ring {
            vars: names.into_iter().map(Into::into).collect::<Vec<_>>().into(),
        }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// A ring with `extra` appended after the existing variables.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Ring {
        Ring::new(
            self.vars
                .iter()
                .cloned()
                .chain(extra.iter().map(|s| s.as_ref().to_string())),
        )
    }

    /// `base`, or `base` followed by primes, whichever is not yet a variable.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.index_of(&name).is_some() {
            name.push('\'');
        }
        name
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.vars.join(","))
    }
}

/// Exponent vector; its derived `Ord` is lex with variable 0 most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Monomial {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// Graded-lex comparison.
    pub fn cmp_grlex(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A polynomial with rational coefficients in a named ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, BigRational::one())
    }

    pub fn constant(ring: &Ring, c: BigRational) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ring.len()), c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_int(ring: &Ring, c: i64) -> Polynomial {
        Polynomial::constant(ring, rat(c))
    }

    pub fn variable(ring: &Ring, i: usize) -> Polynomial {
        Polynomial::monomial(ring, Monomial::var(ring.len(), i), BigRational::one())
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Polynomial> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::RingMismatch(format!("no variable `{name}` in {ring}")))?;
        Ok(Polynomial::variable(ring, i))
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: BigRational) -> Polynomial {
        debug_assert_eq!(m.len(), ring.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_terms<I>(ring: &Ring, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Indices of the variables that occur.
    pub fn vars_present(&self) -> Vec<usize> {
        (0..self.ring.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// Leading term under graded-lex.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().max_by(|a, b| a.0.cmp_grlex(b.0))
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), if negate { -c.clone() } else { c.clone() });
        }
        out
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / q`, or [`Error::NotDivisible`].
    pub fn exact_divide(&self, q: &Polynomial) -> Result<Polynomial> {
        self.check_ring(q)?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (lm, lc) = q.terms.iter().next_back().expect("nonzero");
        let lm = lm.clone();
        let lc = lc.clone();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            let d = m.checked_div(&lm).ok_or(Error::NotDivisible)?;
            let coef = c / &lc;
            for (qm, qc) in &q.terms {
                rem.add_term(qm.mul(&d), -(qc * &coef));
            }
            quot.add_term(d, coef);
        }
        Ok(quot)
    }

    pub fn divides(&self, p: &Polynomial) -> bool {
        p.exact_divide(self).is_ok()
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.add_term(m2, c * rat(e as i64));
        }
        out
    }

    /// Re-express in a ring containing every variable that occurs in `self`.
    pub fn embed(&self, target: &Ring) -> Result<Polynomial> {
        if *target == self.ring {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.ring.len());
        for (i, name) in self.ring.vars().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if !self.involves(i) => map.push(None),
                None => {
                    return Err(Error::RingMismatch(format!(
                        "variable `{name}` missing from {target}"
                    )))
                }
            }
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    e[j] = x;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Substitute polynomials for variables. Unbound variables map to the
    /// variable of the same name in `target`.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<usize, Polynomial>,
        target: &Ring,
    ) -> Result<Polynomial> {
        let mut images = Vec::with_capacity(self.ring.len());
        for i in 0..self.ring.len() {
            match bindings.get(&i) {
                Some(p) => {
                    if p.ring != *target {
                        return Err(Error::RingMismatch(format!(
                            "binding lives in {}, expected {target}",
                            p.ring
                        )));
                    }
                    images.push(Some(p.clone()));
                }
                None if self.involves(i) => {
                    images.push(Some(Polynomial::var(target, self.ring.var_name(i))?))
                }
                None => images.push(None),
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|_| vec![Polynomial::one(target)])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images[i].as_ref().expect("occurring variable has an image");
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * img;
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Set variable `var` to the value `c`.
    pub fn evaluate_var(&self, var: usize, c: &BigRational) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, a) in &self.terms {
            let e = m.0[var];
            let mut m2 = m.clone();
            m2.0[var] = 0;
            let factor = if e == 0 {
                BigRational::one()
            } else {
                num_traits::pow(c.clone(), e as usize)
            };
            out.add_term(m2, a * factor);
        }
        out
    }

    /// Coefficients with respect to `var`, indexed by power; each coefficient
    /// is free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![Polynomial::zero(&self.ring); d + 1];
        if self.is_zero() {
            return vec![];
        }
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut m2 = m.clone();
            m2.0[var] = 0;
            out[e].add_term(m2, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(ring: &Ring, var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero(ring);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut m2 = m.clone();
                m2.0[var] += e as u32;
                out.add_term(m2, a.clone());
            }
        }
        out
    }

    /// Split `self = unit * primitive`, where `primitive` has coprime integer
    /// coefficients and a positive graded-lex leading coefficient.
    pub fn primitive_split(&self) -> (BigRational, Polynomial) {
        if self.is_zero() {
            return (BigRational::zero(), self.clone());
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den / c.denom());
            num_gcd = num_gcd.gcd(&n);
        }
        let mut unit = BigRational::new(num_gcd, den);
        if self.leading_coefficient().is_negative() {
            unit = -unit;
        }
        let inv = unit.recip();
        (unit, self.scale(&inv))
    }

    /// Primitive integer representative with positive leading coefficient.
    pub fn normalized(&self) -> Polynomial {
        self.primitive_split().1
    }

    /// Monic under graded-lex (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coefficient().recip())
    }

    pub fn max_coefficient_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    /// Panics on ring mismatch; use [`Polynomial::add`] for a checked sum.
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        self.add_unchecked(rhs, false)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        self.add_unchecked(rhs, true)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-BigRational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        (&self).neg()
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.cmp_grlex(a.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let v = self.ring.var_name(i);
                    if e == 1 {
                        v.to_string()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", fmt_rational(&abs))?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::new(["u", "v"])
    }

    fn u() -> Polynomial {
        Polynomial::var(&ring(), "u").unwrap()
    }

    fn v() -> Polynomial {
        Polynomial::var(&ring(), "v").unwrap()
    }

    #[test]
    fn add_cancels_and_sums() {
        assert_eq!(&(&u() + &v()) + &(&u() - &v()), u().scale(&rat(2)));
        assert_eq!(&u() + &Polynomial::zero(&ring()), u());
        let u2 = u().pow(2);
        assert_eq!(&u2 + &u2.scale(&rat(3)), u2.scale(&rat(4)));
    }

    #[test]
    fn mul_basic() {
        let uv = &u() * &v();
        assert_eq!(uv.to_string(), "u*v");
        assert_eq!(
            &(&u() + &v()) * &(&u() - &v()),
            &u().pow(2) - &v().pow(2)
        );
        assert_eq!(&uv * &Polynomial::one(&ring()), uv);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let other = Ring::new(["x"]);
        let x = Polynomial::var(&other, "x").unwrap();
        assert!(matches!(u().add(&x), Err(Error::RingMismatch(_))));
        assert!(matches!(u().mul(&x), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn exact_division() {
        let p = &u().pow(2) * &v();
        assert_eq!(p.exact_divide(&u()).unwrap(), &u() * &v());
        let d = &u().pow(2) - &v().pow(2);
        assert_eq!(d.exact_divide(&(&u() + &v())).unwrap(), &u() - &v());
        assert_eq!(u().exact_divide(&v()), Err(Error::NotDivisible));
        assert_eq!(
            u().exact_divide(&Polynomial::zero(&ring())),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn derivatives() {
        let uv = &u() * &v();
        assert_eq!(uv.derivative(0), v());
        let cusp = &v().pow(2) - &u().pow(3);
        assert_eq!(cusp.derivative(0), u().pow(2).scale(&rat(-3)));
        assert!(Polynomial::from_int(&ring(), 7).derivative(0).is_zero());
    }

    #[test]
    fn substitute_shift() {
        // uv with u -> u + t a1, v -> v + t a2
        let big = Ring::new(["u", "v", "t", "a1", "a2"]);
        let var = |n: &str| Polynomial::var(&big, n).unwrap();
        let mut b = BTreeMap::new();
        b.insert(0, &var("u") + &(&var("t") * &var("a1")));
        b.insert(1, &var("v") + &(&var("t") * &var("a2")));
        let got = (&u() * &v()).substitute(&b, &big).unwrap();
        // oracle: expand by hand with repeated mul/add
        let t = var("t");
        let expected = &(&(&var("u") * &var("v"))
            + &(&t * &(&(&var("u") * &var("a2")) + &(&var("v") * &var("a1")))))
            + &(&t.pow(2) * &(&var("a1") * &var("a2")));
        assert_eq!(got, expected);
        let id = (&u() * &v()).substitute(&BTreeMap::new(), &ring()).unwrap();
        assert_eq!(id, &u() * &v());
        let mut zero = BTreeMap::new();
        zero.insert(0, Polynomial::zero(&ring()));
        assert!(u().substitute(&zero, &ring()).unwrap().is_zero());
    }

    #[test]
    fn display_grlex() {
        let p = &(&u().pow(2) * &v()) - &(&u().scale(&rat(3)) + &Polynomial::constant(&ring(), BigRational::new(1.into(), 2.into())));
        assert_eq!(p.to_string(), "u^2*v - 3*u - 1/2");
        assert_eq!(Polynomial::zero(&ring()).to_string(), "0");
    }

    #[test]
    fn primitive_split_roundtrip() {
        let p = &u().scale(&BigRational::new((-4).into(), 6.into())) + &v().scale(&rat(2));
        let (c, q) = p.primitive_split();
        assert_eq!(q.scale(&c), p);
        assert_eq!(q.to_string(), "u - 3*v");
    }
}
