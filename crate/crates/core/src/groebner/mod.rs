//! Ideals in polynomial rings over ℚ and their Gröbner bases.

mod buchberger;
mod order;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::{One, Zero};

pub use buchberger::{set_step_limit, step_limit};
pub use order::MonomialOrder;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Ring, UniPoly};
use buchberger::{reduce_full, Budget, GPoly};

/// Dimension of a quotient ring as a ℚ-vector space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientDimension {
    Finite(usize),
    Infinite,
}

impl QuotientDimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            QuotientDimension::Finite(n) => Some(n),
            QuotientDimension::Infinite => None,
        }
    }
}

impl fmt::Display for QuotientDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientDimension::Finite(n) => write!(f, "{n}"),
            QuotientDimension::Infinite => write!(f, "infinite"),
        }
    }
}

type Cache = Mutex<Vec<(MonomialOrder, Arc<Vec<Polynomial>>)>>;

/// An ideal given by generators, with lazily computed reduced bases.
///
/// Bases are returned integer-primitive with positive leading coefficient,
/// sorted by ascending leading monomial.
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    cache: Cache,
}

impl Clone for Ideal {
    fn clone(&self) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        if self.gens.is_empty() {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl Ideal {
    /// Zero generators are dropped; all generators must share `ring`.
    pub fn new(ring: &Ring, gens: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut out = Vec::new();
        for g in gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch(format!(
                    "generator in {}, ideal in {ring}",
                    g.ring()
                )));
            }
            if !g.is_zero() {
                out.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: out,
            cache: Mutex::new(Vec::new()),
        })
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, [Polynomial::one(ring)]).unwrap()
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, []).unwrap()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn groebner_basis(&self, order: MonomialOrder) -> Result<Arc<Vec<Polynomial>>> {
        if let Some((_, b)) = self.cache.lock().unwrap().iter().find(|(o, _)| *o == order) {
            return Ok(b.clone());
        }
        let gens: Vec<GPoly> = self
            .gens
            .iter()
            .map(|g| GPoly::from_poly(g, &order).0)
            .collect();
        let basis = buchberger::groebner(gens, &order)?;
        let basis = Arc::new(
            basis
                .iter()
                .map(|g| g.to_poly(&self.ring))
                .collect::<Vec<_>>(),
        );
        let mut cache = self.cache.lock().unwrap();
        if !cache.iter().any(|(o, _)| *o == order) {
            cache.push((order, basis.clone()));
        }
        Ok(basis)
    }

    /// Leading monomial of `p` under `order`.
    pub fn leading_monomial(p: &Polynomial, order: MonomialOrder) -> Option<Monomial> {
        p.terms()
            .map(|(m, _)| m)
            .max_by(|a, b| order.cmp(a, b))
            .cloned()
    }

    /// Remainder of `p` modulo the reduced basis for `order`.
    pub fn normal_form(&self, p: &Polynomial, order: MonomialOrder) -> Result<Polynomial> {
        p.check_ring(&Polynomial::zero(&self.ring))?;
        if p.is_zero() {
            return Ok(p.clone());
        }
        let basis = self.groebner_basis(order)?;
        let gb: Vec<GPoly> = basis.iter().map(|g| GPoly::from_poly(g, &order).0).collect();
        let refs: Vec<&GPoly> = gb.iter().collect();
        let (g, s) = GPoly::from_poly(p, &order);
        let (h, mult) = reduce_full(g, &refs, &order, &mut Budget::new())?;
        Ok(h.to_poly(&self.ring).scale(&(mult * s).recip()))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        Ok(self.normal_form(p, MonomialOrder::GRevLex)?.is_zero())
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        if self.ring != other.ring {
            return Ok(false);
        }
        Ok(self.groebner_basis(MonomialOrder::GRevLex)?
            == other.groebner_basis(MonomialOrder::GRevLex)?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        let b = self.groebner_basis(MonomialOrder::GRevLex)?;
        Ok(b.len() == 1 && b[0].is_constant())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        Ideal::new(&self.ring, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        Ideal::new(&self.ring, self.gens.iter().cloned().chain(extra))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        let mut out = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                out.push(a.mul(b)?);
            }
        }
        Ideal::new(&self.ring, out)
    }

    /// `p^k` generators-wise power of the ideal.
    pub fn power(&self, k: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = Ideal::new(
                &self.ring,
                acc.product(self)?.groebner_basis(MonomialOrder::GRevLex)?.iter().cloned(),
            )?;
        }
        Ok(acc)
    }

    /// Re-express in a ring containing all of this ring's variables.
    pub fn embed(&self, target: &Ring) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.embed(target))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }

    /// `I ∩ k[remaining variables]`, returned in the ring of the remaining
    /// variables (in their original order).
    pub fn eliminate(&self, drop: &[usize]) -> Result<Ideal> {
        let n = self.ring.len();
        if let Some(&bad) = drop.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidInput(format!("no variable with index {bad}")));
        }
        let dropset: BTreeSet<usize> = drop.iter().copied().collect();
        let keep: Vec<&str> = (0..n)
            .filter(|i| !dropset.contains(i))
            .map(|i| self.ring.var_name(i))
            .collect();
        let sub = Ring::new(keep.iter().copied());
        if dropset.is_empty() {
            return self.embed(&sub);
        }
        let perm = Ring::new(
            dropset
                .iter()
                .map(|&i| self.ring.var_name(i))
                .chain(keep.iter().copied()),
        );
        let lifted = self.embed(&perm)?;
        let k = dropset.len();
        let basis = lifted.groebner_basis(MonomialOrder::Elimination(k))?;
        let survivors = basis
            .iter()
            .filter(|g| (0..k).all(|i| !g.involves(i)))
            .map(|g| g.embed(&sub))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&sub, survivors)
    }

    /// `(I : f^∞)` by eliminating a fresh `w` from `I + (1 - w f)`.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal> {
        f.check_ring(&Polynomial::zero(&self.ring))?;
        if f.is_zero() {
            return Err(Error::ZeroInput("saturation by zero"));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let w = self.ring.fresh_name("w");
        let big = self.ring.extended(&[w.as_str()]);
        let wi = big.len() - 1;
        let mut gens = self
            .gens
            .iter()
            .map(|g| g.embed(&big))
            .collect::<Result<Vec<_>>>()?;
        let fw = &Polynomial::variable(&big, wi) * &f.embed(&big)?;
        gens.push(&Polynomial::one(&big) - &fw);
        let elim = Ideal::new(&big, gens)?.eliminate(&[wi])?;
        let out = elim.embed(&self.ring)?;
        Ideal::new(&self.ring, out.groebner_basis(MonomialOrder::GRevLex)?.iter().cloned())
    }

    /// Standard monomials of the grevlex basis, or `None` if infinitely many.
    pub fn standard_monomials(&self) -> Result<Option<Vec<Monomial>>> {
        let basis = self.groebner_basis(MonomialOrder::GRevLex)?;
        let n = self.ring.len();
        let lms: Vec<Monomial> = basis
            .iter()
            .map(|g| Ideal::leading_monomial(g, MonomialOrder::GRevLex).unwrap())
            .collect();
        if lms.iter().any(Monomial::is_one) {
            return Ok(Some(Vec::new()));
        }
        for v in 0..n {
            let pure = lms.iter().any(|m| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .all(|(i, &e)| (i == v) == (e > 0))
            });
            if !pure {
                return Ok(None);
            }
        }
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        let mut stack = vec![Monomial::one(n)];
        while let Some(m) = stack.pop() {
            if !seen.insert(m.clone()) || lms.iter().any(|l| l.divides(&m)) {
                continue;
            }
            for v in 0..n {
                stack.push(m.mul(&Monomial::var(n, v)));
            }
            out.push(m);
        }
        out.sort_by(|a, b| MonomialOrder::GRevLex.cmp(a, b));
        Ok(Some(out))
    }

    pub fn quotient_dimension(&self) -> Result<QuotientDimension> {
        Ok(match self.standard_monomials()? {
            Some(s) => QuotientDimension::Finite(s.len()),
            None => QuotientDimension::Infinite,
        })
    }

    /// Krull dimension of `ring / I`; `None` for the unit ideal.
    pub fn krull_dimension(&self) -> Result<Option<usize>> {
        Ok(self.independent_set()?.map(|s| s.len()))
    }

    /// A largest set of variables, none of whose monomials is a leading
    /// monomial of the grevlex basis; `None` for the unit ideal. Its size is
    /// the Krull dimension and `I ∩ k[S] = 0`.
    pub fn independent_set(&self) -> Result<Option<Vec<usize>>> {
        let basis = self.groebner_basis(MonomialOrder::GRevLex)?;
        let lms: Vec<Monomial> = basis
            .iter()
            .map(|g| Ideal::leading_monomial(g, MonomialOrder::GRevLex).unwrap())
            .collect();
        if lms.iter().any(Monomial::is_one) {
            return Ok(None);
        }
        let n = self.ring.len();
        if n > 20 {
            return Err(Error::OutOfScope(format!("dimension in {n} variables")));
        }
        let supports: Vec<u64> = lms
            .iter()
            .map(|m| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(0u64, |acc, (i, _)| acc | (1 << i))
            })
            .collect();
        let mut best = 0u64;
        for s in 0u64..(1 << n) {
            if s.count_ones() > best.count_ones() && supports.iter().all(|&sup| sup & !s != 0) {
                best = s;
            }
        }
        Ok(Some((0..n).filter(|i| best & (1 << i) != 0).collect()))
    }

    /// Minimal polynomial of multiplication by `h` on `ring / I`, monic.
    pub fn minimal_polynomial(&self, h: &Polynomial) -> Result<UniPoly> {
        let Some(std) = self.standard_monomials()? else {
            return Err(Error::NotZeroDimensional);
        };
        let index: std::collections::BTreeMap<Monomial, usize> =
            std.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let dim = std.len();
        let to_vec = |p: &Polynomial| -> Vec<BigRational> {
            let mut v = vec![BigRational::zero(); dim];
            for (m, c) in p.terms() {
                v[index[m]] = c.clone();
            }
            v
        };
        // Rows in echelon form, each with its combination of powers of h.
        let mut rows: Vec<(usize, Vec<BigRational>, Vec<BigRational>)> = Vec::new();
        let mut power = self.normal_form(&Polynomial::one(&self.ring), MonomialOrder::GRevLex)?;
        for k in 0..=dim {
            let mut v = to_vec(&power);
            let mut comb = vec![BigRational::zero(); k + 1];
            comb[k] = BigRational::one();
            for (piv, rv, rc) in &rows {
                if v[*piv].is_zero() {
                    continue;
                }
                let f = v[*piv].clone() / &rv[*piv];
                for (a, b) in v.iter_mut().zip(rv) {
                    *a -= &f * b;
                }
                for (a, b) in comb.iter_mut().zip(rc) {
                    *a -= &f * b;
                }
            }
            match v.iter().position(|c| !c.is_zero()) {
                None => return Ok(UniPoly::from_coeffs(comb).monic()),
                Some(piv) => rows.push((piv, v, comb)),
            }
            power = self.normal_form(&(&power * h), MonomialOrder::GRevLex)?;
        }
        unreachable!("dependency among dim+1 vectors")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> (Ring, Polynomial, Polynomial) {
        let r = Ring::new(["u", "v"]);
        let u = Polynomial::var(&r, "u").unwrap();
        let v = Polynomial::var(&r, "v").unwrap();
        (r, u, v)
    }

    #[test]
    fn lex_basis_contains_resultant() {
        let (r, u, v) = ring2();
        let one = Polynomial::one(&r);
        let i = Ideal::new(&r, [&u.pow(2) - &v, &(&u * &v) - &one]).unwrap();
        let gb = i.groebner_basis(MonomialOrder::Lex).unwrap();
        assert!(gb.contains(&(&v.pow(3) - &one)));
        // Oracle: Res_u(u^2 - v, u v - 1) = v^3 - 1 by hand.
        assert!(i.contains(&(&v.pow(3) - &one)).unwrap());
        assert_eq!(*gb, *i.groebner_basis(MonomialOrder::Lex).unwrap());
    }

    #[test]
    fn trivial_bases() {
        let (r, u, v) = ring2();
        let gb = Ideal::new(&r, [u.clone(), v.clone()])
            .unwrap()
            .groebner_basis(MonomialOrder::Lex)
            .unwrap();
        assert_eq!(*gb, vec![v.clone(), u.clone()]);
        let unit = Ideal::unit(&r);
        assert_eq!(*unit.groebner_basis(MonomialOrder::Lex).unwrap(), vec![Polynomial::one(&r)]);
        assert!(unit.normal_form(&(&u * &v), MonomialOrder::Lex).unwrap().is_zero());
    }

    #[test]
    fn normal_forms() {
        let (r, u, v) = ring2();
        let i = Ideal::new(&r, [u.clone()]).unwrap();
        assert!(i.normal_form(&(&u * &v), MonomialOrder::GRevLex).unwrap().is_zero());
        // v ranks above u so that v^2 is the leading term of the cusp.
        let rv = Ring::new(["v", "u"]);
        let (vv, uu) = (Polynomial::var(&rv, "v").unwrap(), Polynomial::var(&rv, "u").unwrap());
        let cusp = Ideal::new(&rv, [&vv.pow(2) - &uu.pow(3)]).unwrap();
        assert_eq!(cusp.normal_form(&vv.pow(2), MonomialOrder::Lex).unwrap(), uu.pow(3));
        let half = v.scale(&BigRational::new(1.into(), 2.into()));
        let i = Ideal::new(&r, [&u - &v]).unwrap();
        assert_eq!(i.normal_form(&(&u + &half), MonomialOrder::Lex).unwrap(), v.scale(&BigRational::new(3.into(), 2.into())));
    }

    #[test]
    fn cusp_by_elimination() {
        let r = Ring::new(["t", "u", "v"]);
        let t = Polynomial::var(&r, "t").unwrap();
        let u = Polynomial::var(&r, "u").unwrap();
        let v = Polynomial::var(&r, "v").unwrap();
        let i = Ideal::new(&r, [&u - &t.pow(2), &v - &t.pow(3)]).unwrap();
        let e = i.eliminate(&[0]).unwrap();
        let gb = e.groebner_basis(MonomialOrder::GRevLex).unwrap();
        let sub = e.ring().clone();
        let (us, vs) = (Polynomial::var(&sub, "u").unwrap(), Polynomial::var(&sub, "v").unwrap());
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0].normalized(), (&us.pow(3) - &vs.pow(2)).normalized());
        assert!(Ideal::unit(&r).eliminate(&[0]).unwrap().is_unit().unwrap());
    }

    #[test]
    fn saturation_examples() {
        let r = Ring::new(["u", "v", "t", "z"]);
        let p = |s| Polynomial::var(&r, s).unwrap();
        let zt = &(&p("z") * &p("t")) - &(&p("u") * &p("v"));
        let i = Ideal::new(&r, [zt.clone()]).unwrap();
        let s = i.saturate(&p("t")).unwrap();
        assert!(s.same_ideal(&i).unwrap());
        let tu = Ideal::new(&r, [&p("t") * &p("u")]).unwrap();
        let s = tu.saturate(&p("t")).unwrap();
        assert!(s.same_ideal(&Ideal::new(&r, [p("u")]).unwrap()).unwrap());
        assert!(s.saturate(&p("t")).unwrap().same_ideal(&s).unwrap());
        assert!(i.saturate(&Polynomial::one(&r)).unwrap().same_ideal(&i).unwrap());
        assert!(i.saturate(&Polynomial::zero(&r)).is_err());
    }

    #[test]
    fn quotient_dimensions() {
        let (r, u, v) = ring2();
        let qd = |g: Vec<Polynomial>| Ideal::new(&r, g).unwrap().quotient_dimension().unwrap();
        assert_eq!(qd(vec![u.clone(), v.clone()]), QuotientDimension::Finite(1));
        assert_eq!(qd(vec![&v - &u.pow(2), v.clone()]), QuotientDimension::Finite(2));
        assert_eq!(qd(vec![u.clone()]), QuotientDimension::Infinite);
        let i = Ideal::new(&r, [u.clone()]).unwrap();
        assert_eq!(i.krull_dimension().unwrap(), Some(1));
        assert_eq!(Ideal::zero(&r).krull_dimension().unwrap(), Some(2));
    }

    #[test]
    fn minimal_polynomial_of_coordinate() {
        let (r, u, v) = ring2();
        let one = Polynomial::one(&r);
        // Points (1,1), (-1,1), (0,0): u^3 - u on the u-coordinate.
        let i = Ideal::new(&r, [&v - &u.pow(2), &u.pow(3) - &u]).unwrap();
        let m = i.minimal_polynomial(&u).unwrap();
        assert_eq!(m.to_polynomial(&r, 0), &u.pow(3) - &u);
        let m = i.minimal_polynomial(&v).unwrap();
        assert_eq!(m.to_polynomial(&r, 1), &v.pow(2) - &v);
        let _ = one;
    }
}
