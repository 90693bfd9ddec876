//! Closed points, zero-cycles, and the primary decomposition of
//! zero-dimensional ideals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factor::factor_with_rng;
use crate::groebner::{Ideal, MonomialOrder, QuotientDimension};
use crate::poly::{gcd, squarefree_part, Polynomial, RationalFunction, Ring, UniPoly};

const DEFAULT_SEED: u64 = 0x0090_1775;
const MAX_SEPARATOR_TRIES: usize = 48;
const MAX_LOCAL_LENGTH: usize = 4096;

/// A closed point of affine space over ℚ, presented by its maximal ideal.
///
/// Equality, ordering and hashing use the reduced lex basis of the ideal,
/// so two presentations of the same point compare equal.
#[derive(Clone, Debug)]
pub struct ClosedPoint {
    basis: Vec<Polynomial>,
    ring: Ring,
    degree: usize,
    /// Linear form whose minimal polynomial cuts out the point.
    separator: Polynomial,
    shape: UniPoly,
}

impl ClosedPoint {
    /// Degree of the residue field over ℚ.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.basis.iter().cloned()).expect("same ring")
    }

    /// Reduced lex basis of the maximal ideal.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn separator(&self) -> &Polynomial {
        &self.separator
    }

    /// Minimal polynomial of the separating linear form on the residue field.
    pub fn shape_polynomial(&self) -> &UniPoly {
        &self.shape
    }

    /// Coordinates, when the point is rational.
    pub fn coordinates(&self) -> Option<Vec<BigRational>> {
        if self.degree != 1 {
            return None;
        }
        let id = self.ideal();
        (0..self.ring.len())
            .map(|i| {
                id.normal_form(&Polynomial::variable(&self.ring, i), MonomialOrder::Lex)
                    .ok()
                    .and_then(|p| p.constant_value().or_else(|| p.is_zero().then(BigRational::zero)))
            })
            .collect()
    }

    /// The rational point with the given coordinates.
    pub fn rational(ring: &Ring, coords: &[BigRational]) -> Result<ClosedPoint> {
        if coords.len() != ring.len() {
            return Err(Error::InvalidInput(format!(
                "{} coordinates for a ring with {} variables",
                coords.len(),
                ring.len()
            )));
        }
        let gens: Vec<Polynomial> = coords
            .iter()
            .enumerate()
            .map(|(i, c)| &Polynomial::variable(ring, i) - &Polynomial::constant(ring, c.clone()))
            .collect();
        let pts = decompose(&Ideal::new(ring, gens)?)?;
        Ok(pts.into_iter().next().expect("one point").0)
    }

    pub fn origin(ring: &Ring) -> ClosedPoint {
        ClosedPoint::rational(ring, &vec![BigRational::zero(); ring.len()]).expect("origin")
    }

    /// Whether `p` vanishes at this point.
    pub fn vanishes(&self, p: &Polynomial) -> Result<bool> {
        self.ideal().contains(p)
    }

    /// The same point in a ring with the same variable names.
    pub fn embed(&self, target: &Ring) -> Result<ClosedPoint> {
        let basis = self
            .basis
            .iter()
            .map(|g| g.embed(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClosedPoint {
            basis,
            ring: target.clone(),
            degree: self.degree,
            separator: self.separator.embed(target)?,
            shape: self.shape.clone(),
        })
    }
}

impl PartialEq for ClosedPoint {
    fn eq(&self, other: &Self) -> bool {
        self.ring.vars() == other.ring.vars() && self.basis == other.basis
    }
}

impl Eq for ClosedPoint {}

impl Hash for ClosedPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ring.vars().hash(state);
        self.basis.hash(state);
    }
}

impl PartialOrd for ClosedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ClosedPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.ring.vars().cmp(other.ring.vars()))
            .then_with(|| self.basis.cmp(&other.basis))
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.coordinates() {
            let parts: Vec<String> = c.iter().map(crate::poly::fmt_rational).collect();
            return write!(f, "({})", parts.join(","));
        }
        let parts: Vec<String> = self.basis.iter().map(|g| g.to_string()).collect();
        write!(f, "V({})", parts.join(", "))
    }
}

/// A finite formal integer combination of closed points.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZeroCycle {
    terms: BTreeMap<ClosedPoint, i64>,
}

impl ZeroCycle {
    pub fn new() -> ZeroCycle {
        ZeroCycle::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ClosedPoint, i64)>) -> ZeroCycle {
        let mut z = ZeroCycle::new();
        for (p, c) in terms {
            z.add_term(p, c);
        }
        z
    }

    pub fn add_term(&mut self, p: ClosedPoint, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(p.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ClosedPoint, i64)> {
        self.terms.iter().map(|(p, c)| (p, *c))
    }

    pub fn coefficient(&self, p: &ClosedPoint) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ZeroCycle) -> ZeroCycle {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), *c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> ZeroCycle {
        ZeroCycle::from_terms(self.terms.iter().map(|(p, c)| (p.clone(), c * k)))
    }

    pub fn neg(&self) -> ZeroCycle {
        self.scale(-1)
    }

    pub fn sub(&self, other: &ZeroCycle) -> ZeroCycle {
        self.add(&other.neg())
    }

    /// `sum degree(P) * coefficient(P)`.
    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, c)| p.degree as i64 * c).sum()
    }
}

impl fmt::Display for ZeroCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            write!(f, "{}*{p}", c.abs())?;
        }
        Ok(())
    }
}

/// Points of `V(I)` with their local lengths.
pub fn decompose(i: &Ideal) -> Result<Vec<(ClosedPoint, u32)>> {
    decompose_with_rng(i, &mut ChaCha8Rng::seed_from_u64(DEFAULT_SEED))
}

pub fn decompose_with_rng<R: Rng>(i: &Ideal, rng: &mut R) -> Result<Vec<(ClosedPoint, u32)>> {
    let ring = i.ring().clone();
    let total = match i.quotient_dimension()? {
        QuotientDimension::Infinite => return Err(Error::NotZeroDimensional),
        QuotientDimension::Finite(0) => return Ok(Vec::new()),
        QuotientDimension::Finite(n) => n,
    };
    let radical = radical(i)?;
    let rdim = radical.quotient_dimension()?.finite().expect("zero-dimensional");

    let (l, m) = separating_form(&radical, rdim, rng)?;
    let chi = i.minimal_polynomial(&l)?;
    let fact = factor_with_rng(&m.to_polynomial(&Ring::new(["t"]), 0), rng)?;

    let mut out = Vec::new();
    let mut check = 0;
    for (mj, _) in &fact.factors {
        let mj = UniPoly::from_polynomial(mj, 0).expect("univariate").monic();
        let mut e = 0u32;
        let mut rest = chi.clone();
        loop {
            let (q, r) = rest.div_rem(&mj);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        let primary = i.with_generators([mj.pow(e).compose(&l)])?;
        let prime = radical.with_generators([mj.compose(&l)])?;
        let deg = prime.quotient_dimension()?.finite().expect("zero-dimensional");
        debug_assert_eq!(deg, mj.degree());
        let len = primary.quotient_dimension()?.finite().expect("zero-dimensional");
        debug_assert_eq!(len % deg, 0);
        check += len;
        let basis = prime.groebner_basis(MonomialOrder::Lex)?.as_ref().clone();
        out.push((
            ClosedPoint {
                basis,
                ring: ring.clone(),
                degree: deg,
                separator: l.clone(),
                shape: mj,
            },
            (len / deg) as u32,
        ));
    }
    if check != total {
        return Err(Error::InvalidInput(format!(
            "decomposition lost length: {check} of {total}"
        )));
    }
    out.sort();
    Ok(out)
}

/// Radical of a zero-dimensional ideal: add the squarefree parts of the
/// eliminants of every variable.
pub fn radical(i: &Ideal) -> Result<Ideal> {
    let ring = i.ring();
    let mut extra = Vec::new();
    for v in 0..ring.len() {
        let m = i.minimal_polynomial(&Polynomial::variable(ring, v))?;
        let p = m.to_polynomial(ring, v);
        extra.push(squarefree_part(&p)?);
    }
    let r = i.with_generators(extra)?;
    Ideal::new(ring, r.groebner_basis(MonomialOrder::GRevLex)?.iter().cloned())
}

fn separating_form<R: Rng>(radical: &Ideal, rdim: usize, rng: &mut R) -> Result<(Polynomial, UniPoly)> {
    let ring = radical.ring();
    let n = ring.len();
    for attempt in 0..MAX_SEPARATOR_TRIES {
        let mut l = Polynomial::variable(ring, n - 1);
        if attempt > 0 {
            let bound = 1 + attempt as i64 / 4;
            for v in 0..n - 1 {
                let c = rng.gen_range(-bound..=bound);
                l = &l + &Polynomial::variable(ring, v).scale(&BigRational::from_integer(c.into()));
            }
        }
        let m = radical.minimal_polynomial(&l)?;
        if m.degree() == rdim {
            return Ok((l, m));
        }
    }
    Err(Error::ResourceExhausted("no separating linear form found".into()))
}

/// Local intersection number of two plane curves at `p`.
pub fn intersection_multiplicity(f: &Polynomial, g: &Polynomial, p: &ClosedPoint) -> Result<u32> {
    f.check_ring(g)?;
    if f.ring().len() != 2 {
        return Err(Error::InvalidInput(format!(
            "intersection multiplicity needs a plane, got ring {}",
            f.ring()
        )));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::CommonComponent);
    }
    let h = gcd(f, g)?;
    if !h.is_constant() && p.embed(f.ring())?.vanishes(&h)? {
        return Err(Error::CommonComponent);
    }
    let ring = f.ring().clone();
    let i = Ideal::new(&ring, [f.exact_divide(&h)?, g.exact_divide(&h)?])?;
    local_length(&i, &p.embed(&ring)?)
}

/// Length of the local ring of `V(I)` at `p`, for `p` isolated in `V(I)`.
///
/// The `P`-primary component is `I + P^N` once `dim_k R/(I + P^N)` stops
/// growing in `N`.
pub fn local_length(i: &Ideal, p: &ClosedPoint) -> Result<u32> {
    if i.ring() != p.ring() {
        return Err(Error::RingMismatch(format!("{} vs {}", i.ring(), p.ring())));
    }
    let point = p.ideal();
    for g in i.generators() {
        if !point.contains(g)? {
            return Ok(0);
        }
    }
    let mut power = point.clone();
    let mut last = 0usize;
    loop {
        let dim = match i.sum(&power)?.quotient_dimension()? {
            QuotientDimension::Finite(n) => n,
            QuotientDimension::Infinite => unreachable!("P-primary"),
        };
        if dim == last {
            return Ok((dim / p.degree()) as u32);
        }
        if dim > MAX_LOCAL_LENGTH * p.degree() {
            return Err(Error::OutOfScope(format!("{p} is not isolated in V({i})")));
        }
        last = dim;
        power = Ideal::new(
            i.ring(),
            power.product(&point)?.groebner_basis(MonomialOrder::GRevLex)?.iter().cloned(),
        )?;
    }
}

/// Divisor of `g` restricted to the irreducible plane curve `f = 0`.
pub fn div_on_curve(f: &Polynomial, g: &RationalFunction) -> Result<ZeroCycle> {
    if f.ring().len() != 2 {
        return Err(Error::InvalidInput(format!("{f} is not a plane curve")));
    }
    div_on_prime_curve(&Ideal::new(f.ring(), [f.clone()])?, g)
}

/// Divisor of `g` on the integral curve cut out by the prime `curve`:
/// the affine points with weights `length(num) - length(den)`.
pub fn div_on_prime_curve(curve: &Ideal, g: &RationalFunction) -> Result<ZeroCycle> {
    if g.is_zero() {
        return Err(Error::InvalidInput("divisor of the zero function".into()));
    }
    let mut out = ZeroCycle::new();
    for (part, sign) in [(g.numerator(), 1), (g.denominator(), -1)] {
        if part.is_constant() {
            continue;
        }
        if curve.contains(part)? {
            return Err(Error::InvalidInput(format!(
                "{g} is zero or undefined on the curve {curve}"
            )));
        }
        for (q, e) in factor_with_rng(part, &mut ChaCha8Rng::seed_from_u64(DEFAULT_SEED))?.factors {
            for (p, m) in decompose(&curve.with_generators([q])?)? {
                out.add_term(p, sign * (e as i64) * m as i64);
            }
        }
    }
    Ok(out)
}

/// The rational value of a polynomial at a rational point.
pub fn evaluate_at(p: &Polynomial, coords: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                t *= &coords[i];
            }
        }
        acc += t;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn uv() -> (Ring, Polynomial, Polynomial) {
        let r = Ring::new(["u", "v"]);
        (r.clone(), Polynomial::var(&r, "u").unwrap(), Polynomial::var(&r, "v").unwrap())
    }

    #[test]
    fn decompose_examples() {
        let (r, u, v) = uv();
        let one = Polynomial::one(&r);
        let d = decompose(&Ideal::new(&r, [u.clone(), v.clone()]).unwrap()).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].0.to_string(), "(0,0)");
        assert_eq!(d[0].1, 1);
        let d = decompose(&Ideal::new(&r, [u.pow(2), v.clone()]).unwrap()).unwrap();
        assert_eq!((d.len(), d[0].1), (1, 2));
        let d = decompose(&Ideal::new(&r, [&u.pow(2) + &one, v.clone()]).unwrap()).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].0.degree(), d[0].1), (2, 1));
        assert!(decompose(&Ideal::new(&r, [u.clone()]).unwrap()).is_err());
    }

    #[test]
    fn decompose_mixed_orbits() {
        let (r, u, v) = uv();
        let one = Polynomial::one(&r);
        // Double point at (1,0) plus the conjugate pair u^2 = 2 on v = u.
        let a = Ideal::new(&r, [(&u - &one).pow(2), v.clone()]).unwrap();
        let b = Ideal::new(&r, [&u.pow(2) - &Polynomial::from_int(&r, 2), &v - &u]).unwrap();
        let i = a.product(&b).unwrap();
        let d = decompose(&i).unwrap();
        let total: usize = d.iter().map(|(p, m)| p.degree() * *m as usize).sum();
        assert_eq!(QuotientDimension::Finite(total), i.quotient_dimension().unwrap());
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].0.to_string(), "(1,0)");
        assert_eq!(d[0].1, 2);
        assert_eq!((d[1].0.degree(), d[1].1), (2, 1));
    }

    #[test]
    fn multiplicity_examples() {
        let (r, u, v) = uv();
        let o = ClosedPoint::origin(&r);
        assert_eq!(intersection_multiplicity(&(&v - &u.pow(2)), &v, &o).unwrap(), 2);
        assert_eq!(intersection_multiplicity(&u, &v, &o).unwrap(), 1);
        let cusp = &v.pow(2) - &u.pow(3);
        assert_eq!(intersection_multiplicity(&cusp, &v, &o).unwrap(), 3);
        assert_eq!(
            intersection_multiplicity(&(&u * &v), &(&u * &(&v - &Polynomial::one(&r))), &o),
            Err(Error::CommonComponent)
        );
        // A common component away from the point is harmless.
        let p = ClosedPoint::rational(&r, &[rat(1), rat(0)]).unwrap();
        let w = &u - &Polynomial::from_int(&r, 5);
        assert_eq!(intersection_multiplicity(&(&w * &v), &(&w * &(&u - &Polynomial::one(&r))), &p).unwrap(), 1);
    }

    #[test]
    fn divisors_on_curves() {
        let (r, u, v) = uv();
        let one = Polynomial::one(&r);
        let d = div_on_curve(&u, &RationalFunction::from_poly(&one + &v)).unwrap();
        let p = ClosedPoint::rational(&r, &[rat(0), rat(-1)]).unwrap();
        assert_eq!(d, ZeroCycle::from_terms([(p, 1)]));
        assert!(div_on_curve(&u, &RationalFunction::constant(&r, rat(7))).unwrap().is_zero());
        let cusp = &v.pow(2) - &u.pow(3);
        let d = div_on_curve(&cusp, &RationalFunction::from_poly(v.clone())).unwrap();
        assert_eq!(d, ZeroCycle::from_terms([(ClosedPoint::origin(&r), 3)]));
        assert!(div_on_curve(&u, &RationalFunction::from_poly(u.clone())).is_err());
    }
}
