//! Subvarieties of affine space, cycles, and formal rational equivalences.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::{Ideal, MonomialOrder};
use crate::poly::{Polynomial, RationalFunction, Ring};
use crate::zerodim::{decompose, ClosedPoint, ZeroCycle};

/// An integral closed subscheme of affine space.
///
/// Presentations are canonical: a hypersurface by its normalized
/// irreducible equation, a point by its reduced lex basis, anything else by
/// the reduced lex basis of its prime ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subvariety {
    Ambient(Ring),
    Hypersurface(Polynomial),
    Point(ClosedPoint),
    Prime { basis: Vec<Polynomial>, dim: usize },
}

impl Subvariety {
    /// The subvariety cut out by a prime ideal. Primality is the caller's
    /// responsibility.
    pub fn from_prime(p: &Ideal) -> Result<Subvariety> {
        let basis = p.groebner_basis(MonomialOrder::Lex)?;
        if basis.is_empty() {
            return Ok(Subvariety::Ambient(p.ring().clone()));
        }
        if basis.len() == 1 && basis[0].is_constant() {
            return Err(Error::InvalidInput("the unit ideal is not a subvariety".into()));
        }
        if basis.len() == 1 {
            return Ok(Subvariety::Hypersurface(basis[0].normalized()));
        }
        let dim = p.krull_dimension()?.expect("proper ideal");
        if dim == 0 {
            let pts = decompose(p)?;
            if pts.len() != 1 || pts[0].1 != 1 {
                return Err(Error::InvalidInput(format!("{p} is not a maximal ideal")));
            }
            return Ok(Subvariety::Point(pts[0].0.clone()));
        }
        Ok(Subvariety::Prime {
            basis: basis.as_ref().clone(),
            dim,
        })
    }

    pub fn hypersurface(f: &Polynomial) -> Result<Subvariety> {
        if f.is_constant() {
            return Err(Error::InvalidInput(format!("{f} does not define a hypersurface")));
        }
        Ok(Subvariety::Hypersurface(f.normalized()))
    }

    pub fn ring(&self) -> &Ring {
        match self {
            Subvariety::Ambient(r) => r,
            Subvariety::Hypersurface(f) => f.ring(),
            Subvariety::Point(p) => p.ring(),
            Subvariety::Prime { basis, .. } => basis[0].ring(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ring().len()
    }

    pub fn dim(&self) -> usize {
        match self {
            Subvariety::Ambient(r) => r.len(),
            Subvariety::Hypersurface(f) => f.ring().len() - 1,
            Subvariety::Point(_) => 0,
            Subvariety::Prime { dim, .. } => *dim,
        }
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.dim()
    }

    pub fn ideal(&self) -> Ideal {
        let ring = self.ring().clone();
        match self {
            Subvariety::Ambient(_) => Ideal::zero(&ring),
            Subvariety::Hypersurface(f) => Ideal::new(&ring, [f.clone()]).unwrap(),
            Subvariety::Point(p) => p.ideal(),
            Subvariety::Prime { basis, .. } => Ideal::new(&ring, basis.iter().cloned()).unwrap(),
        }
    }

    /// Whether `p` vanishes identically on the subvariety.
    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        match self {
            Subvariety::Ambient(_) => Ok(p.is_zero()),
            Subvariety::Hypersurface(f) => Ok(p.is_zero() || f.divides(p)),
            _ => self.ideal().contains(p),
        }
    }

    /// Preimage under the coordinate projection from `target`, a ring
    /// containing this ring's variables.
    pub fn pullback(&self, target: &Ring) -> Result<Subvariety> {
        match self {
            Subvariety::Ambient(_) => Ok(Subvariety::Ambient(target.clone())),
            Subvariety::Hypersurface(f) => Ok(Subvariety::Hypersurface(f.embed(target)?.normalized())),
            _ => Subvariety::from_prime(&self.ideal().embed(target)?),
        }
    }
}

impl fmt::Display for Subvariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subvariety::Ambient(r) => write!(f, "A^{}", r.len()),
            Subvariety::Hypersurface(p) => write!(f, "V({p})"),
            Subvariety::Point(p) => write!(f, "{p}"),
            Subvariety::Prime { basis, .. } => {
                let parts: Vec<String> = basis.iter().map(|g| g.to_string()).collect();
                write!(f, "V({})", parts.join(", "))
            }
        }
    }
}

/// A finite formal integer combination of subvarieties.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Cycle {
    terms: BTreeMap<Subvariety, i64>,
}

impl Cycle {
    pub fn new() -> Cycle {
        Cycle::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Subvariety, i64)>) -> Cycle {
        let mut c = Cycle::new();
        for (v, k) in terms {
            c.add_term(v, k);
        }
        c
    }

    pub fn single(v: Subvariety) -> Cycle {
        Cycle::from_terms([(v, 1)])
    }

    pub fn add_term(&mut self, v: Subvariety, k: i64) {
        if k == 0 {
            return;
        }
        let e = self.terms.entry(v.clone()).or_insert(0);
        *e += k;
        if *e == 0 {
            self.terms.remove(&v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Subvariety, i64)> {
        self.terms.iter().map(|(v, k)| (v, *k))
    }

    pub fn coefficient(&self, v: &Subvariety) -> i64 {
        self.terms.get(v).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Dimension of the terms, `None` for the zero cycle or mixed grades.
    pub fn dimension(&self) -> Option<usize> {
        let mut dims = self.terms.keys().map(Subvariety::dim);
        let d = dims.next()?;
        dims.all(|e| e == d).then_some(d)
    }

    pub fn add(&self, other: &Cycle) -> Cycle {
        let mut out = self.clone();
        for (v, k) in &other.terms {
            out.add_term(v.clone(), *k);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Cycle {
        Cycle::from_terms(self.terms.iter().map(|(v, c)| (v.clone(), c * k)))
    }

    pub fn neg(&self) -> Cycle {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Cycle) -> Cycle {
        self.add(&other.neg())
    }

    pub fn pullback(&self, target: &Ring) -> Result<Cycle> {
        let mut out = Cycle::new();
        for (v, k) in &self.terms {
            out.add_term(v.pullback(target)?, *k);
        }
        Ok(out)
    }
}

impl From<&ZeroCycle> for Cycle {
    fn from(z: &ZeroCycle) -> Cycle {
        Cycle::from_terms(z.terms().map(|(p, k)| (Subvariety::Point(p.clone()), k)))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (v, k)) in self.terms.iter().enumerate() {
            match (i, *k < 0) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            if k.abs() != 1 {
                write!(f, "{}*", k.abs())?;
            }
            write!(f, "[{v}]")?;
        }
        Ok(())
    }
}

/// A formal sum of nonzero rational functions on subvarieties.
///
/// Equality is term-list equality; it is not a decision procedure for the
/// rational-equivalence group, which is never needed here.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RatEquivElement {
    terms: Vec<(Subvariety, RationalFunction)>,
}

impl RatEquivElement {
    pub fn new() -> RatEquivElement {
        RatEquivElement::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Subvariety, RationalFunction)>) -> RatEquivElement {
        RatEquivElement {
            terms: terms.into_iter().collect(),
        }
    }

    pub fn push(&mut self, carrier: Subvariety, f: RationalFunction) {
        self.terms.push((carrier, f));
    }

    pub fn terms(&self) -> &[(Subvariety, RationalFunction)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &RatEquivElement) -> RatEquivElement {
        RatEquivElement {
            terms: self.terms.iter().chain(&other.terms).cloned().collect(),
        }
    }

    /// The inverse element: every function inverted.
    pub fn neg(&self) -> Result<RatEquivElement> {
        Ok(RatEquivElement {
            terms: self
                .terms
                .iter()
                .map(|(v, f)| Ok((v.clone(), f.recip()?)))
                .collect::<Result<_>>()?,
        })
    }

    /// Terms sorted by carrier, for order-insensitive comparison.
    pub fn sorted(&self) -> RatEquivElement {
        let mut terms = self.terms.clone();
        terms.sort();
        RatEquivElement { terms }
    }
}

impl fmt::Display for RatEquivElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(v, g)| format!("({v}, {g})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
