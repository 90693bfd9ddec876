//! Principal divisors on affine space, the cycle-level and
//! equivalence-level intersection operations, the boundary map, and the
//! canonical rational equivalence between `D·[E]` and `E·[D]`.

mod cycles;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::factor::factor;
use crate::groebner::{Ideal, MonomialOrder};
use crate::poly::{Polynomial, RationalFunction, Ring};
use crate::zerodim::{div_on_curve, div_on_prime_curve};

pub use cycles::{Cycle, RatEquivElement, Subvariety};

/// A divisor on affine space together with its defining function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PDivisor {
    function: RationalFunction,
    components: Vec<(Polynomial, i64)>,
}

impl PDivisor {
    pub fn function(&self) -> &RationalFunction {
        &self.function
    }

    pub fn ring(&self) -> &Ring {
        self.function.ring()
    }

    /// Irreducible components of the support with their orders.
    pub fn components(&self) -> &[(Polynomial, i64)] {
        &self.components
    }

    pub fn ord(&self, f: &Polynomial) -> i64 {
        let f = f.normalized();
        self.components
            .iter()
            .find(|(g, _)| *g == f)
            .map(|(_, k)| *k)
            .unwrap_or(0)
    }

    /// Whether the support contains the subvariety.
    pub fn support_contains(&self, v: &Subvariety) -> Result<bool> {
        match v {
            Subvariety::Ambient(_) => Ok(false),
            Subvariety::Hypersurface(f) => Ok(self.components.iter().any(|(g, _)| g == f)),
            _ => {
                for (g, _) in &self.components {
                    if v.contains(g)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    pub fn weil_divisor(&self) -> Cycle {
        Cycle::from_terms(
            self.components
                .iter()
                .map(|(f, k)| (Subvariety::Hypersurface(f.clone()), *k)),
        )
    }

    pub fn pullback(&self, target: &Ring) -> Result<PDivisor> {
        principal_divisor(&self.function.embed(target)?)
    }
}

impl fmt::Display for PDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "div({})", self.function)
    }
}

pub fn principal_divisor(x: &RationalFunction) -> Result<PDivisor> {
    if x.is_zero() {
        return Err(Error::ZeroInput("divisor of the zero function"));
    }
    let mut comps: BTreeMap<Polynomial, i64> = BTreeMap::new();
    for (part, sign) in [(x.numerator(), 1), (x.denominator(), -1)] {
        if part.is_constant() {
            continue;
        }
        for (f, e) in factor(part)?.factors {
            *comps.entry(f).or_default() += sign * e as i64;
        }
    }
    let mut components: Vec<(Polynomial, i64)> = comps.into_iter().filter(|(_, k)| *k != 0).collect();
    components.sort_by_cached_key(|(f, _)| (f.total_degree(), f.num_terms(), f.to_string()));
    Ok(PDivisor {
        function: x.clone(),
        components,
    })
}

/// The `f`-adic valuation of `x`.
pub fn ord_along(x: &RationalFunction, f: &Polynomial) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroInput("valuation of the zero function"));
    }
    if f.is_constant() {
        return Err(Error::InvalidInput(format!("{f} does not define a hypersurface")));
    }
    let mult = |p: &Polynomial| {
        let mut k = 0;
        let mut q = p.clone();
        while let Ok(r) = q.exact_divide(f) {
            q = r;
            k += 1;
        }
        k
    };
    Ok(mult(x.numerator()) - mult(x.denominator()))
}

/// `max_V ord_V(x) * ord_V(y)` over codimension-one `V`, never below zero.
pub fn excess(d: &PDivisor, e: &PDivisor) -> i64 {
    d.components
        .iter()
        .map(|(f, a)| a * e.ord(f))
        .fold(0, i64::max)
}

fn reduce_mod(f: &RationalFunction, carrier: &Ideal) -> Result<RationalFunction> {
    let n = carrier.normal_form(f.numerator(), MonomialOrder::GRevLex)?;
    let d = carrier.normal_form(f.denominator(), MonomialOrder::GRevLex)?;
    if n.is_zero() || d.is_zero() {
        return Err(Error::InvalidInput(format!("{f} is zero or undefined on {carrier}")));
    }
    RationalFunction::new(n, d)
}

/// `(y^a / x^b)|_W` with `a = ord_W x`, `b = ord_W y`, presented by
/// numerator and denominator reduced modulo `W`.
pub fn restrict_tame(x: &RationalFunction, y: &RationalFunction, w: &Polynomial) -> Result<RationalFunction> {
    let a = ord_along(x, w)?;
    let b = ord_along(y, w)?;
    let r = y.pow(a)?.div(&x.pow(b)?)?;
    reduce_mod(&r, &Ideal::new(w.ring(), [w.clone()])?)
}

/// Whether `g` restricts to a nonzero constant on the carrier. Functions on
/// points count as constant: they are units with trivial boundary.
pub fn is_constant_on(carrier: &Subvariety, g: &RationalFunction) -> Result<bool> {
    match carrier {
        Subvariety::Ambient(_) => Ok(g.is_constant()),
        Subvariety::Point(_) => Ok(true),
        _ => {
            let r = reduce_mod(g, &carrier.ideal())?;
            Ok(r.is_constant())
        }
    }
}

/// Drop the terms whose function is constant on its carrier.
pub fn prune(w: &RatEquivElement) -> Result<RatEquivElement> {
    let mut out = RatEquivElement::new();
    for (v, g) in w.terms() {
        if !is_constant_on(v, g)? {
            out.push(v.clone(), g.clone());
        }
    }
    Ok(out)
}

/// If the subvariety is the graph of polynomial functions of the remaining
/// coordinates, return the substitution that parametrizes it.
fn graph_parametrization(v: &Subvariety) -> Result<Option<BTreeMap<usize, Polynomial>>> {
    let ring = v.ring().clone();
    let solve = |b: &Polynomial, x: usize| -> Option<Polynomial> {
        if b.degree_in(x) != 1 {
            return None;
        }
        let coeffs = b.coefficients_in(x);
        let c = coeffs[1].constant_value()?;
        Some(coeffs[0].scale(&(-c.recip())))
    };
    match v {
        Subvariety::Hypersurface(f) => Ok((0..ring.len())
            .rev()
            .find_map(|x| solve(f, x).map(|e| BTreeMap::from([(x, e)])))),
        Subvariety::Prime { basis, .. } => {
            let mut map = BTreeMap::new();
            for b in basis {
                let lm = Ideal::leading_monomial(b, MonomialOrder::Lex).unwrap();
                if lm.degree() != 1 {
                    return Ok(None);
                }
                let x = lm.exponents().iter().position(|&e| e == 1).unwrap();
                match solve(b, x) {
                    Some(e) => {
                        map.insert(x, e);
                    }
                    None => return Ok(None),
                }
            }
            // In a reduced lex basis the images avoid every solved variable.
            if map.values().any(|e| map.keys().any(|&x| e.involves(x))) {
                return Ok(None);
            }
            Ok(Some(map))
        }
        _ => Ok(None),
    }
}

/// When neither the carrier nor `g` involves some coordinates, the carrier
/// is a cylinder over a subvariety of fewer variables and the divisor is
/// pulled back from there.
fn cylinder_divisor(carrier: &Subvariety, g: &RationalFunction) -> Result<Option<Cycle>> {
    let ring = carrier.ring();
    let mut used = vec![false; ring.len()];
    let gens = carrier.ideal().generators().to_vec();
    for p in gens.iter().chain([g.numerator(), g.denominator()]) {
        for v in p.vars_present() {
            used[v] = true;
        }
    }
    if used.iter().all(|&u| u) {
        return Ok(None);
    }
    let sub = Ring::new((0..ring.len()).filter(|&v| used[v]).map(|v| ring.var_name(v)));
    let low = Subvariety::from_prime(&carrier.ideal().embed(&sub)?)?;
    Ok(Some(divisor_on(&low, &g.embed(&sub)?)?.pullback(ring)?))
}

/// Divisor of a nonzero function on a subvariety, pushed into affine space.
pub fn divisor_on(carrier: &Subvariety, g: &RationalFunction) -> Result<Cycle> {
    if g.is_zero() {
        return Err(Error::ZeroInput("divisor of the zero function"));
    }
    let n = carrier.ambient_dim();
    match carrier {
        Subvariety::Ambient(_) => return Ok(principal_divisor(g)?.weil_divisor()),
        _ if carrier.dim() == 0 => return Ok(Cycle::new()),
        Subvariety::Hypersurface(f) if n == 2 => return Ok(Cycle::from(&div_on_curve(f, g)?)),
        _ if carrier.dim() == 1 => return Ok(Cycle::from(&div_on_prime_curve(&carrier.ideal(), g)?)),
        _ => {}
    }
    if let Some(c) = cylinder_divisor(carrier, g)? {
        return Ok(c);
    }
    let Some(param) = graph_parametrization(carrier)? else {
        return Err(Error::OutOfScope(format!(
            "divisors on {carrier} (dimension {}) need a non-graph coordinate ring",
            carrier.dim()
        )));
    };
    let ring = carrier.ring();
    let base = carrier.ideal();
    let sub: BTreeMap<usize, RationalFunction> = param
        .iter()
        .map(|(&x, e)| (x, RationalFunction::from_poly(e.clone())))
        .collect();
    let h = g.substitute(&sub, ring)?;
    if h.is_zero() {
        return Err(Error::InvalidInput(format!("{g} vanishes on {carrier}")));
    }
    let mut out = Cycle::new();
    for (part, sign) in [(h.numerator(), 1), (h.denominator(), -1)] {
        if part.is_constant() {
            continue;
        }
        for (q, e) in factor(part)?.factors {
            let prime = base.with_generators([q])?;
            out.add_term(Subvariety::from_prime(&prime)?, sign * e as i64);
        }
    }
    Ok(out)
}

/// The boundary map from rational equivalences to cycles.
pub fn boundary(w: &RatEquivElement) -> Result<Cycle> {
    let mut out = Cycle::new();
    for (v, g) in w.terms() {
        out = out.add(&divisor_on(v, g)?);
    }
    Ok(out)
}

/// `D·Z`: restrict `D` to every term of `Z` not contained in its support.
pub fn intersect_cycle(d: &PDivisor, z: &Cycle) -> Result<Cycle> {
    let mut out = Cycle::new();
    for (v, k) in z.terms() {
        if v.ring() != d.ring() {
            return Err(Error::RingMismatch(format!("cycle in {}, divisor in {}", v.ring(), d.ring())));
        }
        if d.support_contains(v)? {
            continue;
        }
        out = out.add(&divisor_on(v, d.function())?.scale(k));
    }
    Ok(out)
}

/// `D·w` for rational equivalences carried by the ambient space.
pub fn intersect_rat_equiv(d: &PDivisor, w: &RatEquivElement) -> Result<RatEquivElement> {
    let mut out = RatEquivElement::new();
    for (v, y) in w.terms() {
        if !matches!(v, Subvariety::Ambient(_)) {
            return Err(Error::OutOfScope(format!(
                "intersecting a divisor with a rational equivalence carried by {v}"
            )));
        }
        for (f, _) in d.components() {
            out.push(Subvariety::Hypersurface(f.clone()), restrict_tame(d.function(), y, f)?);
        }
    }
    Ok(out)
}

/// The canonical rational equivalence: one tame restriction per common
/// component of the supports.
pub fn omega(d: &PDivisor, e: &PDivisor) -> Result<RatEquivElement> {
    let mut out = RatEquivElement::new();
    for (f, _) in d.components() {
        if e.ord(f) != 0 {
            out.push(Subvariety::Hypersurface(f.clone()), restrict_tame(d.function(), e.function(), f)?);
        }
    }
    Ok(out)
}

/// One term of a verification: a function on a carrier and its boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryTerm {
    pub carrier: Subvariety,
    pub function: RationalFunction,
    pub boundary: Cycle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    Reciprocity,
    Commute,
    Difference,
    Projection,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::Reciprocity => "reciprocity",
            Identity::Commute => "commute",
            Identity::Difference => "difference",
            Identity::Projection => "projection",
        })
    }
}

/// Both sides of a cycle identity, with the contributing terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub identity: Identity,
    pub terms: Vec<BoundaryTerm>,
    pub lhs: Cycle,
    pub rhs: Cycle,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The tame restriction of `x`, `y` to the component `f` with its boundary,
/// computed factor by factor: on `V(f)` it equals `y'^a / x'^b` where `x'`,
/// `y'` drop the powers of `f`.
fn tame_term(dx: &PDivisor, dy: &PDivisor, f: &Polynomial) -> Result<BoundaryTerm> {
    let carrier = Subvariety::Hypersurface(f.clone());
    let (a, b) = (dx.ord(f), dy.ord(f));
    let mut boundary = Cycle::new();
    for (div, k) in [(dy, a), (dx, -b)] {
        if k == 0 {
            continue;
        }
        for (q, e) in div.components() {
            if q != f {
                let on = divisor_on(&carrier, &RationalFunction::from_poly(q.clone()))?;
                boundary = boundary.add(&on.scale(k * e));
            }
        }
    }
    Ok(BoundaryTerm {
        function: restrict_tame(dx.function(), dy.function(), f)?,
        carrier,
        boundary,
    })
}

fn boundary_terms(w: &RatEquivElement) -> Result<Vec<BoundaryTerm>> {
    w.terms()
        .iter()
        .map(|(v, g)| {
            Ok(BoundaryTerm {
                carrier: v.clone(),
                function: g.clone(),
                boundary: divisor_on(v, g)?,
            })
        })
        .collect()
}

/// `Σ_V ∂((y^{a_V}/x^{b_V})|_V) = 0` over the combined support of `x`, `y`.
pub fn verify_reciprocity(x: &RationalFunction, y: &RationalFunction) -> Result<IdentityCheck> {
    let d = principal_divisor(x)?;
    let e = principal_divisor(y)?;
    let mut support: Vec<Polynomial> = d.components().iter().map(|(f, _)| f.clone()).collect();
    for (f, _) in e.components() {
        if !support.contains(f) {
            support.push(f.clone());
        }
    }
    let terms = support.iter().map(|f| tame_term(&d, &e, f)).collect::<Result<Vec<_>>>()?;
    let lhs = terms.iter().fold(Cycle::new(), |acc, t| acc.add(&t.boundary));
    Ok(IdentityCheck {
        identity: Identity::Reciprocity,
        terms,
        lhs,
        rhs: Cycle::new(),
    })
}

/// `∂(D·w) = D·(∂w)`.
pub fn verify_commute(d: &PDivisor, w: &RatEquivElement) -> Result<IdentityCheck> {
    let dw = intersect_rat_equiv(d, w)?;
    let terms = boundary_terms(&dw)?;
    let lhs = terms.iter().fold(Cycle::new(), |acc, t| acc.add(&t.boundary));
    let rhs = intersect_cycle(d, &boundary(w)?)?;
    Ok(IdentityCheck {
        identity: Identity::Commute,
        terms,
        lhs,
        rhs,
    })
}

/// `D·[E] - E·[D] = ∂ω`.
pub fn verify_difference(d: &PDivisor, e: &PDivisor) -> Result<IdentityCheck> {
    let lhs = intersect_cycle(d, &e.weil_divisor())?.sub(&intersect_cycle(e, &d.weil_divisor())?);
    let terms = d
        .components()
        .iter()
        .filter(|(f, _)| e.ord(f) != 0)
        .map(|(f, _)| tame_term(d, e, f))
        .collect::<Result<Vec<_>>>()?;
    let rhs = terms.iter().fold(Cycle::new(), |acc, t| acc.add(&t.boundary));
    Ok(IdentityCheck {
        identity: Identity::Difference,
        terms,
        lhs,
        rhs,
    })
}

/// Pull a function back along the coordinate projection from `target`.
pub fn pullback_function(x: &RationalFunction, target: &Ring) -> Result<RationalFunction> {
    x.embed(target)
}

/// Pull rational equivalences back along the coordinate projection.
pub fn pullback_rat_equiv(w: &RatEquivElement, target: &Ring) -> Result<RatEquivElement> {
    Ok(RatEquivElement::from_terms(
        w.terms()
            .iter()
            .map(|(v, g)| Ok((v.pullback(target)?, g.embed(target)?)))
            .collect::<Result<Vec<_>>>()?,
    ))
}

/// Compatibility of divisor intersection with a coordinate projection,
/// on cycles and on rational equivalences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionCheck {
    pub cycles: IdentityCheck,
    pub equivalences: Option<(RatEquivElement, RatEquivElement)>,
}

impl ProjectionCheck {
    pub fn holds(&self) -> bool {
        self.cycles.holds()
            && self
                .equivalences
                .as_ref()
                .is_none_or(|(a, b)| a.sorted() == b.sorted())
    }
}

/// `f*(D·α) = (f*D)·(f*α)`, and the same for `w` when given.
pub fn verify_projection(
    d: &PDivisor,
    alpha: &Cycle,
    w: Option<&RatEquivElement>,
    target: &Ring,
) -> Result<ProjectionCheck> {
    let fd = d.pullback(target)?;
    let lhs = intersect_cycle(d, alpha)?.pullback(target)?;
    let rhs = intersect_cycle(&fd, &alpha.pullback(target)?)?;
    let equivalences = match w {
        None => None,
        Some(w) => Some((
            pullback_rat_equiv(&intersect_rat_equiv(d, w)?, target)?,
            intersect_rat_equiv(&fd, &pullback_rat_equiv(w, target)?)?,
        )),
    };
    Ok(ProjectionCheck {
        cycles: IdentityCheck {
            identity: Identity::Projection,
            terms: Vec::new(),
            lhs,
            rhs,
        },
        equivalences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::zerodim::ClosedPoint;

    struct Uv {
        r: Ring,
        u: Polynomial,
        v: Polynomial,
    }

    fn uv() -> Uv {
        let r = Ring::new(["u", "v"]);
        Uv {
            u: Polynomial::var(&r, "u").unwrap(),
            v: Polynomial::var(&r, "v").unwrap(),
            r,
        }
    }

    fn rf(p: &Polynomial) -> RationalFunction {
        RationalFunction::from_poly(p.clone())
    }

    fn hyp(p: &Polynomial) -> Subvariety {
        Subvariety::Hypersurface(p.normalized())
    }

    fn pt(r: &Ring, a: i64, b: i64) -> Subvariety {
        Subvariety::Point(ClosedPoint::rational(r, &[rat(a), rat(b)]).unwrap())
    }

    #[test]
    fn principal_divisor_examples() {
        let Uv { r, u, v } = uv();
        let x = RationalFunction::new(&u.pow(2) * &v, &u + &v).unwrap();
        let d = principal_divisor(&x).unwrap();
        assert_eq!(d.components(), &[(u.clone(), 2), (v.clone(), 1), (&u + &v, -1)]);
        assert!(principal_divisor(&RationalFunction::constant(&r, rat(5))).unwrap().components().is_empty());
        let cusp = &v.pow(2) - &u.pow(3);
        assert_eq!(principal_divisor(&rf(&cusp)).unwrap().components(), &[(cusp.normalized(), 1)]);
        assert_eq!(ord_along(&x, &u).unwrap(), 2);
        assert_eq!(ord_along(&x, &(&u + &v)).unwrap(), -1);
        assert_eq!(ord_along(&x, &(&v - &u)).unwrap(), 0);
        assert_eq!(d.weil_divisor().coefficient(&hyp(&u)), 2);
    }

    #[test]
    fn excess_examples() {
        let Uv { r, u, v } = uv();
        let one = Polynomial::one(&r);
        let pd = |p: &Polynomial| principal_divisor(&rf(p)).unwrap();
        assert_eq!(excess(&pd(&u), &pd(&v)), 0);
        assert_eq!(excess(&pd(&u), &pd(&(&u * &(&one + &v)))), 1);
        assert_eq!(excess(&pd(&u.pow(2)), &pd(&u.pow(3))), 6);
    }

    #[test]
    fn cycle_intersections() {
        let Uv { r, u, v } = uv();
        let d = principal_divisor(&rf(&u)).unwrap();
        let z = intersect_cycle(&d, &Cycle::single(hyp(&v))).unwrap();
        assert_eq!(z, Cycle::single(pt(&r, 0, 0)));
        assert!(intersect_cycle(&d, &Cycle::single(hyp(&u))).unwrap().is_zero());
        let z = intersect_cycle(&d, &Cycle::single(Subvariety::Ambient(r.clone()))).unwrap();
        assert_eq!(z, Cycle::single(hyp(&u)));
    }

    #[test]
    fn tame_restrictions() {
        let Uv { r, u, v } = uv();
        let one = Polynomial::one(&r);
        let x = rf(&u);
        let y = rf(&(&u * &(&one + &v)));
        assert_eq!(restrict_tame(&x, &y, &u).unwrap(), rf(&(&one + &v)));
        assert_eq!(restrict_tame(&y, &y, &u).unwrap(), RationalFunction::one(&r));
        assert_eq!(restrict_tame(&x, &rf(&v), &u).unwrap(), rf(&v));
    }

    #[test]
    fn equivalence_intersections() {
        let Uv { r, u, v } = uv();
        let amb = Subvariety::Ambient(r.clone());
        let d = principal_divisor(&rf(&u)).unwrap();
        let w = RatEquivElement::from_terms([(amb.clone(), rf(&v))]);
        assert_eq!(intersect_rat_equiv(&d, &w).unwrap(), RatEquivElement::from_terms([(hyp(&u), rf(&v))]));
        let w7 = RatEquivElement::from_terms([(amb.clone(), RationalFunction::constant(&r, rat(7)))]);
        let dw = intersect_rat_equiv(&d, &w7).unwrap();
        // y^{ord x} / x^{ord y} = 7^1 / u^0: a constant, so pruning removes it.
        assert_eq!(dw.terms(), &[(hyp(&u), RationalFunction::constant(&r, rat(7)))]);
        assert!(prune(&dw).unwrap().is_empty());
        let duv = principal_divisor(&rf(&(&u * &v))).unwrap();
        let wu = RatEquivElement::from_terms([(amb, rf(&u))]);
        let got = intersect_rat_equiv(&duv, &wu).unwrap();
        let want = RatEquivElement::from_terms([
            (hyp(&u), RationalFunction::new(Polynomial::one(&r), v.clone()).unwrap()),
            (hyp(&v), rf(&u)),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn boundary_examples() {
        let Uv { r, u, v } = uv();
        let one = Polynomial::one(&r);
        let w = RatEquivElement::from_terms([(Subvariety::Ambient(r.clone()), RationalFunction::new(u.clone(), v.clone()).unwrap())]);
        assert_eq!(boundary(&w).unwrap(), Cycle::from_terms([(hyp(&u), 1), (hyp(&v), -1)]));
        let w = RatEquivElement::from_terms([(hyp(&u), rf(&(&one + &v)))]);
        assert_eq!(boundary(&w).unwrap(), Cycle::single(pt(&r, 0, -1)));
        let w = RatEquivElement::from_terms([(hyp(&(&v.pow(2) - &u.pow(3))), RationalFunction::constant(&r, rat(3)))]);
        assert!(boundary(&w).unwrap().is_zero());
    }

    #[test]
    fn omega_and_identities() {
        let Uv { r, u, v } = uv();
        let one = Polynomial::one(&r);
        let pd = |p: &Polynomial| principal_divisor(&rf(p)).unwrap();
        assert!(omega(&pd(&u), &pd(&v)).unwrap().is_empty());
        assert_eq!(omega(&pd(&u), &pd(&u)).unwrap().terms(), &[(hyp(&u), RationalFunction::one(&r))]);
        let y = &u * &(&one + &v);
        assert_eq!(omega(&pd(&u), &pd(&y)).unwrap().terms(), &[(hyp(&u), rf(&(&one + &v)))]);

        let rec = verify_reciprocity(&rf(&u), &rf(&v)).unwrap();
        assert!(rec.holds());
        assert_eq!(rec.terms.len(), 2);
        assert_eq!(rec.terms[0].boundary, Cycle::single(pt(&r, 0, 0)));
        assert_eq!(rec.terms[1].boundary, Cycle::single(pt(&r, 0, 0)).neg());
        assert!(verify_reciprocity(&rf(&u), &rf(&y)).unwrap().holds());

        let diff = verify_difference(&pd(&u), &pd(&y)).unwrap();
        assert!(diff.holds());
        assert_eq!(diff.lhs, Cycle::single(pt(&r, 0, -1)));
        assert!(verify_difference(&pd(&u), &pd(&v)).unwrap().lhs.is_zero());

        let amb = Subvariety::Ambient(r.clone());
        let c = verify_commute(&pd(&u), &RatEquivElement::from_terms([(amb.clone(), rf(&v))])).unwrap();
        assert!(c.holds());
        assert_eq!(c.lhs, Cycle::single(pt(&r, 0, 0)));
        let c = verify_commute(&pd(&(&u * &v)), &RatEquivElement::from_terms([(amb, rf(&(&u + &v)))])).unwrap();
        assert!(c.holds());
        assert_eq!(c.lhs, Cycle::single(pt(&r, 0, 0)).scale(2));
    }

    #[test]
    fn projection_compatibility() {
        let Uv { r, u, v } = uv();
        let big = r.extended(&["s"]);
        let d = principal_divisor(&rf(&v)).unwrap();
        let w = RatEquivElement::from_terms([(Subvariety::Ambient(r.clone()), rf(&(&u + &Polynomial::one(&r))))]);
        let check = verify_projection(&d, &Cycle::single(hyp(&u)), Some(&w), &big).unwrap();
        assert!(check.holds());
        let line = Ideal::new(&big, [Polynomial::var(&big, "u").unwrap(), Polynomial::var(&big, "v").unwrap()]).unwrap();
        assert_eq!(check.cycles.lhs, Cycle::single(Subvariety::from_prime(&line).unwrap()));
        let zero = principal_divisor(&RationalFunction::one(&r)).unwrap();
        let check = verify_projection(&zero, &Cycle::single(hyp(&u)), None, &big).unwrap();
        assert!(check.holds() && check.cycles.lhs.is_zero());
        assert_eq!(pullback_function(&rf(&u), &big).unwrap().to_string(), "u");
    }
}
