//! Deformations to the normal cone on affine space, presented as graph
//! closures over the affine parameter line, and the additive action on them.

mod action;
mod scheme;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::divisor_calc::{divisor_on, principal_divisor, Cycle, PDivisor, RatEquivElement, Subvariety};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::groebner::{Ideal, MonomialOrder};
use crate::poly::{Polynomial, RationalFunction, Ring};

pub use action::{
    check_action_invariance, check_double_invariance, linear_action, subgroup_action, tangent_action,
    tangent_action_with, truncated_action, Action, InvarianceReport,
};
pub use scheme::{cycle_of_scheme, cycle_of_scheme_with_rng, minimal_primes};

/// Append `k` fresh variables named `base1, base2, …`.
pub(crate) fn fresh_block(ring: &Ring, base: &str, k: usize) -> (Ring, Vec<usize>) {
    let mut r = ring.clone();
    let mut idx = Vec::with_capacity(k);
    for i in 1..=k {
        let name = r.fresh_name(&format!("{base}{i}"));
        r = r.extended(&[name]);
        idx.push(r.len() - 1);
    }
    (r, idx)
}

fn fresh_var(ring: &Ring, base: &str) -> (Ring, usize) {
    let name = ring.fresh_name(base);
    let r = ring.extended(&[name]);
    let i = r.len() - 1;
    (r, i)
}

fn check_generators(f: &[Polynomial], what: &'static str) -> Result<Ring> {
    let Some(first) = f.first() else {
        return Err(Error::InvalidInput(format!("{what}: empty generator list")));
    };
    let ring = first.ring().clone();
    for p in f {
        if p.ring() != &ring {
            return Err(Error::RingMismatch(format!("{} vs {}", p.ring(), ring)));
        }
        if p.is_zero() {
            return Err(Error::ZeroInput(what));
        }
    }
    Ok(ring)
}

/// Set `var` to `c` in every generator and drop it from the ring.
fn specialize(i: &Ideal, var: usize, c: &BigRational) -> Result<Ideal> {
    let ring = i.ring();
    let sub = Ring::new((0..ring.len()).filter(|&v| v != var).map(|v| ring.var_name(v)));
    let gens = i
        .groebner_basis(MonomialOrder::GRevLex)?
        .iter()
        .map(|g| g.evaluate_var(var, c).embed(&sub))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&sub, gens)
}

fn is_nonzerodivisor(i: &Ideal, var: usize) -> Result<bool> {
    let x = Polynomial::variable(i.ring(), var);
    i.saturate(&x)?.same_ideal(i)
}

/// The closure of the graph of `x ↦ f(x)/t` in `Y × A¹ × A^k`.
#[derive(Clone, Debug)]
pub struct DeformationSpace {
    base: Ring,
    ring: Ring,
    t: usize,
    z: Vec<usize>,
    source: Vec<Polynomial>,
    ideal: Ideal,
}

impl DeformationSpace {
    pub fn base(&self) -> &Ring {
        &self.base
    }

    /// Base variables, then `t`, then the cone variables.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn parameter(&self) -> usize {
        self.t
    }

    pub fn cone_vars(&self) -> &[usize] {
        &self.z
    }

    pub fn source(&self) -> &[Polynomial] {
        &self.source
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// `(I : t) = I`.
    pub fn is_flat(&self) -> Result<bool> {
        is_nonzerodivisor(&self.ideal, self.t)
    }

    /// The fibre over `t = 1` with the cone variables eliminated; the zero
    /// ideal, since that fibre is a graph over the base.
    pub fn general_fiber(&self) -> Result<Ideal> {
        let fiber = specialize(&self.ideal, self.t, &BigRational::one())?;
        let z: Vec<usize> = (self.base.len()..fiber.ring().len()).collect();
        let elim = fiber.eliminate(&z)?;
        elim.embed(&self.base)
    }

    /// Whether `t = 1` recovers the graph `z_i = f_i`.
    pub fn is_graph_at_one(&self) -> Result<bool> {
        let fiber = specialize(&self.ideal, self.t, &BigRational::one())?;
        let r = fiber.ring().clone();
        let graph = self
            .source
            .iter()
            .enumerate()
            .map(|(i, f)| Ok(&Polynomial::variable(&r, self.base.len() + i) - &f.embed(&r)?))
            .collect::<Result<Vec<_>>>()?;
        fiber.same_ideal(&Ideal::new(&r, graph)?)
    }
}

pub fn graph_closure(f: &[Polynomial]) -> Result<DeformationSpace> {
    let base = check_generators(f, "graph closure of a zero function")?;
    let (with_t, t) = fresh_var(&base, "t");
    let (ring, z) = fresh_block(&with_t, "z", f.len());
    let tv = Polynomial::variable(&ring, t);
    let gens = f
        .iter()
        .zip(&z)
        .map(|(fi, &zi)| Ok(&(&Polynomial::variable(&ring, zi) * &tv) - &fi.embed(&ring)?))
        .collect::<Result<Vec<_>>>()?;
    let ideal = Ideal::new(&ring, gens)?.saturate(&tv)?;
    Ok(DeformationSpace {
        base,
        ring,
        t,
        z,
        source: f.to_vec(),
        ideal,
    })
}

/// The special fibre `t = 0` of a deformation space.
#[derive(Clone, Debug)]
pub struct ConePresentation {
    base_len: usize,
    ideal: Ideal,
}

impl ConePresentation {
    /// Base variables followed by the cone variables.
    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn cone_vars(&self) -> Vec<usize> {
        (self.base_len..self.ring().len()).collect()
    }

    /// Every z-graded piece of every basis element lies in the ideal.
    pub fn is_homogeneous(&self) -> Result<bool> {
        for g in self.ideal.groebner_basis(MonomialOrder::GRevLex)?.iter() {
            for piece in graded_pieces(g, self.base_len) {
                if !self.ideal.contains(&piece)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn cycle(&self) -> Result<Cycle> {
        cycle_of_scheme(&self.ideal)
    }
}

fn graded_pieces(g: &Polynomial, from: usize) -> Vec<Polynomial> {
    let mut parts: BTreeMap<u32, Vec<_>> = BTreeMap::new();
    for (m, c) in g.terms() {
        let d: u32 = m.exponents()[from..].iter().sum();
        parts.entry(d).or_default().push((m.clone(), c.clone()));
    }
    parts
        .into_values()
        .map(|ts| Polynomial::from_terms(g.ring(), ts))
        .collect()
}

/// `t = 0` substituted into the saturated generators.
pub fn normal_cone(m: &DeformationSpace) -> Result<ConePresentation> {
    Ok(ConePresentation {
        base_len: m.base.len(),
        ideal: specialize(&m.ideal, m.t, &BigRational::zero())?,
    })
}

/// The same fibre computed as `(I + (t)) ∩ k[x, z]`.
pub fn normal_cone_by_elimination(m: &DeformationSpace) -> Result<ConePresentation> {
    let with_t = m.ideal.with_generators([Polynomial::variable(&m.ring, m.t)])?;
    Ok(ConePresentation {
        base_len: m.base.len(),
        ideal: with_t.eliminate(&[m.t])?,
    })
}

/// Fibre product of the deformations of `Y` to the cones of `X = V(g)` and
/// `Y′ = V(f)`, with parameters `s` and `t`.
#[derive(Clone, Debug)]
pub struct DoubleDeformation {
    base: Ring,
    ring: Ring,
    s: usize,
    t: usize,
    w: Vec<usize>,
    z: Vec<usize>,
    g: Vec<Polynomial>,
    f: Vec<Polynomial>,
    ideal: Ideal,
    d: PDivisor,
    e: PDivisor,
    degenerate: bool,
}

impl DoubleDeformation {
    pub fn base(&self) -> &Ring {
        &self.base
    }

    /// Base variables, `s`, `t`, the `w` block, then the `z` block.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn w_vars(&self) -> &[usize] {
        &self.w
    }

    pub fn z_vars(&self) -> &[usize] {
        &self.z
    }

    pub fn x_generators(&self) -> &[Polynomial] {
        &self.g
    }

    pub fn y_generators(&self) -> &[Polynomial] {
        &self.f
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// The P-divisor of `s`, to be restricted to the total space.
    pub fn d(&self) -> &PDivisor {
        &self.d
    }

    /// The P-divisor of `t`, to be restricted to the total space.
    pub fn e(&self) -> &PDivisor {
        &self.e
    }

    /// One of the subschemes is empty, so a special fibre is empty too.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn is_flat(&self) -> Result<bool> {
        Ok(is_nonzerodivisor(&self.ideal, self.s)? && is_nonzerodivisor(&self.ideal, self.t)?)
    }

    /// The saturations taken in the opposite order.
    pub fn reverse_saturation(&self) -> Result<Ideal> {
        let sv = Polynomial::variable(&self.ring, self.s);
        let tv = Polynomial::variable(&self.ring, self.t);
        self.raw()?.saturate(&tv)?.saturate(&sv)
    }

    fn raw(&self) -> Result<Ideal> {
        let sv = Polynomial::variable(&self.ring, self.s);
        let tv = Polynomial::variable(&self.ring, self.t);
        let mut gens = Vec::new();
        for (gj, &wj) in self.g.iter().zip(&self.w) {
            gens.push(&(&Polynomial::variable(&self.ring, wj) * &sv) - &gj.embed(&self.ring)?);
        }
        for (fi, &zi) in self.f.iter().zip(&self.z) {
            gens.push(&(&Polynomial::variable(&self.ring, zi) * &tv) - &fi.embed(&self.ring)?);
        }
        Ideal::new(&self.ring, gens)
    }

    /// The fibre over `param = 1` with the other parameter's cone block
    /// eliminated, in the ring of the remaining variables.
    pub fn restrict_to_one(&self, param: usize) -> Result<Ideal> {
        let block = if param == self.t { &self.z } else { &self.w };
        let fiber = specialize(&self.ideal, param, &BigRational::one())?;
        let r = fiber.ring().clone();
        let names: Vec<usize> = block
            .iter()
            .map(|&v| r.index_of(self.ring.var_name(v)).unwrap())
            .collect();
        fiber.eliminate(&names)
    }
}

pub fn double_deformation(g: &[Polynomial], f: &[Polynomial]) -> Result<DoubleDeformation> {
    let base = check_generators(g, "deformation along a zero function")?;
    let fr = check_generators(f, "deformation along a zero function")?;
    if fr != base {
        return Err(Error::RingMismatch(format!("{fr} vs {base}")));
    }
    let (r1, s) = fresh_var(&base, "s");
    let (r2, t) = fresh_var(&r1, "t");
    let (r3, w) = fresh_block(&r2, "w", g.len());
    let (ring, z) = fresh_block(&r3, "z", f.len());
    let mut dd = DoubleDeformation {
        d: principal_divisor(&RationalFunction::from_poly(Polynomial::variable(&ring, s)))?,
        e: principal_divisor(&RationalFunction::from_poly(Polynomial::variable(&ring, t)))?,
        ideal: Ideal::zero(&ring),
        base: base.clone(),
        ring,
        s,
        t,
        w,
        z,
        g: g.to_vec(),
        f: f.to_vec(),
        degenerate: false,
    };
    let sv = Polynomial::variable(&dd.ring, s);
    let tv = Polynomial::variable(&dd.ring, t);
    dd.ideal = dd.raw()?.saturate(&sv)?.saturate(&tv)?;
    dd.degenerate = Ideal::new(&base, g.iter().cloned())?.is_unit()?
        || Ideal::new(&base, f.iter().cloned())?.is_unit()?;
    Ok(dd)
}

/// Which parameter is sent to zero first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LimitOrder {
    /// `t → 0`, then `s → 0`: the cone of `X ×_Y C_{Y′}Y` in `C_{Y′}Y`.
    TThenS,
    /// `s → 0`, then `t → 0`: the cone of `C_XY ×_Y Y′` in `C_XY`.
    SThenT,
}

impl fmt::Display for LimitOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitOrder::TThenS => write!(f, "t-then-s"),
            LimitOrder::SThenT => write!(f, "s-then-t"),
        }
    }
}

/// An iterated limit; `cycle` is `None` when the scheme is outside the
/// scope of `cycle_of_scheme`.
#[derive(Clone, Debug)]
pub struct LimitCycle {
    pub order: LimitOrder,
    pub ideal: Ideal,
    pub cycle: Option<Cycle>,
    pub note: Option<String>,
}

/// The ideal of the iterated special fibre, in the base and both cone blocks.
pub fn limit_ideal(d: &DoubleDeformation, order: LimitOrder) -> Result<Ideal> {
    let (first, second) = match order {
        LimitOrder::TThenS => (d.t, d.s),
        LimitOrder::SThenT => (d.s, d.t),
    };
    let zero = BigRational::zero();
    let j1 = specialize(&d.ideal, first, &zero)?;
    let second = j1.ring().index_of(d.ring.var_name(second)).unwrap();
    let j1 = j1.saturate(&Polynomial::variable(j1.ring(), second))?;
    specialize(&j1, second, &zero)
}

pub fn limit_cycle(d: &DoubleDeformation, order: LimitOrder) -> Result<LimitCycle> {
    let ideal = limit_ideal(d, order)?;
    let (cycle, note) = match cycle_of_scheme(&ideal) {
        Ok(c) => (Some(c), None),
        Err(Error::OutOfScope(why)) => (None, Some(why)),
        Err(e) => return Err(e),
    };
    Ok(LimitCycle {
        order,
        ideal,
        cycle,
        note,
    })
}

/// Both iterated limits of one double deformation.
#[derive(Clone, Debug)]
pub struct BigratCheck {
    pub t_then_s: LimitCycle,
    pub s_then_t: LimitCycle,
}

impl BigratCheck {
    /// Both cycles were extracted and agree term by term.
    pub fn holds(&self) -> bool {
        match (&self.t_then_s.cycle, &self.s_then_t.cycle) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    /// `[t-then-s] − [s-then-t]`, when both are available.
    pub fn difference(&self) -> Option<Cycle> {
        Some(self.t_then_s.cycle.as_ref()?.sub(self.s_then_t.cycle.as_ref()?))
    }
}

pub fn bigrat_check(d: &DoubleDeformation, exec: Exec) -> Result<BigratCheck> {
    let (a, b) = exec::join(
        exec,
        || limit_cycle(d, LimitOrder::TThenS),
        || limit_cycle(d, LimitOrder::SThenT),
    );
    Ok(BigratCheck {
        t_then_s: a?,
        s_then_t: b?,
    })
}

/// The rational equivalence between the two iterated limits: tame symbols
/// of `s` and `t` on the common components of their divisors on the total
/// space, and its boundary carried into the ring of the limits.
#[derive(Clone, Debug)]
pub struct LimitDifferenceCheck {
    pub difference: Cycle,
    pub omega: RatEquivElement,
    pub boundary: Cycle,
}

impl LimitDifferenceCheck {
    pub fn holds(&self) -> bool {
        self.difference == self.boundary
    }
}

pub fn verify_limit_difference(d: &DoubleDeformation, check: &BigratCheck) -> Result<LimitDifferenceCheck> {
    let Some(difference) = check.difference() else {
        return Err(Error::OutOfScope("an iterated limit has no cycle".into()));
    };
    let ring = &d.ring;
    let sv = Polynomial::variable(ring, d.s);
    let tv = Polynomial::variable(ring, d.t);
    let div_s = cycle_of_scheme(&d.ideal.with_generators([sv.clone()])?)?;
    let div_t = cycle_of_scheme(&d.ideal.with_generators([tv.clone()])?)?;
    let mut omega = RatEquivElement::new();
    for (v, a) in div_s.terms() {
        let b = div_t.coefficient(v);
        if b == 0 {
            continue;
        }
        let g = restrict_power_ratio(d, v, &tv, a as u32, &sv, b as u32)?;
        omega.push(v.clone(), g);
    }
    let limit_ring = check.t_then_s.ideal.ring().clone();
    let mut boundary = Cycle::new();
    for (v, g) in omega.terms() {
        for (c, k) in divisor_on(v, g)?.terms() {
            let projected = c.ideal().eliminate(&[d.s, d.t])?.embed(&limit_ring)?;
            boundary.add_term(Subvariety::from_prime(&projected)?, k);
        }
    }
    Ok(LimitDifferenceCheck {
        difference,
        omega,
        boundary,
    })
}

/// `y^a / x^b` restricted to the component `v` of the total space, as a
/// ratio of polynomials not vanishing identically on `v`.
fn restrict_power_ratio(
    d: &DoubleDeformation,
    v: &Subvariety,
    y: &Polynomial,
    a: u32,
    x: &Polynomial,
    b: u32,
) -> Result<RationalFunction> {
    let name = d.ring.fresh_name("r");
    let big = Ring::new(std::iter::once(name.as_str()).chain(d.ring.vars().iter().map(String::as_str)));
    let r = 0;
    let rv = Polynomial::variable(&big, r);
    let lift = |p: &Polynomial| p.embed(&big);
    let xb = lift(&x.pow(b))?;
    let ya = lift(&y.pow(a))?;
    let graph = d
        .ideal
        .embed(&big)?
        .with_generators([&(&xb * &rv) - &ya])?
        .saturate(&lift(x)?)?;
    let pv = v.ideal();
    let on_v = graph.sum(&pv.embed(&big)?)?;
    let basis = on_v.groebner_basis(MonomialOrder::Elimination(1))?;
    for g in basis.iter() {
        if g.degree_in(r) != 1 {
            continue;
        }
        let coeffs = g.coefficients_in(r);
        let den = coeffs[1].embed(&d.ring)?;
        if pv.contains(&den)? {
            continue;
        }
        let num = (-&coeffs[0]).embed(&d.ring)?;
        return RationalFunction::new(num, den);
    }
    Err(Error::OutOfScope(format!("restriction of a tame symbol to {v}")))
}

#[cfg(test)]
mod tests;
