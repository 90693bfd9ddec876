//! Fraction-free Buchberger with the Gebauer–Möller pair criteria and sugar
//! pair selection. Basis elements are kept integer-primitive.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::MonomialOrder;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Ring};

static STEP_LIMIT: AtomicU64 = AtomicU64::new(20_000_000);

/// Set the process-wide reduction-step budget for a single Gröbner computation.
pub fn set_step_limit(steps: u64) {
    STEP_LIMIT.store(steps, AtomicOrdering::Relaxed);
}

pub fn step_limit() -> u64 {
    STEP_LIMIT.load(AtomicOrdering::Relaxed)
}

pub(crate) struct Budget {
    remaining: u64,
}

impl Budget {
    pub(crate) fn new() -> Budget {
        Budget {
            remaining: step_limit(),
        }
    }

    #[inline]
    fn tick(&mut self) -> Result<()> {
        if self.remaining == 0 {
            return Err(Error::ResourceExhausted(format!(
                "Gröbner computation exceeded {} reduction steps",
                step_limit()
            )));
        }
        self.remaining -= 1;
        Ok(())
    }
}

/// Integer polynomial with terms sorted descending in the active order.
#[derive(Clone, Debug)]
pub(crate) struct GPoly {
    pub terms: Vec<(Monomial, BigInt)>,
    pub sugar: u32,
}

impl GPoly {
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Clear denominators; returns the poly and `s` with `gpoly = s * p`.
    pub fn from_poly(p: &Polynomial, order: &MonomialOrder) -> (GPoly, BigRational) {
        let mut den = BigInt::one();
        for (_, c) in p.terms() {
            den = den.lcm(c.denom());
        }
        let mut terms: Vec<(Monomial, BigInt)> = p
            .terms()
            .map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom())))
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let sugar = p.total_degree();
        let mut g = GPoly { terms, sugar };
        let c = g.make_primitive();
        (g, BigRational::from_integer(den) / c)
    }

    pub fn to_poly(&self, ring: &Ring) -> Polynomial {
        Polynomial::from_terms(
            ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()))),
        )
    }

    /// Divide by the content and make the leading coefficient positive;
    /// returns the signed divisor.
    pub fn make_primitive(&mut self) -> BigInt {
        if self.terms.is_empty() {
            return BigInt::one();
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in self.terms.iter_mut() {
                *c = &*c / &g;
            }
        }
        g
    }
}

/// `a*p - b*q*g`, where the term of `p` at `k` cancels against `q*lm(g)`.
fn combine(
    p: &GPoly,
    k: usize,
    a: &BigInt,
    b: &BigInt,
    q: &Monomial,
    g: &GPoly,
    order: &MonomialOrder,
) -> Vec<(Monomial, BigInt)> {
    let scale_p = !a.is_one();
    let mut out = Vec::with_capacity(p.terms.len() + g.terms.len());
    for (m, c) in &p.terms[..k] {
        out.push((m.clone(), if scale_p { c * a } else { c.clone() }));
    }
    let (mut i, mut j) = (k + 1, 1);
    while i < p.terms.len() && j < g.terms.len() {
        let mg = g.terms[j].0.mul(q);
        match order.cmp(&p.terms[i].0, &mg) {
            Ordering::Greater => {
                let c = &p.terms[i].1;
                out.push((p.terms[i].0.clone(), if scale_p { c * a } else { c.clone() }));
                i += 1;
            }
            Ordering::Less => {
                out.push((mg, -(b * &g.terms[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = if scale_p {
                    &p.terms[i].1 * a - b * &g.terms[j].1
                } else {
                    &p.terms[i].1 - b * &g.terms[j].1
                };
                if !c.is_zero() {
                    out.push((mg, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    for (m, c) in &p.terms[i..] {
        out.push((m.clone(), if scale_p { c * a } else { c.clone() }));
    }
    for (m, c) in &g.terms[j..] {
        out.push((m.mul(q), -(b * c)));
    }
    out
}

/// Fully reduce `p` by `basis`. The returned rational `s` satisfies
/// `result = s * p  (mod the ideal)`.
pub(crate) fn reduce_full(
    mut p: GPoly,
    basis: &[&GPoly],
    order: &MonomialOrder,
    budget: &mut Budget,
) -> Result<(GPoly, BigRational)> {
    let mut mult = BigRational::one();
    let mut k = 0;
    let mut since_content = 0;
    while k < p.terms.len() {
        let m = &p.terms[k].0;
        let Some(g) = basis.iter().find(|g| g.lm().divides(m)) else {
            k += 1;
            continue;
        };
        budget.tick()?;
        let q = m.checked_div(g.lm()).expect("divisible");
        let c = &p.terms[k].1;
        let gc = c.gcd(g.lc());
        let a = g.lc() / &gc;
        let b = c / &gc;
        p.sugar = p.sugar.max(g.sugar + q.degree());
        p.terms = combine(&p, k, &a, &b, &q, g, order);
        if !a.is_one() {
            mult *= BigRational::from_integer(a);
        }
        since_content += 1;
        if since_content >= 16 {
            since_content = 0;
            let d = content_abs(&p.terms);
            if !d.is_one() && !d.is_zero() {
                for (_, c) in p.terms.iter_mut() {
                    *c = &*c / &d;
                }
                mult /= BigRational::from_integer(d);
            }
        }
    }
    let d = p.make_primitive();
    mult /= BigRational::from_integer(d);
    Ok((p, mult))
}

fn content_abs(terms: &[(Monomial, BigInt)]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in terms {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn spoly(f: &GPoly, g: &GPoly, lcm: &Monomial, order: &MonomialOrder) -> GPoly {
    let qf = lcm.checked_div(f.lm()).unwrap();
    let qg = lcm.checked_div(g.lm()).unwrap();
    let gc = f.lc().gcd(g.lc());
    let a = g.lc() / &gc;
    let b = f.lc() / &gc;
    let shifted = GPoly {
        terms: f.terms.iter().map(|(m, c)| (m.mul(&qf), c.clone())).collect(),
        sugar: f.sugar + qf.degree(),
    };
    let terms = combine(&shifted, 0, &a, &b, &qg, g, order);
    GPoly {
        terms,
        sugar: shifted.sugar.max(g.sugar + qg.degree()),
    }
}

/// Reduced Gröbner basis, integer-primitive, sorted by ascending leading
/// monomial.
pub(crate) fn groebner(gens: Vec<GPoly>, order: &MonomialOrder) -> Result<Vec<GPoly>> {
    let mut budget = Budget::new();
    let mut basis: Vec<GPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut gens = gens;
    gens.retain(|g| !g.is_zero());
    gens.sort_by(|a, b| order.cmp(a.lm(), b.lm()));

    let one = |n: usize| {
        vec![GPoly {
            terms: vec![(Monomial::one(n), BigInt::one())],
            sugar: 0,
        }]
    };
    let nvars = gens.first().map(|g| g.lm().len()).unwrap_or(0);

    let mut queue: Vec<GPoly> = gens;
    queue.reverse();
    loop {
        let next = if let Some(g) = queue.pop() {
            Some(g)
        } else if !pairs.is_empty() {
            let (idx, _) = pairs
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| {
                    a.sugar
                        .cmp(&b.sugar)
                        .then_with(|| order.cmp(&a.lcm, &b.lcm))
                })
                .unwrap();
            let pr = pairs.swap_remove(idx);
            budget.tick()?;
            Some(spoly(&basis[pr.i], &basis[pr.j], &pr.lcm, order))
        } else {
            None
        };
        let Some(p) = next else { break };
        let reducers: Vec<&GPoly> = basis
            .iter()
            .zip(&active)
            .filter(|(_, &a)| a)
            .map(|(g, _)| g)
            .collect();
        let (h, _) = reduce_full(p, &reducers, order, &mut budget)?;
        if h.is_zero() {
            continue;
        }
        if h.lm().is_one() {
            return Ok(one(nvars));
        }
        update(&mut basis, &mut active, &mut pairs, h);
    }

    // Interreduce the active (already minimal) elements.
    let mut min: Vec<GPoly> = basis
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(g, _)| g)
        .collect();
    min.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut reduced = Vec::with_capacity(min.len());
    for i in 0..min.len() {
        let others: Vec<&GPoly> = min
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g)
            .collect();
        let (h, _) = reduce_full(min[i].clone(), &others, order, &mut budget)?;
        reduced.push(h);
    }
    Ok(reduced)
}

fn update(basis: &mut Vec<GPoly>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: GPoly) {
    let hlm = h.lm().clone();
    let hidx = basis.len();

    // Chain criterion on the existing pairs.
    pairs.retain(|p| {
        !(hlm.divides(&p.lcm)
            && basis[p.i].lm().lcm(&hlm) != p.lcm
            && basis[p.j].lm().lcm(&hlm) != p.lcm)
    });

    struct Cand {
        i: usize,
        lcm: Monomial,
        coprime: bool,
        sugar: u32,
    }
    let mut cands: Vec<Cand> = basis
        .iter()
        .enumerate()
        .filter(|(i, _)| active[*i])
        .map(|(i, g)| {
            let lcm = g.lm().lcm(&hlm);
            let sugar = (g.sugar + lcm.degree() - g.lm().degree())
                .max(h.sugar + lcm.degree() - hlm.degree());
            Cand {
                i,
                coprime: g.lm().is_coprime(&hlm),
                lcm,
                sugar,
            }
        })
        .collect();

    // Drop candidates whose lcm is a proper multiple of another candidate's.
    let keep: Vec<bool> = cands
        .iter()
        .map(|c| {
            !cands
                .iter()
                .any(|d| d.lcm != c.lcm && d.lcm.divides(&c.lcm))
        })
        .collect();
    let mut it = keep.iter();
    cands.retain(|_| *it.next().unwrap());

    // One representative per lcm; a class containing a coprime pair goes away.
    cands.sort_by(|a, b| a.lcm.cmp(&b.lcm));
    let mut k = 0;
    while k < cands.len() {
        let mut e = k;
        while e < cands.len() && cands[e].lcm == cands[k].lcm {
            e += 1;
        }
        if !cands[k..e].iter().any(|c| c.coprime) {
            let c = &cands[k];
            pairs.push(Pair {
                i: c.i,
                j: hidx,
                lcm: c.lcm.clone(),
                sugar: c.sugar,
            });
        }
        k = e;
    }

    for (i, g) in basis.iter().enumerate() {
        if active[i] && hlm.divides(g.lm()) {
            active[i] = false;
        }
    }
    basis.push(h);
    active.push(true);
}
