//! Fundamental cycles of affine schemes, on a whitelist of presentations.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::divisor_calc::{Cycle, Subvariety};
use crate::error::{Error, Result};
use crate::factor::factor;
use crate::groebner::{Ideal, MonomialOrder};
use crate::poly::{Polynomial, Ring};
use crate::zerodim::decompose;

const SLICE_SEED: u64 = 0x511c_e5ee;
const SLICE_SAMPLES: usize = 3;
const SLICE_ATTEMPTS: usize = 24;
const MAX_SPLIT_DEPTH: usize = 32;
const MAX_ORDERS: usize = 24;

/// The cycle `Σ length(O_{X,V}) [V]` over the minimal primes `V` of `I`.
///
/// Handled: principal ideals (by factoring), zero-dimensional ideals, and
/// ideals whose minimal primes are reached by splitting along factors of
/// basis elements and of elimination polynomials, each prime certified by a
/// triangular lex basis. Anything else is `OutOfScope`.
pub fn cycle_of_scheme(i: &Ideal) -> Result<Cycle> {
    let mut rng = ChaCha8Rng::seed_from_u64(SLICE_SEED);
    cycle_of_scheme_with_rng(i, &mut rng)
}

pub fn cycle_of_scheme_with_rng<R: Rng>(i: &Ideal, rng: &mut R) -> Result<Cycle> {
    let ring = i.ring().clone();
    if i.is_unit()? {
        return Ok(Cycle::new());
    }
    let gb = i.groebner_basis(MonomialOrder::GRevLex)?;
    if gb.is_empty() {
        return Ok(Cycle::single(Subvariety::Ambient(ring)));
    }
    if gb.len() == 1 {
        let f = factor(&gb[0])?;
        return Ok(Cycle::from_terms(
            f.factors
                .iter()
                .map(|(p, e)| (Subvariety::Hypersurface(p.normalized()), *e as i64)),
        ));
    }
    if i.krull_dimension()? == Some(0) {
        return Ok(Cycle::from_terms(
            decompose(i)?
                .into_iter()
                .map(|(p, e)| (Subvariety::Point(p), e as i64)),
        ));
    }
    let primes = minimal_primes(i)?;
    let mut out = Cycle::new();
    for (j, p) in primes.iter().enumerate() {
        let q = if primes.len() == 1 {
            i.clone()
        } else {
            let mut s = Polynomial::one(&ring);
            for (k, other) in primes.iter().enumerate() {
                if k == j {
                    continue;
                }
                let mut found = None;
                for g in other.groebner_basis(MonomialOrder::GRevLex)?.iter() {
                    if !p.contains(g)? {
                        found = Some(g.clone());
                        break;
                    }
                }
                let g = found.expect("distinct minimal primes are incomparable");
                s = &s * &g;
            }
            i.saturate(&s)?
        };
        let e = local_length(&q, p, rng)?;
        out.add_term(Subvariety::from_prime(p)?, e);
    }
    Ok(out)
}

/// Minimal primes of `I`, each certified prime.
pub fn minimal_primes(i: &Ideal) -> Result<Vec<Ideal>> {
    let mut found = Vec::new();
    split(i, 0, &mut found)?;
    let mut unique: Vec<Ideal> = Vec::new();
    for p in found {
        let mut dup = false;
        for q in &unique {
            if q.same_ideal(&p)? {
                dup = true;
                break;
            }
        }
        if !dup {
            unique.push(p);
        }
    }
    let mut minimal = Vec::new();
    for (j, p) in unique.iter().enumerate() {
        let mut keep = true;
        for (k, q) in unique.iter().enumerate() {
            if k != j && p.contains_ideal(q)? {
                keep = false;
                break;
            }
        }
        if keep {
            minimal.push(p.clone());
        }
    }
    Ok(minimal)
}

fn split(i: &Ideal, depth: usize, out: &mut Vec<Ideal>) -> Result<()> {
    if depth > MAX_SPLIT_DEPTH {
        return Err(Error::ResourceExhausted("prime splitting depth".into()));
    }
    if i.is_unit()? {
        return Ok(());
    }
    let gb = i.groebner_basis(MonomialOrder::GRevLex)?;
    for g in gb.iter() {
        if let Some(parts) = proper_factors(g, i)? {
            for p in parts {
                split(&i.with_generators([p])?, depth + 1, out)?;
            }
            return Ok(());
        }
    }
    if i.krull_dimension()? == Some(0) {
        for (pt, _) in decompose(i)? {
            out.push(pt.ideal());
        }
        return Ok(());
    }
    if certified_prime(i)? {
        out.push(i.clone());
        return Ok(());
    }
    let free = i.independent_set()?.expect("proper ideal");
    let n = i.ring().len();
    for x in (0..n).filter(|x| !free.contains(x)) {
        let drop: Vec<usize> = (0..n).filter(|v| *v != x && !free.contains(v)).collect();
        let elim = i.eliminate(&drop)?;
        for h in elim.generators() {
            let h = h.embed(i.ring())?;
            if let Some(parts) = proper_factors(&h, i)? {
                for p in parts {
                    split(&i.with_generators([p])?, depth + 1, out)?;
                }
                return Ok(());
            }
        }
    }
    if let Some(h) = generic_denominator(i, &free)? {
        let generic = i.saturate(&h)?;
        if !generic.same_ideal(i)? {
            split(&generic, depth + 1, out)?;
            split(&i.with_generators([h])?, depth + 1, out)?;
            return Ok(());
        }
    }
    Err(Error::OutOfScope(format!("no prime certificate for {i}")))
}

/// Product of the distinct factors of the leading coefficients, in the
/// independent variables, of a basis for the block order that puts the
/// other variables first. Away from `h = 0` the ideal is generated by the
/// same basis over the field of functions of the independent variables, so
/// `V(I) = V(I : h^∞) ∪ V(I + (h))` splits off components that do not
/// dominate the independent variables.
fn generic_denominator(i: &Ideal, free: &[usize]) -> Result<Option<Polynomial>> {
    let ring = i.ring();
    let n = ring.len();
    let bound: Vec<usize> = (0..n).filter(|x| !free.contains(x)).collect();
    let k = bound.len();
    let perm = Ring::new(bound.iter().chain(free).map(|&x| ring.var_name(x)));
    let basis = i.embed(&perm)?.groebner_basis(MonomialOrder::Elimination(k))?;
    let mut h = Polynomial::one(ring);
    let mut seen: Vec<Polynomial> = Vec::new();
    for g in basis.iter() {
        let lm = Ideal::leading_monomial(g, MonomialOrder::Elimination(k)).expect("nonzero");
        let head = &lm.exponents()[..k];
        let coeff = Polynomial::from_terms(
            &perm,
            g.terms()
                .filter(|(m, _)| &m.exponents()[..k] == head)
                .map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e[..k].iter_mut().for_each(|x| *x = 0);
                    (crate::poly::Monomial::from_exponents(e), c.clone())
                }),
        );
        if coeff.is_constant() {
            continue;
        }
        for (p, _) in factor(&coeff)?.factors {
            if !seen.contains(&p) {
                h = &h * &p.embed(ring)?;
                seen.push(p);
            }
        }
    }
    Ok((!h.is_constant()).then_some(h))
}

/// The distinct irreducible factors of `g ∈ I` when they split `V(I)`
/// into smaller pieces, i.e. none of them already lies in `I`.
fn proper_factors(g: &Polynomial, i: &Ideal) -> Result<Option<Vec<Polynomial>>> {
    if g.is_constant() {
        return Ok(None);
    }
    let f = factor(g)?;
    if f.factors.len() == 1 && f.factors[0].1 == 1 {
        return Ok(None);
    }
    let parts: Vec<Polynomial> = f.factors.iter().map(|(p, _)| p.clone()).collect();
    for p in &parts {
        if i.contains(p)? {
            return Ok(None);
        }
    }
    Ok(Some(parts))
}

/// Whether `I` has a reduced lex basis, in some variable order, made of
/// elements `c·x_i + r` solving distinct variables plus at most one
/// irreducible polynomial in the unsolved ones. The quotient is then a
/// polynomial ring modulo an irreducible, hence a domain.
fn certified_prime(i: &Ideal) -> Result<bool> {
    let ring = i.ring();
    let n = ring.len();
    let free = i.independent_set()?.expect("proper ideal");
    let d = free.len();
    let mut subsets: Vec<Vec<usize>> = vec![free];
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == d {
            let s: Vec<usize> = (0..n).filter(|x| mask & (1 << x) != 0).collect();
            if !subsets.contains(&s) {
                subsets.push(s);
            }
        }
    }
    let mut orders: Vec<Vec<usize>> = vec![(0..n).collect()];
    for s in subsets.iter().take(MAX_ORDERS) {
        let rest: Vec<usize> = (0..n).filter(|x| !s.contains(x)).collect();
        for head in [rest.clone(), rest.into_iter().rev().collect()] {
            let order: Vec<usize> = head.into_iter().chain(s.iter().copied()).collect();
            if !orders.contains(&order) {
                orders.push(order);
            }
        }
    }
    for order in orders {
        let perm = Ring::new(order.iter().map(|&x| ring.var_name(x)));
        let basis = i.embed(&perm)?.groebner_basis(MonomialOrder::Lex)?;
        if triangular_domain(&basis)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn triangular_domain(basis: &[Polynomial]) -> Result<bool> {
    let mut solved = Vec::new();
    let mut rest = Vec::new();
    for b in basis {
        let lm = Ideal::leading_monomial(b, MonomialOrder::Lex).expect("nonzero basis element");
        if lm.degree() == 1 {
            let x = lm.exponents().iter().position(|&e| e == 1).unwrap();
            if b.degree_in(x) == 1 && b.coefficients_in(x)[1].is_constant() {
                solved.push(x);
                continue;
            }
        }
        rest.push(b);
    }
    match rest.as_slice() {
        [] => Ok(true),
        [h] => Ok(solved.iter().all(|&x| !h.involves(x)) && factor(h)?.is_irreducible()),
        _ => Ok(false),
    }
}

/// Length of `Q` at its unique minimal prime `P`, read off the generic fibre
/// of the projection to an independent set of variables. A special slice
/// can only overcount, so the least value over a few samples is kept.
fn local_length<R: Rng>(q: &Ideal, p: &Ideal, rng: &mut R) -> Result<i64> {
    let ring = q.ring().clone();
    let free = p.independent_set()?.expect("proper prime");
    let ratio = |qs: &Ideal, ps: &Ideal| -> Result<Option<i64>> {
        let (Some(a), Some(b)) = (qs.quotient_dimension()?.finite(), ps.quotient_dimension()?.finite())
        else {
            return Ok(None);
        };
        if b == 0 || a % b != 0 {
            return Ok(None);
        }
        Ok(Some((a / b) as i64))
    };
    if free.is_empty() {
        return ratio(q, p)?.ok_or_else(|| Error::OutOfScope(format!("length of {q} at {p}")));
    }
    let mut best: Option<i64> = None;
    let mut samples = 0;
    for _ in 0..SLICE_ATTEMPTS {
        let slice: Vec<Polynomial> = free
            .iter()
            .map(|&x| {
                let a = BigRational::from_integer(BigInt::from(rng.gen_range(-9i64..=9)));
                &Polynomial::variable(&ring, x) - &Polynomial::constant(&ring, a)
            })
            .collect();
        let qs = q.with_generators(slice.iter().cloned())?;
        let ps = p.with_generators(slice)?;
        if let Some(e) = ratio(&qs, &ps)? {
            best = Some(best.map_or(e, |b| b.min(e)));
            samples += 1;
            if samples == SLICE_SAMPLES {
                break;
            }
        }
    }
    best.ok_or_else(|| Error::OutOfScope(format!("no generic slice of {q} at {p}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(names: &[&str]) -> Ring {
        Ring::new(names.iter().copied())
    }

    fn var(r: &Ring, n: &str) -> Polynomial {
        Polynomial::var(r, n).unwrap()
    }

    #[test]
    fn principal_case() {
        let r = ring(&["u", "v"]);
        let (u, v) = (var(&r, "u"), var(&r, "v"));
        let c = cycle_of_scheme(&Ideal::new(&r, [&(&u * &u) * &v]).unwrap()).unwrap();
        let expect = Cycle::from_terms([
            (Subvariety::hypersurface(&u).unwrap(), 2),
            (Subvariety::hypersurface(&v).unwrap(), 1),
        ]);
        assert_eq!(c, expect);
    }

    #[test]
    fn zero_dimensional_case() {
        let r = ring(&["u", "v"]);
        let (u, v) = (var(&r, "u"), var(&r, "v"));
        let c = cycle_of_scheme(&Ideal::new(&r, [&u * &u, v]).unwrap()).unwrap();
        let o = crate::zerodim::ClosedPoint::origin(&r);
        assert_eq!(c, Cycle::from_terms([(Subvariety::Point(o), 2)]));
    }

    #[test]
    fn codimension_two_components() {
        let r = ring(&["u", "v", "w", "z"]);
        let (u, v, w, z) = (var(&r, "u"), var(&r, "v"), var(&r, "w"), var(&r, "z"));
        // (u) ∩ (v, w)^2-ish: u·v, u·w, u^2 -> V(u) with multiplicity 1 off the
        // embedded locus.
        let i = Ideal::new(&r, [&u * &u, &u * &v, &u * &w]).unwrap();
        let c = cycle_of_scheme(&i).unwrap();
        assert_eq!(c, Cycle::from_terms([(Subvariety::hypersurface(&u).unwrap(), 1)]));
        // Two planes, one doubled: (u, v^2) ∩ (w, z).
        let a = Ideal::new(&r, [u.clone(), &v * &v]).unwrap();
        let b = Ideal::new(&r, [w.clone(), z.clone()]).unwrap();
        let prod = a.product(&b).unwrap();
        let c = cycle_of_scheme(&prod).unwrap();
        let pa = Subvariety::from_prime(&Ideal::new(&r, [u.clone(), v.clone()]).unwrap()).unwrap();
        let pb = Subvariety::from_prime(&b).unwrap();
        assert_eq!(c, Cycle::from_terms([(pa, 2), (pb, 1)]));
    }

    #[test]
    fn twisted_prime_is_certified() {
        let r = ring(&["u", "v", "z"]);
        let (u, v, z) = (var(&r, "u"), var(&r, "v"), var(&r, "z"));
        let p = Ideal::new(&r, [&z - &(&u * &u), &v - &(&u * &z)]).unwrap();
        assert!(certified_prime(&p).unwrap());
        let twice = p.power(2).unwrap();
        let c = cycle_of_scheme(&twice).unwrap();
        assert_eq!(c, Cycle::from_terms([(Subvariety::from_prime(&p).unwrap(), 3)]));
    }

    #[test]
    fn out_of_scope_boundary() {
        // The twisted cubic cone in A^4 has no triangular lex presentation
        // in any order tried here.
        let r = ring(&["a", "b", "c", "d"]);
        let (a, b, c, d) = (var(&r, "a"), var(&r, "b"), var(&r, "c"), var(&r, "d"));
        let i = Ideal::new(
            &r,
            [&(&a * &c) - &(&b * &b), &(&b * &d) - &(&c * &c), &(&a * &d) - &(&b * &c)],
        )
        .unwrap();
        assert!(matches!(cycle_of_scheme(&i), Err(Error::OutOfScope(_))));
    }
}
