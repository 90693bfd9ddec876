//! Factorization over ℚ.
//!
//! One variable: squarefree decomposition, then a Zassenhaus factorization
//! of each squarefree part. Several variables: content and squarefree split
//! in a main variable, a generic shear making the polynomial monic in it,
//! a good evaluation point, and power-series Hensel lifting of the
//! univariate factors followed by exact recombination.

mod modp;
mod zassenhaus;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::gcd::gcd_rec;
use crate::poly::{content_in, Monomial, Polynomial, UniPoly};

const DEFAULT_SEED: u64 = 0x5eed_fac7;
const MAX_RETRIES: usize = 64;

/// `p = unit * prod f_i^{e_i}` with pairwise non-associate irreducible,
/// integer-primitive factors of positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: BigRational,
    pub factors: Vec<(Polynomial, u32)>,
    /// Whether irreducibility of every factor is proven rather than heuristic.
    pub certified: bool,
}

impl Factorization {
    pub fn expand(&self, ring: &crate::poly::Ring) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(ring, self.unit.clone()), |acc, (f, e)| {
                &acc * &f.pow(*e)
            })
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.unit.is_one() || self.factors.is_empty() {
            parts.push(crate::poly::fmt_rational(&self.unit));
        }
        for (g, e) in &self.factors {
            let s = if g.num_terms() > 1 { format!("({g})") } else { g.to_string() };
            parts.push(if *e > 1 { format!("{s}^{e}") } else { s });
        }
        write!(f, "{}", parts.join(" * "))
    }
}

pub fn factor(p: &Polynomial) -> Result<Factorization> {
    factor_with_rng(p, &mut ChaCha8Rng::seed_from_u64(DEFAULT_SEED))
}

/// Factor with caller-supplied randomness for primes' splitting and
/// evaluation points.
pub fn factor_with_rng<R: Rng>(p: &Polynomial, rng: &mut R) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroInput("factor of zero"));
    }
    let mut found = Vec::new();
    factor_rec(p, rng, &mut found)?;
    assemble(p, found)
}

pub fn factor_univariate(p: &Polynomial) -> Result<Factorization> {
    if p.vars_present().len() > 1 {
        return Err(Error::InvalidInput(format!("{p} is not univariate")));
    }
    factor(p)
}

pub fn is_irreducible(p: &Polynomial) -> Result<bool> {
    if p.is_constant() {
        return Err(Error::InvalidInput("irreducibility of a constant".into()));
    }
    Ok(factor(p)?.is_irreducible())
}

fn assemble(p: &Polynomial, found: Vec<(Polynomial, u32)>) -> Result<Factorization> {
    let mut merged: BTreeMap<Polynomial, u32> = BTreeMap::new();
    for (f, e) in found {
        *merged.entry(f.normalized()).or_default() += e;
    }
    let mut factors: Vec<(Polynomial, u32)> = merged.into_iter().collect();
    factors.sort_by_cached_key(|(f, _)| (f.total_degree(), f.num_terms(), f.to_string()));
    let prod = factors
        .iter()
        .fold(Polynomial::one(p.ring()), |acc, (f, e)| &acc * &f.pow(*e));
    let unit = p.leading_coefficient() / prod.leading_coefficient();
    let out = Factorization {
        unit,
        factors,
        certified: true,
    };
    if out.expand(p.ring()) != *p {
        return Err(Error::InvalidInput(format!("factorization of {p} failed its product check")));
    }
    Ok(out)
}

fn factor_rec<R: Rng>(p: &Polynomial, rng: &mut R, out: &mut Vec<(Polynomial, u32)>) -> Result<()> {
    let vars = p.vars_present();
    match vars.len() {
        0 => return Ok(()),
        1 => {
            for (f, e) in factor_one_var(p, vars[0], rng) {
                out.push((f, e));
            }
            return Ok(());
        }
        _ => {}
    }
    let x = main_variable(p, &vars);
    let c = content_in(p, x);
    if !c.is_constant() {
        factor_rec(&c, rng, out)?;
    }
    let pp = p.exact_divide(&c)?;
    for (a, e) in yun(&pp, x) {
        for f in factor_squarefree_multi(&a, x, rng)? {
            out.push((f, e));
        }
    }
    Ok(())
}

/// Prefer a variable with constant leading coefficient, then low degree.
fn main_variable(p: &Polynomial, vars: &[usize]) -> usize {
    *vars
        .iter()
        .min_by_key(|&&v| {
            let lc_const = p.coefficients_in(v).last().is_some_and(Polynomial::is_constant);
            (!lc_const, p.degree_in(v), v)
        })
        .unwrap()
}

/// Squarefree decomposition in `x` of a polynomial primitive in `x`.
fn yun(f: &Polynomial, x: usize) -> Vec<(Polynomial, u32)> {
    let mut out = Vec::new();
    let fp = f.derivative(x);
    let a0 = gcd_rec(f, &fp);
    let mut b = f.exact_divide(&a0).expect("gcd divides");
    let mut c = fp.exact_divide(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative(x);
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd_rec(&b, &d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.exact_divide(&a).expect("gcd divides");
        c = d.exact_divide(&a).expect("gcd divides");
        d = &c - &b.derivative(x);
        i += 1;
    }
    out
}

fn factor_one_var<R: Rng>(p: &Polynomial, var: usize, rng: &mut R) -> Vec<(Polynomial, u32)> {
    let u = UniPoly::from_polynomial(p, var).expect("univariate");
    let mut out = Vec::new();
    for (a, e) in yun_uni(&u) {
        for f in factor_squarefree_uni(&a, rng) {
            out.push((f.to_polynomial(p.ring(), var).normalized(), e));
        }
    }
    out
}

fn yun_uni(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.div_rem(&a0).0;
    let mut c = fp.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        if a.degree() > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Monic irreducible factors of a squarefree univariate polynomial.
fn factor_squarefree_uni<R: Rng>(f: &UniPoly, rng: &mut R) -> Vec<UniPoly> {
    if f.degree() <= 1 {
        return vec![f.monic()];
    }
    let mut den = BigInt::one();
    for c in &f.0 {
        den = num_integer::Integer::lcm(&den, c.denom());
    }
    let z: Vec<BigInt> = f.0.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let z = zassenhaus::primitive(&z);
    let mut out: Vec<UniPoly> = zassenhaus::factor_squarefree(&z, rng)
        .into_iter()
        .map(|g| UniPoly::from_coeffs(g.into_iter().map(BigRational::from_integer).collect()).monic())
        .collect();
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)));
    out
}

fn y_degree(m: &Monomial, x: usize) -> u32 {
    m.degree() - m.exponents()[x]
}

fn truncate(p: &Polynomial, x: usize, k: u32) -> Polynomial {
    Polynomial::from_terms(
        p.ring(),
        p.terms()
            .filter(|(m, _)| y_degree(m, x) <= k)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

fn small_int<R: Rng>(rng: &mut R, bound: i64, nonzero: bool) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if !nonzero || v != 0 {
            return v;
        }
    }
}

/// Irreducible factors of a squarefree polynomial, primitive in `x`, in at
/// least two variables.
fn factor_squarefree_multi<R: Rng>(f: &Polynomial, x: usize, rng: &mut R) -> Result<Vec<Polynomial>> {
    if f.degree_in(x) <= 1 {
        return Ok(vec![f.normalized()]);
    }
    let ring = f.ring().clone();
    let ys: Vec<usize> = f.vars_present().into_iter().filter(|&v| v != x).collect();
    if ys.is_empty() {
        return Ok(factor_one_var(f, x, rng).into_iter().map(|(g, _)| g).collect());
    }
    let xp = Polynomial::variable(&ring, x);

    // Shear y -> y + lambda x until the leading coefficient in x is constant.
    let mut lambda: BTreeMap<usize, i64> = ys.iter().map(|&y| (y, 0)).collect();
    let mut g = f.clone();
    let mut tries = 0;
    while !g.coefficients_in(x).last().unwrap().is_constant() {
        tries += 1;
        if tries > MAX_RETRIES {
            return Err(Error::ResourceExhausted("no admissible shear found".into()));
        }
        let bound = 2 + tries as i64 / 4;
        for &y in &ys {
            lambda.insert(y, small_int(rng, bound, true));
        }
        let sub: BTreeMap<usize, Polynomial> = lambda
            .iter()
            .map(|(&y, &l)| (y, &Polynomial::variable(&ring, y) + &xp.scale(&BigRational::from_integer(l.into()))))
            .collect();
        g = f.substitute(&sub, &ring)?;
    }
    let g = g.monic_in(x);
    let n = g.degree_in(x);

    // Evaluation point with a squarefree image.
    let mut alpha: BTreeMap<usize, i64> = ys.iter().map(|&y| (y, 0)).collect();
    let mut image = evaluate(&g, &alpha, x);
    let mut tries = 0;
    while image.degree() != n as usize || image.gcd(&image.derivative()).degree() > 0 {
        tries += 1;
        if tries > MAX_RETRIES {
            return Err(Error::ResourceExhausted("no squarefree evaluation point found".into()));
        }
        let bound = 1 + tries as i64 / 3;
        for &y in &ys {
            alpha.insert(y, small_int(rng, bound, false));
        }
        image = evaluate(&g, &alpha, x);
    }
    let uni = factor_squarefree_uni(&image, rng);
    if uni.len() == 1 {
        return Ok(vec![f.normalized()]);
    }

    // Move the evaluation point to the origin.
    let shift: BTreeMap<usize, Polynomial> = alpha
        .iter()
        .map(|(&y, &a)| (y, &Polynomial::variable(&ring, y) + &Polynomial::from_int(&ring, a)))
        .collect();
    let big = g.substitute(&shift, &ring)?;
    let dmax = big.terms().map(|(m, _)| y_degree(m, x)).max().unwrap_or(0);
    let lifted = lift(&big, &uni, x, dmax);

    // Recombine: every true factor is a product of lifted factors.
    let mut remaining = big;
    let mut pool = lifted;
    let mut found = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= pool.len() {
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let h = idx
                .iter()
                .fold(Polynomial::one(&ring), |acc, &i| truncate(&(&acc * &pool[i]), x, dmax));
            if let Ok(q) = remaining.exact_divide(&h) {
                found.push(h);
                remaining = q;
                for &i in idx.iter().rev() {
                    pool.remove(i);
                }
                continue 'outer;
            }
            if !next_combination(&mut idx, pool.len()) {
                break;
            }
        }
        s += 1;
    }
    found.push(remaining);

    // Undo the shift and the shear together.
    let back: BTreeMap<usize, Polynomial> = ys
        .iter()
        .map(|&y| {
            let l = BigRational::from_integer(lambda[&y].into());
            let a = Polynomial::from_int(&ring, alpha[&y]);
            (y, &(&Polynomial::variable(&ring, y) - &xp.scale(&l)) - &a)
        })
        .collect();
    found
        .iter()
        .map(|h| Ok(h.substitute(&back, &ring)?.normalized()))
        .collect()
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let s = idx.len();
    let mut i = s;
    while i > 0 {
        i -= 1;
        if idx[i] < n - s + i {
            idx[i] += 1;
            for j in i + 1..s {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn evaluate(g: &Polynomial, alpha: &BTreeMap<usize, i64>, x: usize) -> UniPoly {
    let mut h = g.clone();
    for (&y, &a) in alpha {
        h = h.evaluate_var(y, &BigRational::from_integer(a.into()));
    }
    UniPoly::from_polynomial(&h, x).expect("only x remains")
}

/// Lift `g(x, 0) = prod u_i` to factors of `g` modulo `(y)^{dmax + 1}`.
fn lift(g: &Polynomial, u: &[UniPoly], x: usize, dmax: u32) -> Vec<Polynomial> {
    let ring = g.ring();
    let r = u.len();
    let sigma: Vec<UniPoly> = (0..r)
        .map(|i| {
            let others = (0..r).filter(|&l| l != i).fold(UniPoly::one(), |acc, l| acc.mul(&u[l]));
            let (_, s, _) = others.ext_gcd(&u[i]);
            s.rem(&u[i])
        })
        .collect();
    let mut fs: Vec<Polynomial> = u.iter().map(|ui| ui.to_polynomial(ring, x)).collect();
    for k in 1..=dmax {
        let prod = fs
            .iter()
            .fold(Polynomial::one(ring), |acc, f| truncate(&(&acc * f), x, k));
        let err = &truncate(g, x, k) - &prod;
        // Group the degree-k error by y-monomial.
        let mut groups: BTreeMap<Monomial, Vec<BigRational>> = BTreeMap::new();
        for (m, c) in err.terms() {
            if y_degree(m, x) != k {
                continue;
            }
            let mut e = m.exponents().to_vec();
            let ex = e[x] as usize;
            e[x] = 0;
            let slot = groups.entry(Monomial::from_exponents(e)).or_default();
            if slot.len() <= ex {
                slot.resize(ex + 1, BigRational::zero());
            }
            slot[ex] = c.clone();
        }
        for (mu, coeffs) in groups {
            let c = UniPoly::from_coeffs(coeffs);
            for i in 0..r {
                let delta = c.mul(&sigma[i]).rem(&u[i]);
                if delta.is_zero() {
                    continue;
                }
                let term = &delta.to_polynomial(ring, x) * &Polynomial::monomial(ring, mu.clone(), BigRational::one());
                fs[i] = &fs[i] + &term;
            }
        }
    }
    fs
}

trait MonicIn {
    fn monic_in(&self, x: usize) -> Polynomial;
}

impl MonicIn for Polynomial {
    fn monic_in(&self, x: usize) -> Polynomial {
        let lc = self.coefficients_in(x).last().unwrap().constant_value().expect("constant");
        self.scale(&lc.recip())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn uv() -> (Ring, Polynomial, Polynomial) {
        let r = Ring::new(["u", "v"]);
        (r.clone(), Polynomial::var(&r, "u").unwrap(), Polynomial::var(&r, "v").unwrap())
    }

    #[test]
    fn univariate_examples() {
        let r = Ring::new(["t"]);
        let t = Polynomial::var(&r, "t").unwrap();
        let one = Polynomial::one(&r);
        let f = factor_univariate(&(&t.pow(2) - &one)).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.contains(&(&t + &one, 1)) && f.factors.contains(&(&t - &one, 1)));
        assert!(factor_univariate(&(&t.pow(2) + &one)).unwrap().is_irreducible());
        let f = factor_univariate(&(&t.pow(3) - &t.pow(2))).unwrap();
        assert_eq!(f.factors, vec![(t.clone(), 2), (&t - &one, 1)]);
    }

    #[test]
    fn multivariate_examples() {
        let (r, u, v) = uv();
        let p = &(&u.pow(2) * &v) * &(&u + &v);
        let f = factor(&p).unwrap();
        assert_eq!(f.factors, vec![(u.clone(), 2), (v.clone(), 1), (&u + &v, 1)]);
        let cusp = &v.pow(2) - &u.pow(3);
        assert!(is_irreducible(&cusp).unwrap());
        let f = factor(&(&u.pow(2) - &v.pow(2))).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.iter().any(|(g, _)| *g == (&u - &v).normalized()));
        assert!(f.factors.iter().any(|(g, _)| *g == &u + &v));
        assert!(is_irreducible(&(&u + &v)).unwrap());
        assert!(!is_irreducible(&(&u * &v)).unwrap());
        assert!(is_irreducible(&Polynomial::one(&r)).is_err());
    }

    #[test]
    fn needs_shear_and_recombination() {
        let r = Ring::new(["x", "y", "z"]);
        let p = |s| Polynomial::var(&r, s).unwrap();
        let one = Polynomial::one(&r);
        let a = &(&(&p("x") * &p("y")) + &p("z").pow(2)) + &one;
        let b = &(&p("x").pow(2) * &p("z")) - &(&p("y").pow(3) * &p("x"));
        let c = &(&p("x") + &p("y")) + &p("z");
        let prod = &(&a * &b.pow(2)) * &c;
        let f = factor(&prod).unwrap();
        assert_eq!(f.expand(&r), prod);
        let mut got: Vec<(Polynomial, u32)> = f.factors.clone();
        got.sort();
        let mut want = vec![
            (a.normalized(), 1),
            (p("x"), 2),
            ((&(&p("x") * &p("z")) - &p("y").pow(3)).normalized(), 2),
            (c.normalized(), 1),
        ];
        want.sort();
        assert_eq!(got, want);
    }
}
