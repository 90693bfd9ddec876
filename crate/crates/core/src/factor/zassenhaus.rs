//! Factorization of squarefree integer polynomials in one variable:
//! factor modulo a good prime, lift the factors p-adically, recombine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::modp::{self, Fp};

/// Integer polynomial, coefficients ascending, trimmed.
pub(crate) type Zp = Vec<BigInt>;

fn trim(mut a: Zp) -> Zp {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn mul(a: &Zp, b: &Zp) -> Zp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn reduce_mod(a: &Zp, m: &BigInt) -> Zp {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(a: &Zp, m: &BigInt) -> Zp {
    let half = m >> 1;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

pub(crate) fn content(a: &Zp) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divide out the content and make the leading coefficient positive.
pub(crate) fn primitive(a: &Zp) -> Zp {
    let mut g = content(a);
    if g.is_zero() {
        return vec![];
    }
    if a.last().unwrap().is_negative() {
        g = -g;
    }
    a.iter().map(|c| c / &g).collect()
}

/// Exact quotient `a / b` in ℤ[x], or `None`.
fn divide_exact(a: &Zp, b: &Zp) -> Option<Zp> {
    if b.len() > a.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut r = a.clone();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &c * y;
        }
        q[k] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(trim(q))
}

fn lift_fp(a: &Fp) -> Zp {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|n| (3..).step_by(2).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

/// Multifactor linear Hensel lifting of monic factors of `f / lc(f)` from
/// modulus `p` to `p^k`.
fn hensel_lift(f: &Zp, factors: &[Fp], p: u64, k: u32) -> Vec<Zp> {
    let pb = BigInt::from(p);
    let mk = pb.pow(k);
    let lc = f.last().unwrap();
    let lc_inv = mod_inverse(lc, &mk);
    let target = reduce_mod(&f.iter().map(|c| c * &lc_inv).collect(), &mk);

    let r = factors.len();
    let sigma: Vec<Fp> = (0..r)
        .map(|i| {
            let others = (0..r)
                .filter(|&l| l != i)
                .fold(vec![1u64], |acc, l| modp::mul(&acc, &factors[l], p));
            let (s, _) = modp::bezout(&others, &factors[i], p);
            modp::rem(&s, &factors[i], p)
        })
        .collect();

    let mut g: Vec<Zp> = factors.iter().map(lift_fp).collect();
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let prod = g.iter().fold(vec![BigInt::one()], |a, b| reduce_mod(&mul(&a, b), &next));
        let n = target.len().max(prod.len());
        let z = BigInt::zero();
        let err: Zp = (0..n)
            .map(|i| {
                let d = target.get(i).unwrap_or(&z) - prod.get(i).unwrap_or(&z);
                let d = d.mod_floor(&next);
                debug_assert!((&d % &pj).is_zero());
                d / &pj
            })
            .collect();
        let e = modp::from_bigints(&err, p);
        for i in 0..r {
            let fi = modp::from_bigints(&g[i], p);
            let delta = modp::rem(&modp::mul(&e, &sigma[i], p), &fi, p);
            let mut gi = std::mem::take(&mut g[i]);
            for (j, c) in delta.iter().enumerate() {
                if j >= gi.len() {
                    gi.resize(j + 1, BigInt::zero());
                }
                gi[j] += &pj * BigInt::from(*c);
            }
            g[i] = trim(gi);
        }
        pj = next;
    }
    g
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Irreducible factors of a primitive squarefree `f` with positive leading
/// coefficient and degree at least one.
pub(crate) fn factor_squarefree<R: Rng>(f: &Zp, rng: &mut R) -> Vec<Zp> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.last().unwrap().clone();

    // Try a few good primes and keep the one with the fewest modular factors.
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = modp::monic(&modp::from_bigints(f, p), p);
        if !modp::is_squarefree(&fp, p) {
            continue;
        }
        let fs = modp::factor_squarefree(&fp, p, rng);
        if fs.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 3 {
            break;
        }
    }
    let (p, modular) = best.expect("some prime is good");

    // Any factor's coefficients, scaled by lc(f), stay below lc * 2^n * |f|_2.
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut mk = pb.clone();
    while mk <= bound {
        mk *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &modular, p, k);
    recombine(f.clone(), lifted, &mk)
}

fn recombine(mut f: Zp, mut g: Vec<Zp>, m: &BigInt) -> Vec<Zp> {
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= g.len() {
        let r = g.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let lc = f.last().unwrap().clone();
            let cand = idx
                .iter()
                .fold(vec![lc], |acc, &i| reduce_mod(&mul(&acc, &g[i]), m));
            let h = primitive(&symmetric(&cand, m));
            if h.len() > 1 {
                if let Some(q) = divide_exact(&f, &h) {
                    out.push(h);
                    f = q;
                    for &i in idx.iter().rev() {
                        g.remove(i);
                    }
                    continue 'outer;
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        s += 1;
    }
    let f = primitive(&f);
    if f.len() > 1 {
        out.push(f);
    }
    out
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
