//! Dense univariate polynomials over a small prime field and their
//! factorization (distinct-degree, then Cantor–Zassenhaus).

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

/// Coefficients ascending, trimmed, reduced into `[0, p)`.
pub(crate) type Fp = Vec<u64>;

pub(crate) fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv(a: u64, p: u64) -> u64 {
    powu(a, p - 2, p)
}

fn powu(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

pub(crate) fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub(crate) fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub(crate) fn div_rem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty());
    let mut r = a.clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let db = b.len() - 1;
    let il = inv(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * il % p;
        if c == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * y % p) % p;
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub(crate) fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    div_rem(a, b, p).1
}

pub(crate) fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => vec![],
        Some(&l) => {
            let il = inv(l, p);
            a.iter().map(|&c| c * il % p).collect()
        }
    }
}

pub(crate) fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(s, t)` with `s a + t b = 1`, for coprime `a`, `b`.
pub(crate) fn bezout(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], vec![]);
    let (mut t0, mut t1): (Fp, Fp) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    debug_assert_eq!(r0.len(), 1, "inputs must be coprime");
    let il = inv(r0[0], p);
    let sc = |v: Fp| v.into_iter().map(|c| c * il % p).collect::<Fp>();
    (trim(sc(s0)), trim(sc(t0)))
}

fn derivative(a: &Fp, p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

pub(crate) fn is_squarefree(a: &Fp, p: u64) -> bool {
    gcd(a, &derivative(a, p), p).len() == 1
}

fn powmod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut r: Fp = vec![1];
    let b = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        r = rem(&mul(&r, &r, p), m, p);
        if e.bit(i) {
            r = rem(&mul(&r, &b, p), m, p);
        }
    }
    r
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn ddf(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut i = 0;
    while f.len() > 2 * (i + 1) {
        i += 1;
        h = powmod(&h, &pe, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if g.len() > 1 {
            f = div_rem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, i));
        }
    }
    if f.len() > 1 {
        let d = f.len() - 1;
        out.push((f, d));
    }
    out
}

/// Equal-degree splitting of a product of irreducibles of degree `d`.
fn edf<R: Rng>(f: &Fp, d: usize, p: u64, rng: &mut R, out: &mut Vec<Fp>) {
    let n = f.len() - 1;
    if n == d {
        out.push(f.clone());
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let g = gcd(&a, f, p);
        let g = if g.len() > 1 {
            g
        } else {
            let b = sub(&powmod(&a, &e, f, p), &vec![1], p);
            if b.is_empty() {
                continue;
            }
            gcd(&b, f, p)
        };
        if g.len() > 1 && g.len() < f.len() {
            let q = div_rem(f, &g, p).0;
            edf(&g, d, p, rng, out);
            edf(&monic(&q, p), d, p, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors of a monic squarefree polynomial mod odd `p`.
pub(crate) fn factor_squarefree<R: Rng>(f: &Fp, p: u64, rng: &mut R) -> Vec<Fp> {
    let mut out = Vec::new();
    for (g, d) in ddf(f, p) {
        edf(&g, d, p, rng, &mut out);
    }
    out.sort();
    out
}

pub(crate) fn from_bigints(c: &[num_bigint::BigInt], p: u64) -> Fp {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let pb = BigInt::from(p);
    trim(
        c.iter()
            .map(|x| x.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}
