//! Multivariate gcd by recursion on a main variable with subresultant
//! remainder sequences over the coefficient ring of the other variables.

use num_traits::One;

use super::Polynomial;
use crate::error::{Error, Result};

/// A greatest common divisor, integer-primitive with positive leading
/// coefficient. `gcd(p, 0)` is the normalized `p`.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.check_ring(q)?;
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroInput("gcd of two zero polynomials"));
    }
    Ok(gcd_rec(p, q).normalized())
}

pub(crate) fn gcd_rec(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return q.normalized();
    }
    if q.is_zero() {
        return p.normalized();
    }
    if p.is_constant() || q.is_constant() {
        return Polynomial::one(p.ring());
    }
    let pv = p.vars_present();
    let qv = q.vars_present();
    let common: Vec<usize> = pv.iter().copied().filter(|v| qv.contains(v)).collect();
    if common.is_empty() {
        // Everything of p is a coefficient from q's point of view.
        let x = qv[0];
        return gcd_rec(p, &content_in(q, x));
    }
    // If some variable occurs in only one argument, fold it into the content.
    if let Some(&x) = pv.iter().find(|v| !qv.contains(v)) {
        return gcd_rec(&content_in(p, x), q);
    }
    if let Some(&x) = qv.iter().find(|v| !pv.contains(v)) {
        return gcd_rec(p, &content_in(q, x));
    }
    let x = *common
        .iter()
        .min_by_key(|&&v| p.degree_in(v).max(q.degree_in(v)))
        .unwrap();
    let cp = content_in(p, x);
    let cq = content_in(q, x);
    let pp = p.exact_divide(&cp).expect("content divides");
    let qp = q.exact_divide(&cq).expect("content divides");
    let c = gcd_rec(&cp, &cq);
    let g = subresultant_gcd(&pp, &qp, x);
    (&c * &g).normalized()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let coeffs = p.coefficients_in(var);
    let mut g = Polynomial::zero(p.ring());
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = gcd_rec(&g, c);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        Polynomial::one(p.ring())
    } else {
        g
    }
}

fn primitive_in(p: &Polynomial, var: usize) -> Polynomial {
    let c = content_in(p, var);
    p.exact_divide(&c).expect("content divides").normalized()
}

type Upoly = Vec<Polynomial>;

fn udeg(a: &Upoly) -> usize {
    a.len() - 1
}

fn trim(a: &mut Upoly) {
    while a.len() > 1 && a.last().unwrap().is_zero() {
        a.pop();
    }
}

fn is_zero_u(a: &Upoly) -> bool {
    a.iter().all(Polynomial::is_zero)
}

/// Pseudo-remainder of `a` by `b` (both in the coefficient view).
fn prem(a: &Upoly, b: &Upoly) -> Upoly {
    let m = udeg(b);
    let lb = b[m].clone();
    let mut r = a.clone();
    let n = udeg(a);
    let mut steps = 0usize;
    while !is_zero_u(&r) && udeg(&r) >= m {
        let d = udeg(&r);
        let lr = r[d].clone();
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            let t = &lr * bc;
            r[i + d - m] = &r[i + d - m] - &t;
        }
        r.pop();
        trim(&mut r);
        steps += 1;
    }
    let extra = (n + 1 - m).saturating_sub(steps);
    if extra > 0 {
        let f = lb.pow(extra as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn subresultant_gcd(p: &Polynomial, q: &Polynomial, x: usize) -> Polynomial {
    let ring = p.ring().clone();
    let (mut a, mut b) = (p.coefficients_in(x), q.coefficients_in(x));
    if udeg(&a) < udeg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = Polynomial::one(&ring);
    let mut h = Polynomial::one(&ring);
    loop {
        let delta = (udeg(&a) - udeg(&b)) as u32;
        let r = prem(&a, &b);
        if is_zero_u(&r) {
            break;
        }
        if udeg(&r) == 0 {
            return Polynomial::one(&ring);
        }
        a = b;
        let div = &g * &h.pow(delta);
        b = r
            .iter()
            .map(|c| c.exact_divide(&div).expect("subresultant division is exact"))
            .collect();
        g = a[udeg(&a)].clone();
        if delta > 0 {
            h = g
                .pow(delta)
                .exact_divide(&h.pow(delta - 1))
                .expect("subresultant division is exact");
        }
    }
    primitive_in(&Polynomial::from_coefficients_in(&ring, x, &b), x)
}

/// Product of the distinct irreducible factors of `p`, normalized.
pub fn squarefree_part(p: &Polynomial) -> Result<Polynomial> {
    if p.is_zero() {
        return Err(Error::ZeroInput("squarefree part of zero"));
    }
    let mut g = p.clone();
    for v in p.vars_present() {
        g = gcd_rec(&g, &p.derivative(v));
        if g.is_constant() {
            break;
        }
    }
    let out = p.exact_divide(&g).expect("gcd divides");
    let (_, n) = out.primitive_split();
    Ok(if n.is_zero() {
        Polynomial::constant(p.ring(), num_rational::BigRational::one())
    } else {
        n
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn vars() -> (Polynomial, Polynomial) {
        let r = Ring::new(["u", "v"]);
        (
            Polynomial::var(&r, "u").unwrap(),
            Polynomial::var(&r, "v").unwrap(),
        )
    }

    #[test]
    fn gcd_examples() {
        let (u, v) = vars();
        let a = &u.pow(2) * &v;
        let b = &u * &v.pow(2);
        assert_eq!(gcd(&a, &b).unwrap(), &u * &v);
        assert!(gcd(&(&u + &v), &(&u - &v)).unwrap().is_one());
        let p = &u.scale(&crate::poly::rat(-2)) + &v;
        assert_eq!(gcd(&p, &Polynomial::zero(u.ring())).unwrap(), p.normalized());
        assert!(gcd(&Polynomial::zero(u.ring()), &Polynomial::zero(u.ring())).is_err());
    }

    #[test]
    fn gcd_with_common_nonlinear_factor() {
        let (u, v) = vars();
        let cusp = &v.pow(2) - &u.pow(3);
        let a = &cusp * &(&u + &Polynomial::one(u.ring()));
        let b = &cusp.pow(2) * &(&v - &u);
        assert_eq!(gcd(&a, &b).unwrap(), cusp.normalized());
    }

    #[test]
    fn squarefree_examples() {
        let (u, v) = vars();
        assert_eq!(squarefree_part(&(&u.pow(2) * &v)).unwrap(), &u * &v);
        assert_eq!(squarefree_part(&(&u + &v)).unwrap(), &u + &v);
        let s = &u + &v;
        let d = &u - &v;
        let p = &s.pow(3) * &d;
        // oracle: p / gcd(p, dp/du)
        let g = gcd(&p, &p.derivative(0)).unwrap();
        let oracle = p.exact_divide(&g).unwrap().normalized();
        assert_eq!(squarefree_part(&p).unwrap(), oracle);
        assert_eq!(oracle, (&s * &d).normalized());
    }
}
