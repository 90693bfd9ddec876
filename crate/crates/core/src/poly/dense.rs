//! Dense univariate polynomials over the rationals, used by the factoring
//! and zero-dimensional kernels.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Monomial, Polynomial, Ring};

/// Coefficients in ascending degree; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly(pub Vec<BigRational>);

impl UniPoly {
    pub fn zero() -> UniPoly {
        UniPoly(vec![])
    }

    pub fn one() -> UniPoly {
        UniPoly(vec![BigRational::one()])
    }

    pub fn x() -> UniPoly {
        UniPoly(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn constant(c: BigRational) -> UniPoly {
        UniPoly(vec![c]).trimmed()
    }

    pub fn from_coeffs(c: Vec<BigRational>) -> UniPoly {
        UniPoly(c).trimmed()
    }

    fn trimmed(mut self) -> UniPoly {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; zero has degree 0 here, check `is_zero` separately.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().recip();
        UniPoly(self.0.iter().map(|c| c * &inv).collect())
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        UniPoly(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
        .trimmed()
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> UniPoly {
        UniPoly(self.0.iter().map(|a| a * c).collect()).trimmed()
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly(out).trimmed()
    }

    pub fn pow(&self, k: u32) -> UniPoly {
        let mut r = UniPoly::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Quotient and remainder; panics when dividing by zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dd = d.degree();
        let inv = d.lc().recip();
        if r.len() < d.0.len() {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.0.iter().enumerate() {
                r[k + j] -= &c * b;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly(q).trimmed(), UniPoly(r).trimmed())
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g` and `g` monic.
    pub fn ext_gcd(&self, o: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer((i as i64).into()))
                .collect(),
        )
        .trimmed()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Read off a polynomial that involves at most variable `var`.
    pub fn from_polynomial(p: &Polynomial, var: usize) -> Option<UniPoly> {
        let mut c = vec![BigRational::zero(); p.degree_in(var) as usize + 1];
        for (m, a) in p.terms() {
            if m.exponents()
                .iter()
                .enumerate()
                .any(|(i, &e)| i != var && e > 0)
            {
                return None;
            }
            c[m.exponents()[var] as usize] = a.clone();
        }
        Some(UniPoly(c).trimmed())
    }

    pub fn to_polynomial(&self, ring: &Ring, var: usize) -> Polynomial {
        Polynomial::from_terms(
            ring,
            self.0.iter().enumerate().map(|(e, c)| {
                let mut m = vec![0; ring.len()];
                m[var] = e as u32;
                (Monomial::from_exponents(m), c.clone())
            }),
        )
    }

    /// Evaluate at a polynomial (Horner).
    pub fn compose(&self, p: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(p.ring());
        for c in self.0.iter().rev() {
            acc = &(&acc * p) + &Polynomial::constant(p.ring(), c.clone());
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn division_and_bezout() {
        let a = up(&[-1, 0, 1]); // x^2 - 1
        let b = up(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, up(&[-1, 1]));
        assert!(r.is_zero());
        let (g, s, t) = up(&[1, 0, 1]).ext_gcd(&up(&[0, 1]));
        assert_eq!(g, UniPoly::one());
        assert_eq!(s.mul(&up(&[1, 0, 1])).add(&t.mul(&up(&[0, 1]))), UniPoly::one());
    }
}
