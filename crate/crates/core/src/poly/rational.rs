use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::gcd::gcd_rec;
use super::{Polynomial, Ring};
use crate::error::{Error, Result};

/// A quotient of polynomials in canonical form.
///
/// The denominator is integer-primitive with positive graded-lex leading
/// coefficient, numerator and denominator are coprime, and any rational
/// constant lives in the numerator. Equality is therefore syntactic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<RationalFunction> {
        num.check_ring(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                den: Polynomial::one(num.ring()),
                num,
            });
        }
        let g = gcd_rec(&num, &den);
        let num = num.exact_divide(&g).expect("gcd divides");
        let den = den.exact_divide(&g).expect("gcd divides");
        let (c, den) = den.primitive_split();
        Ok(RationalFunction {
            num: num.scale(&c.recip()),
            den,
        })
    }

    pub fn from_poly(p: Polynomial) -> RationalFunction {
        RationalFunction {
            den: Polynomial::one(p.ring()),
            num: p,
        }
    }

    pub fn constant(ring: &Ring, c: BigRational) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::constant(ring, c))
    }

    pub fn one(ring: &Ring) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::one(ring))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn ring(&self) -> &Ring {
        self.num.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.num.check_ring(&other.num)?;
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RationalFunction::new(num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.num.check_ring(&other.num)?;
        RationalFunction::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn recip(&self) -> Result<RationalFunction> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.mul(&other.recip()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i64) -> Result<RationalFunction> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        Ok(RationalFunction {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Re-express in a larger ring.
    pub fn embed(&self, target: &Ring) -> Result<RationalFunction> {
        Ok(RationalFunction {
            num: self.num.embed(target)?,
            den: self.den.embed(target)?,
        })
    }

    /// Exact composite under rational-function bindings into `target`.
    /// Unbound variables map to the same-named variable of `target`.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<usize, RationalFunction>,
        target: &Ring,
    ) -> Result<RationalFunction> {
        let n = substitute_poly(&self.num, bindings, target)?;
        let d = substitute_poly(&self.den, bindings, target)?;
        n.div(&d)
    }
}

/// Substitute rational functions into a polynomial.
pub fn substitute_poly(
    p: &Polynomial,
    bindings: &BTreeMap<usize, RationalFunction>,
    target: &Ring,
) -> Result<RationalFunction> {
    if bindings.values().all(RationalFunction::is_polynomial) {
        let polys = bindings
            .iter()
            .map(|(k, v)| (*k, v.num.clone()))
            .collect();
        return Ok(RationalFunction::from_poly(p.substitute(&polys, target)?));
    }
    // Put everything over the common denominator prod d_i^{deg_i p}.
    let degs: Vec<u32> = (0..p.ring().len()).map(|i| p.degree_in(i)).collect();
    let mut nums = BTreeMap::new();
    let mut common = Polynomial::one(target);
    for (&i, f) in bindings {
        if f.ring() != target {
            return Err(Error::RingMismatch(format!(
                "binding lives in {}, expected {target}",
                f.ring()
            )));
        }
        common = &common * &f.den.pow(degs[i]);
    }
    let mut out = Polynomial::zero(target);
    for (m, c) in p.terms() {
        let mut term = Polynomial::constant(target, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            match bindings.get(&i) {
                Some(f) => {
                    let pw = nums
                        .entry((i, e))
                        .or_insert_with(|| {
                            &f.num.pow(e) * &f.den.pow(degs[i] - e)
                        })
                        .clone();
                    term = &term * &pw;
                }
                None if e > 0 => {
                    term = &term * &Polynomial::var(target, p.ring().var_name(i))?.pow(e);
                }
                None => {}
            }
        }
        out = &out + &term;
    }
    RationalFunction::new(out, common)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Polynomial| {
            if p.num_terms() > 1 || p.terms().any(|(_, c)| !c.is_integer()) {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn canonical_form() {
        let r = Ring::new(["u", "v"]);
        let u = Polynomial::var(&r, "u").unwrap();
        let v = Polynomial::var(&r, "v").unwrap();
        let num = &(&u * &u) - &(&v * &v);
        let den = (&u + &v).scale(&rat(-3));
        let f = RationalFunction::new(num, den).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f.numerator(), &(&v - &u).scale(&BigRational::new(1.into(), 3.into())));
        let g = RationalFunction::new(u.scale(&rat(2)), v.scale(&rat(4))).unwrap();
        assert_eq!(g.to_string(), "(1/2*u)/v");
        assert_eq!(g, RationalFunction::new(u.clone(), v.scale(&rat(2))).unwrap());
    }

    #[test]
    fn arithmetic_round_trips() {
        let r = Ring::new(["u", "v"]);
        let u = RationalFunction::from_poly(Polynomial::var(&r, "u").unwrap());
        let v = RationalFunction::from_poly(Polynomial::var(&r, "v").unwrap());
        let q = u.div(&v).unwrap();
        assert_eq!(q.mul(&v).unwrap(), u);
        assert_eq!(q.pow(-2).unwrap(), v.mul(&v).unwrap().div(&u.mul(&u).unwrap()).unwrap());
        assert!(q.sub(&q).unwrap().is_zero());
    }
}
