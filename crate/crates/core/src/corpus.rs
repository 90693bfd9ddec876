//! Seeded random fixtures for every identity, run independently and
//! reported in index order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::deformation::{
    check_action_invariance, graph_closure, linear_action, normal_cone, normal_cone_by_elimination,
    tangent_action, tangent_action_with, truncated_action,
};
use crate::divisor_calc::{
    excess, intersect_cycle, principal_divisor, verify_commute, verify_difference, verify_projection,
    verify_reciprocity, Cycle, RatEquivElement, Subvariety,
};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::factor::factor;
use crate::groebner::Ideal;
use crate::poly::{Monomial, Polynomial, RationalFunction, Ring};
use crate::zerodim::{intersection_multiplicity, ClosedPoint};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_MAX_DEGREE: u32 = 3;
const RESAMPLES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CorpusVerb {
    Reciprocity,
    Commute,
    Difference,
    Proper,
    Fulton,
    Cones,
    Equivariance,
    Projection,
}

impl CorpusVerb {
    pub const ALL: [CorpusVerb; 8] = [
        CorpusVerb::Reciprocity,
        CorpusVerb::Commute,
        CorpusVerb::Difference,
        CorpusVerb::Proper,
        CorpusVerb::Fulton,
        CorpusVerb::Cones,
        CorpusVerb::Equivariance,
        CorpusVerb::Projection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CorpusVerb::Reciprocity => "reciprocity",
            CorpusVerb::Commute => "commute",
            CorpusVerb::Difference => "difference",
            CorpusVerb::Proper => "proper",
            CorpusVerb::Fulton => "fulton",
            CorpusVerb::Cones => "cones",
            CorpusVerb::Equivariance => "equivariance",
            CorpusVerb::Projection => "projection",
        }
    }

    fn tag(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for CorpusVerb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorpusVerb {
    type Err = Error;

    fn from_str(s: &str) -> Result<CorpusVerb> {
        CorpusVerb::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown corpus verb '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    pub seed: u64,
    pub count: usize,
    pub max_degree: u32,
    pub exec: Exec,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: DEFAULT_SEED,
            count: 50,
            max_degree: DEFAULT_MAX_DEGREE,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    OutOfScope,
    Exhausted,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::OutOfScope => "OUT-OF-SCOPE",
            Verdict::Exhausted => "RESOURCE-EXHAUSTED",
        })
    }
}

/// One fixture: its inputs and computed facts in canonical text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureReport {
    pub verb: CorpusVerb,
    pub index: usize,
    pub seed: u64,
    pub inputs: BTreeMap<String, String>,
    pub facts: BTreeMap<String, String>,
    pub verdict: Verdict,
}

impl FixtureReport {
    pub fn fact(&self, key: &str) -> Option<&str> {
        self.facts.get(key).map(String::as_str)
    }
}

/// Verdicts per verb, in index order.
pub fn run_corpus(verb: CorpusVerb, cfg: &CorpusConfig) -> Vec<FixtureReport> {
    let indices: Vec<usize> = (0..cfg.count).collect();
    exec::map(cfg.exec, &indices, |&i| run_fixture(verb, cfg, i))
}

/// The seed of fixture `index`, independent of the execution order.
pub fn fixture_seed(seed: u64, verb: CorpusVerb, index: usize) -> u64 {
    let mut z = seed
        .wrapping_add(verb.tag().wrapping_mul(0xd1b5_4a32_d192_ed03))
        .wrapping_add((index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn run_fixture(verb: CorpusVerb, cfg: &CorpusConfig, index: usize) -> FixtureReport {
    let seed = fixture_seed(cfg.seed, verb, index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = FixtureReport {
        verb,
        index,
        seed,
        inputs: BTreeMap::new(),
        facts: BTreeMap::new(),
        verdict: Verdict::Pass,
    };
    let d = cfg.max_degree.max(1);
    let outcome = match verb {
        CorpusVerb::Reciprocity => reciprocity(&mut rng, d, index, &mut report),
        CorpusVerb::Commute => commute(&mut rng, d, &mut report),
        CorpusVerb::Difference => difference(&mut rng, d, index, &mut report),
        CorpusVerb::Proper => proper(&mut rng, d, &mut report),
        CorpusVerb::Fulton => fulton(&mut rng, d, &mut report),
        CorpusVerb::Cones => cones(&mut rng, (d + 1).min(4), &mut report),
        CorpusVerb::Equivariance => equivariance(&mut rng, d, &mut report),
        CorpusVerb::Projection => projection(&mut rng, d, &mut report),
    };
    report.verdict = match outcome {
        Ok(true) => Verdict::Pass,
        Ok(false) => Verdict::Fail,
        Err(e) => {
            report.facts.insert("error".into(), e.to_string());
            match e {
                Error::OutOfScope(_) => Verdict::OutOfScope,
                Error::ResourceExhausted(_) => Verdict::Exhausted,
                _ => Verdict::Fail,
            }
        }
    };
    report
}

fn plane() -> Ring {
    Ring::new(["u", "v"])
}

fn small<R: Rng>(rng: &mut R) -> BigRational {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-5i64..=5);
    }
    BigRational::from_integer(BigInt::from(c))
}

/// A sparse polynomial of total degree between 1 and `max_deg`.
pub fn random_polynomial<R: Rng>(rng: &mut R, ring: &Ring, max_deg: u32, max_terms: usize, constant: f64) -> Polynomial {
    let n = ring.len();
    loop {
        let mut monos: Vec<Monomial> = Vec::new();
        for _ in 0..rng.gen_range(1..=max_terms) {
            let deg = rng.gen_range(1..=max_deg);
            let mut e = vec![0u32; n];
            for _ in 0..deg {
                e[rng.gen_range(0..n)] += 1;
            }
            monos.push(Monomial::from_exponents(e));
        }
        if rng.gen_bool(constant) {
            monos.push(Monomial::one(n));
        }
        let p = Polynomial::from_terms(ring, monos.into_iter().map(|m| (m, small(rng))));
        if !p.is_constant() {
            return p;
        }
    }
}

/// An irreducible factor of a random polynomial, normalized.
pub fn random_irreducible<R: Rng>(rng: &mut R, ring: &Ring, max_deg: u32) -> Result<Polynomial> {
    let p = random_polynomial(rng, ring, max_deg, 3, 0.5);
    let f = factor(&p)?;
    let (q, _) = f.factors.choose(rng).expect("non-constant input has a factor");
    Ok(q.normalized())
}

/// A product of `k` random irreducibles with exponents in `exps`, avoiding
/// the listed factors.
fn random_function<R: Rng>(
    rng: &mut R,
    ring: &Ring,
    max_deg: u32,
    k: std::ops::RangeInclusive<usize>,
    exps: &[i64],
    avoid: &[Polynomial],
) -> Result<Vec<(Polynomial, i64)>> {
    let k = rng.gen_range(k);
    let mut out: Vec<(Polynomial, i64)> = Vec::new();
    let mut tries = 0;
    while out.len() < k {
        tries += 1;
        if tries > RESAMPLES {
            return Err(Error::ResourceExhausted("fixture sampling".into()));
        }
        let f = random_irreducible(rng, ring, max_deg)?;
        if avoid.contains(&f) || out.iter().any(|(g, _)| g == &f) {
            continue;
        }
        out.push((f, *exps.choose(rng).unwrap()));
    }
    Ok(out)
}

fn assemble(ring: &Ring, parts: &[(Polynomial, i64)]) -> Result<RationalFunction> {
    let mut num = Polynomial::one(ring);
    let mut den = Polynomial::one(ring);
    for (f, e) in parts {
        if *e >= 0 {
            num = &num * &f.pow(*e as u32);
        } else {
            den = &den * &f.pow((-e) as u32);
        }
    }
    RationalFunction::new(num, den)
}

fn reciprocity<R: Rng>(rng: &mut R, d: u32, index: usize, rep: &mut FixtureReport) -> Result<bool> {
    let ring = plane();
    let mut xs = random_function(rng, &ring, d, 1..=2, &[-1, 1, 2], &[])?;
    let mut ys = random_function(rng, &ring, d, 1..=2, &[-2, -1, 1], &[])?;
    if index % 4 != 3 {
        let shared = random_irreducible(rng, &ring, d)?;
        xs.retain(|(f, _)| f != &shared);
        ys.retain(|(f, _)| f != &shared);
        xs.push((shared.clone(), rng.gen_range(1..=2)));
        ys.push((shared, *[-1i64, 1, 2].choose(rng).unwrap()));
    }
    let x = assemble(&ring, &xs)?;
    let y = assemble(&ring, &ys)?;
    rep.inputs.insert("x".into(), x.to_string());
    rep.inputs.insert("y".into(), y.to_string());
    let dx = principal_divisor(&x)?;
    let dy = principal_divisor(&y)?;
    let shared = dx.components().iter().any(|(f, _)| dy.ord(f) != 0);
    rep.facts.insert("shared".into(), shared.to_string());
    let check = verify_reciprocity(&x, &y)?;
    rep.facts.insert("terms".into(), check.terms.len().to_string());
    rep.facts.insert("sum".into(), check.lhs.to_string());
    Ok(check.holds())
}

fn commute<R: Rng>(rng: &mut R, d: u32, rep: &mut FixtureReport) -> Result<bool> {
    let ring = plane();
    let xs = random_function(rng, &ring, d, 1..=2, &[-1, 1, 2], &[])?;
    let avoid: Vec<Polynomial> = xs.iter().map(|(f, _)| f.clone()).collect();
    let mut ys = random_function(rng, &ring, d, 1..=2, &[-1, 1], &avoid)?;
    if rng.gen_bool(0.5) {
        ys.push((xs[0].0.clone(), 1));
    }
    let x = assemble(&ring, &xs)?;
    let y = assemble(&ring, &ys)?;
    rep.inputs.insert("D".into(), x.to_string());
    rep.inputs.insert("w".into(), format!("(A^2, {y})"));
    let dd = principal_divisor(&x)?;
    let w = RatEquivElement::from_terms([(Subvariety::Ambient(ring), y)]);
    let check = verify_commute(&dd, &w)?;
    rep.facts.insert("lhs".into(), check.lhs.to_string());
    rep.facts.insert("rhs".into(), check.rhs.to_string());
    Ok(check.holds())
}

/// Excess targets 0, 1, 2 and 6 in turn, by the exponents of a shared factor.
fn difference<R: Rng>(rng: &mut R, d: u32, index: usize, rep: &mut FixtureReport) -> Result<bool> {
    let ring = plane();
    let shared = match index % 4 {
        0 => None,
        1 => Some((1, 1)),
        2 => Some((1, 2)),
        _ => Some((2, 3)),
    };
    let mut xs = random_function(rng, &ring, d, 1..=2, &[1, 2], &[])?;
    let avoid: Vec<Polynomial> = xs.iter().map(|(f, _)| f.clone()).collect();
    let mut ys = random_function(rng, &ring, d, 1..=2, &[-1, 1], &avoid)?;
    if let Some((a, b)) = shared {
        let mut avoid = avoid;
        avoid.extend(ys.iter().map(|(f, _)| f.clone()));
        let f = random_function(rng, &ring, d, 1..=1, &[1], &avoid)?.remove(0).0;
        xs.push((f.clone(), a));
        ys.push((f, b));
    }
    let x = assemble(&ring, &xs)?;
    let y = assemble(&ring, &ys)?;
    rep.inputs.insert("x".into(), x.to_string());
    rep.inputs.insert("y".into(), y.to_string());
    let dd = principal_divisor(&x)?;
    let de = principal_divisor(&y)?;
    rep.facts.insert("excess".into(), excess(&dd, &de).to_string());
    let check = verify_difference(&dd, &de)?;
    rep.facts.insert("omega_terms".into(), check.terms.len().to_string());
    rep.facts.insert("difference".into(), check.lhs.to_string());
    rep.facts.insert("boundary".into(), check.rhs.to_string());
    Ok(check.holds())
}

fn proper<R: Rng>(rng: &mut R, d: u32, rep: &mut FixtureReport) -> Result<bool> {
    let ring = plane();
    let xs = random_function(rng, &ring, d, 1..=2, &[1, 2], &[])?;
    let avoid: Vec<Polynomial> = xs.iter().map(|(f, _)| f.clone()).collect();
    let ys = random_function(rng, &ring, d, 1..=2, &[1, 2], &avoid)?;
    let x = assemble(&ring, &xs)?;
    let y = assemble(&ring, &ys)?;
    rep.inputs.insert("x".into(), x.to_string());
    rep.inputs.insert("y".into(), y.to_string());
    let dd = principal_divisor(&x)?;
    let de = principal_divisor(&y)?;
    let eps = excess(&dd, &de);
    rep.facts.insert("excess".into(), eps.to_string());
    if eps != 0 {
        return Err(Error::InvalidInput("fixture does not meet properly".into()));
    }
    let a = intersect_cycle(&dd, &de.weil_divisor())?;
    let b = intersect_cycle(&de, &dd.weil_divisor())?;
    rep.facts.insert("d_dot_e".into(), a.to_string());
    rep.facts.insert("e_dot_d".into(), b.to_string());
    Ok(a == b)
}

/// Curves through the origin with no common component there.
fn fulton<R: Rng>(rng: &mut R, d: u32, rep: &mut FixtureReport) -> Result<bool> {
    let ring = plane();
    let origin = ClosedPoint::origin(&ring);
    for _ in 0..RESAMPLES {
        let f = random_polynomial(rng, &ring, d, 3, 0.0);
        let g = random_polynomial(rng, &ring, d, 3, 0.25);
        let h = random_polynomial(rng, &ring, d, 2, 0.25);
        let gh = &g * &h;
        let ghf = &g + &(&h * &f);
        let im = |a: &Polynomial, b: &Polynomial| intersection_multiplicity(a, b, &origin);
        let vals = (|| -> Result<[u32; 5]> {
            Ok([im(&f, &g)?, im(&g, &f)?, im(&f, &h)?, im(&f, &gh)?, im(&f, &ghf)?])
        })();
        let vals = match vals {
            Err(Error::CommonComponent) => continue,
            other => other?,
        };
        rep.inputs.insert("f".into(), f.to_string());
        rep.inputs.insert("g".into(), g.to_string());
        rep.inputs.insert("h".into(), h.to_string());
        let [fg, gf, fh, fgh, fghf] = vals;
        rep.facts.insert("I(f,g)".into(), fg.to_string());
        rep.facts.insert("I(f,h)".into(), fh.to_string());
        rep.facts.insert("I(f,gh)".into(), fgh.to_string());
        let (a, b, c, e) = (small(rng), small(rng), small(rng), small(rng));
        let u = Polynomial::variable(&ring, 0);
        let v = Polynomial::variable(&ring, 1);
        let l1 = &u.scale(&a) + &v.scale(&b);
        let l2 = &u.scale(&c) + &v.scale(&e);
        let transverse = if &a * &e != &b * &c {
            let k = im(&l1, &l2)?;
            rep.facts.insert("I(l1,l2)".into(), k.to_string());
            k == 1
        } else {
            true
        };
        return Ok(fg == gf && fgh == fg + fh && fghf == fg && transverse);
    }
    Err(Error::ResourceExhausted("fixture sampling".into()))
}

fn cones<R: Rng>(rng: &mut R, d: u32, rep: &mut FixtureReport) -> Result<bool> {
    let names = ["u", "v", "x"];
    let ring = Ring::new(names[..rng.gen_range(1..=3)].iter().copied());
    let k = rng.gen_range(1..=3);
    let gens: Vec<Polynomial> = (0..k).map(|_| random_polynomial(rng, &ring, d, 2, 0.3)).collect();
    let shown: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    rep.inputs.insert("ring".into(), ring.to_string());
    rep.inputs.insert("f".into(), format!("({})", shown.join(", ")));
    let m = graph_closure(&gens)?;
    let flat = m.is_flat()?;
    let cone = normal_cone(&m)?;
    let homogeneous = cone.is_homogeneous()?;
    let agree = cone.ideal().same_ideal(normal_cone_by_elimination(&m)?.ideal())?;
    rep.facts.insert("flat".into(), flat.to_string());
    rep.facts.insert("homogeneous".into(), homogeneous.to_string());
    rep.facts.insert("cone".into(), cone.ideal().to_string());
    let mut ok = flat && homogeneous && agree;
    if k == 1 {
        let f = gens[0].embed(cone.ring())?;
        let cylinder = cone.ideal().same_ideal(&Ideal::new(cone.ring(), [f])?)?;
        rep.facts.insert("cylinder".into(), cylinder.to_string());
        ok &= cylinder;
    }
    Ok(ok)
}

fn equivariance<R: Rng>(rng: &mut R, d: u32, rep: &mut FixtureReport) -> Result<bool> {
    let names = ["u", "v", "x"];
    let ring = Ring::new(names[..rng.gen_range(2..=3)].iter().copied());
    let k = rng.gen_range(1..=2);
    let gens: Vec<Polynomial> = (0..k).map(|_| random_polynomial(rng, &ring, d, 3, 0.3)).collect();
    let shown: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    rep.inputs.insert("ring".into(), ring.to_string());
    rep.inputs.insert("f".into(), format!("({})", shown.join(", ")));
    let m = graph_closure(&gens)?;
    let act = tangent_action(&m)?;
    let full = check_action_invariance(&m, &act)?.passed();
    let lin = linear_action(&m)?;
    let at0 = act.at_zero(m.parameter());
    let linear = m.cone_vars().iter().all(|z| at0.get(z) == lin.images().get(z));
    let control = !check_action_invariance(&m, &truncated_action(&m)?)?.passed();
    let n = ring.len();
    let (big, bs) = crate::deformation::fresh_block(act.ring(), "b", n);
    let b: Vec<Polynomial> = bs.iter().map(|&i| Polynomial::variable(&big, i)).collect();
    let a: Vec<Polynomial> = (0..n)
        .map(|j| Polynomial::variable(&big, m.ring().len() + j))
        .collect();
    let ab: Vec<Polynomial> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    let additive = tangent_action_with(&m, &a, &big)?.compose(&tangent_action_with(&m, &b, &big)?)?
        == tangent_action_with(&m, &ab, &big)?;
    rep.facts.insert("invariant".into(), full.to_string());
    rep.facts.insert("t0_linear".into(), linear.to_string());
    rep.facts.insert("control_fails".into(), control.to_string());
    rep.facts.insert("additive".into(), additive.to_string());
    Ok(full && linear && control && additive)
}

fn projection<R: Rng>(rng: &mut R, d: u32, rep: &mut FixtureReport) -> Result<bool> {
    let ring = plane();
    let space = Ring::new(["u", "v", "r"]);
    let xs = random_function(rng, &ring, d, 1..=2, &[-1, 1, 2], &[])?;
    let avoid: Vec<Polynomial> = xs.iter().map(|(f, _)| f.clone()).collect();
    let curves = random_function(rng, &ring, d, 1..=2, &[-1, 1, 2], &avoid)?;
    let ys = random_function(rng, &ring, d, 1..=1, &[-1, 1], &[])?;
    let x = assemble(&ring, &xs)?;
    let y = assemble(&ring, &ys)?;
    let alpha = Cycle::from_terms(curves.iter().map(|(f, k)| (Subvariety::Hypersurface(f.clone()), *k)));
    rep.inputs.insert("D".into(), x.to_string());
    rep.inputs.insert("alpha".into(), alpha.to_string());
    rep.inputs.insert("w".into(), format!("(A^2, {y})"));
    let w = RatEquivElement::from_terms([(Subvariety::Ambient(ring), y)]);
    let check = verify_projection(&principal_divisor(&x)?, &alpha, Some(&w), &space)?;
    rep.facts.insert("pullback_of_product".into(), check.cycles.lhs.to_string());
    rep.facts.insert("product_of_pullbacks".into(), check.cycles.rhs.to_string());
    Ok(check.holds())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_stable_and_distinct() {
        let a = fixture_seed(1, CorpusVerb::Fulton, 0);
        assert_eq!(a, fixture_seed(1, CorpusVerb::Fulton, 0));
        assert_ne!(a, fixture_seed(1, CorpusVerb::Fulton, 1));
        assert_ne!(a, fixture_seed(1, CorpusVerb::Cones, 0));
    }

    #[test]
    fn verbs_round_trip() {
        for v in CorpusVerb::ALL {
            assert_eq!(v.name().parse::<CorpusVerb>().unwrap(), v);
        }
        assert!("nope".parse::<CorpusVerb>().is_err());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        for verb in [CorpusVerb::Reciprocity, CorpusVerb::Fulton] {
            let seq = CorpusConfig {
                count: 6,
                exec: Exec::Sequential,
                ..CorpusConfig::default()
            };
            let par = CorpusConfig {
                exec: Exec::Parallel,
                ..seq
            };
            assert_eq!(run_corpus(verb, &seq), run_corpus(verb, &par));
        }
    }

    #[test]
    fn small_corpora_pass() {
        let cfg = CorpusConfig {
            count: 4,
            ..CorpusConfig::default()
        };
        for verb in CorpusVerb::ALL {
            for r in run_corpus(verb, &cfg) {
                assert_eq!(r.verdict, Verdict::Pass, "{verb} #{}: {:?} {:?}", r.index, r.inputs, r.facts);
            }
        }
    }
}
