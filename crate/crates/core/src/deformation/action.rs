//! The additive group acting on deformation spaces through `x ↦ x + t·a`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{fresh_block, DeformationSpace, DoubleDeformation};
use crate::error::{Error, Result};
use crate::groebner::{Ideal, MonomialOrder};
use crate::poly::{Polynomial, Ring};

/// A substitution on the variables of a deformation space, with images in
/// a ring that extends it by the group parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    source: Ring,
    ring: Ring,
    images: BTreeMap<usize, Polynomial>,
}

impl Action {
    /// The deformation-space ring followed by the group parameters.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    /// Images of the moved variables; the rest are fixed.
    pub fn images(&self) -> &BTreeMap<usize, Polynomial> {
        &self.images
    }

    pub fn image(&self, var: usize) -> Polynomial {
        self.images
            .get(&var)
            .cloned()
            .unwrap_or_else(|| Polynomial::var(&self.ring, self.source.var_name(var)).unwrap())
    }

    /// Apply to a polynomial of the source ring or of the action ring.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        let p = p.embed(&self.ring)?;
        p.substitute(&self.lifted(), &self.ring)
    }

    fn lifted(&self) -> BTreeMap<usize, Polynomial> {
        self.images
            .iter()
            .map(|(&v, img)| (self.ring.index_of(self.source.var_name(v)).unwrap(), img.clone()))
            .collect()
    }

    /// `self ∘ other`: first `other`, then `self`. Both must share a ring.
    pub fn compose(&self, other: &Action) -> Result<Action> {
        if self.ring != other.ring || self.source != other.source {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        let mut images = BTreeMap::new();
        for v in 0..self.source.len() {
            let img = self.apply(&other.image(v))?;
            if img != Polynomial::var(&self.ring, self.source.var_name(v))? {
                images.insert(v, img);
            }
        }
        Ok(Action {
            source: self.source.clone(),
            ring: self.ring.clone(),
            images,
        })
    }

    /// The images with `t = 0`.
    pub fn at_zero(&self, t: usize) -> BTreeMap<usize, Polynomial> {
        let t = self.ring.index_of(self.source.var_name(t)).unwrap();
        self.images
            .iter()
            .map(|(&v, img)| (v, img.evaluate_var(t, &Zero::zero())))
            .collect()
    }
}

fn params(m: &DeformationSpace) -> (Ring, Vec<Polynomial>) {
    let (ring, idx) = fresh_block(m.ring(), "a", m.base().len());
    let a = idx.iter().map(|&i| Polynomial::variable(&ring, i)).collect();
    (ring, a)
}

/// `x_j ↦ x_j + t a_j`, `z_i ↦ z_i + (f_i(x + t a) − f_i(x)) / t`.
pub fn tangent_action(m: &DeformationSpace) -> Result<Action> {
    let (ring, a) = params(m);
    tangent_action_with(m, &a, &ring)
}

/// The action for given parameter values `a`, polynomials in `target`,
/// which must extend the ring of `m`.
pub fn tangent_action_with(m: &DeformationSpace, a: &[Polynomial], target: &Ring) -> Result<Action> {
    build(m.ring(), m.base().len(), m.parameter(), m.cone_vars(), m.source(), a, target, true)
}

/// The negative control: points move but the correction terms are dropped.
pub fn truncated_action(m: &DeformationSpace) -> Result<Action> {
    let (ring, a) = params(m);
    build(m.ring(), m.base().len(), m.parameter(), m.cone_vars(), m.source(), &a, &ring, false)
}

/// `z_i ↦ z_i + D_a f_i(x)` on the normal cone, points fixed.
pub fn linear_action(m: &DeformationSpace) -> Result<Action> {
    let (ring, a) = params(m);
    let mut images = BTreeMap::new();
    for (f, &zi) in m.source().iter().zip(m.cone_vars()) {
        let mut img = Polynomial::var(&ring, m.ring().var_name(zi))?;
        for (j, aj) in a.iter().enumerate() {
            img = &img + &(aj * &f.derivative(j).embed(&ring)?);
        }
        images.insert(zi, img);
    }
    Ok(Action {
        source: m.ring().clone(),
        ring,
        images,
    })
}

/// The translations along the coordinates not used by the generators of
/// `X`, acting on the `t`-block by the tangent action and trivially on the
/// `w`-block.
pub fn subgroup_action(d: &DoubleDeformation) -> Result<Action> {
    let n = d.base().len();
    let (ring, idx) = fresh_block(d.ring(), "a", n);
    let a: Vec<Polynomial> = (0..n)
        .map(|j| {
            if d.x_generators().iter().any(|g| g.involves(j)) {
                Polynomial::zero(&ring)
            } else {
                Polynomial::variable(&ring, idx[j])
            }
        })
        .collect();
    build(d.ring(), n, d.t(), d.z_vars(), d.y_generators(), &a, &ring, true)
}

#[allow(clippy::too_many_arguments)]
fn build(
    source: &Ring,
    n: usize,
    t: usize,
    z: &[usize],
    f: &[Polynomial],
    a: &[Polynomial],
    target: &Ring,
    correct: bool,
) -> Result<Action> {
    if a.len() != n {
        return Err(Error::InvalidInput(format!("{} parameters for {n} coordinates", a.len())));
    }
    for v in source.vars() {
        if target.index_of(v).is_none() {
            return Err(Error::RingMismatch(format!("{target} does not extend {source}")));
        }
    }
    let tv = Polynomial::var(target, source.var_name(t))?;
    let mut images = BTreeMap::new();
    let mut shift = BTreeMap::new();
    for (j, aj) in a.iter().enumerate() {
        if aj.ring() != target {
            return Err(Error::RingMismatch(format!("parameter in {}", aj.ring())));
        }
        let img = &Polynomial::var(target, source.var_name(j))? + &(&tv * aj);
        shift.insert(j, img.clone());
        if !aj.is_zero() {
            images.insert(j, img);
        }
    }
    if correct {
        for (fi, &zi) in f.iter().zip(z) {
            let moved = fi.substitute(&shift, target)?;
            let q = (&moved - &fi.embed(target)?).exact_divide(&tv)?;
            if !q.is_zero() {
                images.insert(zi, &Polynomial::var(target, source.var_name(zi))? + &q);
            }
        }
    }
    Ok(Action {
        source: source.clone(),
        ring: target.clone(),
        images,
    })
}

/// Outcome of an invariance check over the ring of group parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub checked: usize,
    /// The first basis element whose image leaves the ideal.
    pub offending: Option<Polynomial>,
    /// Parameter functions moved by the action.
    pub moved_parameters: Vec<String>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.offending.is_none() && self.moved_parameters.is_empty()
    }
}

fn check(ideal: &Ideal, action: &Action, fixed: &[usize]) -> Result<InvarianceReport> {
    if ideal.ring() != action.source() {
        return Err(Error::RingMismatch(format!("{} vs {}", ideal.ring(), action.source())));
    }
    let big = ideal.embed(action.ring())?;
    let basis = ideal.groebner_basis(MonomialOrder::GRevLex)?;
    let mut offending = None;
    for p in basis.iter() {
        if !big.contains(&action.apply(p)?)? {
            offending = Some(p.clone());
            break;
        }
    }
    let moved_parameters = fixed
        .iter()
        .filter(|&&v| action.images().contains_key(&v))
        .map(|&v| action.source().var_name(v).to_string())
        .collect();
    Ok(InvarianceReport {
        checked: basis.len(),
        offending,
        moved_parameters,
    })
}

/// Whether the action maps the ideal into itself and fixes `t`.
pub fn check_action_invariance(m: &DeformationSpace, action: &Action) -> Result<InvarianceReport> {
    check(m.ideal(), action, &[m.parameter()])
}

/// Whether the action maps the ideal into itself and fixes `s` and `t`.
pub fn check_double_invariance(d: &DoubleDeformation, action: &Action) -> Result<InvarianceReport> {
    check(d.ideal(), action, &[d.s(), d.t()])
}
