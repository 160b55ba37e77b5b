use rand::Rng;

use crate::error::{AlgebraError, Result};
use crate::group::GroupElement;
use crate::sample::{random_in_interval, rng_for};

use super::{FinitePea, IntervalPea, Pea};

/// An element `c` with `n c = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicElement<T> {
    pub element: T,
    pub order: u64,
    /// `Some(true)` when `c` is central in the ambient group; `None` when no
    /// ambient group is available to decide it.
    pub strong: Option<bool>,
}

/// Exhaustive search in a finite algebra. A commutative algebra counts as
/// having an Abelian ambient group, so its cyclic elements are strong.
pub fn cyclic_elements_finite(e: &FinitePea, n: u64) -> Vec<CyclicElement<usize>> {
    let strong = e.is_commutative().then_some(true);
    e.elements()
        .filter(|&a| e.multiple_id(a, n) == Some(e.one_id()))
        .map(|a| CyclicElement { element: a, order: n, strong })
        .collect()
}

/// Solves `n c = u` in the ambient group; the root is unique when it exists.
pub fn cyclic_elements_interval(e: &IntervalPea, n: u64) -> Result<Vec<CyclicElement<GroupElement>>> {
    if n == 0 {
        return Err(AlgebraError::Precondition("cyclic order must be at least 1".into()));
    }
    let g = e.group();
    let Some(c) = g.divide(e.unit(), n)? else { return Ok(Vec::new()) };
    if !e.contains(&c) || e.multiple(&c, n)?.as_ref() != Some(e.unit()) {
        return Ok(Vec::new());
    }
    let strong = Some(g.center_member(&c)?);
    Ok(vec![CyclicElement { element: c, order: n, strong }])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryVerdict<T> {
    pub symmetric: bool,
    /// An element with `a^- != a^~`.
    pub witness: Option<T>,
}

pub trait SymmetryCheck: Pea {
    fn symmetry(&self, samples: usize, seed: u64) -> Result<SymmetryVerdict<Self::Elem>>;
}

impl SymmetryCheck for FinitePea {
    fn symmetry(&self, _samples: usize, _seed: u64) -> Result<SymmetryVerdict<usize>> {
        let witness = self.elements().find(|&a| self.lneg_id(a) != self.rneg_id(a));
        Ok(SymmetryVerdict { symmetric: witness.is_none(), witness })
    }
}

impl SymmetryCheck for IntervalPea {
    /// Symmetric exactly when the unit is central; a witness is searched
    /// among the unit's neighbours and seeded samples.
    fn symmetry(&self, samples: usize, seed: u64) -> Result<SymmetryVerdict<GroupElement>> {
        let symmetric = self.group().center_member(self.unit())?;
        if symmetric {
            return Ok(SymmetryVerdict { symmetric, witness: None });
        }
        let mut rng = rng_for(seed, 0);
        for _ in 0..samples.max(1) {
            let a = random_in_interval(self.group(), self.unit(), &mut rng, 6)?;
            if self.lneg(&a)? != self.rneg(&a)? {
                return Ok(SymmetryVerdict { symmetric, witness: Some(a) });
            }
        }
        Ok(SymmetryVerdict { symmetric, witness: None })
    }
}

pub fn is_symmetric<E: SymmetryCheck>(e: &E, samples: usize, seed: u64) -> Result<SymmetryVerdict<E::Elem>> {
    e.symmetry(samples, seed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeVerdict<T> {
    pub checked: usize,
    /// An `x` for which exactly one of `x + c`, `c + x` is defined.
    pub counterexample: Option<T>,
}

fn cyclic_order<E: Pea>(e: &E, c: &E::Elem, max: u64) -> Result<u64> {
    let mut acc = e.zero();
    for n in 1..=max {
        match e.sum(&acc, c)? {
            Some(s) if s == e.one() => return Ok(n),
            Some(s) => acc = s,
            None => break,
        }
    }
    Err(AlgebraError::Precondition(format!("{} is not cyclic", e.label(c))))
}

/// `x + c` is defined iff `c + x` is, for a cyclic `c`: exhaustive on finite
/// algebras, sampled on intervals.
pub fn cyclic_exchange_check<E: Pea + ExchangeDomain>(
    e: &E,
    c: &E::Elem,
    samples: usize,
    seed: u64,
) -> Result<ExchangeVerdict<E::Elem>> {
    cyclic_order(e, c, 4096)?;
    let xs = e.exchange_candidates(samples, seed)?;
    let mut checked = 0;
    for x in xs {
        checked += 1;
        if e.sum(&x, c)?.is_some() != e.sum(c, &x)?.is_some() {
            return Ok(ExchangeVerdict { checked, counterexample: Some(x) });
        }
    }
    Ok(ExchangeVerdict { checked, counterexample: None })
}

/// Elements over which a universally quantified check runs.
pub trait ExchangeDomain: Pea {
    fn exchange_candidates(&self, samples: usize, seed: u64) -> Result<Vec<Self::Elem>>;
}

impl ExchangeDomain for FinitePea {
    fn exchange_candidates(&self, _samples: usize, _seed: u64) -> Result<Vec<usize>> {
        Ok(self.elements().collect())
    }
}

impl ExchangeDomain for IntervalPea {
    fn exchange_candidates(&self, samples: usize, seed: u64) -> Result<Vec<GroupElement>> {
        let mut rng = rng_for(seed, 1);
        let mut out = vec![self.zero(), self.one()];
        while out.len() < samples.max(2) {
            let radius = rng.gen_range(1..=12);
            out.push(random_in_interval(self.group(), self.unit(), &mut rng, radius)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupDescriptor;
    use crate::scalar::{int, rat, ScalarSubgroup};

    fn lex_pea(h: GroupDescriptor, g: GroupDescriptor, g0: GroupElement, one: GroupElement) -> IntervalPea {
        IntervalPea::from_parts(GroupDescriptor::lex(h, g), GroupElement::pair(one, g0)).unwrap()
    }

    #[test]
    fn chain_cyclic() {
        let e = FinitePea::chain(2);
        let cs = cyclic_elements_finite(&e, 2);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].element, 1);
        assert_eq!(cs[0].strong, Some(true));
    }

    #[test]
    fn interval_cyclic() {
        let one = GroupElement::rational(int(1));
        let e = lex_pea(GroupDescriptor::q(), GroupDescriptor::z(), GroupElement::integer(0), one);
        let cs = cyclic_elements_interval(&e, 3).unwrap();
        assert_eq!(
            cs[0].element,
            GroupElement::pair(GroupElement::rational(rat(1, 3)), GroupElement::integer(0))
        );
        assert_eq!(cs[0].strong, Some(true));

        let h = ScalarSubgroup::Quadratic(2);
        let one = GroupElement::Scalar(h.one());
        let e = lex_pea(GroupDescriptor::scalar(h), GroupDescriptor::z(), GroupElement::integer(0), one);
        assert!(cyclic_elements_interval(&e, 2).unwrap().is_empty());
        assert_eq!(cyclic_elements_interval(&e, 1).unwrap().len(), 1);
    }

    #[test]
    fn symmetry_follows_unit_centrality() {
        let one = GroupElement::integer(1);
        let e = lex_pea(
            GroupDescriptor::z(),
            GroupDescriptor::AffineQ,
            GroupElement::affine(int(2), int(0)),
            one.clone(),
        );
        let v = is_symmetric(&e, 200, 1).unwrap();
        assert!(!v.symmetric);
        let w = v.witness.unwrap();
        assert_ne!(e.lneg(&w).unwrap(), e.rneg(&w).unwrap());

        let e = lex_pea(GroupDescriptor::z(), GroupDescriptor::AffineQ, GroupElement::affine(int(1), int(0)), one);
        assert!(is_symmetric(&e, 200, 1).unwrap().symmetric);
        assert!(is_symmetric(&FinitePea::boolean(2), 0, 0).unwrap().symmetric);
    }

    #[test]
    fn exchange() {
        let e = FinitePea::chain(2);
        assert_eq!(cyclic_exchange_check(&e, &1, 0, 0).unwrap().counterexample, None);
        assert_eq!(cyclic_exchange_check(&e, &2, 0, 0).unwrap().counterexample, None);
        assert!(cyclic_exchange_check(&FinitePea::boolean(2), &1, 0, 0).is_err());
        let one = GroupElement::rational(int(1));
        let q = lex_pea(GroupDescriptor::q(), GroupDescriptor::z(), GroupElement::integer(0), one);
        let c = GroupElement::pair(GroupElement::rational(rat(1, 2)), GroupElement::integer(0));
        let v = cyclic_exchange_check(&q, &c, 200, 4).unwrap();
        assert_eq!(v.checked, 200);
        assert_eq!(v.counterexample, None);
    }
}
