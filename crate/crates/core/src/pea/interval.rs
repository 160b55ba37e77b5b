use crate::error::{AlgebraError, Result};
use crate::group::{GroupDescriptor, GroupElement, UnitalPoGroup};
use crate::scalar::{Scalar, ScalarSubgroup};

use super::Pea;

/// `Γ(G, u) = {g : 0 <= g <= u}` with the group addition restricted to it.
/// Elements are never enumerated; every operation is group arithmetic plus
/// a membership check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalPea {
    base: UnitalPoGroup,
}

impl IntervalPea {
    pub fn new(base: UnitalPoGroup) -> Self {
        IntervalPea { base }
    }

    pub fn from_parts(group: GroupDescriptor, unit: GroupElement) -> Result<Self> {
        Ok(IntervalPea { base: UnitalPoGroup::new(group, unit)? })
    }

    pub fn group(&self) -> &GroupDescriptor {
        self.base.group()
    }

    pub fn unit(&self) -> &GroupElement {
        self.base.unit()
    }

    /// The scalar head subgroup when the group is `Lex(Scalar(H), G)`.
    pub fn lex_scalar_parts(&self) -> Option<(ScalarSubgroup, &GroupDescriptor)> {
        match self.group() {
            GroupDescriptor::Lex(top, bottom) => match top.as_ref() {
                GroupDescriptor::Scalar(h) => Some((*h, bottom.as_ref())),
                _ => None,
            },
            _ => None,
        }
    }

    fn lex_parts_or_err(&self) -> Result<(ScalarSubgroup, &GroupDescriptor)> {
        self.lex_scalar_parts().ok_or_else(|| {
            AlgebraError::Unsupported(format!(
                "{} is not a lexicographic product over a scalar head",
                self.group()
            ))
        })
    }

    pub fn check_member(&self, x: &GroupElement) -> Result<()> {
        self.group().check(x)?;
        if self.contains(x) {
            Ok(())
        } else {
            Err(AlgebraError::DomainMismatch(format!("{x} is not in [0, {}]", self.unit())))
        }
    }

    /// Infinitesimal membership for `Γ(Lex(Scalar(H), G), (1, g0))`: exactly
    /// the elements `(0, g)` with `g >= 0`.
    pub fn is_infinitesimal(&self, x: &GroupElement) -> Result<bool> {
        self.lex_parts_or_err()?;
        self.check_member(x)?;
        Ok(x.head()?.as_scalar()?.is_zero())
    }

    /// The first-coordinate value `t` of `(t, g)`.
    pub fn first_coordinate(&self, x: &GroupElement) -> Result<Scalar> {
        self.lex_parts_or_err()?;
        Ok(x.head()?.as_scalar()?.clone())
    }

    /// Whether the unit is `(1, g0)`, the shape used by lexicographic
    /// decompositions.
    pub fn has_unit_head_one(&self) -> bool {
        match (self.lex_scalar_parts(), self.unit().head()) {
            (Some((h, _)), Ok(GroupElement::Scalar(s))) => *s == h.one(),
            _ => false,
        }
    }
}

impl Pea for IntervalPea {
    type Elem = GroupElement;

    fn zero(&self) -> GroupElement {
        self.group().zero()
    }

    fn one(&self) -> GroupElement {
        self.unit().clone()
    }

    fn contains(&self, x: &GroupElement) -> bool {
        let g = self.group();
        g.check(x).is_ok()
            && g.positive_cone_member(x).unwrap_or(false)
            && g.leq(x, self.unit()).unwrap_or(false)
    }

    fn sum(&self, a: &GroupElement, b: &GroupElement) -> Result<Option<GroupElement>> {
        self.check_member(a)?;
        self.check_member(b)?;
        let s = self.group().add(a, b)?;
        Ok(self.group().leq(&s, self.unit())?.then_some(s))
    }

    fn leq(&self, a: &GroupElement, b: &GroupElement) -> Result<bool> {
        self.check_member(a)?;
        self.check_member(b)?;
        self.group().leq(a, b)
    }

    fn minus_left(&self, b: &GroupElement, a: &GroupElement) -> Result<Option<GroupElement>> {
        if !self.leq(a, b)? {
            return Ok(None);
        }
        Ok(Some(self.group().sub(b, a)?))
    }

    fn minus_right(&self, a: &GroupElement, b: &GroupElement) -> Result<Option<GroupElement>> {
        if !self.leq(a, b)? {
            return Ok(None);
        }
        Ok(Some(self.group().sub_left(a, b)?))
    }

    fn label(&self, x: &GroupElement) -> String {
        x.to_string()
    }

    fn lneg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_member(a)?;
        self.group().sub(self.unit(), a)
    }

    fn rneg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_member(a)?;
        self.group().sub_left(a, self.unit())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn qz() -> IntervalPea {
        let g = GroupDescriptor::lex(GroupDescriptor::q(), GroupDescriptor::z());
        let u = GroupElement::pair(GroupElement::rational(int(1)), GroupElement::integer(0));
        IntervalPea::from_parts(g, u).unwrap()
    }

    fn e(a: crate::scalar::Rational, b: i64) -> GroupElement {
        GroupElement::pair(GroupElement::rational(a), GroupElement::integer(b))
    }

    #[test]
    fn negations() {
        let p = qz();
        assert_eq!(p.lneg(&e(rat(1, 3), 5)).unwrap(), e(rat(2, 3), -5));
        assert_eq!(p.lneg(&p.zero()).unwrap(), p.one());
        assert_eq!(p.rneg(&p.zero()).unwrap(), p.one());
    }

    #[test]
    fn partial_sums() {
        let p = qz();
        assert_eq!(p.sum(&e(rat(1, 2), 3), &e(rat(1, 2), -3)).unwrap(), Some(e(int(1), 0)));
        assert_eq!(p.sum(&e(rat(1, 2), 3), &e(rat(1, 2), -2)).unwrap(), None);
        assert!(p.sum(&e(int(2), 0), &p.zero()).is_err());
    }

    #[test]
    fn infinitesimals() {
        let g = GroupDescriptor::lex(GroupDescriptor::z(), GroupDescriptor::z());
        let u = GroupElement::pair(GroupElement::integer(1), GroupElement::integer(0));
        let p = IntervalPea::from_parts(g, u).unwrap();
        let m = |a, b| GroupElement::pair(GroupElement::integer(a), GroupElement::integer(b));
        assert!(p.is_infinitesimal(&m(0, 5)).unwrap());
        assert!(!p.is_infinitesimal(&m(1, 0)).unwrap());
        assert_eq!(p.multiple(&m(0, 5), 1000).unwrap(), Some(m(0, 5000)));
    }
}
