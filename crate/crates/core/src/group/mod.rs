//! Descriptor-driven partially ordered groups.
//!
//! A [`GroupDescriptor`] is a composition tree of primitive po-groups
//! (scalar subgroups of the reals, `Z^k` with the product order, and the
//! non-Abelian affine group of `Q`) combined by lexicographic and direct
//! products. [`GroupElement`] values mirror the tree. All group operations are
//! written additively, also for the non-Abelian affine group.

mod element;
mod order;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::scalar::{Rational, ScalarSubgroup};

pub use element::GroupElement;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    /// A linearly ordered subgroup of the reals.
    Scalar(ScalarSubgroup),
    /// `Z^k` with the componentwise order.
    IntVector(usize),
    /// Pairs `(a, b)` with `a > 0`, composed as `(a,b)+(c,e) = (ac, ae + b)`,
    /// linearly ordered by the cone `{a > 1} ∪ {a = 1, b > 0}`.
    AffineQ,
    Lex(Box<GroupDescriptor>, Box<GroupDescriptor>),
    Product(Box<GroupDescriptor>, Box<GroupDescriptor>),
}

impl GroupDescriptor {
    pub fn z() -> Self {
        GroupDescriptor::Scalar(ScalarSubgroup::Cyclic(1))
    }

    pub fn q() -> Self {
        GroupDescriptor::Scalar(ScalarSubgroup::FullQ)
    }

    pub fn scalar(h: ScalarSubgroup) -> Self {
        GroupDescriptor::Scalar(h)
    }

    pub fn lex(top: GroupDescriptor, bottom: GroupDescriptor) -> Self {
        GroupDescriptor::Lex(Box::new(top), Box::new(bottom))
    }

    pub fn product(left: GroupDescriptor, right: GroupDescriptor) -> Self {
        GroupDescriptor::Product(Box::new(left), Box::new(right))
    }

    /// Structural checks: lexicographic heads must be linearly ordered.
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupDescriptor::Scalar(h) => h.validate(),
            GroupDescriptor::IntVector(0) => {
                Err(AlgebraError::Precondition("Z^k needs k >= 1".into()))
            }
            GroupDescriptor::IntVector(_) | GroupDescriptor::AffineQ => Ok(()),
            GroupDescriptor::Lex(top, bottom) => {
                top.validate()?;
                bottom.validate()?;
                if !top.is_linearly_ordered() {
                    return Err(AlgebraError::Precondition(format!(
                        "lex head must be linearly ordered, got {top}"
                    )));
                }
                Ok(())
            }
            GroupDescriptor::Product(l, r) => {
                l.validate()?;
                r.validate()
            }
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            GroupDescriptor::Scalar(_) | GroupDescriptor::IntVector(_) => true,
            GroupDescriptor::AffineQ => false,
            GroupDescriptor::Lex(a, b) | GroupDescriptor::Product(a, b) => {
                a.is_abelian() && b.is_abelian()
            }
        }
    }

    pub fn is_linearly_ordered(&self) -> bool {
        match self {
            GroupDescriptor::Scalar(_) | GroupDescriptor::AffineQ => true,
            GroupDescriptor::IntVector(k) => *k == 1,
            GroupDescriptor::Lex(a, b) => a.is_linearly_ordered() && b.is_linearly_ordered(),
            GroupDescriptor::Product(_, _) => false,
        }
    }

    /// Lattice-ordered (an l-group). A lexicographic product with a linear
    /// head is a lattice exactly when its bottom is.
    pub fn is_lattice(&self) -> bool {
        match self {
            GroupDescriptor::Scalar(_) | GroupDescriptor::AffineQ | GroupDescriptor::IntVector(_) => {
                true
            }
            GroupDescriptor::Lex(_, b) => b.is_lattice(),
            GroupDescriptor::Product(a, b) => a.is_lattice() && b.is_lattice(),
        }
    }

    /// Every supported descriptor is directed: the primitives are lattices
    /// and a lexicographic product over a nontrivial linear head is directed
    /// whatever its bottom.
    pub fn is_directed(&self) -> bool {
        match self {
            GroupDescriptor::Lex(_, _) => true,
            GroupDescriptor::Product(a, b) => a.is_directed() && b.is_directed(),
            _ => self.is_lattice(),
        }
    }

    pub fn is_torsion_free(&self) -> bool {
        match self {
            GroupDescriptor::Lex(a, b) | GroupDescriptor::Product(a, b) => {
                a.is_torsion_free() && b.is_torsion_free()
            }
            _ => true,
        }
    }

    /// Whether every coordinate ranges over a discrete set, so order
    /// intervals inside a bounded box are finite.
    pub fn is_discrete(&self) -> bool {
        match self {
            GroupDescriptor::Scalar(h) => !h.is_dense(),
            GroupDescriptor::IntVector(_) => true,
            GroupDescriptor::AffineQ => false,
            GroupDescriptor::Lex(a, b) | GroupDescriptor::Product(a, b) => {
                a.is_discrete() && b.is_discrete()
            }
        }
    }

    pub fn zero(&self) -> GroupElement {
        match self {
            GroupDescriptor::Scalar(h) => GroupElement::Scalar(h.zero()),
            GroupDescriptor::IntVector(k) => GroupElement::Vector(vec![BigInt::zero(); *k]),
            GroupDescriptor::AffineQ => {
                GroupElement::Affine { scale: Rational::one(), shift: Rational::zero() }
            }
            GroupDescriptor::Lex(a, b) | GroupDescriptor::Product(a, b) => {
                GroupElement::pair(a.zero(), b.zero())
            }
        }
    }

    fn shape_error(&self, x: &GroupElement) -> AlgebraError {
        AlgebraError::DomainMismatch(format!("{x} is not an element of {self}"))
    }

    /// Shape and membership check.
    pub fn check(&self, x: &GroupElement) -> Result<()> {
        let ok = match (self, x) {
            (GroupDescriptor::Scalar(h), GroupElement::Scalar(s)) => h.contains(s),
            (GroupDescriptor::IntVector(k), GroupElement::Vector(v)) => v.len() == *k,
            (GroupDescriptor::AffineQ, GroupElement::Affine { scale, .. }) => scale.is_positive(),
            (
                GroupDescriptor::Lex(a, b) | GroupDescriptor::Product(a, b),
                GroupElement::Pair(x1, x2),
            ) => {
                a.check(x1)?;
                b.check(x2)?;
                true
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(self.shape_error(x))
        }
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        match (self, x, y) {
            (GroupDescriptor::Scalar(_), GroupElement::Scalar(a), GroupElement::Scalar(b)) => {
                Ok(GroupElement::Scalar(a.add(b)?))
            }
            (GroupDescriptor::IntVector(k), GroupElement::Vector(a), GroupElement::Vector(b))
                if a.len() == *k && b.len() == *k =>
            {
                Ok(GroupElement::Vector(a.iter().zip(b).map(|(p, q)| p + q).collect()))
            }
            (
                GroupDescriptor::AffineQ,
                GroupElement::Affine { scale: a, shift: b },
                GroupElement::Affine { scale: c, shift: e },
            ) => Ok(GroupElement::Affine { scale: a * c, shift: a * e + b }),
            (
                GroupDescriptor::Lex(da, db) | GroupDescriptor::Product(da, db),
                GroupElement::Pair(x1, x2),
                GroupElement::Pair(y1, y2),
            ) => Ok(GroupElement::pair(da.add(x1, y1)?, db.add(x2, y2)?)),
            _ => Err(AlgebraError::DomainMismatch(format!(
                "cannot add {x} and {y} in {self}"
            ))),
        }
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement> {
        match (self, x) {
            (GroupDescriptor::Scalar(_), GroupElement::Scalar(a)) => Ok(GroupElement::Scalar(a.neg())),
            (GroupDescriptor::IntVector(_), GroupElement::Vector(a)) => {
                Ok(GroupElement::Vector(a.iter().map(|p| -p).collect()))
            }
            (GroupDescriptor::AffineQ, GroupElement::Affine { scale, shift }) => {
                if !scale.is_positive() {
                    return Err(self.shape_error(x));
                }
                Ok(GroupElement::Affine { scale: scale.recip(), shift: -shift / scale })
            }
            (
                GroupDescriptor::Lex(da, db) | GroupDescriptor::Product(da, db),
                GroupElement::Pair(x1, x2),
            ) => Ok(GroupElement::pair(da.neg(x1)?, db.neg(x2)?)),
            _ => Err(self.shape_error(x)),
        }
    }

    /// `x - y`, i.e. `x + (-y)`.
    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.add(x, &self.neg(y)?)
    }

    /// `-x + y`.
    pub fn sub_left(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.add(&self.neg(x)?, y)
    }

    /// `n x` for any integer `n` (negative multiples use `-x`).
    pub fn mul_int(&self, x: &GroupElement, n: i64) -> Result<GroupElement> {
        let base = if n < 0 { self.neg(x)? } else { x.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.zero();
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &pow)?;
            }
            k >>= 1;
            if k > 0 {
                pow = self.add(&pow, &pow)?;
            }
        }
        Ok(acc)
    }

    /// Membership in the commutative center, decided structurally.
    pub fn center_member(&self, x: &GroupElement) -> Result<bool> {
        self.check(x)?;
        Ok(match (self, x) {
            (GroupDescriptor::AffineQ, GroupElement::Affine { scale, shift }) => {
                scale.is_one() && shift.is_zero()
            }
            (
                GroupDescriptor::Lex(a, b) | GroupDescriptor::Product(a, b),
                GroupElement::Pair(x1, x2),
            ) => a.center_member(x1)? && b.center_member(x2)?,
            _ => true,
        })
    }

    /// The unique `y` with `n y = x`, if there is one. Every supported group
    /// has unique roots, so the answer is well defined.
    pub fn divide(&self, x: &GroupElement, n: u64) -> Result<Option<GroupElement>> {
        self.check(x)?;
        if n == 0 {
            return Err(AlgebraError::Precondition("cannot divide by zero".into()));
        }
        Ok(match (self, x) {
            (GroupDescriptor::Scalar(h), GroupElement::Scalar(s)) => {
                let y = s.div_int(n);
                h.contains(&y).then_some(GroupElement::Scalar(y))
            }
            (GroupDescriptor::IntVector(_), GroupElement::Vector(v)) => {
                let nb = BigInt::from(n);
                if v.iter().all(|c| (c % &nb).is_zero()) {
                    Some(GroupElement::Vector(v.iter().map(|c| c / &nb).collect()))
                } else {
                    None
                }
            }
            (GroupDescriptor::AffineQ, GroupElement::Affine { scale, shift }) => {
                rational_root(scale, n).map(|r| {
                    // (r, c)^n = (r^n, c (1 + r + ... + r^(n-1)))
                    let mut geom = Rational::zero();
                    let mut p = Rational::one();
                    for _ in 0..n {
                        geom += &p;
                        p *= &r;
                    }
                    GroupElement::Affine { scale: r, shift: shift / geom }
                })
            }
            (
                GroupDescriptor::Lex(a, b) | GroupDescriptor::Product(a, b),
                GroupElement::Pair(x1, x2),
            ) => match (a.divide(x1, n)?, b.divide(x2, n)?) {
                (Some(y1), Some(y2)) => Some(GroupElement::pair(y1, y2)),
                _ => None,
            },
            _ => return Err(self.shape_error(x)),
        })
    }

    /// A canonical strictly positive element of a linearly ordered
    /// descriptor: `1` for discrete scalar heads, a picked point of `(0, 1)`
    /// for dense ones.
    pub fn strict_positive(&self) -> Result<GroupElement> {
        match self {
            GroupDescriptor::Scalar(h) => {
                if h.is_dense() {
                    Ok(GroupElement::Scalar(h.pick_strictly_between(&h.zero(), &h.one())?))
                } else {
                    Ok(GroupElement::Scalar(h.one()))
                }
            }
            GroupDescriptor::IntVector(1) => Ok(GroupElement::Vector(vec![BigInt::one()])),
            GroupDescriptor::AffineQ => Ok(GroupElement::Affine {
                scale: Rational::from_integer(BigInt::from(2)),
                shift: Rational::zero(),
            }),
            GroupDescriptor::Lex(a, b) => Ok(GroupElement::pair(a.strict_positive()?, b.zero())),
            _ => Err(AlgebraError::Unsupported(format!(
                "{self} is not linearly ordered"
            ))),
        }
    }

    /// Strong unit test: every element is dominated by some multiple of `u`.
    pub fn is_strong_unit(&self, u: &GroupElement) -> Result<bool> {
        self.check(u)?;
        Ok(match (self, u) {
            (GroupDescriptor::Scalar(_), GroupElement::Scalar(s)) => s.signum().is_gt(),
            (GroupDescriptor::IntVector(_), GroupElement::Vector(v)) => {
                v.iter().all(|c| c >= &BigInt::one())
            }
            (GroupDescriptor::AffineQ, GroupElement::Affine { scale, .. }) => {
                scale > &Rational::one()
            }
            (GroupDescriptor::Lex(a, _), GroupElement::Pair(h, _)) => a.is_strong_unit(h)?,
            (GroupDescriptor::Product(a, b), GroupElement::Pair(x1, x2)) => {
                a.is_strong_unit(x1)? && b.is_strong_unit(x2)?
            }
            _ => false,
        })
    }

    /// Head and bottom factors of a lexicographic product.
    pub fn lex_parts(&self) -> Option<(&GroupDescriptor, &GroupDescriptor)> {
        match self {
            GroupDescriptor::Lex(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

fn rational_root(x: &Rational, n: u64) -> Option<Rational> {
    if !x.is_positive() {
        return None;
    }
    let n32 = u32::try_from(n).ok()?;
    let root = |v: &BigInt| {
        let r = v.nth_root(n32);
        (num_traits::pow::pow(r.clone(), n as usize) == *v).then_some(r)
    };
    Some(Rational::new(root(x.numer())?, root(x.denom())?))
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Scalar(h) => write!(f, "{h}"),
            GroupDescriptor::IntVector(k) => write!(f, "Z^{k}"),
            GroupDescriptor::AffineQ => write!(f, "Aff"),
            GroupDescriptor::Lex(a, b) => write!(f, "lex({a}, {b})"),
            GroupDescriptor::Product(a, b) => write!(f, "prod({a}, {b})"),
        }
    }
}

/// A po-group with a fixed strong unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitalPoGroup {
    group: GroupDescriptor,
    unit: GroupElement,
}

impl UnitalPoGroup {
    pub fn new(group: GroupDescriptor, unit: GroupElement) -> Result<Self> {
        group.validate()?;
        group.check(&unit)?;
        if !group.is_strong_unit(&unit)? {
            return Err(AlgebraError::Precondition(format!(
                "{unit} is not a strong unit of {group}"
            )));
        }
        Ok(UnitalPoGroup { group, unit })
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn unit(&self) -> &GroupElement {
        &self.unit
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn zz() -> GroupDescriptor {
        GroupDescriptor::lex(GroupDescriptor::z(), GroupDescriptor::z())
    }

    #[test]
    fn arithmetic_examples() {
        let z2 = GroupDescriptor::IntVector(2);
        let s = z2.add(&GroupElement::vector(&[1, 2]), &GroupElement::vector(&[3, -5])).unwrap();
        assert_eq!(s, GroupElement::vector(&[4, -3]));

        let aff = GroupDescriptor::AffineQ;
        let x = GroupElement::affine(int(2), int(1));
        let y = GroupElement::affine(int(3), int(0));
        assert_eq!(aff.add(&x, &y).unwrap(), GroupElement::affine(int(6), int(1)));
        assert_eq!(aff.add(&y, &x).unwrap(), GroupElement::affine(int(6), int(3)));

        let qz = GroupDescriptor::lex(GroupDescriptor::q(), GroupDescriptor::z());
        let e = GroupElement::pair(GroupElement::rational(rat(1, 2)), GroupElement::integer(7));
        let n = qz.neg(&e).unwrap();
        assert_eq!(n, GroupElement::pair(GroupElement::rational(rat(-1, 2)), GroupElement::integer(-7)));
    }

    #[test]
    fn mixing_shapes_fails() {
        let z2 = GroupDescriptor::IntVector(2);
        assert!(z2.add(&GroupElement::vector(&[1, 2]), &GroupElement::vector(&[1])).is_err());
        assert!(zz().add(&GroupElement::integer(1), &GroupElement::integer(1)).is_err());
    }

    #[test]
    fn lex_head_must_be_linear() {
        let bad = GroupDescriptor::lex(GroupDescriptor::IntVector(2), GroupDescriptor::z());
        assert!(bad.validate().is_err());
        assert!(zz().validate().is_ok());
    }

    #[test]
    fn predicates_are_consistent() {
        let descs = [
            GroupDescriptor::z(),
            GroupDescriptor::IntVector(3),
            GroupDescriptor::AffineQ,
            zz(),
            GroupDescriptor::lex(GroupDescriptor::q(), GroupDescriptor::IntVector(2)),
            GroupDescriptor::product(GroupDescriptor::AffineQ, GroupDescriptor::z()),
            GroupDescriptor::lex(GroupDescriptor::z(), GroupDescriptor::AffineQ),
        ];
        for d in &descs {
            if d.is_linearly_ordered() {
                assert!(d.is_lattice(), "{d}");
            }
            if d.is_lattice() {
                assert!(d.is_directed(), "{d}");
            }
            assert!(d.is_torsion_free());
        }
    }

    #[test]
    fn center_examples() {
        let z2 = GroupDescriptor::IntVector(2);
        assert!(z2.center_member(&GroupElement::vector(&[5, -2])).unwrap());
        let aff = GroupDescriptor::AffineQ;
        assert!(aff.center_member(&GroupElement::affine(int(1), int(0))).unwrap());
        assert!(!aff.center_member(&GroupElement::affine(int(2), int(0))).unwrap());
        // conjugating by (1,1) moves (2,0)
        let c = GroupElement::affine(int(1), int(1));
        let x = GroupElement::affine(int(2), int(0));
        assert_ne!(aff.add(&c, &x).unwrap(), aff.add(&x, &c).unwrap());
    }

    #[test]
    fn divide_roots() {
        let aff = GroupDescriptor::AffineQ;
        let x = GroupElement::affine(int(4), int(3));
        let r = aff.divide(&x, 2).unwrap().unwrap();
        assert_eq!(aff.mul_int(&r, 2).unwrap(), x);
        assert!(aff.divide(&GroupElement::affine(int(2), int(0)), 2).unwrap().is_none());
        let qz = GroupDescriptor::lex(GroupDescriptor::q(), GroupDescriptor::z());
        let u = GroupElement::pair(GroupElement::rational(int(1)), GroupElement::integer(1));
        assert!(qz.divide(&u, 2).unwrap().is_none());
        let u0 = GroupElement::pair(GroupElement::rational(int(1)), GroupElement::integer(0));
        assert_eq!(
            qz.divide(&u0, 3).unwrap().unwrap(),
            GroupElement::pair(GroupElement::rational(rat(1, 3)), GroupElement::integer(0))
        );
    }

    #[test]
    fn strong_units() {
        let z2 = GroupDescriptor::IntVector(2);
        assert!(UnitalPoGroup::new(z2.clone(), GroupElement::vector(&[1, 1])).is_ok());
        assert!(UnitalPoGroup::new(z2, GroupElement::vector(&[1, 0])).is_err());
        let u = GroupElement::pair(GroupElement::integer(1), GroupElement::integer(-4));
        assert!(UnitalPoGroup::new(zz(), u).is_ok());
    }
}
