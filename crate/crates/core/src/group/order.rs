use std::cmp::Ordering;

use crate::error::{AlgebraError, Result};

use super::{GroupDescriptor, GroupElement};

impl GroupDescriptor {
    /// Exact comparison in a linearly ordered descriptor.
    pub fn compare_linear(&self, x: &GroupElement, y: &GroupElement) -> Result<Ordering> {
        match (self, x, y) {
            (GroupDescriptor::Scalar(_), GroupElement::Scalar(a), GroupElement::Scalar(b)) => {
                a.compare(b)
            }
            (GroupDescriptor::IntVector(1), GroupElement::Vector(a), GroupElement::Vector(b))
                if a.len() == 1 && b.len() == 1 =>
            {
                Ok(a[0].cmp(&b[0]))
            }
            (
                GroupDescriptor::AffineQ,
                GroupElement::Affine { scale: a, shift: b },
                GroupElement::Affine { scale: c, shift: e },
            ) => Ok(a.cmp(c).then_with(|| b.cmp(e))),
            (GroupDescriptor::Lex(top, bottom), GroupElement::Pair(x1, x2), GroupElement::Pair(y1, y2)) => {
                Ok(match top.compare_linear(x1, y1)? {
                    Ordering::Equal => bottom.compare_linear(x2, y2)?,
                    o => o,
                })
            }
            (GroupDescriptor::IntVector(_) | GroupDescriptor::Product(_, _), _, _) => {
                Err(AlgebraError::Unsupported(format!("{self} is not linearly ordered")))
            }
            _ => Err(AlgebraError::DomainMismatch(format!(
                "cannot compare {x} and {y} in {self}"
            ))),
        }
    }

    pub fn leq(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        match (self, x, y) {
            (GroupDescriptor::IntVector(k), GroupElement::Vector(a), GroupElement::Vector(b))
                if a.len() == *k && b.len() == *k =>
            {
                Ok(a.iter().zip(b).all(|(p, q)| p <= q))
            }
            (GroupDescriptor::Lex(top, bottom), GroupElement::Pair(x1, x2), GroupElement::Pair(y1, y2)) => {
                match top.compare_linear(x1, y1)? {
                    Ordering::Less => Ok(true),
                    Ordering::Greater => Ok(false),
                    Ordering::Equal => bottom.leq(x2, y2),
                }
            }
            (GroupDescriptor::Product(l, r), GroupElement::Pair(x1, x2), GroupElement::Pair(y1, y2)) => {
                Ok(l.leq(x1, y1)? && r.leq(x2, y2)?)
            }
            _ => Ok(self.compare_linear(x, y)? != Ordering::Greater),
        }
    }

    pub fn lt(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        Ok(x != y && self.leq(x, y)?)
    }

    pub fn positive_cone_member(&self, x: &GroupElement) -> Result<bool> {
        self.leq(&self.zero(), x)
    }

    fn split(xs: &[GroupElement]) -> Result<(Vec<GroupElement>, Vec<GroupElement>)> {
        let mut heads = Vec::with_capacity(xs.len());
        let mut tails = Vec::with_capacity(xs.len());
        for x in xs {
            heads.push(x.head()?.clone());
            tails.push(x.tail()?.clone());
        }
        Ok((heads, tails))
    }

    fn extreme(&self, xs: &[GroupElement], want: Ordering) -> Result<GroupElement> {
        let mut best = xs[0].clone();
        for x in &xs[1..] {
            if self.compare_linear(x, &best)? == want {
                best = x.clone();
            }
        }
        Ok(best)
    }

    fn bound(&self, xs: &[GroupElement], lower: bool) -> Result<GroupElement> {
        if xs.is_empty() {
            return Err(AlgebraError::Precondition("bound of an empty list".into()));
        }
        for x in xs {
            self.check(x)?;
        }
        let want = if lower { Ordering::Less } else { Ordering::Greater };
        match self {
            GroupDescriptor::Scalar(_) | GroupDescriptor::AffineQ => self.extreme(xs, want),
            GroupDescriptor::IntVector(k) => {
                let mut out = Vec::with_capacity(*k);
                for i in 0..*k {
                    let coords = xs.iter().map(|x| match x {
                        GroupElement::Vector(v) => &v[i],
                        _ => unreachable!("checked shape"),
                    });
                    let c = if lower { coords.min() } else { coords.max() };
                    out.push(c.cloned().unwrap_or_default());
                }
                Ok(GroupElement::Vector(out))
            }
            GroupDescriptor::Product(l, r) => {
                let (heads, tails) = Self::split(xs)?;
                Ok(GroupElement::pair(l.bound(&heads, lower)?, r.bound(&tails, lower)?))
            }
            GroupDescriptor::Lex(top, bottom) => {
                let (heads, tails) = Self::split(xs)?;
                if heads.iter().all(|h| h == &heads[0]) {
                    return Ok(GroupElement::pair(heads[0].clone(), bottom.bound(&tails, lower)?));
                }
                let e = top.extreme(&heads, want)?;
                let delta = top.strict_positive()?;
                let h = if lower { top.sub(&e, &delta)? } else { top.add(&e, &delta)? };
                Ok(GroupElement::pair(h, bottom.zero()))
            }
        }
    }

    /// An element below every member of `xs`: the meet in a lattice, and for a
    /// lexicographic product with differing heads `(min head - delta, 0)`.
    pub fn lower_bound(&self, xs: &[GroupElement]) -> Result<GroupElement> {
        if !self.is_directed() {
            return Err(AlgebraError::Unsupported(format!("{self} is not directed")));
        }
        self.bound(xs, true)
    }

    pub fn upper_bound(&self, xs: &[GroupElement]) -> Result<GroupElement> {
        if !self.is_directed() {
            return Err(AlgebraError::Unsupported(format!("{self} is not directed")));
        }
        self.bound(xs, false)
    }

    fn lattice_op(&self, x: &GroupElement, y: &GroupElement, lower: bool) -> Result<Option<GroupElement>> {
        self.check(x)?;
        self.check(y)?;
        let pick = |o: Ordering| {
            let x_wins = if lower { o != Ordering::Greater } else { o != Ordering::Less };
            if x_wins { x.clone() } else { y.clone() }
        };
        Ok(match (self, x, y) {
            (GroupDescriptor::Scalar(_) | GroupDescriptor::AffineQ, _, _) => {
                Some(pick(self.compare_linear(x, y)?))
            }
            (GroupDescriptor::IntVector(_), GroupElement::Vector(a), GroupElement::Vector(b)) => {
                Some(GroupElement::Vector(
                    a.iter()
                        .zip(b)
                        .map(|(p, q)| if lower { p.min(q) } else { p.max(q) }.clone())
                        .collect(),
                ))
            }
            (GroupDescriptor::Lex(top, bottom), GroupElement::Pair(x1, x2), GroupElement::Pair(y1, y2)) => {
                match top.compare_linear(x1, y1)? {
                    Ordering::Equal => bottom
                        .lattice_op(x2, y2, lower)?
                        .map(|t| GroupElement::pair((**x1).clone(), t)),
                    o => Some(pick(o)),
                }
            }
            (GroupDescriptor::Product(l, r), GroupElement::Pair(x1, x2), GroupElement::Pair(y1, y2)) => {
                match (l.lattice_op(x1, y1, lower)?, r.lattice_op(x2, y2, lower)?) {
                    (Some(a), Some(b)) => Some(GroupElement::pair(a, b)),
                    _ => None,
                }
            }
            _ => None,
        })
    }

    /// Greatest lower bound, `None` when it does not exist.
    pub fn meet(&self, x: &GroupElement, y: &GroupElement) -> Result<Option<GroupElement>> {
        self.lattice_op(x, y, true)
    }

    pub fn join(&self, x: &GroupElement, y: &GroupElement) -> Result<Option<GroupElement>> {
        self.lattice_op(x, y, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn zz() -> GroupDescriptor {
        GroupDescriptor::lex(GroupDescriptor::z(), GroupDescriptor::z())
    }

    fn p(a: i64, b: i64) -> GroupElement {
        GroupElement::pair(GroupElement::integer(a), GroupElement::integer(b))
    }

    #[test]
    fn lex_order_examples() {
        let g = zz();
        assert!(g.leq(&p(1, 5), &p(2, -100)).unwrap());
        assert!(!g.leq(&p(0, 3), &p(0, 1)).unwrap());
        assert!(g.positive_cone_member(&p(0, 3)).unwrap());
        assert!(g.positive_cone_member(&p(1, -5)).unwrap());
        assert!(!g.positive_cone_member(&p(0, -1)).unwrap());
    }

    #[test]
    fn product_order_is_partial() {
        let z2 = GroupDescriptor::IntVector(2);
        let x = GroupElement::vector(&[1, 0]);
        let y = GroupElement::vector(&[0, 1]);
        assert!(!z2.leq(&x, &y).unwrap());
        assert!(!z2.leq(&y, &x).unwrap());
        assert!(z2.compare_linear(&x, &y).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        let z2 = GroupDescriptor::IntVector(2);
        let lb = z2
            .lower_bound(&[GroupElement::vector(&[1, 5]), GroupElement::vector(&[3, 2])])
            .unwrap();
        assert_eq!(lb, GroupElement::vector(&[1, 2]));

        let q = GroupDescriptor::q();
        let lb = q
            .lower_bound(&[GroupElement::rational(rat(1, 2)), GroupElement::rational(rat(-1, 3))])
            .unwrap();
        assert_eq!(lb, GroupElement::rational(rat(-1, 3)));

        let g = zz();
        let xs = [p(0, 4), p(1, -7)];
        let lb = g.lower_bound(&xs).unwrap();
        assert_eq!(lb, p(-1, 0));
        for x in &xs {
            assert!(g.leq(&lb, x).unwrap());
        }
    }

    #[test]
    fn dense_head_bounds_use_picked_delta() {
        let g = GroupDescriptor::lex(GroupDescriptor::q(), GroupDescriptor::z());
        let a = GroupElement::pair(GroupElement::rational(int(0)), GroupElement::integer(3));
        let b = GroupElement::pair(GroupElement::rational(int(1)), GroupElement::integer(-3));
        let lb = g.lower_bound(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(lb, GroupElement::pair(GroupElement::rational(rat(-1, 2)), GroupElement::integer(0)));
        let ub = g.upper_bound(&[a, b]).unwrap();
        assert_eq!(ub, GroupElement::pair(GroupElement::rational(rat(3, 2)), GroupElement::integer(0)));
    }

    #[test]
    fn affine_order_and_meets() {
        let aff = GroupDescriptor::AffineQ;
        let x = GroupElement::affine(int(2), int(0));
        let y = GroupElement::affine(int(3), int(1));
        assert!(aff.leq(&x, &y).unwrap());
        assert!(aff.positive_cone_member(&GroupElement::affine(int(1), int(1))).unwrap());
        assert!(!aff.positive_cone_member(&GroupElement::affine(rat(1, 2), int(9))).unwrap());
        assert_eq!(aff.meet(&x, &y).unwrap(), Some(x.clone()));
        assert_eq!(aff.join(&x, &y).unwrap(), Some(y));
    }

    #[test]
    fn lex_meets_need_bottom_lattice() {
        let g = GroupDescriptor::lex(GroupDescriptor::z(), GroupDescriptor::IntVector(2));
        let x = GroupElement::pair(GroupElement::integer(0), GroupElement::vector(&[1, 0]));
        let y = GroupElement::pair(GroupElement::integer(0), GroupElement::vector(&[0, 1]));
        assert_eq!(
            g.meet(&x, &y).unwrap(),
            Some(GroupElement::pair(GroupElement::integer(0), GroupElement::vector(&[0, 0])))
        );
    }
}
