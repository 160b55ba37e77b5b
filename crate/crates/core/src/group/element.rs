use std::fmt;

use num_bigint::BigInt;

use crate::error::{AlgebraError, Result};
use crate::scalar::{Rational, Scalar};

/// A value shaped like some [`super::GroupDescriptor`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Scalar(Scalar),
    Vector(Vec<BigInt>),
    Affine { scale: Rational, shift: Rational },
    Pair(Box<GroupElement>, Box<GroupElement>),
}

impl GroupElement {
    pub fn pair(a: GroupElement, b: GroupElement) -> Self {
        GroupElement::Pair(Box::new(a), Box::new(b))
    }

    pub fn integer(n: i64) -> Self {
        GroupElement::Scalar(Scalar::Rational(Rational::from_integer(BigInt::from(n))))
    }

    pub fn rational(r: Rational) -> Self {
        GroupElement::Scalar(Scalar::Rational(r))
    }

    pub fn vector(xs: &[i64]) -> Self {
        GroupElement::Vector(xs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn affine(scale: Rational, shift: Rational) -> Self {
        GroupElement::Affine { scale, shift }
    }

    pub fn head(&self) -> Result<&GroupElement> {
        match self {
            GroupElement::Pair(a, _) => Ok(a),
            _ => Err(AlgebraError::DomainMismatch(format!("{self} is not a pair"))),
        }
    }

    pub fn tail(&self) -> Result<&GroupElement> {
        match self {
            GroupElement::Pair(_, b) => Ok(b),
            _ => Err(AlgebraError::DomainMismatch(format!("{self} is not a pair"))),
        }
    }

    pub fn as_scalar(&self) -> Result<&Scalar> {
        match self {
            GroupElement::Scalar(s) => Ok(s),
            _ => Err(AlgebraError::DomainMismatch(format!("{self} is not a scalar"))),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Scalar(s) => write!(f, "{s}"),
            GroupElement::Vector(v) if v.len() == 1 => write!(f, "{}", v[0]),
            GroupElement::Vector(v) => {
                write!(f, "(")?;
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            GroupElement::Affine { scale, shift } => write!(f, "({scale}, {shift})"),
            GroupElement::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}
