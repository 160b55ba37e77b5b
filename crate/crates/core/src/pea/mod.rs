//! Pseudo effect algebras: finite partial tables and unit intervals of
//! unital po-groups.

mod cyclic;
mod finite;
mod ideals;
mod interval;
mod polytope;
mod states;

use std::fmt;

use crate::error::Result;

pub use cyclic::{
    cyclic_elements_finite, cyclic_elements_interval, cyclic_exchange_check, is_symmetric,
    CyclicElement, ExchangeDomain, ExchangeVerdict, SymmetryCheck, SymmetryVerdict,
};
pub use finite::{finite_rdp_search, Axiom, AxiomVerdict, FinitePea, PeaTable, MAX_FINITE_SIZE};
pub use ideals::{
    ideal_closure, ideals_enumerate, infinitesimals_finite, is_normal, members, ElementSet, IdealInfo,
    IdealReport,
};
pub use interval::IntervalPea;
pub use polytope::{vertex_enumerate, Halfspace, MAX_DIMENSION};
pub use states::{states_finite, PeaState};

/// Operations shared by both presentations. Undefined partial results are
/// `None`, never errors; errors signal malformed arguments.
pub trait Pea {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn contains(&self, x: &Self::Elem) -> bool;
    fn sum(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Option<Self::Elem>>;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool>;
    /// The `d` with `d + a = b`.
    fn minus_left(&self, b: &Self::Elem, a: &Self::Elem) -> Result<Option<Self::Elem>>;
    /// The `c` with `a + c = b`.
    fn minus_right(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Option<Self::Elem>>;
    fn label(&self, x: &Self::Elem) -> String;

    /// Left negation `a^- = 1 \ a`, the `d` with `d + a = 1`.
    fn lneg(&self, a: &Self::Elem) -> Result<Self::Elem> {
        self.minus_left(&self.one(), a)?.ok_or_else(|| {
            crate::AlgebraError::Internal(format!("{} has no left complement", self.label(a)))
        })
    }

    /// Right negation `a^~ = a / 1`, the `c` with `a + c = 1`.
    fn rneg(&self, a: &Self::Elem) -> Result<Self::Elem> {
        self.minus_right(a, &self.one())?.ok_or_else(|| {
            crate::AlgebraError::Internal(format!("{} has no right complement", self.label(a)))
        })
    }

    /// `n a = (n-1) a + a`, when every partial sum is defined.
    fn multiple(&self, a: &Self::Elem, n: u64) -> Result<Option<Self::Elem>> {
        let mut acc = self.zero();
        for _ in 0..n {
            match self.sum(&acc, a)? {
                Some(s) => acc = s,
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }
}

/// Either presentation, for callers that dispatch at run time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyPea {
    Finite(FinitePea),
    Interval(IntervalPea),
}
