use std::collections::{BTreeSet, VecDeque};

use crate::error::{AlgebraError, Result};

use super::FinitePea;

/// A subset of a finite algebra as a bitmask over element identifiers.
pub type ElementSet = u64;

const MAX_IDEALS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealInfo {
    pub set: ElementSet,
    pub maximal: bool,
    pub normal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealReport {
    /// Sorted by cardinality, then by bitmask.
    pub ideals: Vec<IdealInfo>,
    /// Intersection of the maximal ideals (everything if there are none).
    pub radical: ElementSet,
    /// Intersection of the maximal ideals that are also normal.
    pub normal_radical: ElementSet,
}

pub fn members(set: ElementSet) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| set & (1u64 << i) != 0)
}

/// The smallest ideal containing `seed`.
pub fn ideal_closure(e: &FinitePea, seed: ElementSet) -> ElementSet {
    let mut set = seed | (1 << e.zero_id());
    loop {
        let mut next = set;
        for x in members(set) {
            for y in e.elements() {
                if e.le(y, x) {
                    next |= 1 << y;
                }
            }
        }
        for x in members(next) {
            for y in members(next) {
                if let Some(s) = e.add(x, y) {
                    next |= 1 << s;
                }
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

pub fn is_normal(e: &FinitePea, ideal: ElementSet) -> bool {
    e.elements().all(|x| {
        let left: BTreeSet<usize> = members(ideal).filter_map(|i| e.add(x, i)).collect();
        let right: BTreeSet<usize> = members(ideal).filter_map(|j| e.add(j, x)).collect();
        left == right
    })
}

/// All ideals, found by closing `{0}` under one-element extensions.
pub fn ideals_enumerate(e: &FinitePea) -> Result<IdealReport> {
    let all = e.all_mask();
    let start = ideal_closure(e, 0);
    let mut seen: BTreeSet<ElementSet> = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        for x in e.elements() {
            if i & (1 << x) != 0 {
                continue;
            }
            let j = ideal_closure(e, i | (1 << x));
            if seen.insert(j) {
                if seen.len() > MAX_IDEALS {
                    return Err(AlgebraError::SizeCap { size: seen.len(), cap: MAX_IDEALS });
                }
                queue.push_back(j);
            }
        }
    }
    let mut sets: Vec<ElementSet> = seen.into_iter().collect();
    sets.sort_by_key(|s| (s.count_ones(), *s));
    let proper: Vec<ElementSet> = sets.iter().copied().filter(|&s| s != all).collect();
    let mut ideals = Vec::with_capacity(sets.len());
    let mut radical = all;
    let mut normal_radical = all;
    for &s in &sets {
        let maximal = s != all && !proper.iter().any(|&t| t != s && t & s == s);
        let normal = is_normal(e, s);
        if maximal {
            radical &= s;
            if normal {
                normal_radical &= s;
            }
        }
        ideals.push(IdealInfo { set: s, maximal, normal });
    }
    Ok(IdealReport { ideals, radical, normal_radical })
}

/// Elements `a` such that `n a` is defined for every `n`. In a finite
/// cancellative algebra this is always `{0}`.
pub fn infinitesimals_finite(e: &FinitePea) -> ElementSet {
    let mut set = 0;
    for a in e.elements() {
        if e.multiple_id(a, e.size() as u64 + 1).is_some() {
            set |= 1 << a;
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_ideals() {
        let e = FinitePea::chain(2);
        let r = ideals_enumerate(&e).unwrap();
        let sets: Vec<_> = r.ideals.iter().map(|i| i.set).collect();
        assert_eq!(sets, vec![0b001, 0b111]);
        assert!(r.ideals[0].maximal);
        assert_eq!(r.radical, 0b001);
    }

    #[test]
    fn boolean_ideals() {
        let e = FinitePea::boolean(2);
        let r = ideals_enumerate(&e).unwrap();
        let sets: Vec<_> = r.ideals.iter().map(|i| i.set).collect();
        assert_eq!(sets, vec![0b0001, 0b0011, 0b0101, 0b1111]);
        assert_eq!(r.ideals.iter().filter(|i| i.maximal).count(), 2);
        assert!(r.ideals.iter().all(|i| i.normal));
        assert_eq!(r.radical, 0b0001);
    }

    #[test]
    fn finite_infinitesimals_are_trivial() {
        for e in [FinitePea::chain(5), FinitePea::boolean(3), FinitePea::mo2()] {
            assert_eq!(infinitesimals_finite(&e), 1 << e.zero_id());
        }
    }
}
