use std::fmt;

use crate::error::{AlgebraError, Result};

use super::Pea;

/// Largest finite algebra accepted; element sets are `u64` bitmasks.
pub const MAX_FINITE_SIZE: usize = 64;

/// A raw partial addition table, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeaTable {
    pub size: usize,
    pub zero: usize,
    pub one: usize,
    /// Defined sums `(i, j, k)` meaning `i + j = k`.
    pub sums: Vec<(usize, usize, usize)>,
    pub names: Vec<Option<String>>,
}

impl PeaTable {
    pub fn new(size: usize, zero: usize, one: usize) -> Self {
        PeaTable { size, zero, one, sums: Vec::new(), names: vec![None; size] }
    }

    pub fn with_sum(mut self, i: usize, j: usize, k: usize) -> Self {
        self.sums.push((i, j, k));
        self
    }

    pub fn name(&self, i: usize) -> String {
        self.names.get(i).cloned().flatten().unwrap_or_else(|| i.to_string())
    }

    /// The line-based file form: header, optional names, one line per sum.
    pub fn render(&self) -> String {
        let mut s = format!("pea n={} zero={} one={}\n", self.size, self.zero, self.one);
        for (i, n) in self.names.iter().enumerate() {
            if let Some(n) = n {
                s.push_str(&format!("name {i} {n}\n"));
            }
        }
        for (i, j, k) in &self.sums {
            s.push_str(&format!("add {i} {j} {k}\n"));
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// Malformed input: identifiers out of range or conflicting entries.
    Table,
    Pe1,
    Pe2,
    Pe3,
    Pe4,
    /// The derived relation failed to be a partial order with the
    /// two-sided characterisation.
    DerivedOrder,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Table => "table",
            Axiom::Pe1 => "PE1",
            Axiom::Pe2 => "PE2",
            Axiom::Pe3 => "PE3",
            Axiom::Pe4 => "PE4",
            Axiom::DerivedOrder => "order",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomVerdict {
    Valid(FinitePea),
    Invalid { axiom: Axiom, witness: Vec<usize>, detail: String },
}

impl AxiomVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, AxiomVerdict::Valid(_))
    }

    pub fn into_pea(self) -> Result<FinitePea> {
        match self {
            AxiomVerdict::Valid(e) => Ok(e),
            AxiomVerdict::Invalid { axiom, detail, .. } => {
                Err(AlgebraError::LawViolation(format!("{axiom}: {detail}")))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePea {
    size: usize,
    zero: usize,
    one: usize,
    table: Vec<Option<usize>>,
    names: Vec<String>,
    /// `above[a]` has bit `b` set iff `a <= b`.
    above: Vec<u64>,
}

fn invalid(axiom: Axiom, witness: Vec<usize>, detail: String) -> Result<AxiomVerdict> {
    Ok(AxiomVerdict::Invalid { axiom, witness, detail })
}

impl FinitePea {
    /// Exhaustive check of PE1-PE4 on a raw table.
    pub fn check_axioms(raw: &PeaTable) -> Result<AxiomVerdict> {
        let n = raw.size;
        if n == 0 {
            return Err(AlgebraError::Precondition("a PEA needs at least one element".into()));
        }
        if n > MAX_FINITE_SIZE {
            return Err(AlgebraError::SizeCap { size: n, cap: MAX_FINITE_SIZE });
        }
        if raw.zero >= n || raw.one >= n {
            return invalid(Axiom::Table, vec![], "zero or one out of range".into());
        }
        let mut table = vec![None; n * n];
        for &(i, j, k) in &raw.sums {
            if i >= n || j >= n || k >= n {
                return invalid(Axiom::Table, vec![i, j, k], format!("add {i} {j} {k} out of range"));
            }
            match table[i * n + j] {
                Some(prev) if prev != k => {
                    return invalid(
                        Axiom::Table,
                        vec![i, j],
                        format!("{i} + {j} given as both {prev} and {k}"),
                    )
                }
                _ => table[i * n + j] = Some(k),
            }
        }
        let names: Vec<String> = (0..n).map(|i| raw.name(i)).collect();
        let add = |a: usize, b: usize| table[a * n + b];
        let (zero, one) = (raw.zero, raw.one);

        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left = add(a, b).and_then(|ab| add(ab, c));
                    let right = add(b, c).and_then(|bc| add(a, bc));
                    if left != right {
                        return invalid(
                            Axiom::Pe1,
                            vec![a, b, c],
                            format!(
                                "({} + {}) + {} and {} + ({} + {}) disagree",
                                names[a], names[b], names[c], names[a], names[b], names[c]
                            ),
                        );
                    }
                }
            }
        }
        for a in 0..n {
            let right = (0..n).filter(|&d| add(a, d) == Some(one)).count();
            let left = (0..n).filter(|&e| add(e, a) == Some(one)).count();
            if right != 1 || left != 1 {
                return invalid(
                    Axiom::Pe2,
                    vec![a],
                    format!("{} has {right} right and {left} left complements", names[a]),
                );
            }
        }
        for a in 0..n {
            for b in 0..n {
                if let Some(s) = add(a, b) {
                    let d = (0..n).any(|d| add(d, a) == Some(s));
                    let e = (0..n).any(|e| add(b, e) == Some(s));
                    if !(d && e) {
                        return invalid(
                            Axiom::Pe3,
                            vec![a, b],
                            format!("{} + {} cannot be rewritten", names[a], names[b]),
                        );
                    }
                }
            }
        }
        for a in 0..n {
            if a != zero && (add(a, one).is_some() || add(one, a).is_some()) {
                return invalid(
                    Axiom::Pe4,
                    vec![a],
                    format!("{} is nonzero but sums with 1", names[a]),
                );
            }
        }

        let mut above = vec![0u64; n];
        let mut below_left = vec![0u64; n];
        for a in 0..n {
            for c in 0..n {
                if let Some(b) = add(a, c) {
                    above[a] |= 1 << b;
                }
                if let Some(b) = add(c, a) {
                    below_left[a] |= 1 << b;
                }
            }
        }
        for a in 0..n {
            if above[a] != below_left[a] {
                return invalid(
                    Axiom::DerivedOrder,
                    vec![a],
                    format!("left and right orders differ above {}", names[a]),
                );
            }
            if above[a] & (1 << a) == 0 || above[zero] & (1 << a) == 0 || above[a] & (1 << one) == 0 {
                return invalid(
                    Axiom::DerivedOrder,
                    vec![a],
                    format!("{} is not between 0 and 1 reflexively", names[a]),
                );
            }
            for b in 0..n {
                if b != a && above[a] & (1 << b) != 0 && above[b] & (1 << a) != 0 {
                    return invalid(Axiom::DerivedOrder, vec![a, b], "antisymmetry fails".into());
                }
                if above[a] & (1 << b) != 0 && above[b] & !above[a] != 0 {
                    return invalid(Axiom::DerivedOrder, vec![a, b], "transitivity fails".into());
                }
            }
        }
        Ok(AxiomVerdict::Valid(FinitePea { size: n, zero, one, table, names, above }))
    }

    /// The chain `Γ(Z, n) = {0, 1/n, ..., 1}`.
    pub fn chain(n: usize) -> FinitePea {
        let mut t = PeaTable::new(n + 1, 0, n);
        for i in 0..=n {
            t.names[i] = Some(chain_label(i, n));
            for j in 0..=n - i {
                t.sums.push((i, j, i + j));
            }
        }
        Self::check_axioms(&t).and_then(AxiomVerdict::into_pea).expect("chains are PEAs")
    }

    /// The Boolean algebra with `k` atoms, as an effect algebra of disjoint unions.
    pub fn boolean(k: usize) -> FinitePea {
        let n = 1usize << k;
        let mut t = PeaTable::new(n, 0, n - 1);
        for a in 0..n {
            t.names[a] = Some(subset_label(a, k));
            for b in 0..n {
                if a & b == 0 {
                    t.sums.push((a, b, a | b));
                }
            }
        }
        Self::check_axioms(&t).and_then(AxiomVerdict::into_pea).expect("Boolean algebras are PEAs")
    }

    /// The horizontal sum of two four-element Boolean algebras:
    /// `{0, x, x', y, y', 1}` with only `x + x' = y + y' = 1`.
    pub fn mo2() -> FinitePea {
        let mut t = PeaTable::new(6, 0, 5);
        for (i, name) in ["0", "x", "x'", "y", "y'", "1"].iter().enumerate() {
            t.names[i] = Some(name.to_string());
            t.sums.push((0, i, i));
            if i != 0 {
                t.sums.push((i, 0, i));
            }
        }
        t.sums.extend([(1, 2, 5), (2, 1, 5), (3, 4, 5), (4, 3, 5)]);
        Self::check_axioms(&t).and_then(AxiomVerdict::into_pea).expect("MO2 is a PEA")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name).or_else(|| {
            name.parse::<usize>().ok().filter(|&i| i < self.size)
        })
    }

    pub fn add(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a * self.size + b]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.above[a] & (1 << b) != 0
    }

    pub fn defined_sums(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.size;
        (0..n * n).filter_map(move |ij| self.table[ij].map(|k| (ij / n, ij % n, k)))
    }

    pub fn is_commutative(&self) -> bool {
        self.defined_sums().all(|(a, b, c)| self.add(b, a) == Some(c))
    }

    pub fn to_table(&self) -> PeaTable {
        PeaTable {
            size: self.size,
            zero: self.zero,
            one: self.one,
            sums: self.defined_sums().collect(),
            names: self.names.iter().cloned().map(Some).collect(),
        }
    }

    pub fn zero_id(&self) -> usize {
        self.zero
    }

    pub fn one_id(&self) -> usize {
        self.one
    }

    pub fn lneg_id(&self, a: usize) -> usize {
        (0..self.size).find(|&d| self.add(d, a) == Some(self.one)).expect("PE2")
    }

    pub fn rneg_id(&self, a: usize) -> usize {
        (0..self.size).find(|&c| self.add(a, c) == Some(self.one)).expect("PE2")
    }

    pub fn multiple_id(&self, a: usize, n: u64) -> Option<usize> {
        let mut acc = self.zero;
        for _ in 0..n {
            acc = self.add(acc, a)?;
        }
        Some(acc)
    }

    /// Bitmask of every element.
    pub fn all_mask(&self) -> u64 {
        if self.size == 64 {
            u64::MAX
        } else {
            (1u64 << self.size) - 1
        }
    }
}

fn chain_label(i: usize, n: usize) -> String {
    let g = gcd(i, n);
    match (i, n / g) {
        (0, _) => "0".into(),
        (_, 1) => "1".into(),
        (_, d) => format!("{}/{}", i / g, d),
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

const ATOMS: &[u8] = b"pqrstvwxyz";

fn subset_label(a: usize, k: usize) -> String {
    if a == 0 {
        return "0".into();
    }
    if a == (1 << k) - 1 {
        return "1".into();
    }
    (0..k).filter(|i| a & (1 << i) != 0).map(|i| ATOMS[i % ATOMS.len()] as char).collect()
}

impl Pea for FinitePea {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero
    }

    fn one(&self) -> usize {
        self.one
    }

    fn contains(&self, x: &usize) -> bool {
        *x < self.size
    }

    fn sum(&self, a: &usize, b: &usize) -> Result<Option<usize>> {
        self.guard(*a)?;
        self.guard(*b)?;
        Ok(self.add(*a, *b))
    }

    fn leq(&self, a: &usize, b: &usize) -> Result<bool> {
        self.guard(*a)?;
        self.guard(*b)?;
        Ok(self.le(*a, *b))
    }

    fn minus_left(&self, b: &usize, a: &usize) -> Result<Option<usize>> {
        self.guard(*a)?;
        self.guard(*b)?;
        Ok((0..self.size).find(|&d| self.add(d, *a) == Some(*b)))
    }

    fn minus_right(&self, a: &usize, b: &usize) -> Result<Option<usize>> {
        self.guard(*a)?;
        self.guard(*b)?;
        Ok((0..self.size).find(|&c| self.add(*a, c) == Some(*b)))
    }

    fn label(&self, x: &usize) -> String {
        self.names.get(*x).cloned().unwrap_or_else(|| format!("#{x}"))
    }
}

impl FinitePea {
    fn guard(&self, x: usize) -> Result<()> {
        if x < self.size {
            Ok(())
        } else {
            Err(AlgebraError::DomainMismatch(format!("element {x} outside a PEA of size {}", self.size)))
        }
    }
}

/// Exhaustive Riesz refinement search inside a finite algebra: a table with
/// `a1 = c11 + c12`, `a2 = c21 + c22`, `b1 = c11 + c21`, `b2 = c12 + c22`.
pub fn finite_rdp_search(
    e: &FinitePea,
    a1: usize,
    a2: usize,
    b1: usize,
    b2: usize,
) -> Result<Option<[usize; 4]>> {
    let lhs = e.sum(&a1, &a2)?;
    let rhs = e.sum(&b1, &b2)?;
    if lhs.is_none() || lhs != rhs {
        return Err(AlgebraError::Precondition(
            "a1 + a2 and b1 + b2 must be defined and equal".into(),
        ));
    }
    for c11 in e.elements() {
        let Some(c12) = e.minus_right(&c11, &a1)? else { continue };
        let Some(c21) = e.minus_right(&c11, &b1)? else { continue };
        let Some(c22) = e.minus_right(&c21, &a2)? else { continue };
        if e.add(c12, c22) == Some(b2) {
            return Ok(Some([c11, c12, c21, c22]));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_examples_are_valid() {
        for e in [FinitePea::chain(2), FinitePea::chain(4), FinitePea::boolean(2), FinitePea::boolean(3), FinitePea::mo2()] {
            assert!(e.le(e.zero_id(), e.one_id()));
        }
        let c3 = FinitePea::chain(2);
        assert_eq!(c3.name(1), "1/2");
        assert_eq!(c3.lneg_id(1), 1);
        assert_eq!(c3.rneg_id(1), 1);
    }

    #[test]
    fn missing_complement_is_pe2() {
        let t = PeaTable::new(3, 0, 2)
            .with_sum(0, 0, 0)
            .with_sum(0, 1, 1)
            .with_sum(1, 0, 1)
            .with_sum(0, 2, 2)
            .with_sum(2, 0, 2);
        match FinitePea::check_axioms(&t).unwrap() {
            AxiomVerdict::Invalid { axiom, witness, .. } => {
                assert_eq!(axiom, Axiom::Pe2);
                assert_eq!(witness, vec![1]);
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn conflicting_entries_rejected() {
        let t = PeaTable::new(2, 0, 1).with_sum(0, 0, 0).with_sum(0, 0, 1);
        assert!(matches!(
            FinitePea::check_axioms(&t).unwrap(),
            AxiomVerdict::Invalid { axiom: Axiom::Table, .. }
        ));
    }

    #[test]
    fn mo2_has_no_refinement() {
        let e = FinitePea::mo2();
        assert_eq!(finite_rdp_search(&e, 1, 2, 3, 4).unwrap(), None);
        let b = FinitePea::boolean(2);
        assert!(finite_rdp_search(&b, 1, 2, 2, 1).unwrap().is_some());
    }

    #[test]
    fn table_round_trip() {
        let e = FinitePea::boolean(2);
        let again = FinitePea::check_axioms(&e.to_table()).unwrap().into_pea().unwrap();
        assert_eq!(again, e);
    }
}
