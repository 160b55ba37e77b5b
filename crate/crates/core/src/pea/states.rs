use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::group::GroupElement;
use crate::scalar::{Rational, Scalar};

use super::ideals::ElementSet;
use super::polytope::{vertex_enumerate, Halfspace};
use super::{FinitePea, IntervalPea};

/// A state: normalised and additive on defined sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeaState {
    /// Values indexed by element identifier.
    FiniteTable(Vec<Rational>),
    /// `(t, g) -> t` on `Γ(Lex(Scalar(H), G), (1, g0))`.
    FirstCoordinate,
}

impl PeaState {
    pub fn value_finite(&self, i: usize) -> Result<Rational> {
        match self {
            PeaState::FiniteTable(v) => v.get(i).cloned().ok_or_else(|| {
                AlgebraError::DomainMismatch(format!("no state value for element {i}"))
            }),
            PeaState::FirstCoordinate => Err(AlgebraError::DomainMismatch(
                "the first-coordinate state lives on interval algebras".into(),
            )),
        }
    }

    pub fn value_interval(&self, e: &IntervalPea, x: &GroupElement) -> Result<Scalar> {
        match self {
            PeaState::FirstCoordinate => {
                if !e.has_unit_head_one() {
                    return Err(AlgebraError::Unsupported(
                        "the first-coordinate state needs a unit of the form (1, g0)".into(),
                    ));
                }
                e.check_member(x)?;
                e.first_coordinate(x)
            }
            PeaState::FiniteTable(_) => Err(AlgebraError::DomainMismatch(
                "a finite state table cannot evaluate interval elements".into(),
            )),
        }
    }

    /// Normalisation, range and additivity on every defined sum.
    pub fn is_state_on(&self, e: &FinitePea) -> Result<bool> {
        let v = match self {
            PeaState::FiniteTable(v) if v.len() == e.size() => v,
            _ => return Ok(false),
        };
        if !v[e.one_id()].is_one() || v.iter().any(|x| *x < Rational::zero() || *x > Rational::one()) {
            return Ok(false);
        }
        Ok(e.defined_sums().all(|(a, b, c)| v[c] == &v[a] + &v[b]))
    }

    /// `Ker(s) = {x : s(x) = 0}`.
    pub fn kernel(&self, e: &FinitePea) -> Result<ElementSet> {
        let mut set = 0;
        for i in e.elements() {
            if self.value_finite(i)?.is_zero() {
                set |= 1 << i;
            }
        }
        Ok(set)
    }
}

/// Reduced row echelon form in place; returns the pivot column of each row.
fn rref(rows: &mut Vec<Vec<Rational>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Extremal states of a finite algebra, sorted by value table and computed exactly: the affine hull
/// comes from the additivity equations, the vertices from double description
/// inside the unit cube of the free coordinates.
pub fn states_finite(e: &FinitePea) -> Result<Vec<PeaState>> {
    let n = e.size();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut norm = vec![Rational::zero(); n + 1];
    norm[e.one_id()] = Rational::one();
    norm[n] = Rational::one();
    rows.push(norm);
    let mut seen = std::collections::BTreeSet::new();
    for (a, b, c) in e.defined_sums() {
        let mut row = vec![Rational::zero(); n + 1];
        row[c] += Rational::one();
        row[a] -= Rational::one();
        row[b] -= Rational::one();
        if row.iter().all(Zero::is_zero) || !seen.insert(row.clone()) {
            continue;
        }
        rows.push(row);
    }
    let pivots = rref(&mut rows, n + 1);
    if pivots.contains(&n) {
        return Ok(Vec::new());
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let k = free.len();
    // each pivot variable is rhs - sum(coef * free)
    let mut exprs: Vec<(usize, Rational, Vec<Rational>)> = Vec::new();
    for (row, &p) in rows.iter().zip(&pivots) {
        let coefs = free.iter().map(|&f| -row[f].clone()).collect();
        exprs.push((p, row[n].clone(), coefs));
    }
    let constraints: Vec<Halfspace> = exprs
        .iter()
        .map(|(_, c, coefs)| Halfspace { a: coefs.clone(), b: -c.clone() })
        .collect();
    let vertices = vertex_enumerate(k, &constraints)?;
    let mut tables = Vec::with_capacity(vertices.len());
    for x in vertices {
        let mut v = vec![Rational::zero(); n];
        for (j, &f) in free.iter().enumerate() {
            v[f] = x[j].clone();
        }
        for (p, c, coefs) in &exprs {
            v[*p] = coefs.iter().zip(&x).fold(c.clone(), |acc, (a, y)| acc + a * y);
        }
        tables.push(v);
    }
    tables.sort();
    let mut out = Vec::with_capacity(tables.len());
    for v in tables {
        let s = PeaState::FiniteTable(v);
        if !s.is_state_on(e)? {
            return Err(AlgebraError::Internal("vertex enumeration produced a non-state".into()));
        }
        out.push(s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn table(s: &PeaState) -> &Vec<Rational> {
        match s {
            PeaState::FiniteTable(v) => v,
            _ => unreachable!(),
        }
    }

    #[test]
    fn chain_has_unique_state() {
        let e = FinitePea::chain(2);
        let s = states_finite(&e).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(table(&s[0]), &vec![int(0), rat(1, 2), int(1)]);
    }

    #[test]
    fn boolean_square_has_two_extremal_states() {
        let e = FinitePea::boolean(2);
        let s = states_finite(&e).unwrap();
        assert_eq!(s.len(), 2);
        let xs: Vec<_> = s.iter().map(|s| table(s)[1].clone()).collect();
        assert_eq!(xs, vec![int(0), int(1)]);
    }

    #[test]
    fn trivial_two_element_algebra() {
        let e = FinitePea::chain(1);
        let s = states_finite(&e).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].is_state_on(&e).unwrap());
    }

    #[test]
    fn mo2_states_form_a_square() {
        let s = states_finite(&FinitePea::mo2()).unwrap();
        assert_eq!(s.len(), 4);
    }
}
