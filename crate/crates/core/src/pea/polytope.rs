//! Exact vertex enumeration by the double description method.

use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::scalar::Rational;

/// Largest dimension accepted by [`vertex_enumerate`].
pub const MAX_DIMENSION: usize = 10;
const MAX_CONSTRAINTS: usize = 128;

/// `a . x >= b`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub a: Vec<Rational>,
    pub b: Rational,
}

#[derive(Clone, Debug)]
struct Vertex {
    point: Vec<Rational>,
    tight: u128,
}

fn dot(a: &[Rational], x: &[Rational]) -> Rational {
    a.iter().zip(x).fold(Rational::zero(), |acc, (p, q)| acc + p * q)
}

fn adjacent(vs: &[Vertex], i: usize, j: usize) -> bool {
    let common = vs[i].tight & vs[j].tight;
    !vs.iter()
        .enumerate()
        .any(|(k, v)| k != i && k != j && v.tight & common == common)
}

/// Vertices of `{x in [0,1]^dim : h.a . x >= h.b for all h}`, sorted.
pub fn vertex_enumerate(dim: usize, constraints: &[Halfspace]) -> Result<Vec<Vec<Rational>>> {
    if dim > MAX_DIMENSION {
        return Err(AlgebraError::DimensionCap { dim, cap: MAX_DIMENSION });
    }
    if 2 * dim + constraints.len() > MAX_CONSTRAINTS {
        return Err(AlgebraError::SizeCap {
            size: 2 * dim + constraints.len(),
            cap: MAX_CONSTRAINTS,
        });
    }
    let mut vs: Vec<Vertex> = (0..1usize << dim)
        .map(|mask| {
            let mut tight = 0u128;
            let point = (0..dim)
                .map(|j| {
                    if mask & (1 << j) == 0 {
                        tight |= 1 << (2 * j);
                        Rational::zero()
                    } else {
                        tight |= 1 << (2 * j + 1);
                        Rational::one()
                    }
                })
                .collect();
            Vertex { point, tight }
        })
        .collect();

    for (k, h) in constraints.iter().enumerate() {
        let bit = 1u128 << (2 * dim + k);
        let vals: Vec<Rational> = vs.iter().map(|v| dot(&h.a, &v.point) - &h.b).collect();
        let mut next = Vec::new();
        for (v, val) in vs.iter().zip(&vals) {
            if val.is_zero() {
                next.push(Vertex { point: v.point.clone(), tight: v.tight | bit });
            } else if *val > Rational::zero() {
                next.push(v.clone());
            }
        }
        for (i, vi) in vals.iter().enumerate() {
            if *vi <= Rational::zero() {
                continue;
            }
            for (j, vj) in vals.iter().enumerate() {
                if *vj >= Rational::zero() || !adjacent(&vs, i, j) {
                    continue;
                }
                let t = vi / (vi - vj);
                let point = vs[i]
                    .point
                    .iter()
                    .zip(&vs[j].point)
                    .map(|(p, m)| p + &t * (m - p))
                    .collect();
                next.push(Vertex { point, tight: (vs[i].tight & vs[j].tight) | bit });
            }
        }
        vs = next;
        if vs.is_empty() {
            break;
        }
    }
    let mut out: Vec<Vec<Rational>> = vs.into_iter().map(|v| v.point).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn simplex_in_square() {
        // x + y <= 1
        let h = Halfspace { a: vec![int(-1), int(-1)], b: int(-1) };
        let vs = vertex_enumerate(2, &[h]).unwrap();
        assert_eq!(vs, vec![vec![int(0), int(0)], vec![int(0), int(1)], vec![int(1), int(0)]]);
    }

    #[test]
    fn cut_corner_creates_vertices() {
        // x + y >= 1/2
        let h = Halfspace { a: vec![int(1), int(1)], b: rat(1, 2) };
        let vs = vertex_enumerate(2, &[h]).unwrap();
        assert_eq!(vs.len(), 5);
        assert!(vs.contains(&vec![rat(1, 2), int(0)]));
    }

    #[test]
    fn infeasible_is_empty() {
        let h = Halfspace { a: vec![int(1)], b: int(2) };
        assert!(vertex_enumerate(1, &[h]).unwrap().is_empty());
    }

    #[test]
    fn dimension_cap() {
        assert!(matches!(
            vertex_enumerate(11, &[]),
            Err(AlgebraError::DimensionCap { dim: 11, cap: 10 })
        ));
    }
}
