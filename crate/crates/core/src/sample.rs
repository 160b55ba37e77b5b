//! Seeded sampling and bounded enumeration of group elements.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::group::{GroupDescriptor, GroupElement};
use crate::scalar::{int, rat, QuadraticNumber, Rational, Scalar, ScalarSubgroup};

/// Largest number of elements [`enumerate_box`] will materialise.
pub const ENUMERATION_CAP: usize = 2_000_000;

/// Independent deterministic stream `stream` of the base seed.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_scalar<R: Rng + ?Sized>(h: &ScalarSubgroup, rng: &mut R, radius: i64) -> Scalar {
    match *h {
        ScalarSubgroup::Cyclic(n) => {
            let n = n as i64;
            Scalar::Rational(rat(rng.gen_range(-radius * n..=radius * n), n))
        }
        ScalarSubgroup::FullQ => {
            let q = rng.gen_range(1..=6);
            Scalar::Rational(rat(rng.gen_range(-radius * q..=radius * q), q))
        }
        ScalarSubgroup::Quadratic(d) => {
            let k = rng.gen_range(-2..=2);
            let m = rng.gen_range(-radius..=radius);
            Scalar::Quadratic(QuadraticNumber::new(int(m), int(k), d))
        }
    }
}

fn small_positive_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rat(rng.gen_range(1..=4), rng.gen_range(1..=4))
}

/// A random element with coordinates roughly within `[-radius, radius]`.
pub fn random_element<R: Rng + ?Sized>(desc: &GroupDescriptor, rng: &mut R, radius: i64) -> GroupElement {
    match desc {
        GroupDescriptor::Scalar(h) => GroupElement::Scalar(random_scalar(h, rng, radius)),
        GroupDescriptor::IntVector(k) => GroupElement::Vector(
            (0..*k).map(|_| BigInt::from(rng.gen_range(-radius..=radius))).collect(),
        ),
        GroupDescriptor::AffineQ => {
            let scale = small_positive_rational(rng);
            let shift = rat(rng.gen_range(-radius..=radius), rng.gen_range(1..=3));
            GroupElement::affine(scale, shift)
        }
        GroupDescriptor::Lex(a, b) | GroupDescriptor::Product(a, b) => GroupElement::pair(
            random_element(a, rng, radius),
            random_element(b, rng, radius),
        ),
    }
}

/// A random element of the positive cone.
pub fn random_positive<R: Rng + ?Sized>(desc: &GroupDescriptor, rng: &mut R, radius: i64) -> GroupElement {
    match desc {
        GroupDescriptor::IntVector(k) => GroupElement::Vector(
            (0..*k).map(|_| BigInt::from(rng.gen_range(0..=radius))).collect(),
        ),
        GroupDescriptor::Scalar(_) | GroupDescriptor::AffineQ => {
            let x = random_element(desc, rng, radius);
            match desc.positive_cone_member(&x) {
                Ok(true) => x,
                _ => desc.neg(&x).unwrap_or_else(|_| desc.zero()),
            }
        }
        GroupDescriptor::Lex(top, bottom) => {
            let h = random_positive(top, rng, radius);
            if h == top.zero() {
                GroupElement::pair(h, random_positive(bottom, rng, radius))
            } else {
                GroupElement::pair(h, random_element(bottom, rng, radius))
            }
        }
        GroupDescriptor::Product(a, b) => {
            GroupElement::pair(random_positive(a, rng, radius), random_positive(b, rng, radius))
        }
    }
}

/// A random element of `[0, u]`. Lexicographic groups over a scalar head
/// choose the head from a grid of `[0, u_head]`; everything else uses
/// rejection sampling with `0` as the last resort.
pub fn random_in_interval<R: Rng + ?Sized>(
    desc: &GroupDescriptor,
    u: &GroupElement,
    rng: &mut R,
    radius: i64,
) -> Result<GroupElement> {
    if let GroupDescriptor::Lex(top, bottom) = desc {
        if let GroupDescriptor::Scalar(h) = top.as_ref() {
            let uh = u.head()?.as_scalar()?;
            let ut = u.tail()?;
            let grid: Vec<Scalar> = head_grid(h, uh)?;
            let t = grid[rng.gen_range(0..grid.len())].clone();
            let tail = if t.is_zero() && uh.is_zero() {
                random_in_interval(bottom, ut, rng, radius)?
            } else if t.is_zero() {
                random_positive(bottom, rng, radius)
            } else if t == *uh {
                let p = random_positive(bottom, rng, radius);
                bottom.sub(ut, &p)?
            } else {
                random_element(bottom, rng, radius)
            };
            return Ok(GroupElement::pair(GroupElement::Scalar(t), tail));
        }
    }
    if let (GroupDescriptor::IntVector(_), GroupElement::Vector(v)) = (desc, u) {
        return Ok(GroupElement::Vector(
            v.iter()
                .map(|c| {
                    let hi = c.clone().max(BigInt::zero());
                    let hi = i64::try_from(hi).unwrap_or(i64::MAX);
                    BigInt::from(rng.gen_range(0..=hi))
                })
                .collect(),
        ));
    }
    let zero = desc.zero();
    for _ in 0..200 {
        let x = random_positive(desc, rng, radius);
        if desc.leq(&x, u)? {
            return Ok(x);
        }
    }
    Ok(zero)
}

/// Head values `0 <= t <= top` used by interval sampling: every point of a
/// cyclic subgroup, small-denominator points for dense ones.
fn head_grid(h: &ScalarSubgroup, top: &Scalar) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    let zero = h.zero();
    let candidates: Vec<Scalar> = match h {
        ScalarSubgroup::Cyclic(n) => {
            let steps = top.scale(&int(*n as i64)).floor_div(&h.one())?;
            let steps = steps.max(BigInt::zero());
            let steps = i64::try_from(steps).unwrap_or(0).min(10_000);
            (0..=steps).map(|i| Scalar::Rational(rat(i, *n as i64))).collect()
        }
        _ => {
            let mut g = h.unit_interval_grid(6);
            g.push(top.clone());
            g
        }
    };
    for c in candidates {
        if c.compare(&zero)?.is_ge() && c.compare(top)?.is_le() {
            out.push(c);
        }
    }
    out.push(top.clone());
    out.dedup();
    Ok(out)
}

fn box_scalars(h: &ScalarSubgroup, radius: i64) -> Result<Vec<Scalar>> {
    match h {
        ScalarSubgroup::Cyclic(n) => {
            let n = *n as i64;
            Ok((-radius * n..=radius * n).map(|i| Scalar::Rational(rat(i, n))).collect())
        }
        _ => Err(AlgebraError::Unsupported(format!(
            "{h} is dense; box enumeration needs a discrete group"
        ))),
    }
}

/// Every element whose coordinates lie in `[-radius, radius]`.
pub fn enumerate_box(desc: &GroupDescriptor, radius: i64) -> Result<Vec<GroupElement>> {
    let out = match desc {
        GroupDescriptor::Scalar(h) => {
            box_scalars(h, radius)?.into_iter().map(GroupElement::Scalar).collect()
        }
        GroupDescriptor::IntVector(k) => {
            let side = (2 * radius + 1) as usize;
            let total = side.checked_pow(*k as u32).unwrap_or(usize::MAX);
            if total > ENUMERATION_CAP {
                return Err(AlgebraError::SizeCap { size: total, cap: ENUMERATION_CAP });
            }
            let mut acc: Vec<Vec<BigInt>> = vec![Vec::new()];
            for _ in 0..*k {
                let mut next = Vec::with_capacity(acc.len() * side);
                for v in &acc {
                    for c in -radius..=radius {
                        let mut w = v.clone();
                        w.push(BigInt::from(c));
                        next.push(w);
                    }
                }
                acc = next;
            }
            acc.into_iter().map(GroupElement::Vector).collect()
        }
        GroupDescriptor::AffineQ => {
            return Err(AlgebraError::Unsupported(
                "the affine group is dense; box enumeration needs a discrete group".into(),
            ))
        }
        GroupDescriptor::Lex(a, b) | GroupDescriptor::Product(a, b) => {
            let xs = enumerate_box(a, radius)?;
            let ys = enumerate_box(b, radius)?;
            let total = xs.len().saturating_mul(ys.len());
            if total > ENUMERATION_CAP {
                return Err(AlgebraError::SizeCap { size: total, cap: ENUMERATION_CAP });
            }
            let mut out = Vec::with_capacity(total);
            for x in &xs {
                for y in &ys {
                    out.push(GroupElement::pair(x.clone(), y.clone()));
                }
            }
            out
        }
    };
    Ok(out)
}

/// Largest absolute coordinate value, used to check box preconditions.
/// Non-integral coordinates are measured by their ceiling.
pub fn coordinate_radius(x: &GroupElement) -> BigInt {
    match x {
        GroupElement::Scalar(s) => match s {
            Scalar::Rational(r) => r.abs().ceil().to_integer(),
            Scalar::Quadratic(q) => q.a().abs().ceil().to_integer() + q.b().abs().ceil().to_integer(),
        },
        GroupElement::Vector(v) => v.iter().map(|c| c.abs()).max().unwrap_or_default(),
        GroupElement::Affine { scale, shift } => {
            scale.abs().ceil().to_integer().max(shift.abs().ceil().to_integer())
        }
        GroupElement::Pair(a, b) => coordinate_radius(a).max(coordinate_radius(b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let g = GroupDescriptor::lex(GroupDescriptor::q(), GroupDescriptor::IntVector(2));
        let a: Vec<_> = (0..5).map(|i| random_element(&g, &mut rng_for(7, i), 10)).collect();
        let b: Vec<_> = (0..5).map(|i| random_element(&g, &mut rng_for(7, i), 10)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn positives_are_positive() {
        let descs = [
            GroupDescriptor::lex(GroupDescriptor::z(), GroupDescriptor::AffineQ),
            GroupDescriptor::product(GroupDescriptor::AffineQ, GroupDescriptor::IntVector(2)),
            GroupDescriptor::scalar(ScalarSubgroup::Quadratic(2)),
        ];
        let mut rng = rng_for(1, 0);
        for d in &descs {
            for _ in 0..200 {
                let x = random_positive(d, &mut rng, 5);
                assert!(d.positive_cone_member(&x).unwrap(), "{d}: {x}");
            }
        }
    }

    #[test]
    fn interval_samples_stay_inside() {
        let g = GroupDescriptor::lex(GroupDescriptor::q(), GroupDescriptor::z());
        let u = GroupElement::pair(GroupElement::integer(1), GroupElement::integer(2));
        let mut rng = rng_for(3, 0);
        for _ in 0..300 {
            let x = random_in_interval(&g, &u, &mut rng, 10).unwrap();
            assert!(g.positive_cone_member(&x).unwrap());
            assert!(g.leq(&x, &u).unwrap(), "{x}");
        }
    }

    #[test]
    fn box_enumeration_counts() {
        let g = GroupDescriptor::lex(GroupDescriptor::z(), GroupDescriptor::IntVector(2));
        assert_eq!(enumerate_box(&g, 2).unwrap().len(), 125);
        let h = GroupDescriptor::scalar(ScalarSubgroup::Cyclic(3));
        assert_eq!(enumerate_box(&h, 1).unwrap().len(), 7);
        assert!(enumerate_box(&GroupDescriptor::q(), 1).is_err());
    }
}
