//! Exact scalars for the subgroups of the reals that serve as lexicographic heads.
//!
//! Three kinds of subgroup containing `1` are supported: the cyclic groups
//! `(1/n)Z`, the full rationals `Q`, and the quadratic lattices `Z + Z*sqrt(d)`.
//! Every order decision is made in exact arithmetic.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `a + b*sqrt(d)` with rational coefficients and a square-free `d >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadraticNumber {
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        QuadraticNumber { a, b, d }
    }

    pub fn from_rational(a: Rational, d: u64) -> Self {
        QuadraticNumber { a, b: Rational::zero(), d }
    }

    /// `sqrt(d) - floor(sqrt(d))`, the fractional generator used for dense witnesses.
    pub fn frac_sqrt(d: u64) -> Self {
        let s = (d as u128).sqrt() as i64;
        QuadraticNumber::new(int(-s), int(1), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Both coefficients are integers, i.e. the value lies in `Z + Z*sqrt(d)`.
    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(AlgebraError::DomainMismatch(format!(
                "sqrt({}) and sqrt({}) live in different fields",
                self.d, other.d
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(QuadraticNumber::new(&self.a + &other.a, &self.b + &other.b, self.d))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(QuadraticNumber::new(&self.a - &other.a, &self.b - &other.b, self.d))
    }

    pub fn neg(&self) -> Self {
        QuadraticNumber::new(-&self.a, -&self.b, self.d)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        QuadraticNumber::new(&self.a * k, &self.b * k, self.d)
    }

    /// Sign of `a + b*sqrt(d)` by case analysis on the signs of `a`, `b` and
    /// an exact comparison of `a^2` with `b^2 d`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (_, Ordering::Equal) => sa,
            (Ordering::Equal, _) => sb,
            (x, y) if x == y => x,
            _ => {
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * Rational::from_integer(BigInt::from(self.d));
                // a^2 == b^2 d is impossible for non-square d with b != 0
                if a2 > b2d {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        Ok(self.sub(other)?.signum())
    }

    /// Exact quotient in `Q(sqrt d)`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let dd = Rational::from_integer(BigInt::from(self.d));
        let den = &other.a * &other.a - &other.b * &other.b * &dd;
        if den.is_zero() {
            return Err(AlgebraError::Precondition("division by zero".into()));
        }
        let num_a = &self.a * &other.a - &self.b * &other.b * &dd;
        let num_b = &self.b * &other.a - &self.a * &other.b;
        Ok(QuadraticNumber::new(num_a / &den, num_b / &den, self.d))
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        let q = self.a.denom().lcm(self.b.denom());
        let qr = Rational::from_integer(q.clone());
        let p1 = (&self.a * &qr).to_integer();
        let p2 = (&self.b * &qr).to_integer();
        let root_floor = if p2.is_zero() {
            BigInt::zero()
        } else {
            let r = (&p2 * &p2 * BigInt::from(self.d)).sqrt();
            if p2.is_positive() {
                r
            } else {
                -r - 1
            }
        };
        (p1 + root_floor).div_floor(&q)
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// A subgroup of the reals containing `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarSubgroup {
    /// `(1/n)Z`
    Cyclic(u64),
    FullQ,
    /// `Z + Z*sqrt(d)`
    Quadratic(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HClass {
    Cyclic(u64),
    Dense,
}

fn is_square_free(d: u64) -> bool {
    let mut p = 2u64;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

impl ScalarSubgroup {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ScalarSubgroup::Cyclic(0) => Err(AlgebraError::Precondition(
                "cyclic subgroup (1/n)Z needs n >= 1".into(),
            )),
            ScalarSubgroup::Quadratic(d) if d < 2 || !is_square_free(d) => Err(
                AlgebraError::Precondition(format!("sqrt({d}) needs a square-free d >= 2")),
            ),
            _ => Ok(()),
        }
    }

    pub fn classify(&self) -> HClass {
        match *self {
            ScalarSubgroup::Cyclic(n) => HClass::Cyclic(n),
            ScalarSubgroup::FullQ | ScalarSubgroup::Quadratic(_) => HClass::Dense,
        }
    }

    pub fn is_dense(&self) -> bool {
        self.classify() == HClass::Dense
    }

    pub fn zero(&self) -> Scalar {
        self.from_integer(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_integer(1)
    }

    pub fn from_integer(&self, n: i64) -> Scalar {
        match *self {
            ScalarSubgroup::Quadratic(d) => {
                Scalar::Quadratic(QuadraticNumber::from_rational(int(n), d))
            }
            _ => Scalar::Rational(int(n)),
        }
    }

    /// Embeds a rational; fails when it is not a member.
    pub fn from_rational(&self, r: Rational) -> Result<Scalar> {
        let s = match *self {
            ScalarSubgroup::Quadratic(d) => Scalar::Quadratic(QuadraticNumber::from_rational(r, d)),
            _ => Scalar::Rational(r),
        };
        if self.contains(&s) {
            Ok(s)
        } else {
            Err(AlgebraError::DomainMismatch(format!("{s} is not in {self}")))
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match (self, x) {
            (ScalarSubgroup::Cyclic(n), Scalar::Rational(r)) => {
                (BigInt::from(*n) % r.denom()).is_zero()
            }
            (ScalarSubgroup::FullQ, Scalar::Rational(_)) => true,
            (ScalarSubgroup::Quadratic(d), Scalar::Quadratic(q)) => {
                q.d() == *d && q.is_integral()
            }
            _ => false,
        }
    }

    fn as_quadratic(&self, d: u64, x: &Scalar) -> Result<QuadraticNumber> {
        match x {
            Scalar::Rational(r) => Ok(QuadraticNumber::from_rational(r.clone(), d)),
            Scalar::Quadratic(q) if q.d() == d => Ok(q.clone()),
            _ => Err(AlgebraError::DomainMismatch(format!("{x} is not comparable in {self}"))),
        }
    }

    /// A deterministic element strictly between `lo` and `hi`.
    ///
    /// `Q` yields the simplest rational (smallest denominator, then smallest
    /// numerator). `(1/n)Z` yields the admissible point closest to zero.
    /// `Z + Z*sqrt(d)` tries integers first and then `m + k*theta` with
    /// `theta = sqrt(d) - floor(sqrt(d))`, smallest `k >= 1`, then smallest `|m|`.
    pub fn pick_strictly_between(&self, lo: &Scalar, hi: &Scalar) -> Result<Scalar> {
        if lo.compare(hi)? != Ordering::Less {
            return Err(AlgebraError::Precondition(format!("empty interval ({lo}, {hi})")));
        }
        let none = || AlgebraError::NoElement {
            subgroup: self.to_string(),
            lo: lo.to_string(),
            hi: hi.to_string(),
        };
        match *self {
            ScalarSubgroup::FullQ => {
                let (l, h) = (lo.as_rational()?, hi.as_rational()?);
                Ok(Scalar::Rational(simplest_between(l, h)))
            }
            ScalarSubgroup::Cyclic(n) => {
                let (l, h) = (lo.as_rational()?, hi.as_rational()?);
                let nr = Rational::from_integer(BigInt::from(n));
                let i_min = (l * &nr).floor().to_integer() + 1;
                let i_max = (h * &nr).ceil().to_integer() - 1;
                let i = closest_to_zero(&i_min, &i_max).ok_or_else(none)?;
                Ok(Scalar::Rational(Rational::new(i, BigInt::from(n))))
            }
            ScalarSubgroup::Quadratic(d) => {
                let l = self.as_quadratic(d, lo)?;
                let h = self.as_quadratic(d, hi)?;
                if let Some(m) = closest_to_zero(&(l.floor() + 1), &(h.ceil() - 1)) {
                    return Ok(Scalar::Quadratic(QuadraticNumber::from_rational(
                        Rational::from_integer(m),
                        d,
                    )));
                }
                let theta = QuadraticNumber::frac_sqrt(d);
                for k in 1..=QUADRATIC_SEARCH_LIMIT {
                    let v = theta.scale(&int(k));
                    let m_min = l.sub(&v)?.floor() + 1;
                    let m_max = h.sub(&v)?.ceil() - 1;
                    if let Some(m) = closest_to_zero(&m_min, &m_max) {
                        let m = QuadraticNumber::from_rational(Rational::from_integer(m), d);
                        return Ok(Scalar::Quadratic(m.add(&v)?));
                    }
                }
                Err(none())
            }
        }
    }

    /// Every element of `[0, 1]` in this subgroup whose "size" is bounded by
    /// `bound`: denominators for rational kinds, `|m|, |k|` for quadratic ones.
    /// Sorted ascending, always containing `0` and `1`.
    pub fn unit_interval_grid(&self, bound: u64) -> Vec<Scalar> {
        thread_local! {
            static GRIDS: RefCell<HashMap<(ScalarSubgroup, u64), Vec<Scalar>>> = RefCell::new(HashMap::new());
        }
        if let Some(g) = GRIDS.with(|c| c.borrow().get(&(*self, bound)).cloned()) {
            return g;
        }
        let g = self.build_grid(bound);
        GRIDS.with(|c| c.borrow_mut().insert((*self, bound), g.clone()));
        g
    }

    fn build_grid(&self, bound: u64) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = Vec::new();
        match *self {
            ScalarSubgroup::Cyclic(n) => {
                for i in 0..=n {
                    out.push(Scalar::Rational(rat(i as i64, n as i64)));
                }
            }
            ScalarSubgroup::FullQ => {
                for q in 1..=bound.max(1) {
                    for p in 0..=q {
                        let r = rat(p as i64, q as i64);
                        if r.denom() == &BigInt::from(q) || q == 1 {
                            out.push(Scalar::Rational(r));
                        }
                    }
                }
            }
            ScalarSubgroup::Quadratic(d) => {
                let b = bound as i64;
                for k in -b..=b {
                    for m in -b * 2..=b * 2 {
                        let x = QuadraticNumber::new(int(m), int(k), d);
                        let s = x.signum();
                        let one_minus = QuadraticNumber::from_rational(int(1), d)
                            .sub(&x)
                            .map(|y| y.signum())
                            .unwrap_or(Ordering::Less);
                        if s != Ordering::Less && one_minus != Ordering::Less {
                            out.push(Scalar::Quadratic(x));
                        }
                    }
                }
            }
        }
        out.sort_by(|x, y| x.compare(y).unwrap_or(Ordering::Equal));
        out.dedup();
        out
    }
}

const QUADRATIC_SEARCH_LIMIT: i64 = 10_000_000;

fn closest_to_zero(lo: &BigInt, hi: &BigInt) -> Option<BigInt> {
    if lo > hi {
        None
    } else if lo.is_positive() {
        Some(lo.clone())
    } else if hi.is_negative() {
        Some(hi.clone())
    } else {
        Some(BigInt::zero())
    }
}

/// The simplest rational in the open interval `(lo, hi)` (Stern–Brocot descent
/// expressed through continued fractions).
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo < hi);
    if lo.is_negative() && hi.is_positive() {
        return Rational::zero();
    }
    if !hi.is_positive() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    let cand = &fl + Rational::one();
    if &cand < hi {
        return cand;
    }
    let y_lo = (hi - &fl).recip();
    let y = if *lo == fl {
        y_lo.floor() + Rational::one()
    } else {
        simplest_between(&y_lo, &(lo - &fl).recip())
    };
    fl + y.recip()
}

impl fmt::Display for ScalarSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarSubgroup::Cyclic(1) => write!(f, "Z"),
            ScalarSubgroup::Cyclic(n) => write!(f, "Z/{n}"),
            ScalarSubgroup::FullQ => write!(f, "Q"),
            ScalarSubgroup::Quadratic(d) => write!(f, "Q[sqrt {d}]"),
        }
    }
}

/// A value of some scalar subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Quadratic(QuadraticNumber),
}

impl Scalar {
    pub fn as_rational(&self) -> Result<&Rational> {
        match self {
            Scalar::Rational(r) => Ok(r),
            Scalar::Quadratic(_) => Err(AlgebraError::DomainMismatch(format!(
                "{self} is not a plain rational"
            ))),
        }
    }

    fn mismatch(&self, other: &Scalar) -> AlgebraError {
        AlgebraError::DomainMismatch(format!("cannot combine {self} with {other}"))
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(x + y)),
            (Scalar::Quadratic(x), Scalar::Quadratic(y)) => Ok(Scalar::Quadratic(x.add(y)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Quadratic(x) => Scalar::Quadratic(x.neg()),
        }
    }

    pub fn scale(&self, k: &Rational) -> Scalar {
        match self {
            Scalar::Rational(x) => Scalar::Rational(x * k),
            Scalar::Quadratic(x) => Scalar::Quadratic(x.scale(k)),
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Scalar {
        self.scale(&Rational::from_integer(k.clone()))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Quadratic(x) => x.is_zero(),
        }
    }

    pub fn signum(&self) -> Ordering {
        match self {
            Scalar::Rational(x) => x.cmp(&Rational::zero()),
            Scalar::Quadratic(x) => x.signum(),
        }
    }

    /// Exact order of two scalars of the same kind.
    pub fn compare(&self, other: &Scalar) -> Result<Ordering> {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(x.cmp(y)),
            (Scalar::Quadratic(x), Scalar::Quadratic(y)) => x.cmp_exact(y),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn min(&self, other: &Scalar) -> Result<Scalar> {
        Ok(if self.compare(other)? == Ordering::Greater { other.clone() } else { self.clone() })
    }

    pub fn max(&self, other: &Scalar) -> Result<Scalar> {
        Ok(if self.compare(other)? == Ordering::Less { other.clone() } else { self.clone() })
    }

    /// `floor(self / other)` for a nonzero divisor.
    pub fn floor_div(&self, other: &Scalar) -> Result<BigInt> {
        if other.is_zero() {
            return Err(AlgebraError::Precondition("division by zero".into()));
        }
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok((x / y).floor().to_integer()),
            (Scalar::Quadratic(x), Scalar::Quadratic(y)) => Ok(x.div(y)?.floor()),
            _ => Err(self.mismatch(other)),
        }
    }

    /// Divides by an integer, staying in the same field.
    pub fn div_int(&self, n: u64) -> Scalar {
        self.scale(&Rational::new(BigInt::one(), BigInt::from(n)))
    }

    /// Denominator of a rational scalar, `None` for quadratic values.
    pub fn denominator(&self) -> Option<&BigInt> {
        match self {
            Scalar::Rational(r) => Some(r.denom()),
            Scalar::Quadratic(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Quadratic(q) => {
                q.a().to_f64().unwrap_or(f64::NAN)
                    + q.b().to_f64().unwrap_or(f64::NAN) * (q.d() as f64).sqrt()
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Quadratic(q) => write!(f, "{q}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2(a: i64, b: i64) -> Scalar {
        Scalar::Quadratic(QuadraticNumber::new(int(a), int(b), 2))
    }

    #[test]
    fn compare_examples() {
        let x = Scalar::Rational(rat(3, 4));
        assert_eq!(x.compare(&x).unwrap(), Ordering::Equal);
        assert_eq!(q2(1, 0).compare(&q2(0, 0)).unwrap(), Ordering::Greater);
        // (sqrt 2)^2 = 2 > 1 = 1^2, so -1 + sqrt 2 is positive
        assert_eq!(q2(-1, 1).compare(&q2(0, 0)).unwrap(), Ordering::Greater);
        assert_eq!(q2(1, -1).signum(), Ordering::Less);
        assert_eq!(q2(3, -2).signum(), Ordering::Greater); // 9 > 8
        assert_eq!(q2(-3, 2).signum(), Ordering::Less);
    }

    #[test]
    fn compare_mixed_kinds_is_an_error() {
        let err = Scalar::Rational(int(1)).compare(&q2(1, 0)).unwrap_err();
        assert!(matches!(err, AlgebraError::DomainMismatch(_)));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(ScalarSubgroup::Cyclic(4).classify(), HClass::Cyclic(4));
        assert_eq!(ScalarSubgroup::FullQ.classify(), HClass::Dense);
        assert_eq!(ScalarSubgroup::Quadratic(2).classify(), HClass::Dense);
    }

    #[test]
    fn quadratic_has_arbitrarily_small_positive_elements() {
        // powers of sqrt(2) - 1 shrink geometrically and stay inside Z + Z sqrt 2
        let h = ScalarSubgroup::Quadratic(2);
        let base = QuadraticNumber::new(int(-1), int(1), 2);
        let mut p = QuadraticNumber::from_rational(int(1), 2);
        let mul = |x: &QuadraticNumber, y: &QuadraticNumber| {
            QuadraticNumber::new(
                x.a() * y.a() + x.b() * y.b() * int(2),
                x.a() * y.b() + x.b() * y.a(),
                2,
            )
        };
        for k in 1..=10u32 {
            p = mul(&p, &base);
            let eps = QuadraticNumber::from_rational(rat(1, 2i64.pow(k)), 2);
            let mut found = None;
            let mut q = p.clone();
            for _ in 0..40 {
                if q.signum() == Ordering::Greater && q.cmp_exact(&eps).unwrap() == Ordering::Less {
                    found = Some(q.clone());
                    break;
                }
                q = mul(&q, &base);
            }
            let e = Scalar::Quadratic(found.expect("small element"));
            assert!(h.contains(&e));
        }
    }

    #[test]
    fn pick_examples() {
        let z = |r: Rational| Scalar::Rational(r);
        let q = ScalarSubgroup::FullQ;
        assert_eq!(q.pick_strictly_between(&z(int(0)), &z(int(1))).unwrap(), z(rat(1, 2)));
        let c3 = ScalarSubgroup::Cyclic(3);
        assert_eq!(c3.pick_strictly_between(&z(int(0)), &z(rat(1, 2))).unwrap(), z(rat(1, 3)));
        let c2 = ScalarSubgroup::Cyclic(2);
        let err = c2.pick_strictly_between(&z(int(0)), &z(rat(1, 4))).unwrap_err();
        assert!(matches!(err, AlgebraError::NoElement { .. }));
    }

    #[test]
    fn simplest_rational_cases() {
        assert_eq!(simplest_between(&rat(-3, 2), &rat(5, 2)), int(0));
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(2, 5));
        assert_eq!(simplest_between(&rat(-1, 2), &rat(-1, 3)), rat(-2, 5));
        assert_eq!(simplest_between(&int(2), &int(4)), int(3));
        assert_eq!(simplest_between(&rat(3, 10), &rat(1, 3)), rat(4, 13));
    }

    #[test]
    fn quadratic_pick_prefers_integers_then_small_k() {
        let h = ScalarSubgroup::Quadratic(2);
        let p = h.pick_strictly_between(&q2(0, 0), &q2(3, 0)).unwrap();
        assert_eq!(p, q2(1, 0));
        let p = h.pick_strictly_between(&q2(0, 0), &q2(1, 0)).unwrap();
        assert_eq!(p, q2(-1, 1));
        let tiny = Scalar::Quadratic(QuadraticNumber::from_rational(rat(1, 100), 2));
        let p = h.pick_strictly_between(&q2(0, 0), &tiny).unwrap();
        assert!(h.contains(&p));
        assert_eq!(p.signum(), Ordering::Greater);
        assert_eq!(p.compare(&tiny).unwrap(), Ordering::Less);
    }

    #[test]
    fn floor_of_quadratic() {
        assert_eq!(QuadraticNumber::new(int(0), int(1), 2).floor(), BigInt::from(1));
        assert_eq!(QuadraticNumber::new(int(0), int(-1), 2).floor(), BigInt::from(-2));
        assert_eq!(QuadraticNumber::new(rat(1, 2), rat(1, 3), 5).floor(), BigInt::from(1));
        assert_eq!(QuadraticNumber::new(int(7), int(0), 3).floor(), BigInt::from(7));
    }

    #[test]
    fn membership() {
        assert!(ScalarSubgroup::Cyclic(4).contains(&Scalar::Rational(rat(1, 2))));
        assert!(!ScalarSubgroup::Cyclic(4).contains(&Scalar::Rational(rat(1, 3))));
        assert!(!ScalarSubgroup::Quadratic(2).contains(&Scalar::Quadratic(
            QuadraticNumber::from_rational(rat(1, 2), 2)
        )));
        assert!(ScalarSubgroup::Quadratic(2).validate().is_ok());
        assert!(ScalarSubgroup::Quadratic(8).validate().is_err());
        assert!(ScalarSubgroup::Quadratic(4).validate().is_err());
    }
}
