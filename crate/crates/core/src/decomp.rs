//! H-decompositions, the state correspondence, ordered decompositions and
//! perfectness.
//!
//! Finite algebras are checked exhaustively. Interval algebras
//! `Γ(lex(H, G), (1, g0))` are infinite, so their decompositions are symbolic
//! (`E_t` is the set of elements with head `t`) and the laws are checked on
//! seeded samples drawn from a finite grid of `[0, 1]_H`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::group::{GroupDescriptor, GroupElement};
use crate::pea::{
    cyclic_elements_finite, cyclic_elements_interval, ideal_closure, ideals_enumerate,
    infinitesimals_finite, is_normal, is_symmetric, members, states_finite, AnyPea, ElementSet,
    FinitePea, IntervalPea, Pea, PeaState,
};
use crate::sample::{random_element, random_in_interval, random_positive, rng_for};
use crate::scalar::{QuadraticNumber, Rational, Scalar, ScalarSubgroup};

/// Grid bound used when `[0, 1]_H` has to be sampled.
pub const DEFAULT_GRID_BOUND: u64 = 6;
const RADIUS: i64 = 12;
const ZERO_DOUBLINGS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub samples: usize,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { samples: 200, seed: 0 }
    }
}

/// `t` as an element of `h`, if it is one.
pub fn embed_scalar(h: &ScalarSubgroup, t: &Scalar) -> Option<Scalar> {
    match t {
        Scalar::Rational(r) => h.from_rational(r.clone()).ok(),
        Scalar::Quadratic(q) if q.b().is_zero() => h.from_rational(q.a().clone()).ok(),
        Scalar::Quadratic(_) => h.contains(t).then(|| t.clone()),
    }
}

fn same(a: &Scalar, b: &Scalar) -> Result<bool> {
    Ok(a.compare(b)? == Ordering::Equal)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HDecomposition {
    /// Nonempty slices sorted by index. `partial` marks the variant in which
    /// some `t` in `[0, 1]_H` has an empty slice.
    Finite { h: ScalarSubgroup, slices: Vec<(Rational, ElementSet)>, partial: bool },
    /// `E_t = {(t, g)}` on `Γ(lex(H', G), (1, g0))`.
    Lex { h: ScalarSubgroup, partial: bool },
}

impl HDecomposition {
    /// Validates a disjoint cover of a finite algebra by slices indexed in
    /// `[0, 1]_H`. Empty slices are dropped.
    pub fn finite(e: &FinitePea, h: ScalarSubgroup, slices: Vec<(Rational, ElementSet)>) -> Result<Self> {
        h.validate()?;
        let mut seen: ElementSet = 0;
        let mut out: Vec<(Rational, ElementSet)> = Vec::new();
        for (t, set) in slices {
            if set == 0 {
                continue;
            }
            if set & !e.all_mask() != 0 {
                return Err(AlgebraError::DomainMismatch(format!(
                    "slice {t} names elements outside the algebra"
                )));
            }
            if t < Rational::zero() || t > Rational::one() || embed_scalar(&h, &Scalar::Rational(t.clone())).is_none() {
                return Err(AlgebraError::NotHValued(format!("slice index {t} is not in [0, 1] of {h}")));
            }
            if seen & set != 0 || out.iter().any(|(s, _)| *s == t) {
                return Err(AlgebraError::Precondition(format!("slice {t} overlaps another slice")));
            }
            seen |= set;
            out.push((t, set));
        }
        if let Some(x) = members(e.all_mask() & !seen).next() {
            return Err(AlgebraError::Precondition(format!("no slice contains {}", e.name(x))));
        }
        out.sort();
        let keys: Vec<Scalar> = out
            .iter()
            .filter_map(|(t, _)| embed_scalar(&h, &Scalar::Rational(t.clone())))
            .collect();
        let partial = h.is_dense() || h.unit_interval_grid(DEFAULT_GRID_BOUND).iter().any(|t| !keys.contains(t));
        Ok(HDecomposition::Finite { h, slices: out, partial })
    }

    /// The slices by head of `Γ(lex(H', G), (1, g0))`. Fails when some head
    /// value lies outside `H`; partial when `H` has points `H'` lacks.
    pub fn canonical_lex(e: &IntervalPea, h: ScalarSubgroup) -> Result<Self> {
        h.validate()?;
        let (hh, bottom) = lex_unit_one(e)?;
        for t in hh.unit_interval_grid(DEFAULT_GRID_BOUND) {
            if embed_scalar(&h, &t).is_none() {
                let x = slice_witness(e, bottom, &t);
                return Err(AlgebraError::NotHValued(format!("s({x}) = {t} is not in {h}")));
            }
        }
        let partial = first_missing(&h, &hh).is_some();
        Ok(HDecomposition::Lex { h, partial })
    }

    pub fn h(&self) -> ScalarSubgroup {
        match self {
            HDecomposition::Finite { h, .. } | HDecomposition::Lex { h, .. } => *h,
        }
    }

    pub fn is_partial(&self) -> bool {
        match self {
            HDecomposition::Finite { partial, .. } | HDecomposition::Lex { partial, .. } => *partial,
        }
    }

    fn finite_slices(&self) -> Result<&[(Rational, ElementSet)]> {
        match self {
            HDecomposition::Finite { slices, .. } => Ok(slices),
            HDecomposition::Lex { .. } => Err(AlgebraError::DomainMismatch(
                "a symbolic decomposition has no explicit slices".into(),
            )),
        }
    }

    /// The explicit slice at `t` (empty if absent).
    pub fn slice(&self, t: &Rational) -> Result<ElementSet> {
        Ok(self.finite_slices()?.iter().find(|(s, _)| s == t).map_or(0, |(_, set)| *set))
    }

    /// The index of the slice containing `x`.
    pub fn index_of(&self, x: usize) -> Result<Rational> {
        self.finite_slices()?
            .iter()
            .find(|(_, set)| set & (1 << x) != 0)
            .map(|(t, _)| t.clone())
            .ok_or_else(|| AlgebraError::DomainMismatch(format!("element {x} lies in no slice")))
    }

    pub fn render(&self, e: &AnyPea) -> String {
        match (self, e) {
            (HDecomposition::Finite { slices, .. }, AnyPea::Finite(f)) => slices
                .iter()
                .map(|(t, set)| {
                    let names: Vec<&str> = members(*set).map(|x| f.name(x)).collect();
                    format!("E_{t} = {{{}}}", names.join(", "))
                })
                .collect::<Vec<_>>()
                .join("\n"),
            (HDecomposition::Lex { h, .. }, AnyPea::Interval(i)) => {
                let g0 = i.unit().tail().map(|g| g.to_string()).unwrap_or_default();
                format!(
                    "E_0 = {{(0, g) : g >= 0}}\nE_t = {{(t, g)}} for 0 < t < 1 in {h}\nE_1 = {{(1, g) : g <= {g0}}}"
                )
            }
            _ => "decomposition does not match the algebra".into(),
        }
    }
}

/// A point of `[0, 1]_h` outside `hh`.
fn first_missing(h: &ScalarSubgroup, hh: &ScalarSubgroup) -> Option<Scalar> {
    if h == hh {
        return None;
    }
    (1..=DEFAULT_GRID_BOUND).find_map(|b| {
        h.unit_interval_grid(b).into_iter().find(|t| embed_scalar(hh, t).is_none())
    })
}

fn lex_unit_one(e: &IntervalPea) -> Result<(ScalarSubgroup, &GroupDescriptor)> {
    match e.lex_scalar_parts() {
        Some(parts) if e.has_unit_head_one() => Ok(parts),
        _ => Err(AlgebraError::Unsupported(format!(
            "H-decompositions need an interval [0, (1, g0)] of lex(H, G); got [0, {}] in {}",
            e.unit(),
            e.group()
        ))),
    }
}

fn head(x: &GroupElement) -> Result<&Scalar> {
    x.head()?.as_scalar()
}

fn slice_witness(e: &IntervalPea, bottom: &GroupDescriptor, t: &Scalar) -> GroupElement {
    if t.is_zero() {
        e.zero()
    } else if e.lex_scalar_parts().is_some_and(|(hh, _)| same(t, &hh.one()).unwrap_or(false)) {
        e.one()
    } else {
        GroupElement::pair(GroupElement::Scalar(t.clone()), bottom.zero())
    }
}

fn is_unit_head(hh: &ScalarSubgroup, t: &Scalar) -> Result<bool> {
    same(t, &hh.one())
}

fn sample_slice(e: &IntervalPea, bottom: &GroupDescriptor, t: &Scalar, rng: &mut ChaCha8Rng) -> Result<GroupElement> {
    let (hh, _) = lex_unit_one(e)?;
    let tail = if t.is_zero() {
        random_positive(bottom, rng, RADIUS)
    } else if is_unit_head(&hh, t)? {
        let p = random_positive(bottom, rng, RADIUS);
        bottom.sub(e.unit().tail()?, &p)?
    } else {
        random_element(bottom, rng, RADIUS)
    };
    Ok(GroupElement::pair(GroupElement::Scalar(t.clone()), tail))
}

fn pick<'a>(ts: &'a [Scalar], rng: &mut ChaCha8Rng) -> &'a Scalar {
    &ts[rng.gen_range(0..ts.len())]
}

/// Type II laws: negations map `E_t` to `E_{1-t}` and sums land in
/// `E_{s+t}`.
pub fn check_type_ii(e: &AnyPea, d: &HDecomposition, sampling: Sampling) -> Result<()> {
    let violation = |m: String| Err(AlgebraError::LawViolation(m));
    match (e, d) {
        (AnyPea::Finite(f), HDecomposition::Finite { .. }) => {
            let one = Rational::one();
            for x in f.elements() {
                let t = d.index_of(x)?;
                for (label, y) in [("left", f.lneg_id(x)), ("right", f.rneg_id(x))] {
                    if d.index_of(y)? != &one - &t {
                        return violation(format!(
                            "{label} negation of {} (slice {t}) is {} in slice {}",
                            f.name(x),
                            f.name(y),
                            d.index_of(y)?
                        ));
                    }
                }
            }
            for (a, b, c) in f.defined_sums() {
                let (s, t, u) = (d.index_of(a)?, d.index_of(b)?, d.index_of(c)?);
                if u != &s + &t {
                    return violation(format!(
                        "{} + {} = {} lands in slice {u}, expected {}",
                        f.name(a),
                        f.name(b),
                        f.name(c),
                        &s + &t
                    ));
                }
            }
            Ok(())
        }
        (AnyPea::Interval(i), HDecomposition::Lex { .. }) => {
            let one = lex_unit_one(i)?.0.one();
            let mut rng = rng_for(sampling.seed, 21);
            for _ in 0..sampling.samples {
                let x = random_in_interval(i.group(), i.unit(), &mut rng, RADIUS)?;
                let y = random_in_interval(i.group(), i.unit(), &mut rng, RADIUS)?;
                let t = head(&x)?;
                let co = one.sub(t)?;
                for n in [i.lneg(&x)?, i.rneg(&x)?] {
                    if !same(head(&n)?, &co)? {
                        return violation(format!("negation of {x} is {n}, outside E_{co}"));
                    }
                }
                if let Some(z) = i.sum(&x, &y)? {
                    if !same(head(&z)?, &t.add(head(&y)?)?)? {
                        return violation(format!("{x} + {y} = {z} lands in the wrong slice"));
                    }
                }
            }
            Ok(())
        }
        _ => Err(AlgebraError::DomainMismatch("decomposition does not match the algebra".into())),
    }
}

/// Slices are preimages `E_t = s^-1(t)`.
pub fn decomposition_from_state(
    e: &AnyPea,
    s: &PeaState,
    h: ScalarSubgroup,
    sampling: Sampling,
) -> Result<HDecomposition> {
    let d = match (e, s) {
        (AnyPea::Finite(f), PeaState::FiniteTable(v)) => {
            if !s.is_state_on(f)? {
                return Err(AlgebraError::Precondition("the table is not a state".into()));
            }
            let mut slices: Vec<(Rational, ElementSet)> = Vec::new();
            for x in f.elements() {
                let t = &v[x];
                if embed_scalar(&h, &Scalar::Rational(t.clone())).is_none() {
                    return Err(AlgebraError::NotHValued(format!("s({}) = {t} is not in {h}", f.name(x))));
                }
                match slices.iter_mut().find(|(k, _)| k == t) {
                    Some((_, set)) => *set |= 1 << x,
                    None => slices.push((t.clone(), 1 << x)),
                }
            }
            HDecomposition::finite(f, h, slices)?
        }
        (AnyPea::Interval(i), PeaState::FirstCoordinate) => HDecomposition::canonical_lex(i, h)?,
        _ => {
            return Err(AlgebraError::DomainMismatch(
                "state and algebra use different presentations".into(),
            ))
        }
    };
    check_type_ii(e, &d, sampling)?;
    Ok(d)
}

/// The indexing state `s(x) = t` iff `x` lies in `E_t`.
pub fn state_from_decomposition(e: &AnyPea, d: &HDecomposition, sampling: Sampling) -> Result<PeaState> {
    check_type_ii(e, d, sampling)?;
    match (e, d) {
        (AnyPea::Finite(f), HDecomposition::Finite { .. }) => {
            let values = f.elements().map(|x| d.index_of(x)).collect::<Result<Vec<_>>>()?;
            Ok(PeaState::FiniteTable(values))
        }
        (AnyPea::Interval(_), HDecomposition::Lex { .. }) => Ok(PeaState::FirstCoordinate),
        _ => Err(AlgebraError::DomainMismatch("decomposition does not match the algebra".into())),
    }
}

/// Every `t` of the decomposition's grid with a witness element of `E_t`.
pub fn nonempty_slices(e: &AnyPea, d: &HDecomposition) -> Result<Vec<(Scalar, String)>> {
    match (e, d) {
        (AnyPea::Finite(f), HDecomposition::Finite { slices, .. }) => Ok(slices
            .iter()
            .map(|(t, set)| (Scalar::Rational(t.clone()), f.name(members(*set).next().unwrap_or(0)).to_string()))
            .collect()),
        (AnyPea::Interval(i), HDecomposition::Lex { h, .. }) => {
            let (hh, bottom) = lex_unit_one(i)?;
            let mut out = Vec::new();
            for t in h.unit_interval_grid(DEFAULT_GRID_BOUND) {
                let Some(t) = embed_scalar(&hh, &t) else { continue };
                let x = slice_witness(i, bottom, &t);
                if i.contains(&x) && same(head(&x)?, &t)? {
                    out.push((t, x.to_string()));
                }
            }
            Ok(out)
        }
        _ => Err(AlgebraError::DomainMismatch("decomposition does not match the algebra".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedReport {
    /// `E_s <= E_t` whenever `s < t`.
    pub ordered: bool,
    /// `E_s + E_t` exists whenever `s + t < 1`.
    pub sums_below_one: bool,
    pub zero_slice_infinitesimal: bool,
    pub zero_slice_normal: bool,
    /// `E_s + E_t = E_{s+t}` whenever `s + t < 1`.
    pub slice_additivity: bool,
    /// No sum in either order when `s + t > 1`.
    pub no_sums_above_one: bool,
    /// `Rad(E) = Rad_n(E) = E_0`, decided for finite algebras only.
    pub radicals_match: Option<bool>,
    pub pairs_checked: usize,
    pub witness: Option<String>,
}

impl OrderedReport {
    fn new() -> Self {
        OrderedReport {
            ordered: true,
            sums_below_one: true,
            zero_slice_infinitesimal: true,
            zero_slice_normal: true,
            slice_additivity: true,
            no_sums_above_one: true,
            radicals_match: None,
            pairs_checked: 0,
            witness: None,
        }
    }

    fn note(&mut self, w: String) {
        self.witness.get_or_insert(w);
    }

    /// The ordering agrees with its equivalent sum condition.
    pub fn equivalence_consistent(&self) -> bool {
        self.ordered == self.sums_below_one
    }

    pub fn consequences_hold(&self) -> bool {
        self.zero_slice_infinitesimal
            && self.zero_slice_normal
            && self.slice_additivity
            && self.no_sums_above_one
            && self.radicals_match != Some(false)
    }

    pub fn all_hold(&self) -> bool {
        self.ordered && self.equivalence_consistent() && self.consequences_hold()
    }
}

/// Ordering of the slices plus the consequences of being ordered.
pub fn check_ordered(e: &AnyPea, d: &HDecomposition, sampling: Sampling) -> Result<OrderedReport> {
    match (e, d) {
        (AnyPea::Finite(f), HDecomposition::Finite { slices, .. }) => ordered_finite(f, slices),
        (AnyPea::Interval(i), HDecomposition::Lex { .. }) => ordered_lex(i, sampling),
        _ => Err(AlgebraError::DomainMismatch("decomposition does not match the algebra".into())),
    }
}

fn ordered_finite(f: &FinitePea, slices: &[(Rational, ElementSet)]) -> Result<OrderedReport> {
    let mut r = OrderedReport::new();
    let one = Rational::one();
    let slice_at = |t: &Rational| slices.iter().find(|(s, _)| s == t).map_or(0, |(_, set)| *set);
    for (s, a) in slices {
        for (t, b) in slices {
            let st = s + t;
            let mut sums: ElementSet = 0;
            for x in members(*a) {
                for y in members(*b) {
                    r.pairs_checked += 1;
                    if s < t && !f.le(x, y) {
                        r.ordered = false;
                        r.note(format!("{} in E_{s} is not below {} in E_{t}", f.name(x), f.name(y)));
                    }
                    match f.add(x, y) {
                        Some(z) => sums |= 1 << z,
                        None if st < one => {
                            r.sums_below_one = false;
                            r.note(format!("{} + {} is undefined although {s} + {t} < 1", f.name(x), f.name(y)));
                        }
                        None => {}
                    }
                    if st > one && (f.add(x, y).is_some() || f.add(y, x).is_some()) {
                        r.no_sums_above_one = false;
                        r.note(format!("{} and {} sum although {s} + {t} > 1", f.name(x), f.name(y)));
                    }
                }
            }
            if st < one && sums != slice_at(&st) {
                r.slice_additivity = false;
                r.note(format!("E_{s} + E_{t} differs from E_{st}"));
            }
        }
    }
    let zero = slice_at(&Rational::zero());
    r.zero_slice_infinitesimal = zero == infinitesimals_finite(f);
    r.zero_slice_normal = ideal_closure(f, zero) == zero && is_normal(f, zero);
    let ideals = ideals_enumerate(f)?;
    r.radicals_match = Some(ideals.radical == zero && ideals.normal_radical == zero);
    Ok(r)
}

/// `2^k x` stays defined for every `k` past the point where a positive head
/// would have to exceed 1.
fn survives_doubling(e: &IntervalPea, x: &GroupElement) -> Result<bool> {
    let t = head(x)?;
    let mut rounds = ZERO_DOUBLINGS;
    if !t.is_zero() {
        let one = lex_unit_one(e)?.0.one();
        let mut scaled = t.clone();
        rounds = 1;
        while scaled.compare(&one)? != Ordering::Greater {
            scaled = scaled.add(&scaled)?;
            rounds += 1;
        }
    }
    let mut acc = x.clone();
    for _ in 0..rounds {
        match e.sum(&acc, &acc)? {
            Some(s) => acc = s,
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// `x + i = j + x` and `i + x = x + j'` with `j, j'` in `E_0`.
fn normal_at(e: &IntervalPea, x: &GroupElement, i: &GroupElement) -> Result<bool> {
    if let Some(xi) = e.sum(x, i)? {
        match e.minus_left(&xi, x)? {
            Some(j) if head(&j)?.is_zero() => {}
            _ => return Ok(false),
        }
    }
    if let Some(ix) = e.sum(i, x)? {
        match e.minus_right(x, &ix)? {
            Some(j) if head(&j)?.is_zero() => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Writes a sampled `z` in `E_{s+t}` as a sum of elements of `E_s` and `E_t`.
fn splits(
    e: &IntervalPea,
    bottom: &GroupDescriptor,
    s: &Scalar,
    t: &Scalar,
    z: &GroupElement,
    rng: &mut ChaCha8Rng,
) -> Result<bool> {
    if !t.is_zero() {
        let x = sample_slice(e, bottom, s, rng)?;
        Ok(match e.minus_right(&x, z)? {
            Some(c) => same(head(&c)?, t)? && e.sum(&x, &c)?.as_ref() == Some(z),
            None => false,
        })
    } else if !s.is_zero() {
        let y = sample_slice(e, bottom, t, rng)?;
        Ok(match e.minus_left(z, &y)? {
            Some(d) => same(head(&d)?, s)? && e.sum(&d, &y)?.as_ref() == Some(z),
            None => false,
        })
    } else {
        Ok(e.sum(&e.zero(), z)?.as_ref() == Some(z))
    }
}

fn ordered_lex(e: &IntervalPea, sampling: Sampling) -> Result<OrderedReport> {
    let (hh, bottom) = lex_unit_one(e)?;
    let ts = hh.unit_interval_grid(DEFAULT_GRID_BOUND);
    let one = hh.one();
    let zero = hh.zero();
    let mut rng = rng_for(sampling.seed, 11);
    let mut r = OrderedReport::new();
    for _ in 0..sampling.samples {
        let s = pick(&ts, &mut rng).clone();
        let t = pick(&ts, &mut rng).clone();
        let x = sample_slice(e, bottom, &s, &mut rng)?;
        let y = sample_slice(e, bottom, &t, &mut rng)?;
        r.pairs_checked += 1;
        let (lo, hi) = match s.compare(&t)? {
            Ordering::Less => (Some(&x), Some(&y)),
            Ordering::Greater => (Some(&y), Some(&x)),
            Ordering::Equal => (None, None),
        };
        if let (Some(lo), Some(hi)) = (lo, hi) {
            if !e.leq(lo, hi)? {
                r.ordered = false;
                r.note(format!("{lo} is not below {hi}"));
            }
        }
        let st = s.add(&t)?;
        match st.compare(&one)? {
            Ordering::Less => match e.sum(&x, &y)? {
                None => {
                    r.sums_below_one = false;
                    r.note(format!("{x} + {y} is undefined although {s} + {t} < 1"));
                }
                Some(z) => {
                    let z2 = sample_slice(e, bottom, &st, &mut rng)?;
                    if !same(head(&z)?, &st)? || !splits(e, bottom, &s, &t, &z2, &mut rng)? {
                        r.slice_additivity = false;
                        r.note(format!("E_{s} + E_{t} differs from E_{st} near {z2}"));
                    }
                }
            },
            Ordering::Greater => {
                if e.sum(&x, &y)?.is_some() || e.sum(&y, &x)?.is_some() {
                    r.no_sums_above_one = false;
                    r.note(format!("{x} and {y} sum although {s} + {t} > 1"));
                }
            }
            Ordering::Equal => {}
        }
        let w = random_in_interval(e.group(), e.unit(), &mut rng, RADIUS)?;
        if head(&w)?.is_zero() != survives_doubling(e, &w)? {
            r.zero_slice_infinitesimal = false;
            r.note(format!("{w} disagrees between E_0 and the infinitesimals"));
        }
        let i = sample_slice(e, bottom, &zero, &mut rng)?;
        if !normal_at(e, &w, &i)? {
            r.zero_slice_normal = false;
            r.note(format!("{w} + E_0 differs from E_0 + {w} at {i}"));
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeIReport {
    /// `E_s + E_t` exists whenever `s + t < 1`.
    pub sums_below_one: bool,
    pub zero_slice_maximal: bool,
    pub zero_slice_unique_maximal: bool,
    /// `E_0 + E_0 = E_0`.
    pub zero_closed: bool,
    pub probes: usize,
    pub witness: Option<String>,
}

impl TypeIReport {
    pub fn holds(&self) -> bool {
        self.sums_below_one && self.zero_slice_maximal && self.zero_slice_unique_maximal && self.zero_closed
    }
}

pub fn check_type_i(e: &AnyPea, d: &HDecomposition, sampling: Sampling) -> Result<TypeIReport> {
    match (e, d) {
        (AnyPea::Finite(f), HDecomposition::Finite { slices, .. }) => type_i_finite(f, slices),
        (AnyPea::Interval(i), HDecomposition::Lex { .. }) => type_i_lex(i, sampling),
        _ => Err(AlgebraError::DomainMismatch("decomposition does not match the algebra".into())),
    }
}

fn type_i_finite(f: &FinitePea, slices: &[(Rational, ElementSet)]) -> Result<TypeIReport> {
    let one = Rational::one();
    let mut r = TypeIReport {
        sums_below_one: true,
        zero_slice_maximal: true,
        zero_slice_unique_maximal: true,
        zero_closed: true,
        probes: 0,
        witness: None,
    };
    for (s, a) in slices {
        for (t, b) in slices {
            if s + t >= one {
                continue;
            }
            for x in members(*a) {
                for y in members(*b) {
                    r.probes += 1;
                    if f.add(x, y).is_none() {
                        r.sums_below_one = false;
                        r.witness.get_or_insert(format!("{} + {} is undefined", f.name(x), f.name(y)));
                    }
                }
            }
        }
    }
    let zero = slices.iter().find(|(t, _)| t.is_zero()).map_or(0, |(_, set)| *set);
    let maximal: Vec<ElementSet> = ideals_enumerate(f)?.ideals.iter().filter(|i| i.maximal).map(|i| i.set).collect();
    r.zero_slice_maximal = maximal.contains(&zero);
    r.zero_slice_unique_maximal = maximal == [zero];
    if !r.zero_slice_unique_maximal {
        r.witness.get_or_insert(format!("{} maximal ideals", maximal.len()));
    }
    r.zero_closed = members(zero).all(|x| members(zero).all(|y| f.add(x, y).is_some_and(|z| zero & (1 << z) != 0)));
    Ok(r)
}

/// The ideal generated by `E_0` and `x` (head `t > 0`) contains `1`: an
/// explicit sum of pieces, each below `x + z` for some `z` in `E_0`.
fn maximality_probe(e: &IntervalPea, bottom: &GroupDescriptor, x: &GroupElement) -> Result<bool> {
    let (hh, _) = lex_unit_one(e)?;
    let t = head(x)?.clone();
    let one = e.one();
    if is_unit_head(&hh, &t)? {
        let r = e.rneg(x)?;
        return Ok(head(&r)?.is_zero() && e.sum(x, &r)? == Some(one));
    }
    let g = x.tail()?;
    let g0 = e.unit().tail()?;
    let neg_g = bottom.neg(g)?;
    let bound = bottom.upper_bound(&[bottom.zero(), neg_g.clone(), bottom.add(&neg_g, g0)?])?;
    let z = GroupElement::pair(GroupElement::Scalar(hh.zero()), bound);
    let Some(y) = e.sum(x, &z)? else { return Ok(false) };
    let m = hh.one().floor_div(&t)?;
    let m = m.to_usize().filter(|m| *m <= 100_000).ok_or_else(|| {
        AlgebraError::SizeCap { size: usize::MAX, cap: 100_000 }
    })?;
    let rest = hh.one().sub(&t.mul_int(&BigInt::from(m)))?;
    let piece = |s: &Scalar, tail: &GroupElement| GroupElement::pair(GroupElement::Scalar(s.clone()), tail.clone());
    let mut pieces = vec![piece(&t, &bottom.zero()); m];
    if rest.is_zero() {
        pieces.pop();
        pieces.push(piece(&t, g0));
    } else {
        pieces.push(piece(&rest, g0));
    }
    let mut acc = e.zero();
    for p in &pieces {
        if !e.contains(p) || !e.leq(p, &y)? {
            return Ok(false);
        }
        match e.sum(&acc, p)? {
            Some(s) => acc = s,
            None => return Ok(false),
        }
    }
    Ok(acc == one)
}

fn type_i_lex(e: &IntervalPea, sampling: Sampling) -> Result<TypeIReport> {
    let (hh, bottom) = lex_unit_one(e)?;
    let ts = hh.unit_interval_grid(DEFAULT_GRID_BOUND);
    let positive: Vec<Scalar> = ts.iter().filter(|t| !t.is_zero()).cloned().collect();
    let one = hh.one();
    let zero = hh.zero();
    let mut rng = rng_for(sampling.seed, 31);
    let mut r = TypeIReport {
        sums_below_one: true,
        zero_slice_maximal: true,
        zero_slice_unique_maximal: true,
        zero_closed: true,
        probes: 0,
        witness: None,
    };
    for _ in 0..sampling.samples {
        r.probes += 1;
        let s = pick(&ts, &mut rng).clone();
        let t = pick(&ts, &mut rng).clone();
        if s.add(&t)?.compare(&one)? == Ordering::Less {
            let x = sample_slice(e, bottom, &s, &mut rng)?;
            let y = sample_slice(e, bottom, &t, &mut rng)?;
            if e.sum(&x, &y)?.is_none() {
                r.sums_below_one = false;
                r.witness.get_or_insert(format!("{x} + {y} is undefined"));
            }
        }
        let x = sample_slice(e, bottom, pick(&positive, &mut rng), &mut rng)?;
        if !maximality_probe(e, bottom, &x)? {
            r.zero_slice_maximal = false;
            r.witness.get_or_insert(format!("the ideal generated by E_0 and {x} misses 1"));
        }
        let i = sample_slice(e, bottom, &zero, &mut rng)?;
        let j = sample_slice(e, bottom, &zero, &mut rng)?;
        if !e.leq(&i, &x)? {
            r.zero_slice_unique_maximal = false;
            r.witness.get_or_insert(format!("{i} in E_0 is not below {x}"));
        }
        match e.sum(&i, &j)? {
            Some(k) if head(&k)?.is_zero() => {}
            _ => {
                r.zero_closed = false;
                r.witness.get_or_insert(format!("{i} + {j} leaves E_0"));
            }
        }
    }
    r.zero_slice_unique_maximal &= r.zero_slice_maximal;
    Ok(r)
}

/// A cyclic system `c_t` given by finitely many generators; other points
/// are integer combinations of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSystem {
    group: GroupDescriptor,
    h: ScalarSubgroup,
    bound: u64,
    generators: Vec<(Scalar, GroupElement)>,
    pub strong: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CyclicSearch {
    Found(CyclicSystem),
    /// No cyclic element of this order exists.
    Missing { order: u64 },
}

impl CyclicSystem {
    /// Generators `c_{1/n} = (1/n) u` (every `n <= bound` for `Q`), plus
    /// `c_theta = (theta, 0)` for `Z + Z*sqrt(d)`.
    pub fn build(e: &IntervalPea, bound: u64) -> Result<CyclicSearch> {
        let (hh, bottom) = lex_unit_one(e)?;
        let g = e.group();
        let orders: Vec<u64> = match hh {
            ScalarSubgroup::Cyclic(n) => vec![n],
            ScalarSubgroup::FullQ => (1..=bound.max(1)).collect(),
            ScalarSubgroup::Quadratic(_) => vec![1],
        };
        let mut generators = Vec::new();
        for n in orders {
            match g.divide(e.unit(), n)? {
                Some(c) if e.contains(&c) => generators.push((hh.one().div_int(n), c)),
                _ => return Ok(CyclicSearch::Missing { order: n }),
            }
        }
        if let ScalarSubgroup::Quadratic(d) = hh {
            let theta = Scalar::Quadratic(QuadraticNumber::frac_sqrt(d));
            let c = GroupElement::pair(GroupElement::Scalar(theta.clone()), bottom.zero());
            generators.push((theta, c));
        }
        let mut strong = true;
        for (_, c) in &generators {
            strong &= g.center_member(c)?;
        }
        Ok(CyclicSearch::Found(CyclicSystem { group: g.clone(), h: hh, bound, generators, strong }))
    }

    pub fn h(&self) -> ScalarSubgroup {
        self.h
    }

    fn multiple(&self, c: &GroupElement, k: &BigInt) -> Result<GroupElement> {
        let k = k.to_i64().ok_or_else(|| AlgebraError::Unsupported(format!("multiplier {k} is too large")))?;
        self.group.mul_int(c, k)
    }

    /// `c_t`, or a grid-extension error when `t` is not generated.
    pub fn element(&self, t: &Scalar) -> Result<GroupElement> {
        let missing = || AlgebraError::GridExtension(format!("c_{t} (generator bound {})", self.bound));
        let t = embed_scalar(&self.h, t).ok_or_else(missing)?;
        match (&self.h, &t) {
            (ScalarSubgroup::Cyclic(n), Scalar::Rational(r)) => {
                let k = (r * Rational::from_integer(BigInt::from(*n))).to_integer();
                self.multiple(&self.generators[0].1, &k)
            }
            (ScalarSubgroup::FullQ, Scalar::Rational(r)) => {
                let q = r.denom().to_usize().filter(|q| *q as u64 <= self.bound).ok_or_else(missing)?;
                self.multiple(&self.generators[q - 1].1, r.numer())
            }
            (ScalarSubgroup::Quadratic(d), Scalar::Quadratic(x)) => {
                let fl = BigInt::from(num_integer::Roots::sqrt(d));
                let b = x.b().to_integer();
                let m = x.a().to_integer() + &b * fl;
                let cm = self.multiple(&self.generators[0].1, &m)?;
                let cb = self.multiple(&self.generators[1].1, &b)?;
                self.group.add(&cm, &cb)
            }
            _ => Err(missing()),
        }
    }

    /// `c_0 = 0`, `c_1 = 1`, `c_t` in `E_t`, and `c_s + c_t = c_{s+t}` on grid
    /// pairs whose sum is generated.
    pub fn verify(&self, e: &IntervalPea, grid_bound: u64) -> Result<Vec<String>> {
        let mut failures = Vec::new();
        let grid = self.h.unit_interval_grid(grid_bound);
        if self.element(&self.h.zero())? != e.zero() {
            failures.push("c_0 is not 0".to_string());
        }
        if self.element(&self.h.one())? != e.one() {
            failures.push("c_1 is not 1".to_string());
        }
        let one = self.h.one();
        for s in &grid {
            let cs = self.element(s)?;
            if !e.contains(&cs) || !same(head(&cs)?, s)? {
                failures.push(format!("c_{s} = {cs} is not in E_{s}"));
                continue;
            }
            for t in &grid {
                let st = s.add(t)?;
                if st.compare(&one)? == Ordering::Greater {
                    continue;
                }
                let cst = match self.element(&st) {
                    Ok(c) => c,
                    Err(AlgebraError::GridExtension(_)) => continue,
                    Err(err) => return Err(err),
                };
                if e.sum(&cs, &self.element(t)?)? != Some(cst) {
                    failures.push(format!("c_{s} + c_{t} differs from c_{st}"));
                }
            }
        }
        Ok(failures)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub sampling: Sampling,
    /// Orders `n` probed for (strong) 1-divisibility.
    pub n_max: u64,
    pub grid_bound: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { sampling: Sampling::default(), n_max: 6, grid_bound: DEFAULT_GRID_BOUND }
    }
}

/// `None` entries are "not determinable".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectReport {
    pub h: ScalarSubgroup,
    /// Has an ordered H-decomposition.
    pub perfect: bool,
    pub decomposition: Option<HDecomposition>,
    pub directness: Option<bool>,
    pub cyclic_system: bool,
    pub strong_cyclic_system: Option<bool>,
    pub one_divisible: bool,
    pub first_divisibility_failure: Option<u64>,
    pub strong_one_divisible: Option<bool>,
    pub first_strong_divisibility_failure: Option<u64>,
    pub unique_roots: bool,
    pub torsion_free: Option<bool>,
    pub symmetric: bool,
    pub notes: Vec<String>,
}

impl PerfectReport {
    /// Ordered decomposition with directness and a strong cyclic system over
    /// a torsion-free group.
    pub fn strong_perfect(&self) -> Option<bool> {
        let flags = [Some(self.perfect), self.directness, self.strong_cyclic_system, self.torsion_free];
        if flags.contains(&Some(false)) {
            Some(false)
        } else if flags.contains(&None) {
            None
        } else {
            Some(true)
        }
    }
}

pub fn classify_perfect(e: &AnyPea, h: ScalarSubgroup, opts: ClassifyOptions) -> Result<PerfectReport> {
    h.validate()?;
    match e {
        AnyPea::Finite(f) => classify_finite(e, f, h, opts),
        AnyPea::Interval(i) => classify_interval(e, i, h, opts),
    }
}

fn slice_directed(f: &FinitePea, set: ElementSet) -> bool {
    members(set).all(|a| {
        members(set).all(|b| {
            members(set).any(|c| f.le(a, c) && f.le(b, c)) && members(set).any(|c| f.le(c, a) && f.le(c, b))
        })
    })
}

fn classify_finite(e: &AnyPea, f: &FinitePea, h: ScalarSubgroup, opts: ClassifyOptions) -> Result<PerfectReport> {
    let mut notes = Vec::new();
    let mut decomposition = None;
    for s in states_finite(f)? {
        let d = match decomposition_from_state(e, &s, h, opts.sampling) {
            Ok(d) => d,
            Err(AlgebraError::NotHValued(_)) => continue,
            Err(err) => return Err(err),
        };
        if d.is_partial() {
            continue;
        }
        if check_ordered(e, &d, opts.sampling)?.ordered {
            decomposition = Some(d);
            break;
        }
    }
    if decomposition.is_none() {
        notes.push(format!("no extremal state gives an ordered {h}-decomposition with nonempty slices"));
    }
    let slices = match &decomposition {
        Some(HDecomposition::Finite { slices, .. }) => slices.clone(),
        _ => Vec::new(),
    };
    let directness = decomposition.as_ref().map(|_| slices.iter().all(|(_, set)| slice_directed(f, *set)));

    let mut cyclic_system = false;
    if let (Some(d), ScalarSubgroup::Cyclic(n)) = (&decomposition, h) {
        let first = d.slice(&Rational::new(BigInt::one(), BigInt::from(n)))?;
        cyclic_system = members(first).any(|c| {
            f.multiple_id(c, n) == Some(f.one_id())
                && (0..=n).all(|k| {
                    let t = Rational::new(BigInt::from(k), BigInt::from(n));
                    let set = d.slice(&t).unwrap_or(0);
                    f.multiple_id(c, k).is_some_and(|x| set & (1 << x) != 0)
                })
        });
    }
    if decomposition.is_some() && !cyclic_system {
        notes.push("no cyclic system".into());
    }
    let commutative = f.is_commutative();
    let strong_cyclic_system = match (cyclic_system, commutative) {
        (false, _) => Some(false),
        (true, true) => Some(true),
        (true, false) => None,
    };

    let mut first_divisibility_failure = None;
    let mut unique_roots = true;
    for n in 1..=opts.n_max {
        let roots = cyclic_elements_finite(f, n);
        unique_roots &= roots.len() <= 1;
        if roots.is_empty() && first_divisibility_failure.is_none() {
            first_divisibility_failure = Some(n);
        }
    }
    let one_divisible = first_divisibility_failure.is_none();
    let strong_one_divisible = if commutative { Some(one_divisible) } else { None };
    notes.push("torsion-freeness is not determinable without an ambient group".into());
    Ok(PerfectReport {
        h,
        perfect: decomposition.is_some(),
        decomposition,
        directness,
        cyclic_system,
        strong_cyclic_system,
        one_divisible,
        first_divisibility_failure,
        strong_one_divisible,
        first_strong_divisibility_failure: if commutative { first_divisibility_failure } else { None },
        unique_roots,
        torsion_free: None,
        symmetric: is_symmetric(f, 0, 0)?.symmetric,
        notes,
    })
}

/// Interior slices are directed: sampled pairs have bounds inside the slice.
fn interior_directed(e: &IntervalPea, bottom: &GroupDescriptor, hh: &ScalarSubgroup, sampling: Sampling) -> Result<bool> {
    let interior: Vec<Scalar> = hh
        .unit_interval_grid(DEFAULT_GRID_BOUND)
        .into_iter()
        .filter(|t| !t.is_zero() && !is_unit_head(hh, t).unwrap_or(true))
        .collect();
    if interior.is_empty() {
        return Ok(true);
    }
    let mut rng = rng_for(sampling.seed, 41);
    for _ in 0..sampling.samples {
        let t = pick(&interior, &mut rng).clone();
        let a = sample_slice(e, bottom, &t, &mut rng)?;
        let b = sample_slice(e, bottom, &t, &mut rng)?;
        let tails = [a.tail()?.clone(), b.tail()?.clone()];
        for bound in [bottom.upper_bound(&tails)?, bottom.lower_bound(&tails)?] {
            let c = GroupElement::pair(GroupElement::Scalar(t.clone()), bound);
            let above = e.leq(&a, &c)? && e.leq(&b, &c)?;
            let below = e.leq(&c, &a)? && e.leq(&c, &b)?;
            if !e.contains(&c) || !(above || below) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn classify_interval(e: &AnyPea, i: &IntervalPea, h: ScalarSubgroup, opts: ClassifyOptions) -> Result<PerfectReport> {
    let (hh, bottom) = lex_unit_one(i)?;
    let mut notes = Vec::new();
    let mut decomposition = None;
    match HDecomposition::canonical_lex(i, h) {
        Ok(d) if d.is_partial() => {
            if let Some(t) = first_missing(&h, &hh) {
                notes.push(format!("slice {t} is empty"));
            }
        }
        Ok(d) => {
            let r = check_ordered(e, &d, opts.sampling)?;
            if r.ordered {
                decomposition = Some(d);
            } else {
                notes.push(r.witness.unwrap_or_else(|| "slices are not ordered".into()));
            }
        }
        Err(AlgebraError::NotHValued(m)) => notes.push(m),
        Err(err) => return Err(err),
    }
    let directness = match decomposition {
        Some(_) => Some(bottom.is_directed() && interior_directed(i, bottom, &hh, opts.sampling)?),
        None => None,
    };

    let mut cyclic_system = false;
    let mut strong_cyclic_system = Some(false);
    if decomposition.is_some() {
        match CyclicSystem::build(i, opts.grid_bound)? {
            CyclicSearch::Found(c) => {
                let failures = c.verify(i, opts.grid_bound)?;
                cyclic_system = failures.is_empty();
                strong_cyclic_system = Some(cyclic_system && c.strong);
                notes.extend(failures);
                if cyclic_system && !c.strong {
                    notes.push("the cyclic system is not central".into());
                }
            }
            CyclicSearch::Missing { order } => notes.push(format!("no cyclic element of order {order}")),
        }
    }

    let mut first_divisibility_failure = None;
    let mut first_strong_divisibility_failure = None;
    let mut unique_roots = true;
    for n in 1..=opts.n_max {
        let roots = cyclic_elements_interval(i, n)?;
        unique_roots &= roots.len() <= 1;
        for r in &roots {
            unique_roots &= i.multiple(&r.element, n)?.as_ref() == Some(i.unit());
        }
        if roots.is_empty() && first_divisibility_failure.is_none() {
            first_divisibility_failure = Some(n);
        }
        if !roots.iter().any(|r| r.strong == Some(true)) && first_strong_divisibility_failure.is_none() {
            first_strong_divisibility_failure = Some(n);
        }
    }
    let symmetric = is_symmetric(i, opts.sampling.samples, opts.sampling.seed)?.symmetric;
    Ok(PerfectReport {
        h,
        perfect: decomposition.is_some(),
        decomposition,
        directness,
        cyclic_system,
        strong_cyclic_system,
        one_divisible: first_divisibility_failure.is_none(),
        first_divisibility_failure,
        strong_one_divisible: Some(first_strong_divisibility_failure.is_none()),
        first_strong_divisibility_failure,
        unique_roots,
        torsion_free: Some(i.group().is_torsion_free()),
        symmetric,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicDivisibilityReport {
    /// A Q-decomposition with a strong cyclic system exists.
    pub strong_cyclic_property: bool,
    /// A central `a_n` with `n a_n = 1` exists for every `n <= n_max`.
    pub strong_divisibility: bool,
    pub first_failure: Option<u64>,
    /// Strong roots `(n, a_n)` found.
    pub roots: Vec<(u64, GroupElement)>,
    /// Strong and plain roots of the same order coincide.
    pub uniqueness_holds: bool,
}

impl CyclicDivisibilityReport {
    pub fn equivalent(&self) -> bool {
        self.strong_cyclic_property == self.strong_divisibility
    }
}

/// Both sides of the equivalence between the Q-strong cyclic property and
/// strong 1-divisibility, computed independently for `n <= n_max`.
pub fn strong_cyclic_vs_divisibility(e: &IntervalPea, n_max: u64) -> Result<CyclicDivisibilityReport> {
    if !e.group().is_torsion_free() {
        return Err(AlgebraError::Precondition(format!("{} is not torsion-free", e.group())));
    }
    let (hh, _) = lex_unit_one(e)?;
    let strong_cyclic_property = hh == ScalarSubgroup::FullQ
        && match CyclicSystem::build(e, n_max)? {
            CyclicSearch::Found(c) => c.strong && c.verify(e, n_max)?.is_empty(),
            CyclicSearch::Missing { .. } => false,
        };
    let mut roots = Vec::new();
    let mut first_failure = None;
    let mut uniqueness_holds = true;
    for n in 1..=n_max {
        let plain = cyclic_elements_interval(e, n)?;
        let strong: Vec<_> = plain.iter().filter(|c| c.strong == Some(true)).collect();
        for s in &strong {
            uniqueness_holds &= plain.iter().all(|p| p.element == s.element);
        }
        match strong.first() {
            Some(c) => roots.push((n, c.element.clone())),
            None if first_failure.is_none() => first_failure = Some(n),
            None => {}
        }
    }
    Ok(CyclicDivisibilityReport {
        strong_cyclic_property,
        strong_divisibility: first_failure.is_none(),
        first_failure,
        roots,
        uniqueness_holds,
    })
}

/// The smallest `(1/n)Z` containing every value of a finite state.
pub fn value_subgroup(s: &PeaState) -> Result<ScalarSubgroup> {
    match s {
        PeaState::FiniteTable(v) => {
            let mut n = BigInt::one();
            for x in v {
                n = num_integer::Integer::lcm(&n, x.denom());
            }
            let n = n.to_u64().filter(|n| *n > 0).ok_or_else(|| {
                AlgebraError::Unsupported("state denominators are too large".into())
            })?;
            Ok(ScalarSubgroup::Cyclic(n))
        }
        PeaState::FirstCoordinate => Err(AlgebraError::DomainMismatch(
            "the first-coordinate state has no finite value set".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pea::PeaTable;
    use crate::scalar::{int, rat};

    fn lex(h: ScalarSubgroup, g: GroupDescriptor, g0: GroupElement) -> AnyPea {
        let u = GroupElement::pair(GroupElement::Scalar(h.one()), g0);
        AnyPea::Interval(IntervalPea::from_parts(GroupDescriptor::lex(GroupDescriptor::scalar(h), g), u).unwrap())
    }

    fn interval(e: &AnyPea) -> &IntervalPea {
        match e {
            AnyPea::Interval(i) => i,
            _ => unreachable!(),
        }
    }

    #[test]
    fn chain_decomposition_round_trip() {
        let f = FinitePea::chain(2);
        let e = AnyPea::Finite(f.clone());
        let s = PeaState::FiniteTable(vec![int(0), rat(1, 2), int(1)]);
        let d = decomposition_from_state(&e, &s, ScalarSubgroup::Cyclic(2), Sampling::default()).unwrap();
        assert_eq!(
            d,
            HDecomposition::Finite {
                h: ScalarSubgroup::Cyclic(2),
                slices: vec![(int(0), 0b001), (rat(1, 2), 0b010), (int(1), 0b100)],
                partial: false,
            }
        );
        assert_eq!(state_from_decomposition(&e, &d, Sampling::default()).unwrap(), s);
        let err = decomposition_from_state(&e, &s, ScalarSubgroup::Cyclic(1), Sampling::default());
        assert!(matches!(err, Err(AlgebraError::NotHValued(m)) if m.contains("1/2")));
        let r = check_ordered(&e, &d, Sampling::default()).unwrap();
        assert!(r.all_hold(), "{r:?}");
        assert!(check_type_i(&e, &d, Sampling::default()).unwrap().holds());
    }

    #[test]
    fn misplaced_sum_is_rejected() {
        let f = FinitePea::chain(4);
        let e = AnyPea::Finite(f);
        // 1/4 + 1/4 = 2/4 but 2/4 is put in the slice 1
        let slices = vec![(int(0), 0b00001), (rat(1, 2), 0b00010 | 0b01000), (int(1), 0b10100)];
        let d = HDecomposition::finite(
            match &e {
                AnyPea::Finite(f) => f,
                _ => unreachable!(),
            },
            ScalarSubgroup::Cyclic(2),
            slices,
        )
        .unwrap();
        assert!(matches!(
            state_from_decomposition(&e, &d, Sampling::default()),
            Err(AlgebraError::LawViolation(_))
        ));
    }

    #[test]
    fn boolean_kernel_decomposition_is_not_type_one() {
        let f = FinitePea::boolean(2);
        let e = AnyPea::Finite(f.clone());
        let p = f.index_of("p").unwrap();
        let q = f.index_of("q").unwrap();
        let mut v = vec![int(0); 4];
        v[q] = int(1);
        v[f.one_id()] = int(1);
        let s = PeaState::FiniteTable(v);
        let d = decomposition_from_state(&e, &s, ScalarSubgroup::Cyclic(2), Sampling::default()).unwrap();
        assert!(d.is_partial());
        assert_eq!(d.slice(&int(0)).unwrap(), 1 | (1 << p));
        let r = check_type_i(&e, &d, Sampling::default()).unwrap();
        assert!(!r.zero_slice_unique_maximal);
        assert!(!r.holds());
    }

    #[test]
    fn unordered_finite_decomposition() {
        // E_{1/2} holds two incomparable elements whose sum is missing
        let mut t = PeaTable::new(4, 0, 3);
        for (i, n) in ["0", "a", "b", "1"].iter().enumerate() {
            t.names[i] = Some(n.to_string());
            t.sums.push((0, i, i));
            if i != 0 {
                t.sums.push((i, 0, i));
            }
        }
        t.sums.extend([(1, 2, 3), (2, 1, 3)]);
        let f = FinitePea::check_axioms(&t).unwrap().into_pea().unwrap();
        let e = AnyPea::Finite(f.clone());
        let d = HDecomposition::finite(&f, ScalarSubgroup::Cyclic(3), vec![(int(0), 1), (rat(1, 3), 2), (rat(2, 3), 4), (int(1), 8)]).unwrap();
        let r = check_ordered(&e, &d, Sampling::default()).unwrap();
        assert!(!r.ordered);
        assert!(r.witness.is_some());
        assert!(r.equivalence_consistent());
    }

    #[test]
    fn canonical_lex_decompositions() {
        let e = lex(ScalarSubgroup::Cyclic(1), GroupDescriptor::z(), GroupElement::integer(0));
        let d = decomposition_from_state(&e, &PeaState::FirstCoordinate, ScalarSubgroup::Cyclic(1), Sampling::default()).unwrap();
        let r = check_ordered(&e, &d, Sampling::default()).unwrap();
        assert!(r.all_hold(), "{r:?}");
        assert!(check_type_i(&e, &d, Sampling::default()).unwrap().holds());
        assert_eq!(state_from_decomposition(&e, &d, Sampling::default()).unwrap(), PeaState::FirstCoordinate);

        let e = lex(ScalarSubgroup::FullQ, GroupDescriptor::z(), GroupElement::integer(0));
        let d = HDecomposition::canonical_lex(interval(&e), ScalarSubgroup::FullQ).unwrap();
        assert!(!d.is_partial());
        assert!(check_ordered(&e, &d, Sampling::default()).unwrap().all_hold());
        let ti = check_type_i(&e, &d, Sampling::default()).unwrap();
        assert!(ti.holds(), "{ti:?}");
        assert!(matches!(
            HDecomposition::canonical_lex(interval(&e), ScalarSubgroup::Cyclic(1)),
            Err(AlgebraError::NotHValued(_))
        ));
    }

    #[test]
    fn cyclic_four_has_five_slices() {
        let e = lex(ScalarSubgroup::Cyclic(4), GroupDescriptor::z(), GroupElement::integer(0));
        let d = HDecomposition::canonical_lex(interval(&e), ScalarSubgroup::Cyclic(4)).unwrap();
        assert_eq!(nonempty_slices(&e, &d).unwrap().len(), 5);
    }

    #[test]
    fn classify_strong_q_perfect() {
        let e = lex(ScalarSubgroup::FullQ, GroupDescriptor::IntVector(2), GroupElement::vector(&[0, 0]));
        let r = classify_perfect(&e, ScalarSubgroup::FullQ, ClassifyOptions::default()).unwrap();
        assert!(r.perfect && r.cyclic_system && r.one_divisible && r.unique_roots && r.symmetric, "{r:?}");
        assert_eq!(r.strong_perfect(), Some(true));
    }

    #[test]
    fn classify_integer_head_over_q() {
        let e = lex(ScalarSubgroup::Cyclic(1), GroupDescriptor::z(), GroupElement::integer(0));
        let r = classify_perfect(&e, ScalarSubgroup::FullQ, ClassifyOptions::default()).unwrap();
        assert!(!r.perfect);
        assert!(r.notes.iter().any(|n| n.contains("1/2") && n.contains("empty")), "{:?}", r.notes);
        assert_eq!(r.first_divisibility_failure, Some(2));
    }

    #[test]
    fn affine_tail_breaks_strong_cyclicity() {
        let e = lex(ScalarSubgroup::Cyclic(1), GroupDescriptor::AffineQ, GroupElement::affine(int(2), int(0)));
        let r = classify_perfect(&e, ScalarSubgroup::Cyclic(1), ClassifyOptions::default()).unwrap();
        assert!(r.perfect && r.cyclic_system);
        assert_eq!(r.strong_cyclic_system, Some(false));
        assert_eq!(r.first_strong_divisibility_failure, Some(1));
        assert!(!r.symmetric);

        let e = lex(ScalarSubgroup::Cyclic(1), GroupDescriptor::AffineQ, GroupElement::affine(int(1), int(0)));
        let r = classify_perfect(&e, ScalarSubgroup::Cyclic(1), ClassifyOptions::default()).unwrap();
        assert_eq!(r.strong_cyclic_system, Some(true));
        assert!(r.symmetric);
    }

    #[test]
    fn finite_classification() {
        let e = AnyPea::Finite(FinitePea::chain(3));
        let r = classify_perfect(&e, ScalarSubgroup::Cyclic(3), ClassifyOptions::default()).unwrap();
        assert!(r.perfect && r.cyclic_system);
        assert_eq!(r.strong_cyclic_system, Some(true));
        assert_eq!(r.torsion_free, None);
        assert_eq!(r.strong_perfect(), None);
        assert_eq!(r.first_divisibility_failure, Some(2));
        let r = classify_perfect(&AnyPea::Finite(FinitePea::boolean(2)), ScalarSubgroup::Cyclic(2), ClassifyOptions::default()).unwrap();
        assert!(!r.perfect);
    }

    #[test]
    fn cyclic_versus_divisibility() {
        let e = lex(ScalarSubgroup::FullQ, GroupDescriptor::z(), GroupElement::integer(0));
        let r = strong_cyclic_vs_divisibility(interval(&e), 6).unwrap();
        assert!(r.strong_cyclic_property && r.strong_divisibility && r.uniqueness_holds);
        let third = GroupElement::pair(GroupElement::rational(rat(1, 3)), GroupElement::integer(0));
        assert!(r.roots.contains(&(3, third)));

        let e = lex(ScalarSubgroup::FullQ, GroupDescriptor::z(), GroupElement::integer(1));
        let r = strong_cyclic_vs_divisibility(interval(&e), 6).unwrap();
        assert!(!r.strong_cyclic_property && !r.strong_divisibility && r.equivalent());
        assert_eq!(r.first_failure, Some(2));
        assert_eq!(r.roots, vec![(1, interval(&e).unit().clone())]);
    }

    #[test]
    fn quadratic_cyclic_system() {
        let h = ScalarSubgroup::Quadratic(2);
        let e = lex(h, GroupDescriptor::z(), GroupElement::integer(3));
        let CyclicSearch::Found(c) = CyclicSystem::build(interval(&e), 4).unwrap() else { panic!() };
        assert!(c.verify(interval(&e), 2).unwrap().is_empty());
        let d = HDecomposition::canonical_lex(interval(&e), h).unwrap();
        state_from_decomposition(&e, &d, Sampling::default()).unwrap();
        let r = classify_perfect(&e, h, ClassifyOptions::default()).unwrap();
        assert!(r.perfect && r.cyclic_system);
        assert_eq!(r.first_divisibility_failure, Some(2));
    }

    #[test]
    fn value_subgroups() {
        let s = PeaState::FiniteTable(vec![int(0), rat(1, 2), rat(1, 3), int(1)]);
        assert_eq!(value_subgroup(&s).unwrap(), ScalarSubgroup::Cyclic(6));
    }
}
