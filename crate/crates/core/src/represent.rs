//! The representation `E ≅ Γ(lex(H, G), (1, 0))` of strong H-perfect
//! algebras, the difference group of `E_0`, and the functor on group
//! homomorphisms.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;

use crate::batch::map_indexed;
use crate::decomp::{classify_perfect, embed_scalar, ClassifyOptions, CyclicSearch, CyclicSystem};
use crate::error::{AlgebraError, Result};
use crate::group::{GroupDescriptor, GroupElement};
use crate::pea::{AnyPea, IntervalPea, Pea};
use crate::sample::{enumerate_box, random_element, random_in_interval, random_positive};
use crate::scalar::{Rational, Scalar, ScalarSubgroup};

const RADIUS: i64 = 12;

/// `Γ(lex(H, G), (1, g0))`; `g0 = 0` gives the canonical algebra.
pub fn build_lex_pea(h: ScalarSubgroup, g: GroupDescriptor, g0: GroupElement) -> Result<IntervalPea> {
    h.validate()?;
    g.validate()?;
    if !g.is_directed() {
        return Err(AlgebraError::Precondition(format!("{g} is not directed")));
    }
    if !g.is_torsion_free() {
        return Err(AlgebraError::Precondition(format!("{g} is not torsion-free")));
    }
    g.check(&g0)?;
    IntervalPea::from_parts(
        GroupDescriptor::lex(GroupDescriptor::scalar(h), g),
        GroupElement::pair(GroupElement::Scalar(h.one()), g0),
    )
}

fn scalar_of(x: &GroupElement) -> Result<&Scalar> {
    x.head()?.as_scalar()
}

/// The integer coordinate of `t` along `1`: `n t` on `(1/n)Z`, and `m` in
/// `t = m + b (sqrt d - floor sqrt d)` on `Z + Z sqrt d`.
fn unit_coordinate(h: &ScalarSubgroup, t: &Scalar) -> Result<BigInt> {
    match (h, t) {
        (ScalarSubgroup::Cyclic(n), Scalar::Rational(r)) => {
            Ok((r * Rational::from_integer(BigInt::from(*n))).to_integer())
        }
        (ScalarSubgroup::Quadratic(d), Scalar::Quadratic(q)) => {
            Ok(q.a().to_integer() + q.b().to_integer() * BigInt::from(d.sqrt()))
        }
        (ScalarSubgroup::Quadratic(_), Scalar::Rational(r)) => Ok(r.to_integer()),
        _ => Err(AlgebraError::Unsupported(format!("{h} has no additive map onto Z"))),
    }
}

/// A unital isomorphism `(t, g) ↦ (t, α_t(g))` out of `lex(H, G)`, used to
/// present `E_H(G)` in coordinates that differ from the canonical ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shuffle {
    Identity,
    /// `g ↦ g / k`, from `Z` into `(1/k)Z`.
    Scale(u64),
    /// Reverses the coordinates of `Z^k`.
    Reverse,
    /// `g ↦ g + a(t) k e_1` with `a` the integer coordinate along `1`.
    Shear(i64),
    ShearReverse(i64),
}

impl Shuffle {
    /// The encodings exercised by the round-trip checks.
    pub fn default_for(h: ScalarSubgroup, g: &GroupDescriptor) -> Shuffle {
        match (h, g) {
            (ScalarSubgroup::FullQ, GroupDescriptor::IntVector(k)) if *k > 1 => Shuffle::Reverse,
            (ScalarSubgroup::FullQ, GroupDescriptor::Scalar(ScalarSubgroup::Cyclic(1))) => Shuffle::Scale(3),
            (ScalarSubgroup::FullQ, _) => Shuffle::Identity,
            (_, GroupDescriptor::IntVector(k)) if *k > 1 => Shuffle::ShearReverse(-2),
            _ => Shuffle::Shear(1),
        }
    }

    pub fn parse(s: &str) -> Result<Shuffle> {
        let bad = || AlgebraError::Parse {
            line: 1,
            column: 1,
            message: format!("unknown shuffle {s:?}; expected identity, scale:K, reverse, shear:K or shear:K,reverse"),
        };
        let s = s.trim();
        let arg = |p: &str| p.parse::<i64>().map_err(|_| bad());
        Ok(match s {
            "identity" => Shuffle::Identity,
            "reverse" => Shuffle::Reverse,
            _ => {
                if let Some(k) = s.strip_prefix("scale:") {
                    let k = arg(k)?;
                    if k < 1 {
                        return Err(bad());
                    }
                    Shuffle::Scale(k as u64)
                } else if let Some(rest) = s.strip_prefix("shear:") {
                    match rest.strip_suffix(",reverse") {
                        Some(k) => Shuffle::ShearReverse(arg(k)?),
                        None => Shuffle::Shear(arg(rest)?),
                    }
                } else {
                    return Err(bad());
                }
            }
        })
    }

    /// The tail group of the encoding.
    pub fn encoded_group(&self, g: &GroupDescriptor) -> Result<GroupDescriptor> {
        match (self, g) {
            (Shuffle::Identity, _) => Ok(g.clone()),
            (Shuffle::Scale(k), GroupDescriptor::Scalar(ScalarSubgroup::Cyclic(1))) => {
                Ok(GroupDescriptor::scalar(ScalarSubgroup::Cyclic(*k)))
            }
            (Shuffle::Reverse | Shuffle::ShearReverse(_), GroupDescriptor::IntVector(_)) => Ok(g.clone()),
            (Shuffle::Shear(_), GroupDescriptor::IntVector(_) | GroupDescriptor::Scalar(ScalarSubgroup::Cyclic(1))) => {
                Ok(g.clone())
            }
            _ => Err(AlgebraError::Unsupported(format!("shuffle {self} does not apply to {g}"))),
        }
    }

    fn shift(&self, h: &ScalarSubgroup, t: &Scalar, g: &GroupElement, sign: i64) -> Result<GroupElement> {
        let k = match self {
            Shuffle::Shear(k) | Shuffle::ShearReverse(k) => *k,
            _ => return Ok(g.clone()),
        };
        let amount = unit_coordinate(h, t)? * BigInt::from(k * sign);
        Ok(match g {
            GroupElement::Vector(v) => {
                let mut v = v.clone();
                v[0] += amount;
                GroupElement::Vector(v)
            }
            GroupElement::Scalar(Scalar::Rational(r)) => GroupElement::rational(r + Rational::from_integer(amount)),
            _ => return Err(AlgebraError::DomainMismatch(format!("cannot shear {g}"))),
        })
    }

    fn reverse(g: &GroupElement) -> GroupElement {
        match g {
            GroupElement::Vector(v) => GroupElement::Vector(v.iter().rev().cloned().collect()),
            _ => g.clone(),
        }
    }

    pub fn encode(&self, h: &ScalarSubgroup, x: &GroupElement) -> Result<GroupElement> {
        let t = scalar_of(x)?;
        let g = x.tail()?;
        let tail = match self {
            Shuffle::Identity => g.clone(),
            Shuffle::Scale(k) => {
                let r = g.as_scalar()?.as_rational()?;
                GroupElement::rational(r / Rational::from_integer(BigInt::from(*k)))
            }
            Shuffle::Reverse => Self::reverse(g),
            Shuffle::Shear(_) => self.shift(h, t, g, 1)?,
            Shuffle::ShearReverse(_) => Self::reverse(&self.shift(h, t, g, 1)?),
        };
        Ok(GroupElement::pair(x.head()?.clone(), tail))
    }

    pub fn decode(&self, h: &ScalarSubgroup, y: &GroupElement) -> Result<GroupElement> {
        let t = scalar_of(y)?;
        let g = y.tail()?;
        let tail = match self {
            Shuffle::Identity => g.clone(),
            Shuffle::Scale(k) => {
                let r = g.as_scalar()?.as_rational()?;
                GroupElement::rational(r * Rational::from_integer(BigInt::from(*k)))
            }
            Shuffle::Reverse => Self::reverse(g),
            Shuffle::Shear(_) => self.shift(h, t, g, -1)?,
            Shuffle::ShearReverse(_) => self.shift(h, t, &Self::reverse(g), -1)?,
        };
        Ok(GroupElement::pair(y.head()?.clone(), tail))
    }

    /// `α(E_H(G))` as an interval algebra.
    pub fn encode_pea(&self, h: ScalarSubgroup, g: &GroupDescriptor) -> Result<IntervalPea> {
        let canonical = build_lex_pea(h, g.clone(), g.zero())?;
        let unit = self.encode(&h, canonical.unit())?;
        build_lex_pea(h, self.encoded_group(g)?, unit.tail()?.clone())
    }
}

impl fmt::Display for Shuffle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shuffle::Identity => write!(f, "identity"),
            Shuffle::Scale(k) => write!(f, "scale:{k}"),
            Shuffle::Reverse => write!(f, "reverse"),
            Shuffle::Shear(k) => write!(f, "shear:{k}"),
            Shuffle::ShearReverse(k) => write!(f, "shear:{k},reverse"),
        }
    }
}

/// `φ(x) = (t, x - c_t)` from a strong H-perfect `E` onto
/// `Γ(lex(H, G), (1, 0))`, where `G` is the tail group of `E` (its positive
/// cone is `E_0`).
#[derive(Clone, Debug)]
pub struct Representation {
    pub source: IntervalPea,
    pub target: IntervalPea,
    pub system: CyclicSystem,
    corrupted: bool,
}

impl Representation {
    pub fn new(e: IntervalPea, opts: ClassifyOptions) -> Result<Self> {
        let (h, bottom) = e.lex_scalar_parts().ok_or_else(|| {
            AlgebraError::Unsupported(format!("{} is not a lexicographic product over a scalar head", e.group()))
        })?;
        let bottom = bottom.clone();
        let report = classify_perfect(&AnyPea::Interval(e.clone()), h, opts)?;
        if report.strong_perfect() != Some(true) {
            return Err(AlgebraError::Precondition(format!(
                "the algebra is not strong {h}-perfect: {}",
                report.notes.join("; ")
            )));
        }
        let bound = opts.grid_bound * opts.grid_bound;
        let system = match CyclicSystem::build(&e, bound)? {
            CyclicSearch::Found(c) => c,
            CyclicSearch::Missing { order } => {
                return Err(AlgebraError::Internal(format!("no cyclic element of order {order}")))
            }
        };
        let target = build_lex_pea(h, bottom.clone(), bottom.zero())?;
        Ok(Representation { source: e, target, system, corrupted: false })
    }

    /// The same map without the `c_t` subtraction, a negative control.
    pub fn corrupted(mut self) -> Self {
        self.corrupted = true;
        self
    }

    pub fn phi(&self, x: &GroupElement) -> Result<GroupElement> {
        self.source.check_member(x)?;
        let t = scalar_of(x)?;
        let tail = if self.corrupted {
            x.tail()?.clone()
        } else {
            let c = self.system.element(t)?;
            self.source.group().sub(x, &c)?.tail()?.clone()
        };
        Ok(GroupElement::pair(GroupElement::Scalar(t.clone()), tail))
    }

    /// `(t, g) ↦ (0, g) + c_t`.
    pub fn preimage(&self, y: &GroupElement) -> Result<GroupElement> {
        self.target.check_member(y)?;
        let t = scalar_of(y)?;
        let h = self.system.h();
        let lifted = GroupElement::pair(GroupElement::Scalar(h.zero()), y.tail()?.clone());
        self.source.group().add(&lifted, &self.system.element(t)?)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PeaIsomorphismReport {
    pub sample_count: usize,
    pub homomorphism_failures: usize,
    pub injectivity_failures: usize,
    pub order_reflection_failures: usize,
    pub surjectivity_probes: usize,
    pub surjectivity_probes_hit: usize,
    pub first_failure: Option<String>,
}

impl PeaIsomorphismReport {
    pub fn clean(&self) -> bool {
        self.homomorphism_failures == 0
            && self.injectivity_failures == 0
            && self.order_reflection_failures == 0
            && self.surjectivity_probes_hit == self.surjectivity_probes
    }

    fn merge(&mut self, o: SampleOutcome) {
        self.sample_count += 1;
        self.homomorphism_failures += o.homomorphism;
        self.injectivity_failures += o.injectivity;
        self.order_reflection_failures += o.order;
        self.surjectivity_probes += 1;
        self.surjectivity_probes_hit += o.hit as usize;
        if self.first_failure.is_none() {
            self.first_failure = o.note;
        }
    }
}

#[derive(Default)]
struct SampleOutcome {
    homomorphism: usize,
    injectivity: usize,
    order: usize,
    hit: bool,
    note: Option<String>,
}

impl SampleOutcome {
    fn fail(&mut self, kind: fn(&mut Self) -> &mut usize, note: impl FnOnce() -> String) {
        *kind(self) += 1;
        if self.note.is_none() {
            self.note = Some(note());
        }
    }
}

fn hom_slot(o: &mut SampleOutcome) -> &mut usize {
    &mut o.homomorphism
}

fn injectivity_slot(o: &mut SampleOutcome) -> &mut usize {
    &mut o.injectivity
}

fn order_slot(o: &mut SampleOutcome) -> &mut usize {
    &mut o.order
}

fn check_sample(rep: &Representation, index: usize, rng: &mut ChaCha8Rng) -> Result<SampleOutcome> {
    let e = &rep.source;
    let f = &rep.target;
    let mut o = SampleOutcome::default();
    if index == 0 {
        for (x, want) in [(e.zero(), f.zero()), (e.one(), f.one())] {
            if rep.phi(&x)? != want {
                o.fail(hom_slot, || format!("φ({x}) is not {want}"));
            }
        }
    }
    let x = random_in_interval(e.group(), e.unit(), rng, RADIUS)?;
    let z = random_in_interval(e.group(), e.unit(), rng, RADIUS)?;
    let y = random_in_interval(e.group(), &e.rneg(&x)?, rng, RADIUS)?;
    let (px, pz) = (rep.phi(&x)?, rep.phi(&z)?);
    if !f.contains(&px) || !f.contains(&pz) {
        o.fail(hom_slot, || format!("φ({x}) = {px} leaves the target"));
    } else {
        if let Some(s) = e.sum(&x, &y)? {
            let py = rep.phi(&y)?;
            if !f.contains(&py) || f.sum(&px, &py)? != Some(rep.phi(&s)?) {
                o.fail(hom_slot, || format!("φ({x} + {y}) differs from φ({x}) + φ({y})"));
            }
        }
        for (a, b, pa, pb) in [(&x, &z, &px, &pz), (&z, &x, &pz, &px)] {
            let lhs = e.sum(a, b)?.map(|s| rep.phi(&s)).transpose()?;
            if lhs != f.sum(pa, pb)? {
                o.fail(hom_slot, || format!("definedness of {a} + {b} is not preserved"));
            }
        }
        if rep.phi(&e.lneg(&x)?)? != f.lneg(&px)? || rep.phi(&e.rneg(&x)?)? != f.rneg(&px)? {
            o.fail(hom_slot, || format!("negations of {x} are not preserved"));
        }
        if x != z && px == pz {
            o.fail(injectivity_slot, || format!("φ({x}) = φ({z})"));
        }
        if e.leq(&x, &z)? != f.leq(&px, &pz)? || e.leq(&z, &x)? != f.leq(&pz, &px)? {
            o.fail(order_slot, || format!("order between {x} and {z} is not reflected"));
        }
    }
    let w = random_in_interval(f.group(), f.unit(), rng, RADIUS)?;
    let pre = rep.preimage(&w)?;
    o.hit = e.contains(&pre) && rep.phi(&pre)? == w;
    if !o.hit && o.note.is_none() {
        o.note = Some(format!("{w} has no preimage"));
    }
    Ok(o)
}

/// Seeded checks of homomorphism, injectivity, order reflection and
/// surjectivity; samples are evaluated in parallel when enabled.
pub fn verify_isomorphism(rep: &Representation, samples: usize, seed: u64) -> Result<PeaIsomorphismReport> {
    let outcomes = map_indexed(samples, seed, |i, rng| check_sample(rep, i, rng));
    let mut report = PeaIsomorphismReport::default();
    for o in outcomes {
        report.merge(o?);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePartsReport {
    pub samples: usize,
    pub failures: usize,
    pub witness: Option<GroupElement>,
}

/// In a lattice-ordered source, `(x - c_t)^+ = (x ∨ c_t) - c_t` and
/// `(x - c_t)^- = c_t - (x ∧ c_t)` lie in `E_0` and recombine to `x - c_t`.
pub fn lattice_parts_check(rep: &Representation, samples: usize, seed: u64) -> Result<LatticePartsReport> {
    let e = &rep.source;
    let g = e.group();
    if !g.is_lattice() {
        return Err(AlgebraError::Precondition(format!("{g} is not lattice ordered")));
    }
    let outcomes = map_indexed(samples, seed, |_, rng| -> Result<Option<GroupElement>> {
        let x = random_in_interval(g, e.unit(), rng, RADIUS)?;
        let c = rep.system.element(scalar_of(&x)?)?;
        let (Some(j), Some(m)) = (g.join(&x, &c)?, g.meet(&x, &c)?) else { return Ok(Some(x)) };
        let plus = g.sub(&j, &c)?;
        let minus = g.sub(&c, &m)?;
        let in_zero = |p: &GroupElement| e.contains(p) && scalar_of(p).is_ok_and(|t| t.is_zero());
        let ok = in_zero(&plus) && in_zero(&minus) && g.sub(&plus, &minus)? == g.sub(&x, &c)?;
        Ok((!ok).then_some(x))
    });
    let mut report = LatticePartsReport { samples, failures: 0, witness: None };
    for o in outcomes {
        if let Some(x) = o? {
            report.failures += 1;
            report.witness.get_or_insert(x);
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceChecks {
    pub additive: bool,
    pub cancellative: bool,
    /// The images are exactly the lattice points of a box in `Z^k_+`.
    pub cone_matches: bool,
    /// `y <= x` in `E_0` iff `ι(x) - ι(y) >= 0`.
    pub order_matches: bool,
    pub group_laws: bool,
}

impl DifferenceChecks {
    pub fn all(&self) -> bool {
        self.additive && self.cancellative && self.cone_matches && self.order_matches && self.group_laws
    }
}

/// The group of formal differences of a commutative, cancellative `E_0`,
/// presented as `Z^k` through its atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceGroup<T> {
    pub rank: usize,
    pub atoms: Vec<T>,
    pub embedding: Vec<(T, Vec<BigInt>)>,
    pub checks: DifferenceChecks,
}

impl<T> DifferenceGroup<T> {
    /// `Z^rank`, or `None` for the trivial group.
    pub fn descriptor(&self) -> Option<GroupDescriptor> {
        (self.rank > 0).then_some(GroupDescriptor::IntVector(self.rank))
    }
}

/// Builds the difference group from a finite grid of `E_0` containing `0`.
pub fn difference_group<E: Pea>(e: &E, grid: &[E::Elem]) -> Result<DifferenceGroup<E::Elem>> {
    let zero = e.zero();
    if !grid.contains(&zero) {
        return Err(AlgebraError::Precondition("the grid must contain 0".into()));
    }
    let index = |x: &E::Elem| grid.iter().position(|y| y == x);
    for x in grid {
        for y in grid {
            if e.sum(x, y)? != e.sum(y, x)? {
                return Err(AlgebraError::Unsupported(format!(
                    "E_0 is not commutative at {} and {}",
                    e.label(x),
                    e.label(y)
                )));
            }
        }
    }
    let nonzero: Vec<&E::Elem> = grid.iter().filter(|x| **x != zero).collect();
    let mut atoms: Vec<E::Elem> = Vec::new();
    for a in &nonzero {
        let decomposable = nonzero.iter().any(|x| {
            e.minus_right(x, a).ok().flatten().is_some_and(|r| r != zero && r != **a && index(&r).is_some())
        });
        if !decomposable {
            atoms.push((*a).clone());
        }
    }
    let rank = atoms.len();
    let cap = 64 * grid.len().max(1);
    let mut embedding = Vec::with_capacity(grid.len());
    for x in grid {
        let mut coords = vec![BigInt::zero(); rank];
        let mut cur = x.clone();
        let mut steps = 0;
        while cur != zero {
            let step = atoms
                .iter()
                .enumerate()
                .find_map(|(i, a)| e.minus_right(a, &cur).ok().flatten().map(|r| (i, r)));
            match step {
                Some((i, r)) if steps < cap => {
                    coords[i] += 1;
                    cur = r;
                    steps += 1;
                }
                _ => {
                    return Err(AlgebraError::Unsupported(format!(
                        "{} is not a sum of atoms",
                        e.label(x)
                    )))
                }
            }
        }
        embedding.push((x.clone(), coords));
    }
    let image = |x: &E::Elem| index(x).map(|i| &embedding[i].1);
    let add = |a: &[BigInt], b: &[BigInt]| a.iter().zip(b).map(|(p, q)| p + q).collect::<Vec<_>>();
    let sub = |a: &[BigInt], b: &[BigInt]| a.iter().zip(b).map(|(p, q)| p - q).collect::<Vec<_>>();

    let mut additive = true;
    let mut cancellative = true;
    let mut order_matches = true;
    for (x, vx) in &embedding {
        for (y, vy) in &embedding {
            if let Some(s) = e.sum(x, y)? {
                if let Some(vs) = image(&s) {
                    additive &= *vs == add(vx, vy);
                }
            }
            let below = e.minus_right(y, x)?.is_some();
            order_matches &= below == sub(vx, vy).iter().all(|c| !c.is_negative());
            for (z, _) in &embedding {
                if y != z {
                    let (a, b) = (e.sum(x, y)?, e.sum(x, z)?);
                    cancellative &= a.is_none() || a != b;
                }
            }
        }
    }
    let images: BTreeSet<&Vec<BigInt>> = embedding.iter().map(|(_, v)| v).collect();
    let maxes: Vec<i64> = (0..rank)
        .map(|i| images.iter().filter_map(|v| v[i].to_i64()).max().unwrap_or(0))
        .collect();
    let box_size = maxes.iter().try_fold(1usize, |acc, m| acc.checked_mul(*m as usize + 1));
    let cone_matches = images.len() == embedding.len()
        && images.iter().all(|v| v.iter().all(|c| !c.is_negative()))
        && box_size == Some(images.len());
    let vs: Vec<&Vec<BigInt>> = images.iter().copied().collect();
    let zero_v = vec![BigInt::zero(); rank];
    let mut group_laws = true;
    for a in &vs {
        let neg: Vec<BigInt> = a.iter().map(|c| -c).collect();
        group_laws &= add(a, &neg) == zero_v && add(a, &zero_v) == **a;
        for b in &vs {
            group_laws &= add(a, b) == add(b, a);
            for c in &vs {
                group_laws &= add(&add(a, b), c) == add(a, &add(b, c));
            }
        }
    }
    Ok(DifferenceGroup {
        rank,
        atoms,
        embedding,
        checks: DifferenceChecks { additive, cancellative, cone_matches, order_matches, group_laws },
    })
}

/// `E_0` of a lexicographic interval algebra: `(0, g)` with `0 <= g` and
/// coordinates at most `radius`.
pub fn zero_slice_grid(e: &IntervalPea, radius: i64) -> Result<Vec<GroupElement>> {
    let (h, bottom) = e.lex_scalar_parts().ok_or_else(|| {
        AlgebraError::Unsupported(format!("{} is not a lexicographic product over a scalar head", e.group()))
    })?;
    let mut out = Vec::new();
    for g in enumerate_box(bottom, radius)? {
        if bottom.positive_cone_member(&g)? {
            out.push(GroupElement::pair(GroupElement::Scalar(h.zero()), g));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomRule {
    Identity,
    /// `g ↦ k g` for `k >= 0`.
    Scale(i64),
    /// Output coordinate `i` is input coordinate `p[i]`.
    Permute(Vec<usize>),
    Project(Vec<usize>),
    /// Inclusion of scalar subgroups.
    Embed,
    /// `second ∘ first`.
    Compose(Box<GroupHom>, Box<GroupHom>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: GroupDescriptor,
    pub target: GroupDescriptor,
    pub rule: HomRule,
}

impl GroupHom {
    pub fn new(source: GroupDescriptor, target: GroupDescriptor, rule: HomRule) -> Result<Self> {
        source.validate()?;
        target.validate()?;
        let shape_ok = match (&rule, &source, &target) {
            (HomRule::Identity, s, t) => s == t,
            (HomRule::Scale(k), s, t) => *k >= 0 && s == t,
            (HomRule::Permute(p), GroupDescriptor::IntVector(n), GroupDescriptor::IntVector(m)) => {
                n == m && p.len() == *n && (0..*n).all(|i| p.contains(&i))
            }
            (HomRule::Project(p), GroupDescriptor::IntVector(n), GroupDescriptor::IntVector(m)) => {
                p.len() == *m && p.iter().all(|i| i < n)
            }
            (HomRule::Project(p), GroupDescriptor::IntVector(n), t) if *t == GroupDescriptor::z() => {
                p.len() == 1 && p[0] < *n
            }
            (HomRule::Embed, GroupDescriptor::Scalar(a), GroupDescriptor::Scalar(b)) => {
                a.unit_interval_grid(6).iter().all(|t| embed_scalar(b, t).is_some())
            }
            (HomRule::Compose(f, g), s, t) => f.source == *s && g.target == *t && f.target == g.source,
            _ => false,
        };
        if !shape_ok {
            return Err(AlgebraError::DomainMismatch(format!("{rule:?} is not a map {source} -> {target}")));
        }
        Ok(GroupHom { source, target, rule })
    }

    pub fn identity(g: GroupDescriptor) -> Self {
        GroupHom { source: g.clone(), target: g, rule: HomRule::Identity }
    }

    /// `second ∘ self`.
    pub fn then(&self, second: &GroupHom) -> Result<GroupHom> {
        GroupHom::new(
            self.source.clone(),
            second.target.clone(),
            HomRule::Compose(Box::new(self.clone()), Box::new(second.clone())),
        )
    }

    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement> {
        self.source.check(g)?;
        let out = match (&self.rule, g) {
            (HomRule::Identity, _) => g.clone(),
            (HomRule::Scale(k), _) => self.source.mul_int(g, *k)?,
            (HomRule::Permute(p) | HomRule::Project(p), GroupElement::Vector(v)) => {
                let w: Vec<BigInt> = p.iter().map(|&i| v[i].clone()).collect();
                match self.target {
                    GroupDescriptor::IntVector(_) => GroupElement::Vector(w),
                    _ => GroupElement::rational(Rational::from_integer(w[0].clone())),
                }
            }
            (HomRule::Embed, GroupElement::Scalar(s)) => {
                let GroupDescriptor::Scalar(h) = &self.target else { unreachable!("checked shape") };
                GroupElement::Scalar(embed_scalar(h, s).ok_or_else(|| {
                    AlgebraError::DomainMismatch(format!("{s} is not in {h}"))
                })?)
            }
            (HomRule::Compose(f, s), _) => s.apply(&f.apply(g)?)?,
            _ => return Err(AlgebraError::DomainMismatch(format!("cannot apply {self} to {g}"))),
        };
        self.target.check(&out)?;
        Ok(out)
    }

    /// Additivity and positivity on seeded samples; the first failure is
    /// returned as a law violation with its witness.
    pub fn validate(&self, samples: usize, seed: u64) -> Result<()> {
        let results = map_indexed(samples, seed, |_, rng| -> Result<Option<String>> {
            let a = random_element(&self.source, rng, RADIUS);
            let b = random_element(&self.source, rng, RADIUS);
            let p = random_positive(&self.source, rng, RADIUS);
            let lhs = self.apply(&self.source.add(&a, &b)?)?;
            let rhs = self.target.add(&self.apply(&a)?, &self.apply(&b)?)?;
            if lhs != rhs {
                return Ok(Some(format!("h({a} + {b}) = {lhs} but h({a}) + h({b}) = {rhs}")));
            }
            if !self.target.positive_cone_member(&self.apply(&p)?)? {
                return Ok(Some(format!("h({p}) is not positive")));
            }
            Ok(None)
        });
        for r in results {
            if let Some(w) = r? {
                return Err(AlgebraError::LawViolation(w));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |p: &[usize]| p.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
        match &self.rule {
            HomRule::Identity => write!(f, "id")?,
            HomRule::Scale(k) => write!(f, "scale({k})")?,
            HomRule::Permute(p) => write!(f, "permute({})", list(p))?,
            HomRule::Project(p) => write!(f, "project({})", list(p))?,
            HomRule::Embed => write!(f, "embed")?,
            HomRule::Compose(a, b) => return write!(f, "({b}) . ({a})"),
        }
        write!(f, " : {} -> {}", self.source, self.target)
    }
}

/// `E_H(h)`: `(t, g) ↦ (t, h(g))` between canonical algebras.
#[derive(Clone, Debug)]
pub struct LexFunctor {
    pub hom: GroupHom,
    pub source: IntervalPea,
    pub target: IntervalPea,
}

pub fn functor_map(hom: &GroupHom, h: ScalarSubgroup) -> Result<LexFunctor> {
    Ok(LexFunctor {
        hom: hom.clone(),
        source: build_lex_pea(h, hom.source.clone(), hom.source.zero())?,
        target: build_lex_pea(h, hom.target.clone(), hom.target.zero())?,
    })
}

impl LexFunctor {
    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        self.source.check_member(x)?;
        Ok(GroupElement::pair(x.head()?.clone(), self.hom.apply(x.tail()?)?))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FunctorReport {
    pub samples: usize,
    pub identity_failures: usize,
    pub composition_failures: usize,
    pub homomorphism_failures: usize,
    /// `h` rebuilt from `f = E(h)` on `G^+` and extended by differences
    /// disagrees with `h`.
    pub fullness_failures: usize,
    pub first_failure: Option<String>,
}

impl FunctorReport {
    pub fn clean(&self) -> bool {
        self.identity_failures == 0
            && self.composition_failures == 0
            && self.homomorphism_failures == 0
            && self.fullness_failures == 0
    }
}

/// `h(g) = f(0, p) - f(0, n)` for `g = p - n` with `p, n >= 0`.
fn rebuild_from_functor(f: &LexFunctor, g: &GroupElement) -> Result<GroupElement> {
    let src = &f.hom.source;
    let p = src.upper_bound(&[g.clone(), src.zero()])?;
    let n = src.sub_left(g, &p)?;
    let h = f.source.lex_scalar_parts().map(|(h, _)| h).unwrap_or(ScalarSubgroup::FullQ);
    let at = |x: &GroupElement| -> Result<GroupElement> {
        let y = GroupElement::pair(GroupElement::Scalar(h.zero()), x.clone());
        Ok(f.apply(&y)?.tail()?.clone())
    };
    f.hom.target.sub(&at(&p)?, &at(&n)?)
}

/// Functor laws for `first: A -> B` and `second: B -> C` on seeded samples.
pub fn functor_laws(
    first: &GroupHom,
    second: &GroupHom,
    h: ScalarSubgroup,
    samples: usize,
    seed: u64,
) -> Result<FunctorReport> {
    first.validate(samples, seed)?;
    second.validate(samples, seed)?;
    let f1 = functor_map(first, h)?;
    let f2 = functor_map(second, h)?;
    let f21 = functor_map(&first.then(second)?, h)?;
    let id = functor_map(&GroupHom::identity(first.source.clone()), h)?;
    let outcomes = map_indexed(samples, seed, |_, rng| -> Result<[Option<String>; 4]> {
        let e = &f1.source;
        let x = random_in_interval(e.group(), e.unit(), rng, RADIUS)?;
        let y = random_in_interval(e.group(), &e.rneg(&x)?, rng, RADIUS)?;
        let identity = (id.apply(&x)? != x).then(|| format!("E(id)({x}) != {x}"));
        let composite = f21.apply(&x)?;
        let composition = (composite != f2.apply(&f1.apply(&x)?)?).then(|| format!("E(h2 h1)({x}) differs"));
        let (fx, fy) = (f1.apply(&x)?, f1.apply(&y)?);
        let homomorphism = match e.sum(&x, &y)? {
            Some(s) if f1.target.contains(&fx) && f1.target.contains(&fy) => {
                (f1.target.sum(&fx, &fy)? != Some(f1.apply(&s)?)).then(|| format!("E(h)({x} + {y}) differs"))
            }
            _ => Some(format!("E(h) leaves the target at {x}")),
        };
        let g = random_element(&first.source, rng, RADIUS);
        let fullness = (rebuild_from_functor(&f1, &g)? != first.apply(&g)?).then(|| format!("rebuilt h differs at {g}"));
        Ok([identity, composition, homomorphism, fullness])
    });
    let mut report = FunctorReport { samples, ..FunctorReport::default() };
    for o in outcomes {
        let [a, b, c, d] = o?;
        for (slot, fail) in [
            (&mut report.identity_failures, &a),
            (&mut report.composition_failures, &b),
            (&mut report.homomorphism_failures, &c),
            (&mut report.fullness_failures, &d),
        ] {
            if fail.is_some() {
                *slot += 1;
            }
        }
        if report.first_failure.is_none() {
            report.first_failure = a.or(b).or(c).or(d);
        }
    }
    Ok(report)
}

/// An element `(0, g)` where `E(h1)` and `E(h2)` differ, trying small
/// positive `g` before seeded samples.
pub fn faithfulness_witness(
    h1: &GroupHom,
    h2: &GroupHom,
    h: ScalarSubgroup,
    samples: usize,
    seed: u64,
) -> Result<Option<GroupElement>> {
    if h1.source != h2.source || h1.target != h2.target {
        return Err(AlgebraError::DomainMismatch("homomorphisms have different signatures".into()));
    }
    let (f1, f2) = (functor_map(h1, h)?, functor_map(h2, h)?);
    let src = &h1.source;
    let mut candidates: Vec<GroupElement> = match enumerate_box(src, 1) {
        Ok(xs) => xs.into_iter().filter(|g| src.positive_cone_member(g).unwrap_or(false)).collect(),
        Err(_) => Vec::new(),
    };
    candidates.sort_by_key(|g| g.to_string());
    let sampled = map_indexed(samples, seed, |_, rng| random_positive(src, rng, RADIUS));
    for g in candidates.into_iter().chain(sampled) {
        let x = GroupElement::pair(GroupElement::Scalar(h.zero()), g);
        if f1.apply(&x)? != f2.apply(&x)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pea::FinitePea;
    use crate::scalar::{int, rat};

    fn pair(t: Scalar, g: GroupElement) -> GroupElement {
        GroupElement::pair(GroupElement::Scalar(t), g)
    }

    fn q(r: Rational) -> Scalar {
        Scalar::Rational(r)
    }

    #[test]
    fn canonical_phi_is_identity() {
        let e = build_lex_pea(ScalarSubgroup::FullQ, GroupDescriptor::z(), GroupElement::integer(0)).unwrap();
        let rep = Representation::new(e, ClassifyOptions::default()).unwrap();
        let x = pair(q(rat(1, 2)), GroupElement::integer(-3));
        assert_eq!(rep.phi(&x).unwrap(), x);
        let c = rep.system.element(&q(rat(1, 3))).unwrap();
        assert_eq!(rep.phi(&c).unwrap(), pair(q(rat(1, 3)), GroupElement::integer(0)));
        assert!(verify_isomorphism(&rep, 100, 3).unwrap().clean());
    }

    #[test]
    fn shuffled_phi_recovers_coordinates() {
        let h = ScalarSubgroup::FullQ;
        let s = Shuffle::default_for(h, &GroupDescriptor::z());
        let e = s.encode_pea(h, &GroupDescriptor::z()).unwrap();
        let rep = Representation::new(e, ClassifyOptions::default()).unwrap();
        let original = pair(q(rat(1, 3)), GroupElement::integer(4));
        let x = s.encode(&h, &original).unwrap();
        assert_eq!(x, pair(q(rat(1, 3)), GroupElement::rational(rat(4, 3))));
        assert_eq!(s.decode(&h, &rep.phi(&x).unwrap()).unwrap(), original);
    }

    #[test]
    fn shuffles_invert() {
        for (h, g, x) in [
            (ScalarSubgroup::Cyclic(4), GroupDescriptor::z(), pair(q(rat(3, 4)), GroupElement::integer(-5))),
            (
                ScalarSubgroup::Quadratic(2),
                GroupDescriptor::IntVector(2),
                pair(ScalarSubgroup::Quadratic(2).from_integer(1), GroupElement::vector(&[2, -7])),
            ),
        ] {
            let s = Shuffle::default_for(h, &g);
            let y = s.encode(&h, &x).unwrap();
            assert_eq!(s.decode(&h, &y).unwrap(), x, "{s}");
        }
        assert_eq!(Shuffle::parse("shear:-2,reverse").unwrap(), Shuffle::ShearReverse(-2));
        assert!(Shuffle::parse("twist").is_err());
    }

    #[test]
    fn corrupted_phi_is_caught() {
        let h = ScalarSubgroup::Cyclic(4);
        let e = Shuffle::Shear(1).encode_pea(h, &GroupDescriptor::z()).unwrap();
        let rep = Representation::new(e, ClassifyOptions::default()).unwrap();
        assert!(verify_isomorphism(&rep, 200, 1).unwrap().clean());
        let bad = verify_isomorphism(&rep.corrupted(), 200, 1).unwrap();
        assert!(bad.homomorphism_failures > 0);
    }

    #[test]
    fn lattice_parts_recombine() {
        let h = ScalarSubgroup::Cyclic(4);
        let e = Shuffle::Shear(1).encode_pea(h, &GroupDescriptor::z()).unwrap();
        let rep = Representation::new(e, ClassifyOptions::default()).unwrap();
        assert_eq!(lattice_parts_check(&rep, 200, 2).unwrap().failures, 0);
    }

    #[test]
    fn non_perfect_algebra_is_rejected() {
        let e = build_lex_pea(ScalarSubgroup::FullQ, GroupDescriptor::z(), GroupElement::integer(1)).unwrap();
        assert!(matches!(
            Representation::new(e, ClassifyOptions::default()),
            Err(AlgebraError::Precondition(_))
        ));
    }

    #[test]
    fn difference_group_of_integer_square() {
        let e = build_lex_pea(ScalarSubgroup::FullQ, GroupDescriptor::IntVector(2), GroupElement::vector(&[0, 0])).unwrap();
        let grid = zero_slice_grid(&e, 5).unwrap();
        assert_eq!(grid.len(), 36);
        let d = difference_group(&e, &grid).unwrap();
        assert_eq!(d.descriptor(), Some(GroupDescriptor::IntVector(2)));
        assert!(d.checks.all(), "{:?}", d.checks);
        let x = pair(q(int(0)), GroupElement::vector(&[2, 3]));
        let (_, v) = d.embedding.iter().find(|(y, _)| *y == x).unwrap();
        let mut sorted = v.clone();
        sorted.sort();
        assert_eq!(sorted, vec![BigInt::from(2), BigInt::from(3)]);
    }

    #[test]
    fn trivial_difference_groups() {
        let c3 = FinitePea::chain(3);
        let d = difference_group(&c3, &[c3.zero()]).unwrap();
        assert_eq!(d.rank, 0);
        assert_eq!(d.descriptor(), None);
        assert!(d.checks.all());
    }

    #[test]
    fn functor_doubling() {
        let h2 = GroupHom::new(GroupDescriptor::z(), GroupDescriptor::z(), HomRule::Scale(2)).unwrap();
        let f = functor_map(&h2, ScalarSubgroup::FullQ).unwrap();
        let x = pair(q(rat(1, 2)), GroupElement::integer(3));
        assert_eq!(f.apply(&x).unwrap(), pair(q(rat(1, 2)), GroupElement::integer(6)));
        let r = functor_laws(&h2, &h2, ScalarSubgroup::FullQ, 200, 5).unwrap();
        assert!(r.clean(), "{r:?}");
        let id = GroupHom::identity(GroupDescriptor::z());
        let w = faithfulness_witness(&id, &h2, ScalarSubgroup::FullQ, 50, 0).unwrap();
        assert_eq!(w, Some(pair(q(int(0)), GroupElement::integer(1))));
        assert_eq!(faithfulness_witness(&id, &id, ScalarSubgroup::FullQ, 50, 0).unwrap(), None);
    }

    #[test]
    fn functor_projection_and_permutation() {
        let z2 = GroupDescriptor::IntVector(2);
        let p = GroupHom::new(z2.clone(), z2.clone(), HomRule::Permute(vec![1, 0])).unwrap();
        let pr = GroupHom::new(z2.clone(), GroupDescriptor::z(), HomRule::Project(vec![0])).unwrap();
        let r = functor_laws(&p, &pr, ScalarSubgroup::Cyclic(3), 200, 8).unwrap();
        assert!(r.clean(), "{r:?}");
        let emb = GroupHom::new(GroupDescriptor::z(), GroupDescriptor::q(), HomRule::Embed).unwrap();
        assert!(functor_laws(&pr, &emb, ScalarSubgroup::FullQ, 100, 8).unwrap().clean());
        assert!(GroupHom::new(GroupDescriptor::q(), GroupDescriptor::z(), HomRule::Embed).is_err());
    }

    #[test]
    fn build_rejects_bad_groups() {
        assert!(build_lex_pea(ScalarSubgroup::FullQ, GroupDescriptor::IntVector(0), GroupElement::vector(&[])).is_err());
        let e = build_lex_pea(ScalarSubgroup::Cyclic(3), GroupDescriptor::IntVector(2), GroupElement::vector(&[0, 0])).unwrap();
        let r = classify_perfect(&AnyPea::Interval(e), ScalarSubgroup::Cyclic(3), ClassifyOptions::default()).unwrap();
        assert!(r.perfect);
    }
}
