//! Constructive Riesz decompositions and interpolation.
//!
//! An instance is four positive elements with `a1 + a2 = b1 + b2`; a
//! [`DecompositionTable`] refines it as
//!
//! ```text
//!  a1 | c11 c12
//!  a2 | c21 c22
//!     +--------
//!       b1  b2
//! ```

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{AlgebraError, Result};
use crate::group::{GroupDescriptor, GroupElement};
use crate::sample::{coordinate_radius, enumerate_box, random_in_interval, rng_for};
use crate::scalar::{Rational, Scalar, ScalarSubgroup};

/// Samples used by [`com_check`] when a side condition cannot be decided
/// exactly.
pub const DEFAULT_COM_BUDGET: usize = 256;
const COM_SEED: u64 = 0x5eed_c0de;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RdpLevel {
    Rdp0,
    Rdp,
    Rdp1,
    Rdp2,
}

impl fmt::Display for RdpLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RdpLevel::Rdp0 => "rdp0",
            RdpLevel::Rdp => "rdp",
            RdpLevel::Rdp1 => "rdp1",
            RdpLevel::Rdp2 => "rdp2",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for RdpLevel {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rdp0" => Ok(RdpLevel::Rdp0),
            "rdp" => Ok(RdpLevel::Rdp),
            "rdp1" => Ok(RdpLevel::Rdp1),
            "rdp2" => Ok(RdpLevel::Rdp2),
            other => Err(AlgebraError::Precondition(format!("unknown level {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RdpInstance {
    pub a1: GroupElement,
    pub a2: GroupElement,
    pub b1: GroupElement,
    pub b2: GroupElement,
}

impl RdpInstance {
    pub fn new(a1: GroupElement, a2: GroupElement, b1: GroupElement, b2: GroupElement) -> Self {
        RdpInstance { a1, a2, b1, b2 }
    }

    /// The instance with the roles of the `a` and `b` pairs exchanged.
    pub fn transposed(&self) -> Self {
        RdpInstance::new(self.b1.clone(), self.b2.clone(), self.a1.clone(), self.a2.clone())
    }

    fn elements(&self) -> [&GroupElement; 4] {
        [&self.a1, &self.a2, &self.b1, &self.b2]
    }
}

/// Status of the level-specific side condition of a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideCondition {
    NotRequired,
    Certified,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTable {
    pub c11: GroupElement,
    pub c12: GroupElement,
    pub c21: GroupElement,
    pub c22: GroupElement,
    pub level: RdpLevel,
    pub side: SideCondition,
}

impl DecompositionTable {
    fn raw(c: [GroupElement; 4], level: RdpLevel) -> Self {
        let [c11, c12, c21, c22] = c;
        DecompositionTable { c11, c12, c21, c22, level, side: SideCondition::NotRequired }
    }

    pub fn entries(&self) -> [&GroupElement; 4] {
        [&self.c11, &self.c12, &self.c21, &self.c22]
    }

    /// The table in the layout `a_i | c_i1 c_i2` over a `b1 b2` footer.
    pub fn render(&self, inst: &RdpInstance) -> String {
        let cells = [
            inst.a1.to_string(),
            self.c11.to_string(),
            self.c12.to_string(),
            inst.a2.to_string(),
            self.c21.to_string(),
            self.c22.to_string(),
            inst.b1.to_string(),
            inst.b2.to_string(),
        ];
        let w = cells.iter().map(String::len).max().unwrap_or(1);
        let mut s = String::new();
        s.push_str(&format!("{:>w$} | {:>w$} {:>w$}\n", cells[0], cells[1], cells[2]));
        s.push_str(&format!("{:>w$} | {:>w$} {:>w$}\n", cells[3], cells[4], cells[5]));
        s.push_str(&format!("{:>w$}-+-{}\n", "", "-".repeat(2 * w + 1)));
        s.push_str(&format!("{:>w$}   {:>w$} {:>w$}\n", "", cells[6], cells[7]));
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableVerdict {
    Valid,
    Invalid(String),
    Inconclusive(String),
}

impl TableVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, TableVerdict::Valid)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComVerdict {
    Holds,
    FailsWithWitness(GroupElement, GroupElement),
    Inconclusive { checked: usize },
}

/// How a lexicographic product over a dense scalar head is solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Dense heads go through the approximation by a cyclic subgroup.
    #[default]
    Auto,
    /// Case tables are applied directly to every linear head.
    CaseTables,
}

fn require_positive(desc: &GroupDescriptor, x: &GroupElement, name: &str) -> Result<()> {
    desc.check(x)?;
    if !desc.positive_cone_member(x)? {
        return Err(AlgebraError::Precondition(format!("{name} = {x} is not positive")));
    }
    Ok(())
}

fn check_instance(desc: &GroupDescriptor, inst: &RdpInstance) -> Result<()> {
    desc.validate()?;
    for (x, name) in inst.elements().into_iter().zip(["a1", "a2", "b1", "b2"]) {
        require_positive(desc, x, name)?;
    }
    let lhs = desc.add(&inst.a1, &inst.a2)?;
    let rhs = desc.add(&inst.b1, &inst.b2)?;
    if lhs != rhs {
        return Err(AlgebraError::Precondition(format!(
            "a1 + a2 = {lhs} differs from b1 + b2 = {rhs}"
        )));
    }
    Ok(())
}

/// Completes a table from its corner `c11` using the row and column laws.
pub fn derive_table(
    desc: &GroupDescriptor,
    inst: &RdpInstance,
    c11: GroupElement,
) -> Result<[GroupElement; 4]> {
    let c12 = desc.sub_left(&c11, &inst.a1)?;
    let c21 = desc.sub_left(&c11, &inst.b1)?;
    let c22 = desc.sub_left(&c21, &inst.a2)?;
    Ok([c11, c12, c21, c22])
}

/// Refinement driven by `c11 = min(a1, b1)` in a linearly ordered group.
fn min_based(desc: &GroupDescriptor, inst: &RdpInstance) -> Result<[GroupElement; 4]> {
    let c11 = if desc.compare_linear(&inst.a1, &inst.b1)? != Ordering::Greater {
        inst.a1.clone()
    } else {
        inst.b1.clone()
    };
    derive_table(desc, inst, c11)
}

/// Refinement driven by `c11 = a1 ∧ b1` in an Abelian lattice-ordered group.
fn meet_based(desc: &GroupDescriptor, inst: &RdpInstance) -> Result<[GroupElement; 4]> {
    let c11 = desc.meet(&inst.a1, &inst.b1)?.ok_or_else(|| {
        AlgebraError::Unsupported(format!("meet of {} and {} not computable in {desc}", inst.a1, inst.b1))
    })?;
    derive_table(desc, inst, c11)
}

fn split_instance(inst: &RdpInstance) -> Result<(RdpInstance, RdpInstance)> {
    let h = |x: &GroupElement| x.head().cloned();
    let t = |x: &GroupElement| x.tail().cloned();
    Ok((
        RdpInstance::new(h(&inst.a1)?, h(&inst.a2)?, h(&inst.b1)?, h(&inst.b2)?),
        RdpInstance::new(t(&inst.a1)?, t(&inst.a2)?, t(&inst.b1)?, t(&inst.b2)?),
    ))
}

fn zip_tables(l: [GroupElement; 4], r: [GroupElement; 4]) -> [GroupElement; 4] {
    let [l11, l12, l21, l22] = l;
    let [r11, r12, r21, r22] = r;
    [
        GroupElement::pair(l11, r11),
        GroupElement::pair(l12, r12),
        GroupElement::pair(l21, r21),
        GroupElement::pair(l22, r22),
    ]
}

fn solve(desc: &GroupDescriptor, inst: &RdpInstance, strategy: Strategy) -> Result<[GroupElement; 4]> {
    match desc {
        GroupDescriptor::Scalar(_) | GroupDescriptor::AffineQ => min_based(desc, inst),
        GroupDescriptor::IntVector(_) => meet_based(desc, inst),
        GroupDescriptor::Product(l, r) => {
            let (hi, ti) = split_instance(inst)?;
            Ok(zip_tables(solve(l, &hi, strategy)?, solve(r, &ti, strategy)?))
        }
        GroupDescriptor::Lex(top, bottom) => match (top.as_ref(), strategy) {
            (GroupDescriptor::Scalar(h), Strategy::Auto) if h.is_dense() => {
                dense_reduction(*h, bottom, inst, strategy)
            }
            _ => case_tables(top, bottom, inst, strategy),
        },
    }
}

/// The three-case construction for a lexicographic product with a linearly
/// ordered head.
fn case_tables(
    top: &GroupDescriptor,
    bottom: &GroupDescriptor,
    inst: &RdpInstance,
    strategy: Strategy,
) -> Result<[GroupElement; 4]> {
    let (heads, tails) = split_instance(inst)?;
    let zero = top.zero();
    let is_zero = |x: &GroupElement| *x == zero;
    let (m1, m2, n1, n2) = (&heads.a1, &heads.a2, &heads.b1, &heads.b2);
    let p = GroupElement::pair;
    let bz = bottom.zero();

    if is_zero(m1) && is_zero(m2) {
        // then n1 = n2 = 0 as well
        let e = solve(bottom, &tails, strategy)?;
        return Ok(e.map(|x| p(zero.clone(), x)));
    }
    if is_zero(m2) {
        if !is_zero(n2) {
            return Ok([
                inst.b1.clone(),
                p(n2.clone(), bottom.sub_left(&tails.b1, &tails.a1)?),
                p(zero.clone(), bz),
                inst.a2.clone(),
            ]);
        }
        let d = bottom.lower_bound(&[tails.a1.clone(), tails.b1.clone()])?;
        let e_inst = RdpInstance::new(
            bottom.sub_left(&d, &tails.a1)?,
            tails.a2.clone(),
            bottom.sub_left(&d, &tails.b1)?,
            tails.b2.clone(),
        );
        let [e11, e12, e21, e22] = solve(bottom, &e_inst, strategy)?;
        return Ok([
            p(n1.clone(), bottom.add(&d, &e11)?),
            p(zero.clone(), e12),
            p(zero.clone(), e21),
            p(zero.clone(), e22),
        ]);
    }
    if is_zero(m1) {
        if !is_zero(n1) {
            return Ok([
                inst.a1.clone(),
                p(zero.clone(), bz),
                p(n1.clone(), bottom.sub_left(&tails.a1, &tails.b1)?),
                inst.b2.clone(),
            ]);
        }
        let d = bottom.lower_bound(&[tails.a2.clone(), tails.b2.clone()])?;
        let e_inst = RdpInstance::new(
            tails.a1.clone(),
            bottom.sub(&tails.a2, &d)?,
            tails.b1.clone(),
            bottom.sub(&tails.b2, &d)?,
        );
        let [e11, e12, e21, e22] = solve(bottom, &e_inst, strategy)?;
        return Ok([
            p(zero.clone(), e11),
            p(zero.clone(), e12),
            p(zero.clone(), e21),
            p(m2.clone(), bottom.add(&e22, &d)?),
        ]);
    }
    if is_zero(n1) || is_zero(n2) {
        let t = case_tables(top, bottom, &inst.transposed(), strategy)?;
        let [t11, t12, t21, t22] = t;
        return Ok([t11, t21, t12, t22]);
    }
    let d = bottom.lower_bound(&[
        tails.a1.clone(),
        tails.a2.clone(),
        tails.b1.clone(),
        tails.b2.clone(),
    ])?;
    let e_inst = RdpInstance::new(
        bottom.sub_left(&d, &tails.a1)?,
        bottom.sub(&tails.a2, &d)?,
        bottom.sub_left(&d, &tails.b1)?,
        bottom.sub(&tails.b2, &d)?,
    );
    let [e11, e12, e21, e22] = solve(bottom, &e_inst, strategy)?;
    let c11_tail = bottom.add(&d, &e11)?;
    let c22_tail = bottom.add(&e22, &d)?;
    if top.compare_linear(m1, n1)? != Ordering::Less {
        Ok([
            p(n1.clone(), c11_tail),
            p(top.sub_left(n1, m1)?, e12),
            p(zero.clone(), e21),
            p(m2.clone(), c22_tail),
        ])
    } else {
        Ok([
            p(m1.clone(), c11_tail),
            p(zero.clone(), e12),
            p(top.sub_left(m1, n1)?, e21),
            p(n2.clone(), c22_tail),
        ])
    }
}

/// Step `g` for the dense reduction: `1/lcm` of the head denominators over
/// `Q`, a picked point of `(0, min positive head)` over quadratic heads.
fn approximation_step(h: ScalarSubgroup, heads: &[Scalar]) -> Result<Scalar> {
    match h {
        ScalarSubgroup::Quadratic(_) => {
            let mut min: Option<Scalar> = None;
            for s in heads.iter().filter(|s| s.signum() == Ordering::Greater) {
                min = Some(match min {
                    Some(m) => m.min(s)?,
                    None => s.clone(),
                });
            }
            let min = min.ok_or_else(|| AlgebraError::Internal("no positive head".into()))?;
            h.pick_strictly_between(&h.zero(), &min)
        }
        _ => {
            let mut l = BigInt::one();
            for s in heads {
                l = l.lcm(s.as_rational()?.denom());
            }
            Ok(Scalar::Rational(Rational::new(BigInt::one(), l)))
        }
    }
}

/// Solves an instance over a dense head by rounding the heads down to
/// multiples of a common step, solving the resulting instance over a cyclic
/// head, and adding back the scalar surplus.
fn dense_reduction(
    h: ScalarSubgroup,
    bottom: &GroupDescriptor,
    inst: &RdpInstance,
    strategy: Strategy,
) -> Result<[GroupElement; 4]> {
    let (heads, _) = split_instance(inst)?;
    let hs: Vec<Scalar> = heads
        .elements()
        .iter()
        .map(|x| x.as_scalar().cloned())
        .collect::<Result<_>>()?;
    if hs.iter().all(Scalar::is_zero) {
        return case_tables(&GroupDescriptor::Scalar(h), bottom, inst, strategy);
    }
    let g = approximation_step(h, &hs)?;
    let mut counts: Vec<BigInt> = hs.iter().map(|s| s.floor_div(&g)).collect::<Result<_>>()?;
    let ka = &counts[0] + &counts[1];
    let kb = &counts[2] + &counts[3];
    // the totals differ by at most one; shave the larger side at a count >= 2
    let shave = match ka.cmp(&kb) {
        Ordering::Greater => Some(0),
        Ordering::Less => Some(2),
        Ordering::Equal => None,
    };
    if let Some(base) = shave {
        let i = if counts[base] >= counts[base + 1] { base } else { base + 1 };
        if counts[i] < BigInt::from(2) {
            return Err(AlgebraError::Internal("approximation step too coarse".into()));
        }
        counts[i] -= 1;
    }

    let z = GroupDescriptor::z();
    let lifted = GroupDescriptor::lex(z.clone(), bottom.clone());
    let as_int = |k: &BigInt| GroupElement::Scalar(Scalar::Rational(Rational::from_integer(k.clone())));
    let xs = inst.elements();
    let mut int_inst = Vec::with_capacity(4);
    let mut surplus = Vec::with_capacity(4);
    for i in 0..4 {
        int_inst.push(GroupElement::pair(as_int(&counts[i]), xs[i].tail()?.clone()));
        surplus.push(GroupElement::Scalar(hs[i].sub(&g.mul_int(&counts[i]))?));
    }
    let int_inst = RdpInstance::new(
        int_inst[0].clone(),
        int_inst[1].clone(),
        int_inst[2].clone(),
        int_inst[3].clone(),
    );
    let sur_inst = RdpInstance::new(
        surplus[0].clone(),
        surplus[1].clone(),
        surplus[2].clone(),
        surplus[3].clone(),
    );
    let base = case_tables(&z, bottom, &int_inst, strategy)?;
    debug_assert!(check_sums(&lifted, &int_inst, &base)?);
    let hd = GroupDescriptor::Scalar(h);
    let extra = min_based(&hd, &sur_inst)?;
    let mut out = Vec::with_capacity(4);
    for (c, s) in base.iter().zip(extra.iter()) {
        let k = c.head()?.as_scalar()?.as_rational()?.to_integer();
        let head = g.mul_int(&k).add(s.as_scalar()?)?;
        out.push(GroupElement::pair(GroupElement::Scalar(head), c.tail()?.clone()));
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone(), out[3].clone()])
}

fn check_sums(desc: &GroupDescriptor, inst: &RdpInstance, c: &[GroupElement; 4]) -> Result<bool> {
    Ok(desc.add(&c[0], &c[1])? == inst.a1
        && desc.add(&c[2], &c[3])? == inst.a2
        && desc.add(&c[0], &c[2])? == inst.b1
        && desc.add(&c[1], &c[3])? == inst.b2)
}

fn solve_rdp2(desc: &GroupDescriptor, inst: &RdpInstance) -> Result<[GroupElement; 4]> {
    if desc.is_linearly_ordered() {
        return min_based(desc, inst);
    }
    match desc {
        GroupDescriptor::Product(l, r) => {
            let (hi, ti) = split_instance(inst)?;
            Ok(zip_tables(solve_rdp2(l, &hi)?, solve_rdp2(r, &ti)?))
        }
        _ if desc.is_lattice() && desc.is_abelian() => meet_based(desc, inst),
        _ => Err(AlgebraError::Unsupported(format!(
            "RDP2 needs a lattice-ordered group with computable meets; {desc} is not supported"
        ))),
    }
}

/// Solves an instance at `level`, verifying the table before returning it.
pub fn rdp_decompose(
    desc: &GroupDescriptor,
    inst: &RdpInstance,
    level: RdpLevel,
) -> Result<DecompositionTable> {
    rdp_decompose_with(desc, inst, level, Strategy::Auto)
}

pub fn rdp_decompose_with(
    desc: &GroupDescriptor,
    inst: &RdpInstance,
    level: RdpLevel,
    strategy: Strategy,
) -> Result<DecompositionTable> {
    check_instance(desc, inst)?;
    if level == RdpLevel::Rdp2 {
        if !desc.is_lattice() {
            return Err(AlgebraError::Unsupported(format!(
                "RDP2 holds only in lattice-ordered groups; {desc} is not one"
            )));
        }
        let mut t = DecompositionTable::raw(solve_rdp2(desc, inst)?, level);
        return finish(desc, inst, &mut t).map(|_| t);
    }
    let mut t = DecompositionTable::raw(solve(desc, inst, strategy)?, level);
    if level == RdpLevel::Rdp1 {
        let first = finish(desc, inst, &mut t);
        if first.is_ok() && t.side == SideCondition::Certified {
            return Ok(t);
        }
        // a min-based table always has c12 = 0 or c21 = 0
        if desc.is_linearly_ordered() {
            let mut m = DecompositionTable::raw(min_based(desc, inst)?, level);
            finish(desc, inst, &mut m)?;
            return Ok(m);
        }
        first?;
        return Ok(t);
    }
    finish(desc, inst, &mut t)?;
    Ok(t)
}

fn finish(desc: &GroupDescriptor, inst: &RdpInstance, t: &mut DecompositionTable) -> Result<()> {
    match rdp_table_verify(desc, inst, t, t.level)? {
        TableVerdict::Valid => {
            t.side = match t.level {
                RdpLevel::Rdp1 | RdpLevel::Rdp2 => SideCondition::Certified,
                _ => SideCondition::NotRequired,
            };
            Ok(())
        }
        TableVerdict::Inconclusive(_) => {
            t.side = SideCondition::Inconclusive;
            Ok(())
        }
        TableVerdict::Invalid(reason) if reason.starts_with("com") => Err(AlgebraError::Unsupported(
            format!("the constructed table violates the RDP1 condition: {reason}"),
        )),
        TableVerdict::Invalid(reason) => Err(AlgebraError::Internal(format!(
            "constructed table failed verification: {reason}"
        ))),
    }
}

/// Checks the four sum laws, positivity, and the side condition of `level`.
pub fn rdp_table_verify(
    desc: &GroupDescriptor,
    inst: &RdpInstance,
    table: &DecompositionTable,
    level: RdpLevel,
) -> Result<TableVerdict> {
    let c = table.entries();
    let laws = [
        ("row 1 sum", c[0], c[1], &inst.a1),
        ("row 2 sum", c[2], c[3], &inst.a2),
        ("column 1 sum", c[0], c[2], &inst.b1),
        ("column 2 sum", c[1], c[3], &inst.b2),
    ];
    for (name, x, y, want) in laws {
        if desc.add(x, y)? != *want {
            return Ok(TableVerdict::Invalid(name.into()));
        }
    }
    for (x, name) in c.into_iter().zip(["c11", "c12", "c21", "c22"]) {
        if !desc.positive_cone_member(x)? {
            return Ok(TableVerdict::Invalid(format!("{name} is not positive")));
        }
    }
    Ok(match level {
        RdpLevel::Rdp0 | RdpLevel::Rdp => TableVerdict::Valid,
        RdpLevel::Rdp1 => match com_check(desc, &table.c12, &table.c21, DEFAULT_COM_BUDGET)? {
            ComVerdict::Holds => TableVerdict::Valid,
            ComVerdict::FailsWithWitness(x, y) => {
                TableVerdict::Invalid(format!("com fails: {x} + {y} != {y} + {x}"))
            }
            ComVerdict::Inconclusive { checked } => TableVerdict::Inconclusive(format!(
                "com between c12 and c21 held on {checked} samples only"
            )),
        },
        RdpLevel::Rdp2 => match desc.meet(&table.c12, &table.c21)? {
            Some(m) if m == desc.zero() => TableVerdict::Valid,
            Some(m) => TableVerdict::Invalid(format!("c12 ∧ c21 = {m} is not zero")),
            None => TableVerdict::Inconclusive("meet of c12 and c21 not computable".into()),
        },
    })
}

/// Decides whether everything in `[0, a]` commutes with everything in `[0, b]`.
pub fn com_check(
    desc: &GroupDescriptor,
    a: &GroupElement,
    b: &GroupElement,
    budget: usize,
) -> Result<ComVerdict> {
    require_positive(desc, a, "a")?;
    require_positive(desc, b, "b")?;
    let zero = desc.zero();
    if desc.is_abelian() || *a == zero || *b == zero {
        return Ok(ComVerdict::Holds);
    }
    if let GroupDescriptor::Product(l, r) = desc {
        let left = com_check(l, a.head()?, b.head()?, budget)?;
        let right = com_check(r, a.tail()?, b.tail()?, budget)?;
        return Ok(match (left, right) {
            (ComVerdict::FailsWithWitness(x, y), _) => ComVerdict::FailsWithWitness(
                GroupElement::pair(x, r.zero()),
                GroupElement::pair(y, r.zero()),
            ),
            (_, ComVerdict::FailsWithWitness(x, y)) => ComVerdict::FailsWithWitness(
                GroupElement::pair(l.zero(), x),
                GroupElement::pair(l.zero(), y),
            ),
            (ComVerdict::Holds, ComVerdict::Holds) => ComVerdict::Holds,
            (ComVerdict::Inconclusive { checked: p }, ComVerdict::Inconclusive { checked: q }) => {
                ComVerdict::Inconclusive { checked: p.min(q) }
            }
            (ComVerdict::Inconclusive { checked }, _) | (_, ComVerdict::Inconclusive { checked }) => {
                ComVerdict::Inconclusive { checked }
            }
        });
    }
    let commute = |x: &GroupElement, y: &GroupElement| -> Result<bool> {
        Ok(desc.add(x, y)? == desc.add(y, x)?)
    };
    if !commute(a, b)? {
        return Ok(ComVerdict::FailsWithWitness(a.clone(), b.clone()));
    }
    let mut rng = rng_for(COM_SEED, 0);
    let mut checked = 1;
    for _ in 0..budget {
        let x = random_in_interval(desc, a, &mut rng, 6)?;
        let y = random_in_interval(desc, b, &mut rng, 6)?;
        checked += 1;
        if !commute(&x, &y)? {
            return Ok(ComVerdict::FailsWithWitness(x, y));
        }
    }
    Ok(ComVerdict::Inconclusive { checked })
}

/// An element `c` with `lows <= c <= highs` for every listed element.
pub fn interpolate_many(
    desc: &GroupDescriptor,
    lows: &[GroupElement],
    highs: &[GroupElement],
) -> Result<GroupElement> {
    if lows.is_empty() || highs.is_empty() {
        return Err(AlgebraError::Precondition("interpolation needs both bounds".into()));
    }
    for l in lows {
        for h in highs {
            if !desc.leq(l, h)? {
                return Err(AlgebraError::Precondition(format!("{l} is not below {h}")));
            }
        }
    }
    match desc {
        GroupDescriptor::Product(l, r) => {
            let heads = |xs: &[GroupElement]| xs.iter().map(|x| x.head().cloned()).collect::<Result<Vec<_>>>();
            let tails = |xs: &[GroupElement]| xs.iter().map(|x| x.tail().cloned()).collect::<Result<Vec<_>>>();
            Ok(GroupElement::pair(
                interpolate_many(l, &heads(lows)?, &heads(highs)?)?,
                interpolate_many(r, &tails(lows)?, &tails(highs)?)?,
            ))
        }
        GroupDescriptor::Lex(top, bottom) => {
            let mut a = lows[0].head()?.clone();
            for x in &lows[1..] {
                if top.compare_linear(x.head()?, &a)? == Ordering::Greater {
                    a = x.head()?.clone();
                }
            }
            let mut b = highs[0].head()?.clone();
            for x in &highs[1..] {
                if top.compare_linear(x.head()?, &b)? == Ordering::Less {
                    b = x.head()?.clone();
                }
            }
            let at = |xs: &[GroupElement], h: &GroupElement| -> Result<Vec<GroupElement>> {
                let mut out = Vec::new();
                for x in xs {
                    if x.head()? == h {
                        out.push(x.tail()?.clone());
                    }
                }
                Ok(out)
            };
            let low_tails = at(lows, &a)?;
            if a == b {
                let t = interpolate_many(bottom, &low_tails, &at(highs, &b)?)?;
                return Ok(GroupElement::pair(a, t));
            }
            if let GroupDescriptor::Scalar(h) = top.as_ref() {
                match h.pick_strictly_between(a.as_scalar()?, b.as_scalar()?) {
                    Ok(s) => return Ok(GroupElement::pair(GroupElement::Scalar(s), bottom.zero())),
                    Err(AlgebraError::NoElement { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(GroupElement::pair(a, bottom.upper_bound(&low_tails)?))
        }
        _ if desc.is_lattice() => {
            let mut c = lows[0].clone();
            for x in &lows[1..] {
                c = desc.join(&c, x)?.ok_or_else(|| {
                    AlgebraError::Unsupported(format!("join not computable in {desc}"))
                })?;
            }
            Ok(c)
        }
        _ => Err(AlgebraError::Unsupported(format!("no interpolation rule for {desc}"))),
    }
}

/// Riesz interpolation: `a1, a2 <= c <= b1, b2`.
pub fn rip_interpolate(
    desc: &GroupDescriptor,
    a1: &GroupElement,
    a2: &GroupElement,
    b1: &GroupElement,
    b2: &GroupElement,
) -> Result<GroupElement> {
    desc.validate()?;
    for x in [a1, a2, b1, b2] {
        desc.check(x)?;
    }
    interpolate_many(desc, &[a1.clone(), a2.clone()], &[b1.clone(), b2.clone()])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleResult {
    Found(DecompositionTable),
    NotFoundWithinBox,
}

/// Exhaustive search for a table over all `c11` in a coordinate box.
pub fn rdp_oracle_search(
    desc: &GroupDescriptor,
    inst: &RdpInstance,
    level: RdpLevel,
    radius: i64,
) -> Result<OracleResult> {
    check_instance(desc, inst)?;
    if !desc.is_discrete() {
        return Err(AlgebraError::Unsupported(format!(
            "the oracle enumerates discrete groups only; {desc} is dense"
        )));
    }
    let r = BigInt::from(radius);
    for x in inst.elements() {
        if coordinate_radius(x) > r {
            return Err(AlgebraError::Precondition(format!("{x} lies outside the box {radius}")));
        }
    }
    let zero = desc.zero();
    for c11 in enumerate_box(desc, radius)? {
        if !(desc.leq(&zero, &c11)? && desc.leq(&c11, &inst.a1)? && desc.leq(&c11, &inst.b1)?) {
            continue;
        }
        let t = DecompositionTable::raw(derive_table(desc, inst, c11)?, level);
        if rdp_table_verify(desc, inst, &t, level)?.is_valid() {
            let side = match level {
                RdpLevel::Rdp1 | RdpLevel::Rdp2 => SideCondition::Certified,
                _ => SideCondition::NotRequired,
            };
            return Ok(OracleResult::Found(DecompositionTable { side, ..t }));
        }
    }
    Ok(OracleResult::NotFoundWithinBox)
}
