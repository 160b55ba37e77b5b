//! Text syntax.
//!
//! ```text
//! subgroup   Z | Z/n | Q | Q[sqrt d]
//! descriptor subgroup | Z^k | Aff | lex(A, B) | prod(A, B)
//! element    scalar | (x, y) | (c1, ..., ck)      scalar: p/q, p/q + r/s*sqrt(d)
//! algebra    gamma(descriptor, unit) | chain(n) | boolean(k) | mo2
//! hom        id | scale(k) | permute(i, ...) | project(i, ...) | embed, then `: A -> B`
//! ```
//!
//! Finite algebra files are line based: `pea n=<size> zero=<id> one=<id>`,
//! then `name <id> <label>` and `add <i> <j> <k>` lines; `#` starts a
//! comment. Sums not listed are undefined.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};
use crate::group::{GroupDescriptor, GroupElement};
use crate::pea::{AnyPea, FinitePea, IntervalPea, PeaTable};
use crate::represent::{GroupHom, HomRule};
use crate::scalar::{QuadraticNumber, Rational, Scalar, ScalarSubgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Sym(&'static str),
}

const SYMBOLS: [&str; 13] = ["->", "(", ")", ",", "/", "^", "[", "]", "+", "-", "*", ":", "="];

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end: usize,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse { line, column, message: message.into() }
}

impl Lexer {
    fn new(text: &str, line: usize, offset: usize) -> Result<Lexer> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = offset + i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push((Tok::Num(s.parse().expect("digits")), col));
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            } else {
                let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
                let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) else {
                    return Err(parse_error(line, col, format!("unexpected character {c:?}")));
                };
                toks.push((Tok::Sym(sym), col));
                i += sym.chars().count();
            }
        }
        Ok(Lexer { toks, pos: 0, line, end: offset + chars.len() + 1 })
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn err(&self, message: impl Into<String>) -> AlgebraError {
        parse_error(self.line, self.column(), message)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn peek_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        let hit = self.peek_sym(s);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{s}'")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err("expected a name")),
        }
    }

    fn number(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.err("expected a number")),
        }
    }

    fn small(&mut self) -> Result<u64> {
        let col = self.column();
        let n = self.number()?;
        n.to_u64().ok_or_else(|| parse_error(self.line, col, format!("{n} is too large")))
    }

    fn signed(&mut self) -> Result<BigInt> {
        let neg = self.eat_sym("-");
        let n = self.number()?;
        Ok(if neg { -n } else { n })
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            Err(self.err("unexpected trailing input"))
        } else {
            Ok(())
        }
    }
}

fn whole<T>(text: &str, f: impl FnOnce(&mut Lexer) -> Result<T>) -> Result<T> {
    let mut lx = Lexer::new(text, 1, 0)?;
    let v = f(&mut lx)?;
    lx.finish()?;
    Ok(v)
}

fn subgroup(lx: &mut Lexer) -> Result<ScalarSubgroup> {
    let col = lx.column();
    let name = lx.ident()?;
    let h = match name.as_str() {
        "Z" if lx.eat_sym("/") => ScalarSubgroup::Cyclic(lx.small()?),
        "Z" => ScalarSubgroup::Cyclic(1),
        "Q" if lx.eat_sym("[") => {
            if lx.ident()? != "sqrt" {
                return Err(lx.err("expected sqrt"));
            }
            let d = lx.small()?;
            lx.expect_sym("]")?;
            ScalarSubgroup::Quadratic(d)
        }
        "Q" => ScalarSubgroup::FullQ,
        other => return Err(parse_error(lx.line, col, format!("unknown subgroup {other}"))),
    };
    h.validate().map_err(|e| parse_error(lx.line, col, e.to_string()))?;
    Ok(h)
}

fn descriptor(lx: &mut Lexer) -> Result<GroupDescriptor> {
    let col = lx.column();
    let name = match lx.peek() {
        Some(Tok::Ident(s)) => s.clone(),
        _ => return Err(lx.err("expected a group descriptor")),
    };
    let d = match name.as_str() {
        "Z" if matches!(lx.toks.get(lx.pos + 1), Some((Tok::Sym("^"), _))) => {
            lx.pos += 2;
            GroupDescriptor::IntVector(lx.small()? as usize)
        }
        "Z" | "Q" => GroupDescriptor::Scalar(subgroup(lx)?),
        "Aff" => {
            lx.pos += 1;
            GroupDescriptor::AffineQ
        }
        "lex" | "prod" => {
            lx.pos += 1;
            lx.expect_sym("(")?;
            let a = descriptor(lx)?;
            lx.expect_sym(",")?;
            let b = descriptor(lx)?;
            lx.expect_sym(")")?;
            if name == "lex" {
                GroupDescriptor::lex(a, b)
            } else {
                GroupDescriptor::product(a, b)
            }
        }
        other => return Err(parse_error(lx.line, col, format!("unknown group {other}"))),
    };
    d.validate().map_err(|e| parse_error(lx.line, col, e.to_string()))?;
    Ok(d)
}

/// `a + b sqrt(d)` as written, with `d` when a root appears.
fn scalar_parts(lx: &mut Lexer) -> Result<(Rational, Rational, Option<u64>)> {
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    let mut d = None;
    let mut first = true;
    loop {
        let mut neg = if first {
            false
        } else if lx.eat_sym("+") {
            false
        } else if lx.eat_sym("-") {
            true
        } else {
            break;
        };
        if lx.eat_sym("-") {
            neg = !neg;
        }
        first = false;
        let mut coef = Rational::from_integer(BigInt::from(1));
        let mut root = false;
        if matches!(lx.peek(), Some(Tok::Num(_))) {
            let p = lx.number()?;
            coef = if lx.eat_sym("/") {
                let col = lx.column();
                let q = lx.number()?;
                if q.is_zero() {
                    return Err(parse_error(lx.line, col, "zero denominator"));
                }
                Rational::new(p, q)
            } else {
                Rational::from_integer(p)
            };
            root = lx.eat_sym("*");
        } else if !matches!(lx.peek(), Some(Tok::Ident(s)) if s == "sqrt") {
            return Err(lx.err("expected a number"));
        }
        if root || matches!(lx.peek(), Some(Tok::Ident(s)) if s == "sqrt") {
            if lx.ident()? != "sqrt" {
                return Err(lx.err("expected sqrt"));
            }
            lx.expect_sym("(")?;
            let col = lx.column();
            let r = lx.small()?;
            lx.expect_sym(")")?;
            if d.is_some_and(|x| x != r) {
                return Err(parse_error(lx.line, col, "mixed square roots"));
            }
            d = Some(r);
            if neg {
                b -= coef;
            } else {
                b += coef;
            }
        } else if neg {
            a -= coef;
        } else {
            a += coef;
        }
    }
    if first {
        return Err(lx.err("expected a number"));
    }
    Ok((a, b, d))
}

fn scalar_in(lx: &mut Lexer, h: &ScalarSubgroup) -> Result<Scalar> {
    let col = lx.column();
    let (a, b, d) = scalar_parts(lx)?;
    let fail = |m: String| parse_error(lx.line, col, m);
    let s = match h {
        ScalarSubgroup::Quadratic(d0) => {
            if d.is_some_and(|d| d != *d0) {
                return Err(fail(format!("only sqrt({d0}) may appear in {h}")));
            }
            Scalar::Quadratic(QuadraticNumber::new(a, b, *d0))
        }
        _ if !b.is_zero() => return Err(fail(format!("{h} has no irrational elements"))),
        _ => Scalar::Rational(a),
    };
    if !h.contains(&s) {
        return Err(fail(format!("{s} is not in {h}")));
    }
    Ok(s)
}

fn rational(lx: &mut Lexer) -> Result<Rational> {
    let col = lx.column();
    match scalar_parts(lx)? {
        (a, b, _) if b.is_zero() => Ok(a),
        _ => Err(parse_error(lx.line, col, "expected a rational number")),
    }
}

fn element(lx: &mut Lexer, desc: &GroupDescriptor) -> Result<GroupElement> {
    let col = lx.column();
    let x = match desc {
        GroupDescriptor::Scalar(h) => GroupElement::Scalar(scalar_in(lx, h)?),
        GroupDescriptor::IntVector(1) if !lx.peek_sym("(") => GroupElement::Vector(vec![lx.signed()?]),
        GroupDescriptor::IntVector(k) => {
            lx.expect_sym("(")?;
            let mut v = vec![lx.signed()?];
            while lx.eat_sym(",") {
                v.push(lx.signed()?);
            }
            lx.expect_sym(")")?;
            if v.len() != *k {
                return Err(parse_error(lx.line, col, format!("expected {k} coordinates, found {}", v.len())));
            }
            GroupElement::Vector(v)
        }
        GroupDescriptor::AffineQ => {
            lx.expect_sym("(")?;
            let scale = rational(lx)?;
            lx.expect_sym(",")?;
            let shift = rational(lx)?;
            lx.expect_sym(")")?;
            GroupElement::Affine { scale, shift }
        }
        GroupDescriptor::Lex(a, b) | GroupDescriptor::Product(a, b) => {
            lx.expect_sym("(")?;
            let x = element(lx, a)?;
            lx.expect_sym(",")?;
            let y = element(lx, b)?;
            lx.expect_sym(")")?;
            GroupElement::pair(x, y)
        }
    };
    desc.check(&x).map_err(|e| parse_error(lx.line, col, e.to_string()))?;
    Ok(x)
}

pub fn parse_subgroup(text: &str) -> Result<ScalarSubgroup> {
    whole(text, subgroup)
}

pub fn parse_descriptor(text: &str) -> Result<GroupDescriptor> {
    whole(text, descriptor)
}

pub fn parse_element(desc: &GroupDescriptor, text: &str) -> Result<GroupElement> {
    whole(text, |lx| element(lx, desc))
}

pub fn parse_scalar(h: &ScalarSubgroup, text: &str) -> Result<Scalar> {
    whole(text, |lx| scalar_in(lx, h))
}

/// An algebra expression: `gamma(G, u)`, `chain(n)`, `boolean(k)` or `mo2`.
pub fn parse_algebra(text: &str) -> Result<AnyPea> {
    whole(text, |lx| {
        let col = lx.column();
        let name = lx.ident()?;
        let at = |m: String| parse_error(1, col, m);
        match name.as_str() {
            "gamma" => {
                lx.expect_sym("(")?;
                let g = descriptor(lx)?;
                lx.expect_sym(",")?;
                let u = element(lx, &g)?;
                lx.expect_sym(")")?;
                IntervalPea::from_parts(g, u).map(AnyPea::Interval).map_err(|e| at(e.to_string()))
            }
            "chain" | "boolean" => {
                lx.expect_sym("(")?;
                let n = lx.small()? as usize;
                lx.expect_sym(")")?;
                let cap = if name == "chain" { 63 } else { 6 };
                if n == 0 || n > cap {
                    return Err(at(format!("{name} takes 1..={cap}")));
                }
                Ok(AnyPea::Finite(if name == "chain" { FinitePea::chain(n) } else { FinitePea::boolean(n) }))
            }
            "mo2" => Ok(AnyPea::Finite(FinitePea::mo2())),
            other => Err(at(format!("unknown algebra {other}"))),
        }
    })
}

/// A finite table in the line-based file format. Elements may be referred
/// to by identifier or by a name declared earlier.
pub fn parse_pea_table(text: &str) -> Result<PeaTable> {
    let mut table: Option<PeaTable> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut words = Vec::new();
        let mut col = 0;
        for w in content.split(' ') {
            if !w.trim().is_empty() {
                words.push((w.trim(), col + 1 + (w.len() - w.trim_start().len())));
            }
            col += w.chars().count() + 1;
        }
        let Some(&(head, head_col)) = words.first() else { continue };
        match (head, table.as_mut()) {
            ("pea", None) => {
                let (mut n, mut zero, mut one) = (None, None, None);
                for &(w, c) in &words[1..] {
                    let (k, v) = w.split_once('=').ok_or_else(|| parse_error(line, c, "expected key=value"))?;
                    let v: usize = v.parse().map_err(|_| parse_error(line, c + k.len() + 1, "expected a number"))?;
                    match k {
                        "n" => n = Some(v),
                        "zero" => zero = Some(v),
                        "one" => one = Some(v),
                        _ => return Err(parse_error(line, c, format!("unknown key {k}"))),
                    }
                }
                let missing = |k: &str| parse_error(line, head_col, format!("header lacks {k}="));
                let n = n.ok_or_else(|| missing("n"))?;
                let zero = zero.ok_or_else(|| missing("zero"))?;
                let one = one.ok_or_else(|| missing("one"))?;
                if zero >= n || one >= n {
                    return Err(parse_error(line, head_col, "zero and one must be below n"));
                }
                table = Some(PeaTable::new(n, zero, one));
            }
            ("pea", Some(_)) => return Err(parse_error(line, head_col, "duplicate header")),
            (_, None) => return Err(parse_error(line, head_col, "expected header `pea n=<size> zero=<id> one=<id>`")),
            ("name", Some(t)) => {
                if words.len() != 3 {
                    return Err(parse_error(line, head_col, "expected `name <id> <label>`"));
                }
                let id = resolve(t, words[1], line)?;
                let label = words[2].0;
                if t.names.iter().enumerate().any(|(j, n)| j != id && n.as_deref() == Some(label)) {
                    return Err(parse_error(line, words[2].1, format!("name {label} is already used")));
                }
                t.names[id] = Some(label.to_string());
            }
            ("add", Some(t)) => {
                if words.len() != 4 {
                    return Err(parse_error(line, head_col, "expected `add <i> <j> <k>`"));
                }
                let a = resolve(t, words[1], line)?;
                let b = resolve(t, words[2], line)?;
                let c = resolve(t, words[3], line)?;
                t.sums.push((a, b, c));
            }
            (other, Some(_)) => return Err(parse_error(line, head_col, format!("unknown directive {other}"))),
        }
    }
    table.ok_or_else(|| parse_error(1, 1, "empty input"))
}

fn resolve(t: &PeaTable, (w, col): (&str, usize), line: usize) -> Result<usize> {
    if let Ok(i) = w.parse::<usize>() {
        if i < t.size {
            return Ok(i);
        }
        return Err(parse_error(line, col, format!("element {i} is out of range 0..{}", t.size)));
    }
    t.names
        .iter()
        .position(|n| n.as_deref() == Some(w))
        .ok_or_else(|| parse_error(line, col, format!("unknown element {w}")))
}

/// `rule : A -> B`, for example `scale(2) : Z -> Z`.
pub fn parse_hom(text: &str) -> Result<GroupHom> {
    whole(text, |lx| {
        let col = lx.column();
        let name = lx.ident()?;
        let mut args = Vec::new();
        if lx.eat_sym("(") {
            args.push(lx.signed()?);
            while lx.eat_sym(",") {
                args.push(lx.signed()?);
            }
            lx.expect_sym(")")?;
        }
        let indices = |args: &[BigInt]| -> Result<Vec<usize>> {
            args.iter()
                .map(|a| a.to_usize().ok_or_else(|| parse_error(1, col, "indices must be non-negative")))
                .collect()
        };
        let rule = match (name.as_str(), args.len()) {
            ("id", 0) => HomRule::Identity,
            ("embed", 0) => HomRule::Embed,
            ("scale", 1) => HomRule::Scale(args[0].to_i64().ok_or_else(|| parse_error(1, col, "factor too large"))?),
            ("permute", n) if n > 0 => HomRule::Permute(indices(&args)?),
            ("project", n) if n > 0 => HomRule::Project(indices(&args)?),
            (other, _) => return Err(parse_error(1, col, format!("unknown homomorphism {other}"))),
        };
        lx.expect_sym(":")?;
        let source = descriptor(lx)?;
        lx.expect_sym("->")?;
        let target = descriptor(lx)?;
        GroupHom::new(source, target, rule).map_err(|e| parse_error(1, col, e.to_string()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn descriptors() {
        assert_eq!(
            parse_descriptor("lex(Q, Z^2)").unwrap(),
            GroupDescriptor::lex(GroupDescriptor::q(), GroupDescriptor::IntVector(2))
        );
        assert_eq!(parse_descriptor("Z/1").unwrap(), GroupDescriptor::z());
        assert_eq!(parse_descriptor("Q[sqrt 2]").unwrap(), GroupDescriptor::scalar(ScalarSubgroup::Quadratic(2)));
        assert_eq!(
            parse_descriptor("prod(Aff, Z/4)").unwrap(),
            GroupDescriptor::product(GroupDescriptor::AffineQ, GroupDescriptor::scalar(ScalarSubgroup::Cyclic(4)))
        );
        match parse_descriptor("lex(Z^2, Z)") {
            Err(AlgebraError::Parse { line: 1, column: 1, message }) => {
                assert!(message.contains("lex head must be linearly ordered"), "{message}")
            }
            other => panic!("{other:?}"),
        }
        match parse_descriptor("lex(Q, Z^2") {
            Err(AlgebraError::Parse { column: 11, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_descriptor("Q[sqrt 4]"), Err(AlgebraError::Parse { column: 1, .. })));
    }

    #[test]
    fn elements() {
        let g = parse_descriptor("lex(Q, Z^2)").unwrap();
        assert_eq!(
            parse_element(&g, "(1/2, (1, -2))").unwrap(),
            GroupElement::pair(GroupElement::rational(rat(1, 2)), GroupElement::vector(&[1, -2]))
        );
        assert!(parse_element(&g, "(1/2, (1, 2, 3))").is_err());
        let h = ScalarSubgroup::Quadratic(2);
        assert_eq!(
            parse_scalar(&h, "-1 + sqrt(2)").unwrap(),
            Scalar::Quadratic(QuadraticNumber::new(int(-1), int(1), 2))
        );
        assert_eq!(parse_scalar(&h, "3*sqrt(2) - 2").unwrap(), Scalar::Quadratic(QuadraticNumber::new(int(-2), int(3), 2)));
        assert!(parse_scalar(&h, "1/2").is_err());
        assert!(parse_scalar(&ScalarSubgroup::Cyclic(3), "1/2").is_err());
        assert_eq!(parse_element(&GroupDescriptor::AffineQ, "(2, -1/3)").unwrap(), GroupElement::affine(int(2), rat(-1, 3)));
        assert_eq!(parse_element(&GroupDescriptor::z(), "-4").unwrap(), GroupElement::integer(-4));
    }

    #[test]
    fn chain_file() {
        let text = "# C3\npea n=3 zero=0 one=2\nname 1 a\nadd 0 0 0\nadd 0 a a\nadd a 0 a\nadd 0 2 2\nadd 2 0 2\nadd a a 2\n";
        let t = parse_pea_table(text).unwrap();
        let e = FinitePea::check_axioms(&t).unwrap().into_pea().unwrap();
        assert_eq!(e.size(), 3);
        assert_eq!(e.add(1, 1), Some(2));
        assert_eq!(parse_pea_table(&t.render()).unwrap(), t);
        match parse_pea_table("pea n=3 zero=0 one=2\nadd 0 b 1\n") {
            Err(AlgebraError::Parse { line: 2, column: 7, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_pea_table("add 0 0 0"), Err(AlgebraError::Parse { line: 1, column: 1, .. })));
    }

    #[test]
    fn algebras_and_homs() {
        assert!(matches!(parse_algebra("chain(2)").unwrap(), AnyPea::Finite(e) if e.size() == 3));
        match parse_algebra("gamma(lex(Q, Z), (1, 1))").unwrap() {
            AnyPea::Interval(i) => assert!(i.has_unit_head_one()),
            _ => panic!(),
        }
        assert!(parse_algebra("gamma(lex(Q, Z), (0, 1))").is_err());
        let h = parse_hom("scale(2) : Z -> Z").unwrap();
        assert_eq!(h.rule, HomRule::Scale(2));
        assert_eq!(parse_hom(&h.to_string()).unwrap(), h);
        assert!(parse_hom("project(2) : Z^2 -> Z").is_err());
    }
}
