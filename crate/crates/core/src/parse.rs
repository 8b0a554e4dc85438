//! Text syntax for forms, lifted forms, restriction targets and Witt vectors.
//!
//! Grammar: integers, variables, `+ - * ^`, parentheses. Variables are
//! `x, y, z, w` (up to four) or `x0, x1, ...`; `a` names the generator of
//! `F_q` when `q` is not prime. In lifted forms `p` is a formal symbol with
//! `p^2 = 0`: the `p`-free part is the base, lifted coefficient-wise by
//! Teichmuller, and the coefficient of `p` is the correction, so the text
//! `F + p*(G)` denotes `tau(F) + p G`. Witt expressions instead evaluate in
//! `W_2(F_q)` itself, with `(c0; c1)` a literal in Witt coordinates.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldError, Fq};
use crate::lifting::{LiftError, LiftedForm, LiftedTarget};
use crate::poly::{default_var_names, Exponent, Form};
use crate::projective::{ProjError, RestrictionTarget};
use crate::ring::CoeffRing;
use crate::witt::{Witt2, WittElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("`p` may only appear in lifted forms")]
    UnexpectedCorrection,
    #[error("invalid target: {0}")]
    Target(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the parsed text.
    pub offset: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at byte {}", self.kind, self.offset)
    }
}

fn err<T>(kind: ParseErrorKind, offset: usize) -> Result<T, ParseError> {
    Err(ParseError { kind, offset })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v = text[start..i]
                .parse::<u64>()
                .or_else(|_| err(ParseErrorKind::Syntax("integer too large".into()), start))?;
            out.push((Tok::Int(v), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*^();".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return err(ParseErrorKind::Syntax(format!("unexpected character `{c}`")), i);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Int(u64),
    Ident(String),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Pow(Box<Node>, u32),
    Pair(Box<Node>, Box<Node>),
}

/// Expression with the byte offset of its first token.
#[derive(Clone, Debug)]
struct Node {
    expr: Expr,
    at: usize,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

const MAX_EXPONENT: u64 = 10_000;

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Self { toks: tokenize(text)?, pos: 0, end: text.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, o)| *o).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            err(ParseErrorKind::Syntax(format!("expected `{c}`")), self.offset())
        }
    }

    fn parse_all(mut self) -> Result<Node, ParseError> {
        if self.toks.is_empty() {
            return err(ParseErrorKind::Syntax("empty expression".into()), 0);
        }
        let node = self.expr()?;
        if self.pos != self.toks.len() {
            return err(ParseErrorKind::Syntax("unexpected trailing input".into()), self.offset());
        }
        Ok(node)
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let at = lhs.at;
            if self.eat('+') {
                let rhs = self.term()?;
                lhs = Node { expr: Expr::Add(Box::new(lhs), Box::new(rhs)), at };
            } else if self.eat('-') {
                let rhs = self.term()?;
                lhs = Node { expr: Expr::Sub(Box::new(lhs), Box::new(rhs)), at };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            let rhs = self.unary()?;
            let at = lhs.at;
            lhs = Node { expr: Expr::Mul(Box::new(lhs), Box::new(rhs)), at };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        let at = self.offset();
        if self.eat('-') {
            let inner = self.unary()?;
            return Ok(Node { expr: Expr::Neg(Box::new(inner)), at });
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.offset();
            match self.peek().cloned() {
                Some(Tok::Int(e)) if e <= MAX_EXPONENT => {
                    self.pos += 1;
                    let start = base.at;
                    Ok(Node { expr: Expr::Pow(Box::new(base), e as u32), at: start })
                }
                Some(Tok::Int(_)) => err(ParseErrorKind::Syntax("exponent too large".into()), at),
                _ => err(ParseErrorKind::Syntax("expected a nonnegative integer exponent".into()), at),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Node { expr: Expr::Int(v), at })
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Node { expr: Expr::Ident(name), at })
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.eat(';') {
                    let second = self.expr()?;
                    self.expect(')')?;
                    return Ok(Node { expr: Expr::Pair(Box::new(inner), Box::new(second)), at });
                }
                self.expect(')')?;
                Ok(Node { expr: inner.expr, at })
            }
            Some(_) => err(ParseErrorKind::Syntax("expected a term".into()), at),
            None => err(ParseErrorKind::Syntax("unexpected end of input".into()), at),
        }
    }
}

/// Sparse polynomial over `F_q[p]/(p^2)`, not necessarily homogeneous.
#[derive(Clone, Debug)]
struct EpsPoly {
    base: BTreeMap<Exponent, Fq>,
    corr: BTreeMap<Exponent, Fq>,
}

struct EpsCtx<'a> {
    k: &'a Field,
    names: &'a [String],
    allow_p: bool,
}

fn add_into(k: &Field, acc: &mut BTreeMap<Exponent, Fq>, e: Exponent, c: Fq) {
    let v = k.add(acc.get(&e).copied().unwrap_or(Fq::ZERO), c);
    if v.is_zero() {
        acc.remove(&e);
    } else {
        acc.insert(e, v);
    }
}

fn mul_maps(k: &Field, a: &BTreeMap<Exponent, Fq>, b: &BTreeMap<Exponent, Fq>, out: &mut BTreeMap<Exponent, Fq>) {
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_into(k, out, e, k.mul(*ca, *cb));
        }
    }
}

impl EpsCtx<'_> {
    fn constant(&self, c: Fq) -> EpsPoly {
        let mut base = BTreeMap::new();
        if !c.is_zero() {
            base.insert(vec![0; self.names.len()], c);
        }
        EpsPoly { base, corr: BTreeMap::new() }
    }

    fn add(&self, a: &EpsPoly, b: &EpsPoly, sign: bool) -> EpsPoly {
        let mut out = a.clone();
        for (e, c) in &b.base {
            add_into(self.k, &mut out.base, e.clone(), if sign { *c } else { self.k.neg(*c) });
        }
        for (e, c) in &b.corr {
            add_into(self.k, &mut out.corr, e.clone(), if sign { *c } else { self.k.neg(*c) });
        }
        out
    }

    fn mul(&self, a: &EpsPoly, b: &EpsPoly) -> EpsPoly {
        let mut base = BTreeMap::new();
        let mut corr = BTreeMap::new();
        mul_maps(self.k, &a.base, &b.base, &mut base);
        mul_maps(self.k, &a.base, &b.corr, &mut corr);
        mul_maps(self.k, &a.corr, &b.base, &mut corr);
        EpsPoly { base, corr }
    }

    fn eval(&self, node: &Node) -> Result<EpsPoly, ParseError> {
        Ok(match &node.expr {
            Expr::Int(v) => self.constant(self.k.from_int((*v % self.k.p() as u64) as i64)),
            Expr::Ident(name) => {
                if let Some(i) = var_index(self.names, name) {
                    let mut e = vec![0; self.names.len()];
                    e[i] = 1;
                    EpsPoly { base: BTreeMap::from([(e, Fq::ONE)]), corr: BTreeMap::new() }
                } else if name == "p" {
                    if !self.allow_p {
                        return err(ParseErrorKind::UnexpectedCorrection, node.at);
                    }
                    EpsPoly { base: BTreeMap::new(), corr: BTreeMap::from([(vec![0; self.names.len()], Fq::ONE)]) }
                } else if name == "a" && self.k.degree() > 1 {
                    self.constant(self.k.from_coords(&[0, 1]))
                } else {
                    return err(ParseErrorKind::UnknownVariable(name.clone()), node.at);
                }
            }
            Expr::Neg(a) => {
                let v = self.eval(a)?;
                self.add(&self.constant(Fq::ZERO), &v, false)
            }
            Expr::Add(a, b) => self.add(&self.eval(a)?, &self.eval(b)?, true),
            Expr::Sub(a, b) => self.add(&self.eval(a)?, &self.eval(b)?, false),
            Expr::Mul(a, b) => self.mul(&self.eval(a)?, &self.eval(b)?),
            Expr::Pow(a, e) => {
                let base = self.eval(a)?;
                let mut acc = self.constant(Fq::ONE);
                let mut sq = base;
                let mut e = *e;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.mul(&acc, &sq);
                    }
                    e >>= 1;
                    if e > 0 {
                        sq = self.mul(&sq, &sq);
                    }
                }
                acc
            }
            Expr::Pair(..) => {
                return err(ParseErrorKind::Syntax("Witt literals are not allowed in forms".into()), node.at)
            }
        })
    }
}

/// Position of a variable name; `x, y, z, w` and `x0, x1, ...` are both
/// accepted when `names` are the defaults.
fn var_index(names: &[String], name: &str) -> Option<usize> {
    if let Some(i) = names.iter().position(|n| n == name) {
        return Some(i);
    }
    if names == default_var_names(names.len()).as_slice() {
        let i: usize = name.strip_prefix('x')?.parse().ok()?;
        return (i < names.len()).then_some(i);
    }
    None
}

fn to_form(k: &Field, nv: usize, map: BTreeMap<Exponent, Fq>, degree: u32) -> Form<Field> {
    Form::from_terms(k, nv, degree, map).expect("homogeneous by construction")
}

fn common_degree(p: &EpsPoly) -> Result<Option<u32>, ParseErrorKind> {
    let mut degs = p.base.keys().chain(p.corr.keys()).map(|e| e.iter().sum::<u32>());
    let Some(first) = degs.next() else {
        return Ok(None);
    };
    if degs.any(|d| d != first) {
        return Err(ParseErrorKind::NotHomogeneous);
    }
    Ok(Some(first))
}

fn parse_eps(text: &str, k: &Field, names: &[String], degree: Option<u32>, allow_p: bool) -> Result<(Form<Field>, Form<Field>), ParseError> {
    let node = Parser::new(text)?.parse_all()?;
    let ctx = EpsCtx { k, names, allow_p };
    let value = ctx.eval(&node)?;
    let found = common_degree(&value).map_err(|kind| ParseError { kind, offset: 0 })?;
    let d = match (found, degree) {
        (Some(f), Some(e)) if f != e => return err(ParseErrorKind::DegreeMismatch { expected: e, found: f }, 0),
        (Some(f), _) => f,
        (None, Some(e)) => e,
        (None, None) => 0,
    };
    let nv = names.len();
    Ok((to_form(k, nv, value.base, d), to_form(k, nv, value.corr, d)))
}

/// A form over `F_q` in the given variables, optionally of a required degree.
pub fn parse_form(text: &str, k: &Field, names: &[String], degree: Option<u32>) -> Result<Form<Field>, ParseError> {
    Ok(parse_eps(text, k, names, degree, false)?.0)
}

/// A lifted form `F + p*(G)`.
pub fn parse_lifted(text: &str, k: &Field, names: &[String], degree: Option<u32>) -> Result<LiftedForm, ParseError> {
    let (base, corr) = parse_eps(text, k, names, degree, true)?;
    LiftedForm::new(base, corr).map_err(|e: LiftError| ParseError { kind: ParseErrorKind::Target(e.to_string()), offset: 0 })
}

/// Splits `curve(a, b, c)` into its top-level arguments with byte offsets.
fn curve_args(text: &str) -> Option<Vec<(usize, &str)>> {
    let trimmed_start = text.len() - text.trim_start().len();
    let t = text.trim();
    let inner_start = trimmed_start + t.find('(')? + 1;
    if !t.starts_with("curve") || !t.ends_with(')') || !t[5..].trim_start().starts_with('(') {
        return None;
    }
    let inner_end = trimmed_start + t.len() - 1;
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = inner_start;
    for (i, c) in text[inner_start..inner_end].char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &text[start..inner_start + i]));
                start = inner_start + i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &text[start..inner_end]));
    Some(out)
}

/// Strips an optional `( ... = 0)` wrapper around a hyperplane equation.
fn hyperplane_equation(text: &str) -> Result<(usize, &str), ParseError> {
    let lead = text.len() - text.trim_start().len();
    let mut t = text.trim();
    let mut offset = lead;
    if let Some(eq) = t.find('=') {
        let rhs = t[eq + 1..].trim().trim_end_matches(')').trim();
        if rhs != "0" {
            return err(ParseErrorKind::Target("right-hand side must be 0".into()), lead + eq);
        }
        t = &t[..eq];
        if let Some(rest) = t.strip_prefix('(') {
            t = rest;
            offset += 1;
        }
    }
    Ok((offset, t))
}

fn shift(e: ParseError, by: usize) -> ParseError {
    ParseError { offset: e.offset + by, ..e }
}

fn target_err(e: ProjError) -> ParseError {
    ParseError { kind: ParseErrorKind::Target(e.to_string()), offset: 0 }
}

/// `curve(f0, ..., fn)` in variables `u, v`, or a hyperplane `l` / `(l = 0)`.
pub fn parse_target(text: &str, k: &Field, n: usize) -> Result<RestrictionTarget, ParseError> {
    let uv = vec!["u".to_string(), "v".to_string()];
    if let Some(args) = curve_args(text) {
        let mut images = Vec::new();
        for (off, a) in args {
            images.push(parse_form(a, k, &uv, None).map_err(|e| shift(e, off))?);
        }
        if images.len() != n + 1 {
            return err(ParseErrorKind::Target(format!("curve needs {} coordinates", n + 1)), 0);
        }
        return RestrictionTarget::rational_curve(images).map_err(target_err);
    }
    let (off, eq) = hyperplane_equation(text)?;
    let l = parse_form(eq, k, &default_var_names(n + 1), Some(1)).map_err(|e| shift(e, off))?;
    RestrictionTarget::hyperplane(l).map_err(target_err)
}

/// Lifted analogue of [`parse_target`], e.g. `y - p*(z)`.
pub fn parse_lifted_target(text: &str, k: &Field, n: usize) -> Result<LiftedTarget, ParseError> {
    let uv = vec!["u".to_string(), "v".to_string()];
    let target = if let Some(args) = curve_args(text) {
        let mut images = Vec::new();
        for (off, a) in args {
            images.push(parse_lifted(a, k, &uv, None).map_err(|e| shift(e, off))?);
        }
        if images.len() != n + 1 {
            return err(ParseErrorKind::Target(format!("curve needs {} coordinates", n + 1)), 0);
        }
        LiftedTarget::RationalCurve(images)
    } else {
        let (off, eq) = hyperplane_equation(text)?;
        let l = parse_lifted(eq, k, &default_var_names(n + 1), Some(1)).map_err(|e| shift(e, off))?;
        LiftedTarget::Hyperplane(l)
    };
    target.reduce().map_err(target_err)?;
    Ok(target)
}

fn eval_fq(k: &Field, node: &Node) -> Result<Fq, ParseError> {
    Ok(match &node.expr {
        Expr::Int(v) => k.from_int((*v % k.p() as u64) as i64),
        Expr::Ident(name) if name == "a" && k.degree() > 1 => k.from_coords(&[0, 1]),
        Expr::Ident(name) => return err(ParseErrorKind::UnknownVariable(name.clone()), node.at),
        Expr::Neg(a) => k.neg(eval_fq(k, a)?),
        Expr::Add(a, b) => k.add(eval_fq(k, a)?, eval_fq(k, b)?),
        Expr::Sub(a, b) => k.sub(eval_fq(k, a)?, eval_fq(k, b)?),
        Expr::Mul(a, b) => k.mul(eval_fq(k, a)?, eval_fq(k, b)?),
        Expr::Pow(a, e) => k.pow(eval_fq(k, a)?, *e as u64),
        Expr::Pair(..) => return err(ParseErrorKind::Syntax("nested Witt literal".into()), node.at),
    })
}

fn eval_witt(w: &Witt2, node: &Node) -> Result<WittElement, ParseError> {
    let k = w.field();
    Ok(match &node.expr {
        Expr::Int(v) => w.from_int((*v % (k.p() as u64 * k.p() as u64)) as i64),
        Expr::Ident(name) if name == "p" => w.times_p(Fq::ONE),
        Expr::Ident(name) if name == "a" && k.degree() > 1 => w.teichmuller(k.from_coords(&[0, 1])),
        Expr::Ident(name) => return err(ParseErrorKind::UnknownVariable(name.clone()), node.at),
        Expr::Neg(a) => w.w_neg(eval_witt(w, a)?),
        Expr::Add(a, b) => w.w_add(eval_witt(w, a)?, eval_witt(w, b)?),
        Expr::Sub(a, b) => w.w_sub(eval_witt(w, a)?, eval_witt(w, b)?),
        Expr::Mul(a, b) => w.w_mul(eval_witt(w, a)?, eval_witt(w, b)?),
        Expr::Pow(a, e) => w.pow(eval_witt(w, a)?, *e as u64),
        Expr::Pair(a, b) => WittElement::new(eval_fq(k, a)?, eval_fq(k, b)?),
    })
}

/// Evaluates an expression in `W_2(F_q)`; integers map through `Z/p^2`.
pub fn parse_witt(text: &str, w: &Witt2) -> Result<WittElement, ParseError> {
    let node = Parser::new(text)?.parse_all()?;
    eval_witt(w, &node)
}

/// Parses `c0, c1, ...` (constant term first).
pub fn parse_modulus(text: &str) -> Result<Vec<u32>, ParseError> {
    let mut offset = 0;
    let mut out = Vec::new();
    for part in text.split(',') {
        let lead = part.len() - part.trim_start().len();
        match part.trim().parse::<u32>() {
            Ok(v) => out.push(v),
            Err(_) => return err(ParseErrorKind::Syntax("modulus coefficients must be integers".into()), offset + lead),
        }
        offset += part.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::monomials;
    use proptest::prelude::*;

    fn names(n: usize) -> Vec<String> {
        default_var_names(n)
    }

    #[test]
    fn conic_section() {
        let k = Field::new(3, 1, None).unwrap();
        let f = parse_form("x^2 - y*z", &k, &names(3), None).unwrap();
        assert_eq!(f.to_string(), "x^2 - y*z");
        assert_eq!(parse_form("x0^2 - x1*x2", &k, &names(3), None).unwrap(), f);
    }

    #[test]
    fn lifted_syntax() {
        let k = Field::new(3, 1, None).unwrap();
        let l = parse_lifted("x^2 + p*(-z^2)", &k, &names(3), None).unwrap();
        assert_eq!(l.base(), &parse_form("x^2", &k, &names(3), None).unwrap());
        assert_eq!(l.correction(), &parse_form("-z^2", &k, &names(3), None).unwrap());
        let e = parse_form("x + p*y", &k, &names(3), None).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedCorrection);
        assert_eq!(e.offset, 4);
    }

    #[test]
    fn errors_carry_offsets() {
        let k = Field::new(5, 1, None).unwrap();
        assert_eq!(parse_form("x^2 - y", &k, &names(3), None).unwrap_err().kind, ParseErrorKind::NotHomogeneous);
        let e = parse_form("x + q", &k, &names(3), None).unwrap_err();
        assert_eq!(e, ParseError { kind: ParseErrorKind::UnknownVariable("q".into()), offset: 4 });
        let e = parse_form("x + * y", &k, &names(3), None).unwrap_err();
        assert_eq!(e.offset, 4);
        assert_eq!(parse_form("(x + y", &k, &names(3), None).unwrap_err().offset, 6);
        assert!(matches!(
            parse_form("x^2", &k, &names(3), Some(1)).unwrap_err().kind,
            ParseErrorKind::DegreeMismatch { expected: 1, found: 2 }
        ));
    }

    #[test]
    fn extension_coefficients() {
        let k = Field::new(3, 2, None).unwrap();
        let f = parse_form("a*x + (a + 1)*y", &k, &names(2), None).unwrap();
        assert_eq!(parse_form(&f.to_string(), &k, &names(2), None).unwrap(), f);
        assert_eq!(parse_form("a^2*x", &k, &names(2), None).unwrap().to_string(), "-x");
    }

    #[test]
    fn targets() {
        let k = Field::new(3, 1, None).unwrap();
        let t = parse_target("y", &k, 2).unwrap();
        assert_eq!(t.to_string(), "(y = 0)");
        assert_eq!(parse_target(&t.to_string(), &k, 2).unwrap(), t);
        let c = parse_target("curve(u^2, u*v, v^2)", &k, 2).unwrap();
        assert_eq!(parse_target(&c.to_string(), &k, 2).unwrap(), c);
        assert!(parse_target("curve(u, u, u)", &k, 2).is_err());
        let l = parse_lifted_target("y - p*(z)", &k, 2).unwrap();
        assert_eq!(l.to_string(), "(y + p*(-z) = 0)");
        assert_eq!(parse_lifted_target(&l.to_string(), &k, 2).unwrap(), l);
        let e = parse_target("x + y = 1", &k, 2).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Target(_)));
    }

    #[test]
    fn witt_expressions() {
        let k = Field::new(3, 1, None).unwrap();
        let w = Witt2::new(k.clone());
        assert_eq!(w.iso_zp2(parse_witt("(1;0) + (1;0)", &w).unwrap()).unwrap(), 2);
        assert_eq!(parse_witt("(2;0) + (2;0)", &w).unwrap(), WittElement::new(k.from_int(1), k.from_int(2)));
        assert_eq!(w.iso_zp2(parse_witt("8 * 8", &w).unwrap()).unwrap(), 1);
        assert_eq!(w.iso_zp2(parse_witt("p", &w).unwrap()).unwrap(), 3);
        assert_eq!(parse_witt("p^2", &w).unwrap(), WittElement::ZERO);
    }

    #[test]
    fn modulus_lists() {
        assert_eq!(parse_modulus("1, 0, 1").unwrap(), vec![1, 0, 1]);
        assert_eq!(parse_modulus("1,x").unwrap_err().offset, 2);
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(cs in proptest::collection::vec(0u32..9, 10), nv in 2usize..=6) {
            let k = Field::new(3, 2, None).unwrap();
            let monos = monomials(nv, 2);
            let f = Form::from_terms(&k, nv, 2, monos.iter().cloned().zip(cs.iter().map(|&c| k.from_raw(c).unwrap()))).unwrap();
            let back = parse_form(&f.to_string(), &k, &names(nv), Some(2)).unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn lifted_round_trip(b in proptest::collection::vec(0i64..7, 6), c in proptest::collection::vec(0i64..7, 6)) {
            let k = Field::new(7, 1, None).unwrap();
            let monos = monomials(3, 2);
            let mk = |v: &[i64]| Form::from_terms(&k, 3, 2, monos.iter().cloned().zip(v.iter().map(|&x| k.from_int(x)))).unwrap();
            let l = LiftedForm::new(mk(&b), mk(&c)).unwrap();
            prop_assert_eq!(parse_lifted(&l.to_string(), &k, &names(3), Some(2)).unwrap(), l);
        }
    }
}
