//! A line-oriented proof-script language and its runner.
//!
//! ```text
//! # comment; a trailing backslash continues a line
//! def NAME = EXPR
//! subst NAME = SRC : MONOMIAL -> EXPR
//! ratsub NAME = SRC : VAR -> NUM over DEN times MULT
//! coeffs NAME = SRC : VAR1, VAR2
//! res NAME = SRC : EXPR @ VAR
//! pick NAME = SET : MONOMIAL
//! pick2 NAME1, NAME2 = SET : MONOMIAL
//! assert_divides EXPR | SRC
//! assert_zero SRC
//! assert_member EXPR in SET
//! ```
//!
//! `SRC` is an expression or the name of a set; `subst`, `ratsub` and `res`
//! act member-wise on sets. `pick` selects the unique set member with the given
//! leading monomial; `pick2` the two members sharing one (ascending set
//! order). `assert_divides` against a set requires every nonzero
//! member to be divisible. Expressions use `+`, `-` (same as `+`), `*`, `^`,
//! parentheses, the integers (read mod 2), variables, and defined names.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algo;
use super::check;
use super::poly::{Monomial, SparsePoly, VarId};
use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// Random specialization checks performed per script run.
pub const RESULTANT_CHECKS: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(bool),
    Ident(String),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Step {
    Define { name: String, expr: Expr },
    Substitute { name: String, src: Expr, monomial: Expr, replacement: Expr },
    RationalSubstitute { name: String, src: Expr, var: VarId, num: Expr, den: Expr, mult: Expr },
    Coefficients { name: String, src: Expr, v1: VarId, v2: VarId },
    Resultant { name: String, src: Expr, with: Expr, var: VarId },
    Pick { name: String, set: String, leading: Expr },
    PickPair { names: (String, String), set: String, leading: Expr },
    AssertDivides { factor: Expr, target: Expr },
    AssertZero { target: Expr },
    AssertMember { expected: Expr, set: String },
}

impl Step {
    fn op(&self) -> &'static str {
        match self {
            Step::Define { .. } => "def",
            Step::Substitute { .. } => "subst",
            Step::RationalSubstitute { .. } => "ratsub",
            Step::Coefficients { .. } => "coeffs",
            Step::Resultant { .. } => "res",
            Step::Pick { .. } => "pick",
            Step::PickPair { .. } => "pick2",
            Step::AssertDivides { .. } => "assert_divides",
            Step::AssertZero { .. } => "assert_zero",
            Step::AssertMember { .. } => "assert_member",
        }
    }

    fn target(&self) -> Option<&str> {
        match self {
            Step::Define { name, .. }
            | Step::Substitute { name, .. }
            | Step::RationalSubstitute { name, .. }
            | Step::Coefficients { name, .. }
            | Step::Resultant { name, .. }
            | Step::Pick { name, .. } => Some(name),
            Step::PickPair { names, .. } => Some(&names.0),
            _ => None,
        }
    }

    pub fn is_assertion(&self) -> bool {
        matches!(
            self,
            Step::AssertDivides { .. } | Step::AssertZero { .. } | Step::AssertMember { .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProofScript {
    pub id: String,
    /// `(source line, step)`.
    pub steps: Vec<(usize, Step)>,
}

// ---------------------------------------------------------------- parsing

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Sym(u8),
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<Tok>> {
        let mut lx = Lexer { s: src.as_bytes(), pos: 0 };
        let mut out = Vec::new();
        while let Some(t) = lx.next_tok()? {
            out.push(t);
        }
        Ok(out)
    }

    fn next_tok(&mut self) -> Result<Option<Tok>> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let Some(&c) = self.s.get(self.pos) else {
            return Ok(None);
        };
        let start = self.pos;
        if c.is_ascii_digit() {
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
            let n = text.parse().map_err(|_| Error::Parse(format!("bad integer `{text}`")))?;
            return Ok(Some(Tok::Num(n)));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < self.s.len()
                && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
            return Ok(Some(Tok::Ident(text.to_string())));
        }
        if b"+-*^()".contains(&c) {
            self.pos += 1;
            return Ok(Some(Tok::Sym(c)));
        }
        Err(Error::Parse(format!("unexpected character `{}`", c as char)))
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut terms = vec![self.product()?];
        while matches!(self.peek(), Some(Tok::Sym(b'+' | b'-'))) {
            self.bump();
            terms.push(self.product()?);
        }
        Ok(if terms.len() == 1 { terms.pop().expect("one") } else { Expr::Sum(terms) })
    }

    fn product(&mut self) -> Result<Expr> {
        let mut fs = vec![self.power()?];
        while matches!(self.peek(), Some(Tok::Sym(b'*'))) {
            self.bump();
            fs.push(self.power()?);
        }
        Ok(if fs.len() == 1 { fs.pop().expect("one") } else { Expr::Product(fs) })
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Sym(b'^'))) {
            self.bump();
            match self.bump() {
                Some(Tok::Num(n)) if n <= 255 => Ok(Expr::Pow(Box::new(base), n as u32)),
                Some(Tok::Num(_)) => Err(Error::ExponentOverflow),
                other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Expr::Const(n % 2 == 1)),
            Some(Tok::Ident(s)) => Ok(Expr::Ident(s)),
            Some(Tok::Sym(b'(')) => {
                let e = self.sum()?;
                match self.bump() {
                    Some(Tok::Sym(b')')) => Ok(e),
                    other => Err(Error::Parse(format!("expected `)`, found {other:?}"))),
                }
            }
            Some(Tok::Sym(b'-')) => self.atom(),
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: Lexer::tokens(src)?, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{src}`")));
    }
    Ok(e)
}

fn split2<'a>(s: &'a str, sep: &str) -> Result<(&'a str, &'a str)> {
    s.split_once(sep)
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| Error::Parse(format!("expected `{}` in `{s}`", sep.trim())))
}

fn ident(s: &str) -> Result<String> {
    let ok = !s.is_empty()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !s.starts_with(|c: char| c.is_ascii_digit());
    if !ok {
        return Err(Error::Parse(format!("bad name `{s}`")));
    }
    if s.parse::<VarId>().is_ok() {
        return Err(Error::Parse(format!("`{s}` is a ring variable")));
    }
    Ok(s.to_string())
}

fn parse_step(line: &str) -> Result<Step> {
    let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
    let rest = rest.trim();
    let named = |rest: &str| -> Result<(String, String)> {
        let (n, r) = split2(rest, "=")?;
        Ok((ident(n)?, r.to_string()))
    };
    match kw {
        "def" => {
            let (name, r) = named(rest)?;
            Ok(Step::Define { name, expr: parse_expr(&r)? })
        }
        "subst" => {
            let (name, r) = named(rest)?;
            let (src, rule) = split2(&r, " : ")?;
            let (mono, repl) = split2(rule, "->")?;
            Ok(Step::Substitute {
                name,
                src: parse_expr(src)?,
                monomial: parse_expr(mono)?,
                replacement: parse_expr(repl)?,
            })
        }
        "ratsub" => {
            let (name, r) = named(rest)?;
            let (src, rule) = split2(&r, " : ")?;
            let (var, frac) = split2(rule, "->")?;
            let (num, rest) = split2(frac, " over ")?;
            let (den, mult) = split2(rest, " times ")?;
            Ok(Step::RationalSubstitute {
                name,
                src: parse_expr(src)?,
                var: var.parse()?,
                num: parse_expr(num)?,
                den: parse_expr(den)?,
                mult: parse_expr(mult)?,
            })
        }
        "coeffs" => {
            let (name, r) = named(rest)?;
            let (src, vars) = split2(&r, " : ")?;
            let (v1, v2) = split2(vars, ",")?;
            Ok(Step::Coefficients { name, src: parse_expr(src)?, v1: v1.parse()?, v2: v2.parse()? })
        }
        "res" => {
            let (name, r) = named(rest)?;
            let (src, tail) = split2(&r, " : ")?;
            let (with, var) = split2(tail, "@")?;
            Ok(Step::Resultant { name, src: parse_expr(src)?, with: parse_expr(with)?, var: var.parse()? })
        }
        "pick" => {
            let (name, r) = named(rest)?;
            let (set, mono) = split2(&r, " : ")?;
            Ok(Step::Pick { name, set: ident(set)?, leading: parse_expr(mono)? })
        }
        "pick2" => {
            let (lhs, r) = split2(rest, "=")?;
            let (n1, n2) = split2(lhs, ",")?;
            let (set, mono) = split2(r, " : ")?;
            Ok(Step::PickPair { names: (ident(n1)?, ident(n2)?), set: ident(set)?, leading: parse_expr(mono)? })
        }
        "assert_divides" => {
            let (f, t) = split2(rest, "|")?;
            Ok(Step::AssertDivides { factor: parse_expr(f)?, target: parse_expr(t)? })
        }
        "assert_zero" => Ok(Step::AssertZero { target: parse_expr(rest)? }),
        "assert_member" => {
            let (e, set) = split2(rest, " in ")?;
            Ok(Step::AssertMember { expected: parse_expr(e)?, set: ident(set)? })
        }
        other => Err(Error::Parse(format!("unknown statement `{other}`"))),
    }
}

/// Parses a script; errors carry the offending line number.
pub fn parse_script(id: &str, text: &str) -> Result<ProofScript> {
    let mut steps = Vec::new();
    let mut pending = String::new();
    let mut start = 0;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim_end();
        if pending.is_empty() {
            start = n + 1;
        }
        if let Some(body) = line.strip_suffix('\\') {
            pending.push_str(body);
            pending.push(' ');
            continue;
        }
        pending.push_str(line);
        let stmt = std::mem::take(&mut pending);
        let stmt = stmt.trim();
        if stmt.is_empty() {
            continue;
        }
        let step = parse_step(stmt).map_err(|e| Error::Parse(format!("{id}:{start}: {e}")))?;
        steps.push((start, step));
    }
    Ok(ProofScript { id: id.to_string(), steps })
}

// ---------------------------------------------------------------- running

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Poly(SparsePoly),
    Set(BTreeSet<SparsePoly>),
}

impl Value {
    fn size(&self) -> usize {
        match self {
            Value::Poly(p) => p.len(),
            Value::Set(s) => s.len(),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepStatus {
    /// A non-assertion step that produced its value.
    Ok,
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub line: usize,
    pub op: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    pub status: StepStatus,
    /// Term count of a polynomial result, member count of a set result.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScriptReport {
    pub script: String,
    pub passed: bool,
    pub assertions: usize,
    pub assertions_passed: usize,
    pub resultant_checks: usize,
    pub resultant_check_failures: usize,
    /// Results of `i^2 -> ...` rewrites whose `i`-degree was verified to be at most 1.
    pub normal_form_checks: usize,
    pub normal_form_failures: usize,
    pub steps: Vec<StepReport>,
}

struct Sample {
    p: SparsePoly,
    q: SparsePoly,
    var: VarId,
    res: SparsePoly,
}

/// Execution state; kept after the run so callers can inspect values.
#[derive(Default)]
pub struct Runner {
    env: BTreeMap<String, Value>,
    samples: Vec<Sample>,
    normal_form_checks: usize,
    normal_form_failures: usize,
}

fn offending(p: &SparsePoly) -> String {
    const LIMIT: usize = 400;
    let s = p.to_string();
    if s.len() <= LIMIT {
        s
    } else {
        format!("{}... ({} terms)", &s[..LIMIT], p.len())
    }
}

impl Runner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&self, name: &str) -> Option<&Value> {
        self.env.get(name)
    }

    pub fn poly(&self, name: &str) -> Option<&SparsePoly> {
        match self.env.get(name) {
            Some(Value::Poly(p)) => Some(p),
            _ => None,
        }
    }

    pub fn set(&self, name: &str) -> Option<&BTreeSet<SparsePoly>> {
        match self.env.get(name) {
            Some(Value::Set(s)) => Some(s),
            _ => None,
        }
    }

    pub fn eval(&self, e: &Expr) -> Result<SparsePoly> {
        Ok(match e {
            Expr::Const(b) => SparsePoly::constant(*b),
            Expr::Ident(s) => match self.env.get(s) {
                Some(Value::Poly(p)) => p.clone(),
                Some(Value::Set(_)) => {
                    return Err(Error::Parse(format!("set `{s}` used in an expression")))
                }
                None => SparsePoly::var(s.parse().map_err(|_| Error::UndefinedName(s.clone()))?),
            },
            Expr::Sum(ts) => {
                let mut acc = SparsePoly::zero();
                for t in ts {
                    acc = acc.add(&self.eval(t)?);
                }
                acc
            }
            Expr::Product(fs) => {
                let mut acc = SparsePoly::one();
                for f in fs {
                    acc = acc.mul(&self.eval(f)?);
                }
                acc
            }
            Expr::Pow(b, n) => self.eval(b)?.pow(*n),
        })
    }

    fn eval_monomial(&self, e: &Expr) -> Result<Monomial> {
        let p = self.eval(e)?;
        match p.terms() {
            [m] => Ok(*m),
            _ => Err(Error::Parse(format!("`{p}` is not a monomial"))),
        }
    }

    fn source(&self, e: &Expr) -> Result<Value> {
        if let Expr::Ident(s) = e {
            if let Some(v @ Value::Set(_)) = self.env.get(s) {
                return Ok(v.clone());
            }
        }
        self.eval(e).map(Value::Poly)
    }

    fn map(&mut self, src: Value, mut f: impl FnMut(&mut Self, &SparsePoly) -> Result<SparsePoly>) -> Result<Value> {
        Ok(match src {
            Value::Poly(p) => Value::Poly(f(self, &p)?),
            Value::Set(s) => {
                let mut out = BTreeSet::new();
                for p in &s {
                    out.insert(f(self, p)?);
                }
                Value::Set(out)
            }
        })
    }

    fn check_normal_form(&mut self, v: &Value) {
        let polys: Vec<&SparsePoly> = match v {
            Value::Poly(p) => vec![p],
            Value::Set(s) => s.iter().collect(),
        };
        for p in polys {
            self.normal_form_checks += 1;
            if p.degree_in(VarId::I).unwrap_or(0) > 1 {
                self.normal_form_failures += 1;
            }
        }
    }

    /// Runs one step; `Ok(Some(bool))` for assertions.
    fn exec(&mut self, step: &Step) -> Result<(Option<bool>, Option<Value>, Option<String>)> {
        match step {
            Step::Define { name, expr } => {
                let v = Value::Poly(self.eval(expr)?);
                self.env.insert(name.clone(), v.clone());
                Ok((None, Some(v), None))
            }
            Step::Substitute { name, src, monomial, replacement } => {
                let m = self.eval_monomial(monomial)?;
                let r = self.eval(replacement)?;
                let src = self.source(src)?;
                let v = self.map(src, |_, p| algo::substitution(p, &m, &r))?;
                if m == Monomial::var(VarId::I, 2) {
                    self.check_normal_form(&v);
                }
                self.env.insert(name.clone(), v.clone());
                Ok((None, Some(v), None))
            }
            Step::RationalSubstitute { name, src, var, num, den, mult } => {
                let (num, den, mult) = (self.eval(num)?, self.eval(den)?, self.eval(mult)?);
                let src = self.source(src)?;
                let v = self.map(src, |_, p| algo::rational_substitution(p, *var, &num, &den, &mult))?;
                self.env.insert(name.clone(), v.clone());
                Ok((None, Some(v), None))
            }
            Step::Coefficients { name, src, v1, v2 } => {
                let p = self.eval(src)?;
                let v = Value::Set(algo::find_coefficients2(&p, *v1, *v2));
                self.env.insert(name.clone(), v.clone());
                Ok((None, Some(v), None))
            }
            Step::Resultant { name, src, with, var } => {
                let q = self.eval(with)?;
                let src = self.source(src)?;
                let v = self.map(src, |me, p| {
                    let r = algo::resultant(p, &q, *var)?;
                    me.samples.push(Sample { p: p.clone(), q: q.clone(), var: *var, res: r.clone() });
                    Ok(r)
                })?;
                self.env.insert(name.clone(), v.clone());
                Ok((None, Some(v), None))
            }
            Step::Pick { name, set, leading } => {
                let m = self.eval_monomial(leading)?;
                let s = self.set(set).ok_or_else(|| Error::UndefinedName(set.clone()))?;
                let hits: Vec<&SparsePoly> = s.iter().filter(|p| p.leading() == Some(&m)).collect();
                match hits.as_slice() {
                    [p] => {
                        let v = Value::Poly((*p).clone());
                        self.env.insert(name.clone(), v.clone());
                        Ok((None, Some(v), None))
                    }
                    _ => Err(Error::Parse(format!(
                        "{} members of `{set}` have leading monomial {m}",
                        hits.len()
                    ))),
                }
            }
            Step::PickPair { names, set, leading } => {
                let m = self.eval_monomial(leading)?;
                let s = self.set(set).ok_or_else(|| Error::UndefinedName(set.clone()))?;
                let hits: Vec<SparsePoly> =
                    s.iter().filter(|p| p.leading() == Some(&m)).cloned().collect();
                match <[SparsePoly; 2]>::try_from(hits) {
                    Ok([p1, p2]) => {
                        self.env.insert(names.0.clone(), Value::Poly(p1.clone()));
                        self.env.insert(names.1.clone(), Value::Poly(p2));
                        Ok((None, Some(Value::Poly(p1)), None))
                    }
                    Err(h) => Err(Error::Parse(format!(
                        "{} members of `{set}` have leading monomial {m}, expected 2",
                        h.len()
                    ))),
                }
            }
            Step::AssertDivides { factor, target } => {
                let f = self.eval(factor)?;
                match self.source(target)? {
                    Value::Poly(g) => {
                        let ok = algo::divides(&f, &g)?;
                        Ok((Some(ok), None, (!ok).then(|| offending(&g))))
                    }
                    Value::Set(s) => {
                        for g in s.iter().filter(|g| !g.is_zero()) {
                            if !algo::divides(&f, g)? {
                                return Ok((Some(false), None, Some(offending(g))));
                            }
                        }
                        Ok((Some(true), None, None))
                    }
                }
            }
            Step::AssertZero { target } => match self.source(target)? {
                Value::Poly(p) => Ok((Some(p.is_zero()), None, (!p.is_zero()).then(|| offending(&p)))),
                Value::Set(s) => {
                    let bad = s.iter().find(|p| !p.is_zero());
                    Ok((Some(bad.is_none()), None, bad.map(offending)))
                }
            },
            Step::AssertMember { expected, set } => {
                let e = self.eval(expected)?;
                let s = self.set(set).ok_or_else(|| Error::UndefinedName(set.clone()))?;
                let ok = s.contains(&e);
                Ok((Some(ok), None, (!ok).then(|| offending(&e))))
            }
        }
    }

    /// Runs every step; failures are recorded and execution continues.
    pub fn run(&mut self, script: &ProofScript, seed: u64) -> ScriptReport {
        let mut steps = Vec::with_capacity(script.steps.len());
        let (mut assertions, mut assertions_passed, mut errors) = (0, 0, 0);
        for (line, step) in &script.steps {
            let (status, size, detail) = match self.exec(step) {
                Ok((Some(true), _, _)) => (StepStatus::Pass, None, None),
                Ok((Some(false), _, d)) => (StepStatus::Fail, None, d),
                Ok((None, v, d)) => (StepStatus::Ok, v.map(|v| v.size()), d),
                Err(e) => {
                    errors += 1;
                    (StepStatus::Error, None, Some(e.to_string()))
                }
            };
            if step.is_assertion() {
                assertions += 1;
                if status == StepStatus::Pass {
                    assertions_passed += 1;
                }
            }
            steps.push(StepReport {
                line: *line,
                op: step.op(),
                target: step.target().map(str::to_string),
                status,
                size,
                detail,
            });
        }
        let (checks, failures) = self.cross_check(seed);
        ScriptReport {
            script: script.id.clone(),
            passed: errors == 0
                && assertions_passed == assertions
                && failures == 0
                && self.normal_form_failures == 0,
            assertions,
            assertions_passed,
            resultant_checks: checks,
            resultant_check_failures: failures,
            normal_form_checks: self.normal_form_checks,
            normal_form_failures: self.normal_form_failures,
            steps,
        }
    }

    /// Spreads [`RESULTANT_CHECKS`] random specializations over the recorded
    /// resultant computations.
    fn cross_check(&self, seed: u64) -> (usize, usize) {
        if self.samples.is_empty() {
            return (0, 0);
        }
        let spec = FieldSpec::new(check::CHECK_FIELD_DEGREE).expect("supported degree");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.samples.len();
        let mut failures = 0;
        for c in 0..RESULTANT_CHECKS {
            let s = &self.samples[c * n / RESULTANT_CHECKS % n];
            let pt = check::random_point(&spec, &mut rng);
            if !check::resultant_agrees(&spec, &s.p, &s.q, s.var, &s.res, &pt) {
                failures += 1;
            }
        }
        (RESULTANT_CHECKS, failures)
    }
}

/// Parses and runs `text` in a fresh environment.
pub fn run_script(id: &str, text: &str, seed: u64) -> Result<(ScriptReport, Runner)> {
    let script = parse_script(id, text)?;
    let mut runner = Runner::new();
    let report = runner.run(&script, seed);
    Ok((report, runner))
}
