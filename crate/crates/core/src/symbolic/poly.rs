//! Sparse polynomials over GF(2) in a fixed 23-variable ring.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const NVARS: usize = 23;

/// The ring's variables, in the order used for monomial comparison
/// (`x > y > C > ... > bq2`).
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    X,
    Y,
    C,
    D,
    E,
    F,
    I,
    J,
    /// Written `ma` in scripts and output: the linear coefficient of a
    /// cubic minimal polynomial `a^3 = ma*a + g`.
    Ma,
    K,
    A,
    B,
    Cc,
    Dd,
    Ee,
    Ff,
    G,
    T4,
    T1,
    Aq,
    Bq,
    Aq2,
    Bq2,
}

const NAMES: [&str; NVARS] = [
    "x", "y", "C", "D", "E", "F", "i", "j", "ma", "k", "a", "b", "c", "d", "e", "f", "g", "t4",
    "t1", "aq", "bq", "aq2", "bq2",
];

impl VarId {
    pub const ALL: [VarId; NVARS] = [
        VarId::X,
        VarId::Y,
        VarId::C,
        VarId::D,
        VarId::E,
        VarId::F,
        VarId::I,
        VarId::J,
        VarId::Ma,
        VarId::K,
        VarId::A,
        VarId::B,
        VarId::Cc,
        VarId::Dd,
        VarId::Ee,
        VarId::Ff,
        VarId::G,
        VarId::T4,
        VarId::T1,
        VarId::Aq,
        VarId::Bq,
        VarId::Aq2,
        VarId::Bq2,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        NAMES[self.index()]
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VarId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NAMES
            .iter()
            .position(|&n| n == s)
            .map(|p| VarId::ALL[p])
            .ok_or_else(|| Error::UndefinedName(s.to_string()))
    }
}

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then exponents compared variable by variable.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u16,
    exps: [u8; NVARS],
}

impl Default for Monomial {
    fn default() -> Self {
        Self::ONE
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial { deg: 0, exps: [0; NVARS] };

    pub fn var(v: VarId, e: u8) -> Self {
        let mut m = Self::ONE;
        m.exps[v.index()] = e;
        m.deg = e as u16;
        m
    }

    pub fn from_exponents(exps: [u8; NVARS]) -> Self {
        let deg = exps.iter().map(|&e| e as u16).sum();
        Monomial { deg, exps }
    }

    pub fn exp(&self, v: VarId) -> u8 {
        self.exps[v.index()]
    }

    pub fn exponents(&self) -> &[u8; NVARS] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = [0u8; NVARS];
        for (k, e) in exps.iter_mut().enumerate() {
            *e = self.exps[k].checked_add(other.exps[k])?;
        }
        Some(Monomial { deg: self.deg + other.deg, exps })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent exceeds 255")
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if exact.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = [0u8; NVARS];
        for (k, e) in exps.iter_mut().enumerate() {
            *e = other.exps[k].checked_sub(self.exps[k])?;
        }
        Some(Monomial { deg: other.deg - self.deg, exps })
    }

    pub fn with_exp(&self, v: VarId, e: u8) -> Monomial {
        let mut exps = self.exps;
        exps[v.index()] = e;
        Monomial::from_exponents(exps)
    }

    pub fn vars(&self) -> impl Iterator<Item = (VarId, u8)> + '_ {
        VarId::ALL.iter().filter_map(move |&v| {
            let e = self.exp(v);
            (e > 0).then_some((v, e))
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.vars() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polynomial over GF(2): a set of monomials, kept sorted in descending
/// graded-lex order. Addition is symmetric difference.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparsePoly {
    terms: Vec<Monomial>,
}

impl PartialOrd for SparsePoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compares leading monomials first, then the remaining terms.
impl Ord for SparsePoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.cmp(&other.terms)
    }
}

/// Sorts descending and cancels pairs.
fn normalize(mut v: Vec<Monomial>) -> Vec<Monomial> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    let mut out: Vec<Monomial> = Vec::with_capacity(v.len());
    for m in v {
        if out.last() == Some(&m) {
            out.pop();
        } else {
            out.push(m);
        }
    }
    out
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_monomial(Monomial::ONE)
    }

    pub fn constant(bit: bool) -> Self {
        if bit {
            Self::one()
        } else {
            Self::zero()
        }
    }

    pub fn var(v: VarId) -> Self {
        Self::from_monomial(Monomial::var(v, 1))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        SparsePoly { terms: vec![m] }
    }

    /// Repeated monomials cancel in pairs.
    pub fn from_monomials(ms: Vec<Monomial>) -> Self {
        SparsePoly { terms: normalize(ms) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&Monomial> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|m| m.degree()).max()
    }

    /// Degree in `v`; `None` for the zero polynomial.
    pub fn degree_in(&self, v: VarId) -> Option<u8> {
        self.terms.iter().map(|m| m.exp(v)).max()
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.iter().any(|m| m.exp(v) > 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        // merge of two descending lists
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        SparsePoly { terms: out }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        // multiplication by a monomial preserves the order
        SparsePoly { terms: self.terms.iter().map(|t| t.mul(m)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                v.push(a.mul(b));
            }
        }
        Self::from_monomials(v)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Frobenius: squares every monomial; cross terms vanish in characteristic 2.
    pub fn square(&self) -> Self {
        SparsePoly { terms: self.terms.iter().map(|t| t.mul(t)).collect() }
    }

    /// Coefficients with respect to `v`: entry `j` is the coefficient of `v^j`.
    pub fn coefficients_in(&self, v: VarId) -> Vec<SparsePoly> {
        let Some(d) = self.degree_in(v) else {
            return Vec::new();
        };
        let mut buckets: Vec<Vec<Monomial>> = vec![Vec::new(); d as usize + 1];
        for t in &self.terms {
            buckets[t.exp(v) as usize].push(t.with_exp(v, 0));
        }
        buckets.into_iter().map(SparsePoly::from_monomials).collect()
    }

    /// `sum_j coeffs[j] * v^j`.
    pub fn from_coefficients(coeffs: &[SparsePoly], v: VarId) -> Self {
        let mut ms = Vec::new();
        for (j, c) in coeffs.iter().enumerate() {
            let vj = Monomial::var(v, j as u8);
            ms.extend(c.terms.iter().map(|t| t.mul(&vj)));
        }
        Self::from_monomials(ms)
    }

    /// Replaces `v` by the polynomial `r` everywhere.
    pub fn compose(&self, v: VarId, r: &SparsePoly) -> Self {
        let coeffs = self.coefficients_in(v);
        // Horner
        let mut acc = Self::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(r).add(c);
        }
        acc
    }

    /// Evaluates under an assignment of every variable, with field operations
    /// supplied by the caller.
    pub fn eval_with<T: Copy>(
        &self,
        values: &[T; NVARS],
        zero: T,
        one: T,
        add: impl Fn(T, T) -> T,
        mul: impl Fn(T, T) -> T,
    ) -> T {
        let mut acc = zero;
        for t in &self.terms {
            let mut p = one;
            for (k, &e) in t.exps.iter().enumerate() {
                for _ in 0..e {
                    p = mul(p, values[k]);
                }
            }
            acc = add(acc, p);
        }
        acc
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, t) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for SparsePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
