//! Binary fields GF(2^m) and the quadratic tower GF(q^2) = GF(q)[i]/(i^2 + i + k).
//!
//! Base elements are bit vectors in a polynomial basis (bit `j` is the
//! coefficient of `X^j`). Multiplication goes through log/antilog tables built
//! once per [`FieldSpec`]; the carry-less routine [`clmul_reduce`] is kept as an
//! independent path and is what the tables are built from.
//!
//! Extension elements are pairs `a + b*i` with `i^2 = i + k`, `Tr(k) = 1`.
//! Since `i^q = i + 1`, the same `i` plays the role of the element `e` used by
//! the change of coordinates `x -> (x + e)/(x + e + 1)`.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

/// Low-weight irreducible polynomials for m = 1..=16 (bit j = coefficient of X^j).
pub const DEFAULT_MODULI: [u32; 16] = [
    0x3, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x211, 0x409, 0x805, 0x1009, 0x201b, 0x4021,
    0x8003, 0x1002b,
];

pub const MAX_DEGREE: u32 = 16;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaseElem(pub u32);

impl BaseElem {
    pub const ZERO: BaseElem = BaseElem(0);
    pub const ONE: BaseElem = BaseElem(1);

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for BaseElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{:x}", self.0)
    }
}

// Addition is XOR in characteristic 2 and needs no field context.
impl std::ops::Add for BaseElem {
    type Output = BaseElem;
    fn add(self, rhs: BaseElem) -> BaseElem {
        BaseElem(self.0 ^ rhs.0)
    }
}

impl std::ops::Add for ExtElem {
    type Output = ExtElem;
    fn add(self, rhs: ExtElem) -> ExtElem {
        ExtElem { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl serde::Serialize for BaseElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `a + b*i`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtElem {
    pub a: BaseElem,
    pub b: BaseElem,
}

impl ExtElem {
    pub const ZERO: ExtElem = ExtElem { a: BaseElem::ZERO, b: BaseElem::ZERO };
    pub const ONE: ExtElem = ExtElem { a: BaseElem::ONE, b: BaseElem::ZERO };
    /// The tower generator `i`.
    pub const I: ExtElem = ExtElem { a: BaseElem::ZERO, b: BaseElem::ONE };

    pub fn new(a: BaseElem, b: BaseElem) -> Self {
        ExtElem { a, b }
    }

    pub fn from_base(a: BaseElem) -> Self {
        ExtElem { a, b: BaseElem::ZERO }
    }

    pub fn is_zero(self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_base(self) -> bool {
        self.b.is_zero()
    }
}

impl From<BaseElem> for ExtElem {
    fn from(a: BaseElem) -> Self {
        ExtElem::from_base(a)
    }
}

impl serde::Serialize for ExtElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{:x}+0x{:x}*i", self.a.0, self.b.0)
    }
}

/// Carry-less product of two residues followed by reduction modulo `modulus`
/// (a degree-`m` polynomial).
pub fn clmul_reduce(x: u32, y: u32, modulus: u32, m: u32) -> u32 {
    let mut acc: u64 = 0;
    let (x, mut y) = (x as u64, y as u64);
    let mut shift = 0;
    while y != 0 {
        if y & 1 == 1 {
            acc ^= x << shift;
        }
        y >>= 1;
        shift += 1;
    }
    poly_mod(acc, modulus as u64, m) as u32
}

fn degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u64, modulus: u64, m: u32) -> u64 {
    let m = m as i32;
    while a != 0 && degree(a) >= m {
        a ^= modulus << (degree(a) - m);
    }
    a
}

/// Irreducibility over GF(2) by trial division against every polynomial of
/// degree 1..=deg/2.
pub fn is_irreducible_gf2(p: u64) -> bool {
    let d = degree(p);
    if d < 1 {
        return false;
    }
    for dd in 1..=(d / 2) {
        for low in 0u64..(1u64 << dd) {
            let divisor = (1u64 << dd) | low;
            if poly_mod(p, divisor, dd as u32) == 0 {
                return false;
            }
        }
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The tower GF(2^m) ⊂ GF(2^2m) together with its arithmetic tables.
///
/// Values are immutable after construction and can be shared freely between
/// threads.
#[derive(Clone)]
pub struct FieldSpec {
    m: u32,
    modulus: u32,
    k: BaseElem,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    mu_gen: ExtElem,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("m", &self.m)
            .field("modulus", &format_args!("0x{:x}", self.modulus))
            .field("k", &self.k)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.modulus == other.modulus && self.k == other.k
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// Default tower for degree `m`: tabulated modulus, `k = 1` for odd `m`,
    /// otherwise the smallest element of trace 1.
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(m));
        }
        let modulus = DEFAULT_MODULI[(m - 1) as usize];
        let k = if m % 2 == 1 {
            1
        } else {
            (1..(1u32 << m))
                .find(|&c| trace_slow(c, modulus, m) == 1)
                .expect("trace-1 elements exist")
        };
        Self::with_params(m, modulus, k)
    }

    pub fn with_params(m: u32, modulus: u32, k: u32) -> Result<Self> {
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(m));
        }
        if degree(modulus as u64) != m as i32 {
            return Err(Error::InvalidModulus {
                m,
                modulus: modulus as u64,
                reason: "degree mismatch".into(),
            });
        }
        if !is_irreducible_gf2(modulus as u64) {
            return Err(Error::InvalidModulus {
                m,
                modulus: modulus as u64,
                reason: "reducible over GF(2)".into(),
            });
        }
        let q = 1u32 << m;
        if k >= q || trace_slow(k, modulus, m) != 1 {
            return Err(Error::InvalidTowerConstant(k));
        }
        let (exp, log) = build_tables(m, modulus);
        let mut spec = FieldSpec {
            m,
            modulus,
            k: BaseElem(k),
            q,
            exp,
            log,
            mu_gen: ExtElem::ONE,
        };
        let w = spec.primitive_ext();
        spec.mu_gen = spec.ext_pow(w, (q - 1) as u64);
        Ok(spec)
    }

    /// Looks `m` up in a modulus override file, falling back to the defaults.
    pub fn from_override_file(m: u32, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let table = parse_override_table(&text)?;
        match table.iter().find(|o| o.m == m) {
            Some(o) => Self::with_params(o.m, o.modulus, o.k),
            None => Self::new(m),
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    pub fn q2(&self) -> u64 {
        (self.q as u64) * (self.q as u64)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn k(&self) -> BaseElem {
        self.k
    }

    // ---- base field -------------------------------------------------------

    pub fn base(&self, bits: u32) -> BaseElem {
        debug_assert!(bits < self.q);
        BaseElem(bits)
    }

    pub fn base_elements(&self) -> impl Iterator<Item = BaseElem> {
        (0..self.q).map(BaseElem)
    }

    #[inline]
    pub fn add(&self, x: BaseElem, y: BaseElem) -> BaseElem {
        BaseElem(x.0 ^ y.0)
    }

    #[inline]
    pub fn mul(&self, x: BaseElem, y: BaseElem) -> BaseElem {
        if x.0 == 0 || y.0 == 0 {
            return BaseElem::ZERO;
        }
        BaseElem(self.exp[(self.log[x.0 as usize] + self.log[y.0 as usize]) as usize])
    }

    /// Reference multiplication that bypasses the tables.
    pub fn mul_clmul(&self, x: BaseElem, y: BaseElem) -> BaseElem {
        BaseElem(clmul_reduce(x.0, y.0, self.modulus, self.m))
    }

    #[inline]
    pub fn square(&self, x: BaseElem) -> BaseElem {
        self.mul(x, x)
    }

    pub fn inv(&self, x: BaseElem) -> Result<BaseElem> {
        if x.is_zero() {
            return Err(Error::InversionOfZero);
        }
        let order = self.q - 1;
        let l = self.log[x.0 as usize];
        Ok(BaseElem(self.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, x: BaseElem, y: BaseElem) -> Result<BaseElem> {
        if y.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: BaseElem, e: u64) -> BaseElem {
        if e == 0 {
            return BaseElem::ONE;
        }
        if x.is_zero() {
            return BaseElem::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[x.0 as usize] as u64;
        BaseElem(self.exp[((l * (e % order)) % order) as usize])
    }

    /// The unique square root, `x^(q/2)`.
    pub fn sqrt(&self, x: BaseElem) -> BaseElem {
        self.pow(x, (self.q / 2).max(1) as u64)
    }

    /// Absolute trace to GF(2), returned as 0 or 1.
    pub fn trace(&self, x: BaseElem) -> u32 {
        let mut acc = BaseElem::ZERO;
        let mut t = x;
        for _ in 0..self.m {
            acc = self.add(acc, t);
            t = self.square(t);
        }
        debug_assert!(acc.0 <= 1);
        acc.0
    }

    // ---- quadratic extension ---------------------------------------------

    pub fn ext(&self, a: u32, b: u32) -> ExtElem {
        ExtElem::new(self.base(a), self.base(b))
    }

    /// Dense index `a | b << m`, used for hit arrays.
    #[inline]
    pub fn ext_index(&self, x: ExtElem) -> usize {
        (x.a.0 as usize) | ((x.b.0 as usize) << self.m)
    }

    pub fn ext_from_index(&self, idx: usize) -> ExtElem {
        let mask = (self.q - 1) as usize;
        ExtElem::new(BaseElem((idx & mask) as u32), BaseElem((idx >> self.m) as u32))
    }

    pub fn ext_elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        (0..self.q2() as usize).map(move |i| self.ext_from_index(i))
    }

    #[inline]
    pub fn ext_add(&self, x: ExtElem, y: ExtElem) -> ExtElem {
        ExtElem::new(self.add(x.a, y.a), self.add(x.b, y.b))
    }

    /// `(a+bi)(c+di) = (ac + bd k) + (ad + bc + bd) i`.
    #[inline]
    pub fn ext_mul(&self, x: ExtElem, y: ExtElem) -> ExtElem {
        let ac = self.mul(x.a, y.a);
        let bd = self.mul(x.b, y.b);
        let cross = self.mul(self.add(x.a, x.b), self.add(y.a, y.b));
        let bdk = if self.k == BaseElem::ONE { bd } else { self.mul(bd, self.k) };
        ExtElem::new(self.add(ac, bdk), self.add(cross, ac))
    }

    pub fn ext_scale(&self, c: BaseElem, x: ExtElem) -> ExtElem {
        ExtElem::new(self.mul(c, x.a), self.mul(c, x.b))
    }

    #[inline]
    pub fn ext_square(&self, x: ExtElem) -> ExtElem {
        self.ext_mul(x, x)
    }

    /// `x^q = (a + b) + b i`.
    #[inline]
    pub fn frobenius(&self, x: ExtElem) -> ExtElem {
        ExtElem::new(self.add(x.a, x.b), x.b)
    }

    /// `x^(q+1) = a^2 + ab + b^2 k`.
    #[inline]
    pub fn norm(&self, x: ExtElem) -> BaseElem {
        let a2 = self.square(x.a);
        let ab = self.mul(x.a, x.b);
        let b2k = self.mul(self.square(x.b), self.k);
        self.add(self.add(a2, ab), b2k)
    }

    pub fn ext_inv(&self, x: ExtElem) -> Result<ExtElem> {
        let n = self.norm(x);
        if n.is_zero() {
            return Err(Error::InversionOfZero);
        }
        Ok(self.ext_scale(self.inv(n)?, self.frobenius(x)))
    }

    pub fn ext_div(&self, x: ExtElem, y: ExtElem) -> Result<ExtElem> {
        if y.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.ext_mul(x, self.ext_inv(y)?))
    }

    pub fn ext_pow(&self, x: ExtElem, e: u64) -> ExtElem {
        if e == 0 {
            return ExtElem::ONE;
        }
        if x.is_zero() {
            return ExtElem::ZERO;
        }
        let mut e = e % (self.q2() - 1);
        let mut base = x;
        let mut acc = ExtElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.ext_mul(acc, base);
            }
            base = self.ext_square(base);
            e >>= 1;
        }
        acc
    }

    pub fn ext_sqrt(&self, x: ExtElem) -> ExtElem {
        self.ext_pow(x, self.q2() / 2)
    }

    pub fn in_mu(&self, x: ExtElem) -> bool {
        self.norm(x) == BaseElem::ONE
    }

    pub fn ext_order(&self, x: ExtElem) -> u64 {
        assert!(!x.is_zero());
        let group = self.q2() - 1;
        let mut order = group;
        for p in prime_factors(group) {
            while order % p == 0 && self.ext_pow(x, order / p) == ExtElem::ONE {
                order /= p;
            }
        }
        order
    }

    fn primitive_ext(&self) -> ExtElem {
        let group = self.q2() - 1;
        let factors = prime_factors(group);
        (1..self.q2() as usize)
            .map(|i| self.ext_from_index(i))
            .find(|&w| factors.iter().all(|&p| self.ext_pow(w, group / p) != ExtElem::ONE))
            .expect("GF(q^2)* is cyclic")
    }

    /// Generator of the norm-1 subgroup, `w^(q-1)` for a primitive `w`.
    pub fn mu_generator(&self) -> ExtElem {
        self.mu_gen
    }

    /// The q+1 elements of norm 1, in generator-power order.
    pub fn mu_elements(&self) -> Vec<ExtElem> {
        let g = self.mu_gen;
        let mut out = Vec::with_capacity(self.q as usize + 1);
        let mut x = ExtElem::ONE;
        for _ in 0..=self.q {
            out.push(x);
            x = self.ext_mul(x, g);
        }
        debug_assert_eq!(x, ExtElem::ONE);
        out
    }

    pub fn is_cube_in_mu(&self, a: ExtElem) -> Result<bool> {
        if !self.in_mu(a) {
            return Err(Error::NotInMu);
        }
        let order = self.q as u64 + 1;
        if order % 3 != 0 {
            return Ok(true);
        }
        Ok(self.ext_pow(a, order / 3) == ExtElem::ONE)
    }

    /// Cube roots of `a` lying in the norm-1 subgroup, sorted by element order.
    ///
    /// For odd `m` every cube root of a norm-1 element has norm 1 (the norm is
    /// a cube root of unity in GF(q), and 3 does not divide q-1), so the result
    /// holds every root in GF(q^2): three of them or none. For even `m` exactly
    /// one root lies in the subgroup.
    pub fn cube_roots_in_mu(&self, a: ExtElem) -> Result<Vec<ExtElem>> {
        if !self.in_mu(a) {
            return Err(Error::NotInMu);
        }
        let mut roots: Vec<ExtElem> = self
            .mu_elements()
            .into_iter()
            .filter(|&x| self.ext_mul(self.ext_square(x), x) == a)
            .collect();
        roots.sort();
        Ok(roots)
    }

    /// Roots of `x^3 + x + c` in GF(q), by exhaustive evaluation.
    pub fn solve_cubic_trinomial(&self, c: BaseElem) -> Vec<BaseElem> {
        self.base_elements()
            .filter(|&x| {
                let x3 = self.mul(self.square(x), x);
                self.add(self.add(x3, x), c).is_zero()
            })
            .collect()
    }

    // ---- text encoding ----------------------------------------------------

    pub fn parse_base(&self, s: &str) -> Result<BaseElem> {
        let v = parse_hex(s)?;
        if v >= self.q as u64 {
            return Err(Error::Parse(format!("{s} does not fit in GF(2^{})", self.m)));
        }
        Ok(BaseElem(v as u32))
    }

    /// Accepts `A+B*i`, `A`, `B*i` or `i`, with `A`, `B` in hex.
    pub fn parse_ext(&self, s: &str) -> Result<ExtElem> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut a = BaseElem::ZERO;
        let mut b = BaseElem::ZERO;
        for part in s.split('+') {
            if part.is_empty() {
                return Err(Error::Parse(format!("malformed element `{s}`")));
            }
            if part == "i" {
                b = self.add(b, BaseElem::ONE);
            } else if let Some(coef) = part.strip_suffix("*i") {
                b = self.add(b, self.parse_base(coef)?);
            } else {
                a = self.add(a, self.parse_base(part)?);
            }
        }
        Ok(ExtElem::new(a, b))
    }
}

fn trace_slow(x: u32, modulus: u32, m: u32) -> u32 {
    let mut acc = 0;
    let mut t = x;
    for _ in 0..m {
        acc ^= t;
        t = clmul_reduce(t, t, modulus, m);
    }
    acc
}

fn build_tables(m: u32, modulus: u32) -> (Vec<u32>, Vec<u32>) {
    let q = 1u32 << m;
    let order = (q - 1) as u64;
    let factors = prime_factors(order);
    let pow_slow = |x: u32, mut e: u64| {
        let mut acc = 1u32;
        let mut b = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = clmul_reduce(acc, b, modulus, m);
            }
            b = clmul_reduce(b, b, modulus, m);
            e >>= 1;
        }
        acc
    };
    let generator = (1..q)
        .find(|&g| order == 1 || factors.iter().all(|&p| pow_slow(g, order / p) != 1))
        .expect("GF(q)* is cyclic");
    let mut exp = vec![0u32; 2 * order as usize];
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for e in 0..order as usize {
        exp[e] = x;
        exp[e + order as usize] = x;
        log[x as usize] = e as u32;
        x = clmul_reduce(x, generator, modulus, m);
    }
    (exp, log)
}

pub fn parse_hex(s: &str) -> Result<u64> {
    let t = s.trim();
    let digits = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    u64::from_str_radix(digits, 16).map_err(|_| Error::Parse(format!("bad hex literal `{s}`")))
}

/// One line of a modulus override file: `m=<int> modulus=<hex> k=<hex>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModulusOverride {
    pub m: u32,
    pub modulus: u32,
    pub k: u32,
}

pub fn parse_override_table(text: &str) -> Result<Vec<ModulusOverride>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (mut m, mut modulus, mut k) = (None, None, None);
        for field in line.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key=value", lineno + 1)))?;
            match key {
                "m" => {
                    m = Some(value.parse::<u32>().map_err(|_| {
                        Error::Parse(format!("line {}: bad degree `{value}`", lineno + 1))
                    })?)
                }
                "modulus" => modulus = Some(parse_hex(value)? as u32),
                "k" => k = Some(parse_hex(value)? as u32),
                other => {
                    return Err(Error::Parse(format!("line {}: unknown key `{other}`", lineno + 1)))
                }
            }
        }
        match (m, modulus, k) {
            (Some(m), Some(modulus), Some(k)) => out.push(ModulusOverride { m, modulus, k }),
            _ => {
                return Err(Error::Parse(format!(
                    "line {}: need m, modulus and k",
                    lineno + 1
                )))
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldSpec {
        FieldSpec::new(3).unwrap()
    }

    #[test]
    fn default_moduli_are_irreducible() {
        for m in 1..=16 {
            let spec = FieldSpec::new(m).unwrap();
            assert_eq!(spec.trace(spec.k()), 1, "m={m}");
        }
    }

    #[test]
    fn mul_x_by_x_squared_in_gf8() {
        // X * X^2 = X^3 = X + 1 modulo X^3 + X + 1
        let f = f3();
        assert_eq!(f.mul(BaseElem(0b10), BaseElem(0b100)), BaseElem(0b11));
        assert_eq!(f.mul_clmul(BaseElem(0b10), BaseElem(0b100)), BaseElem(0b11));
    }

    #[test]
    fn table_mul_matches_clmul() {
        for m in [2, 5, 8] {
            let f = FieldSpec::new(m).unwrap();
            for x in f.base_elements() {
                for y in f.base_elements() {
                    assert_eq!(f.mul(x, y), f.mul_clmul(x, y));
                }
            }
        }
    }

    #[test]
    fn inverse_and_sqrt() {
        let f = f3();
        assert_eq!(f.inv(BaseElem::ONE).unwrap(), BaseElem::ONE);
        assert_eq!(f.inv(BaseElem::ZERO), Err(Error::InversionOfZero));
        for x in f.base_elements() {
            assert_eq!(f.square(f.sqrt(x)), x);
            if !x.is_zero() {
                assert_eq!(f.mul(x, f.inv(x).unwrap()), BaseElem::ONE);
            }
        }
    }

    #[test]
    fn i_squared_is_i_plus_k() {
        let f = FieldSpec::new(4).unwrap();
        let i2 = f.ext_mul(ExtElem::I, ExtElem::I);
        assert_eq!(i2, ExtElem::new(f.k(), BaseElem::ONE));
        let x = f.ext(5, 9);
        assert_eq!(f.ext_mul(x, ExtElem::ONE), x);
    }

    #[test]
    fn one_plus_i_squared_is_i_when_k_is_one() {
        let f = f3();
        let x = f.ext(1, 1);
        assert_eq!(f.ext_square(x), ExtElem::I);
    }

    #[test]
    fn frobenius_of_i() {
        let f = f3();
        assert_eq!(f.frobenius(ExtElem::I), f.ext(1, 1));
        assert_eq!(f.frobenius(f.ext(5, 0)), f.ext(5, 0));
        assert_eq!(f.frobenius(ExtElem::I), f.ext_pow(ExtElem::I, f.q()));
    }

    #[test]
    fn norm_basics() {
        let f = f3();
        assert_eq!(f.norm(ExtElem::I), f.k());
        assert_eq!(f.norm(ExtElem::ONE), BaseElem::ONE);
        for x in f.ext_elements() {
            assert_eq!(ExtElem::from(f.norm(x)), f.ext_mul(x, f.frobenius(x)));
        }
    }

    #[test]
    fn norm_is_multiplicative_exhaustive_m3() {
        let f = f3();
        for x in f.ext_elements() {
            for y in f.ext_elements() {
                assert_eq!(f.norm(f.ext_mul(x, y)), f.mul(f.norm(x), f.norm(y)));
            }
        }
    }

    #[test]
    fn mu_has_q_plus_one_elements() {
        let f = f3();
        assert!(f.in_mu(ExtElem::ONE));
        assert!(!f.in_mu(ExtElem::ZERO));
        let count = f.ext_elements().filter(|&x| f.in_mu(x)).count();
        assert_eq!(count, 9);
    }

    #[test]
    fn mu_generator_order() {
        for m in 2..=4 {
            let f = FieldSpec::new(m).unwrap();
            let g = f.mu_generator();
            assert_eq!(f.ext_order(g), f.q() + 1);
            assert_eq!(f.ext_pow(g, f.q() + 1), ExtElem::ONE);
        }
        let f = f3();
        let mut powers = f.mu_elements();
        powers.sort();
        let mut direct: Vec<_> = f.ext_elements().filter(|&x| f.in_mu(x)).collect();
        direct.sort();
        assert_eq!(powers, direct);
    }

    #[test]
    fn cubes_in_mu() {
        let f = f3();
        let g = f.mu_generator();
        assert!(f.is_cube_in_mu(ExtElem::ONE).unwrap());
        assert!(!f.is_cube_in_mu(g).unwrap());
        assert_eq!(f.is_cube_in_mu(ExtElem::ZERO), Err(Error::NotInMu));
        let f4 = FieldSpec::new(4).unwrap();
        for x in f4.mu_elements() {
            assert!(f4.is_cube_in_mu(x).unwrap());
        }
    }

    #[test]
    fn cube_roots() {
        let f = f3();
        let ones = f.cube_roots_in_mu(ExtElem::ONE).unwrap();
        assert_eq!(ones.len(), 3);
        for r in &ones {
            assert_eq!(f.ext_pow(*r, 3), ExtElem::ONE);
        }
        let mut orders: Vec<u64> = ones.iter().map(|&r| f.ext_order(r)).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 3, 3]);
        assert!(f.cube_roots_in_mu(f.mu_generator()).unwrap().is_empty());
        // even m: exactly one root in the subgroup
        let f4 = FieldSpec::new(4).unwrap();
        for a in f4.mu_elements() {
            let roots = f4.cube_roots_in_mu(a).unwrap();
            assert_eq!(roots.len(), 1);
            assert_eq!(f4.ext_pow(roots[0], 3), a);
        }
    }

    #[test]
    fn cubic_trinomial_c_zero() {
        // x^3 + x = x (x + 1)^2 in characteristic 2
        for m in 2..=6 {
            let f = FieldSpec::new(m).unwrap();
            assert_eq!(f.solve_cubic_trinomial(BaseElem::ZERO), vec![BaseElem(0), BaseElem(1)]);
        }
    }

    #[test]
    fn cubic_trinomial_over_gf2() {
        let f = FieldSpec::new(1).unwrap();
        assert!(f.solve_cubic_trinomial(BaseElem::ONE).is_empty());
    }

    #[test]
    fn cubic_trinomial_counts_m3() {
        let f = f3();
        let mut total = 0;
        for c in f.base_elements().skip(1) {
            let n = f.solve_cubic_trinomial(c).len();
            assert!(matches!(n, 0 | 1 | 3));
            total += n;
        }
        // x -> x^3 + x hits 0 exactly at {0, 1}; the other 6 inputs land on c != 0.
        assert_eq!(total, 6);
    }

    #[test]
    fn hex_encoding() {
        let f = f3();
        assert_eq!(f.parse_base("0x5").unwrap(), BaseElem(5));
        assert!(f.parse_base("0x8").is_err());
        let x = f.parse_ext("0x3+0x5*i").unwrap();
        assert_eq!(x, f.ext(3, 5));
        assert_eq!(f.parse_ext(&x.to_string()).unwrap(), x);
        assert_eq!(f.parse_ext("i").unwrap(), ExtElem::I);
        assert_eq!(f.parse_ext("0").unwrap(), ExtElem::ZERO);
    }

    #[test]
    fn override_table_parsing() {
        let t = parse_override_table("# alt\nm=3 modulus=0xd k=0x1\n\nm=4 modulus=0x19 k=0x8\n").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0], ModulusOverride { m: 3, modulus: 0xd, k: 1 });
        assert!(parse_override_table("m=3 modulus=0xd").is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(FieldSpec::with_params(3, 0x9, 1), Err(Error::InvalidModulus { .. })));
        assert!(matches!(FieldSpec::with_params(3, 0xb, 0), Err(Error::InvalidTowerConstant(0))));
        assert!(matches!(FieldSpec::new(17), Err(Error::UnsupportedDegree(17))));
    }
}
