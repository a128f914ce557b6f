//! The quadrinomial `f(x) = x + a1 x^{d1} + a2 x^{d2} + a3 x^{d3}` with Niho
//! exponents `d_i = s_i (q-1) + 1`, `(s1, s2, s3) = (1/4, 1, 3/4)` read modulo
//! `q+1`, and its reduction to the rational map
//!
//! ```text
//! p(x) = (x^4 + a1^q x^3 + a3^q x + a2^q) / (a2 x^4 + a3 x^3 + a1 x + 1)
//! ```
//!
//! on the norm-1 subgroup. `f` permutes GF(q^2) iff `p` permutes that subgroup.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{BaseElem, ExtElem, FieldSpec};

/// Largest `q^2` accepted by the exhaustive permutation test.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 22;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoefficientTriple {
    pub a1: ExtElem,
    pub a2: ExtElem,
    pub a3: ExtElem,
}

impl CoefficientTriple {
    pub fn new(a1: ExtElem, a2: ExtElem, a3: ExtElem) -> Self {
        CoefficientTriple { a1, a2, a3 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NihoExponents {
    pub s1: u64,
    pub s2: u64,
    pub s3: u64,
    pub d1: u64,
    pub d2: u64,
    pub d3: u64,
}

/// Value of `p` at a point of the subgroup.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum MuMapValue {
    Value(ExtElem),
    Pole,
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(n as i128) as u64)
}

pub fn exponents(spec: &FieldSpec) -> NihoExponents {
    let q = spec.q();
    let n = q + 1;
    let group = spec.q2() - 1;
    let s1 = mod_inverse(4 % n, n).expect("q+1 is odd");
    let s2 = 1 % n;
    let s3 = (3 * s1) % n;
    let d = |s: u64| (s * (q - 1) + 1) % group;
    NihoExponents { s1, s2, s3, d1: d(s1), d2: d(s2), d3: d(s3) }
}

/// Evaluator for `f` and `p` bound to one coefficient triple.
pub struct Quadrinomial<'a> {
    spec: &'a FieldSpec,
    triple: CoefficientTriple,
    exps: NihoExponents,
    conj: CoefficientTriple,
}

impl<'a> Quadrinomial<'a> {
    pub fn new(spec: &'a FieldSpec, triple: CoefficientTriple) -> Self {
        let conj = CoefficientTriple::new(
            spec.frobenius(triple.a1),
            spec.frobenius(triple.a2),
            spec.frobenius(triple.a3),
        );
        Quadrinomial { spec, triple, exps: exponents(spec), conj }
    }

    pub fn triple(&self) -> CoefficientTriple {
        self.triple
    }

    pub fn eval_f(&self, x: ExtElem) -> ExtElem {
        if x.is_zero() {
            return ExtElem::ZERO;
        }
        let f = self.spec;
        let t = &self.triple;
        let mut acc = x;
        for (a, d) in [(t.a1, self.exps.d1), (t.a2, self.exps.d2), (t.a3, self.exps.d3)] {
            if !a.is_zero() {
                acc = f.ext_add(acc, f.ext_mul(a, f.ext_pow(x, d)));
            }
        }
        acc
    }

    /// Evaluates `p` without checking subgroup membership of `x`.
    #[inline]
    fn eval_p_raw(&self, x: ExtElem) -> MuMapValue {
        let f = self.spec;
        let x2 = f.ext_square(x);
        let x3 = f.ext_mul(x2, x);
        let x4 = f.ext_square(x2);
        let num = f.ext_add(
            f.ext_add(x4, f.ext_mul(self.conj.a1, x3)),
            f.ext_add(f.ext_mul(self.conj.a3, x), self.conj.a2),
        );
        let den = f.ext_add(
            f.ext_add(f.ext_mul(self.triple.a2, x4), f.ext_mul(self.triple.a3, x3)),
            f.ext_add(f.ext_mul(self.triple.a1, x), ExtElem::ONE),
        );
        if den.is_zero() {
            return MuMapValue::Pole;
        }
        let value = f.ext_div(num, den).expect("nonzero denominator");
        debug_assert!(f.in_mu(value), "p maps the subgroup into itself");
        MuMapValue::Value(value)
    }

    pub fn eval_p(&self, x: ExtElem) -> Result<MuMapValue> {
        if !self.spec.in_mu(x) {
            return Err(Error::NotInMu);
        }
        Ok(self.eval_p_raw(x))
    }

    /// Injectivity of `f` over all of GF(q^2).
    pub fn is_pp_exhaustive(&self) -> Result<bool> {
        let f = self.spec;
        if f.q2() > EXHAUSTIVE_LIMIT {
            return Err(Error::FieldTooLarge(format!(
                "exhaustive test needs q^2 <= 2^22, got m = {}",
                f.m()
            )));
        }
        let mut hit = vec![false; f.q2() as usize];
        for x in f.ext_elements() {
            let idx = f.ext_index(self.eval_f(x));
            if hit[idx] {
                return Ok(false);
            }
            hit[idx] = true;
        }
        Ok(true)
    }

    /// Permutation test through the subgroup: no pole and injective on the
    /// q+1 norm-1 elements.
    pub fn is_pp_via_mu(&self) -> bool {
        let f = self.spec;
        let g = f.mu_generator();
        let mut x = ExtElem::ONE;
        // a bitset over GF(q^2) is cheap up to 2^20 elements; past that, sort
        if f.q2() <= 1 << 20 {
            let mut hit = vec![0u64; (f.q2() as usize).div_ceil(64)];
            for _ in 0..=f.q() {
                match self.eval_p_raw(x) {
                    MuMapValue::Pole => return false,
                    MuMapValue::Value(y) => {
                        let idx = f.ext_index(y);
                        let (w, bit) = (idx / 64, 1u64 << (idx % 64));
                        if hit[w] & bit != 0 {
                            return false;
                        }
                        hit[w] |= bit;
                    }
                }
                x = f.ext_mul(x, g);
            }
            return true;
        }
        let mut seen = Vec::with_capacity(f.q() as usize + 1);
        for _ in 0..=f.q() {
            match self.eval_p_raw(x) {
                MuMapValue::Pole => return false,
                MuMapValue::Value(y) => seen.push(f.ext_index(y)),
            }
            x = f.ext_mul(x, g);
        }
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

pub fn eval_f(spec: &FieldSpec, t: CoefficientTriple, x: ExtElem) -> ExtElem {
    Quadrinomial::new(spec, t).eval_f(x)
}

pub fn eval_p(spec: &FieldSpec, t: CoefficientTriple, x: ExtElem) -> Result<MuMapValue> {
    Quadrinomial::new(spec, t).eval_p(x)
}

pub fn is_pp_exhaustive(spec: &FieldSpec, t: CoefficientTriple) -> Result<bool> {
    Quadrinomial::new(spec, t).is_pp_exhaustive()
}

pub fn is_pp_via_mu(spec: &FieldSpec, t: CoefficientTriple) -> bool {
    Quadrinomial::new(spec, t).is_pp_via_mu()
}

/// `phi(x) = (x + i) / (x + i + 1)`, mapping GF(q) into the subgroup minus 1.
pub fn phi(spec: &FieldSpec, x: BaseElem) -> ExtElem {
    let num = ExtElem::new(x, BaseElem::ONE);
    let den = ExtElem::new(spec.add(x, BaseElem::ONE), BaseElem::ONE);
    spec.ext_div(num, den).expect("x + i + 1 is never zero for x in GF(q)")
}

/// One coordinate of `psi`: `(x (i+1) + i) / (x + 1)`, the inverse of `phi`.
pub fn psi_component(spec: &FieldSpec, x: ExtElem) -> Result<ExtElem> {
    let den = spec.ext_add(x, ExtElem::ONE);
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let i_plus_1 = ExtElem::new(BaseElem::ONE, BaseElem::ONE);
    let num = spec.ext_add(spec.ext_mul(x, i_plus_1), ExtElem::I);
    spec.ext_div(num, den)
}

/// The excluded image value `(1 + a1 + a2 + a3)^(q-1)`, or `None` when the base
/// is zero and the value is not well defined.
pub fn excluded_value(spec: &FieldSpec, t: CoefficientTriple) -> Option<ExtElem> {
    let s = spec.ext_add(spec.ext_add(ExtElem::ONE, t.a1), spec.ext_add(t.a2, t.a3));
    if s.is_zero() {
        return None;
    }
    Some(spec.ext_div(spec.frobenius(s), s).expect("nonzero"))
}
