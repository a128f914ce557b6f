//! Substitution, coefficient extraction, resultants and exact division.

use std::collections::BTreeSet;

use super::poly::{Monomial, SparsePoly, VarId};
use crate::error::{Error, Result};

const MAX_REWRITE_PASSES: usize = 10_000;

/// Rewrites every term divisible by `m` as `(term / m) * r`, repeatedly,
/// until no term is divisible by `m`.
///
/// The rule must lower the exponent of some variable of `m`: `deg_v(r) < m_v`.
/// That variable's exponent then drops on every rewrite, which bounds the
/// number of passes.
pub fn substitution(p: &SparsePoly, m: &Monomial, r: &SparsePoly) -> Result<SparsePoly> {
    let decreasing = m.vars().any(|(v, e)| r.degree_in(v).unwrap_or(0) < e);
    if m.is_one() || !decreasing {
        return Err(Error::NonTerminatingRule(format!("{m} -> {r}")));
    }
    let mut cur = p.clone();
    for _ in 0..MAX_REWRITE_PASSES {
        let mut kept = Vec::new();
        let mut quotients = Vec::new();
        for t in cur.terms() {
            match m.div_into(t) {
                Some(q) => quotients.push(q),
                None => kept.push(*t),
            }
        }
        if quotients.is_empty() {
            return Ok(cur);
        }
        let mut next = SparsePoly::from_monomials(kept);
        let qpoly = SparsePoly::from_monomials(quotients);
        next = next.add(&qpoly.mul(r));
        cur = next;
    }
    Err(Error::NonTerminatingRule(format!("{m} -> {r}: pass limit reached")))
}

/// The set of nonzero coefficients of `p` viewed as a polynomial in `v1, v2`
/// over the remaining variables; equal coefficients collapse.
pub fn find_coefficients2(p: &SparsePoly, v1: VarId, v2: VarId) -> BTreeSet<SparsePoly> {
    let mut cells: std::collections::BTreeMap<(u8, u8), Vec<Monomial>> = Default::default();
    for t in p.terms() {
        let key = (t.exp(v1), t.exp(v2));
        cells.entry(key).or_default().push(t.with_exp(v1, 0).with_exp(v2, 0));
    }
    cells
        .into_values()
        .map(SparsePoly::from_monomials)
        .filter(|c| !c.is_zero())
        .collect()
}

/// Exact quotient `g / f` by graded-lex leading-term division.
///
/// With a single divisor the algorithm never leaves a remainder when `f`
/// really divides `g`: each step subtracts a multiple of `f` from a multiple of
/// `f`, and the leading term of a product is the product of leading terms.
pub fn exact_div(g: &SparsePoly, f: &SparsePoly) -> Result<SparsePoly> {
    let lf = *f.leading().ok_or(Error::DivisorZero)?;
    if f.is_one() {
        return Ok(g.clone());
    }
    let mut rem = g.clone();
    let mut quot = Vec::new();
    while let Some(lr) = rem.leading().copied() {
        let Some(t) = lf.div_into(&lr) else {
            return Err(Error::InexactDivision(format!("leading term {lr} not divisible by {lf}")));
        };
        quot.push(t);
        rem = rem.add(&f.mul_monomial(&t));
    }
    Ok(SparsePoly::from_monomials(quot))
}

/// Whether `f` divides `g`.
pub fn divides(f: &SparsePoly, g: &SparsePoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::DivisorZero);
    }
    Ok(exact_div(g, f).is_ok())
}

/// `mult * p(v := num/den)`, which must be a polynomial.
///
/// Computed as `mult * sum_j p_j num^j den^(d-j)` divided exactly by `den^d`,
/// `d = deg_v p`.
pub fn rational_substitution(
    p: &SparsePoly,
    v: VarId,
    num: &SparsePoly,
    den: &SparsePoly,
    mult: &SparsePoly,
) -> Result<SparsePoly> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let coeffs = p.coefficients_in(v);
    if coeffs.is_empty() {
        return Ok(SparsePoly::zero());
    }
    let d = coeffs.len() - 1;
    let mut cleared = SparsePoly::zero();
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = c.mul(&num.pow(j as u32)).mul(&den.pow((d - j) as u32));
        cleared = cleared.add(&term);
    }
    let scaled = mult.mul(&cleared);
    exact_div(&scaled, &den.pow(d as u32))
        .map_err(|_| Error::InexactDivision(format!("{mult} * p({v} := ({num})/({den})) is not a polynomial")))
}

/// Resultant of `p` and `q` with respect to `v`.
///
/// Conventions: a zero argument gives 0; if exactly one argument is constant
/// in `v` the result is that argument raised to the other's degree.
pub fn resultant(p: &SparsePoly, q: &SparsePoly, v: VarId) -> Result<SparsePoly> {
    if p.is_zero() || q.is_zero() {
        return Ok(SparsePoly::zero());
    }
    let n = p.degree_in(v).unwrap_or(0) as u32;
    let m = q.degree_in(v).unwrap_or(0) as u32;
    match (n, m) {
        (0, 0) => Err(Error::BothConstantInVar(v.to_string())),
        (_, 0) => Ok(q.pow(n)),
        (0, _) => Ok(p.pow(m)),
        (_, 1) => Ok(resultant_linear(p, q, v)),
        (1, _) => Ok(resultant_linear(q, p, v)),
        _ => Ok(sylvester_det(&sylvester_matrix(p, q, v))),
    }
}

/// `Res(P, l1 v + l0) = sum_j P_j l0^j l1^(n-j)` in characteristic 2.
fn resultant_linear(p: &SparsePoly, lin: &SparsePoly, v: VarId) -> SparsePoly {
    let pc = p.coefficients_in(v);
    let lc = lin.coefficients_in(v);
    let (l0, l1) = (&lc[0], &lc[1]);
    let n = pc.len() - 1;
    let mut l0_pows = vec![SparsePoly::one()];
    let mut l1_pows = vec![SparsePoly::one()];
    for j in 1..=n {
        l0_pows.push(l0_pows[j - 1].mul(l0));
        l1_pows.push(l1_pows[j - 1].mul(l1));
    }
    let mut acc = SparsePoly::zero();
    for (j, c) in pc.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&c.mul(&l0_pows[j]).mul(&l1_pows[n - j]));
        }
    }
    acc
}

/// Sylvester matrix with rows `p` shifted `deg q` times, then `q` shifted
/// `deg p` times; coefficients listed from the top degree down.
pub fn sylvester_matrix(p: &SparsePoly, q: &SparsePoly, v: VarId) -> Vec<Vec<SparsePoly>> {
    let pc = p.coefficients_in(v);
    let qc = q.coefficients_in(v);
    sylvester_from_coeffs(&pc, &qc)
}

pub(crate) fn sylvester_from_coeffs<T: Clone + Default>(pc: &[T], qc: &[T]) -> Vec<Vec<T>> {
    let n = pc.len() - 1;
    let m = qc.len() - 1;
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for r in 0..m {
        let mut row = vec![T::default(); size];
        for (j, c) in pc.iter().enumerate() {
            row[r + n - j] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..n {
        let mut row = vec![T::default(); size];
        for (j, c) in qc.iter().enumerate() {
            row[r + m - j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Determinant by Bareiss fraction-free elimination; every division is exact.
pub fn sylvester_det(mat: &[Vec<SparsePoly>]) -> SparsePoly {
    let size = mat.len();
    if size == 0 {
        return SparsePoly::one();
    }
    let mut a: Vec<Vec<SparsePoly>> = mat.to_vec();
    let mut prev = SparsePoly::one();
    for k in 0..size - 1 {
        if a[k][k].is_zero() {
            // sparsest usable pivot keeps the intermediate entries small
            let Some(r) = (k + 1..size)
                .filter(|&r| !a[r][k].is_zero())
                .min_by_key(|&r| a[r][k].len())
            else {
                return SparsePoly::zero();
            };
            a.swap(k, r);
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = a[k][k].mul(&a[i][j]).add(&a[i][k].mul(&a[k][j]));
                a[i][j] = exact_div(&num, &prev).expect("Bareiss division is exact");
            }
            a[i][k] = SparsePoly::zero();
        }
        prev = a[k][k].clone();
    }
    a[size - 1][size - 1].clone()
}
