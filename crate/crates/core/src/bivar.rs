//! Dense bivariate polynomials over GF(q^2) with per-variable degree at most
//! [`DMAX`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{ExtElem, FieldSpec};

pub const DMAX: usize = 8;
const N: usize = DMAX + 1;

/// `sum c[i][j] X^i Y^j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    coeffs: [[ExtElem; N]; N],
}

impl Default for BivarPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly { coeffs: [[ExtElem::ZERO; N]; N] }
    }

    pub fn constant(c: ExtElem) -> Self {
        let mut p = Self::zero();
        p.coeffs[0][0] = c;
        p
    }

    pub fn one() -> Self {
        Self::constant(ExtElem::ONE)
    }

    pub fn monomial(c: ExtElem, i: usize, j: usize) -> Self {
        let mut p = Self::zero();
        p.set(i, j, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(ExtElem::ONE, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(ExtElem::ONE, 0, 1)
    }

    /// Builds from `(i, j, c)` triples; repeated positions are summed.
    pub fn from_terms(terms: &[(usize, usize, ExtElem)]) -> Self {
        let mut p = Self::zero();
        for &(i, j, c) in terms {
            let cur = p.coeff(i, j);
            p.set(i, j, cur + c);
        }
        p
    }

    pub fn coeff(&self, i: usize, j: usize) -> ExtElem {
        if i > DMAX || j > DMAX {
            return ExtElem::ZERO;
        }
        self.coeffs[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: ExtElem) {
        assert!(i <= DMAX && j <= DMAX, "bidegree ({i}, {j}) out of range");
        self.coeffs[i][j] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.terms().next().is_none()
    }

    /// Nonzero terms in `(i, j)` ascending lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, ExtElem)> + '_ {
        (0..N).flat_map(move |i| (0..N).map(move |j| (i, j, self.coeffs[i][j])))
            .filter(|t| !t.2.is_zero())
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.terms().map(|t| t.0).max()
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.terms().map(|t| t.1).max()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms().map(|t| t.0 + t.1).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            let cur = out.coeffs[i][j];
            out.coeffs[i][j] = cur + c;
        }
        out
    }

    pub fn scale(&self, spec: &FieldSpec, c: ExtElem) -> Self {
        let mut out = Self::zero();
        for (i, j, v) in self.terms() {
            out.coeffs[i][j] = spec.ext_mul(c, v);
        }
        out
    }

    pub fn mul(&self, spec: &FieldSpec, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (i1, j1, c1) in self.terms() {
            for (i2, j2, c2) in other.terms() {
                let (i, j) = (i1 + i2, j1 + j2);
                if i > DMAX || j > DMAX {
                    return Err(Error::DegreeOverflow(i.max(j)));
                }
                out.coeffs[i][j] = spec.ext_add(out.coeffs[i][j], spec.ext_mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, spec: &FieldSpec, e: u32) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(spec, self)?;
        }
        Ok(acc)
    }

    pub fn product(spec: &FieldSpec, factors: &[BivarPoly]) -> Result<Self> {
        factors.iter().try_fold(Self::one(), |acc, f| acc.mul(spec, f))
    }

    pub fn eval(&self, spec: &FieldSpec, x: ExtElem, y: ExtElem) -> ExtElem {
        // Horner in X over Horner-in-Y rows
        let mut acc = ExtElem::ZERO;
        for i in (0..N).rev() {
            let mut row = ExtElem::ZERO;
            for j in (0..N).rev() {
                row = spec.ext_add(spec.ext_mul(row, y), self.coeffs[i][j]);
            }
            acc = spec.ext_add(spec.ext_mul(acc, x), row);
        }
        acc
    }

    /// `P(Y, X)`.
    pub fn swap(&self) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            out.coeffs[j][i] = c;
        }
        out
    }

    /// Formal partial derivative in X; in characteristic 2 only odd exponents survive.
    pub fn partial_x(&self) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            if i % 2 == 1 {
                out.coeffs[i - 1][j] = c;
            }
        }
        out
    }

    pub fn partial_y(&self) -> Self {
        self.swap().partial_x().swap()
    }

    /// `G(X + Y, XY)` for `G` in variables `(u, v)`.
    pub fn compose_uv(&self, spec: &FieldSpec) -> Result<Self> {
        let u = Self::x().add(&Self::y());
        let v = Self::monomial(ExtElem::ONE, 1, 1);
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            let term = u.pow(spec, i as u32)?.mul(spec, &v.pow(spec, j as u32)?)?;
            out = out.add(&term.scale(spec, c));
        }
        Ok(out)
    }

    /// `P(X + x0, Y + y0)`.
    pub fn translate(&self, spec: &FieldSpec, x0: ExtElem, y0: ExtElem) -> Result<Self> {
        let sx = Self::x().add(&Self::constant(x0));
        let sy = Self::y().add(&Self::constant(y0));
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            let term = sx.pow(spec, i as u32)?.mul(spec, &sy.pow(spec, j as u32)?)?;
            out = out.add(&term.scale(spec, c));
        }
        Ok(out)
    }

    /// Lowest total degree of a nonzero term; the multiplicity of the origin
    /// as a point of `P = 0`.
    pub fn order_at_origin(&self) -> Option<usize> {
        self.terms().map(|t| t.0 + t.1).min()
    }

    pub fn homogeneous_part(&self, degree: usize) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms().filter(|t| t.0 + t.1 == degree) {
            out.coeffs[i][j] = c;
        }
        out
    }

    /// Exact division by `X + Y`; `None` if a remainder is left.
    pub fn div_x_plus_y(&self) -> Option<Self> {
        let mut rem = self.clone();
        let mut quot = Self::zero();
        for i in (1..N).rev() {
            for j in 0..N {
                let c = rem.coeffs[i][j];
                if c.is_zero() {
                    continue;
                }
                // c X^i Y^j = (X + Y) c X^(i-1) Y^j + c X^(i-1) Y^(j+1)
                quot.coeffs[i - 1][j] = c;
                rem.coeffs[i][j] = ExtElem::ZERO;
                if j + 1 > DMAX {
                    return None;
                }
                let cur = rem.coeffs[i - 1][j + 1];
                rem.coeffs[i - 1][j + 1] = cur + c;
            }
        }
        rem.is_zero().then_some(quot)
    }

    /// Scales so the first nonzero coefficient (ascending `(i, j)`) is 1.
    pub fn normalized(&self, spec: &FieldSpec) -> Self {
        match self.terms().next() {
            None => self.clone(),
            Some((_, _, lead)) => self.scale(spec, spec.ext_inv(lead).expect("nonzero")),
        }
    }

    /// Equality up to a nonzero scalar factor.
    pub fn eq_up_to_unit(&self, spec: &FieldSpec, other: &Self) -> bool {
        self.normalized(spec) == other.normalized(spec)
    }

    pub fn is_base_valued(&self) -> bool {
        self.terms().all(|t| t.2.is_base())
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            match i {
                0 => {}
                1 => write!(f, "*X")?,
                _ => write!(f, "*X^{i}")?,
            }
            match j {
                0 => {}
                1 => write!(f, "*Y")?,
                _ => write!(f, "*Y^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
