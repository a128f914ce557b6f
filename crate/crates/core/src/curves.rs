//! The plane curves attached to `p`:
//!
//! * `C: F(X, Y) = (p(X) - p(Y)) / (X - Y)` over GF(q^2);
//! * `D: G(u, v)` with `G(X + Y, XY) = F(X, Y)`, the quotient by `(X, Y) -> (Y, X)`;
//! * `H: L(X, Y) = (X + i + 1)^3 (Y + i + 1)^3 F(phi(X), phi(Y))`, defined over GF(q).
//!
//! Every factorization check below is an exact polynomial identity.

use rayon::prelude::*;
use serde::Serialize;

use crate::bivar::BivarPoly;
use crate::conditions::{theta2_pow_2q_minus_1, thetas, z_cubic_roots, ThetaVector};
use crate::error::{Error, Result};
use crate::field::{BaseElem, ExtElem, FieldSpec};
use crate::niho::{phi, CoefficientTriple};

pub const POINT_SEARCH_LIMIT_M: u32 = 12;
/// Brute-force singular point search enumerates GF(q^2)^2.
pub const SINGULAR_SEARCH_LIMIT_M: u32 = 6;

fn e(i: usize, j: usize, c: ExtElem) -> (usize, usize, ExtElem) {
    (i, j, c)
}

/// `F(X, Y)` from the θ-invariants.
pub fn build_curve_c(spec: &FieldSpec, tv: &ThetaVector) -> BivarPoly {
    let t2q = spec.frobenius(tv.theta2);
    let t4 = ExtElem::from(tv.theta4);
    let t4p = ExtElem::from(tv.theta4p);
    BivarPoly::from_terms(&[
        e(0, 0, spec.frobenius(tv.theta3)),
        e(3, 3, tv.theta3),
        // θ4 XY(X + Y)
        e(2, 1, t4),
        e(1, 2, t4),
        // θ4' (X + Y)^3
        e(3, 0, t4p),
        e(2, 1, t4p),
        e(1, 2, t4p),
        e(0, 3, t4p),
        // θ2 (XY + X^2 + Y^2)
        e(1, 1, tv.theta2),
        e(2, 0, tv.theta2),
        e(0, 2, tv.theta2),
        // θ2^q (X^2 Y^2 + X^3 Y + X Y^3)
        e(2, 2, t2q),
        e(3, 1, t2q),
        e(1, 3, t2q),
    ])
}

/// `G(u, v)`, with `u` in the first slot and `v` in the second.
pub fn build_curve_d(spec: &FieldSpec, tv: &ThetaVector) -> BivarPoly {
    let t2q = spec.frobenius(tv.theta2);
    BivarPoly::from_terms(&[
        e(0, 0, spec.frobenius(tv.theta3)),
        e(3, 0, tv.theta4p.into()),
        e(1, 1, tv.theta4.into()),
        e(0, 3, tv.theta3),
        e(2, 0, tv.theta2),
        e(0, 1, tv.theta2),
        e(2, 1, t2q),
        e(0, 2, t2q),
    ])
}

/// The two-fraction numerator of `(p(X) - p(Y)) / (X - Y)` before division.
pub fn numerator_sum(spec: &FieldSpec, t: &CoefficientTriple) -> Result<BivarPoly> {
    let (a1q, a2q, a3q) = (spec.frobenius(t.a1), spec.frobenius(t.a2), spec.frobenius(t.a3));
    let den = |swap: bool| {
        let p = BivarPoly::from_terms(&[
            e(0, 1, t.a1),
            e(0, 4, t.a2),
            e(0, 3, t.a3),
            e(0, 0, ExtElem::ONE),
        ]);
        if swap { p.swap() } else { p }
    };
    let num = |swap: bool| {
        let p = BivarPoly::from_terms(&[
            e(3, 0, a1q),
            e(0, 0, a2q),
            e(1, 0, a3q),
            e(4, 0, ExtElem::ONE),
        ]);
        if swap { p.swap() } else { p }
    };
    Ok(den(false).mul(spec, &num(false))?.add(&den(true).mul(spec, &num(true))?))
}

/// Divides the numerator sum by `X + Y` and compares with `F` built from the thetas.
pub fn verify_numerator_identity(spec: &FieldSpec, t: &CoefficientTriple) -> Result<bool> {
    let sum = numerator_sum(spec, t)?;
    let Some(quotient) = sum.div_x_plus_y() else {
        return Ok(false);
    };
    Ok(quotient == build_curve_c(spec, &thetas(spec, t)))
}

/// Checks `G(X + Y, XY) = F(X, Y)`.
pub fn verify_quotient_relation(spec: &FieldSpec, tv: &ThetaVector) -> Result<bool> {
    Ok(build_curve_d(spec, tv).compose_uv(spec)? == build_curve_c(spec, tv))
}

pub type MuPoint = (ExtElem, ExtElem);

/// Zeros of `P` in the norm-1 subgroup squared, off the diagonal, sorted.
pub fn mu_square_points(spec: &FieldSpec, p: &BivarPoly) -> Result<Vec<MuPoint>> {
    if spec.m() > POINT_SEARCH_LIMIT_M {
        return Err(Error::FieldTooLarge(format!("point search needs q <= 2^{POINT_SEARCH_LIMIT_M}")));
    }
    let mu = spec.mu_elements();
    let mut points: Vec<MuPoint> = mu
        .par_iter()
        .flat_map_iter(|&x| {
            mu.iter()
                .filter(move |&&y| x != y && p.eval(spec, x, y).is_zero())
                .map(move |&y| (x, y))
        })
        .collect();
    points.sort();
    Ok(points)
}

/// `(a, b)` in GF(q)^2, `a != b`, with `L(a, b) = 0`.
pub fn fq_points_off_diagonal(spec: &FieldSpec, l: &BivarPoly) -> Result<Vec<(BaseElem, BaseElem)>> {
    if spec.m() > POINT_SEARCH_LIMIT_M {
        return Err(Error::FieldTooLarge(format!("point search needs q <= 2^{POINT_SEARCH_LIMIT_M}")));
    }
    let elems: Vec<BaseElem> = spec.base_elements().collect();
    let mut points: Vec<(BaseElem, BaseElem)> = elems
        .par_iter()
        .flat_map_iter(|&a| {
            elems
                .iter()
                .filter(move |&&b| a != b && l.eval(spec, a.into(), b.into()).is_zero())
                .map(move |&b| (a, b))
        })
        .collect();
    points.sort();
    Ok(points)
}

pub fn count_fq_points_off_diagonal(spec: &FieldSpec, l: &BivarPoly) -> Result<usize> {
    Ok(fq_points_off_diagonal(spec, l)?.len())
}

/// Parameters of `H`: `θ2 = C + iD`, `θ3 = E + iF`, the tower constant `k`, `θ4`, `θ1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HParams {
    pub c: BaseElem,
    pub d: BaseElem,
    pub e: BaseElem,
    pub f: BaseElem,
    pub k: BaseElem,
    pub theta4: BaseElem,
    pub theta1: BaseElem,
}

impl HParams {
    pub fn from_thetas(spec: &FieldSpec, tv: &ThetaVector) -> Self {
        HParams {
            c: tv.theta2.a,
            d: tv.theta2.b,
            e: tv.theta3.a,
            f: tv.theta3.b,
            k: spec.k(),
            theta4: tv.theta4,
            theta1: tv.theta1,
        }
    }

    fn theta_vector(&self, spec: &FieldSpec) -> ThetaVector {
        ThetaVector {
            theta1: self.theta1,
            theta2: ExtElem::new(self.c, self.d),
            theta3: ExtElem::new(self.e, self.f),
            theta4: self.theta4,
            theta4p: spec.add(self.theta1, self.theta4),
        }
    }
}

/// The sixteen coefficients `γ[i][j]` of `X^i Y^j` in `L`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaTable {
    pub gamma: [[BaseElem; 4]; 4],
}

impl GammaTable {
    pub fn get(&self, i: usize, j: usize) -> BaseElem {
        self.gamma[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| self.gamma[i][j] == self.gamma[j][i]))
    }

    pub fn to_poly(&self) -> BivarPoly {
        let mut p = BivarPoly::zero();
        for i in 0..4 {
            for j in 0..4 {
                p.set(i, j, self.gamma[i][j].into());
            }
        }
        p
    }
}

/// The closed-form coefficient table of `L`.
pub fn gamma_table(spec: &FieldSpec, h: &HParams) -> GammaTable {
    let mul = |a: BaseElem, b: BaseElem| spec.mul(a, b);
    let sum = |xs: &[BaseElem]| xs.iter().fold(BaseElem::ZERO, |acc, &x| acc + x);
    let (c, d, ee, f, k, t4, t1) = (h.c, h.d, h.e, h.f, h.k, h.theta4, h.theta1);
    let k2 = spec.square(k);
    let k3 = mul(k2, k);

    let g33 = d + f;
    let g32 = sum(&[c, d, ee, f, t4]);
    let g31 = sum(&[c, mul(d, k), d, ee, mul(f, k), f, t4]);
    let g30 = sum(&[c, mul(c, k), mul(ee, k), ee, f, mul(k, t4), t4, t1]);
    let g22 = sum(&[c, mul(d, k), d, ee, mul(f, k), f]);
    let g21 = sum(&[mul(c, k), c, mul(ee, k), ee, f, mul(k, t4), t1]);
    let g20 = sum(&[c, mul(d, k2), mul(d, k), ee, mul(f, k2), mul(f, k), f, mul(k, t4)]);
    let g11 = sum(&[c, mul(d, k2), mul(d, k), ee, mul(f, k2), mul(f, k), f]);
    let g10 = sum(&[
        mul(c, k2),
        mul(c, k),
        mul(d, k2),
        mul(ee, k2),
        mul(ee, k),
        ee,
        mul(f, k2),
        f,
        mul(k2, t4),
    ]);
    let g00 = sum(&[mul(c, k2), mul(d, k3), mul(f, k3), mul(f, k), f, mul(ee, k2), ee]);

    GammaTable {
        gamma: [
            [g00, g10, g20, g30],
            [g10, g11, g21, g31],
            [g20, g21, g22, g32],
            [g30, g31, g32, g33],
        ],
    }
}

/// `L(X, Y) = (X + i + 1)^3 (Y + i + 1)^3 F(phi(X), phi(Y))`, expanded directly.
pub fn curve_h_by_transform(spec: &FieldSpec, tv: &ThetaVector) -> Result<BivarPoly> {
    let f = build_curve_c(spec, tv);
    let i_plus_1 = ExtElem::new(BaseElem::ONE, BaseElem::ONE);
    let num_x = BivarPoly::x().add(&BivarPoly::constant(ExtElem::I));
    let den_x = BivarPoly::x().add(&BivarPoly::constant(i_plus_1));
    let (num_y, den_y) = (num_x.swap(), den_x.swap());
    let mut out = BivarPoly::zero();
    for (a, b, c) in f.terms() {
        if a > 3 || b > 3 {
            return Err(Error::DegreeOverflow(a.max(b)));
        }
        let term = BivarPoly::product(
            spec,
            &[
                num_x.pow(spec, a as u32)?,
                den_x.pow(spec, 3 - a as u32)?,
                num_y.pow(spec, b as u32)?,
                den_y.pow(spec, 3 - b as u32)?,
            ],
        )?;
        out = out.add(&term.scale(spec, c));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HCurve {
    pub gamma: GammaTable,
    /// `L` from the coefficient table.
    pub poly: BivarPoly,
    /// `L` from the change of variables.
    pub transform: BivarPoly,
}

impl HCurve {
    pub fn constructions_agree(&self) -> bool {
        self.poly == self.transform
    }
}

/// Builds `H` both ways. When a triple is supplied, the parameters must match
/// its invariants.
pub fn build_curve_h(
    spec: &FieldSpec,
    params: &HParams,
    triple: Option<&CoefficientTriple>,
) -> Result<HCurve> {
    if spec.trace(params.k) != 1 {
        return Err(Error::ParameterInconsistency("trace(k) != 1".into()));
    }
    if params.k != spec.k() {
        return Err(Error::ParameterInconsistency(
            "k differs from the tower constant defining i".into(),
        ));
    }
    let tv = params.theta_vector(spec);
    if let Some(t) = triple {
        let actual = thetas(spec, t);
        if actual != tv {
            return Err(Error::ParameterInconsistency(format!(
                "triple has θ2 = {}, θ3 = {}, θ1 = {}, θ4 = {}",
                actual.theta2, actual.theta3, actual.theta1, actual.theta4
            )));
        }
    }
    let gamma = gamma_table(spec, params);
    Ok(HCurve { gamma, poly: gamma.to_poly(), transform: curve_h_by_transform(spec, &tv)? })
}

/// The triple `(0, 0, a3)`, which has `θ2 = 0`, `θ4 = θ4' = 1` for `a3` of norm 1.
fn theta2_zero_instance(a3: ExtElem) -> CoefficientTriple {
    CoefficientTriple::new(ExtElem::ZERO, ExtElem::ZERO, a3)
}

fn cube_case_roots(spec: &FieldSpec, a3: ExtElem) -> Result<Vec<ExtElem>> {
    if spec.m() % 2 == 0 {
        return Err(Error::Precondition("m must be odd".into()));
    }
    if !spec.in_mu(a3) {
        return Err(Error::NotInMu);
    }
    if !spec.is_cube_in_mu(a3)? {
        return Err(Error::Precondition(format!("{a3} is not a cube in the subgroup")));
    }
    let roots = spec.cube_roots_in_mu(a3)?;
    debug_assert_eq!(roots.len(), 3);
    Ok(roots)
}

/// `G = (u + α1 v + α1^-1)(u + α2 v + α2^-1)(u + α3 v + α3^-1)` up to a unit,
/// for `a3` a cube of norm 1 and `α_i^3 = a3`.
pub fn verify_split_dec_d(spec: &FieldSpec, a3: ExtElem) -> Result<bool> {
    let roots = cube_case_roots(spec, a3)?;
    let g = build_curve_d(spec, &thetas(spec, &theta2_zero_instance(a3)));
    let lines: Vec<BivarPoly> = roots
        .iter()
        .map(|&alpha| {
            BivarPoly::from_terms(&[
                e(1, 0, ExtElem::ONE),
                e(0, 1, alpha),
                e(0, 0, spec.ext_inv(alpha).expect("nonzero")),
            ])
        })
        .collect();
    Ok(BivarPoly::product(spec, &lines)?.eq_up_to_unit(spec, &g))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSplitReport {
    pub roots: Vec<ExtElem>,
    pub identity: bool,
    pub points: Vec<MuPoint>,
    /// Every point has a coordinate among the `α_i^-1`.
    pub points_on_lines: bool,
}

impl LinearSplitReport {
    pub fn holds(&self) -> bool {
        self.identity && !self.points.is_empty() && self.points_on_lines
    }
}

/// `F = prod (X + α_i^-1)(Y + α_i^-1)` up to a unit, plus the off-diagonal
/// points of `C` in the subgroup squared.
pub fn verify_split_cfact(spec: &FieldSpec, a3: ExtElem) -> Result<LinearSplitReport> {
    let roots = cube_case_roots(spec, a3)?;
    let f = build_curve_c(spec, &thetas(spec, &theta2_zero_instance(a3)));
    let inverses: Vec<ExtElem> =
        roots.iter().map(|&a| spec.ext_inv(a).expect("nonzero")).collect();
    let mut factors = Vec::new();
    for &r in &inverses {
        factors.push(BivarPoly::x().add(&BivarPoly::constant(r)));
        factors.push(BivarPoly::y().add(&BivarPoly::constant(r)));
    }
    let identity = BivarPoly::product(spec, &factors)?.eq_up_to_unit(spec, &f);
    let points = mu_square_points(spec, &f)?;
    let points_on_lines =
        points.iter().all(|(x, y)| inverses.contains(x) || inverses.contains(y));
    Ok(LinearSplitReport { roots, identity, points, points_on_lines })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessedSplit {
    pub identity: bool,
    pub witness: Option<MuPoint>,
}

impl WitnessedSplit {
    pub fn holds(&self) -> bool {
        self.identity && self.witness.is_some()
    }
}

fn is_witness(spec: &FieldSpec, f: &BivarPoly, x: ExtElem, y: ExtElem) -> bool {
    x != y && spec.in_mu(x) && spec.in_mu(y) && f.eval(spec, x, y).is_zero()
}

/// `θ2^(q-1) = θ2^q / θ2`.
fn theta2_pow_q_minus_1(spec: &FieldSpec, theta2: ExtElem) -> ExtElem {
    spec.ext_div(spec.frobenius(theta2), theta2).expect("nonzero")
}

/// With `θ1 = 0`, `θ4 = 0`, `θ3 = θ2^(2q-1)`:
/// `G = (θ2 + θ2^q v)(θ2^(1-q) + u^2 + θ2^(q-1) v^2)`, and the point
/// `(1/(α θ2^(q-1)), α)` of `C` for `α` in the subgroup.
pub fn verify_split_t1zero(spec: &FieldSpec, tv: &ThetaVector) -> Result<WitnessedSplit> {
    if tv.theta2.is_zero() {
        return Err(Error::Theta2Zero);
    }
    if !tv.theta4.is_zero() || !tv.theta1.is_zero() {
        return Err(Error::Precondition("need θ4 = 0 and θ1 = 0".into()));
    }
    if theta2_pow_2q_minus_1(spec, tv.theta2) != Some(tv.theta3) {
        return Err(Error::Precondition("need θ3 = θ2^(2q-1)".into()));
    }
    let t2 = tv.theta2;
    let t2q = spec.frobenius(t2);
    let r = theta2_pow_q_minus_1(spec, t2);
    let r_inv = spec.ext_inv(r)?;
    let line = BivarPoly::from_terms(&[e(0, 0, t2), e(0, 1, t2q)]);
    let conic = BivarPoly::from_terms(&[e(0, 0, r_inv), e(2, 0, ExtElem::ONE), e(0, 2, r)]);
    let g = build_curve_d(spec, tv);
    let identity = line.mul(spec, &conic)?.eq_up_to_unit(spec, &g);

    let f = build_curve_c(spec, tv);
    let witness = spec.mu_elements().into_iter().filter(|&a| a != r_inv).find_map(|alpha| {
        let x = spec.ext_inv(spec.ext_mul(alpha, r)).ok()?;
        is_witness(spec, &f, x, alpha).then_some((x, alpha))
    });
    Ok(WitnessedSplit { identity, witness })
}

/// The conic factor `θ2^(-q) ∂G/∂v` of the `θ1 = 0` split.
pub fn t1zero_conic_from_partial(spec: &FieldSpec, tv: &ThetaVector) -> Result<BivarPoly> {
    let t2q_inv = spec.ext_inv(spec.frobenius(tv.theta2))?;
    Ok(build_curve_d(spec, tv).partial_y().scale(spec, t2q_inv))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicSplit {
    pub z: [ExtElem; 3],
    pub identity: bool,
    /// `z1^2 != θ2^(q+1)`, i.e. the `z1` conic is nonsingular.
    pub z1_conic_nonsingular: bool,
    pub witness: Option<MuPoint>,
}

impl ConicSplit {
    pub fn holds(&self) -> bool {
        self.identity && self.z1_conic_nonsingular && self.witness.is_some()
    }
}

/// With `θ4 = 0`, `θ1 != 0`, `θ3 = θ2^(2q-1)` and `z1` a GF(q) root of
/// `θ1 + z + z^3/θ2^(q+1)`:
/// `F = prod_i (z_i (X + Y) + θ2^q XY + θ2)`.
pub fn verify_split_conics(spec: &FieldSpec, tv: &ThetaVector, z1: BaseElem) -> Result<ConicSplit> {
    if tv.theta2.is_zero() {
        return Err(Error::Theta2Zero);
    }
    if !tv.theta4.is_zero() || tv.theta1.is_zero() {
        return Err(Error::Precondition("need θ4 = 0 and θ1 != 0".into()));
    }
    if theta2_pow_2q_minus_1(spec, tv.theta2) != Some(tv.theta3) {
        return Err(Error::Precondition("need θ3 = θ2^(2q-1)".into()));
    }
    if !z_cubic_roots(spec, tv)?.contains(&z1) {
        return Err(Error::NoRationalRoot);
    }
    let n = spec.norm(tv.theta2);
    // cofactor z^2 + z1 z + (z1^2 + N) of (z + z1) in z^3 + N z + N θ1
    let z1e = ExtElem::from(z1);
    let c0 = ExtElem::from(spec.add(spec.square(z1), n));
    let others: Vec<ExtElem> = spec
        .ext_elements()
        .filter(|&z| (spec.ext_square(z) + spec.ext_mul(z1e, z) + c0).is_zero())
        .collect();
    let [z2, z3] = match others.as_slice() {
        [a, b] => [*a, *b],
        [a] => [*a, *a],
        _ => return Err(Error::Precondition("cofactor quadratic has no roots in GF(q^2)".into())),
    };
    let t2 = tv.theta2;
    let t2q = spec.frobenius(t2);
    let conic = |z: ExtElem| {
        BivarPoly::from_terms(&[e(1, 0, z), e(0, 1, z), e(1, 1, t2q), e(0, 0, t2)])
    };
    let product = BivarPoly::product(spec, &[conic(z1e), conic(z2), conic(z3)])?;
    let f = build_curve_c(spec, tv);
    let identity = product.eq_up_to_unit(spec, &f);
    let z1_conic_nonsingular = spec.square(z1) != n;

    let excluded = spec.ext_inv(theta2_pow_q_minus_1(spec, t2))?;
    let witness = spec.mu_elements().into_iter().filter(|&a| a != excluded).find_map(|alpha| {
        let num = t2 + spec.ext_mul(z1e, alpha);
        let den = spec.ext_mul(t2q, alpha) + z1e;
        let x = spec.ext_div(num, den).ok()?;
        is_witness(spec, &f, x, alpha).then_some((x, alpha))
    });
    Ok(ConicSplit { z: [z1e, z2, z3], identity, z1_conic_nonsingular, witness })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Multiplicity {
    Double,
    Triple,
    Higher(usize),
}

impl Multiplicity {
    fn from_order(order: usize) -> Option<Self> {
        match order {
            0 | 1 => None,
            2 => Some(Multiplicity::Double),
            3 => Some(Multiplicity::Triple),
            n => Some(Multiplicity::Higher(n)),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Derivation {
    ClosedForm,
    BruteForce,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SingularPoint {
    pub u: ExtElem,
    pub v: ExtElem,
    pub multiplicity: Multiplicity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPointReport {
    pub points: Vec<SingularPoint>,
    pub derivation: Derivation,
}

/// Multiplicity of `(u0, v0)` on `G = 0`: the order of the translated polynomial at the origin.
pub fn point_multiplicity(spec: &FieldSpec, g: &BivarPoly, u0: ExtElem, v0: ExtElem) -> Result<usize> {
    Ok(g.translate(spec, u0, v0)?.order_at_origin().unwrap_or(usize::MAX))
}

/// Singular points of `D` over GF(q^2) by enumeration of all `(u, v)`.
pub fn singular_points_d_brute(spec: &FieldSpec, tv: &ThetaVector) -> Result<SingularPointReport> {
    if spec.m() > SINGULAR_SEARCH_LIMIT_M {
        return Err(Error::FieldTooLarge(format!(
            "singular point enumeration needs m <= {SINGULAR_SEARCH_LIMIT_M}"
        )));
    }
    let g = build_curve_d(spec, tv);
    let gu = g.partial_x();
    let gv = g.partial_y();
    let elems: Vec<ExtElem> = spec.ext_elements().collect();
    let candidates: Vec<(ExtElem, ExtElem)> = elems
        .par_iter()
        .flat_map_iter(|&u| {
            let (g, gu, gv) = (&g, &gu, &gv);
            elems.iter().filter_map(move |&v| {
                (g.eval(spec, u, v).is_zero()
                    && gu.eval(spec, u, v).is_zero()
                    && gv.eval(spec, u, v).is_zero())
                .then_some((u, v))
            })
        })
        .collect();
    let mut points = Vec::new();
    for (u, v) in candidates {
        let order = point_multiplicity(spec, &g, u, v)?;
        let multiplicity = Multiplicity::from_order(order)
            .ok_or_else(|| Error::Precondition("critical point of order < 2".into()))?;
        points.push(SingularPoint { u, v, multiplicity });
    }
    points.sort();
    Ok(SingularPointReport { points, derivation: Derivation::BruteForce })
}

/// All `x` in GF(q^2) with `x^3 = a`.
fn ext_cube_roots(spec: &FieldSpec, a: ExtElem) -> Vec<ExtElem> {
    spec.ext_elements().filter(|&x| spec.ext_mul(spec.ext_square(x), x) == a).collect()
}

/// Singular points predicted in closed form for the three analysed regimes:
///
/// * `θ2 = 0`: with `a3 = θ3/θ4'`, double points `(a3^q α^2, a3^q α)`, `α^3 = a3`,
///   present iff `a3` has norm 1;
/// * `θ2 != 0`, `θ4 = 0`, `θ3 != θ2^(2q-1)`: the double point `(0, α)`, `α^2 = θ2/θ3`;
/// * `θ2 != 0`, `θ4 = 0`, `θ3 = θ2^(2q-1)`, `θ1 != 0`: the triple point `(0, α)`.
pub fn singular_points_d_closed_form(
    spec: &FieldSpec,
    tv: &ThetaVector,
) -> Result<SingularPointReport> {
    let mut points = Vec::new();
    if tv.theta2.is_zero() {
        if tv.theta4p.is_zero() {
            return Err(Error::Precondition("θ2 = 0 with θ4' = 0 has no closed form".into()));
        }
        let a3 = spec.ext_scale(spec.inv(tv.theta4p)?, tv.theta3);
        if a3.is_zero() {
            return Err(Error::Precondition("a3 = 0 has no closed form".into()));
        }
        if spec.in_mu(a3) {
            let a3q = spec.frobenius(a3);
            for alpha in ext_cube_roots(spec, a3) {
                points.push(SingularPoint {
                    u: spec.ext_mul(a3q, spec.ext_square(alpha)),
                    v: spec.ext_mul(a3q, alpha),
                    multiplicity: Multiplicity::Double,
                });
            }
        }
    } else if tv.theta4.is_zero() {
        let alpha = singular_alpha(spec, tv)?;
        let on_triple = theta2_pow_2q_minus_1(spec, tv.theta2) == Some(tv.theta3);
        if on_triple && tv.theta1.is_zero() {
            return Err(Error::Precondition(
                "θ1 = 0 with θ3 = θ2^(2q-1) splits D; no single-point closed form".into(),
            ));
        }
        let multiplicity = if on_triple { Multiplicity::Triple } else { Multiplicity::Double };
        points.push(SingularPoint { u: ExtElem::ZERO, v: alpha, multiplicity });
    } else {
        return Err(Error::Precondition("θ2 != 0 and θ4 != 0 has no closed form".into()));
    }
    points.sort();
    Ok(SingularPointReport { points, derivation: Derivation::ClosedForm })
}

/// `α` with `α^2 = θ2 / θ3`.
pub fn singular_alpha(spec: &FieldSpec, tv: &ThetaVector) -> Result<ExtElem> {
    Ok(spec.ext_sqrt(spec.ext_div(tv.theta2, tv.theta3)?))
}

pub fn singular_points_d(
    spec: &FieldSpec,
    tv: &ThetaVector,
    derivation: Derivation,
) -> Result<SingularPointReport> {
    match derivation {
        Derivation::BruteForce => singular_points_d_brute(spec, tv),
        Derivation::ClosedForm => singular_points_d_closed_form(spec, tv),
    }
}

/// Lowest-degree form of `D` after moving `(0, α)` to the origin.
pub fn tangent_form_at_singular_point(spec: &FieldSpec, tv: &ThetaVector) -> Result<BivarPoly> {
    let alpha = singular_alpha(spec, tv)?;
    let moved = build_curve_d(spec, tv).translate(spec, ExtElem::ZERO, alpha)?;
    let order = moved.order_at_origin().unwrap_or(0);
    Ok(moved.homogeneous_part(order))
}

/// `θ1 U^3 + θ2^q U^2 V + θ3 V^3`.
pub fn expected_triple_point_form(spec: &FieldSpec, tv: &ThetaVector) -> BivarPoly {
    BivarPoly::from_terms(&[
        e(3, 0, tv.theta1.into()),
        e(2, 1, spec.frobenius(tv.theta2)),
        e(0, 3, tv.theta3),
    ])
}

/// `q + 1 - 20 sqrt(q) - 12 >= 0`, in exact integer arithmetic.
pub fn hasse_weil_ok(q: u64) -> bool {
    if q < 11 {
        return false;
    }
    let d = (q - 11) as u128;
    d * d >= 400 * q as u128
}

/// Images under `phi` of the off-diagonal GF(q)-points of `H`.
pub fn phi_image_of_h_points(spec: &FieldSpec, l: &BivarPoly) -> Result<Vec<MuPoint>> {
    let mut out: Vec<MuPoint> = fq_points_off_diagonal(spec, l)?
        .into_iter()
        .map(|(a, b)| (phi(spec, a), phi(spec, b)))
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hasse_weil_threshold() {
        assert!(!hasse_weil_ok(256));
        assert!(hasse_weil_ok(512));
        assert!(hasse_weil_ok(422));
        assert!(!hasse_weil_ok(421));
    }

    #[test]
    fn single_term_curve_c() {
        let f = FieldSpec::new(3).unwrap();
        let tv = ThetaVector { theta3: ExtElem::ONE, ..ThetaVector::zero() };
        assert_eq!(
            build_curve_c(&f, &tv),
            BivarPoly::from_terms(&[(0, 0, ExtElem::ONE), (3, 3, ExtElem::ONE)])
        );
        assert!(build_curve_d(&f, &ThetaVector::zero()).is_zero());
    }

    #[test]
    fn diagonal_only_curve_has_no_points() {
        let f = FieldSpec::new(3).unwrap();
        let p = BivarPoly::x().add(&BivarPoly::y());
        assert!(mu_square_points(&f, &p).unwrap().is_empty());
        assert_eq!(count_fq_points_off_diagonal(&f, &BivarPoly::one()).unwrap(), 0);
    }

    #[test]
    fn zero_triple_numerator() {
        let f = FieldSpec::new(3).unwrap();
        let t = CoefficientTriple::zero();
        let sum = numerator_sum(&f, &t).unwrap();
        let s3 = BivarPoly::x().add(&BivarPoly::y()).pow(&f, 3).unwrap();
        assert_eq!(sum.div_x_plus_y().unwrap(), s3);
        assert!(verify_numerator_identity(&f, &t).unwrap());
    }

    #[test]
    fn cube_case_preconditions() {
        let f = FieldSpec::new(3).unwrap();
        let g = f.mu_generator();
        assert!(matches!(verify_split_dec_d(&f, g), Err(Error::Precondition(_))));
        assert!(matches!(verify_split_dec_d(&f, ExtElem::ZERO), Err(Error::NotInMu)));
        let f4 = FieldSpec::new(4).unwrap();
        assert!(matches!(verify_split_dec_d(&f4, ExtElem::ONE), Err(Error::Precondition(_))));
    }

    #[test]
    fn t1zero_refuses_theta2_zero() {
        let f = FieldSpec::new(3).unwrap();
        assert_eq!(verify_split_t1zero(&f, &ThetaVector::zero()), Err(Error::Theta2Zero));
    }

    #[test]
    fn h_params_must_use_tower_k() {
        let f = FieldSpec::new(4).unwrap();
        let mut h = HParams::from_thetas(&f, &ThetaVector::zero());
        assert!(build_curve_h(&f, &h, None).is_ok());
        h.k = f.base_elements().find(|&c| f.trace(c) == 1 && c != f.k()).unwrap();
        assert!(matches!(build_curve_h(&f, &h, None), Err(Error::ParameterInconsistency(_))));
    }
}
