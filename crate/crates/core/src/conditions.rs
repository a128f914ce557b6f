//! Coefficient invariants θ1..θ4, θ4' and the two sufficient conditions for
//! the quadrinomial to permute GF(q^2):
//!
//! 1. `θ4 != 0`, `θ2 = 0`, `a3` has norm 1 and is not a cube of a norm-1 element;
//! 2. `θ1 != 0`, `θ2 != 0`, `θ4 = 0`, `θ3 = θ2^(2q-1)` and `x^3 + x + θ1^2/θ2^(q+1)`
//!    has no root in GF(q).
//!
//! For `m >= 9` these are also necessary (for non-degenerate triples).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{BaseElem, ExtElem, FieldSpec};
use crate::niho::CoefficientTriple;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaVector {
    pub theta1: BaseElem,
    pub theta2: ExtElem,
    pub theta3: ExtElem,
    pub theta4: BaseElem,
    pub theta4p: BaseElem,
}

impl ThetaVector {
    pub fn zero() -> Self {
        ThetaVector {
            theta1: BaseElem::ZERO,
            theta2: ExtElem::ZERO,
            theta3: ExtElem::ZERO,
            theta4: BaseElem::ZERO,
            theta4p: BaseElem::ZERO,
        }
    }

    /// `θ2^(q+1) + θ3^(q+1) = θ4 θ4'`.
    pub fn satisfies_norm_identity(&self, spec: &FieldSpec) -> bool {
        let lhs = spec.add(spec.norm(self.theta2), spec.norm(self.theta3));
        lhs == spec.mul(self.theta4, self.theta4p)
    }
}

pub fn thetas(spec: &FieldSpec, t: &CoefficientTriple) -> ThetaVector {
    let n1 = spec.norm(t.a1);
    let n2 = spec.norm(t.a2);
    let n3 = spec.norm(t.a3);
    let a1q = spec.frobenius(t.a1);
    let a2q = spec.frobenius(t.a2);
    let theta1 = spec.add(spec.add(BaseElem::ONE, n1), spec.add(n2, n3));
    let theta2 = spec.ext_add(a1q, spec.ext_mul(t.a3, a2q));
    let theta3 = spec.ext_add(t.a3, spec.ext_mul(t.a2, a1q));
    let theta4 = spec.add(n1, n3);
    let theta4p = spec.add(BaseElem::ONE, n2);
    let tv = ThetaVector { theta1, theta2, theta3, theta4, theta4p };
    debug_assert_eq!(spec.add(theta1, theta4), theta4p);
    debug_assert!(tv.satisfies_norm_identity(spec));
    tv
}

/// `θ2^(2q-1) = (θ2^q)^2 / θ2`; `None` for `θ2 = 0`.
pub fn theta2_pow_2q_minus_1(spec: &FieldSpec, theta2: ExtElem) -> Option<ExtElem> {
    if theta2.is_zero() {
        return None;
    }
    let fq = spec.frobenius(theta2);
    Some(spec.ext_div(spec.ext_square(fq), theta2).expect("nonzero"))
}

/// The trinomial constant `θ1^2 / θ2^(q+1)`.
pub fn trinomial_constant(spec: &FieldSpec, tv: &ThetaVector) -> Option<BaseElem> {
    let n = spec.norm(tv.theta2);
    if n.is_zero() {
        return None;
    }
    Some(spec.div(spec.square(tv.theta1), n).expect("nonzero"))
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Condition1Flags {
    pub theta4_nonzero: bool,
    pub theta2_zero: bool,
    pub a3_in_mu: bool,
    pub a3_noncube: bool,
}

impl Condition1Flags {
    pub fn holds(&self) -> bool {
        self.theta4_nonzero && self.theta2_zero && self.a3_in_mu && self.a3_noncube
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Condition2Flags {
    pub theta1_nonzero: bool,
    pub theta2_nonzero: bool,
    pub theta4_zero: bool,
    pub theta3_eq_theta2_pow: bool,
    pub trinomial_rootfree: bool,
    #[serde(skip)]
    pub c_value: Option<BaseElem>,
}

impl Condition2Flags {
    pub fn holds(&self) -> bool {
        self.theta1_nonzero
            && self.theta2_nonzero
            && self.theta4_zero
            && self.theta3_eq_theta2_pow
            && self.trinomial_rootfree
    }
}

pub fn check_condition_1(spec: &FieldSpec, t: &CoefficientTriple) -> Condition1Flags {
    let tv = thetas(spec, t);
    let a3_in_mu = spec.in_mu(t.a3);
    let a3_noncube = a3_in_mu && !spec.is_cube_in_mu(t.a3).expect("checked membership");
    Condition1Flags {
        theta4_nonzero: !tv.theta4.is_zero(),
        theta2_zero: tv.theta2.is_zero(),
        a3_in_mu,
        a3_noncube,
    }
}

pub fn check_condition_2(spec: &FieldSpec, t: &CoefficientTriple) -> Condition2Flags {
    let tv = thetas(spec, t);
    let c_value = trinomial_constant(spec, &tv);
    Condition2Flags {
        theta1_nonzero: !tv.theta1.is_zero(),
        theta2_nonzero: !tv.theta2.is_zero(),
        theta4_zero: tv.theta4.is_zero(),
        theta3_eq_theta2_pow: theta2_pow_2q_minus_1(spec, tv.theta2) == Some(tv.theta3),
        trinomial_rootfree: c_value.is_some_and(|c| spec.solve_cubic_trinomial(c).is_empty()),
        c_value,
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Branch {
    Condition1,
    Condition2,
    Degenerate,
    None,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Clauses {
    pub theta4_nonzero: bool,
    pub theta2_zero: bool,
    pub a3_in_mu: bool,
    pub a3_noncube: bool,
    pub theta1_nonzero: bool,
    pub theta3_eq_theta2_pow: bool,
    pub trinomial_rootfree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub branch: Branch,
    pub clauses: Clauses,
    pub c_value: Option<BaseElem>,
    pub notes: Vec<String>,
}

pub const NOTE_VACUOUS_CONDITION_1: &str = "condition 1 vacuous: 3 does not divide q+1";
pub const NOTE_EXCLUDED_VALUE_UNDEFINED: &str =
    "1 + a1 + a2 + a3 = 0: excluded image value (1+a1+a2+a3)^(q-1) is undefined";

pub fn classify(spec: &FieldSpec, t: &CoefficientTriple) -> ConditionReport {
    let c1 = check_condition_1(spec, t);
    let c2 = check_condition_2(spec, t);
    let branch = if t.is_zero() {
        Branch::Degenerate
    } else if c1.holds() {
        Branch::Condition1
    } else if c2.holds() {
        Branch::Condition2
    } else {
        Branch::None
    };
    let mut notes = Vec::new();
    if (spec.q() + 1) % 3 != 0 {
        notes.push(NOTE_VACUOUS_CONDITION_1.to_string());
    }
    if crate::niho::excluded_value(spec, *t).is_none() {
        notes.push(NOTE_EXCLUDED_VALUE_UNDEFINED.to_string());
    }
    ConditionReport {
        branch,
        clauses: Clauses {
            theta4_nonzero: c1.theta4_nonzero,
            theta2_zero: c1.theta2_zero,
            a3_in_mu: c1.a3_in_mu,
            a3_noncube: c1.a3_noncube,
            theta1_nonzero: c2.theta1_nonzero,
            theta3_eq_theta2_pow: c2.theta3_eq_theta2_pow,
            trinomial_rootfree: c2.trinomial_rootfree,
        },
        c_value: c2.c_value,
        notes,
    }
}

/// Roots in GF(q) of `θ1 + z + z^3 / θ2^(q+1)`.
pub fn z_cubic_roots(spec: &FieldSpec, tv: &ThetaVector) -> Result<Vec<BaseElem>> {
    let n = spec.norm(tv.theta2);
    if n.is_zero() {
        return Err(Error::Theta2Zero);
    }
    let n_inv = spec.inv(n)?;
    Ok(spec
        .base_elements()
        .filter(|&z| {
            let z3 = spec.mul(spec.square(z), z);
            spec.add(spec.add(tv.theta1, z), spec.mul(z3, n_inv)).is_zero()
        })
        .collect())
}

/// Whether the z-cubic and the trinomial `x^3 + x + θ1^2/θ2^(q+1)` agree on
/// having a root in GF(q).
pub fn zroots_equivalence(spec: &FieldSpec, tv: &ThetaVector) -> Result<bool> {
    let z_has_root = !z_cubic_roots(spec, tv)?.is_empty();
    let c = trinomial_constant(spec, tv).ok_or(Error::Theta2Zero)?;
    let trin_has_root = !spec.solve_cubic_trinomial(c).is_empty();
    Ok(z_has_root == trin_has_root)
}
