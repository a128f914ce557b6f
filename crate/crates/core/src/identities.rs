//! Randomized checks of the exact polynomial identities tying the invariants,
//! the curves and the symbolic engine together.

use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bivar::BivarPoly;
use crate::conditions::thetas;
use crate::curves::{build_curve_h, gamma_table, verify_numerator_identity, verify_quotient_relation, HParams};
use crate::error::{Error, Result};
use crate::field::{BaseElem, ExtElem, FieldSpec};
use crate::niho::CoefficientTriple;
use crate::symbolic::check::eval;
use crate::symbolic::corpus::{self, PRELUDE};
use crate::symbolic::{run_script, ScriptReport, SparsePoly, VarId, NVARS};
use crate::witness::random_triple;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityTally {
    pub name: &'static str,
    pub checked: u64,
    pub passed: u64,
}

impl IdentityTally {
    pub fn holds(&self) -> bool {
        self.checked > 0 && self.checked == self.passed
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub m: u32,
    pub count: u64,
    pub seed: u64,
    pub identities: Vec<IdentityTally>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagonal_script: Option<ScriptReport>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(IdentityTally::holds)
            && self.diagonal_script.as_ref().is_none_or(|r| r.passed)
    }
}

/// The symbolic curve `L(x, y)` with parameters C, D, E, F, k, t4, t1,
/// as produced by the proof-script prelude.
pub fn symbolic_curve() -> &'static SparsePoly {
    static CURVE: OnceLock<SparsePoly> = OnceLock::new();
    CURVE.get_or_init(|| {
        let (_, runner) = run_script("prelude", PRELUDE, 0).expect("prelude parses");
        runner.poly("Curve").expect("prelude defines Curve").clone()
    })
}

/// Specializes the symbolic curve at the parameters of `h`, giving a
/// bivariate polynomial over GF(q).
pub fn specialize_curve(spec: &FieldSpec, curve: &SparsePoly, h: &HParams) -> BivarPoly {
    let mut point = [BaseElem::ZERO; NVARS];
    for (v, val) in [
        (VarId::C, h.c),
        (VarId::D, h.d),
        (VarId::E, h.e),
        (VarId::F, h.f),
        (VarId::K, h.k),
        (VarId::T4, h.theta4),
        (VarId::T1, h.theta1),
    ] {
        point[v.index()] = val;
    }
    let mut out = BivarPoly::zero();
    for (i, cx) in curve.coefficients_in(VarId::X).iter().enumerate() {
        for (j, cxy) in cx.coefficients_in(VarId::Y).iter().enumerate() {
            let c = eval(spec, cxy, &point);
            if !c.is_zero() {
                out.set(i, j, ExtElem::from_base(c));
            }
        }
    }
    out
}

/// Checks every identity on `count` seeded random triples. With
/// `with_diagonal`, also replays the diagonal proof script.
pub fn verify_identities(spec: &FieldSpec, count: u64, seed: u64, with_diagonal: bool) -> Result<IdentityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = ["theta_norm", "quotient", "numerator", "h_transform", "gamma_symmetric", "symbolic_curve"];
    let mut tallies: Vec<IdentityTally> =
        names.iter().map(|&name| IdentityTally { name, ..Default::default() }).collect();
    let curve = symbolic_curve();
    for _ in 0..count {
        let t: CoefficientTriple = random_triple(spec, &mut rng);
        let tv = thetas(spec, &t);
        let h = HParams::from_thetas(spec, &tv);
        let gamma = gamma_table(spec, &h);
        let results = [
            tv.satisfies_norm_identity(spec),
            verify_quotient_relation(spec, &tv)?,
            verify_numerator_identity(spec, &t)?,
            build_curve_h(spec, &h, Some(&t))?.constructions_agree(),
            gamma.is_symmetric(),
            specialize_curve(spec, curve, &h) == gamma.to_poly(),
        ];
        for (tally, ok) in tallies.iter_mut().zip(results) {
            tally.checked += 1;
            tally.passed += ok as u64;
        }
    }
    let diagonal_script = if with_diagonal {
        Some(corpus::prove("diagonal", seed)?)
    } else {
        None
    };
    if count == 0 && !with_diagonal {
        return Err(Error::Precondition("nothing to check".into()));
    }
    Ok(IdentityReport { m: spec.m(), count, seed, identities: tallies, diagonal_script })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold_at_small_m() {
        for m in [2, 3, 4] {
            let f = FieldSpec::new(m).unwrap();
            let r = verify_identities(&f, 20, m as u64, false).unwrap();
            for t in &r.identities {
                assert!(t.holds(), "m={m}: {t:?}");
            }
        }
    }

    #[test]
    fn specialized_curve_detects_wrong_parameters() {
        let f = FieldSpec::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let t = random_triple(&f, &mut rng);
        let mut h = HParams::from_thetas(&f, &thetas(&f, &t));
        let good = gamma_table(&f, &h).to_poly();
        h.theta1 = f.add(h.theta1, BaseElem::ONE);
        assert_ne!(specialize_curve(&f, symbolic_curve(), &h), good);
    }
}
