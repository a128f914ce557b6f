//! Constructions of coefficient triples with prescribed invariants.
//!
//! Condition-2 style triples are built backwards: given `θ2`, `θ3` and `a2`
//! with `a2^(q+1) != 1`, the system
//!
//! ```text
//! a1^q + a2^q a3 = θ2
//! a2 a1^q +   a3 = θ3
//! ```
//!
//! is linear in `(a1^q, a3)` with determinant `θ4' = 1 + a2^(q+1)`.

use rand::Rng;

use crate::conditions::{classify, theta2_pow_2q_minus_1, thetas, Branch};
use crate::field::{BaseElem, ExtElem, FieldSpec};
use crate::niho::CoefficientTriple;

pub fn random_ext<R: Rng + ?Sized>(spec: &FieldSpec, rng: &mut R) -> ExtElem {
    let q = spec.q() as u32;
    spec.ext(rng.gen_range(0..q), rng.gen_range(0..q))
}

pub fn random_nonzero_ext<R: Rng + ?Sized>(spec: &FieldSpec, rng: &mut R) -> ExtElem {
    loop {
        let x = random_ext(spec, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_triple<R: Rng + ?Sized>(spec: &FieldSpec, rng: &mut R) -> CoefficientTriple {
    CoefficientTriple::new(random_ext(spec, rng), random_ext(spec, rng), random_ext(spec, rng))
}

/// Every triple with `θ2 = 0`, `θ4 != 0` and `a3` a non-cube of norm 1:
/// `a1 = a3^q a2` with `a2^(q+1) != 1`. Empty when 3 does not divide q+1.
pub fn condition1_triples(spec: &FieldSpec) -> Vec<CoefficientTriple> {
    let noncubes: Vec<ExtElem> = spec
        .mu_elements()
        .into_iter()
        .filter(|&a| !spec.is_cube_in_mu(a).expect("norm 1"))
        .collect();
    let mut out = Vec::new();
    for &a3 in &noncubes {
        let a3q = spec.frobenius(a3);
        for a2 in spec.ext_elements() {
            if spec.norm(a2) == BaseElem::ONE {
                continue;
            }
            out.push(CoefficientTriple::new(spec.ext_mul(a3q, a2), a2, a3));
        }
    }
    out
}

/// The `a1 = a2 = 0` family of condition-1 triples.
pub fn condition1_monomial_family(spec: &FieldSpec) -> Vec<CoefficientTriple> {
    spec.mu_elements()
        .into_iter()
        .filter(|&a| !spec.is_cube_in_mu(a).expect("norm 1"))
        .map(|a3| CoefficientTriple::new(ExtElem::ZERO, ExtElem::ZERO, a3))
        .collect()
}

/// Solves for `(a1, a3)` given `θ2`, `θ3` and `a2`; `None` when `a2` has norm 1.
pub fn solve_for_thetas(
    spec: &FieldSpec,
    theta2: ExtElem,
    theta3: ExtElem,
    a2: ExtElem,
) -> Option<CoefficientTriple> {
    let det = spec.add(BaseElem::ONE, spec.norm(a2));
    let det_inv = spec.inv(det).ok()?;
    let a2q = spec.frobenius(a2);
    let a1q = spec.ext_scale(det_inv, spec.ext_add(theta2, spec.ext_mul(a2q, theta3)));
    let a3 = spec.ext_scale(det_inv, spec.ext_add(theta3, spec.ext_mul(a2, theta2)));
    let t = CoefficientTriple::new(spec.frobenius(a1q), a2, a3);
    debug_assert_eq!(thetas(spec, &t).theta2, theta2);
    debug_assert_eq!(thetas(spec, &t).theta3, theta3);
    Some(t)
}

/// A triple with `θ3 = θ2^(2q-1)` (hence `θ4 = 0`, `θ1 = θ4' != 0`).
pub fn condition2_candidate(
    spec: &FieldSpec,
    theta2: ExtElem,
    a2: ExtElem,
) -> Option<CoefficientTriple> {
    let theta3 = theta2_pow_2q_minus_1(spec, theta2)?;
    solve_for_thetas(spec, theta2, theta3, a2)
}

/// Draws reverse-constructed candidates until `count` of them satisfy
/// condition 2 (the trinomial clause is decided by the draw).
pub fn random_condition2<R: Rng + ?Sized>(
    spec: &FieldSpec,
    rng: &mut R,
    count: usize,
) -> Vec<CoefficientTriple> {
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count && attempts < 1000 * count.max(1) {
        attempts += 1;
        let theta2 = random_nonzero_ext(spec, rng);
        let a2 = random_ext(spec, rng);
        if let Some(t) = condition2_candidate(spec, theta2, a2) {
            if classify(spec, &t).branch == Branch::Condition2 {
                out.push(t);
            }
        }
    }
    out
}

/// A triple with `θ2 != 0`, `θ4 = 0`, `θ1 = 0` and `θ3 = θ2^(2q-1)`:
/// `a2 = θ2^(2(q-1))`, then a scan over `a3` for `a1^(q+1) = a3^(q+1)`.
pub fn theta1_zero_instance(spec: &FieldSpec, theta2: ExtElem) -> Option<CoefficientTriple> {
    if theta2.is_zero() {
        return None;
    }
    let target = theta2_pow_2q_minus_1(spec, theta2)?;
    let a2 = spec.ext_pow(theta2, 2 * (spec.q() - 1));
    let a2q = spec.frobenius(a2);
    spec.ext_elements().find_map(|a3| {
        let a1 = spec.frobenius(spec.ext_add(theta2, spec.ext_mul(a3, a2q)));
        let t = CoefficientTriple::new(a1, a2, a3);
        let tv = thetas(spec, &t);
        (tv.theta1.is_zero()
            && tv.theta4.is_zero()
            && tv.theta2 == theta2
            && tv.theta3 == target)
            .then_some(t)
    })
}

/// A triple with `θ3 = θ2^(2q-1)` whose z-cubic `θ1 + z + z^3/θ2^(q+1)` has the
/// prescribed root `z1` in GF(q). Returns `None` if that forces `θ1 = 0`.
pub fn conic_instance(
    spec: &FieldSpec,
    theta2: ExtElem,
    z1: BaseElem,
) -> Option<CoefficientTriple> {
    let n = spec.norm(theta2);
    let z1_cubed = spec.mul(spec.square(z1), z1);
    let theta1 = spec.add(z1, spec.div(z1_cubed, n).ok()?);
    if theta1.is_zero() {
        return None;
    }
    let wanted = spec.add(BaseElem::ONE, theta1);
    let a2 = spec.ext_elements().find(|&a| spec.norm(a) == wanted)?;
    let t = condition2_candidate(spec, theta2, a2)?;
    debug_assert_eq!(thetas(spec, &t).theta1, theta1);
    Some(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::z_cubic_roots;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn condition1_sizes_m3() {
        let f = FieldSpec::new(3).unwrap();
        assert_eq!(condition1_monomial_family(&f).len(), 6);
        // 6 non-cubes times the 55 elements of norm != 1
        assert_eq!(condition1_triples(&f).len(), 6 * 55);
        assert!(condition1_triples(&FieldSpec::new(4).unwrap()).is_empty());
    }

    #[test]
    fn condition2_candidates_have_theta4_zero() {
        let f = FieldSpec::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let theta2 = random_nonzero_ext(&f, &mut rng);
            let a2 = random_ext(&f, &mut rng);
            if let Some(t) = condition2_candidate(&f, theta2, a2) {
                let tv = thetas(&f, &t);
                assert!(tv.theta4.is_zero());
                assert!(!tv.theta1.is_zero());
            }
        }
    }

    #[test]
    fn special_instances_m3() {
        let f = FieldSpec::new(3).unwrap();
        let mut found_t1 = false;
        for theta2 in f.ext_elements().skip(1) {
            if let Some(t) = theta1_zero_instance(&f, theta2) {
                assert!(thetas(&f, &t).theta1.is_zero());
                found_t1 = true;
                break;
            }
        }
        assert!(found_t1);
        let theta2 = f.ext(3, 5);
        let z1 = f.base(2);
        let t = conic_instance(&f, theta2, z1).unwrap();
        assert!(z_cubic_roots(&f, &thetas(&f, &t)).unwrap().contains(&z1));
    }
}
