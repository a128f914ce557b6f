//! Random specialization cross-check for symbolic resultants.
//!
//! All variables except the eliminated one are replaced by random elements of
//! GF(2^16); the specialized symbolic resultant must equal the determinant of
//! the numeric Sylvester matrix built with the *formal* degrees of the inputs.

use rand::Rng;

use super::algo::sylvester_from_coeffs;
use super::poly::{SparsePoly, VarId, NVARS};
use crate::field::{BaseElem, FieldSpec};

pub const CHECK_FIELD_DEGREE: u32 = 16;

pub fn eval(spec: &FieldSpec, p: &SparsePoly, point: &[BaseElem; NVARS]) -> BaseElem {
    p.eval_with(point, BaseElem::ZERO, BaseElem::ONE, |a, b| a + b, |a, b| spec.mul(a, b))
}

pub fn random_point<R: Rng + ?Sized>(spec: &FieldSpec, rng: &mut R) -> [BaseElem; NVARS] {
    let q = spec.q();
    std::array::from_fn(|_| BaseElem(rng.gen_range(0..q as u32)))
}

/// Determinant over the base field by Gaussian elimination.
pub fn det(spec: &FieldSpec, mut a: Vec<Vec<BaseElem>>) -> BaseElem {
    let n = a.len();
    let mut acc = BaseElem::ONE;
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BaseElem::ZERO;
        };
        a.swap(k, r);
        let piv = a[k][k];
        acc = spec.mul(acc, piv);
        let inv = spec.inv(piv).expect("nonzero pivot");
        for i in k + 1..n {
            let f = spec.mul(a[i][k], inv);
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let t = spec.mul(f, a[k][j]);
                a[i][j] = a[i][j] + t;
            }
        }
    }
    acc
}

/// Evaluates `p` and `q` at `point` (the `v` coordinate is ignored) and
/// compares the numeric resultant with `res` evaluated at the same point.
pub fn resultant_agrees(
    spec: &FieldSpec,
    p: &SparsePoly,
    q: &SparsePoly,
    v: VarId,
    res: &SparsePoly,
    point: &[BaseElem; NVARS],
) -> bool {
    let expected = eval(spec, res, point);
    if p.is_zero() || q.is_zero() {
        return expected.is_zero();
    }
    let pc: Vec<BaseElem> = p.coefficients_in(v).iter().map(|c| eval(spec, c, point)).collect();
    let qc: Vec<BaseElem> = q.coefficients_in(v).iter().map(|c| eval(spec, c, point)).collect();
    let numeric = det(spec, sylvester_from_coeffs(&pc, &qc));
    numeric == expected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::algo::resultant;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cubic_against_quadratic() {
        let spec = FieldSpec::new(CHECK_FIELD_DEGREE).unwrap();
        let (x, a, b) = (SparsePoly::var(VarId::X), SparsePoly::var(VarId::A), SparsePoly::var(VarId::B));
        let p = x.pow(3).add(&a.mul(&x)).add(&b);
        let q = b.mul(&x.pow(2)).add(&a).add(&SparsePoly::one());
        let r = resultant(&p, &q, VarId::X).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let pt = random_point(&spec, &mut rng);
            assert!(resultant_agrees(&spec, &p, &q, VarId::X, &r, &pt));
        }
        // a wrong answer is caught
        let wrong = r.add(&a);
        let pt = random_point(&spec, &mut rng);
        assert!(!resultant_agrees(&spec, &p, &q, VarId::X, &wrong, &pt));
    }
}
