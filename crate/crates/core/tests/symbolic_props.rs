//! Ring laws and elimination routines of the symbolic engine, checked against
//! evaluation over GF(2^16).

use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nihoquad::field::FieldSpec;
use nihoquad::symbolic::check::{eval, random_point, resultant_agrees, CHECK_FIELD_DEGREE};
use nihoquad::symbolic::{
    divides, exact_div, find_coefficients2, rational_substitution, resultant, substitution, Monomial,
    SparsePoly, VarId,
};

/// A handful of variables keeps products small.
const VARS: [VarId; 5] = [VarId::X, VarId::Y, VarId::A, VarId::B, VarId::C];

fn monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0u8..3, VARS.len()).prop_map(|es| {
        VARS.iter().zip(es).fold(Monomial::ONE, |m, (&v, e)| m.with_exp(v, e))
    })
}

fn poly() -> impl Strategy<Value = SparsePoly> {
    proptest::collection::vec(monomial(), 0..6).prop_map(SparsePoly::from_monomials)
}

fn check_field() -> &'static FieldSpec {
    static F: OnceLock<FieldSpec> = OnceLock::new();
    F.get_or_init(|| FieldSpec::new(CHECK_FIELD_DEGREE).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert!(p.add(&p).is_zero());
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.square(), p.mul(&p));
        // squaring is additive in characteristic 2
        prop_assert_eq!(p.add(&q).square(), p.square().add(&q.square()));
    }

    #[test]
    fn evaluation_is_a_ring_map(p in poly(), q in poly(), seed in any::<u64>()) {
        let f = check_field();
        let pt = random_point(f, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(eval(f, &p.add(&q), &pt), eval(f, &p, &pt) + eval(f, &q, &pt));
        prop_assert_eq!(eval(f, &p.mul(&q), &pt), f.mul(eval(f, &p, &pt), eval(f, &q, &pt)));
    }

    #[test]
    fn exact_division_inverts_multiplication(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        let pq = p.mul(&q);
        prop_assert_eq!(exact_div(&pq, &q).unwrap(), p);
        prop_assert!(divides(&q, &pq).unwrap());
    }

    #[test]
    fn resultant_matches_numeric_sylvester(p in poly(), q in poly(), seed in any::<u64>()) {
        let v = VarId::X;
        prop_assume!(p.degree_in(v).unwrap_or(0) + q.degree_in(v).unwrap_or(0) > 0);
        let r = resultant(&p, &q, v).unwrap();
        prop_assert!(!r.contains_var(v));
        let f = check_field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..3 {
            let pt = random_point(f, &mut rng);
            prop_assert!(resultant_agrees(f, &p, &q, v, &r, &pt));
        }
    }

    #[test]
    fn common_factor_kills_the_resultant(p in poly(), q in poly(), s in poly()) {
        let v = VarId::X;
        prop_assume!(s.degree_in(v).unwrap_or(0) > 0);
        prop_assume!(!p.is_zero() && !q.is_zero());
        prop_assert!(resultant(&p.mul(&s), &q.mul(&s), v).unwrap().is_zero());
    }

    #[test]
    fn substitution_reaches_a_normal_form(p in poly()) {
        // x^2 -> x + a: afterwards no term has x-degree 2 or more
        let rule = Monomial::var(VarId::X, 2);
        let rhs = SparsePoly::var(VarId::X).add(&SparsePoly::var(VarId::A));
        let out = substitution(&p, &rule, &rhs).unwrap();
        prop_assert!(out.degree_in(VarId::X).unwrap_or(0) <= 1);
        // and agrees with p at points where the rule holds
        let f = check_field();
        let mut pt = random_point(f, &mut ChaCha8Rng::seed_from_u64(p.len() as u64));
        let xv = pt[VarId::X.index()];
        pt[VarId::A.index()] = f.add(f.square(xv), xv);
        prop_assert_eq!(eval(f, &out, &pt), eval(f, &p, &pt));
    }

    #[test]
    fn rational_substitution_clears_denominators(p in poly(), seed in any::<u64>()) {
        // p(x) with x -> (y + a) / (y + b): result = (y+b)^d p((y+a)/(y+b))
        let x = VarId::X;
        prop_assume!(p.degree_in(x).unwrap_or(0) > 0);
        let num = SparsePoly::var(VarId::Y).add(&SparsePoly::var(VarId::A));
        let den = SparsePoly::var(VarId::Y).add(&SparsePoly::var(VarId::B));
        let d = p.degree_in(x).unwrap() as u32;
        let out = rational_substitution(&p, x, &num, &den, &den.pow(d)).unwrap();
        let f = check_field();
        let mut pt = random_point(f, &mut ChaCha8Rng::seed_from_u64(seed));
        let (n, dv) = (eval(f, &num, &pt), eval(f, &den, &pt));
        prop_assume!(!dv.is_zero());
        let out_val = eval(f, &out, &pt);
        pt[x.index()] = f.div(n, dv).unwrap();
        prop_assert_eq!(out_val, f.mul(f.pow(dv, d as u64), eval(f, &p, &pt)));
    }

    #[test]
    fn coefficient_sets_are_free_of_x_and_y(p in poly()) {
        let set = find_coefficients2(&p, VarId::X, VarId::Y);
        for c in &set {
            prop_assert!(!c.contains_var(VarId::X) && !c.contains_var(VarId::Y));
            prop_assert!(!c.is_zero());
        }
        prop_assert!(set.len() <= p.len());
        prop_assert_eq!(set.is_empty(), p.is_zero());
    }
}

#[test]
fn parse_and_display_round_trip() {
    use nihoquad::symbolic::script::parse_expr;
    use nihoquad::symbolic::Runner;
    let runner = Runner::new();
    let p = runner.eval(&parse_expr("(x + i*k)^3 + ma*t4^2 + 1").unwrap()).unwrap();
    let q = runner.eval(&parse_expr(&p.to_string()).unwrap()).unwrap();
    assert_eq!(p, q);
    // the field degree is not a ring variable; the cubic coefficient is `ma`
    assert!(parse_expr("m + 1").and_then(|e| runner.eval(&e)).is_err());
}
