use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nihoquad::bivar::BivarPoly;
use nihoquad::conditions::thetas;
use nihoquad::curves::{
    build_curve_c, build_curve_d, mu_square_points, t1zero_conic_from_partial, verify_quotient_relation,
    verify_split_cfact, verify_split_dec_d, verify_split_t1zero,
};
use nihoquad::field::{ExtElem, FieldSpec};
use nihoquad::niho::{is_pp_via_mu, CoefficientTriple};
use nihoquad::witness::{random_triple, theta1_zero_instance};
use nihoquad::Error;

#[test]
fn quotient_relation_for_random_invariants() {
    for m in 2..=6 {
        let f = FieldSpec::new(m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(30 + m as u64);
        for _ in 0..50 {
            let tv = thetas(&f, &random_triple(&f, &mut rng));
            assert!(verify_quotient_relation(&f, &tv).unwrap());
        }
    }
}

#[test]
fn curve_c_points_decide_permutation() {
    // p permutes the subgroup iff C has no subgroup point off X = Y,
    // whenever p has no pole there
    let f = FieldSpec::new(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for _ in 0..400 {
        let t = random_triple(&f, &mut rng);
        let den_vanishes = f.mu_elements().into_iter().any(|x| {
            let x3 = f.ext_mul(f.ext_square(x), x);
            let d = f.ext_add(
                f.ext_add(f.ext_mul(t.a2, f.ext_square(f.ext_square(x))), f.ext_mul(t.a3, x3)),
                f.ext_add(f.ext_mul(t.a1, x), ExtElem::ONE),
            );
            d.is_zero()
        });
        if den_vanishes {
            continue;
        }
        let pts = mu_square_points(&f, &build_curve_c(&f, &thetas(&f, &t))).unwrap();
        assert_eq!(pts.is_empty(), is_pp_via_mu(&f, t), "{t:?}");
        checked += 1;
    }
    assert!(checked > 100);
}

#[test]
fn split_verifiers_refuse_bad_input() {
    let f3 = FieldSpec::new(3).unwrap();
    let noncube = f3.mu_generator();
    assert!(matches!(verify_split_dec_d(&f3, noncube), Err(Error::Precondition(_))));
    assert_eq!(verify_split_cfact(&f3, f3.ext(2, 0)), Err(Error::NotInMu));
    let f4 = FieldSpec::new(4).unwrap();
    assert!(verify_split_dec_d(&f4, ExtElem::ONE).is_err());
    let tv = thetas(&f3, &CoefficientTriple::zero());
    assert_eq!(verify_split_t1zero(&f3, &tv), Err(Error::Theta2Zero));
}

#[test]
fn t1zero_conic_is_the_v_derivative() {
    let f = FieldSpec::new(3).unwrap();
    let mut n = 0;
    for theta2 in f.ext_elements().skip(1) {
        let Some(t) = theta1_zero_instance(&f, theta2) else { continue };
        let tv = thetas(&f, &t);
        let conic = t1zero_conic_from_partial(&f, &tv).unwrap();
        let line = BivarPoly::from_terms(&[(0, 0, tv.theta2), (0, 1, f.frobenius(tv.theta2))]);
        assert!(line.mul(&f, &conic).unwrap().eq_up_to_unit(&f, &build_curve_d(&f, &tv)));
        n += 1;
    }
    assert!(n > 0);
}

#[test]
fn symmetric_curves() {
    let f = FieldSpec::new(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let c = build_curve_c(&f, &thetas(&f, &random_triple(&f, &mut rng)));
        assert_eq!(c.swap(), c);
    }
}
