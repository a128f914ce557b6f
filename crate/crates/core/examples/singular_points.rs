//! Singular points of D: closed forms checked against enumeration.

use nihoquad::conditions::thetas;
use nihoquad::curves::{
    expected_triple_point_form, singular_points_d, tangent_form_at_singular_point, Derivation,
};
use nihoquad::field::{ExtElem, FieldSpec};
use nihoquad::niho::CoefficientTriple;
use nihoquad::witness::{condition2_candidate, solve_for_thetas};

fn compare(f: &FieldSpec, label: &str, t: CoefficientTriple) -> nihoquad::Result<()> {
    let tv = thetas(f, &t);
    let closed = singular_points_d(f, &tv, Derivation::ClosedForm)?;
    let brute = singular_points_d(f, &tv, Derivation::BruteForce)?;
    println!("{label}: {} point(s), closed form == enumeration: {}", closed.points.len(), closed.points == brute.points);
    for p in &closed.points {
        println!("  ({}, {}) {:?}", p.u, p.v, p.multiplicity);
    }
    Ok(())
}

fn main() -> nihoquad::Result<()> {
    let f = FieldSpec::new(3)?;
    let cube = f.ext_pow(f.mu_generator(), 3);
    compare(&f, "θ2 = 0, cube a3", CoefficientTriple::new(ExtElem::ZERO, ExtElem::ZERO, cube))?;
    compare(&f, "θ2 = 0, non-cube a3", CoefficientTriple::new(ExtElem::ZERO, ExtElem::ZERO, f.mu_generator()))?;

    // θ4 = 0 off the triple-point curve: θ3 of norm θ2's norm, not θ2^(2q-1)
    let theta2 = f.ext(1, 1);
    let target = f.norm(theta2);
    let theta3 = f
        .ext_elements()
        .find(|&x| f.norm(x) == target && Some(x) != nihoquad::conditions::theta2_pow_2q_minus_1(&f, theta2))
        .expect("another element of that norm");
    if let Some(t) = solve_for_thetas(&f, theta2, theta3, f.ext(2, 3)) {
        compare(&f, "θ4 = 0, double point", t)?;
    }

    if let Some(t) = condition2_candidate(&f, theta2, f.ext(2, 3)) {
        compare(&f, "triple point", t)?;
        let tv = thetas(&f, &t);
        let cone = tangent_form_at_singular_point(&f, &tv)?;
        println!("  tangent cone matches prediction: {}", cone.eq_up_to_unit(&f, &expected_triple_point_form(&f, &tv)));
    }
    Ok(())
}
