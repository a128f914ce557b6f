//! The curves behind the permutation criterion and the ways they split.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nihoquad::conditions::thetas;
use nihoquad::curves::{
    build_curve_c, build_curve_d, verify_quotient_relation, verify_split_cfact, verify_split_conics,
    verify_split_dec_d, verify_split_t1zero,
};
use nihoquad::field::FieldSpec;
use nihoquad::witness::{conic_instance, random_nonzero_ext, random_triple, theta1_zero_instance};

fn main() -> nihoquad::Result<()> {
    let f = FieldSpec::new(3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let tv = thetas(&f, &random_triple(&f, &mut rng));
    let c = build_curve_c(&f, &tv);
    let d = build_curve_d(&f, &tv);
    println!("C has {} terms, D has {} terms", c.terms().count(), d.terms().count());
    println!("C(X,Y) = D(X+Y, XY): {}", verify_quotient_relation(&f, &tv)?);

    // θ2 = 0 with a3 a cube in the subgroup: D is three lines, C six
    let cube = f.ext_pow(f.mu_generator(), 3);
    println!("a3 = {cube}: D is a product of three lines: {}", verify_split_dec_d(&f, cube)?);
    println!("a3 = {cube}: C is a product of six lines: {}", verify_split_cfact(&f, cube)?.holds());

    // θ1 = 0 on the triple-point curve: a line times a conic
    let theta2 = random_nonzero_ext(&f, &mut rng);
    if let Some(t) = theta1_zero_instance(&f, theta2) {
        let s = verify_split_t1zero(&f, &thetas(&f, &t))?;
        println!("θ1 = 0: line * conic: {}", s.holds());
    }

    // a root z1 of the z-cubic gives two conics
    let z1 = f.base(3);
    if let Some(t) = conic_instance(&f, theta2, z1) {
        let s = verify_split_conics(&f, &thetas(&f, &t), z1)?;
        println!("z1 = {z1}: conic pair: {} (z = {}, {}, {})", s.holds(), s.z[0], s.z[1], s.z[2]);
    }
    Ok(())
}
