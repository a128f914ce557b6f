//! GF(2^m) and its quadratic extension: tables, Frobenius, norm, the subgroup of order q+1.

use nihoquad::field::FieldSpec;

fn main() -> nihoquad::Result<()> {
    let f = FieldSpec::new(5)?;
    println!("m={} q={} modulus={:#x} k={}", f.m(), f.q(), f.modulus(), f.k());

    let x = f.ext(0b10110, 0b00111);
    let y = f.ext(3, 1);
    println!("x = {x}, y = {y}");
    println!("x + y = {}", f.ext_add(x, y));
    println!("x * y = {}", f.ext_mul(x, y));
    println!("x / y = {}", f.ext_div(x, y)?);
    println!("x^q = {}  (x^q)^q = x: {}", f.frobenius(x), f.frobenius(f.frobenius(x)) == x);
    println!("N(x) = x^(q+1) = {}", f.norm(x));

    // x^(q-1) always has norm 1
    let u = f.ext_pow(x, f.q() - 1);
    println!("u = x^(q-1) = {u}, in subgroup: {}", f.in_mu(u));

    let g = f.mu_generator();
    println!("subgroup generator {g} has order {}", f.ext_order(g));
    let cubes = f.mu_elements().into_iter().filter(|&a| f.is_cube_in_mu(a).unwrap()).count();
    println!("{cubes} of {} subgroup elements are cubes", f.q() + 1);

    // an explicit tower: x^3 + x^2 + 1 with i^2 = i + 2
    let alt = FieldSpec::with_params(3, 0xd, 2)?;
    println!("alternative tower m=3: i^2 = {}", alt.ext_square(nihoquad::field::ExtElem::I));
    Ok(())
}
