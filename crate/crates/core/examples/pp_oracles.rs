//! Two permutation tests for f(x) = x + a1 x^d1 + a2 x^q + a3 x^d3: a full
//! scan of GF(q^2), and the reduction to a map on the norm-1 subgroup.

use std::time::Instant;

use nihoquad::field::FieldSpec;
use nihoquad::niho::{exponents, is_pp_exhaustive, is_pp_via_mu, CoefficientTriple};
use nihoquad::witness::condition1_monomial_family;

fn main() -> nihoquad::Result<()> {
    let f = FieldSpec::new(5)?;
    let e = exponents(&f);
    println!("m=5 exponents d1={} d2={} d3={}", e.d1, e.d2, e.d3);

    let mut examples = condition1_monomial_family(&f);
    examples.truncate(2);
    examples.push(CoefficientTriple::new(f.ext(1, 0), f.ext(2, 3), f.ext(7, 9)));
    for t in examples {
        let t0 = Instant::now();
        let slow = is_pp_exhaustive(&f, t)?;
        let t_slow = t0.elapsed();
        let t0 = Instant::now();
        let fast = is_pp_via_mu(&f, t);
        let t_fast = t0.elapsed();
        println!("a=({}, {}, {})\n  exhaustive={slow} ({t_slow:?})  subgroup={fast} ({t_fast:?})", t.a1, t.a2, t.a3);
    }
    Ok(())
}
