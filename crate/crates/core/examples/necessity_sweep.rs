//! A seeded random sweep at m = 9, reproducible from (m, count, seed), plus
//! the one family of permutations that neither condition covers.

use nihoquad::field::FieldSpec;
use nihoquad::niho::CoefficientTriple;
use nihoquad::sweep::{evaluate, run_sweep, PpOracle, SweepConfig};

fn main() -> nihoquad::Result<()> {
    let f = FieldSpec::new(9)?;
    let cfg = SweepConfig::random(9, 20_000, 42);
    let mut sink = Vec::new();
    let summary = run_sweep(&f, &cfg, &mut sink)?;
    println!("{summary}");
    let first = String::from_utf8_lossy(&sink);
    println!("first record: {}", first.lines().next().unwrap_or(""));

    // x + a2 x^q is linear over GF(q) and bijective when N(a2) != 1
    let binomial = CoefficientTriple::new(Default::default(), f.ext(3, 1), Default::default());
    let r = evaluate(&f, PpOracle::Mu, 0, binomial);
    println!(
        "binomial {}: pp={} branch={:?} necessity exception={}",
        binomial.a2,
        r.pp(),
        r.branch,
        r.necessity_exception()
    );
    Ok(())
}
