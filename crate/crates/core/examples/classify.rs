//! θ-invariants, the two sufficient conditions, and witness families for each.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nihoquad::conditions::{classify, thetas};
use nihoquad::field::FieldSpec;
use nihoquad::niho::{is_pp_via_mu, CoefficientTriple};
use nihoquad::witness::{condition1_triples, random_condition2};

fn show(f: &FieldSpec, label: &str, t: CoefficientTriple) {
    let tv = thetas(f, &t);
    let r = classify(f, &t);
    println!("{label}: a=({}, {}, {})", t.a1, t.a2, t.a3);
    println!(
        "  θ1={} θ2={} θ3={} θ4={}  norm identity: {}",
        tv.theta1,
        tv.theta2,
        tv.theta3,
        tv.theta4,
        tv.satisfies_norm_identity(f)
    );
    println!("  branch={:?} pp={} clauses={:?}", r.branch, is_pp_via_mu(f, t), r.clauses);
    for n in &r.notes {
        println!("  note: {n}");
    }
}

fn main() -> nihoquad::Result<()> {
    // m odd, so 3 | q+1 and the first condition can hold
    let f = FieldSpec::new(5)?;
    let c1 = condition1_triples(&f);
    println!("{} triples from the first family at m=5", c1.len());
    show(&f, "first", c1[c1.len() / 2]);

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let c2 = random_condition2(&f, &mut rng, 1);
    show(&f, "second", c2[0]);

    show(&f, "generic", CoefficientTriple::new(f.ext(1, 2), f.ext(3, 4), f.ext(5, 6)));
    show(&f, "zero", CoefficientTriple::zero());
    Ok(())
}
