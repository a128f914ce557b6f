//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines always print.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nihoquad::conditions::{classify, theta2_pow_2q_minus_1, thetas, Branch};
use nihoquad::curves::{
    build_curve_c, expected_triple_point_form, hasse_weil_ok, singular_alpha, singular_points_d_brute,
    singular_points_d_closed_form, tangent_form_at_singular_point, verify_split_cfact, verify_split_conics,
    verify_split_dec_d, verify_split_t1zero, Multiplicity,
};
use nihoquad::field::{BaseElem, ExtElem, FieldSpec};
use nihoquad::identities::verify_identities;
use nihoquad::niho::{is_pp_exhaustive, is_pp_via_mu, CoefficientTriple};
use nihoquad::sweep::{evaluate, sweep_records, PpOracle, SweepConfig};
use nihoquad::symbolic::corpus::{self, EntryKind};
use nihoquad::witness::{
    condition1_monomial_family, condition1_triples, condition2_candidate, conic_instance, random_condition2,
    random_ext, random_nonzero_ext, random_triple, solve_for_thetas, theta1_zero_instance,
};

/// Named boolean checks plus counts that must not depend on the tower.
#[derive(Default, Debug, PartialEq, Eq)]
struct Outcome {
    checks: Vec<(String, bool)>,
    facts: Vec<(String, u64)>,
}

impl Outcome {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    fn fact(&mut self, name: impl Into<String>, v: u64) {
        self.facts.push((name.into(), v));
    }

    fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|(_, ok)| *ok)
    }

    fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect()
    }
}

fn field(m: u32) -> FieldSpec {
    FieldSpec::new(m).expect("default tower")
}

/// The tower at m = 3 built on x^3 + x^2 + 1 with a tower constant other than 1.
fn alternative_tower() -> FieldSpec {
    let probe = FieldSpec::with_params(3, 0xd, 1).expect("trace(1) = 1 for odd m");
    let k = probe
        .base_elements()
        .find(|&x| x.bits() > 1 && probe.trace(x) == 1)
        .expect("another trace-1 element");
    FieldSpec::with_params(3, 0xd, k.bits()).expect("valid tower")
}

fn all_pp_exhaustive(f: &FieldSpec, ts: &[CoefficientTriple]) -> bool {
    ts.iter().all(|&t| is_pp_exhaustive(f, t).expect("small field"))
}

fn criterion_1(fields: &[FieldSpec]) -> Outcome {
    let mut o = Outcome::default();
    for f in fields {
        let m = f.m();
        if m == 3 {
            let mono = condition1_monomial_family(f);
            let full = condition1_triples(f);
            o.fact("cond1 monomial family", mono.len() as u64);
            o.fact("cond1 full set", full.len() as u64);
            o.check("cond1 monomial family has the 6 non-cubes", mono.len() == 6);
            o.check(
                "cond1 sets classify as Condition1",
                mono.iter().chain(&full).all(|t| classify(f, t).branch == Branch::Condition1),
            );
            o.check("cond1 monomial family permutes", all_pp_exhaustive(f, &mono));
            o.check("cond1 full set permutes", all_pp_exhaustive(f, &full));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(100 + m as u64);
        let c2 = random_condition2(f, &mut rng, 120);
        o.check(format!("m={m}: at least 100 Condition2 triples"), c2.len() >= 100);
        o.check(format!("m={m}: Condition2 triples permute"), all_pp_exhaustive(f, &c2));
    }
    o
}

fn criterion_2(fields: &[FieldSpec], per_field: usize) -> Outcome {
    let mut o = Outcome::default();
    for f in fields {
        let m = f.m();
        let mut rng = ChaCha8Rng::seed_from_u64(200 + m as u64);
        let disagreements = (0..per_field)
            .filter(|_| {
                let t = random_triple(f, &mut rng);
                is_pp_exhaustive(f, t).unwrap() != is_pp_via_mu(f, t)
            })
            .count();
        o.check(format!("m={m}: {per_field} random triples agree"), disagreements == 0);
        if m == 2 {
            // the whole coefficient cube GF(16)^3, which contains GF(4)^3
            let elems: Vec<ExtElem> = f.ext_elements().collect();
            let mut pps = 0u64;
            let mut bad = 0u64;
            for &a1 in &elems {
                for &a2 in &elems {
                    for &a3 in &elems {
                        let t = CoefficientTriple::new(a1, a2, a3);
                        let e = is_pp_exhaustive(f, t).unwrap();
                        pps += e as u64;
                        bad += (e != is_pp_via_mu(f, t)) as u64;
                    }
                }
            }
            o.fact("m=2 permutations in full cube", pps);
            o.check("m=2: full coefficient cube agrees", bad == 0);
        }
    }
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::default();
    let f = field(9);
    let (_, s) = sweep_records(&f, &SweepConfig::random(9, 100_000, 0x5eed)).expect("sweep");
    println!("    random sweep: {s}");
    o.check("random sweep has 100000 records", s.records == 100_000);
    o.check("random sweep: no sufficiency violation", s.sufficiency_violations == 0);
    o.check("random sweep: no necessity violation", s.necessity_violations() == 0);

    // Random triples almost never permute, so the strata where the
    // conditions live are sampled as well.
    let mut rng = ChaCha8Rng::seed_from_u64(0x9);
    let mu = f.mu_elements();
    let mut strata: Vec<CoefficientTriple> = Vec::new();
    // theta2 = 0: a1 = a3^q a2, a3 half from the subgroup, half anywhere
    for n in 0..3000 {
        let a3 = if n % 2 == 0 { mu[rng.gen_range(0..mu.len())] } else { random_ext(&f, &mut rng) };
        let a2 = random_ext(&f, &mut rng);
        strata.push(CoefficientTriple::new(f.ext_mul(f.frobenius(a3), a2), a2, a3));
    }
    // theta4 = 0 with theta3 = theta2^(2q-1)
    while strata.len() < 6000 {
        let t2 = random_nonzero_ext(&f, &mut rng);
        if let Some(t) = condition2_candidate(&f, t2, random_ext(&f, &mut rng)) {
            strata.push(t);
        }
    }
    // theta4 = 0 off that curve: theta3 = theta2^(2q-1) u, u != 1 of norm 1
    while strata.len() < 8000 {
        let t2 = random_nonzero_ext(&f, &mut rng);
        let u = mu[rng.gen_range(1..mu.len())];
        let t3 = f.ext_mul(theta2_pow_2q_minus_1(&f, t2).unwrap(), u);
        if let Some(t) = solve_for_thetas(&f, t2, t3, random_ext(&f, &mut rng)) {
            strata.push(t);
        }
    }
    let records: Vec<_> = strata.iter().enumerate().map(|(i, &t)| evaluate(&f, PpOracle::Mu, i as u64, t)).collect();
    let count = |b: Branch| records.iter().filter(|r| r.branch == b && r.pp_mu).count();
    let (c1, c2) = (count(Branch::Condition1), count(Branch::Condition2));
    let exceptions = records.iter().filter(|r| r.necessity_exception()).count();
    println!(
        "    strata: {} triples, {} permutations ({c1} Condition1, {c2} Condition2), {exceptions} unclassified",
        records.len(),
        records.iter().filter(|r| r.pp_mu).count()
    );
    o.check("strata: every record consistent", records.iter().all(|r| r.consistent));
    o.check("strata: permutations found in both branches", c1 > 0 && c2 > 0);
    o
}

fn criterion_4(fields: &[FieldSpec]) -> Outcome {
    let mut o = Outcome::default();
    for f in fields {
        let m = f.m();
        let mut rng = ChaCha8Rng::seed_from_u64(400 + m as u64);
        let norm_ok = (0..1000).all(|_| thetas(f, &random_triple(f, &mut rng)).satisfies_norm_identity(f));
        o.check(format!("m={m}: theta norm identity"), norm_ok);
        if m == 3 || m == 4 {
            let r = verify_identities(f, 100, 40 + m as u64, false).expect("identities");
            for t in &r.identities {
                o.check(format!("m={m}: {}", t.name), t.holds());
            }
        }
    }
    o
}

fn criterion_5(fields: &[FieldSpec]) -> Outcome {
    let mut o = Outcome::default();
    for f in fields {
        let m = f.m();
        let cubes: Vec<ExtElem> =
            f.mu_elements().into_iter().filter(|&a| f.is_cube_in_mu(a).unwrap()).collect();
        o.fact(format!("m={m}: cubes in the subgroup"), cubes.len() as u64);
        let mut dec = true;
        let mut cfact = true;
        let mut point_counts = Vec::new();
        for &a3 in &cubes {
            dec &= verify_split_dec_d(f, a3).unwrap();
            let r = verify_split_cfact(f, a3).unwrap();
            cfact &= r.holds();
            point_counts.push(r.points.len() as u64);
        }
        point_counts.sort();
        for (i, n) in point_counts.iter().enumerate() {
            o.fact(format!("m={m}: points on split C #{i}"), *n);
        }
        o.check(format!("m={m}: D splits into three lines for every cube"), dec && !cubes.is_empty());
        o.check(format!("m={m}: C splits into six lines with points off the diagonal"), cfact && !cubes.is_empty());

        if m == 3 {
            let mut t1 = 0u64;
            let mut t1_ok = true;
            for theta2 in f.ext_elements().skip(1) {
                if let Some(t) = theta1_zero_instance(f, theta2) {
                    let r = verify_split_t1zero(f, &thetas(f, &t)).unwrap();
                    t1_ok &= r.holds();
                    t1 += 1;
                }
            }
            o.fact("m=3: theta1 = 0 instances", t1);
            o.check("m=3: theta1 = 0 split with witness point", t1 > 0 && t1_ok);

            let mut conics = 0u64;
            let mut conics_ok = true;
            for theta2 in f.ext_elements().skip(1) {
                for z1 in f.base_elements() {
                    let Some(t) = conic_instance(f, theta2, z1) else { continue };
                    let r = verify_split_conics(f, &thetas(f, &t), z1).unwrap();
                    conics_ok &= r.holds();
                    conics += 1;
                }
            }
            o.fact("m=3: conic instances", conics);
            o.check("m=3: three-conic split with witness point", conics > 0 && conics_ok);
        }
    }
    o
}

fn criterion_6(f: &FieldSpec) -> Outcome {
    let mut o = Outcome::default();
    // theta2 = 0, a3 of norm 1: three double points over GF(q^2) iff a3 is a cube
    let mut cube_ok = true;
    let mut noncube_ok = true;
    for a3 in f.mu_elements() {
        for a2 in [ExtElem::ZERO, f.ext(1, 1)] {
            if f.norm(a2) == BaseElem::ONE {
                continue;
            }
            let tv = thetas(f, &CoefficientTriple::new(f.ext_mul(f.frobenius(a3), a2), a2, a3));
            let b = singular_points_d_brute(f, &tv).unwrap();
            let c = singular_points_d_closed_form(f, &tv).unwrap();
            let doubles = b.points.iter().all(|p| p.multiplicity == Multiplicity::Double);
            if f.is_cube_in_mu(a3).unwrap() {
                cube_ok &= b.points == c.points && b.points.len() == 3 && doubles;
            } else {
                noncube_ok &= b.points == c.points && b.points.is_empty();
            }
        }
    }
    o.check("theta2 = 0, cube a3: three double points, both derivations", cube_ok);
    o.check("theta2 = 0, non-cube a3: none over GF(q^2), both derivations", noncube_ok);

    // theta4 = 0, theta1 != 0, theta3 != theta2^(2q-1): one double point (0, alpha)
    let mu = f.mu_elements();
    let mut n = 0u64;
    let mut ok = true;
    for theta2 in f.ext_elements().skip(1) {
        for &u in &mu[1..] {
            let t3 = f.ext_mul(theta2_pow_2q_minus_1(f, theta2).unwrap(), u);
            for a2 in [ExtElem::ZERO, f.ext(2, 3), f.ext(3, 5)] {
                let Some(t) = solve_for_thetas(f, theta2, t3, a2) else { continue };
                let tv = thetas(f, &t);
                if !tv.theta4.is_zero() || tv.theta1.is_zero() {
                    continue;
                }
                let b = singular_points_d_brute(f, &tv).unwrap();
                let c = singular_points_d_closed_form(f, &tv).unwrap();
                let alpha = singular_alpha(f, &tv).unwrap();
                ok &= b.points == c.points
                    && b.points.len() == 1
                    && b.points[0].u.is_zero()
                    && b.points[0].v == alpha
                    && b.points[0].multiplicity == Multiplicity::Double
                    && f.ext_square(alpha) == f.ext_div(tv.theta2, tv.theta3).unwrap();
                n += 1;
            }
        }
    }
    o.check("theta4 = 0 off the triple-point curve: one point (0, alpha)", n > 0 && ok);

    // theta3 = theta2^(2q-1), theta1 != 0: a triple point with the predicted tangent cone
    let mut n = 0u64;
    let mut ok = true;
    for theta2 in f.ext_elements().skip(1) {
        for a2 in [ExtElem::ZERO, f.ext(1, 1), f.ext(2, 3)] {
            let Some(t) = condition2_candidate(f, theta2, a2) else { continue };
            let tv = thetas(f, &t);
            if tv.theta1.is_zero() {
                continue;
            }
            let b = singular_points_d_brute(f, &tv).unwrap();
            let c = singular_points_d_closed_form(f, &tv).unwrap();
            let cone = tangent_form_at_singular_point(f, &tv).unwrap();
            ok &= b.points == c.points
                && b.points.len() == 1
                && b.points[0].multiplicity == Multiplicity::Triple
                && cone.eq_up_to_unit(f, &expected_triple_point_form(f, &tv));
            n += 1;
        }
    }
    o.check("theta3 = theta2^(2q-1): triple point with cone t1 U^3 + t2^q U^2 V + t3 V^3", n > 0 && ok);
    // a sanity anchor: C itself is never the zero polynomial in these regimes
    o.check("curve C nonzero", !build_curve_c(f, &thetas(f, &CoefficientTriple::zero())).is_zero());
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::default();
    let first = (1..=20).map(|e| 1u64 << e).find(|&q| hasse_weil_ok(q));
    o.check("q = 256 fails", !hasse_weil_ok(256));
    o.check("q = 512 holds", hasse_weil_ok(512));
    o.check("first power of two is 512", first == Some(512));
    o.check("q = 422 holds, q = 421 fails", hasse_weil_ok(422) && !hasse_weil_ok(421));
    o.check("monotone past 422", (422..5000).all(hasse_weil_ok));
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::default();
    let reports = corpus::prove_all(0).expect("corpus runs");
    let chains: Vec<String> =
        corpus::entries().into_iter().filter(|e| e.kind == EntryKind::Script).map(|e| e.id).collect();
    o.check("nine elimination chains encoded", chains.len() == 9);
    for r in &reports {
        println!(
            "    {:<30} {}/{} assertions, {} resultant checks",
            r.script, r.assertions_passed, r.assertions, r.resultant_checks
        );
        o.check(format!("{} passes", r.script), r.passed && r.assertions > 0);
        o.check(
            format!("{}: 100 resultant cross-checks", r.script),
            r.resultant_checks >= 100 && r.resultant_check_failures == 0,
        );
        o.check(format!("{}: normal forms", r.script), r.normal_form_failures == 0);
    }
    o.check("every chain replayed", chains.iter().all(|c| reports.iter().any(|r| &r.script == c)));
    o
}

/// Criteria 1, 2, 4, 5, 6 restricted to one field of degree 3.
fn fingerprint(f: &FieldSpec) -> Vec<Outcome> {
    vec![
        criterion_1(std::slice::from_ref(f)),
        criterion_2(std::slice::from_ref(f), 2000),
        criterion_4(std::slice::from_ref(f)),
        criterion_5(std::slice::from_ref(f)),
        criterion_6(f),
    ]
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::default();
    let base = field(3);
    let alt = alternative_tower();
    println!("    default modulus 0x{:x} k {}, alternative modulus 0x{:x} k {}", base.modulus(), base.k(), alt.modulus(), alt.k());
    o.check("towers differ", base.modulus() != alt.modulus() && base.k() != alt.k());
    let (a, b) = (fingerprint(&base), fingerprint(&alt));
    for (i, (x, y)) in a.iter().zip(&b).enumerate() {
        let label = ["1", "2", "4", "5", "6"][i];
        o.check(format!("criterion {label}: same checks and counts"), x == y);
        o.check(format!("criterion {label}: passes in the alternative tower"), y.passed());
    }
    o
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 sufficiency reproduction", Box::new(|| criterion_1(&[field(3), field(4), field(5)]))),
        ("2 oracle equivalence", Box::new(|| criterion_2(&[field(2), field(3), field(4)], 10_000))),
        ("3 necessity sweep at m=9", Box::new(criterion_3)),
        ("4 identity suite", Box::new(|| criterion_4(&(1..=8).map(field).collect::<Vec<_>>()))),
        ("5 factorization suite", Box::new(|| criterion_5(&[field(3), field(5)]))),
        ("6 singular points", Box::new(|| criterion_6(&field(3)))),
        ("7 Hasse-Weil threshold", Box::new(criterion_7)),
        ("8 proof corpus", Box::new(criterion_8)),
        ("9 tower-choice invariance", Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        if outcome.passed() {
            println!("PASS criterion {name} ({} checks, {secs:.1}s)", outcome.checks.len());
        } else {
            failed += 1;
            println!("FAIL criterion {name}: {:?}", outcome.failures());
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
