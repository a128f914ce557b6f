//! Replays the elimination scripts: every assertion is re-derived, and every
//! resultant is spot-checked against a numeric Sylvester determinant.

use nihoquad::symbolic::corpus::{entries, prove, EntryKind};

fn main() -> nihoquad::Result<()> {
    for e in entries() {
        if e.kind == EntryKind::Omitted {
            println!("{:<32} omitted", e.id);
            continue;
        }
        let r = prove(&e.id, 0)?;
        println!(
            "{:<32} {}  assertions {}/{}  resultant checks {}  steps {}",
            e.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.assertions_passed,
            r.assertions,
            r.resultant_checks,
            r.steps.len()
        );
    }
    Ok(())
}
