//! Numeric cross-checks of the algebraic identities behind the curves.

use nihoquad::field::FieldSpec;
use nihoquad::identities::verify_identities;

fn main() -> nihoquad::Result<()> {
    for m in [3, 4, 7] {
        let f = FieldSpec::new(m)?;
        let report = verify_identities(&f, 50, 2024, m == 3)?;
        println!("m={m}: {}", if report.passed() { "all hold" } else { "FAILED" });
        for t in &report.identities {
            println!("  {:<18} {}/{}", t.name, t.passed, t.checked);
        }
        if let Some(d) = &report.diagonal_script {
            println!("  diagonal script: {}", d.passed);
        }
    }
    Ok(())
}
