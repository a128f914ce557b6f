//! Polynomial arithmetic over GF(2) in a fixed 23-variable ring, and a runner
//! for line-oriented proof scripts built on it.

pub mod algo;
pub mod check;
pub mod corpus;
pub mod poly;
pub mod script;

pub use algo::{divides, exact_div, find_coefficients2, rational_substitution, resultant, substitution};
pub use poly::{Monomial, SparsePoly, VarId, NVARS};
pub use script::{parse_script, run_script, ProofScript, Runner, ScriptReport, Step, StepReport, StepStatus, Value};
