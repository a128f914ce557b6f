//! The embedded proof-script corpus, described by `scripts/MANIFEST`.

use rayon::prelude::*;

use super::script::{run_script, ScriptReport};
use crate::error::{Error, Result};

pub const MANIFEST: &str = include_str!("../../scripts/MANIFEST");
pub const PRELUDE: &str = include_str!("../../scripts/prelude.nq");

const FILES: &[(&str, &str)] = &[
    ("six-lines-d-nonzero.nq", include_str!("../../scripts/six-lines-d-nonzero.nq")),
    ("six-lines-d-zero.nq", include_str!("../../scripts/six-lines-d-zero.nq")),
    ("three-conics-ab-not-in-fq.nq", include_str!("../../scripts/three-conics-ab-not-in-fq.nq")),
    ("three-conics-a-in-fq.nq", include_str!("../../scripts/three-conics-a-in-fq.nq")),
    ("three-conics-b-in-fq.nq", include_str!("../../scripts/three-conics-b-in-fq.nq")),
    ("gamma33-zero.nq", include_str!("../../scripts/gamma33-zero.nq")),
    ("four-lines.nq", include_str!("../../scripts/four-lines.nq")),
    ("two-conics-swapped.nq", include_str!("../../scripts/two-conics-swapped.nq")),
    ("two-conics-fixed-f-nonzero.nq", include_str!("../../scripts/two-conics-fixed-f-nonzero.nq")),
    ("two-conics-fixed-f-zero.nq", include_str!("../../scripts/two-conics-fixed-f-zero.nq")),
    ("diagonal.nq", include_str!("../../scripts/diagonal.nq")),
];

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EntryKind {
    /// A replayed elimination chain.
    Script,
    /// A supporting computation outside the elimination chains.
    Extra,
    /// Listed for completeness; nothing to run.
    Omitted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub kind: EntryKind,
    pub files: Vec<String>,
}

fn file_text(name: &str) -> Result<&'static str> {
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::Parse(format!("manifest names unknown file `{name}`")))
}

pub fn entries() -> Vec<CorpusEntry> {
    MANIFEST
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut words = l.split_whitespace();
            let kind = match words.next() {
                Some("script") => EntryKind::Script,
                Some("extra") => EntryKind::Extra,
                Some("omitted") => EntryKind::Omitted,
                other => panic!("bad manifest line kind {other:?}"),
            };
            let id = words.next().expect("manifest id").to_string();
            CorpusEntry { id, kind, files: words.map(str::to_string).collect() }
        })
        .collect()
}

/// Ids of every runnable entry, in manifest order.
pub fn runnable_ids() -> Vec<String> {
    entries().into_iter().filter(|e| e.kind != EntryKind::Omitted).map(|e| e.id).collect()
}

/// The full text of a runnable entry: the prelude followed by its files.
pub fn script_text(id: &str) -> Result<String> {
    let entry = entries()
        .into_iter()
        .find(|e| e.id == id && e.kind != EntryKind::Omitted)
        .ok_or_else(|| Error::UnknownScript(id.to_string()))?;
    let mut text = String::from(PRELUDE);
    for f in &entry.files {
        text.push('\n');
        text.push_str(file_text(f)?);
    }
    Ok(text)
}

/// Seed for the resultant cross-checks of one script, derived from its id.
fn seed_for(id: &str, base: u64) -> u64 {
    // FNV-1a
    id.bytes().fold(0xcbf29ce484222325u64 ^ base, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

pub fn prove(id: &str, seed: u64) -> Result<ScriptReport> {
    let text = script_text(id)?;
    run_script(id, &text, seed_for(id, seed)).map(|(r, _)| r)
}

/// Runs every runnable entry in parallel; reports come back in manifest order.
pub fn prove_all(seed: u64) -> Result<Vec<ScriptReport>> {
    runnable_ids().par_iter().map(|id| prove(id, seed)).collect()
}
