use std::fmt;

use crate::term::{Machine, PatchTable};
use crate::theory::{time_bound_proof, ProofObject};
use crate::tm::{profile, run_bounded, BinaryString, RunOutcome};

/// `{s | decider(s) = 1}` for a decider that is total by contract.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageView {
    pub decider: Machine,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ViewError {
    #[error("decider did not halt within {budget} steps on `{input}`")]
    NotTotal { input: BinaryString, budget: u64 },
    #[error("decider returned a non-bit on `{input}`")]
    NotBit { input: BinaryString },
}

impl LanguageView {
    pub fn new(decider: Machine) -> Self {
        LanguageView { decider }
    }

    pub fn contains(&self, s: &BinaryString) -> Result<bool, ViewError> {
        let budget = profile::safety_budget();
        match run_bounded(&self.decider, s, budget) {
            RunOutcome::Halted { output, .. } => output.as_bit().ok_or_else(|| ViewError::NotBit { input: s.clone() }),
            RunOutcome::BudgetExhausted { .. } => Err(ViewError::NotTotal { input: s.clone(), budget }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PatchError {
    #[error("table has no entry for `{0}`")]
    Missing(BinaryString),
    #[error("table entry `{0}` is not shorter than the cut-off")]
    TooLong(BinaryString),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patched {
    pub view: LanguageView,
    /// Present when the base decider is certified; its bound exceeds the
    /// base bound by a constant.
    pub certificate: Option<ProofObject>,
}

/// Answers from `table` below length `m` and from `base` at or above it.
/// The table must cover exactly the strings shorter than `m`.
pub fn patch_language(base: &LanguageView, table: PatchTable, m: usize) -> Result<Patched, PatchError> {
    if let Some(s) = table.keys().find(|s| s.len() >= m) {
        return Err(PatchError::TooLong(s.clone()));
    }
    if m > 0 {
        if let Some(s) = BinaryString::up_to_length(m - 1).find(|s| !table.contains_key(s)) {
            return Err(PatchError::Missing(s));
        }
    }
    let decider = Machine::Patch { base: Box::new(base.decider.clone()), cutoff: m, table };
    let certificate = time_bound_proof(&decider);
    Ok(Patched { view: LanguageView::new(decider), certificate })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlmostEqual {
    /// Every disagreement found is shorter than this.
    EqualBeyond(usize),
    /// Disagreements reach the top probed lengths; all of them are listed.
    Divergent(Vec<BinaryString>),
}

impl fmt::Display for AlmostEqual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlmostEqual::EqualBeyond(m) => write!(f, "equal-beyond {m}"),
            AlmostEqual::Divergent(w) => write!(f, "divergent ({} witnesses)", w.len()),
        }
    }
}

/// Probes `a ≃ b` on every string of length at most `probe_len`. The
/// verdict is `Divergent` when some disagreement has one of the two largest
/// probed lengths, and otherwise the least `m` above every disagreement.
pub fn almost_equal(a: &LanguageView, b: &LanguageView, probe_len: usize) -> Result<AlmostEqual, ViewError> {
    let mut witnesses = Vec::new();
    for s in BinaryString::up_to_length(probe_len) {
        if a.contains(&s)? != b.contains(&s)? {
            witnesses.push(s);
        }
    }
    let top = probe_len.saturating_sub(1);
    if witnesses.iter().any(|s| s.len() >= top) {
        return Ok(AlmostEqual::Divergent(witnesses));
    }
    Ok(AlmostEqual::EqualBeyond(witnesses.iter().map(|s| s.len() + 1).max().unwrap_or(0)))
}
