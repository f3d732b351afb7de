use super::derive::check_derivation;
use super::{Evidence, ProofObject, Statement};
use crate::term::Machine;
use crate::tm::Program;

/// Why a proof object was rejected.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Rejection {
    #[error("proof is about a different statement")]
    SubjectMismatch,
    #[error("evidence of the wrong kind for this statement")]
    WrongEvidence,
    #[error("malformed evidence: {0}")]
    Malformed(&'static str),
    #[error("trace disagrees with the execution at step {step}")]
    TraceMismatch { step: u64 },
    #[error("execution halts at step {step}, before the claimed halting step")]
    HaltedEarly { step: u64 },
    #[error("execution has not halted at the claimed step")]
    NotHalted,
    #[error("execution halts at step {step}, inside the claimed cycle")]
    HaltedDuringCycle { step: u64 },
    #[error("snapshots at the cycle ends differ")]
    CycleMismatch,
    #[error("bad derivation: {reason}")]
    Derivation { reason: String },
    #[error("derived bound ({0}, {1}, {2}) differs from the stated one")]
    BoundMismatch(u64, u32, u64),
    #[error("composed term is not the composition of the stated terms")]
    NotComposition,
    #[error("composer tag differs from the statement")]
    TagMismatch,
}

impl Rejection {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Rejection::SubjectMismatch => "subject-mismatch",
            Rejection::WrongEvidence => "wrong-evidence",
            Rejection::Malformed(_) => "malformed",
            Rejection::TraceMismatch { .. } => "trace-mismatch",
            Rejection::HaltedEarly { .. } => "halted-early",
            Rejection::NotHalted => "not-halted",
            Rejection::HaltedDuringCycle { .. } => "halted-during-cycle",
            Rejection::CycleMismatch => "cycle-mismatch",
            Rejection::Derivation { .. } => "bad-derivation",
            Rejection::BoundMismatch(..) => "bound-mismatch",
            Rejection::NotComposition => "not-composition",
            Rejection::TagMismatch => "tag-mismatch",
        }
    }
}

/// Decides whether `proof` proves `statement`. Every branch does a bounded
/// amount of work fixed by the proof object, so checking always terminates.
pub fn check_proof(statement: &Statement, proof: &ProofObject) -> Result<(), Rejection> {
    if &proof.subject != statement {
        return Err(Rejection::SubjectMismatch);
    }
    match (statement, &proof.evidence) {
        (Statement::Halts { machine, input }, Evidence::HaltTrace { steps, trace }) => {
            if trace.len() as u64 != steps.saturating_add(1) {
                return Err(Rejection::Malformed("trace length must be steps + 1"));
            }
            let mut exec = machine.start(input);
            for (i, snap) in trace.iter().enumerate() {
                let i = i as u64;
                if &exec.snapshot() != snap {
                    return Err(Rejection::TraceMismatch { step: i });
                }
                if i < *steps {
                    if exec.is_halted() {
                        return Err(Rejection::HaltedEarly { step: i });
                    }
                    exec.advance();
                }
            }
            if exec.is_halted() {
                Ok(())
            } else {
                Err(Rejection::NotHalted)
            }
        }
        (Statement::NotHalts { machine, input }, Evidence::Cycle { prefix, cycle }) => {
            if *cycle == 0 {
                return Err(Rejection::Malformed("cycle length must be positive"));
            }
            let end = prefix.checked_add(*cycle).ok_or(Rejection::Malformed("cycle end overflows"))?;
            let mut exec = machine.start(input);
            let mut anchor = None;
            for t in 0..=end {
                if exec.is_halted() {
                    return Err(Rejection::HaltedDuringCycle { step: t });
                }
                if t == *prefix {
                    anchor = Some(exec.snapshot());
                }
                if t < end {
                    exec.advance();
                }
            }
            if anchor.as_ref() == Some(&exec.snapshot()) {
                Ok(())
            } else {
                Err(Rejection::CycleMismatch)
            }
        }
        (Statement::TimeBound { machine, a, k, b }, Evidence::TimeBound(d)) => {
            check_derivation(machine, d)?;
            let got = d.time.summary();
            if got == (*a, *k, *b) {
                Ok(())
            } else {
                Err(Rejection::BoundMismatch(got.0, got.1, got.2))
            }
        }
        (Statement::PointwiseEqual { composed, outer, inner, tag }, Evidence::Equality { inner_bound, tag: etag }) => {
            if tag != etag {
                return Err(Rejection::TagMismatch);
            }
            match composed {
                Machine::Compose { outer: o, inner: i } if **o == *outer && **i == *inner => {}
                _ => return Err(Rejection::NotComposition),
            }
            check_derivation(inner, inner_bound)
        }
        _ => Err(Rejection::WrongEvidence),
    }
}
