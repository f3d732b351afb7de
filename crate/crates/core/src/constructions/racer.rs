use std::fmt;

use crate::term::Machine;
use crate::theory::{Statement, TheoremEnumerator};
use crate::tm::{dovetail, BinaryString, Dovetailed, Execution, Program, Resumable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RacerVerdict {
    /// The simulation halted at `halt_step`.
    Accept { halt_step: u64, round: u64 },
    /// The theorem at `proof_index` is a non-halting proof for the pair.
    Reject { proof_index: u64, round: u64 },
    StillRunning { rounds: u64 },
}

impl fmt::Display for RacerVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RacerVerdict::Accept { halt_step, round } => write!(f, "accept halt_step={halt_step} round={round}"),
            RacerVerdict::Reject { proof_index, round } => write!(f, "reject proof_index={proof_index} round={round}"),
            RacerVerdict::StillRunning { rounds } => write!(f, "still-running rounds={rounds}"),
        }
    }
}

struct Simulation<'a> {
    exec: Box<dyn Execution + 'a>,
}

impl Resumable for Simulation<'_> {
    type Output = u64;

    fn resume(&mut self) -> Option<u64> {
        if !self.exec.is_halted() {
            self.exec.advance();
        }
        self.exec.is_halted().then(|| self.exec.steps())
    }
}

struct Search {
    target: Statement,
    theorems: TheoremEnumerator,
}

impl Resumable for Search {
    type Output = u64;

    fn resume(&mut self) -> Option<u64> {
        let index = self.theorems.position();
        let thm = self.theorems.next()?;
        (thm.statement() == &self.target).then_some(index)
    }
}

/// Dovetails one simulation step of `m` on `w` against one theorem of the
/// enumeration per round, simulation first.
pub fn race(m: &Machine, w: &BinaryString, round_budget: u64) -> RacerVerdict {
    let mut sim = Simulation { exec: m.start(w) };
    let mut search = Search {
        target: Statement::NotHalts { machine: m.clone(), input: w.clone() },
        theorems: TheoremEnumerator::new(),
    };
    match dovetail(&mut sim, &mut search, round_budget) {
        Dovetailed::First { result, round } => RacerVerdict::Accept { halt_step: result, round },
        Dovetailed::Second { result, round } => RacerVerdict::Reject { proof_index: result, round },
        Dovetailed::Exhausted { rounds } => RacerVerdict::StillRunning { rounds },
    }
}
