use std::collections::HashMap;

use super::{Evidence, ProofObject, Statement};
use crate::term::Machine;
use crate::tm::{BinaryString, Program};

/// A halting trace, if `m` halts on `w` within `budget` steps.
pub fn certify_halting(m: &Machine, w: &BinaryString, budget: u64) -> Option<ProofObject> {
    let mut exec = m.start(w);
    let mut trace = vec![exec.snapshot()];
    while !exec.is_halted() {
        if exec.steps() >= budget {
            return None;
        }
        exec.advance();
        trace.push(exec.snapshot());
    }
    let statement = Statement::Halts { machine: m.clone(), input: w.clone() };
    Some(ProofObject::new(statement, Evidence::HaltTrace { steps: exec.steps(), trace }))
}

/// The earliest repeated snapshot within `budget` steps, as a cycle
/// certificate. Returns `None` if the run halts or no repeat shows up.
pub fn find_nonhalting_proof(m: &Machine, w: &BinaryString, budget: u64) -> Option<ProofObject> {
    let mut exec = m.start(w);
    let mut seen = HashMap::new();
    for t in 0..=budget {
        if exec.is_halted() {
            return None;
        }
        if let Some(&p) = seen.get(&exec.snapshot()) {
            let statement = Statement::NotHalts { machine: m.clone(), input: w.clone() };
            return Some(ProofObject::new(statement, Evidence::Cycle { prefix: p, cycle: t - p }));
        }
        seen.insert(exec.snapshot(), t);
        exec.advance();
    }
    None
}
