use std::fmt;

use crate::term::Machine;
use crate::theory::{time_bound_proof, ProofObject};
use crate::tm::{profile, run_bounded, BinaryString, RunOutcome};

/// A built machine together with its time-bound certificate, when the
/// parts it was built from are certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Built {
    pub machine: Machine,
    pub certificate: Option<ProofObject>,
}

impl Built {
    fn new(machine: Machine) -> Self {
        let certificate = time_bound_proof(&machine);
        Built { machine, certificate }
    }
}

/// `O⟨M,w⟩`: on `s`, outputs 0 if `M` halts on `w` within `‖s‖` steps and
/// 1 otherwise. Always certified with the bound `2n + 2`.
pub fn build_o(m: Machine, w: BinaryString) -> Built {
    Built::new(Machine::threshold(m, w))
}

/// `Q⟨M1,M2,w⟩`: 1 where `O⟨M1,w⟩` is 1, `M2(s)` elsewhere. Certified when
/// `M2` is.
pub fn build_q(m1: Machine, m2: Machine, w: BinaryString) -> Built {
    Built::new(Machine::switch(m1, m2, w))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdProfile {
    AllOnes,
    /// Outputs 1 below length `m` and 0 from `m` on.
    StepThreshold(usize),
}

impl fmt::Display for ThresholdProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdProfile::AllOnes => f.write_str("all-ones"),
            ThresholdProfile::StepThreshold(m) => write!(f, "step-threshold {m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProfileViolation {
    #[error("output 1 at length {len} after a 0 at a shorter length")]
    NonMonotone { len: usize },
    #[error("non-bit output at length {len}")]
    NotBit { len: usize },
    #[error("no halt within {budget} steps at length {len}")]
    Budget { len: usize, budget: u64 },
}

/// Runs `o` on `0^n` for `n = 0..=max_len`; only length matters for an
/// `O` machine.
pub fn threshold_profile(o: &Machine, max_len: usize) -> Result<ThresholdProfile, ProfileViolation> {
    let budget = profile::safety_budget();
    let mut first_zero = None;
    for len in 0..=max_len {
        let bit = match run_bounded(o, &BinaryString::zeros(len), budget) {
            RunOutcome::Halted { output, .. } => output.as_bit().ok_or(ProfileViolation::NotBit { len })?,
            RunOutcome::BudgetExhausted { .. } => return Err(ProfileViolation::Budget { len, budget }),
        };
        match (bit, first_zero) {
            (false, None) => first_zero = Some(len),
            (true, Some(_)) => return Err(ProfileViolation::NonMonotone { len }),
            _ => {}
        }
    }
    Ok(first_zero.map_or(ThresholdProfile::AllOnes, ThresholdProfile::StepThreshold))
}
