use super::bits::BinaryString;
use super::exec::{run_bounded, Program, RunOutcome};

/// Largest input length profiled exhaustively.
pub const MAX_PROFILE_LEN: usize = 16;

/// Default per-run guard against machines that are not total.
pub const DEFAULT_SAFETY_BUDGET: u64 = 1_000_000;

/// Environment variable overriding [`DEFAULT_SAFETY_BUDGET`].
pub const SAFETY_BUDGET_ENV: &str = "INDEPLAB_SAFETY_BUDGET";

/// The safety budget, honouring the environment override.
pub fn safety_budget() -> u64 {
    std::env::var(SAFETY_BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SAFETY_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileRow {
    pub len: usize,
    pub max_steps: u64,
    pub witness: BinaryString,
}

/// `t_M(n)` for `n = 0..=max_len`, with a worst-case input per length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimeProfile {
    pub rows: Vec<ProfileRow>,
}

impl TimeProfile {
    pub fn max_steps(&self, len: usize) -> Option<u64> {
        self.rows.get(len).map(|r| r.max_steps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProfileError {
    #[error("max_len {0} exceeds the exhaustive cut-off of {MAX_PROFILE_LEN}")]
    TooLong(usize),
    #[error("safety budget of {budget} steps exhausted on input `{input}`")]
    NotTotal { input: BinaryString, budget: u64 },
}

/// Exhaustive worst-case running time over every input of each length.
pub fn time_complexity_profile<P: Program + ?Sized>(
    program: &P,
    max_len: usize,
    budget: u64,
) -> Result<TimeProfile, ProfileError> {
    if max_len > MAX_PROFILE_LEN {
        return Err(ProfileError::TooLong(max_len));
    }
    let mut rows = Vec::with_capacity(max_len + 1);
    for len in 0..=max_len {
        let mut best: Option<ProfileRow> = None;
        for input in BinaryString::all_of_length(len) {
            match run_bounded(program, &input, budget) {
                RunOutcome::Halted { steps, .. } => {
                    if best.as_ref().is_none_or(|b| steps > b.max_steps) {
                        best = Some(ProfileRow { len, max_steps: steps, witness: input });
                    }
                }
                RunOutcome::BudgetExhausted { .. } => return Err(ProfileError::NotTotal { input, budget }),
            }
        }
        rows.extend(best);
    }
    Ok(TimeProfile { rows })
}
