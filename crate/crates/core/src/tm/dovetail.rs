/// A computation that can be resumed for one step at a time.
pub trait Resumable {
    type Output;

    /// Performs one step; `Some` once the task has finished.
    fn resume(&mut self) -> Option<Self::Output>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dovetailed<A, B> {
    First { result: A, round: u64 },
    Second { result: B, round: u64 },
    Exhausted { rounds: u64 },
}

/// Alternates one step of `first` with one step of `second` per round. The
/// first task is stepped first, so it wins rounds where both finish.
pub fn dovetail<A: Resumable, B: Resumable>(
    first: &mut A,
    second: &mut B,
    round_budget: u64,
) -> Dovetailed<A::Output, B::Output> {
    for round in 1..=round_budget {
        if let Some(result) = first.resume() {
            return Dovetailed::First { result, round };
        }
        if let Some(result) = second.resume() {
            return Dovetailed::Second { result, round };
        }
    }
    Dovetailed::Exhausted { rounds: round_budget }
}

/// Finishes on the `n`-th resume (`None` never finishes).
#[cfg(test)]
pub(crate) struct Countdown {
    pub finish_at: Option<u64>,
    pub calls: u64,
}

#[cfg(test)]
impl Resumable for Countdown {
    type Output = u64;

    fn resume(&mut self) -> Option<u64> {
        self.calls += 1;
        (Some(self.calls) == self.finish_at).then_some(self.calls)
    }
}
