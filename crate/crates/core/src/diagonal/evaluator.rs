use std::collections::HashMap;

use num_bigint::BigUint;

use super::{CertificateFailure, Codebook, Quadruplet};
use crate::term::{Machine, Seed};
use crate::theory::Evidence;
use crate::tm::{profile, run_bounded, BinaryString, RunOutcome};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DiagonalError {
    #[error("M2 of code {n} ran past its certified bound of {budget} steps")]
    M2Budget { n: u64, budget: u64 },
    #[error("M2 of code {n} returned a value that does not fit in 64 bits")]
    ValueOverflow { n: u64 },
    #[error("M0 did not halt within {budget} steps on the input for n = {n}")]
    M0Budget { n: u64, budget: u64 },
    #[error("M0 returned a non-bit on the input for n = {n}")]
    M0NotBit { n: u64 },
}

/// Runs a member's `M2` on `bin(n)` under the bound its totality certificate
/// proves. Returns the output value and the steps taken.
pub(crate) fn run_m2(q: &Quadruplet, n: u64) -> Result<(u64, u64), DiagonalError> {
    let input = BinaryString::from_nat(n);
    let budget = match &q.p2.evidence {
        Evidence::Equality { inner_bound, .. } => inner_bound.time.eval(input.len() as u64),
        _ => profile::safety_budget(),
    };
    match run_bounded(&q.m2, &input, budget) {
        RunOutcome::Halted { output, steps } => {
            let v = output.to_input().num_u64().ok_or(DiagonalError::ValueOverflow { n })?;
            Ok((v, steps))
        }
        RunOutcome::BudgetExhausted { .. } => Err(DiagonalError::M2Budget { n, budget }),
    }
}

/// Memoized `T_M0`, `H_M0` and `f` relative to a fixed `M0` and encoding
/// system.
#[derive(Clone, Debug)]
pub struct DiagonalEvaluator {
    m0: Machine,
    seeds: Vec<Seed>,
    book: Codebook,
    memo: Vec<u64>,
    membership: HashMap<u64, bool>,
}

impl DiagonalEvaluator {
    /// Over the base encoding, with no planted codes.
    pub fn new(m0: Machine) -> Self {
        DiagonalEvaluator::with_seeds(m0, Vec::new())
    }

    pub fn with_seeds(m0: Machine, seeds: Vec<Seed>) -> Self {
        let book = Codebook::with_seeds(&seeds);
        DiagonalEvaluator { m0, seeds, book, memo: vec![0], membership: HashMap::new() }
    }

    pub fn m0(&self) -> &Machine {
        &self.m0
    }

    pub fn seeds(&self) -> &[Seed] {
        &self.seeds
    }

    pub fn codebook(&self) -> &Codebook {
        &self.book
    }

    /// `T_M0(0..k)` for the prefix evaluated so far.
    pub fn memo(&self) -> &[u64] {
        &self.memo
    }

    /// `T_M0` as a machine term over the same encoding system.
    pub fn wrapper(&self) -> Machine {
        Machine::Diagonal { m0: Box::new(self.m0.clone()), seeds: self.seeds.clone() }
    }

    /// The machine computing `f(n) = M0(0^{T_M0(n)})` on input `bin(n)`.
    pub fn f_machine(&self) -> Machine {
        Machine::compose(self.m0.clone(), Machine::unary(self.wrapper()))
    }

    pub fn h_membership(&mut self, n: &BigUint) -> bool {
        let small = u64::try_from(n).ok();
        if let Some(v) = small.and_then(|k| self.membership.get(&k)) {
            return *v;
        }
        let v = self.book.member(n, &self.m0).is_some();
        if let Some(k) = small {
            self.membership.insert(k, v);
        }
        v
    }

    pub fn membership_failures(&self, n: &BigUint) -> Vec<CertificateFailure> {
        self.book.failures(n, &self.m0)
    }

    /// Bottom-up: `T(0) = 0`, `T(n) = 1 + T(n-1)` off `L_M0`, and
    /// `max{1 + T(n-1), 1 + M2(n)}` on it.
    pub fn t_m0_eval(&mut self, n: u64) -> Result<u64, DiagonalError> {
        while (self.memo.len() as u64) <= n {
            let k = self.memo.len() as u64;
            let prev = self.memo[k as usize - 1];
            let mut t = prev + 1;
            let code = BigUint::from(k);
            if self.h_membership(&code) {
                let q = self.book.member(&code, &self.m0).expect("membership was just confirmed");
                let (v, _) = run_m2(&q, k)?;
                t = t.max(v.saturating_add(1));
            }
            self.memo.push(t);
        }
        Ok(self.memo[n as usize])
    }

    /// `M0` on the all-zeros string of length `T_M0(n)`.
    pub fn f_eval(&mut self, n: u64) -> Result<bool, DiagonalError> {
        let t = self.t_m0_eval(n)?;
        let budget = profile::safety_budget();
        match run_bounded(&self.m0, &BinaryString::zeros(t as usize), budget) {
            RunOutcome::Halted { output, .. } => output.as_bit().ok_or(DiagonalError::M0NotBit { n }),
            RunOutcome::BudgetExhausted { .. } => Err(DiagonalError::M0Budget { n, budget }),
        }
    }
}
