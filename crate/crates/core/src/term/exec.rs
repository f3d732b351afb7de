use num_bigint::BigUint;

use super::{Machine, PatchTable};
use crate::diagonal::{run_m2, Codebook};
use crate::theory::{Statement, TheoremEnumerator};
use crate::tm::{BinaryString, Execution, Output, Program, RawExecution, Snapshot};

type Exec<'a> = Box<dyn Execution + 'a>;

pub(super) fn start<'a>(m: &'a Machine, input: &BinaryString) -> Exec<'a> {
    let n = input.len() as u64;
    match m {
        Machine::Raw(d) => Box::new(RawExecution::new(d, input)),
        Machine::Constant(c) => Box::new(Fixed::new(n + c.len() as u64 + 1, Output::from_bits(c))),
        Machine::Identity => Box::new(Fixed::new(n + 1, Output::from_bits(input))),
        Machine::Not(x) => Seq::boxed(x.start(input), |_| 1, |o| Next::Finish(Output::bit(!is_one(o)))),
        Machine::Threshold { inner, w } => Box::new(ThresholdExec::new(inner, w, n)),
        Machine::Switch { gate, fallback, w } => {
            let s = input.clone();
            Seq::boxed(Box::new(ThresholdExec::new(gate, w, n)), |_| 1, move |o| {
                if is_one(o) {
                    Next::Finish(Output::bit(true))
                } else {
                    Next::Run(fallback.start(&s))
                }
            })
        }
        Machine::Patch { base, cutoff, table } => {
            let s = input.clone();
            let cutoff = *cutoff as u64;
            let measure = Box::new(Fixed::new(n.min(cutoff) + 1, Output::default()));
            Seq::boxed(measure, |_| 0, move |_| {
                if (s.len() as u64) < cutoff {
                    Next::Run(Box::new(Fixed::new(1, Output::bit(lookup(table, &s)))))
                } else {
                    Next::Run(base.start(&s))
                }
            })
        }
        Machine::Compose { outer, inner } => {
            Seq::boxed(inner.start(input), |_| 1, move |o| Next::Run(outer.start(&o.to_input())))
        }
        Machine::Select { cond, when_one, when_zero } => {
            let s = input.clone();
            Seq::boxed(cond.start(input), |_| 1, move |o| {
                Next::Run(if is_one(o) { when_one.start(&s) } else { when_zero.start(&s) })
            })
        }
        Machine::Equal(a, b) => {
            let s = input.clone();
            Seq::boxed(a.start(input), |_| 0, move |oa| {
                let oa = oa.clone();
                Next::Run(Seq::boxed(b.start(&s), |_| 1, move |ob| Next::Finish(Output::bit(oa == *ob))))
            })
        }
        Machine::Unary(x) => Seq::boxed(
            x.start(input),
            |o| o.to_input().num_u64().map_or(u64::MAX, |k| k.saturating_add(1)),
            |o| Next::Finish(Output::from_bits(&BinaryString::zeros(o.to_input().num_u64().unwrap_or(0) as usize))),
        ),
        Machine::Goldbach => {
            if input.len() == 1 {
                Box::new(GoldbachExec { n: 6, p: 3, steps: 0, found: false })
            } else {
                Box::new(Fixed::new(1, Output::default()))
            }
        }
        Machine::SelfSearcher => Box::new(SearcherExec::new(m, input)),
        Machine::Diagonal { m0, seeds } => Box::new(DiagonalExec {
            n: input.num_u64().unwrap_or(u64::MAX),
            level: 1,
            t: 0,
            replay: 0,
            pending: 0,
            stuck: false,
            out: None,
            steps: 0,
            m0,
            book: Codebook::with_seeds(seeds),
        }),
    }
}

fn is_one(o: &Output) -> bool {
    o.as_bit() == Some(true)
}

fn lookup(table: &PatchTable, s: &BinaryString) -> bool {
    table.get(s).copied().unwrap_or(false)
}

/// Runs for a fixed number of steps, then presents a fixed output.
struct Fixed {
    remaining: u64,
    steps: u64,
    output: Output,
}

impl Fixed {
    fn new(total: u64, output: Output) -> Self {
        Fixed { remaining: total, steps: 0, output }
    }
}

impl Execution for Fixed {
    fn output(&self) -> Option<Output> {
        (self.remaining == 0).then(|| self.output.clone())
    }

    fn is_halted(&self) -> bool {
        self.remaining == 0
    }

    fn advance(&mut self) {
        self.remaining = self.remaining.saturating_sub(1);
        self.steps += 1;
    }

    fn steps(&self) -> u64 {
        self.steps
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot::Word(self.remaining)
    }
}

enum Next<'a> {
    Finish(Output),
    Run(Exec<'a>),
}

type GapFn<'a> = Box<dyn Fn(&Output) -> u64 + 'a>;
type NextFn<'a> = Box<dyn Fn(&Output) -> Next<'a> + 'a>;

/// Runs `first`, spends `gap(output)` bookkeeping steps, then either
/// finishes or continues with a second execution chosen from the output.
struct Seq<'a> {
    first: Exec<'a>,
    gap: GapFn<'a>,
    gap_done: u64,
    next: NextFn<'a>,
    second: Option<Exec<'a>>,
    finished: Option<Output>,
    steps: u64,
}

impl<'a> Seq<'a> {
    fn boxed(
        first: Exec<'a>,
        gap: impl Fn(&Output) -> u64 + 'a,
        next: impl Fn(&Output) -> Next<'a> + 'a,
    ) -> Exec<'a> {
        let mut s = Seq {
            first,
            gap: Box::new(gap),
            gap_done: 0,
            next: Box::new(next),
            second: None,
            finished: None,
            steps: 0,
        };
        s.settle();
        Box::new(s)
    }

    fn settle(&mut self) {
        if self.second.is_some() || self.finished.is_some() {
            return;
        }
        if let Some(out) = self.first.output() {
            if self.gap_done >= (self.gap)(&out) {
                match (self.next)(&out) {
                    Next::Finish(o) => self.finished = Some(o),
                    Next::Run(e) => self.second = Some(e),
                }
            }
        }
    }
}

impl Execution for Seq<'_> {
    fn output(&self) -> Option<Output> {
        match (&self.finished, &self.second) {
            (Some(o), _) => Some(o.clone()),
            (None, Some(e)) => e.output(),
            (None, None) => None,
        }
    }

    fn is_halted(&self) -> bool {
        self.finished.is_some() || self.second.as_ref().is_some_and(|e| e.is_halted())
    }

    fn advance(&mut self) {
        self.steps += 1;
        if self.finished.is_some() {
            return;
        }
        if let Some(e) = &mut self.second {
            e.advance();
            return;
        }
        if !self.first.is_halted() {
            self.first.advance();
        } else {
            self.gap_done += 1;
        }
        self.settle();
    }

    fn steps(&self) -> u64 {
        self.steps
    }

    fn snapshot(&self) -> Snapshot {
        let tail = match (&self.finished, &self.second) {
            (Some(o), _) => Snapshot::Bits(o.to_input()),
            (None, Some(e)) => e.snapshot(),
            (None, None) => Snapshot::Node(Vec::new()),
        };
        Snapshot::Node(vec![self.first.snapshot(), Snapshot::Word(self.gap_done), tail])
    }
}

struct ThresholdExec<'a> {
    n: u64,
    measured: u64,
    simulated: u64,
    inner: Exec<'a>,
    out: Option<bool>,
    steps: u64,
}

impl<'a> ThresholdExec<'a> {
    fn new(inner: &'a Machine, w: &BinaryString, n: u64) -> Self {
        ThresholdExec { n, measured: 0, simulated: 0, inner: inner.start(w), out: None, steps: 0 }
    }
}

impl Execution for ThresholdExec<'_> {
    fn output(&self) -> Option<Output> {
        self.out.map(Output::bit)
    }

    fn is_halted(&self) -> bool {
        self.out.is_some()
    }

    fn advance(&mut self) {
        self.steps += 1;
        if self.out.is_some() {
            return;
        }
        if self.measured <= self.n {
            self.measured += 1;
        } else if !self.inner.is_halted() && self.simulated < self.n {
            self.inner.advance();
            self.simulated += 1;
        } else {
            self.out = Some(!self.inner.is_halted());
        }
    }

    fn steps(&self) -> u64 {
        self.steps
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot::Node(vec![
            Snapshot::Word(self.measured),
            Snapshot::Word(self.simulated),
            self.inner.snapshot(),
            Snapshot::Word(self.out.map_or(2, u64::from)),
        ])
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// An odd-prime decomposition `n = p + q` with `p ≤ q`, if one exists.
pub fn goldbach_witness(n: u64) -> Option<(u64, u64)> {
    (3..=n / 2).step_by(2).find(|&p| is_prime(p) && is_prime(n - p)).map(|p| (p, n - p))
}

/// One candidate `p` per step; a completed even `n` moves on to `n + 2`.
struct GoldbachExec {
    n: u64,
    p: u64,
    steps: u64,
    found: bool,
}

impl Execution for GoldbachExec {
    fn output(&self) -> Option<Output> {
        self.found.then(|| Output::bit(true))
    }

    fn advance(&mut self) {
        self.steps += 1;
        if self.found {
            return;
        }
        if self.p > self.n / 2 {
            self.found = true;
        } else if is_prime(self.p) && is_prime(self.n - self.p) {
            self.n += 2;
            self.p = 3;
        } else {
            self.p += 2;
        }
    }

    fn steps(&self) -> u64 {
        self.steps
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot::Node(vec![Snapshot::Word(self.n), Snapshot::Word(self.p)])
    }
}

struct SearcherExec {
    target: Statement,
    theorems: TheoremEnumerator,
    checked: u64,
    found: bool,
    steps: u64,
}

impl SearcherExec {
    fn new(me: &Machine, input: &BinaryString) -> Self {
        let me = me.self_description().expect("searcher describes itself");
        SearcherExec {
            target: Statement::NotHalts { machine: me, input: input.clone() },
            theorems: TheoremEnumerator::new(),
            checked: 0,
            found: false,
            steps: 0,
        }
    }
}

impl Execution for SearcherExec {
    fn output(&self) -> Option<Output> {
        self.found.then(|| Output::bit(true))
    }

    fn advance(&mut self) {
        self.steps += 1;
        if self.found {
            return;
        }
        if let Some(thm) = self.theorems.next() {
            self.found = thm.statement() == &self.target;
        }
        self.checked += 1;
    }

    fn steps(&self) -> u64 {
        self.steps
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot::Node(vec![Snapshot::Word(self.checked), Snapshot::Word(u64::from(self.found))])
    }
}

/// Bottom-up `T_M0`: one step per level plus the certified `M2` run at each
/// member level, then one step to write the value.
struct DiagonalExec<'a> {
    n: u64,
    level: u64,
    t: u64,
    replay: u64,
    pending: u64,
    stuck: bool,
    out: Option<u64>,
    steps: u64,
    m0: &'a Machine,
    book: Codebook,
}

impl DiagonalExec<'_> {
    fn close_level(&mut self, m2_value: Option<u64>) {
        self.t = match m2_value {
            None => self.t + 1,
            Some(v) => (self.t + 1).max(v.saturating_add(1)),
        };
        self.level += 1;
    }
}

impl Execution for DiagonalExec<'_> {
    fn output(&self) -> Option<Output> {
        self.out.map(|t| Output::from_bits(&BinaryString::from_nat(t)))
    }

    fn advance(&mut self) {
        self.steps += 1;
        if self.out.is_some() || self.stuck {
            return;
        }
        if self.replay > 0 {
            self.replay -= 1;
            if self.replay == 0 {
                self.close_level(Some(self.pending));
            }
            return;
        }
        if self.level > self.n {
            self.out = Some(self.t);
            return;
        }
        match self.book.member(&BigUint::from(self.level), self.m0) {
            None => self.close_level(None),
            Some(quad) => match run_m2(&quad, self.level) {
                Ok((v, 0)) => self.close_level(Some(v)),
                Ok((v, steps)) => {
                    self.pending = v;
                    self.replay = steps;
                }
                Err(_) => self.stuck = true,
            },
        }
    }

    fn steps(&self) -> u64 {
        self.steps
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot::Node(vec![
            Snapshot::Word(self.level),
            Snapshot::Word(self.t),
            Snapshot::Word(self.replay),
            Snapshot::Word(self.pending),
            Snapshot::Word(u64::from(self.stuck) + 2 * u64::from(self.out.is_some())),
        ])
    }
}
