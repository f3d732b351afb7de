use std::fmt;

use super::bits::{BinaryString, Output};
use super::machine::{MachineDescription, Transition};
use super::symbol::{Move, Symbol};

/// Instantaneous description of a raw machine. Cell 0 permanently holds the
/// left-end marker and is not stored; `tape[i]` is cell `i + 1`, with
/// trailing blanks trimmed so equal tapes compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: usize,
    pub tape: Vec<Symbol>,
    pub head: usize,
    pub steps: u64,
}

impl Configuration {
    /// Start state, head on the left-end cell, input from cell 1.
    pub fn initial(m: &MachineDescription, input: &BinaryString) -> Self {
        Configuration { state: m.start(), tape: input.symbols().collect(), head: 0, steps: 0 }
    }

    pub fn read(&self) -> Symbol {
        self.cell(self.head)
    }

    pub fn cell(&self, index: usize) -> Symbol {
        match index {
            0 => Symbol::LeftEnd,
            i => self.tape.get(i - 1).copied().unwrap_or(Symbol::Blank),
        }
    }

    fn write(&mut self, sym: Symbol) {
        if self.head == 0 {
            // validated machines only ever rewrite `>` here
            return;
        }
        let i = self.head - 1;
        if sym == Symbol::Blank && i >= self.tape.len() {
            return;
        }
        if i >= self.tape.len() {
            self.tape.resize(i + 1, Symbol::Blank);
        }
        self.tape[i] = sym;
        while self.tape.last() == Some(&Symbol::Blank) {
            self.tape.pop();
        }
    }

    /// Applies one transition in place and returns it.
    pub fn apply(&mut self, m: &MachineDescription) -> Transition {
        let t = m.delta(self.state, self.read());
        self.write(t.write);
        self.state = t.next;
        match t.mv {
            Move::L => self.head = self.head.saturating_sub(1),
            Move::S => {}
            Move::R => self.head += 1,
        }
        self.steps += 1;
        t
    }

    pub fn output(&self) -> Output {
        Output::from_symbols(self.tape.clone())
    }

    pub fn snapshot(&self) -> Snapshot {
        Snapshot::Tape { state: self.state, head: self.head, cells: self.tape.clone() }
    }
}

/// Applies `δ` once.
pub fn step(m: &MachineDescription, c: &Configuration) -> Configuration {
    let mut next = c.clone();
    next.apply(m);
    next
}

/// A step-count-free image of an execution's state, used for cycle
/// detection and for halting traces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Snapshot {
    Tape { state: usize, head: usize, cells: Vec<Symbol> },
    Word(u64),
    Bits(BinaryString),
    Node(Vec<Snapshot>),
}

impl fmt::Display for Snapshot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Snapshot::Tape { state, head, cells } => {
                write!(f, "q{state}@{head}:")?;
                for c in cells {
                    write!(f, "{c}")?;
                }
                Ok(())
            }
            Snapshot::Word(w) => write!(f, "{w}"),
            Snapshot::Bits(b) => write!(f, "#{b}"),
            Snapshot::Node(xs) => {
                f.write_str("[")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// A resumable computation advanced one step at a time.
pub trait Execution {
    /// `Some` once the computation has halted.
    fn output(&self) -> Option<Output>;

    fn is_halted(&self) -> bool {
        self.output().is_some()
    }

    /// One step. Advancing a halted execution leaves its snapshot unchanged
    /// but still counts the step.
    fn advance(&mut self);

    fn steps(&self) -> u64;

    fn snapshot(&self) -> Snapshot;
}

/// Anything that can be started on a binary input.
pub trait Program {
    fn start<'a>(&'a self, input: &BinaryString) -> Box<dyn Execution + 'a>;
}

pub struct RawExecution<'a> {
    machine: &'a MachineDescription,
    config: Configuration,
}

impl<'a> RawExecution<'a> {
    pub fn new(machine: &'a MachineDescription, input: &BinaryString) -> Self {
        RawExecution { machine, config: Configuration::initial(machine, input) }
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn apply(&mut self) -> Transition {
        self.config.apply(self.machine)
    }
}

impl Execution for RawExecution<'_> {
    fn output(&self) -> Option<Output> {
        self.is_halted().then(|| self.config.output())
    }

    fn is_halted(&self) -> bool {
        self.config.state == self.machine.halt()
    }

    fn advance(&mut self) {
        self.config.apply(self.machine);
    }

    fn steps(&self) -> u64 {
        self.config.steps
    }

    fn snapshot(&self) -> Snapshot {
        self.config.snapshot()
    }
}

impl Program for MachineDescription {
    fn start<'a>(&'a self, input: &BinaryString) -> Box<dyn Execution + 'a> {
        Box::new(RawExecution::new(self, input))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RunOutcome {
    Halted { output: Output, steps: u64 },
    BudgetExhausted { steps: u64 },
}

impl RunOutcome {
    pub fn steps(&self) -> u64 {
        match self {
            RunOutcome::Halted { steps, .. } | RunOutcome::BudgetExhausted { steps } => *steps,
        }
    }

    pub fn output(&self) -> Option<&Output> {
        match self {
            RunOutcome::Halted { output, .. } => Some(output),
            RunOutcome::BudgetExhausted { .. } => None,
        }
    }

    pub fn is_halted(&self) -> bool {
        matches!(self, RunOutcome::Halted { .. })
    }
}

impl fmt::Display for RunOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunOutcome::Halted { output, steps } => write!(f, "Halted steps={steps} output={output}"),
            RunOutcome::BudgetExhausted { steps } => write!(f, "Budget-Exhausted steps={steps}"),
        }
    }
}

/// Drives an execution until it halts or `budget` steps have been applied.
pub fn drive(exec: &mut dyn Execution, budget: u64) -> RunOutcome {
    loop {
        if let Some(output) = exec.output() {
            return RunOutcome::Halted { output, steps: exec.steps() };
        }
        if exec.steps() >= budget {
            return RunOutcome::BudgetExhausted { steps: exec.steps() };
        }
        exec.advance();
    }
}

/// Runs `program` on `input` for at most `budget` steps.
pub fn run_bounded<P: Program + ?Sized>(program: &P, input: &BinaryString, budget: u64) -> RunOutcome {
    drive(program.start(input).as_mut(), budget)
}
