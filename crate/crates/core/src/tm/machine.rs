use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::symbol::{Move, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub next: usize,
    pub write: Symbol,
    pub mv: Move,
}

impl Transition {
    pub fn new(next: usize, write: Symbol, mv: Move) -> Self {
        Transition { next, write, mv }
    }
}

/// A validated deterministic machine `(Q, Γ, δ, q0, q_halt)`.
///
/// States are numbered `0..n`; the halt state is always the last one. Labels
/// and the machine name are carried for display only and take no part in
/// equality.
#[derive(Clone, Debug)]
pub struct MachineDescription {
    name: String,
    labels: Vec<String>,
    delta: Vec<[Transition; 4]>,
    start: usize,
}

impl PartialEq for MachineDescription {
    fn eq(&self, other: &Self) -> bool {
        self.start == other.start && self.delta == other.delta
    }
}

impl Eq for MachineDescription {}

impl Hash for MachineDescription {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.start.hash(state);
        self.delta.hash(state);
    }
}

/// One violated constraint of the machine definition.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("missing `start` line")]
    MissingStart,
    #[error("missing `halt` line")]
    MissingHalt,
    #[error("non-total transition function: no rule for ({state}, {symbol})")]
    NonTotal { state: String, symbol: Symbol },
    #[error("left-end violation: state {state} must write `>` and move R on `>`")]
    LeftEnd { state: String },
    #[error("left-end violation: ({state}, {symbol}) writes `>` onto an ordinary cell")]
    WritesLeftEnd { state: String, symbol: Symbol },
    #[error("halt-state violation: halt must map ({symbol}) to itself with move S")]
    HaltNotSelfLoop { symbol: Symbol },
    #[error("duplicate halt-like state: {state} self-loops with S on every symbol")]
    DuplicateHaltLike { state: String },
    #[error("transition into undeclared state {0}")]
    UnknownState(String),
}

/// Every constraint a candidate machine violates.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid machine: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct InvalidMachine(pub Vec<Violation>);

/// A transition as written in a machine file, before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTransition {
    pub from: String,
    pub read: Symbol,
    pub to: String,
    pub write: Symbol,
    pub mv: Move,
}

/// A machine description as parsed from text; nothing is checked yet.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawMachine {
    pub name: String,
    pub transitions: Vec<RawTransition>,
    pub start: Option<String>,
    pub halt: Option<String>,
}

impl RawMachine {
    fn state_order(&self) -> Vec<String> {
        let mut seen = Vec::<String>::new();
        let mut push = |s: &str| {
            if !seen.iter().any(|x| x == s) {
                seen.push(s.to_string());
            }
        };
        if let Some(s) = &self.start {
            push(s);
        }
        for t in &self.transitions {
            push(&t.from);
        }
        for t in &self.transitions {
            push(&t.to);
        }
        if let Some(h) = &self.halt {
            push(h);
        }
        seen
    }
}

/// Checks every machine constraint and renumbers states with halt last.
pub fn validate_machine(raw: &RawMachine) -> Result<MachineDescription, InvalidMachine> {
    let mut violations = Vec::new();
    let (start, halt) = match (&raw.start, &raw.halt) {
        (Some(s), Some(h)) => (s.clone(), h.clone()),
        (s, h) => {
            if s.is_none() {
                violations.push(Violation::MissingStart);
            }
            if h.is_none() {
                violations.push(Violation::MissingHalt);
            }
            return Err(InvalidMachine(violations));
        }
    };

    let mut order: Vec<String> = raw.state_order().into_iter().filter(|s| *s != halt).collect();
    order.push(halt.clone());
    let index: HashMap<String, usize> = order.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();

    let mut table: Vec<[Option<Transition>; 4]> = vec![[None; 4]; order.len()];
    for t in &raw.transitions {
        let from = index[&t.from];
        let to = index[&t.to];
        table[from][t.read.index()] = Some(Transition::new(to, t.write, t.mv));
    }

    let mut delta = Vec::with_capacity(order.len());
    for (q, row) in table.iter().enumerate() {
        let mut full = [Transition::new(q, Symbol::Blank, Move::S); 4];
        for sym in Symbol::ALL {
            match row[sym.index()] {
                Some(t) => full[sym.index()] = t,
                None => violations.push(Violation::NonTotal { state: order[q].clone(), symbol: sym }),
            }
        }
        delta.push(full);
    }
    if !violations.is_empty() {
        return Err(InvalidMachine(violations));
    }

    let m = MachineDescription { name: raw.name.clone(), labels: order, start: index[&start], delta };
    let violations = m.violations();
    if violations.is_empty() {
        Ok(m)
    } else {
        Err(InvalidMachine(violations))
    }
}

impl MachineDescription {
    /// Builds a machine from a numbered table whose last row is the halt
    /// state.
    pub fn from_table(start: usize, delta: Vec<[Transition; 4]>) -> Result<Self, InvalidMachine> {
        let n = delta.len();
        if n == 0 || start >= n {
            return Err(InvalidMachine(vec![Violation::MissingStart]));
        }
        if let Some(t) = delta.iter().flatten().find(|t| t.next >= n) {
            return Err(InvalidMachine(vec![Violation::UnknownState(format!("q{}", t.next))]));
        }
        let labels = default_labels(n);
        let m = MachineDescription { name: String::new(), labels, delta, start };
        let violations = m.violations();
        if violations.is_empty() {
            Ok(m)
        } else {
            Err(InvalidMachine(violations))
        }
    }

    /// Same as [`from_table`](Self::from_table) for tables already known to be
    /// valid (the enumerator produces only such tables).
    pub(crate) fn from_table_unchecked(start: usize, delta: Vec<[Transition; 4]>) -> Self {
        let labels = default_labels(delta.len());
        MachineDescription { name: String::new(), labels, delta, start }
    }

    fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let halt = self.halt();
        for sym in Symbol::ALL {
            let t = self.delta[halt][sym.index()];
            if t != Transition::new(halt, sym, Move::S) {
                out.push(Violation::HaltNotSelfLoop { symbol: sym });
            }
        }
        for q in 0..halt {
            let label = self.labels[q].clone();
            let on_end = self.delta[q][Symbol::LeftEnd.index()];
            if on_end.write != Symbol::LeftEnd || on_end.mv != Move::R {
                out.push(Violation::LeftEnd { state: label.clone() });
            }
            for sym in [Symbol::Zero, Symbol::One, Symbol::Blank] {
                if self.delta[q][sym.index()].write == Symbol::LeftEnd {
                    out.push(Violation::WritesLeftEnd { state: label.clone(), symbol: sym });
                }
            }
            let halt_like = Symbol::ALL
                .iter()
                .all(|&s| self.delta[q][s.index()] == Transition::new(q, s, Move::S));
            if halt_like {
                out.push(Violation::DuplicateHaltLike { state: label });
            }
        }
        out
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.delta.len());
        self.labels = labels;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn label(&self, q: usize) -> &str {
        &self.labels[q]
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn halt(&self) -> usize {
        self.delta.len() - 1
    }

    pub fn delta(&self, q: usize, read: Symbol) -> Transition {
        self.delta[q][read.index()]
    }

    pub fn table(&self) -> &[[Transition; 4]] {
        &self.delta
    }

    /// Renders the machine in the line-based file format.
    pub fn to_file_format(&self) -> String {
        let mut out = String::new();
        let name = if self.name.is_empty() { "unnamed" } else { &self.name };
        out.push_str(&format!("machine {name}\n"));
        for (q, row) in self.delta.iter().enumerate() {
            for sym in Symbol::ALL {
                let t = row[sym.index()];
                out.push_str(&format!(
                    "{} {} -> {} {} {}\n",
                    self.labels[q], sym, self.labels[t.next], t.write, t.mv
                ));
            }
        }
        out.push_str(&format!("start {}\n", self.labels[self.start]));
        out.push_str(&format!("halt {}\n", self.labels[self.halt()]));
        out
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| if i + 1 == n { "h".to_string() } else { format!("q{i}") }).collect()
}

impl fmt::Display for MachineDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_file_format())
    }
}
