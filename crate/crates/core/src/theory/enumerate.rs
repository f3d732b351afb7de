use std::sync::{Arc, Mutex};

use super::derive::{equality_proof, time_bound_proof};
use super::{Evidence, ProofObject, Statement, Theorem};
use crate::term::Machine;
use crate::tm::{BinaryString, Move, Program, Symbol, Transition, MachineDescription};

/// Size of the evidence: halting time for a trace, `prefix + cycle` for a
/// cycle certificate, 1 for a derivation.
pub fn proof_weight(p: &ProofObject) -> u64 {
    match &p.evidence {
        Evidence::HaltTrace { steps, .. } => *steps,
        Evidence::Cycle { prefix, cycle } => prefix.saturating_add(*cycle),
        Evidence::TimeBound(_) | Evidence::Equality { .. } => 1,
    }
}

/// Weight of a (statement, proof) pair: term weight, plus input length, plus
/// proof weight. `None` if the term is outside the enumerated universe.
pub fn pair_weight(p: &ProofObject) -> Option<u64> {
    let input = match &p.subject {
        Statement::Halts { input, .. } | Statement::NotHalts { input, .. } => input.len() as u64,
        _ => 0,
    };
    Some(p.subject.machine().weight()? + input + proof_weight(p))
}

/// All theorems in a fixed order: weight classes in increasing order, and
/// inside a class by length of the serialized pair, then lexicographically.
/// Every class is finite, so each theorem appears at a finite index.
pub struct TheoremEnumerator {
    next_class: u64,
    buffer: Arc<[Theorem]>,
    cursor: usize,
    produced: u64,
    terms: Vec<Vec<Machine>>,
}

/// Classes up to this weight are computed once per process and shared by
/// every enumerator, including those inside running searchers. The lock is
/// held while a class is computed, so no term in these classes may itself
/// enumerate theorems.
pub(crate) const SHARED_CLASSES: u64 = 5;

static CLASSES: Mutex<Vec<Arc<[Theorem]>>> = Mutex::new(Vec::new());

impl Default for TheoremEnumerator {
    fn default() -> Self {
        Self::new()
    }
}

impl TheoremEnumerator {
    pub fn new() -> Self {
        TheoremEnumerator { next_class: 0, buffer: Arc::from([]), cursor: 0, produced: 0, terms: Vec::new() }
    }

    /// Index the next yielded theorem will have.
    pub fn position(&self) -> u64 {
        self.produced
    }

    fn terms_of_weight(&mut self, w: u64) -> &[Machine] {
        while self.terms.len() as u64 <= w {
            let next = terms_of_exact_weight(self.terms.len() as u64, &self.terms);
            self.terms.push(next);
        }
        &self.terms[w as usize]
    }

    fn class(&mut self, class: u64) -> Arc<[Theorem]> {
        if class > SHARED_CLASSES {
            return self.compute_class(class).into();
        }
        let mut shared = CLASSES.lock().unwrap_or_else(|e| e.into_inner());
        while shared.len() as u64 <= class {
            let next = self.compute_class(shared.len() as u64);
            shared.push(next.into());
        }
        shared[class as usize].clone()
    }

    fn compute_class(&mut self, class: u64) -> Vec<Theorem> {
        let mut found: Vec<(String, Theorem)> = Vec::new();
        for wt in 1..=class {
            let rem = class - wt;
            let terms = self.terms_of_weight(wt).to_vec();
            for t in &terms {
                for len in 0..=rem as usize {
                    for w in BinaryString::all_of_length(len) {
                        for p in run_candidates(t, &w, rem - len as u64) {
                            if let Ok(thm) = Theorem::check(p) {
                                found.push((thm.to_string(), thm));
                            }
                        }
                    }
                }
                if rem == 1 {
                    for p in [time_bound_proof(t), equality_proof(t)].into_iter().flatten() {
                        if let Ok(thm) = Theorem::check(p) {
                            found.push((thm.to_string(), thm));
                        }
                    }
                }
            }
        }
        found.sort_by(|(a, _), (b, _)| (a.len(), a).cmp(&(b.len(), b)));
        found.into_iter().map(|(_, t)| t).collect()
    }
}

impl Iterator for TheoremEnumerator {
    type Item = Theorem;

    fn next(&mut self) -> Option<Theorem> {
        while self.cursor == self.buffer.len() {
            let class = self.next_class;
            self.next_class += 1;
            self.buffer = self.class(class);
            self.cursor = 0;
        }
        self.produced += 1;
        self.cursor += 1;
        Some(self.buffer[self.cursor - 1].clone())
    }
}

/// The `k`-th theorem (0-based).
pub fn enumerate_theorems(k: u64) -> Theorem {
    TheoremEnumerator::new().nth(k as usize).expect("the enumeration is infinite")
}

/// Halting traces and cycle certificates of proof weight exactly `d`. Only
/// pairs read off the actual run can pass the checker, so nothing else is
/// proposed.
fn run_candidates(t: &Machine, w: &BinaryString, d: u64) -> Vec<ProofObject> {
    let mut exec = t.start(w);
    let mut trace = vec![exec.snapshot()];
    for _ in 0..d {
        if exec.is_halted() {
            return Vec::new();
        }
        exec.advance();
        trace.push(exec.snapshot());
    }
    if exec.is_halted() {
        let s = Statement::Halts { machine: t.clone(), input: w.clone() };
        return vec![ProofObject::new(s, Evidence::HaltTrace { steps: d, trace })];
    }
    let last = &trace[d as usize];
    (0..d)
        .filter(|&p| &trace[p as usize] == last)
        .map(|p| {
            let s = Statement::NotHalts { machine: t.clone(), input: w.clone() };
            ProofObject::new(s, Evidence::Cycle { prefix: p, cycle: d - p })
        })
        .collect()
}

const NODE: u64 = 6;

/// Every term of the enumerated universe with weight exactly `w`, given
/// the lists for all smaller weights.
fn terms_of_exact_weight(w: u64, smaller: &[Vec<Machine>]) -> Vec<Machine> {
    let mut out = Vec::new();
    if let Some(n) = (1..=w as usize).find(|&n| (n as u64).checked_pow(n as u32) == Some(w)) {
        out.extend(raw_machines(n).map(Machine::Raw));
    }
    if w < NODE {
        return out;
    }
    let body = w - NODE;
    let sub = |k: u64| smaller.get(k as usize).map(Vec::as_slice).unwrap_or(&[]);
    out.extend(BinaryString::all_of_length(body as usize).map(Machine::Constant));
    if body == 0 {
        out.push(Machine::Identity);
    }
    out.extend(sub(body).iter().cloned().map(Machine::not));
    for wi in 1..=body {
        for inner in sub(wi) {
            for x in BinaryString::all_of_length((body - wi) as usize) {
                out.push(Machine::threshold(inner.clone(), x));
            }
        }
    }
    for wg in 1..=body {
        for wf in 1..=body - wg {
            for gate in sub(wg) {
                for fallback in sub(wf) {
                    for x in BinaryString::all_of_length((body - wg - wf) as usize) {
                        out.push(Machine::switch(gate.clone(), fallback.clone(), x));
                    }
                }
            }
        }
    }
    for wo in 1..body {
        for outer in sub(wo) {
            for inner in sub(body - wo) {
                out.push(Machine::compose(outer.clone(), inner.clone()));
            }
        }
    }
    if w == 2 * NODE {
        out.push(Machine::SelfSearcher);
    }
    out
}

/// All valid `n`-state tables with the halt state last, for every start.
fn raw_machines(n: usize) -> impl Iterator<Item = MachineDescription> {
    let halt = n - 1;
    let halt_row: [Transition; 4] = Symbol::ALL.map(|s| Transition::new(halt, s, Move::S));
    let ordinary: Vec<Transition> = (0..n)
        .flat_map(|next| {
            [Symbol::Zero, Symbol::One, Symbol::Blank]
                .into_iter()
                .flat_map(move |write| Move::ALL.into_iter().map(move |mv| Transition::new(next, write, mv)))
        })
        .collect();
    let on_end: Vec<Transition> = (0..n).map(|next| Transition::new(next, Symbol::LeftEnd, Move::R)).collect();
    // one digit per cell of each ordinary row: `>` first, then 0, 1, blank
    let radices: Vec<usize> = (0..halt).flat_map(|_| [on_end.len(), ordinary.len(), ordinary.len(), ordinary.len()]).collect();
    let tables = Odometer::new(radices).map(move |digits| {
        let mut delta: Vec<[Transition; 4]> = digits
            .chunks(4)
            .map(|d| {
                let mut row = [on_end[d[0]]; 4];
                for (i, sym) in [Symbol::Zero, Symbol::One, Symbol::Blank].into_iter().enumerate() {
                    row[sym.index()] = ordinary[d[i + 1]];
                }
                row[Symbol::LeftEnd.index()] = on_end[d[0]];
                row
            })
            .collect();
        delta.push(halt_row);
        delta
    });
    tables.flat_map(move |delta| (0..n).map(move |start| MachineDescription::from_table_unchecked(start, delta.clone())))
}

/// Mixed-radix counter over all digit vectors.
struct Odometer {
    radices: Vec<usize>,
    digits: Option<Vec<usize>>,
}

impl Odometer {
    fn new(radices: Vec<usize>) -> Self {
        let digits = Some(vec![0; radices.len()]);
        Odometer { radices, digits }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.digits.clone()?;
        let mut d = current.clone();
        let mut i = 0;
        loop {
            if i == d.len() {
                self.digits = None;
                break;
            }
            d[i] += 1;
            if d[i] < self.radices[i] {
                self.digits = Some(d);
                break;
            }
            d[i] = 0;
            i += 1;
        }
        Some(current)
    }
}

#[cfg(test)]
pub(super) fn terms_up_to(w: u64) -> Vec<Vec<Machine>> {
    let mut e = TheoremEnumerator::new();
    e.terms_of_weight(w);
    e.terms
}
