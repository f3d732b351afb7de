//! A decidable toy proof system about machine terms.
//!
//! Statements speak about halting, time bounds and pointwise equality of
//! compositions. Proof objects carry evidence whose checking always
//! terminates; [`check_proof`] is the single source of truth for which
//! pairs count as theorems.

mod check;
mod derive;
mod enumerate;
mod poly;
mod search;

use std::fmt;

use crate::sexpr::{shape, Sexpr, SexprError};
use crate::term::{bits_atom, parse_bits, Machine};
use crate::tm::{BinaryString, Snapshot, Symbol};

pub use check::{check_proof, Rejection};
pub use derive::{check_derivation, derive_time_bound, equality_proof, time_bound_proof, Derivation, Rule};
pub use enumerate::{enumerate_theorems, pair_weight, proof_weight, TheoremEnumerator};
pub use poly::Poly;
pub use search::{certify_halting, find_nonhalting_proof};

/// How `PointwiseEqual` relates its three terms. Only sequential
/// composition is supported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Composer {
    Compose,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Statement {
    /// `machine` halts on `input`.
    Halts { machine: Machine, input: BinaryString },
    /// `machine` never halts on `input`.
    NotHalts { machine: Machine, input: BinaryString },
    /// `machine` halts within `a·n^k + b` steps on every input of length `n`.
    TimeBound { machine: Machine, a: u64, k: u32, b: u64 },
    /// `composed(s) = outer(inner(s))` for every `s`, and `inner` is total.
    PointwiseEqual { composed: Machine, outer: Machine, inner: Machine, tag: Composer },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Evidence {
    /// The execution halts at step `steps`; `trace` holds the
    /// `steps + 1` snapshots at times `0..=steps`.
    HaltTrace { steps: u64, trace: Vec<Snapshot> },
    /// The snapshot at time `prefix` recurs at `prefix + cycle` without a
    /// halt in between.
    Cycle { prefix: u64, cycle: u64 },
    TimeBound(Derivation),
    /// Totality of the inner term via its bound derivation.
    Equality { inner_bound: Derivation, tag: Composer },
}

/// A statement paired with evidence for it. Nothing is checked on
/// construction; see [`Theorem`] for the checked form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProofObject {
    pub subject: Statement,
    pub evidence: Evidence,
}

/// A proof object that [`check_proof`] accepted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Theorem {
    proof: ProofObject,
}

impl Theorem {
    pub fn check(proof: ProofObject) -> Result<Theorem, Rejection> {
        check_proof(&proof.subject, &proof)?;
        Ok(Theorem { proof })
    }

    pub fn statement(&self) -> &Statement {
        &self.proof.subject
    }

    pub fn proof(&self) -> &ProofObject {
        &self.proof
    }

    pub fn into_proof(self) -> ProofObject {
        self.proof
    }
}

impl Statement {
    pub fn to_sexpr(&self) -> Sexpr {
        match self {
            Statement::Halts { machine, input } => Sexpr::tagged("halts", [machine.to_sexpr(), bits_atom(input)]),
            Statement::NotHalts { machine, input } => {
                Sexpr::tagged("nothalts", [machine.to_sexpr(), bits_atom(input)])
            }
            Statement::TimeBound { machine, a, k, b } => Sexpr::tagged(
                "timebound",
                [machine.to_sexpr(), nat(*a), nat(*k as u64), nat(*b)],
            ),
            Statement::PointwiseEqual { composed, outer, inner, tag } => Sexpr::tagged(
                "pweq",
                [composed.to_sexpr(), outer.to_sexpr(), inner.to_sexpr(), composer_atom(*tag)],
            ),
        }
    }

    pub fn from_sexpr(e: &Sexpr) -> Result<Statement, SexprError> {
        Ok(match e.as_tagged()? {
            ("halts", [m, w]) => Statement::Halts { machine: Machine::from_sexpr(m)?, input: parse_bits(w)? },
            ("nothalts", [m, w]) => Statement::NotHalts { machine: Machine::from_sexpr(m)?, input: parse_bits(w)? },
            ("timebound", [m, a, k, b]) => Statement::TimeBound {
                machine: Machine::from_sexpr(m)?,
                a: a.as_u64()?,
                k: u32::try_from(k.as_u64()?).map_err(|_| shape("degree", k))?,
                b: b.as_u64()?,
            },
            ("pweq", [c, o, i, t]) => Statement::PointwiseEqual {
                composed: Machine::from_sexpr(c)?,
                outer: Machine::from_sexpr(o)?,
                inner: Machine::from_sexpr(i)?,
                tag: composer_from(t)?,
            },
            _ => return Err(shape("statement", e)),
        })
    }

    /// The term the statement is about.
    pub fn machine(&self) -> &Machine {
        match self {
            Statement::Halts { machine, .. }
            | Statement::NotHalts { machine, .. }
            | Statement::TimeBound { machine, .. } => machine,
            Statement::PointwiseEqual { composed, .. } => composed,
        }
    }
}

impl Evidence {
    pub fn to_sexpr(&self) -> Sexpr {
        match self {
            Evidence::HaltTrace { steps, trace } => {
                let mut items = vec![nat(*steps)];
                items.extend(trace.iter().map(snapshot_to_sexpr));
                Sexpr::tagged("trace", items)
            }
            Evidence::Cycle { prefix, cycle } => Sexpr::tagged("cycle", [nat(*prefix), nat(*cycle)]),
            Evidence::TimeBound(d) => Sexpr::tagged("bound", [d.to_sexpr()]),
            Evidence::Equality { inner_bound, tag } => {
                Sexpr::tagged("eqcert", [inner_bound.to_sexpr(), composer_atom(*tag)])
            }
        }
    }

    pub fn from_sexpr(e: &Sexpr) -> Result<Evidence, SexprError> {
        Ok(match e.as_tagged()? {
            ("trace", [steps, trace @ ..]) => Evidence::HaltTrace {
                steps: steps.as_u64()?,
                trace: trace.iter().map(snapshot_from_sexpr).collect::<Result<_, _>>()?,
            },
            ("cycle", [p, c]) => Evidence::Cycle { prefix: p.as_u64()?, cycle: c.as_u64()? },
            ("bound", [d]) => Evidence::TimeBound(Derivation::from_sexpr(d)?),
            ("eqcert", [d, t]) => Evidence::Equality { inner_bound: Derivation::from_sexpr(d)?, tag: composer_from(t)? },
            _ => return Err(shape("evidence", e)),
        })
    }
}

impl ProofObject {
    pub fn new(subject: Statement, evidence: Evidence) -> Self {
        ProofObject { subject, evidence }
    }

    pub fn to_sexpr(&self) -> Sexpr {
        Sexpr::tagged("proof", [self.subject.to_sexpr(), self.evidence.to_sexpr()])
    }

    pub fn from_sexpr(e: &Sexpr) -> Result<ProofObject, SexprError> {
        match e.as_tagged()? {
            ("proof", [s, ev]) => Ok(ProofObject { subject: Statement::from_sexpr(s)?, evidence: Evidence::from_sexpr(ev)? }),
            _ => Err(shape("proof object", e)),
        }
    }

    pub fn parse(text: &str) -> Result<ProofObject, SexprError> {
        ProofObject::from_sexpr(&Sexpr::parse(text)?)
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexpr())
    }
}

impl fmt::Display for ProofObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexpr())
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.proof)
    }
}

fn nat(n: u64) -> Sexpr {
    Sexpr::atom(n.to_string())
}

fn composer_atom(_: Composer) -> Sexpr {
    Sexpr::atom("compose")
}

fn composer_from(e: &Sexpr) -> Result<Composer, SexprError> {
    match e.as_atom()? {
        "compose" => Ok(Composer::Compose),
        _ => Err(shape("composer tag", e)),
    }
}

/// `(cfg q head ~cells)`, a decimal word, `#bits`, or `(node ...)`.
pub fn snapshot_to_sexpr(s: &Snapshot) -> Sexpr {
    match s {
        Snapshot::Tape { state, head, cells } => {
            let cells: String = cells.iter().map(|c| c.to_char()).collect();
            Sexpr::tagged("cfg", [nat(*state as u64), nat(*head as u64), Sexpr::atom(format!("~{cells}"))])
        }
        Snapshot::Word(w) => nat(*w),
        Snapshot::Bits(b) => bits_atom(b),
        Snapshot::Node(xs) => Sexpr::tagged("node", xs.iter().map(snapshot_to_sexpr)),
    }
}

pub fn snapshot_from_sexpr(e: &Sexpr) -> Result<Snapshot, SexprError> {
    match e {
        Sexpr::Atom(a) if a.starts_with('#') => Ok(Snapshot::Bits(parse_bits(e)?)),
        Sexpr::Atom(_) => Ok(Snapshot::Word(e.as_u64()?)),
        Sexpr::List(_) => match e.as_tagged()? {
            ("cfg", [q, h, cells]) => {
                let cells = cells
                    .as_atom()?
                    .strip_prefix('~')
                    .and_then(|s| s.chars().map(Symbol::from_char).collect::<Option<Vec<_>>>())
                    .ok_or_else(|| shape("~cells", cells))?;
                Ok(Snapshot::Tape { state: q.as_u64()? as usize, head: h.as_u64()? as usize, cells })
            }
            ("node", xs) => Ok(Snapshot::Node(xs.iter().map(snapshot_from_sexpr).collect::<Result<_, _>>()?)),
            _ => Err(shape("snapshot", e)),
        },
    }
}

#[cfg(test)]
mod tests;
