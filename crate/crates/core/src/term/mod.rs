//! Machine terms: raw 5-tuples plus the interpreter-backed combinators the
//! constructions are built from.
//!
//! Every term is a [`Program`]. Composite terms account for time at the
//! outer level: each simulated inner step costs one outer step, and each
//! piece of bookkeeping (measuring the input, dispatching, writing an
//! answer) costs a fixed number of steps documented on the variant.

mod exec;

pub use exec::goldbach_witness;

use std::collections::BTreeMap;
use std::fmt;

use crate::diagonal::Quadruplet;
use crate::sexpr::{shape, Sexpr, SexprError};
use crate::tm::{BinaryString, Execution, MachineDescription, Move, Program, Symbol, Transition};

/// Finite table of answers for strings shorter than the cut-off.
pub type PatchTable = BTreeMap<BinaryString, bool>;

/// A quadruplet planted at a chosen small code of a diagonal evaluator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seed {
    pub code: u64,
    pub quad: Quadruplet,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Machine {
    /// A validated 5-tuple.
    Raw(MachineDescription),
    /// Erases the input and writes a fixed string: `n + |c| + 1` steps.
    Constant(BinaryString),
    /// Returns its input: `n + 1` steps.
    Identity,
    /// Runs the operand, then flips its bit in one step.
    Not(Box<Machine>),
    /// `O⟨M,w⟩`: measures `n = |s|` in `n + 1` steps, simulates `M` on `w`
    /// for at most `n` steps, writes 0 if it halted and 1 otherwise.
    Threshold { inner: Box<Machine>, w: BinaryString },
    /// `Q⟨M1,M2,w⟩`: runs `O⟨M1,w⟩`; on 1 writes 1, on 0 spends one step
    /// dispatching and returns `M2(s)`.
    Switch { gate: Box<Machine>, fallback: Box<Machine>, w: BinaryString },
    /// Answers from `table` when `|s| < cutoff`, otherwise defers to `base`.
    /// Measuring costs `min(n, cutoff) + 1` steps, a lookup one more.
    Patch { base: Box<Machine>, cutoff: usize, table: PatchTable },
    /// `outer(inner(s))` with one step to hand the value over.
    Compose { outer: Box<Machine>, inner: Box<Machine> },
    /// Runs `cond`; one dispatch step; then `when_one(s)` or `when_zero(s)`.
    Select { cond: Box<Machine>, when_one: Box<Machine>, when_zero: Box<Machine> },
    /// Runs both operands and writes 1 iff their outputs are equal.
    Equal(Box<Machine>, Box<Machine>),
    /// Runs the operand and writes `0^k` for `k = num(output)`.
    Unary(Box<Machine>),
    /// Halts at once unless `|s| = 1`; otherwise searches for an even
    /// number above 4 that is not a sum of two odd primes.
    Goldbach,
    /// On input `w`, scans the theorem enumeration for a non-halting
    /// theorem about itself on `w` and halts iff one appears. One step per
    /// enumerated theorem.
    SelfSearcher,
    /// `T_M0` relative to `m0`, over an encoding system with planted seeds.
    Diagonal { m0: Box<Machine>, seeds: Vec<Seed> },
}

impl Machine {
    pub fn raw(m: MachineDescription) -> Self {
        Machine::Raw(m)
    }

    pub fn constant(bits: &str) -> Self {
        Machine::Constant(bits.parse().expect("constant must be binary"))
    }

    pub fn constant_nat(n: u64) -> Self {
        Machine::Constant(BinaryString::from_nat(n))
    }

    pub fn threshold(inner: Machine, w: BinaryString) -> Self {
        Machine::Threshold { inner: Box::new(inner), w }
    }

    pub fn switch(gate: Machine, fallback: Machine, w: BinaryString) -> Self {
        Machine::Switch { gate: Box::new(gate), fallback: Box::new(fallback), w }
    }

    pub fn compose(outer: Machine, inner: Machine) -> Self {
        Machine::Compose { outer: Box::new(outer), inner: Box::new(inner) }
    }

    pub fn select(cond: Machine, when_one: Machine, when_zero: Machine) -> Self {
        Machine::Select { cond: Box::new(cond), when_one: Box::new(when_one), when_zero: Box::new(when_zero) }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(m: Machine) -> Self {
        Machine::Not(Box::new(m))
    }

    pub fn equal(a: Machine, b: Machine) -> Self {
        Machine::Equal(Box::new(a), Box::new(b))
    }

    pub fn unary(m: Machine) -> Self {
        Machine::Unary(Box::new(m))
    }

    /// The term the self-searcher looks for theorems about. The searcher is
    /// a closed term, so reproducing its own description is exact.
    pub fn self_description(&self) -> Option<Machine> {
        match self {
            Machine::SelfSearcher => Some(Machine::SelfSearcher),
            _ => None,
        }
    }

    /// Enumeration weight; `None` for terms outside the enumerated
    /// universe of the toy theory.
    pub fn weight(&self) -> Option<u64> {
        const NODE: u64 = 6;
        Some(match self {
            Machine::Raw(m) => {
                let n = m.state_count() as u64;
                n.checked_pow(n as u32)?
            }
            Machine::Constant(c) => NODE + c.len() as u64,
            Machine::Identity => NODE,
            Machine::Not(x) => NODE + x.weight()?,
            Machine::Threshold { inner, w } => NODE + inner.weight()? + w.len() as u64,
            Machine::Switch { gate, fallback, w } => NODE + gate.weight()? + fallback.weight()? + w.len() as u64,
            Machine::Compose { outer, inner } => NODE + outer.weight()? + inner.weight()?,
            Machine::SelfSearcher => 2 * NODE,
            _ => return None,
        })
    }

    pub fn to_sexpr(&self) -> Sexpr {
        let b = |m: &Machine| m.to_sexpr();
        match self {
            Machine::Raw(m) => raw_to_sexpr(m),
            Machine::Constant(c) => Sexpr::tagged("const", [bits_atom(c)]),
            Machine::Identity => Sexpr::tagged("id", []),
            Machine::Not(x) => Sexpr::tagged("not", [b(x)]),
            Machine::Threshold { inner, w } => Sexpr::tagged("thr", [b(inner), bits_atom(w)]),
            Machine::Switch { gate, fallback, w } => Sexpr::tagged("switch", [b(gate), b(fallback), bits_atom(w)]),
            Machine::Patch { base, cutoff, table } => {
                let mut entries: Vec<_> = table.iter().collect();
                entries.sort_by(|x, y| (x.0.len(), x.0).cmp(&(y.0.len(), y.0)));
                let mut items = vec![b(base), Sexpr::atom(cutoff.to_string())];
                items.extend(entries.into_iter().map(|(s, v)| {
                    Sexpr::list(vec![bits_atom(s), Sexpr::atom(if *v { "1" } else { "0" })])
                }));
                Sexpr::tagged("patch", items)
            }
            Machine::Compose { outer, inner } => Sexpr::tagged("compose", [b(outer), b(inner)]),
            Machine::Select { cond, when_one, when_zero } => {
                Sexpr::tagged("select", [b(cond), b(when_one), b(when_zero)])
            }
            Machine::Equal(x, y) => Sexpr::tagged("equal", [b(x), b(y)]),
            Machine::Unary(x) => Sexpr::tagged("unary", [b(x)]),
            Machine::Goldbach => Sexpr::tagged("goldbach", []),
            Machine::SelfSearcher => Sexpr::tagged("searcher", []),
            Machine::Diagonal { m0, seeds } => {
                let mut items = vec![b(m0)];
                items.extend(
                    seeds.iter().map(|s| Sexpr::tagged("seed", [Sexpr::atom(s.code.to_string()), s.quad.to_sexpr()])),
                );
                Sexpr::tagged("diag", items)
            }
        }
    }

    pub fn from_sexpr(e: &Sexpr) -> Result<Machine, SexprError> {
        let (head, args) = e.as_tagged()?;
        let sub = |i: usize| -> Result<Box<Machine>, SexprError> {
            args.get(i).ok_or_else(|| shape("machine operand", e)).and_then(Machine::from_sexpr).map(Box::new)
        };
        let bits = |i: usize| args.get(i).ok_or_else(|| shape("bits operand", e)).and_then(parse_bits);
        let arity = |n: usize| if args.len() == n { Ok(()) } else { Err(shape("operand count", e)) };
        Ok(match head {
            "raw" => raw_from_sexpr(e, args)?,
            "const" => {
                arity(1)?;
                Machine::Constant(bits(0)?)
            }
            "id" => {
                arity(0)?;
                Machine::Identity
            }
            "not" => {
                arity(1)?;
                Machine::Not(sub(0)?)
            }
            "thr" => {
                arity(2)?;
                Machine::Threshold { inner: sub(0)?, w: bits(1)? }
            }
            "switch" => {
                arity(3)?;
                Machine::Switch { gate: sub(0)?, fallback: sub(1)?, w: bits(2)? }
            }
            "patch" => {
                if args.len() < 2 {
                    return Err(shape("patch operands", e));
                }
                let cutoff = args[1].as_u64()? as usize;
                let mut table = PatchTable::new();
                for entry in &args[2..] {
                    match entry.as_list()? {
                        [s, v] => {
                            let bit = match v.as_atom()? {
                                "0" => false,
                                "1" => true,
                                _ => return Err(shape("table bit", v)),
                            };
                            if table.insert(parse_bits(s)?, bit).is_some() {
                                return Err(shape("distinct table keys", entry));
                            }
                        }
                        _ => return Err(shape("table entry", entry)),
                    }
                }
                Machine::Patch { base: sub(0)?, cutoff, table }
            }
            "compose" => {
                arity(2)?;
                Machine::Compose { outer: sub(0)?, inner: sub(1)? }
            }
            "select" => {
                arity(3)?;
                Machine::Select { cond: sub(0)?, when_one: sub(1)?, when_zero: sub(2)? }
            }
            "equal" => {
                arity(2)?;
                Machine::Equal(sub(0)?, sub(1)?)
            }
            "unary" => {
                arity(1)?;
                Machine::Unary(sub(0)?)
            }
            "goldbach" => {
                arity(0)?;
                Machine::Goldbach
            }
            "searcher" => {
                arity(0)?;
                Machine::SelfSearcher
            }
            "diag" => {
                if args.is_empty() {
                    return Err(shape("diag operands", e));
                }
                let mut seeds = Vec::new();
                for s in &args[1..] {
                    match s.as_tagged()? {
                        ("seed", [code, quad]) => {
                            seeds.push(Seed { code: code.as_u64()?, quad: Quadruplet::from_sexpr(quad)? })
                        }
                        _ => return Err(shape("seed", s)),
                    }
                }
                Machine::Diagonal { m0: sub(0)?, seeds }
            }
            _ => return Err(shape("machine term", e)),
        })
    }

    pub fn parse(text: &str) -> Result<Machine, SexprError> {
        Machine::from_sexpr(&Sexpr::parse(text)?)
    }

    /// Short human-readable name.
    pub fn describe(&self) -> String {
        match self {
            Machine::Raw(m) if !m.name().is_empty() => m.name().to_string(),
            Machine::Raw(m) => format!("raw/{}", m.state_count()),
            Machine::Constant(c) => format!("const({c})"),
            Machine::Identity => "id".into(),
            Machine::Not(x) => format!("not({})", x.describe()),
            Machine::Threshold { inner, w } => format!("O<{}, {w}>", inner.describe()),
            Machine::Switch { gate, fallback, w } => format!("Q<{}, {}, {w}>", gate.describe(), fallback.describe()),
            Machine::Patch { base, cutoff, .. } => format!("patch({}, m={cutoff})", base.describe()),
            Machine::Compose { outer, inner } => format!("{}∘{}", outer.describe(), inner.describe()),
            Machine::Select { cond, when_one, when_zero } => {
                format!("if {} then {} else {}", cond.describe(), when_one.describe(), when_zero.describe())
            }
            Machine::Equal(a, b) => format!("eq({}, {})", a.describe(), b.describe()),
            Machine::Unary(x) => format!("unary({})", x.describe()),
            Machine::Goldbach => "goldbach".into(),
            Machine::SelfSearcher => "M_h".into(),
            Machine::Diagonal { m0, seeds } => format!("T[{}; {} seeds]", m0.describe(), seeds.len()),
        }
    }
}

impl fmt::Display for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexpr())
    }
}

impl From<MachineDescription> for Machine {
    fn from(m: MachineDescription) -> Self {
        Machine::Raw(m)
    }
}

impl Program for Machine {
    fn start<'a>(&'a self, input: &BinaryString) -> Box<dyn Execution + 'a> {
        exec::start(self, input)
    }
}

pub fn bits_atom(b: &BinaryString) -> Sexpr {
    Sexpr::atom(format!("#{b}"))
}

pub fn parse_bits(e: &Sexpr) -> Result<BinaryString, SexprError> {
    e.as_atom()?
        .strip_prefix('#')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| shape("#bits", e))
}

fn transition_atom(t: &Transition) -> String {
    format!("{}{}{}", t.next, t.write, t.mv)
}

fn raw_to_sexpr(m: &MachineDescription) -> Sexpr {
    let mut items = vec![Sexpr::atom(m.state_count().to_string()), Sexpr::atom(m.start().to_string())];
    items.extend(m.table().iter().flatten().map(|t| Sexpr::atom(transition_atom(t))));
    Sexpr::tagged("raw", items)
}

fn raw_from_sexpr(e: &Sexpr, args: &[Sexpr]) -> Result<Machine, SexprError> {
    let [n, start, rest @ ..] = args else {
        return Err(shape("raw header", e));
    };
    let n = n.as_u64()? as usize;
    let start = start.as_u64()? as usize;
    if rest.len() != 4 * n || n == 0 {
        return Err(shape("4 transitions per state", e));
    }
    let mut delta = Vec::with_capacity(n);
    for chunk in rest.chunks(4) {
        let mut row = [Transition::new(0, Symbol::Blank, Move::S); 4];
        for (slot, atom) in row.iter_mut().zip(chunk) {
            let a = atom.as_atom()?;
            let mut chars: Vec<char> = a.chars().collect();
            let mv = chars.pop().and_then(Move::from_char);
            let write = chars.pop().and_then(Symbol::from_char);
            let digits: String = chars.into_iter().collect();
            let next = Sexpr::atom(digits).as_u64().ok();
            match (next, write, mv) {
                (Some(next), Some(write), Some(mv)) => *slot = Transition::new(next as usize, write, mv),
                _ => return Err(shape("transition atom", atom)),
            }
        }
        delta.push(row);
    }
    MachineDescription::from_table(start, delta)
        .map(Machine::Raw)
        .map_err(|_| shape("valid machine", e))
}
