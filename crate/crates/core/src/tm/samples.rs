//! A small library of hand-built raw machines used by tests, the CLI and the
//! constructions.

use super::machine::{MachineDescription, Transition};
use super::symbol::{Move, Symbol};

/// Assembles a table of `n` ordinary states followed by the halt state.
fn assemble(
    name: &str,
    labels: Vec<String>,
    start: usize,
    rows: Vec<[Transition; 4]>,
) -> MachineDescription {
    let halt = rows.len();
    let mut delta = rows;
    delta.push(Symbol::ALL.map(|s| Transition::new(halt, s, Move::S)));
    let mut labels = labels;
    labels.push("h".into());
    MachineDescription::from_table(start, delta)
        .unwrap_or_else(|e| panic!("sample machine {name} is invalid: {e}"))
        .with_name(name)
        .with_labels(labels)
}

fn row(on: impl Fn(Symbol) -> Transition) -> [Transition; 4] {
    Symbol::ALL.map(on)
}

/// Start state equals halt state.
pub fn halt_only() -> MachineDescription {
    assemble("halt-only", vec![], 0, vec![])
}

/// Steps off the left end, then stays put forever.
pub fn self_loop() -> MachineDescription {
    assemble(
        "self-loop",
        vec!["q0".into()],
        0,
        vec![row(|s| match s {
            Symbol::LeftEnd => Transition::new(0, s, Move::R),
            _ => Transition::new(0, s, Move::S),
        })],
    )
}

/// Alternates between two states without moving: a cycle of length 2.
pub fn ping_pong() -> MachineDescription {
    assemble(
        "ping-pong",
        vec!["q0".into(), "q1".into()],
        0,
        vec![
            row(|s| match s {
                Symbol::LeftEnd => Transition::new(0, s, Move::R),
                _ => Transition::new(1, s, Move::S),
            }),
            row(|s| match s {
                Symbol::LeftEnd => Transition::new(1, s, Move::R),
                _ => Transition::new(0, s, Move::S),
            }),
        ],
    )
}

/// Moves right to the first blank and halts there, tape unchanged.
pub fn move_right() -> MachineDescription {
    assemble(
        "move-right",
        vec!["q0".into(), "q1".into()],
        0,
        vec![
            row(|s| match s {
                Symbol::LeftEnd => Transition::new(1, s, Move::R),
                _ => Transition::new(1, s, Move::S),
            }),
            row(|s| match s {
                Symbol::Blank => Transition::new(2, s, Move::S),
                _ => Transition::new(1, s, Move::R),
            }),
        ],
    )
}

/// Halts at exactly step `k` on every input.
pub fn halter(k: usize) -> MachineDescription {
    if k == 0 {
        return halt_only().with_name("halter-0");
    }
    let rows = (0..k)
        .map(|i| {
            let next = i + 1; // == k is the halt state
            row(move |s| match s {
                Symbol::LeftEnd => Transition::new(next, s, Move::R),
                _ => Transition::new(next, s, Move::S),
            })
        })
        .collect();
    assemble(&format!("halter-{k}"), (0..k).map(|i| format!("c{i}")).collect(), 0, rows)
}

/// A finite automaton over `{0,1}` to be compiled into a decider.
pub struct Dfa<'a> {
    pub name: &'a str,
    pub start: usize,
    pub delta: &'a [[usize; 2]],
    pub accept: &'a [bool],
}

/// Compiles a DFA into a decider that erases its input and leaves exactly
/// one bit in cell 1.
pub fn dfa_decider(dfa: &Dfa<'_>) -> MachineDescription {
    let d = dfa.delta.len();
    assert_eq!(dfa.accept.len(), d);
    let scan = |q: usize| 1 + q;
    let back = |q: usize| 1 + d + q;
    let write = |b: bool| 1 + 2 * d + usize::from(b);
    let halt = 3 + 2 * d;

    let mut rows = Vec::with_capacity(halt);
    rows.push(row(|s| match s {
        Symbol::LeftEnd => Transition::new(scan(dfa.start), s, Move::R),
        _ => Transition::new(scan(dfa.start), s, Move::S),
    }));
    for q in 0..d {
        rows.push(row(|s| match s {
            Symbol::Zero => Transition::new(scan(dfa.delta[q][0]), Symbol::Blank, Move::R),
            Symbol::One => Transition::new(scan(dfa.delta[q][1]), Symbol::Blank, Move::R),
            Symbol::Blank => Transition::new(back(q), s, Move::L),
            Symbol::LeftEnd => Transition::new(scan(q), s, Move::R),
        }));
    }
    for q in 0..d {
        rows.push(row(|s| match s {
            Symbol::LeftEnd => Transition::new(write(dfa.accept[q]), s, Move::R),
            _ => Transition::new(back(q), Symbol::Blank, Move::L),
        }));
    }
    for b in [false, true] {
        rows.push(row(|s| match s {
            Symbol::LeftEnd => Transition::new(write(b), s, Move::R),
            _ => Transition::new(halt, Symbol::from_bit(b), Move::S),
        }));
    }
    let mut labels = vec!["init".to_string()];
    labels.extend((0..d).map(|q| format!("scan{q}")));
    labels.extend((0..d).map(|q| format!("back{q}")));
    labels.extend(["write0".to_string(), "write1".to_string()]);
    assemble(dfa.name, labels, 0, rows)
}

/// 1 iff the last bit is 1 (num(s) odd).
pub fn parity_decider() -> MachineDescription {
    dfa_decider(&Dfa { name: "odd", start: 0, delta: &[[0, 1], [0, 1]], accept: &[false, true] })
}

/// 1 iff num(s) is divisible by 3.
pub fn mod3_decider() -> MachineDescription {
    dfa_decider(&Dfa {
        name: "mod3",
        start: 0,
        delta: &[[0, 1], [2, 0], [1, 2]],
        accept: &[true, false, false],
    })
}

/// 1 iff the input contains `11`.
pub fn contains_11_decider() -> MachineDescription {
    dfa_decider(&Dfa {
        name: "contains-11",
        start: 0,
        delta: &[[0, 1], [0, 2], [2, 2]],
        accept: &[false, false, true],
    })
}

/// 1 iff the input has even length.
pub fn even_length_decider() -> MachineDescription {
    dfa_decider(&Dfa { name: "even-length", start: 0, delta: &[[1, 1], [0, 0]], accept: &[true, false] })
}

/// 1 iff the first bit is 0 (the empty string is rejected).
pub fn leading_zero_decider() -> MachineDescription {
    dfa_decider(&Dfa {
        name: "leading-zero",
        start: 0,
        delta: &[[1, 2], [1, 1], [2, 2]],
        accept: &[false, true, false],
    })
}

/// Constant decider over a one-state automaton.
pub fn constant_decider(bit: bool) -> MachineDescription {
    let name = if bit { "always-1" } else { "always-0" };
    dfa_decider(&Dfa { name, start: 0, delta: &[[0, 0]], accept: &[bit] })
}

/// Looks up a sample by the name used on the command line.
pub fn by_name(name: &str) -> Option<MachineDescription> {
    Some(match name {
        "halt-only" => halt_only(),
        "self-loop" => self_loop(),
        "ping-pong" => ping_pong(),
        "move-right" => move_right(),
        "odd" => parity_decider(),
        "mod3" => mod3_decider(),
        "contains-11" => contains_11_decider(),
        "even-length" => even_length_decider(),
        "leading-zero" => leading_zero_decider(),
        "always-0" => constant_decider(false),
        "always-1" => constant_decider(true),
        _ => {
            let k = name.strip_prefix("halter-")?.parse().ok()?;
            halter(k)
        }
    })
}

pub const NAMES: &[&str] = &[
    "halt-only",
    "self-loop",
    "ping-pong",
    "move-right",
    "halter-<k>",
    "odd",
    "mod3",
    "contains-11",
    "even-length",
    "leading-zero",
    "always-0",
    "always-1",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tm::bits::BinaryString;
    use crate::tm::exec::run_bounded;

    fn decide(m: &MachineDescription, s: &BinaryString) -> bool {
        run_bounded(m, s, 10_000).output().and_then(|o| o.as_bit()).expect("decider must return a bit")
    }

    #[test]
    fn halter_halts_exactly_at_k() {
        for k in [0, 1, 2, 3, 5, 17] {
            for s in BinaryString::up_to_length(3) {
                assert_eq!(run_bounded(&halter(k), &s, 100).steps(), k as u64);
            }
        }
    }

    #[test]
    fn dfa_deciders_agree_with_direct_predicates() {
        for s in BinaryString::up_to_length(8) {
            let n = s.num_u64().unwrap();
            assert_eq!(decide(&parity_decider(), &s), n % 2 == 1);
            assert_eq!(decide(&mod3_decider(), &s), n % 3 == 0);
            assert_eq!(decide(&contains_11_decider(), &s), s.to_string().contains("11"));
            assert_eq!(decide(&even_length_decider(), &s), s.len() % 2 == 0);
            assert_eq!(decide(&leading_zero_decider(), &s), s.bits().first() == Some(&false));
            assert!(decide(&constant_decider(true), &s));
            assert!(!decide(&constant_decider(false), &s));
        }
    }

    #[test]
    fn names_resolve() {
        for name in NAMES.iter().filter(|n| !n.contains('<')) {
            assert!(by_name(name).is_some(), "{name}");
        }
        assert_eq!(by_name("halter-4"), Some(halter(4)));
        assert!(by_name("nope").is_none());
    }
}
