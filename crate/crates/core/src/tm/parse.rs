//! Line-based machine file format:
//!
//! ```text
//! machine move-right
//! q0 > -> q1 > R
//! q1 0 -> q1 0 R
//! ...
//! start q0
//! halt h
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::collections::HashSet;

use super::machine::{validate_machine, InvalidMachine, MachineDescription, RawMachine, RawTransition};
use super::symbol::{Move, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown move `{0}`")]
    UnknownMove(String),
    #[error("duplicate transition for ({0}, {1})")]
    DuplicateTransition(String, Symbol),
    #[error("duplicate `{0}` line")]
    DuplicateHeader(&'static str),
    #[error("malformed line: {0}")]
    Syntax(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] InvalidMachine),
}

fn symbol(tok: &str, line: usize) -> Result<Symbol, ParseError> {
    let mut chars = tok.chars();
    match (chars.next().and_then(Symbol::from_char), chars.next()) {
        (Some(s), None) => Ok(s),
        _ => Err(ParseError { line, kind: ParseErrorKind::UnknownSymbol(tok.to_string()) }),
    }
}

fn movement(tok: &str, line: usize) -> Result<Move, ParseError> {
    let mut chars = tok.chars();
    match (chars.next().and_then(Move::from_char), chars.next()) {
        (Some(m), None) => Ok(m),
        _ => Err(ParseError { line, kind: ParseErrorKind::UnknownMove(tok.to_string()) }),
    }
}

pub fn parse_machine(text: &str) -> Result<RawMachine, ParseError> {
    let mut raw = RawMachine::default();
    let mut seen_name = false;
    let mut keys = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let syntax = || ParseError { line: line_no, kind: ParseErrorKind::Syntax(line.to_string()) };
        match toks.as_slice() {
            ["machine", name] => {
                if seen_name {
                    return Err(ParseError { line: line_no, kind: ParseErrorKind::DuplicateHeader("machine") });
                }
                seen_name = true;
                raw.name = name.to_string();
            }
            ["start", q] => {
                if raw.start.replace(q.to_string()).is_some() {
                    return Err(ParseError { line: line_no, kind: ParseErrorKind::DuplicateHeader("start") });
                }
            }
            ["halt", q] => {
                if raw.halt.replace(q.to_string()).is_some() {
                    return Err(ParseError { line: line_no, kind: ParseErrorKind::DuplicateHeader("halt") });
                }
            }
            [from, read, "->", to, write, mv] => {
                let read = symbol(read, line_no)?;
                let write = symbol(write, line_no)?;
                let mv = movement(mv, line_no)?;
                if !keys.insert((from.to_string(), read)) {
                    return Err(ParseError {
                        line: line_no,
                        kind: ParseErrorKind::DuplicateTransition(from.to_string(), read),
                    });
                }
                raw.transitions.push(RawTransition {
                    from: from.to_string(),
                    read,
                    to: to.to_string(),
                    write,
                    mv,
                });
            }
            _ => return Err(syntax()),
        }
    }
    if !seen_name {
        return Err(ParseError { line: 1, kind: ParseErrorKind::Syntax("missing `machine <name>` header".into()) });
    }
    Ok(raw)
}

/// Parses and validates in one go.
pub fn load_machine(text: &str) -> Result<MachineDescription, LoadError> {
    Ok(validate_machine(&parse_machine(text)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tm::machine::Violation;

    const HALT_ONLY: &str = "machine halt-only
h 0 -> h 0 S
h 1 -> h 1 S
h _ -> h _ S
h > -> h > S
start h
halt h
";

    const MOVE_RIGHT: &str = "machine move-right
q0 > -> q1 > R
q0 0 -> q1 0 S
q0 1 -> q1 1 S
q0 _ -> q1 _ S
q1 > -> q1 > R
q1 0 -> q1 0 R
q1 1 -> q1 1 R
q1 _ -> h _ S
h 0 -> h 0 S
h 1 -> h 1 S
h _ -> h _ S
h > -> h > S
start q0
halt h
";

    #[test]
    fn halt_only_is_valid() {
        let m = load_machine(HALT_ONLY).unwrap();
        assert_eq!(m.state_count(), 1);
        assert_eq!(m.start(), m.halt());
    }

    #[test]
    fn move_right_is_valid() {
        let m = load_machine(MOVE_RIGHT).unwrap();
        assert_eq!(m.state_count(), 3);
        assert_eq!(m.label(m.halt()), "h");
    }

    #[test]
    fn left_move_on_left_end_is_rejected() {
        let text = MOVE_RIGHT.replace("q0 > -> q1 > R", "q0 > -> q1 > L");
        match load_machine(&text) {
            Err(LoadError::Invalid(InvalidMachine(v))) => {
                assert_eq!(v, vec![Violation::LeftEnd { state: "q0".into() }]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn writing_left_end_is_rejected() {
        let text = MOVE_RIGHT.replace("q1 0 -> q1 0 R", "q1 0 -> q1 > R");
        let err = load_machine(&text).unwrap_err();
        assert!(matches!(err, LoadError::Invalid(InvalidMachine(v))
            if v == vec![Violation::WritesLeftEnd { state: "q1".into(), symbol: Symbol::Zero }]));
    }

    #[test]
    fn missing_rule_is_non_total() {
        let text = MOVE_RIGHT.replace("q1 1 -> q1 1 R\n", "");
        let err = load_machine(&text).unwrap_err();
        assert!(matches!(err, LoadError::Invalid(InvalidMachine(v))
            if v == vec![Violation::NonTotal { state: "q1".into(), symbol: Symbol::One }]));
    }

    #[test]
    fn halt_must_self_loop() {
        let text = MOVE_RIGHT.replace("h 0 -> h 0 S", "h 0 -> h 1 S");
        let err = load_machine(&text).unwrap_err();
        assert!(matches!(err, LoadError::Invalid(InvalidMachine(v))
            if v == vec![Violation::HaltNotSelfLoop { symbol: Symbol::Zero }]));
    }

    #[test]
    fn second_halt_like_state_is_rejected() {
        let text = MOVE_RIGHT
            .replace("q0 > -> q1 > R", "q0 > -> q0 > S")
            .replace("q0 0 -> q1 0 S", "q0 0 -> q0 0 S")
            .replace("q0 1 -> q1 1 S", "q0 1 -> q0 1 S")
            .replace("q0 _ -> q1 _ S", "q0 _ -> q0 _ S");
        let err = load_machine(&text).unwrap_err();
        let LoadError::Invalid(InvalidMachine(v)) = err else { panic!() };
        assert!(v.contains(&Violation::DuplicateHaltLike { state: "q0".into() }));
        assert!(v.contains(&Violation::LeftEnd { state: "q0".into() }));
    }

    #[test]
    fn unknown_symbol_and_duplicates() {
        let err = parse_machine("machine x\nq0 2 -> q0 0 R\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownSymbol("2".into()));
        let err = parse_machine("machine x\nq0 0 -> q0 0 R\nq0 0 -> q0 1 R\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(matches!(err.kind, ParseErrorKind::DuplicateTransition(_, Symbol::Zero)));
        let err = parse_machine("machine x\nq0 0 -> q0 0 X\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownMove("X".into()));
    }

    #[test]
    fn file_format_round_trips() {
        let m = load_machine(MOVE_RIGHT).unwrap();
        let again = load_machine(&m.to_file_format()).unwrap();
        assert_eq!(m, again);
        assert_eq!(m.to_file_format(), again.to_file_format());
    }
}
