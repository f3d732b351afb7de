//! Minimal s-expressions: atoms are runs of non-space, non-paren characters,
//! lists are parenthesised and single-space separated in canonical form.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexpr {
    Atom(String),
    List(Vec<Sexpr>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SexprError {
    #[error("unexpected end of input")]
    Eof,
    #[error("unexpected `)` at byte {0}")]
    Unbalanced(usize),
    #[error("trailing input at byte {0}")]
    Trailing(usize),
    #[error("expected {expected}, found `{found}`")]
    Shape { expected: &'static str, found: String },
}

impl Sexpr {
    pub fn atom(s: impl Into<String>) -> Self {
        Sexpr::Atom(s.into())
    }

    pub fn list(items: Vec<Sexpr>) -> Self {
        Sexpr::List(items)
    }

    /// `(head items...)`
    pub fn tagged(head: &str, items: impl IntoIterator<Item = Sexpr>) -> Self {
        let mut v = vec![Sexpr::atom(head)];
        v.extend(items);
        Sexpr::List(v)
    }

    pub fn parse(text: &str) -> Result<Self, SexprError> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let e = parse_at(bytes, &mut pos)?;
        skip_ws(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(SexprError::Trailing(pos));
        }
        Ok(e)
    }

    pub fn as_atom(&self) -> Result<&str, SexprError> {
        match self {
            Sexpr::Atom(a) => Ok(a),
            other => Err(shape("atom", other)),
        }
    }

    pub fn as_list(&self) -> Result<&[Sexpr], SexprError> {
        match self {
            Sexpr::List(v) => Ok(v),
            other => Err(shape("list", other)),
        }
    }

    /// Splits `(head rest...)` into the head atom and the rest.
    pub fn as_tagged(&self) -> Result<(&str, &[Sexpr]), SexprError> {
        match self.as_list()? {
            [Sexpr::Atom(h), rest @ ..] => Ok((h, rest)),
            _ => Err(shape("tagged list", self)),
        }
    }

    pub fn as_u64(&self) -> Result<u64, SexprError> {
        let a = self.as_atom()?;
        // canonical decimal only: no sign, no leading zeros
        if a.is_empty() || (a.len() > 1 && a.starts_with('0')) || !a.bytes().all(|b| b.is_ascii_digit()) {
            return Err(shape("natural number", self));
        }
        a.parse().map_err(|_| shape("natural number", self))
    }
}

pub(crate) fn shape(expected: &'static str, found: &Sexpr) -> SexprError {
    let mut found = found.to_string();
    if found.len() > 60 {
        found.truncate(60);
        found.push_str("...");
    }
    SexprError::Shape { expected, found }
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_at(bytes: &[u8], pos: &mut usize) -> Result<Sexpr, SexprError> {
    skip_ws(bytes, pos);
    match bytes.get(*pos) {
        None => Err(SexprError::Eof),
        Some(b')') => Err(SexprError::Unbalanced(*pos)),
        Some(b'(') => {
            *pos += 1;
            let mut items = Vec::new();
            loop {
                skip_ws(bytes, pos);
                match bytes.get(*pos) {
                    None => return Err(SexprError::Eof),
                    Some(b')') => {
                        *pos += 1;
                        return Ok(Sexpr::List(items));
                    }
                    Some(_) => items.push(parse_at(bytes, pos)?),
                }
            }
        }
        Some(_) => {
            let start = *pos;
            while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() && bytes[*pos] != b'(' && bytes[*pos] != b')' {
                *pos += 1;
            }
            // atoms split only on ASCII, so the slice stays valid UTF-8
            Ok(Sexpr::Atom(String::from_utf8_lossy(&bytes[start..*pos]).into_owned()))
        }
    }
}

impl fmt::Display for Sexpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexpr::Atom(a) => f.write_str(a),
            Sexpr::List(items) => {
                f.write_str("(")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}
