use std::path::Path;

use crate::term::{Machine, PatchTable};
use crate::tm::{load_machine, samples, BinaryString};

use super::CliError;

/// Resolves a machine argument: `@name` for a bundled sample, otherwise a
/// file holding either the line format or a term s-expression.
pub fn load_term(arg: &str) -> Result<Machine, CliError> {
    if let Some(name) = arg.strip_prefix('@') {
        return samples::by_name(name)
            .map(Machine::Raw)
            .ok_or_else(|| CliError::Usage(format!("unknown sample `{name}`; known: {}", samples::NAMES.join(", "))));
    }
    let text = read(arg)?;
    parse_term_text(&text).map_err(|e| CliError::Domain(format!("{arg}: {e}")))
}

pub fn parse_term_text(text: &str) -> Result<Machine, String> {
    if text.trim_start().starts_with('(') {
        Machine::parse(text).map_err(|e| e.to_string())
    } else {
        load_machine(text).map(Machine::Raw).map_err(|e| e.to_string())
    }
}

pub fn read(path: impl AsRef<Path>) -> Result<String, CliError> {
    let path = path.as_ref();
    std::fs::read_to_string(path).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

pub fn bits(arg: &str) -> Result<BinaryString, CliError> {
    arg.parse().map_err(|_| CliError::Usage(format!("`{arg}` is not a binary string")))
}

/// `NAME(key=value, ...)`, keys in any order.
#[derive(Debug, PartialEq, Eq)]
pub struct Descriptor {
    pub head: String,
    pub fields: Vec<(String, String)>,
}

impl Descriptor {
    pub fn parse(text: &str) -> Result<Descriptor, CliError> {
        let bad = || CliError::Usage(format!("malformed descriptor `{text}`; expected NAME(key=value, ...)"));
        let text = text.trim();
        let open = text.find('(').ok_or_else(bad)?;
        let body = text[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let mut fields = Vec::new();
        for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            fields.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(Descriptor { head: text[..open].trim().to_string(), fields })
    }

    /// Checks the head and the exact key set.
    pub fn expect(&self, head: &str, keys: &[&str]) -> Result<(), CliError> {
        let schema = format!("{head}({})", keys.iter().map(|k| format!("{k}=...")).collect::<Vec<_>>().join(", "));
        if self.head != head {
            return Err(CliError::Usage(format!("expected {schema}, got `{}(...)`", self.head)));
        }
        let mut got: Vec<&str> = self.fields.iter().map(|(k, _)| k.as_str()).collect();
        got.sort_unstable();
        let mut want = keys.to_vec();
        want.sort_unstable();
        if got != want {
            return Err(CliError::Usage(format!("expected {schema}")));
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> &str {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str()).unwrap_or("")
    }
}

/// One `bits -> 0|1` line per string; an empty left side is the empty
/// string.
pub fn parse_table(text: &str) -> Result<PatchTable, String> {
    let mut table = PatchTable::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = || format!("line {}: expected `bits -> 0|1`", i + 1);
        let (lhs, rhs) = line.split_once("->").ok_or_else(err)?;
        let s: BinaryString = lhs.trim().parse().map_err(|_| err())?;
        let bit = match rhs.trim() {
            "0" => false,
            "1" => true,
            _ => return Err(err()),
        };
        if table.insert(s.clone(), bit).is_some() {
            return Err(format!("line {}: duplicate entry for `{s}`", i + 1));
        }
    }
    Ok(table)
}

pub fn table_to_text(table: &PatchTable) -> String {
    table.iter().map(|(s, b)| format!("{s} -> {}\n", u8::from(*b))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_fields() {
        let d = Descriptor::parse("O(machine=@halter-3, w=)").unwrap();
        d.expect("O", &["w", "machine"]).unwrap();
        assert_eq!(d.get("machine"), "@halter-3");
        assert_eq!(d.get("w"), "");
        assert!(d.expect("Q", &["machine", "w"]).is_err());
        assert!(Descriptor::parse("O machine=x").is_err());
    }

    #[test]
    fn table_lines() {
        let t = parse_table("# header\n -> 1\n0 -> 0\n1->1\n").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(parse_table(&table_to_text(&t)).unwrap(), t);
        assert!(parse_table("0 -> 2").is_err());
        assert!(parse_table("0 -> 1\n0 -> 0").is_err());
    }
}
