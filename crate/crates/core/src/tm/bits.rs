use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use super::symbol::Symbol;

/// A finite string over `{0,1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryString(Vec<bool>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` is not a binary string")]
pub struct NotBinary(pub String);

impl BinaryString {
    pub fn new(bits: Vec<bool>) -> Self {
        BinaryString(bits)
    }

    pub fn empty() -> Self {
        BinaryString(Vec::new())
    }

    pub fn zeros(len: usize) -> Self {
        BinaryString(vec![false; len])
    }

    /// Shortest binary notation of `n`; zero maps to the empty string.
    pub fn from_nat(mut n: u64) -> Self {
        let mut bits = Vec::new();
        while n > 0 {
            bits.push(n & 1 == 1);
            n >>= 1;
        }
        bits.reverse();
        BinaryString(bits)
    }

    /// The `index`-th string of length `len` in lexicographic order.
    pub fn of_length(len: usize, index: u64) -> Self {
        BinaryString((0..len).map(|i| (index >> (len - 1 - i)) & 1 == 1).collect())
    }

    /// All strings of exactly `len` bits, lexicographically.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = BinaryString> {
        assert!(len < 64);
        (0..1u64 << len).map(move |i| BinaryString::of_length(len, i))
    }

    /// All strings of length `0..=max_len`, length-lexicographically.
    pub fn up_to_length(max_len: usize) -> impl Iterator<Item = BinaryString> {
        (0..=max_len).flat_map(BinaryString::all_of_length)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Positional value `a_1 2^{n-1} + ... + a_n`.
    pub fn num(&self) -> BigUint {
        self.0.iter().fold(BigUint::default(), |acc, &b| (acc << 1u32) + u32::from(b))
    }

    /// `num` when it fits in 64 bits.
    pub fn num_u64(&self) -> Option<u64> {
        self.0.iter().try_fold(0u64, |acc, &b| {
            acc.checked_mul(2).map(|v| v + u64::from(b))
        })
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.0.iter().map(|&b| Symbol::from_bit(b))
    }
}

/// Positional value of a binary string.
pub fn string_num(s: &BinaryString) -> BigUint {
    s.num()
}

impl fmt::Display for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryString {
    type Err = NotBinary;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(NotBinary(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BinaryString)
    }
}

/// What a machine leaves behind when it halts: cells 1 up to the last
/// non-blank cell. Interior blanks are kept.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Output(Vec<Symbol>);

impl Output {
    pub fn from_symbols(mut symbols: Vec<Symbol>) -> Self {
        while symbols.last() == Some(&Symbol::Blank) {
            symbols.pop();
        }
        Output(symbols)
    }

    pub fn from_bits(bits: &BinaryString) -> Self {
        Output(bits.symbols().collect())
    }

    pub fn bit(b: bool) -> Self {
        Output(vec![Symbol::from_bit(b)])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    /// The output as a binary string, if it contains no blanks.
    pub fn as_bits(&self) -> Option<BinaryString> {
        self.0.iter().map(|s| s.as_bit()).collect::<Option<Vec<_>>>().map(BinaryString)
    }

    /// The single returned bit, if the tape holds exactly one bit.
    pub fn as_bit(&self) -> Option<bool> {
        match self.0.as_slice() {
            [s] => s.as_bit(),
            _ => None,
        }
    }

    /// Binary content with blanks dropped; used where one machine's output
    /// becomes another machine's input.
    pub fn to_input(&self) -> BinaryString {
        BinaryString(self.0.iter().filter_map(|s| s.as_bit()).collect())
    }
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}
