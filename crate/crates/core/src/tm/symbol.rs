use std::fmt;

/// The fixed tape alphabet `{0, 1, blank, left-end}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Zero,
    One,
    Blank,
    LeftEnd,
}

impl Symbol {
    pub const ALL: [Symbol; 4] = [Symbol::Zero, Symbol::One, Symbol::Blank, Symbol::LeftEnd];

    pub fn index(self) -> usize {
        match self {
            Symbol::Zero => 0,
            Symbol::One => 1,
            Symbol::Blank => 2,
            Symbol::LeftEnd => 3,
        }
    }

    pub fn from_bit(b: bool) -> Self {
        if b {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }

    pub fn as_bit(self) -> Option<bool> {
        match self {
            Symbol::Zero => Some(false),
            Symbol::One => Some(true),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Blank => '_',
            Symbol::LeftEnd => '>',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(Symbol::Zero),
            '1' => Some(Symbol::One),
            '_' => Some(Symbol::Blank),
            '>' => Some(Symbol::LeftEnd),
            _ => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Head movement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    L,
    S,
    R,
}

impl Move {
    pub const ALL: [Move; 3] = [Move::L, Move::S, Move::R];

    pub fn to_char(self) -> char {
        match self {
            Move::L => 'L',
            Move::S => 'S',
            Move::R => 'R',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'L' => Some(Move::L),
            'S' => Some(Move::S),
            'R' => Some(Move::R),
            _ => None,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}
