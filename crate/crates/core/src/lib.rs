//! Turing-machine constructions around provability and independence, run
//! against a small decidable proof system.

pub mod cli;
pub mod constructions;
pub mod diagonal;
pub mod sexpr;
pub mod term;
pub mod theory;
pub mod tm;
