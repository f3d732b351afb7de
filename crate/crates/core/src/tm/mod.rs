//! Deterministic single-tape machines over `{0, 1, blank, left-end}`.

pub mod bits;
pub mod dovetail;
pub mod exec;
pub mod machine;
pub mod parse;
pub mod profile;
pub mod samples;
pub mod symbol;

pub use bits::{string_num, BinaryString, Output};
pub use dovetail::{dovetail, Dovetailed, Resumable};
pub use exec::{drive, run_bounded, step, Configuration, Execution, Program, RawExecution, RunOutcome, Snapshot};
pub use machine::{validate_machine, InvalidMachine, MachineDescription, RawMachine, Transition, Violation};
pub use parse::{load_machine, parse_machine, LoadError, ParseError};
pub use profile::{safety_budget, time_complexity_profile, ProfileError, TimeProfile};
pub use symbol::{Move, Symbol};
