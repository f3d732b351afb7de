//! Machine builders: the provability racer, the self-searching fixed
//! point, threshold and switch machines, finite patches and the `≃` probe.

mod language;
mod racer;
mod threshold;

pub use language::{almost_equal, patch_language, AlmostEqual, LanguageView, PatchError, Patched, ViewError};
pub use racer::{race, RacerVerdict};
pub use threshold::{build_o, build_q, threshold_profile, Built, ProfileViolation, ThresholdProfile};

use crate::term::Machine;
use crate::tm::BinaryString;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("self-description does not reproduce the machine")]
pub struct FixedPointError;

/// `⟨M_h, w_h⟩`: a machine that searches the theorem enumeration for a
/// proof that it does not halt on `w_h`, halting iff it finds one.
pub fn build_fixed_point() -> Result<(Machine, BinaryString), FixedPointError> {
    let m = Machine::SelfSearcher;
    if m.self_description().as_ref() != Some(&m) {
        return Err(FixedPointError);
    }
    Ok((m, BinaryString::empty()))
}

/// Halts at once unless the input has length 1; on length 1 it searches
/// for an even number above 4 that is not a sum of two odd primes.
pub fn build_goldbach_demo() -> Machine {
    Machine::Goldbach
}
