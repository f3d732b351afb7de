use rand::Rng;

use super::{quadruplet_for, Quadruplet};
use crate::term::{Machine, PatchTable};
use crate::tm::{samples, BinaryString};

fn random_bits(rng: &mut impl Rng, max_len: usize) -> BinaryString {
    let len = rng.gen_range(0..=max_len);
    BinaryString::new((0..len).map(|_| rng.gen()).collect())
}

fn random_raw(rng: &mut impl Rng) -> Machine {
    let name = samples::NAMES[rng.gen_range(0..samples::NAMES.len())];
    let m = samples::by_name(name).unwrap_or_else(|| samples::halter(rng.gen_range(0..8)));
    Machine::Raw(m)
}

/// A random term built only from certified combinators, nested at most
/// `depth` deep.
pub fn random_certified_term(rng: &mut impl Rng, depth: u32) -> Machine {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    let choice = if leaf { rng.gen_range(0..3) } else { rng.gen_range(0..7) };
    match choice {
        0 => Machine::Constant(random_bits(rng, 4)),
        1 => Machine::Identity,
        2 => Machine::threshold(random_raw(rng), random_bits(rng, 3)),
        3 => Machine::not(random_certified_term(rng, depth - 1)),
        4 => Machine::switch(random_raw(rng), random_certified_term(rng, depth - 1), random_bits(rng, 3)),
        5 => {
            let cutoff = rng.gen_range(0..=3);
            let mut table = PatchTable::new();
            for s in BinaryString::up_to_length(cutoff.max(1) - 1).filter(|s| s.len() < cutoff) {
                if rng.gen_bool(0.5) {
                    table.insert(s, rng.gen());
                }
            }
            Machine::Patch { base: Box::new(random_certified_term(rng, depth - 1)), cutoff, table }
        }
        _ => Machine::compose(random_certified_term(rng, depth - 1), random_certified_term(rng, depth - 1)),
    }
}

/// A valid quadruplet over `m0` with a random certified `M2`. `m0` must
/// itself be certified.
pub fn random_valid_quadruplet(rng: &mut impl Rng, m0: &Machine) -> Option<Quadruplet> {
    quadruplet_for(m0, random_certified_term(rng, 3))
}
