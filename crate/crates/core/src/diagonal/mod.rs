//! Quadruplet codes, the certified language `L_M0` with its decider, the
//! diagonal machine `T_M0`, the switch function `f`, and the machines built
//! on top of `f`.

mod code;
mod evaluator;
mod random;
mod builders;

use num_bigint::BigUint;

use crate::term::{Machine, Seed};

pub use code::{t_decode, t_encode, t_encode_unchecked, CertificateFailure, EncodeError, Quadruplet};
pub use evaluator::{DiagonalError, DiagonalEvaluator};
pub(crate) use evaluator::run_m2;
pub use random::{random_certified_term, random_valid_quadruplet};
pub use builders::{
    build_comparator, build_f_switch, forgery_variants, reject_self_reference, Forgery, SelfReferenceError,
    SelfReferenceReport,
};

/// An encoding system: the base encoding followed by a finite list of
/// transpositions, each swapping a chosen small code with the base code of
/// a planted quadruplet. A product of transpositions is a bijection, so
/// the result is still an injective encoding with a total decoder.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Codebook {
    swaps: Vec<(BigUint, BigUint)>,
}

impl Codebook {
    pub fn base() -> Self {
        Codebook::default()
    }

    pub fn with_seeds(seeds: &[Seed]) -> Self {
        Codebook {
            swaps: seeds.iter().map(|s| (BigUint::from(s.code), t_encode_unchecked(&s.quad))).collect(),
        }
    }

    fn apply(n: &BigUint, swaps: impl Iterator<Item = (BigUint, BigUint)>) -> BigUint {
        let mut n = n.clone();
        for (a, b) in swaps {
            if n == a {
                n = b;
            } else if n == b {
                n = a;
            }
        }
        n
    }

    /// Public code to base code.
    fn base_of(&self, n: &BigUint) -> BigUint {
        Codebook::apply(n, self.swaps.iter().cloned())
    }

    /// Base code to public code.
    fn public_of(&self, n: &BigUint) -> BigUint {
        Codebook::apply(n, self.swaps.iter().rev().cloned())
    }

    pub fn encode(&self, q: &Quadruplet) -> Result<BigUint, EncodeError> {
        Ok(self.public_of(&t_encode(q)?))
    }

    pub fn encode_unchecked(&self, q: &Quadruplet) -> BigUint {
        self.public_of(&t_encode_unchecked(q))
    }

    pub fn decode(&self, n: &BigUint) -> Option<Quadruplet> {
        t_decode(&self.base_of(n))
    }

    /// Every failing certificate of code `n` relative to `m0`; empty iff
    /// `n ∈ L_M0`.
    pub fn failures(&self, n: &BigUint, m0: &Machine) -> Vec<CertificateFailure> {
        match self.decode(n) {
            None => vec![CertificateFailure::NonCode],
            Some(q) => q.failures(Some(m0)),
        }
    }

    /// The decoded quadruplet when `n ∈ L_M0`.
    pub fn member(&self, n: &BigUint, m0: &Machine) -> Option<Quadruplet> {
        self.decode(n).filter(|q| q.failures(Some(m0)).is_empty())
    }
}

/// `⟨M0 ∘ m2, m2, P1, P2⟩` with both proofs built from derivations. `None`
/// if `m2` or `m0` is not a certified combinator term.
pub fn quadruplet_for(m0: &Machine, m2: Machine) -> Option<Quadruplet> {
    let m1 = Machine::compose(m0.clone(), m2.clone());
    let p1 = crate::theory::time_bound_proof(&m1)?;
    let p2 = crate::theory::equality_proof(&m1)?;
    Some(Quadruplet { m1, m2, p1, p2 })
}

/// The smallest valid quadruplet over `m0`: `m2` is the identity.
pub fn minimal_quadruplet(m0: &Machine) -> Option<Quadruplet> {
    quadruplet_for(m0, Machine::Identity)
}

/// A seed whose `M2` is the constant `value`, planted at `code`.
pub fn constant_seed(m0: &Machine, code: u64, value: u64) -> Seed {
    let quad = quadruplet_for(m0, Machine::constant_nat(value)).expect("constants and O machines are certified");
    Seed { code, quad }
}
