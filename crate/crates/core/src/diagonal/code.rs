use std::fmt;

use num_bigint::BigUint;

use crate::sexpr::{shape, Sexpr, SexprError};
use crate::term::Machine;
use crate::theory::{check_proof, ProofObject, Rejection, Statement};

/// `⟨M1, M2, P1, P2⟩`: two machines, a time bound for `M1`, and a proof
/// that `M1 = M0 ∘ M2` with `M2` total.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadruplet {
    pub m1: Machine,
    pub m2: Machine,
    pub p1: ProofObject,
    pub p2: ProofObject,
}

/// One certificate of a quadruplet that fails.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CertificateFailure {
    #[error("not a quadruplet code")]
    NonCode,
    #[error("p1 rejected: {0}")]
    P1Rejected(Rejection),
    #[error("p1 is not a time bound for m1")]
    P1Subject,
    #[error("p2 rejected: {0}")]
    P2Rejected(Rejection),
    #[error("p2 is not an equality between m1 and a composition with m2")]
    P2Subject,
    #[error("p2 composes with a machine other than M0")]
    P2WrongTarget,
}

impl CertificateFailure {
    /// Which certificate failed: `code`, `p1` or `p2`.
    pub fn certificate(&self) -> &'static str {
        match self {
            CertificateFailure::NonCode => "code",
            CertificateFailure::P1Rejected(_) | CertificateFailure::P1Subject => "p1",
            _ => "p2",
        }
    }
}

impl Quadruplet {
    pub fn to_sexpr(&self) -> Sexpr {
        Sexpr::tagged("quad", [self.m1.to_sexpr(), self.m2.to_sexpr(), self.p1.to_sexpr(), self.p2.to_sexpr()])
    }

    pub fn from_sexpr(e: &Sexpr) -> Result<Quadruplet, SexprError> {
        match e.as_tagged()? {
            ("quad", [m1, m2, p1, p2]) => Ok(Quadruplet {
                m1: Machine::from_sexpr(m1)?,
                m2: Machine::from_sexpr(m2)?,
                p1: ProofObject::from_sexpr(p1)?,
                p2: ProofObject::from_sexpr(p2)?,
            }),
            _ => Err(shape("quadruplet", e)),
        }
    }

    /// Every failing certificate, checked against `m0` when given. An empty
    /// list means the quadruplet is valid.
    pub fn failures(&self, m0: Option<&Machine>) -> Vec<CertificateFailure> {
        let mut out = Vec::new();
        if let Err(r) = check_proof(&self.p1.subject, &self.p1) {
            out.push(CertificateFailure::P1Rejected(r));
        }
        if !matches!(&self.p1.subject, Statement::TimeBound { machine, .. } if *machine == self.m1) {
            out.push(CertificateFailure::P1Subject);
        }
        if let Err(r) = check_proof(&self.p2.subject, &self.p2) {
            out.push(CertificateFailure::P2Rejected(r));
        }
        match &self.p2.subject {
            Statement::PointwiseEqual { composed, outer, inner, .. } => {
                if *composed != self.m1 || *inner != self.m2 {
                    out.push(CertificateFailure::P2Subject);
                }
                if m0.is_some_and(|m0| m0 != outer) {
                    out.push(CertificateFailure::P2WrongTarget);
                }
            }
            _ => out.push(CertificateFailure::P2Subject),
        }
        out
    }

    /// The `M0` that `p2` composes with, if `p2` is an equality statement.
    pub fn target(&self) -> Option<&Machine> {
        match &self.p2.subject {
            Statement::PointwiseEqual { outer, .. } => Some(outer),
            _ => None,
        }
    }
}

impl fmt::Display for Quadruplet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexpr())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("refusing to encode an unverifiable quadruplet: {}", .0.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; "))]
pub struct EncodeError(pub Vec<CertificateFailure>);

const MARKER: u8 = 0x01;

fn push_leb128(out: &mut Vec<u8>, mut n: usize) {
    loop {
        let byte = (n & 0x7f) as u8;
        n >>= 7;
        if n == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

fn read_leb128(bytes: &[u8], pos: &mut usize) -> Option<usize> {
    let mut n: usize = 0;
    for shift in (0..usize::BITS).step_by(7) {
        let b = *bytes.get(*pos)?;
        *pos += 1;
        n |= usize::from(b & 0x7f).checked_shl(shift)?;
        if b & 0x80 == 0 {
            return Some(n);
        }
    }
    None
}

/// Encodes without checking the proofs. Used for forged quadruplets that
/// must still receive a code.
pub fn t_encode_unchecked(q: &Quadruplet) -> BigUint {
    let mut bytes = vec![MARKER];
    for part in [q.m1.to_string(), q.m2.to_string(), q.p1.to_string(), q.p2.to_string()] {
        push_leb128(&mut bytes, part.len());
        bytes.extend_from_slice(part.as_bytes());
    }
    BigUint::from_bytes_be(&bytes)
}

/// Marker byte, then four length-prefixed serialized components, read as a
/// big-endian natural. Refuses quadruplets whose proofs do not check.
pub fn t_encode(q: &Quadruplet) -> Result<BigUint, EncodeError> {
    let failures = q.failures(None);
    if failures.is_empty() {
        Ok(t_encode_unchecked(q))
    } else {
        Err(EncodeError(failures))
    }
}

/// Inverse of the encoder on its range; `None` marks a non-code. Only
/// canonical encodings decode, so distinct naturals never decode to the
/// same quadruplet.
pub fn t_decode(n: &BigUint) -> Option<Quadruplet> {
    let bytes = n.to_bytes_be();
    if bytes.first() != Some(&MARKER) {
        return None;
    }
    let mut pos = 1;
    let mut parts = Vec::with_capacity(4);
    for _ in 0..4 {
        let len = read_leb128(&bytes, &mut pos)?;
        let end = pos.checked_add(len)?;
        let text = std::str::from_utf8(bytes.get(pos..end)?).ok()?;
        parts.push(Sexpr::parse(text).ok()?);
        pos = end;
    }
    if pos != bytes.len() {
        return None;
    }
    let q = Quadruplet {
        m1: Machine::from_sexpr(&parts[0]).ok()?,
        m2: Machine::from_sexpr(&parts[1]).ok()?,
        p1: ProofObject::from_sexpr(&parts[2]).ok()?,
        p2: ProofObject::from_sexpr(&parts[3]).ok()?,
    };
    (t_encode_unchecked(&q) == *n).then_some(q)
}
