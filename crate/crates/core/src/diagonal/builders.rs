use num_bigint::BigUint;

use super::{minimal_quadruplet, CertificateFailure, DiagonalError, DiagonalEvaluator, Quadruplet};
use crate::term::Machine;
use crate::theory::{derive_time_bound, Composer, Derivation, Evidence, Poly, ProofObject, Rule, Statement};
use crate::tm::samples;

/// `U`: on `bin(n)`, returns `T_L0(n)` when `f(n) = 1` and its complement
/// otherwise.
pub fn build_f_switch(t_l0: &Machine, ev: &DiagonalEvaluator) -> Machine {
    Machine::select(ev.f_machine(), t_l0.clone(), Machine::not(t_l0.clone()))
}

/// `M(n) = 1` iff `T_M(n) = T_L0(n)`.
pub fn build_comparator(t_m: &Machine, t_l0: &Machine) -> Machine {
    Machine::equal(t_m.clone(), t_l0.clone())
}

/// Ways of dressing up the diagonal wrapper as a member of `L_M0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Forgery {
    /// `p2` carries evidence of the wrong kind.
    FabricatedP2,
    /// A genuine `p2` about a different quadruplet.
    P2SubjectMismatch,
    /// `p2` claims a bound derivation for the wrapper.
    ForgedTotality,
    /// `p1` claims a time bound for `M0 ∘ wrapper`.
    ForgedP1,
    /// `p2` composes with some other `M0`.
    WrongTarget,
}

impl Forgery {
    pub const ALL: [Forgery; 5] =
        [Forgery::FabricatedP2, Forgery::P2SubjectMismatch, Forgery::ForgedTotality, Forgery::ForgedP1, Forgery::WrongTarget];

    pub fn name(self) -> &'static str {
        match self {
            Forgery::FabricatedP2 => "fabricated-p2",
            Forgery::P2SubjectMismatch => "p2-subject-mismatch",
            Forgery::ForgedTotality => "forged-totality",
            Forgery::ForgedP1 => "forged-p1",
            Forgery::WrongTarget => "wrong-target",
        }
    }

    /// Whether `failure` is the one this forgery is designed to trip.
    pub fn expects(self, failure: &CertificateFailure) -> bool {
        use crate::theory::Rejection;
        matches!(
            (self, failure),
            (Forgery::FabricatedP2, CertificateFailure::P2Rejected(Rejection::WrongEvidence))
                | (Forgery::P2SubjectMismatch, CertificateFailure::P2Subject)
                | (Forgery::ForgedTotality, CertificateFailure::P2Rejected(Rejection::Derivation { .. }))
                | (Forgery::ForgedP1, CertificateFailure::P1Rejected(Rejection::Derivation { .. }))
                | (Forgery::WrongTarget, CertificateFailure::P2WrongTarget)
        )
    }
}

/// A derivation node asserting the identity rule, whatever the term.
fn identity_claim() -> Derivation {
    Derivation { rule: Rule::Identity, time: Poly::linear(1, 1), len: Poly::linear(1, 0), premises: Vec::new() }
}

fn equality_claim(composed: &Machine, outer: &Machine, inner: &Machine, evidence: Evidence) -> ProofObject {
    let subject =
        Statement::PointwiseEqual { composed: composed.clone(), outer: outer.clone(), inner: inner.clone(), tag: Composer::Compose };
    ProofObject::new(subject, evidence)
}

/// A `p1` for `M0 ∘ wrapper` whose compose node pretends the wrapper is
/// the identity.
fn forged_p1(m0: &Machine, m1: &Machine) -> ProofObject {
    let outer = derive_time_bound(m0).unwrap_or_else(identity_claim);
    let inner = identity_claim();
    let time = inner.time.add(&Poly::constant(1)).add(&outer.time.compose(&inner.len));
    let len = outer.len.compose(&inner.len);
    let (a, k, b) = time.summary();
    let d = Derivation { rule: Rule::Compose, time, len, premises: vec![outer, inner] };
    ProofObject::new(Statement::TimeBound { machine: m1.clone(), a, k, b }, Evidence::TimeBound(d))
}

/// One self-referential candidate per forgery, each with `m2` equal to the
/// evaluator's own `T_M0` wrapper.
pub fn forgery_variants(ev: &DiagonalEvaluator) -> Vec<(Forgery, Quadruplet)> {
    let m0 = ev.m0();
    let w = ev.wrapper();
    let m1 = Machine::compose(m0.clone(), w.clone());
    let p1 = forged_p1(m0, &m1);
    let forged_eq = equality_claim(&m1, m0, &w, Evidence::Equality { inner_bound: identity_claim(), tag: Composer::Compose });
    Forgery::ALL
        .into_iter()
        .map(|f| {
            let q = match f {
                Forgery::FabricatedP2 => Quadruplet {
                    m1: m1.clone(),
                    m2: w.clone(),
                    p1: p1.clone(),
                    p2: equality_claim(&m1, m0, &w, Evidence::Cycle { prefix: 0, cycle: 1 }),
                },
                Forgery::P2SubjectMismatch => {
                    let honest = minimal_quadruplet(m0).unwrap_or_else(|| {
                        let m1 = Machine::compose(m0.clone(), Machine::Identity);
                        Quadruplet { p1: forged_p1(m0, &m1), p2: forged_eq.clone(), m1, m2: Machine::Identity }
                    });
                    Quadruplet { m2: w.clone(), ..honest }
                }
                Forgery::ForgedTotality | Forgery::ForgedP1 => {
                    Quadruplet { m1: m1.clone(), m2: w.clone(), p1: p1.clone(), p2: forged_eq.clone() }
                }
                Forgery::WrongTarget => {
                    let other = Machine::threshold(Machine::Raw(samples::halter(1)), Default::default());
                    let other = if other == *m0 {
                        Machine::threshold(Machine::Raw(samples::halter(2)), Default::default())
                    } else {
                        other
                    };
                    let m1o = Machine::compose(other.clone(), w.clone());
                    Quadruplet {
                        m1: m1o.clone(),
                        m2: w.clone(),
                        p1: forged_p1(&other, &m1o),
                        p2: equality_claim(
                            &m1o,
                            &other,
                            &w,
                            Evidence::Equality { inner_bound: identity_claim(), tag: Composer::Compose },
                        ),
                    }
                }
            };
            (f, q)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfReferenceReport {
    pub code: BigUint,
    /// Every failing certificate; never empty.
    pub failures: Vec<CertificateFailure>,
    /// `1 + T(n) > T(n)` was confirmed for every `n` up to this bound.
    pub contradiction_checked_to: u64,
}

impl SelfReferenceReport {
    pub fn summary(&self) -> String {
        self.failures.iter().map(|f| format!("{}: {f}", f.certificate())).collect::<Vec<_>>().join("; ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SelfReferenceError {
    #[error("candidate's m2 is not the evaluator's own T_M0 wrapper")]
    NotSelfReferential,
    #[error("soundness violation: a self-referential quadruplet was accepted at code {0}")]
    Accepted(BigUint),
    #[error("arithmetic check failed at n = {0}")]
    Arithmetic(u64),
    #[error(transparent)]
    Diagonal(#[from] DiagonalError),
}

/// Confirms that a self-referential candidate is kept out of `L_M0` and
/// names what failed. Also checks, for `n ≤ tested`, the arithmetic that
/// membership would contradict: `max{1 + T(n-1), 1 + T(n)} > T(n)`.
pub fn reject_self_reference(
    candidate: &Quadruplet,
    ev: &mut DiagonalEvaluator,
    tested: u64,
) -> Result<SelfReferenceReport, SelfReferenceError> {
    if candidate.m2 != ev.wrapper() {
        return Err(SelfReferenceError::NotSelfReferential);
    }
    let code = ev.codebook().encode_unchecked(candidate);
    if ev.h_membership(&code) {
        return Err(SelfReferenceError::Accepted(code));
    }
    let failures = ev.membership_failures(&code);
    for n in 1..=tested {
        let (prev, t) = (ev.t_m0_eval(n - 1)?, ev.t_m0_eval(n)?);
        if (prev + 1).max(t + 1) <= t {
            return Err(SelfReferenceError::Arithmetic(n));
        }
    }
    Ok(SelfReferenceReport { code, failures, contradiction_checked_to: tested })
}
