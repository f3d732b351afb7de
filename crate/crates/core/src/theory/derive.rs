use super::check::Rejection;
use super::poly::Poly;
use super::{Composer, Evidence, ProofObject, Statement};
use crate::sexpr::{shape, Sexpr, SexprError};
use crate::term::Machine;

/// One inference rule of the time-bound calculus, one per certified
/// combinator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Constant,
    Identity,
    Not,
    Threshold,
    Switch,
    Patch,
    Compose,
}

impl Rule {
    const ALL: [Rule; 7] =
        [Rule::Constant, Rule::Identity, Rule::Not, Rule::Threshold, Rule::Switch, Rule::Patch, Rule::Compose];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Constant => "const",
            Rule::Identity => "id",
            Rule::Not => "not",
            Rule::Threshold => "thr",
            Rule::Switch => "switch",
            Rule::Patch => "patch",
            Rule::Compose => "compose",
        }
    }

    fn for_term(m: &Machine) -> Option<Rule> {
        Some(match m {
            Machine::Constant(_) => Rule::Constant,
            Machine::Identity => Rule::Identity,
            Machine::Not(_) => Rule::Not,
            Machine::Threshold { .. } => Rule::Threshold,
            Machine::Switch { .. } => Rule::Switch,
            Machine::Patch { .. } => Rule::Patch,
            Machine::Compose { .. } => Rule::Compose,
            _ => return None,
        })
    }
}

/// A derivation tree: each node claims a running-time polynomial and an
/// output-length polynomial, justified by its rule and premises.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    pub rule: Rule,
    pub time: Poly,
    pub len: Poly,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn to_sexpr(&self) -> Sexpr {
        let mut items = vec![Sexpr::atom(self.rule.name()), self.time.to_sexpr(), self.len.to_sexpr()];
        items.extend(self.premises.iter().map(Derivation::to_sexpr));
        Sexpr::tagged("d", items)
    }

    pub fn from_sexpr(e: &Sexpr) -> Result<Derivation, SexprError> {
        match e.as_tagged()? {
            ("d", [rule, time, len, premises @ ..]) => {
                let name = rule.as_atom()?;
                let rule = Rule::ALL.into_iter().find(|r| r.name() == name).ok_or_else(|| shape("rule", e))?;
                Ok(Derivation {
                    rule,
                    time: Poly::from_sexpr(time)?,
                    len: Poly::from_sexpr(len)?,
                    premises: premises.iter().map(Derivation::from_sexpr).collect::<Result<_, _>>()?,
                })
            }
            _ => Err(shape("derivation", e)),
        }
    }
}

/// Sub-terms whose derivations a rule takes as premises, in order.
fn premise_terms(m: &Machine) -> Vec<&Machine> {
    match m {
        Machine::Not(x) => vec![x],
        Machine::Switch { fallback, .. } => vec![fallback],
        Machine::Patch { base, .. } => vec![base],
        Machine::Compose { outer, inner } => vec![outer, inner],
        _ => Vec::new(),
    }
}

/// The `(time, len)` pair a rule concludes from its premises' claims.
fn conclude(m: &Machine, premises: &[(&Poly, &Poly)]) -> (Poly, Poly) {
    let one = Poly::constant(1);
    match (m, premises) {
        (Machine::Constant(c), []) => {
            let c = c.len() as u64;
            (Poly::linear(1, c + 1), Poly::constant(c))
        }
        (Machine::Identity, []) => (Poly::linear(1, 1), Poly::linear(1, 0)),
        (Machine::Not(_), [(t, _)]) => (t.add(&one), one),
        (Machine::Threshold { .. }, []) => (Poly::linear(2, 2), one),
        (Machine::Switch { .. }, [(t, l)]) => (t.add(&Poly::linear(2, 3)), l.add(&one)),
        (Machine::Patch { cutoff, .. }, [(t, l)]) => (t.add(&Poly::constant(*cutoff as u64 + 2)), l.add(&one)),
        (Machine::Compose { .. }, [(to, lo), (ti, li)]) => (ti.add(&one).add(&to.compose(li)), lo.compose(li)),
        _ => unreachable!("premise arity is fixed by premise_terms"),
    }
}

/// Builds the canonical derivation for a term built only from certified
/// combinators.
pub fn derive_time_bound(m: &Machine) -> Option<Derivation> {
    let rule = Rule::for_term(m)?;
    let premises = premise_terms(m).into_iter().map(derive_time_bound).collect::<Option<Vec<_>>>()?;
    let claims: Vec<_> = premises.iter().map(|d| (&d.time, &d.len)).collect();
    let (time, len) = conclude(m, &claims);
    Some(Derivation { rule, time, len, premises })
}

/// Checks a derivation against a term, recomputing every node.
pub fn check_derivation(m: &Machine, d: &Derivation) -> Result<(), Rejection> {
    let fail = |reason: String| Err(Rejection::Derivation { reason });
    let Some(rule) = Rule::for_term(m) else {
        return fail(format!("{} has no bound rule", m.describe()));
    };
    if rule != d.rule {
        return fail(format!("rule {} applied to {}", d.rule.name(), m.describe()));
    }
    let subs = premise_terms(m);
    if subs.len() != d.premises.len() {
        return fail(format!("rule {} takes {} premises, got {}", rule.name(), subs.len(), d.premises.len()));
    }
    for (sub, p) in subs.iter().zip(&d.premises) {
        check_derivation(sub, p)?;
    }
    let claims: Vec<_> = d.premises.iter().map(|p| (&p.time, &p.len)).collect();
    let (time, len) = conclude(m, &claims);
    if time != d.time {
        return fail(format!("rule {} concludes time {time}, claimed {}", rule.name(), d.time));
    }
    if len != d.len {
        return fail(format!("rule {} concludes length {len}, claimed {}", rule.name(), d.len));
    }
    Ok(())
}

/// `TimeBound` proof from the canonical derivation.
pub fn time_bound_proof(m: &Machine) -> Option<ProofObject> {
    let d = derive_time_bound(m)?;
    let (a, k, b) = d.time.summary();
    Some(ProofObject::new(Statement::TimeBound { machine: m.clone(), a, k, b }, Evidence::TimeBound(d)))
}

/// `PointwiseEqual` proof for a literal composition with a certified inner
/// term.
pub fn equality_proof(composed: &Machine) -> Option<ProofObject> {
    let Machine::Compose { outer, inner } = composed else {
        return None;
    };
    let inner_bound = derive_time_bound(inner)?;
    Some(ProofObject::new(
        Statement::PointwiseEqual {
            composed: composed.clone(),
            outer: (**outer).clone(),
            inner: (**inner).clone(),
            tag: Composer::Compose,
        },
        Evidence::Equality { inner_bound, tag: Composer::Compose },
    ))
}
