use std::collections::HashSet;

use proptest::prelude::*;
use rand::SeedableRng;

use super::*;
use crate::diagonal::random_certified_term;
use crate::tm::{run_bounded, samples, Configuration, MachineDescription, Program, RunOutcome};

fn raw(m: MachineDescription) -> Machine {
    Machine::Raw(m)
}

fn bits(s: &str) -> BinaryString {
    s.parse().unwrap()
}

/// First repeated configuration of a raw run, compared field by field.
fn first_repeat(m: &MachineDescription, w: &BinaryString, budget: u64) -> Option<(u64, u64)> {
    let mut seen: Vec<(usize, usize, Vec<crate::tm::Symbol>)> = Vec::new();
    let mut c = Configuration::initial(m, w);
    for t in 0..=budget {
        if c.state == m.halt() {
            return None;
        }
        let key = (c.state, c.head, c.tape.clone());
        if let Some(p) = seen.iter().position(|k| *k == key) {
            return Some((p as u64, t - p as u64));
        }
        seen.push(key);
        c.apply(m);
    }
    None
}

#[test]
fn halt_only_zero_step_trace_is_accepted() {
    let p = certify_halting(&raw(samples::halt_only()), &BinaryString::empty(), 0).unwrap();
    assert!(matches!(p.evidence, Evidence::HaltTrace { steps: 0, .. }));
    assert_eq!(check_proof(&p.subject, &p), Ok(()));
}

#[test]
fn self_loop_cycle_one_one() {
    let m = raw(samples::self_loop());
    let p = find_nonhalting_proof(&m, &BinaryString::empty(), 10).unwrap();
    assert_eq!(p.evidence, Evidence::Cycle { prefix: 1, cycle: 1 });
    assert_eq!(first_repeat(&samples::self_loop(), &BinaryString::empty(), 10), Some((1, 1)));
    assert_eq!(check_proof(&p.subject, &p), Ok(()));
}

#[test]
fn ping_pong_cycle_two() {
    let w = BinaryString::empty();
    let p = find_nonhalting_proof(&raw(samples::ping_pong()), &w, 10).unwrap();
    let (prefix, cycle) = first_repeat(&samples::ping_pong(), &w, 10).unwrap();
    assert_eq!(cycle, 2);
    assert_eq!(p.evidence, Evidence::Cycle { prefix, cycle });
}

#[test]
fn no_certificates_on_the_wrong_side() {
    let w = BinaryString::empty();
    assert_eq!(find_nonhalting_proof(&raw(samples::halt_only()), &w, 100), None);
    assert_eq!(certify_halting(&raw(samples::self_loop()), &w, 1000), None);
}

#[test]
fn move_right_trace_matches_direct_simulation() {
    let m = samples::move_right();
    let w = bits("11");
    let mut c = Configuration::initial(&m, &w);
    while c.state != m.halt() {
        c.apply(&m);
    }
    let p = certify_halting(&raw(m), &w, 100).unwrap();
    match p.evidence {
        Evidence::HaltTrace { steps, ref trace } => {
            assert_eq!(steps, c.steps);
            assert_eq!(steps, 4);
            assert_eq!(trace.len(), 5);
        }
        _ => panic!("expected a trace"),
    }
}

#[test]
fn forged_proofs_are_rejected() {
    let w = BinaryString::empty();
    let looping = raw(samples::self_loop());
    let halts = Statement::Halts { machine: looping.clone(), input: w.clone() };
    let snap = looping.start(&w).snapshot();
    for steps in 0..4 {
        let trace = vec![snap.clone(); steps as usize + 1];
        let p = ProofObject::new(halts.clone(), Evidence::HaltTrace { steps, trace });
        assert!(check_proof(&halts, &p).is_err());
    }

    let not_halts = Statement::NotHalts { machine: raw(samples::halter(3)), input: w.clone() };
    for (prefix, cycle) in [(0, 1), (1, 1), (2, 5), (3, 0)] {
        let p = ProofObject::new(not_halts.clone(), Evidence::Cycle { prefix, cycle });
        assert!(check_proof(&not_halts, &p).is_err());
    }

    let good = certify_halting(&raw(samples::halt_only()), &w, 0).unwrap();
    let other = Statement::Halts { machine: raw(samples::halter(1)), input: w.clone() };
    assert_eq!(check_proof(&other, &good), Err(Rejection::SubjectMismatch));

    let wrong = ProofObject::new(not_halts.clone(), good.evidence.clone());
    assert_eq!(check_proof(&not_halts, &wrong), Err(Rejection::WrongEvidence));

    let bad_len = ProofObject::new(good.subject.clone(), Evidence::HaltTrace { steps: 0, trace: vec![] });
    assert_eq!(check_proof(&bad_len.subject, &bad_len).unwrap_err().code(), "malformed");
}

#[test]
fn threshold_certificate_is_linear() {
    let o = Machine::threshold(raw(samples::halter(5)), BinaryString::empty());
    let p = time_bound_proof(&o).unwrap();
    assert!(matches!(p.subject, Statement::TimeBound { a: 2, k: 1, b: 2, .. }));
    assert_eq!(check_proof(&p.subject, &p), Ok(()));
}

#[test]
fn tampered_derivations_are_rejected() {
    let t = Machine::compose(Machine::not(Machine::Identity), Machine::constant("11"));
    let p = time_bound_proof(&t).unwrap();
    let Evidence::TimeBound(d) = &p.evidence else { panic!() };

    let mut looser = d.clone();
    looser.time = looser.time.add(&Poly::constant(1));
    let q = ProofObject::new(p.subject.clone(), Evidence::TimeBound(looser));
    assert_eq!(check_proof(&q.subject, &q).unwrap_err().code(), "bad-derivation");

    let mut swapped = d.clone();
    swapped.premises.reverse();
    let q = ProofObject::new(p.subject.clone(), Evidence::TimeBound(swapped));
    assert!(check_proof(&q.subject, &q).is_err());

    let Statement::TimeBound { machine, a, k, b } = p.subject.clone() else { panic!() };
    let wrong_bound = Statement::TimeBound { machine, a, k, b: b + 1 };
    let q = ProofObject::new(wrong_bound.clone(), p.evidence.clone());
    assert_eq!(check_proof(&wrong_bound, &q).unwrap_err().code(), "bound-mismatch");

    assert!(time_bound_proof(&raw(samples::halt_only())).is_none());
    assert!(time_bound_proof(&Machine::SelfSearcher).is_none());
}

#[test]
fn equality_is_provenance_only() {
    let c = Machine::compose(Machine::Identity, Machine::constant("0"));
    let p = equality_proof(&c).unwrap();
    assert_eq!(check_proof(&p.subject, &p), Ok(()));

    // an extensionally equal term that is not literally the composition
    let Statement::PointwiseEqual { outer, inner, tag, .. } = p.subject.clone() else { panic!() };
    let fake = Statement::PointwiseEqual { composed: Machine::constant("0"), outer, inner, tag };
    let q = ProofObject::new(fake.clone(), p.evidence.clone());
    assert_eq!(check_proof(&fake, &q), Err(Rejection::NotComposition));

    // uncertified inner terms have no totality derivation
    assert!(equality_proof(&Machine::compose(Machine::Identity, raw(samples::halt_only()))).is_none());
}

#[test]
fn first_theorem_is_the_only_weight_one_pair() {
    let terms = enumerate::terms_up_to(1);
    assert!(terms[0].is_empty());
    assert_eq!(terms[1], vec![raw(samples::halt_only())]);
    // weight 1 leaves no room for input or proof: the 0-step trace on ""
    let expected = certify_halting(&raw(samples::halt_only()), &BinaryString::empty(), 0).unwrap();
    let first = enumerate_theorems(0);
    assert_eq!(first.proof(), &expected);
    assert_eq!(pair_weight(first.proof()), Some(1));
    assert_eq!(enumerate_theorems(0), first);
}

#[test]
fn weight_four_terms_are_all_two_state_tables() {
    let terms = enumerate::terms_up_to(6);
    // start ∈ {0,1}; row 0 has 2 choices on `>` and 18 on each other symbol
    assert_eq!(terms[4].len(), 2 * 2 * 18 * 18 * 18);
    assert!(terms[2].is_empty() && terms[3].is_empty() && terms[5].is_empty());
    // weight 6: Identity and const("")
    assert_eq!(terms[6].len(), 2);
}

#[test]
fn self_loop_certificate_index_is_stable() {
    let target = Statement::NotHalts { machine: raw(samples::self_loop()), input: BinaryString::empty() };
    let (index, thm) = TheoremEnumerator::new()
        .enumerate()
        .find(|(_, t)| t.statement() == &target)
        .unwrap();
    assert_eq!(index, 40938);
    assert_eq!(thm.proof().evidence, Evidence::Cycle { prefix: 1, cycle: 1 });
}

#[test]
fn prefix_is_sound_exclusive_and_ordered() {
    let prefix: Vec<Theorem> = TheoremEnumerator::new().take(3000).collect();
    let mut halting = HashSet::new();
    let mut looping = HashSet::new();
    let mut seen = HashSet::new();
    let mut last: Option<(u64, usize, String)> = None;
    for thm in &prefix {
        let text = thm.to_string();
        let key = (pair_weight(thm.proof()).unwrap(), text.len(), text.clone());
        if let Some(prev) = &last {
            assert!(prev < &key, "order broken at {text}");
        }
        last = Some(key);
        assert!(seen.insert(text));
        match (thm.statement(), &thm.proof().evidence) {
            (Statement::Halts { machine, input }, Evidence::HaltTrace { steps, .. }) => {
                assert!(matches!(run_bounded(machine, input, *steps), RunOutcome::Halted { steps: s, .. } if s == *steps));
                if *steps > 0 {
                    assert!(!run_bounded(machine, input, steps - 1).is_halted());
                }
                halting.insert((machine.clone(), input.clone()));
            }
            (Statement::NotHalts { machine, input }, Evidence::Cycle { prefix, cycle }) => {
                assert!(!run_bounded(machine, input, 10 * (prefix + cycle)).is_halted());
                looping.insert((machine.clone(), input.clone()));
            }
            (s, _) => assert!(check_proof(s, thm.proof()).is_ok()),
        }
    }
    assert!(halting.is_disjoint(&looping));
}

#[test]
fn theorems_round_trip_through_text() {
    for thm in TheoremEnumerator::new().step_by(97).take(300) {
        let text = thm.to_string();
        let back = ProofObject::parse(&text).unwrap();
        assert_eq!(&back, thm.proof());
        assert_eq!(back.to_string(), text);
    }
}

#[test]
fn snapshot_forms_round_trip() {
    let w = bits("01");
    let t = Machine::switch(raw(samples::halter(2)), Machine::not(Machine::Identity), w.clone());
    let p = certify_halting(&t, &w, 1000).unwrap();
    let back = ProofObject::parse(&p.to_string()).unwrap();
    assert_eq!(back, p);
    assert_eq!(check_proof(&back.subject, &back), Ok(()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derived_bounds_cover_measured_runs(seed in any::<u64>()) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let t = random_certified_term(&mut rng, 3);
        let d = derive_time_bound(&t).unwrap();
        prop_assert!(check_derivation(&t, &d).is_ok());
        for s in BinaryString::up_to_length(5) {
            let n = s.len() as u64;
            match run_bounded(&t, &s, d.time.eval(n)) {
                RunOutcome::Halted { output, .. } => {
                    prop_assert!(output.symbols().len() as u64 <= d.len.eval(n));
                }
                RunOutcome::BudgetExhausted { .. } => prop_assert!(false, "{} exceeded {} on {}", t, d.time, s),
            }
        }
    }

    #[test]
    fn statements_round_trip(seed in any::<u64>(), a in 0u64..9, k in 0u32..4, b in 0u64..9) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let t = random_certified_term(&mut rng, 2);
        for s in [
            Statement::TimeBound { machine: t.clone(), a, k, b },
            Statement::Halts { machine: t.clone(), input: BinaryString::from_nat(a) },
            Statement::NotHalts { machine: t.clone(), input: BinaryString::empty() },
        ] {
            let e = crate::sexpr::Sexpr::parse(&s.to_string()).unwrap();
            prop_assert_eq!(Statement::from_sexpr(&e).unwrap(), s);
        }
    }
}

#[test]
fn shared_classes_hold_no_searcher() {
    assert!(Machine::SelfSearcher.weight().unwrap() > super::enumerate::SHARED_CLASSES);
}
