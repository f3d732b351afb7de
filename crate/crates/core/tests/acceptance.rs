//! Acceptance checks, one line per criterion. Expected values come from
//! the reference simulator and brute-force evaluators below, never from
//! the code under test.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use indeplab::constructions::{
    almost_equal, build_fixed_point, build_o, build_q, patch_language, race, threshold_profile, AlmostEqual,
    LanguageView, RacerVerdict, ThresholdProfile,
};
use indeplab::diagonal::{
    build_comparator, build_f_switch, constant_seed, forgery_variants, random_valid_quadruplet,
    reject_self_reference, t_decode, t_encode, t_encode_unchecked, Codebook, DiagonalEvaluator,
};
use indeplab::term::{Machine, PatchTable};
use indeplab::theory::{certify_halting, find_nonhalting_proof, Evidence, Statement, Theorem, TheoremEnumerator};
use indeplab::tm::{run_bounded, samples, BinaryString, MachineDescription, Move, RunOutcome, Symbol};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------------
// reference simulator for raw tables

/// Halting step and final tape, or `None` past `budget`.
fn reference_run(m: &MachineDescription, w: &BinaryString, budget: u64) -> Option<(u64, Vec<Symbol>)> {
    let mut tape = vec![Symbol::LeftEnd];
    tape.extend(w.bits().iter().map(|&b| if b { Symbol::One } else { Symbol::Zero }));
    let (mut q, mut head, mut t) = (m.start(), 0usize, 0u64);
    while q != m.halt() {
        if t == budget {
            return None;
        }
        if head >= tape.len() {
            tape.resize(head + 1, Symbol::Blank);
        }
        let tr = m.table()[q][tape[head].index()];
        if head > 0 {
            tape[head] = tr.write;
        }
        q = tr.next;
        head = match tr.mv {
            Move::L => head.saturating_sub(1),
            Move::S => head,
            Move::R => head + 1,
        };
        t += 1;
    }
    let mut out = tape[1..].to_vec();
    while out.last() == Some(&Symbol::Blank) {
        out.pop();
    }
    Some((t, out))
}

fn reference_halt_step(m: &MachineDescription, w: &BinaryString, budget: u64) -> Option<u64> {
    reference_run(m, w, budget).map(|(t, _)| t)
}

fn reference_decide(m: &MachineDescription, s: &BinaryString) -> bool {
    match reference_run(m, s, 1_000_000).expect("decider halts").1.as_slice() {
        [Symbol::One] => true,
        [Symbol::Zero] => false,
        other => panic!("decider output {other:?}"),
    }
}

// ---------------------------------------------------------------------------
// helpers over the library's terms

fn term_bit(m: &Machine, s: &BinaryString) -> Option<bool> {
    match run_bounded(m, s, 1_000_000) {
        RunOutcome::Halted { output, .. } => output.as_bit(),
        RunOutcome::BudgetExhausted { .. } => None,
    }
}

fn term_value(m: &Machine, n: u64) -> Option<u64> {
    match run_bounded(m, &BinaryString::from_nat(n), 5_000_000) {
        RunOutcome::Halted { output, .. } => output.as_bits()?.num_u64(),
        RunOutcome::BudgetExhausted { .. } => None,
    }
}

fn bits(s: &str) -> BinaryString {
    s.parse().unwrap()
}

const DECIDERS: &[&str] = &["odd", "mod3", "contains-11", "even-length", "leading-zero", "always-0", "always-1"];

fn decider(name: &str) -> MachineDescription {
    samples::by_name(name).unwrap()
}

fn threshold_m0(inner: MachineDescription) -> Machine {
    Machine::threshold(Machine::Raw(inner), BinaryString::empty())
}

// ---------------------------------------------------------------------------

struct Outcome {
    ok: bool,
    detail: String,
}

fn first<T: std::fmt::Debug>(bad: &[T]) -> String {
    bad.first().map(|b| format!(", first: {b:?}")).unwrap_or_default()
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

/// Threshold machines over ten pairs: exhaustive output properties to
/// length 8 and the certificate bound to length 64.
fn criterion_1() -> Outcome {
    let pairs: Vec<(MachineDescription, BinaryString)> = vec![
        (samples::self_loop(), bits("")),
        (samples::self_loop(), bits("0110")),
        (samples::halt_only(), bits("")),
        (samples::halt_only(), bits("1")),
        (samples::halter(1), bits("")),
        (samples::halter(3), bits("")),
        (samples::halter(3), bits("101")),
        (samples::halter(5), bits("")),
        (samples::halter(17), bits("")),
        (samples::halter(17), bits("11")),
    ];
    let mut halts_seen = HashSet::new();
    let mut violations = Vec::new();
    let mut checked = 0u64;
    for (m, w) in &pairs {
        let h = reference_halt_step(m, w, 10_000);
        halts_seen.insert(h);
        let built = build_o(Machine::Raw(m.clone()), w.clone());
        let o = &built.machine;
        let expect = |len: usize| h.is_none_or(|h| (len as u64) < h);
        let mut by_len: HashMap<usize, bool> = HashMap::new();
        for s in BinaryString::up_to_length(8) {
            checked += 1;
            let Some(b) = term_bit(o, &s) else {
                violations.push(format!("{} on `{s}`: no bit", m.name()));
                continue;
            };
            // length determinism
            if *by_len.entry(s.len()).or_insert(b) != b {
                violations.push(format!("{} length {} not determined", m.name(), s.len()));
            }
            // threshold dichotomy against the reference halt step
            if b != expect(s.len()) {
                violations.push(format!("{} on `{s}`: got {b}", m.name()));
            }
        }
        // monotone: 1 at a longer length forces 1 at every shorter one
        for len in 1..=8 {
            if by_len.get(&len) == Some(&true) && by_len.get(&(len - 1)) == Some(&false) {
                violations.push(format!("{} non-monotone at {len}", m.name()));
            }
        }
        let want = match h {
            Some(h) if h <= 8 => ThresholdProfile::StepThreshold(h as usize),
            _ => ThresholdProfile::AllOnes,
        };
        if threshold_profile(o, 8) != Ok(want) {
            violations.push(format!("{} profile", m.name()));
        }
        let Some(cert) = built.certificate.clone() else {
            violations.push(format!("{} no certificate", m.name()));
            continue;
        };
        let Statement::TimeBound { a, k, b, .. } = cert.subject else {
            violations.push(format!("{} certificate is not a time bound", m.name()));
            continue;
        };
        if Theorem::check(cert).is_err() {
            violations.push(format!("{} certificate rejected", m.name()));
        }
        for n in 0..=64u64 {
            let steps = run_bounded(o, &BinaryString::zeros(n as usize), 1_000_000).steps();
            if steps > a * n.pow(k) + b {
                violations.push(format!("{} length {n}: {steps} > {a}n^{k}+{b}", m.name()));
            }
        }
    }
    let spans = [None, Some(0), Some(1), Some(3), Some(5), Some(17)].iter().all(|h| halts_seen.contains(h));
    check(
        spans && violations.is_empty(),
        format!("{} pairs, {checked} inputs, {} violations{}", pairs.len(), violations.len(), first(&violations)),
    )
}

/// The racer against the reference simulator and the enumeration itself.
fn criterion_2() -> Outcome {
    let mut bad = Vec::new();
    for (m, w) in [
        (samples::halt_only(), bits("")),
        (samples::halter(1), bits("")),
        (samples::halter(3), bits("11")),
        (samples::halter(5), bits("")),
        (samples::halter(17), bits("")),
        (samples::move_right(), bits("0101")),
    ] {
        let h = reference_halt_step(&m, &w, 1000).unwrap();
        let v = race(&Machine::Raw(m.clone()), &w, 1000);
        if !matches!(v, RacerVerdict::Accept { halt_step, .. } if halt_step == h) {
            bad.push(format!("{} {v}", m.name()));
        }
    }

    let rounds = 100_000u64;
    let targets = [(samples::self_loop(), bits("")), (samples::self_loop(), bits("1")), (samples::ping_pong(), bits(""))];
    let (mh, wh) = build_fixed_point().unwrap();
    let mut first_index: HashMap<usize, u64> = HashMap::new();
    let mut about_mh = 0;
    for (k, thm) in TheoremEnumerator::new().take(rounds as usize).enumerate() {
        match thm.statement() {
            Statement::NotHalts { machine, input } => {
                for (i, (m, w)) in targets.iter().enumerate() {
                    if machine == &Machine::Raw(m.clone()) && input == w {
                        first_index.entry(i).or_insert(k as u64);
                    }
                }
                about_mh += usize::from(machine == &mh && input == &wh);
            }
            Statement::Halts { machine, input } => about_mh += usize::from(machine == &mh && input == &wh),
            _ => {}
        }
    }
    for (i, k) in &first_index {
        let (m, w) = &targets[*i];
        let v = race(&Machine::Raw(m.clone()), w, rounds);
        if !matches!(v, RacerVerdict::Reject { proof_index, .. } if proof_index == *k) {
            bad.push(format!("{} on `{w}`: {v}, index {k}", m.name()));
        }
    }
    if first_index.is_empty() {
        bad.push("no cycle-certified pair in range".into());
    }

    let v1 = race(&mh, &wh, rounds);
    let v2 = race(&mh, &wh, rounds);
    let stalled = v1 == RacerVerdict::StillRunning { rounds } && v1 == v2;
    let no_cert = certify_halting(&mh, &wh, rounds).is_none() && find_nonhalting_proof(&mh, &wh, rounds).is_none();
    if !stalled || !no_cert || about_mh != 0 {
        bad.push(format!("fixed point: {v1}, certificates found {}", !no_cert));
    }
    let mut idx: Vec<_> = first_index.iter().map(|(i, k)| (targets[*i].0.name().to_string(), *k)).collect();
    idx.sort();
    check(bad.is_empty(), format!("reject indices {idx:?}, fixed point {v1}; {} problems{}", bad.len(), first(&bad)))
}

/// Finite patches and the almost-equality relation.
fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut bad = Vec::new();
    let random_table = |rng: &mut ChaCha8Rng, m: usize| -> PatchTable {
        BinaryString::up_to_length(m).filter(|s| s.len() < m).map(|s| (s, rng.gen_bool(0.5))).collect()
    };
    for i in 0..100 {
        let name = DECIDERS[rng.gen_range(0..DECIDERS.len())];
        let base_raw = decider(name);
        let base = LanguageView::new(Machine::Raw(base_raw.clone()));
        let m = rng.gen_range(0..=4);
        let table = random_table(&mut rng, m);
        let p = patch_language(&base, table.clone(), m).unwrap();
        for s in BinaryString::up_to_length(8) {
            let want = if s.len() < m { table[&s] } else { reference_decide(&base_raw, &s) };
            if p.view.contains(&s) != Ok(want) {
                bad.push(format!("patch {i} ({name}, m {m}) on `{s}`"));
            }
        }
        match almost_equal(&p.view, &base, 8) {
            Ok(AlmostEqual::EqualBeyond(e)) if e <= m => {}
            other => bad.push(format!("patch {i}: {other:?}")),
        }
    }

    let mut related = 0;
    for t in 0..50 {
        let names = [DECIDERS[rng.gen_range(0..3)], DECIDERS[rng.gen_range(0..3)], DECIDERS[rng.gen_range(0..3)]];
        let views: Vec<LanguageView> = names
            .iter()
            .map(|n| {
                let m = rng.gen_range(0..=4);
                let table = random_table(&mut rng, m);
                patch_language(&LanguageView::new(Machine::Raw(decider(n))), table, m).unwrap().view
            })
            .collect();
        let sim = |i: usize, j: usize| matches!(almost_equal(&views[i], &views[j], 8), Ok(AlmostEqual::EqualBeyond(_)));
        for i in 0..3 {
            // patches of one base agree from length 4 on; distinct samples differ infinitely often
            let truth_ij = |j: usize| names[i] == names[j];
            if !sim(i, i) {
                bad.push(format!("triple {t}: not reflexive"));
            }
            for j in 0..3 {
                if sim(i, j) != sim(j, i) {
                    bad.push(format!("triple {t}: not symmetric"));
                }
                if sim(i, j) != truth_ij(j) {
                    bad.push(format!("triple {t}: {} vs {}", names[i], names[j]));
                }
                related += usize::from(i != j && sim(i, j));
                for k in 0..3 {
                    if sim(i, j) && sim(j, k) && !sim(i, k) {
                        bad.push(format!("triple {t}: not transitive"));
                    }
                }
            }
        }
    }
    check(bad.is_empty(), format!("100 patches, 50 triples ({related} related ordered pairs), {} violations{}", bad.len(), first(&bad)))
}

/// The switch machine over the fixed point and over a step-5 halter.
fn criterion_4() -> Outcome {
    let (mh, wh) = build_fixed_point().unwrap();
    let mh_halt_by_8 = run_bounded(&mh, &wh, 9).is_halted();
    let mut bad = Vec::new();
    let five = samples::halter(5);
    let h5 = reference_halt_step(&five, &bits(""), 100).unwrap();
    for name in ["odd", "mod3", "contains-11", "even-length", "leading-zero"] {
        let m1 = decider(name);
        let q = build_q(mh.clone(), Machine::Raw(m1.clone()), wh.clone()).machine;
        for s in BinaryString::up_to_length(8) {
            // below the halting step of M_h the switch outputs 1, else M1
            let want = if !mh_halt_by_8 { true } else { reference_decide(&m1, &s) };
            if term_bit(&q, &s) != Some(want) {
                bad.push(format!("{name} on `{s}`"));
            }
        }
        let q5 = build_q(Machine::Raw(five.clone()), Machine::Raw(m1.clone()), BinaryString::empty()).machine;
        for s in BinaryString::up_to_length(8) {
            let want = (s.len() as u64) < h5 || reference_decide(&m1, &s);
            if term_bit(&q5, &s) != Some(want) {
                bad.push(format!("{name} step-5 on `{s}`"));
            }
        }
        let rel = almost_equal(&LanguageView::new(q5), &LanguageView::new(Machine::Raw(m1)), 8);
        if !matches!(rel, Ok(AlmostEqual::EqualBeyond(e)) if e <= 5) {
            bad.push(format!("{name}: {rel:?}"));
        }
    }
    let o5 = build_o(Machine::Raw(five), BinaryString::empty()).machine;
    let thr = threshold_profile(&o5, 8);
    if thr != Ok(ThresholdProfile::StepThreshold(h5 as usize)) || h5 != 5 {
        bad.push(format!("threshold {thr:?}"));
    }
    check(bad.is_empty(), format!("5 deciders, threshold {h5}, {} mismatches{}", bad.len(), first(&bad)))
}

/// The diagonal function straight from its definition: no memo, no
/// cache, membership re-derived from the decoded certificates.
fn brute_t_table(book: &Codebook, m0: &Machine, upto: u64) -> Vec<u64> {
    let mut t = vec![0u64];
    for n in 1..=upto {
        let prev = t[(n - 1) as usize];
        let v = match book.decode(&BigUint::from(n)) {
            Some(q) if q.failures(Some(m0)).is_empty() => (prev + 1).max(1 + term_value(&q.m2, n).unwrap()),
            _ => prev + 1,
        };
        t.push(v);
    }
    t
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    let ones = threshold_m0(samples::self_loop());
    let mut ev = DiagonalEvaluator::new(ones.clone());
    for n in 0..=200 {
        if ev.t_m0_eval(n).ok() != Some(n) {
            bad.push(format!("no-code T({n})"));
        }
    }
    let brute = brute_t_table(&Codebook::base(), &ones, 200);
    if brute != (0..=200).collect::<Vec<_>>() {
        bad.push("brute force disagrees with identity".into());
    }

    let mut jumps = 0;
    for (m0, plan) in [
        (threshold_m0(samples::halter(5)), [(7u64, 30u64), (20, 25), (33, 90)]),
        (ones.clone(), [(2, 150), (100, 40), (150, 400)]),
    ] {
        let seeds = plan.iter().map(|&(c, v)| constant_seed(&m0, c, v)).collect();
        let mut ev = DiagonalEvaluator::with_seeds(m0.clone(), seeds);
        let brute = brute_t_table(ev.codebook(), &m0, 200);
        for n in 0..=200u64 {
            let t = ev.t_m0_eval(n).unwrap();
            if t != brute[n as usize] {
                bad.push(format!("T({n}) = {t}, brute {}", brute[n as usize]));
            }
            if n > 0 && brute[n as usize - 1] >= t {
                bad.push(format!("not increasing at {n}"));
            }
        }
        for &(c, v) in &plan {
            let want = (brute[c as usize - 1] + 1).max(1 + v);
            jumps += usize::from(want > brute[c as usize - 1] + 1);
            if ev.t_m0_eval(c).unwrap() != want {
                bad.push(format!("max rule at {c}"));
            }
        }
    }
    check(bad.is_empty() && jumps > 0, format!("n <= 200, 2 seeded evaluators, {jumps} jumps, {} mismatches{}", bad.len(), first(&bad)))
}

fn criterion_6() -> Outcome {
    let m0 = threshold_m0(samples::halter(5));
    let mut ev = DiagonalEvaluator::with_seeds(m0.clone(), vec![constant_seed(&m0, 9, 12)]);
    let mut bad = Vec::new();
    let mut names = Vec::new();
    let variants = forgery_variants(&ev);
    for (forgery, q) in &variants {
        let code = t_encode_unchecked(q);
        if ev.h_membership(&code) {
            bad.push(format!("{} accepted", forgery.name()));
        }
        match reject_self_reference(q, &mut ev, 200) {
            Ok(report) => {
                let named = report.failures.iter().find(|f| forgery.expects(f));
                match named {
                    Some(f) => names.push(format!("{}:{}", forgery.name(), f.certificate())),
                    None => bad.push(format!("{}: {}", forgery.name(), report.summary())),
                }
            }
            Err(e) => bad.push(format!("{}: {e}", forgery.name())),
        }
    }
    for n in 0..=200 {
        let t = ev.t_m0_eval(n).unwrap();
        if t.checked_add(1).is_none_or(|u| u <= t) {
            bad.push(format!("1 + T({n}) <= T({n})"));
        }
    }
    check(variants.len() == 5 && bad.is_empty(), format!("{} forgeries [{}]", variants.len(), names.join(", ")))
}

fn criterion_7() -> Outcome {
    let mut ev = DiagonalEvaluator::new(threshold_m0(samples::halter(5)));
    let mut bad = Vec::new();
    for name in ["odd", "mod3", "contains-11"] {
        let l0_raw = decider(name);
        let l0 = Machine::Raw(l0_raw.clone());
        let u = build_f_switch(&l0, &ev);
        let cmp = build_comparator(&u, &l0);
        for n in 0..=200u64 {
            // no codes below 201, so T(n) = n and f(n) = [n < 5]
            let f = n < 5;
            if ev.f_eval(n).ok() != Some(f) {
                bad.push(format!("f({n})"));
            }
            let l = u64::from(reference_decide(&l0_raw, &BinaryString::from_nat(n)));
            let un = term_value(&u, n);
            if un.map(|v| v == l) != Some(f) {
                bad.push(format!("{name} U({n}) = {un:?}"));
            }
            if term_value(&cmp, n) != Some(u64::from(f)) {
                bad.push(format!("{name} comparator at {n}"));
            }
        }
    }
    check(bad.is_empty(), format!("3 deciders, n <= 200, {} mismatches{}", bad.len(), first(&bad)))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = Vec::new();
    let m0 = threshold_m0(samples::halter(4));
    let mut distinct = HashSet::new();
    for i in 0..500 {
        let q = random_valid_quadruplet(&mut rng, &m0).unwrap();
        let code = t_encode(&q).unwrap();
        match t_decode(&code) {
            Some(back) if back == q && t_encode_unchecked(&back) == code => {}
            _ => bad.push(format!("quadruplet {i}")),
        }
        distinct.insert(code);
    }
    if t_decode(&BigUint::from(0u8)).is_some() {
        bad.push("decode(0)".into());
    }
    let mut codes = 0;
    for _ in 0..500 {
        let n = BigUint::from(rng.gen_range(0u64..1_000_000));
        if let Some(q) = t_decode(&n) {
            codes += 1;
            if t_encode_unchecked(&q) != n {
                bad.push(format!("{n} re-encodes differently"));
            }
        }
    }
    check(bad.is_empty(), format!("500 round trips ({} distinct), 500 naturals ({codes} codes)", distinct.len()))
}

/// Soundness over the first 1000 theorems, plus the NotHalts theorems in
/// a longer prefix since the first ones appear only past index 40000.
fn criterion_9() -> Outcome {
    let mut bad = Vec::new();
    let (mut halts, mut loops) = (HashSet::new(), HashSet::new());
    let (mut n_halts, mut n_loops, mut n_loops_first) = (0, 0, 0);
    for (k, thm) in TheoremEnumerator::new().take(45_000).enumerate() {
        match (thm.statement(), &thm.proof().evidence) {
            (Statement::Halts { machine, input }, Evidence::HaltTrace { steps, .. }) => {
                if k < 1000 {
                    n_halts += 1;
                    let actual = match machine {
                        Machine::Raw(m) => reference_halt_step(m, input, steps + 1),
                        other => Some(run_bounded(other, input, steps + 1)).filter(|o| o.is_halted()).map(|o| o.steps()),
                    };
                    if actual != Some(*steps) {
                        bad.push(format!("#{k}: halts at {actual:?}, certified {steps}"));
                    }
                }
                halts.insert((machine.clone(), input.clone()));
            }
            (Statement::NotHalts { machine, input }, Evidence::Cycle { prefix, cycle }) => {
                n_loops += 1;
                n_loops_first += usize::from(k < 1000);
                let span = 10 * (prefix + cycle);
                let halted = match machine {
                    Machine::Raw(m) => reference_halt_step(m, input, span).is_some(),
                    other => run_bounded(other, input, span).is_halted(),
                };
                if halted {
                    bad.push(format!("#{k}: halts within {span}"));
                }
                loops.insert((machine.clone(), input.clone()));
            }
            _ => {}
        }
    }
    let both = halts.intersection(&loops).count();
    check(
        bad.is_empty() && both == 0 && n_loops > 0,
        format!(
            "first 1000: {n_halts} Halts, {n_loops_first} NotHalts; first 45000: {n_loops} NotHalts; {both} pairs under both kinds; {} problems{}",
            bad.len(),
            first(&bad)
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("threshold machines", criterion_1),
        ("racer", criterion_2),
        ("patches and almost-equality", criterion_3),
        ("switch composition", criterion_4),
        ("diagonal function", criterion_5),
        ("self-reference forgeries", criterion_6),
        ("switch and comparator on f", criterion_7),
        ("quadruplet encoding", criterion_8),
        ("toy-theory soundness", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let verdict = if o.ok { "PASS" } else { "FAIL" };
        failed += usize::from(!o.ok);
        println!("{verdict} {} {name}: {} [{:.1?}]", i + 1, o.detail, start.elapsed());
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
