use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{almost_equal, build_o, patch_language, threshold_profile, AlmostEqual, LanguageView, ThresholdProfile};
use crate::diagonal::{constant_seed, forgery_variants, reject_self_reference, DiagonalEvaluator};
use crate::term::{Machine, PatchTable};
use crate::theory::{Evidence, Statement, Theorem, TheoremEnumerator};
use crate::tm::{run_bounded, safety_budget, samples, BinaryString, RunOutcome};

pub const SUITES: &[&str] = &["threshold", "patch", "diagonal", "theory"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyRow {
    pub property: &'static str,
    pub passed: u64,
    pub total: u64,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub rows: Vec<PropertyRow>,
}

impl SuiteReport {
    fn record(&mut self, property: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let i = match self.rows.iter().position(|r| r.property == property) {
            Some(i) => i,
            None => {
                self.rows.push(PropertyRow { property, passed: 0, total: 0, first_failure: None });
                self.rows.len() - 1
            }
        };
        let row = &mut self.rows[i];
        row.total += 1;
        if ok {
            row.passed += 1;
        } else if row.first_failure.is_none() {
            row.first_failure = Some(detail());
        }
    }

    pub fn ok(&self) -> bool {
        self.rows.iter().all(|r| r.passed == r.total)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            write!(f, "{}\t{}/{}", r.property, r.passed, r.total)?;
            if let Some(d) = &r.first_failure {
                write!(f, "\tfirst failure: {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn run_suite(name: &str, max_len: usize, seed: u64) -> Option<SuiteReport> {
    Some(match name {
        "threshold" => threshold_suite(max_len),
        "patch" => patch_suite(max_len, seed),
        "diagonal" => diagonal_suite(seed),
        "theory" => theory_suite(),
        _ => return None,
    })
}

fn bit_of(m: &Machine, s: &BinaryString) -> Option<bool> {
    match run_bounded(m, s, safety_budget()) {
        RunOutcome::Halted { output, .. } => output.as_bit(),
        RunOutcome::BudgetExhausted { .. } => None,
    }
}

/// The `(M, w)` pairs exercised by the threshold suite, with the step at
/// which `M` halts on `w`.
pub fn threshold_pairs() -> Vec<(Machine, BinaryString, Option<u64>)> {
    let b = |s: &str| s.parse::<BinaryString>().unwrap();
    let raw = |m| Machine::Raw(m);
    vec![
        (raw(samples::self_loop()), b(""), None),
        (raw(samples::self_loop()), b("1"), None),
        (raw(samples::halt_only()), b(""), Some(0)),
        (raw(samples::halt_only()), b("10"), Some(0)),
        (raw(samples::halter(1)), b(""), Some(1)),
        (raw(samples::halter(3)), b(""), Some(3)),
        (raw(samples::halter(3)), b("11"), Some(3)),
        (raw(samples::halter(5)), b(""), Some(5)),
        (raw(samples::halter(5)), b("0"), Some(5)),
        (raw(samples::halter(17)), b(""), Some(17)),
    ]
}

fn threshold_suite(max_len: usize) -> SuiteReport {
    let mut r = SuiteReport::default();
    for (m, w, _) in threshold_pairs() {
        let halt = match run_bounded(&m, &w, max_len.max(64) as u64 + 1) {
            RunOutcome::Halted { steps, .. } => Some(steps),
            RunOutcome::BudgetExhausted { .. } => None,
        };
        let built = build_o(m.clone(), w.clone());
        let o = &built.machine;
        let label = format!("O({}, {w})", m.describe());
        let by_len: Vec<Option<bool>> = (0..=max_len).map(|n| bit_of(o, &BinaryString::zeros(n))).collect();

        let mut total = true;
        let mut determined = true;
        for s in BinaryString::up_to_length(max_len) {
            let got = bit_of(o, &s);
            total &= got.is_some();
            determined &= got == by_len[s.len()];
        }
        r.record("halts-with-bit", total, || label.clone());
        r.record("length-determined", determined, || label.clone());
        let monotone = by_len.windows(2).all(|p| !(p[1] == Some(true) && p[0] == Some(false)));
        r.record("monotone", monotone, || label.clone());
        let shape = by_len.iter().enumerate().all(|(n, b)| *b == Some(halt.is_none_or(|h| (n as u64) < h)));
        r.record("threshold-shape", shape, || label.clone());
        let want = match halt {
            Some(h) if h as usize <= max_len => ThresholdProfile::StepThreshold(h as usize),
            _ => ThresholdProfile::AllOnes,
        };
        r.record("profile", threshold_profile(o, max_len) == Ok(want), || label.clone());

        let fits = built.certificate.as_ref().is_some_and(|p| match p.subject {
            Statement::TimeBound { a, k, b, .. } => (0..=64u64).all(|n| {
                let steps = run_bounded(o, &BinaryString::zeros(n as usize), safety_budget()).steps();
                Theorem::check(p.clone()).is_ok() && steps <= a * n.pow(k) + b
            }),
            _ => false,
        });
        r.record("certificate-fit", fits, || label.clone());
    }
    r
}

const DECIDERS: &[&str] = &["odd", "mod3", "contains-11", "even-length", "leading-zero", "always-0", "always-1"];

fn random_decider(rng: &mut impl Rng) -> Machine {
    Machine::Raw(samples::by_name(DECIDERS[rng.gen_range(0..DECIDERS.len())]).unwrap())
}

fn random_table(rng: &mut impl Rng, m: usize) -> PatchTable {
    BinaryString::up_to_length(m)
        .filter(|s| s.len() < m)
        .map(|s| (s, rng.gen_bool(0.5)))
        .collect()
}

fn similar(a: &LanguageView, b: &LanguageView, probe: usize) -> bool {
    matches!(almost_equal(a, b, probe), Ok(AlmostEqual::EqualBeyond(_)))
}

fn patch_suite(max_len: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = SuiteReport::default();
    for _ in 0..100 {
        let base = LanguageView::new(random_decider(&mut rng));
        let m = rng.gen_range(0..=4);
        let table = random_table(&mut rng, m);
        let label = format!("base {} m {m}", base.decider.describe());
        let Ok(p) = patch_language(&base, table.clone(), m) else {
            r.record("patch-built", false, || label.clone());
            continue;
        };
        let agrees = BinaryString::up_to_length(max_len).all(|s| {
            let want = if s.len() < m { table.get(&s).copied() } else { base.contains(&s).ok() };
            p.view.contains(&s).ok() == want
        });
        r.record("patch-agrees", agrees, || label.clone());
        let beyond = matches!(almost_equal(&p.view, &base, max_len), Ok(AlmostEqual::EqualBeyond(e)) if e <= m);
        r.record("equal-beyond", beyond, || label.clone());
        let certified = crate::theory::derive_time_bound(&base.decider).is_some();
        r.record("certified-iff-base", p.certificate.is_some() == certified, || label.clone());
    }
    for _ in 0..50 {
        // two bases per triple so that related pairs are common
        let pool = [random_decider(&mut rng), random_decider(&mut rng)];
        let views: Vec<LanguageView> = (0..3)
            .map(|_| {
                let base = LanguageView::new(pool[rng.gen_range(0..2)].clone());
                let m = rng.gen_range(0..=4);
                let t = random_table(&mut rng, m);
                patch_language(&base, t, m).unwrap().view
            })
            .collect();
        let [a, b, c] = [&views[0], &views[1], &views[2]];
        let probe = max_len;
        r.record("reflexive", similar(a, a, probe), String::new);
        r.record("symmetric", similar(a, b, probe) == similar(b, a, probe), String::new);
        let trans = !(similar(a, b, probe) && similar(b, c, probe)) || similar(a, c, probe);
        r.record("transitive", trans, String::new);
    }
    r
}

fn diagonal_suite(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::default();
    let ones = Machine::threshold(Machine::Raw(samples::self_loop()), BinaryString::empty());
    let step5 = Machine::threshold(Machine::Raw(samples::halter(5)), BinaryString::empty());

    let mut plain = DiagonalEvaluator::new(ones);
    for n in 0..=200 {
        r.record("no-code-identity", plain.t_m0_eval(n).ok() == Some(n), || format!("n {n}"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut codes: Vec<u64> = Vec::new();
    while codes.len() < 3 {
        let c = rng.gen_range(1..=200);
        if !codes.contains(&c) {
            codes.push(c);
        }
    }
    let seeds = codes.iter().map(|&c| constant_seed(&step5, c, rng.gen_range(0..300))).collect();
    let mut ev = DiagonalEvaluator::with_seeds(step5, seeds);
    let mut prev = None;
    for n in 0..=200u64 {
        let t = ev.t_m0_eval(n);
        let f = ev.f_eval(n);
        r.record("evaluates", t.is_ok() && f.is_ok(), || format!("n {n}"));
        if let (Ok(t), Ok(f)) = (t, f) {
            r.record("strictly-increasing", prev.is_none_or(|p| p < t), || format!("n {n}"));
            r.record("f-threshold", f == (t < 5), || format!("n {n}"));
            prev = Some(t);
        }
        let member = ev.h_membership(&BigUint::from(n));
        r.record("members-are-seeds", member == codes.contains(&n), || format!("n {n}"));
    }

    for (forgery, q) in forgery_variants(&ev) {
        let ok = matches!(reject_self_reference(&q, &mut ev, 200),
            Ok(rep) if rep.failures.iter().any(|f| forgery.expects(f)) && rep.contradiction_checked_to == 200);
        r.record("forgery-rejected", ok, || forgery.name().to_string());
    }
    r
}

fn theory_suite() -> SuiteReport {
    let mut r = SuiteReport::default();
    let mut halts = HashSet::new();
    let mut loops = HashSet::new();
    for (k, thm) in TheoremEnumerator::new().take(1000).enumerate() {
        let ev = &thm.proof().evidence;
        match (thm.statement(), ev) {
            (Statement::Halts { machine: m, input: w }, Evidence::HaltTrace { steps, .. }) => {
                let out = run_bounded(m, w, steps + 1);
                r.record("halts-at-certified-step", out.is_halted() && out.steps() == *steps, || format!("#{k}"));
                halts.insert((m.clone(), w.clone()));
            }
            (Statement::NotHalts { machine: m, input: w }, Evidence::Cycle { prefix, cycle }) => {
                let span = 10 * (prefix + cycle);
                r.record("loops-past-certificate", !run_bounded(m, w, span).is_halted(), || format!("#{k}"));
                loops.insert((m.clone(), w.clone()));
            }
            _ => {}
        }
    }
    let both = halts.intersection(&loops).count() as u64;
    r.record("exclusive", both == 0, || format!("{both} pairs under both kinds"));
    r
}
