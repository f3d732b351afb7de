//! The `indeplab` command line. Every verb parses its arguments, calls one
//! library operation and prints a plain-text report with stable field
//! order. Exit status: 0 success, 1 domain error, 2 usage error.

mod input;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;

use crate::constructions::{
    almost_equal, build_goldbach_demo, build_o, build_q, patch_language, race, Built, LanguageView,
};
use crate::diagonal::{
    build_comparator, build_f_switch, constant_seed, t_encode, DiagonalEvaluator, Quadruplet,
};
use crate::sexpr::Sexpr;
use crate::term::{Machine, Seed};
use crate::theory::{pair_weight, TheoremEnumerator};
use crate::tm::{run_bounded, safety_budget, time_complexity_profile, BinaryString, MachineDescription, RunOutcome};

pub use input::{load_term, parse_table, parse_term_text, table_to_text, Descriptor};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "indeplab", version, about = "Build, run and check machines, proofs and diagonal constructions")]
pub struct Cli {
    /// Write the report (or, for builders, the built machine) here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

/// Machine arguments are files (line format or term s-expression) or
/// `@name` for a bundled sample.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a machine file.
    Validate { machine: String },
    /// Run a machine on one input.
    Run {
        machine: String,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long)]
        budget: Option<u64>,
        /// One line per step; raw machines only.
        #[arg(long)]
        trace: bool,
    },
    /// Worst-case steps per input length.
    Profile {
        machine: String,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Dovetail simulation against the theorem enumeration.
    Race {
        machine: String,
        #[arg(long, default_value = "")]
        input: String,
        /// Rounds.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
    /// `O(machine=<file>, w=<bits>)`
    BuildO { descriptor: String },
    /// `Q(m1=<file>, m2=<file>, w=<bits>)`
    BuildQ { descriptor: String },
    /// `patch(base=<file>, table=<file>, m=<int>)`
    Patch { descriptor: String },
    /// Compare two deciders up to finitely many strings.
    AlmostEq {
        a: String,
        b: String,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Print theorems in enumeration order.
    Enumerate {
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        skip: usize,
    },
    /// Encode a quadruplet file as a natural number.
    Encode { quadruplet: String },
    /// Decode a natural number.
    Decode {
        code: String,
        /// Also report membership for this M0.
        #[arg(long)]
        m0: Option<String>,
    },
    /// Dump membership, T and f over a range.
    Tmo {
        m0: String,
        #[arg(long, default_value_t = 0)]
        from: u64,
        #[arg(long, default_value_t = 20)]
        to: u64,
        /// Plant a constant quadruplet: `CODE=VALUE`.
        #[arg(long = "seed-code")]
        seed_code: Vec<String>,
    },
    /// The switch bit f(n).
    F {
        m0: String,
        n: u64,
        #[arg(long = "seed-code")]
        seed_code: Vec<String>,
    },
    /// Build the switch machine from `l0` and the f of `m0`, tabulated.
    Switch {
        l0: String,
        m0: String,
        #[arg(long, default_value_t = 20)]
        to: u64,
        #[arg(long = "seed-code")]
        seed_code: Vec<String>,
    },
    /// Build the comparator of `m` against `l0`, tabulated.
    Compare {
        m: String,
        l0: String,
        #[arg(long, default_value_t = 20)]
        to: u64,
    },
    /// Run the Goldbach searcher.
    DemoGoldbach {
        #[arg(long, default_value = "1")]
        input: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run invariant suites.
    Verify {
        /// One of threshold, patch, diagonal, theory, all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Parses `args` (program name first) and runs the command.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let written = match (&cli.out, &cli.command) {
                (Some(path), c) if !writes_artifact(c) => std::fs::write(path, &report.text),
                _ => out.write_all(report.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "i/o: {e}");
                return 1;
            }
            report.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn writes_artifact(c: &Command) -> bool {
    matches!(c, Command::BuildO { .. } | Command::BuildQ { .. } | Command::Patch { .. } | Command::Switch { .. })
}

/// A report and the exit status it carries.
#[derive(Debug, Default)]
pub struct Report {
    pub text: String,
    pub status: i32,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, status: 0 }
    }
}

pub fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    use std::fmt::Write as _;
    let mut s = String::new();
    match &cli.command {
        Command::Validate { machine } => {
            load_term(machine)?;
            s.push_str("valid\n");
        }
        Command::Run { machine, input, budget, trace } => {
            let w = input::bits(input)?;
            let m = load_term(machine)?;
            let budget = budget.unwrap_or_else(safety_budget);
            if *trace {
                let Machine::Raw(raw) = &m else {
                    return Err(CliError::Domain("--trace needs a raw machine".into()));
                };
                for line in trace_run(raw, &w, budget) {
                    let _ = writeln!(s, "{line}");
                }
            } else {
                let _ = writeln!(s, "{}", run_bounded(&m, &w, budget));
            }
        }
        Command::Profile { machine, max_len, budget } => {
            let m = load_term(machine)?;
            let p = time_complexity_profile(&m, *max_len, budget.unwrap_or_else(safety_budget))
                .map_err(|e| CliError::Domain(e.to_string()))?;
            for r in p.rows {
                let _ = writeln!(s, "{}\t{}\t{}", r.len, r.max_steps, r.witness);
            }
        }
        Command::Race { machine, input, budget } => {
            let w = input::bits(input)?;
            let m = load_term(machine)?;
            let _ = writeln!(s, "{}", race(&m, &w, *budget));
        }
        Command::BuildO { descriptor } => {
            let d = Descriptor::parse(descriptor)?;
            d.expect("O", &["machine", "w"])?;
            let w = input::bits(d.get("w"))?;
            let built = build_o(load_term(d.get("machine"))?, w);
            return emit_built(cli, &built);
        }
        Command::BuildQ { descriptor } => {
            let d = Descriptor::parse(descriptor)?;
            d.expect("Q", &["m1", "m2", "w"])?;
            let w = input::bits(d.get("w"))?;
            let built = build_q(load_term(d.get("m1"))?, load_term(d.get("m2"))?, w);
            return emit_built(cli, &built);
        }
        Command::Patch { descriptor } => {
            let d = Descriptor::parse(descriptor)?;
            d.expect("patch", &["base", "table", "m"])?;
            let m: usize = d.get("m").parse().map_err(|_| CliError::Usage(format!("m=`{}` is not an integer", d.get("m"))))?;
            let base = LanguageView::new(load_term(d.get("base"))?);
            let table = parse_table(&input::read(d.get("table"))?).map_err(|e| CliError::Domain(format!("{}: {e}", d.get("table"))))?;
            let p = patch_language(&base, table, m).map_err(|e| CliError::Domain(e.to_string()))?;
            return emit_built(cli, &Built { machine: p.view.decider, certificate: p.certificate });
        }
        Command::AlmostEq { a, b, max_len } => {
            let a = LanguageView::new(load_term(a)?);
            let b = LanguageView::new(load_term(b)?);
            let r = almost_equal(&a, &b, *max_len).map_err(|e| CliError::Domain(e.to_string()))?;
            let _ = writeln!(s, "{r}");
        }
        Command::Enumerate { count, skip } => {
            for (k, thm) in TheoremEnumerator::new().enumerate().skip(*skip).take(*count) {
                let weight = pair_weight(thm.proof()).unwrap_or(0);
                let _ = writeln!(s, "{k}\t{weight}\t{}", thm.statement().to_sexpr());
            }
        }
        Command::Encode { quadruplet } => {
            let text = input::read(quadruplet)?;
            let q = Sexpr::parse(&text)
                .and_then(|e| Quadruplet::from_sexpr(&e))
                .map_err(|e| CliError::Domain(format!("{quadruplet}: {e}")))?;
            let code = t_encode(&q).map_err(|e| CliError::Domain(e.to_string()))?;
            let _ = writeln!(s, "{code}");
        }
        Command::Decode { code, m0 } => {
            let n: BigUint = code.parse().map_err(|_| CliError::Usage(format!("`{code}` is not a natural number")))?;
            let m0 = m0.as_deref().map(load_term).transpose()?;
            match crate::diagonal::t_decode(&n) {
                None => s.push_str("non-code\n"),
                Some(q) => {
                    let _ = writeln!(s, "{}", q.to_sexpr());
                    if let Some(m0) = &m0 {
                        let failures = q.failures(Some(m0));
                        let _ = writeln!(s, "member:{}", u8::from(failures.is_empty()));
                        for f in failures {
                            let _ = writeln!(s, "failure\t{}\t{f}", f.certificate());
                        }
                    }
                }
            }
        }
        Command::Tmo { m0, from, to, seed_code } => {
            let mut ev = evaluator(m0, seed_code)?;
            for n in *from..=*to {
                let member = ev.h_membership(&BigUint::from(n));
                let t = ev.t_m0_eval(n).map_err(domain)?;
                let f = ev.f_eval(n).map_err(domain)?;
                let _ = writeln!(s, "{}", tmo_line(n, member, t, f));
            }
        }
        Command::F { m0, n, seed_code } => {
            let mut ev = evaluator(m0, seed_code)?;
            let _ = writeln!(s, "{n}\tf:{}", u8::from(ev.f_eval(*n).map_err(domain)?));
        }
        Command::Switch { l0, m0, to, seed_code } => {
            let l0 = load_term(l0)?;
            let mut ev = evaluator(m0, seed_code)?;
            let u = build_f_switch(&l0, &ev);
            if let Some(path) = &cli.out {
                std::fs::write(path, format!("{u}\n"))?;
            }
            for n in 0..=*to {
                let f = ev.f_eval(n).map_err(domain)?;
                let x = BinaryString::from_nat(n);
                let _ = writeln!(s, "{n}\tf:{}\tL0:{}\tU:{}", u8::from(f), value(&l0, &x)?, value(&u, &x)?);
            }
        }
        Command::Compare { m, l0, to } => {
            let m = load_term(m)?;
            let l0 = load_term(l0)?;
            let c = build_comparator(&m, &l0);
            for n in 0..=*to {
                let _ = writeln!(s, "{n}\tM:{}", value(&c, &BinaryString::from_nat(n))?);
            }
        }
        Command::DemoGoldbach { input, budget } => {
            let w = input::bits(input)?;
            let _ = writeln!(s, "{}", run_bounded(&build_goldbach_demo(), &w, budget.unwrap_or_else(safety_budget)));
        }
        Command::Verify { suite, max_len, seed } => {
            let names: Vec<&str> = match suite.as_str() {
                "all" => verify::SUITES.to_vec(),
                one if verify::SUITES.contains(&one) => vec![one],
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown suite `{other}`; expected one of {}, all",
                        verify::SUITES.join(", ")
                    )))
                }
            };
            let mut status = 0;
            for name in names {
                let r = verify::run_suite(name, *max_len, *seed).expect("listed suite");
                if !r.ok() {
                    status = 1;
                }
                for line in r.to_string().lines() {
                    let _ = writeln!(s, "{name}\t{line}");
                }
            }
            return Ok(Report { text: s, status });
        }
    }
    Ok(Report::ok(s))
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn emit_built(cli: &Cli, built: &Built) -> Result<Report, CliError> {
    let cert = built.certificate.as_ref().map(|p| p.to_sexpr().to_string()).unwrap_or_else(|| "none".into());
    match &cli.out {
        Some(path) => {
            std::fs::write(path, format!("{}\n", built.machine))?;
            Ok(Report::ok(format!("certificate\t{cert}\n")))
        }
        None => Ok(Report::ok(format!("machine\t{}\ncertificate\t{cert}\n", built.machine))),
    }
}

fn evaluator(m0: &str, seed_codes: &[String]) -> Result<DiagonalEvaluator, CliError> {
    let m0 = load_term(m0)?;
    let seeds = seed_codes.iter().map(|sc| parse_seed(&m0, sc)).collect::<Result<Vec<Seed>, _>>()?;
    Ok(DiagonalEvaluator::with_seeds(m0, seeds))
}

fn parse_seed(m0: &Machine, text: &str) -> Result<Seed, CliError> {
    let bad = || CliError::Usage(format!("--seed-code `{text}`: expected CODE=VALUE"));
    let (c, v) = text.split_once('=').ok_or_else(bad)?;
    let code = c.trim().parse().map_err(|_| bad())?;
    let value = v.trim().parse().map_err(|_| bad())?;
    Ok(constant_seed(m0, code, value))
}

fn value(m: &Machine, x: &BinaryString) -> Result<String, CliError> {
    match run_bounded(m, x, safety_budget()) {
        RunOutcome::Halted { output, .. } => Ok(output.to_input().num().to_string()),
        other => Err(CliError::Domain(format!("{} on {x}: {other}", m.describe()))),
    }
}

/// One line of the `tmo` dump.
pub fn tmo_line(n: u64, member: bool, t: u64, f: bool) -> String {
    format!("{n}\tmember:{}\tT:{t}\tf:{}", u8::from(member), u8::from(f))
}

/// A step-by-step listing of a raw run: one line per transition, then
/// the outcome.
pub fn trace_run(m: &MachineDescription, input: &BinaryString, budget: u64) -> Vec<String> {
    let mut c = crate::tm::Configuration::initial(m, input);
    let mut lines = Vec::new();
    while c.state != m.halt() && c.steps < budget {
        let (k, q, head, read) = (c.steps, c.state, c.head, c.read());
        let t = c.apply(m);
        lines.push(format!(
            "step {k}: state={} head={head} read={read} write={} move={}",
            m.label(q),
            t.write,
            t.mv.to_char()
        ));
    }
    let outcome = if c.state == m.halt() {
        RunOutcome::Halted { output: c.output(), steps: c.steps }
    } else {
        RunOutcome::BudgetExhausted { steps: c.steps }
    };
    lines.push(outcome.to_string());
    lines
}

#[cfg(test)]
mod tests;
