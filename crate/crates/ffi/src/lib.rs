//! C ABI for `indeplab`.
//!
//! Machines cross the boundary as opaque `IlMachine` handles owned by the
//! caller and released with [`il_machine_free`]. Every fallible call
//! returns an [`IlStatus`]; on failure [`il_last_error_message`] describes
//! the error for the calling thread. Strings returned by the library are
//! released with [`il_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use indeplab::cli::parse_term_text;
use indeplab::constructions::{build_o, build_q, race, RacerVerdict};
use indeplab::diagonal::DiagonalEvaluator;
use indeplab::term::Machine;
use indeplab::tm::{run_bounded, samples, string_num, BinaryString, RunOutcome};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IlStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidBits = 4,
    DomainError = 5,
    Panic = 6,
}

/// Opaque machine handle.
pub struct IlMachine(Machine);

#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct IlRunResult {
    pub halted: bool,
    pub steps: u64,
    /// Tape contents on halt, or null. Free with `il_string_free`.
    pub output: *mut c_char,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IlRaceKind {
    Accept = 0,
    Reject = 1,
    StillRunning = 2,
}

/// `value` is the halt step for `Accept`, the theorem index for `Reject`
/// and zero otherwise.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IlRaceResult {
    pub kind: IlRaceKind,
    pub value: u64,
    pub rounds: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fail(IlStatus, String);

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> IlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            IlStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            IlStatus::Panic
        }
    }
}

unsafe fn utf8<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(IlStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(IlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn bits(p: *const c_char, what: &str) -> Result<BinaryString, Fail> {
    let s = utf8(p, what)?;
    s.parse().map_err(|_| Fail(IlStatus::InvalidBits, format!("{what} `{s}` is not a binary string")))
}

unsafe fn machine<'a>(p: *const IlMachine, what: &str) -> Result<&'a Machine, Fail> {
    p.as_ref().map(|m| &m.0).ok_or_else(|| Fail(IlStatus::NullArgument, format!("{what} is null")))
}

fn check_out<T>(out: *mut T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(IlStatus::NullArgument, "output pointer is null".into()));
    }
    Ok(())
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

fn handle(m: Machine) -> *mut IlMachine {
    Box::into_raw(Box::new(IlMachine(m)))
}

/// Parses a machine in the line format or as a term s-expression.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn il_machine_parse(text: *const c_char, out: *mut *mut IlMachine) -> IlStatus {
    guard(|| {
        check_out(out)?;
        let t = utf8(text, "text")?;
        let m = parse_term_text(t).map_err(|e| Fail(IlStatus::ParseError, e))?;
        *out = handle(m);
        Ok(())
    })
}

/// Looks up a bundled sample machine such as `halter-5` or `self-loop`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn il_machine_sample(name: *const c_char, out: *mut *mut IlMachine) -> IlStatus {
    guard(|| {
        check_out(out)?;
        let n = utf8(name, "name")?;
        let m = samples::by_name(n).ok_or_else(|| Fail(IlStatus::DomainError, format!("unknown sample `{n}`")))?;
        *out = handle(Machine::Raw(m));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn il_machine_free(m: *mut IlMachine) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// The machine as a term s-expression, or null on a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn il_machine_to_string(m: *const IlMachine) -> *mut c_char {
    match m.as_ref() {
        Some(m) => into_c(m.0.to_string()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn il_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message for the last failed call on this thread, or null. Valid
/// until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn il_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds the threshold machine of `m` on `w`.
///
/// # Safety
/// `m` must be a live handle, `w` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn il_build_o(m: *const IlMachine, w: *const c_char, out: *mut *mut IlMachine) -> IlStatus {
    guard(|| {
        check_out(out)?;
        let m = machine(m, "machine")?.clone();
        let w = bits(w, "w")?;
        *out = handle(build_o(m, w).machine);
        Ok(())
    })
}

/// Builds the switch machine: `m2` past the threshold of `m1` on `w`,
/// 1 below it.
///
/// # Safety
/// Handles must be live, `w` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn il_build_q(
    m1: *const IlMachine,
    m2: *const IlMachine,
    w: *const c_char,
    out: *mut *mut IlMachine,
) -> IlStatus {
    guard(|| {
        check_out(out)?;
        let m1 = machine(m1, "m1")?.clone();
        let m2 = machine(m2, "m2")?.clone();
        let w = bits(w, "w")?;
        *out = handle(build_q(m1, m2, w).machine);
        Ok(())
    })
}

/// Runs `m` on `input` for at most `budget` steps.
///
/// # Safety
/// `m` must be a live handle, `input` a NUL-terminated string, `out`
/// writable. The caller frees `out->output`.
#[no_mangle]
pub unsafe extern "C" fn il_run_bounded(
    m: *const IlMachine,
    input: *const c_char,
    budget: u64,
    out: *mut IlRunResult,
) -> IlStatus {
    guard(|| {
        check_out(out)?;
        let m = machine(m, "machine")?;
        let w = bits(input, "input")?;
        *out = match run_bounded(m, &w, budget) {
            RunOutcome::Halted { output, steps } => IlRunResult { halted: true, steps, output: into_c(output.to_string()) },
            RunOutcome::BudgetExhausted { steps } => IlRunResult { halted: false, steps, output: ptr::null_mut() },
        };
        Ok(())
    })
}

/// The natural number of a binary string in shortlex order, in decimal.
///
/// # Safety
/// `s` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn il_string_num(s: *const c_char, out: *mut *mut c_char) -> IlStatus {
    guard(|| {
        check_out(out)?;
        let b = bits(s, "string")?;
        *out = into_c(string_num(&b).to_string());
        Ok(())
    })
}

/// Races `m` on `w` against the theorem enumeration for `rounds` rounds.
///
/// # Safety
/// `m` must be a live handle, `w` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn il_race(
    m: *const IlMachine,
    w: *const c_char,
    rounds: u64,
    out: *mut IlRaceResult,
) -> IlStatus {
    guard(|| {
        check_out(out)?;
        let m = machine(m, "machine")?;
        let w = bits(w, "w")?;
        *out = match race(m, &w, rounds) {
            RacerVerdict::Accept { halt_step, round } => IlRaceResult { kind: IlRaceKind::Accept, value: halt_step, rounds: round },
            RacerVerdict::Reject { proof_index, round } => IlRaceResult { kind: IlRaceKind::Reject, value: proof_index, rounds: round },
            RacerVerdict::StillRunning { rounds } => IlRaceResult { kind: IlRaceKind::StillRunning, value: 0, rounds },
        };
        Ok(())
    })
}

/// `T(n)` and `f(n)` of the diagonal machine over `m0`, with no planted
/// codes.
///
/// # Safety
/// `m0` must be a live handle; `t` and `f` must be writable.
#[no_mangle]
pub unsafe extern "C" fn il_diagonal_eval(m0: *const IlMachine, n: u64, t: *mut u64, f: *mut bool) -> IlStatus {
    guard(|| {
        check_out(t)?;
        check_out(f)?;
        let mut ev = DiagonalEvaluator::new(machine(m0, "m0")?.clone());
        let fail = |e: indeplab::diagonal::DiagonalError| Fail(IlStatus::DomainError, e.to_string());
        *t = ev.t_m0_eval(n).map_err(fail)?;
        *f = ev.f_eval(n).map_err(fail)?;
        Ok(())
    })
}
