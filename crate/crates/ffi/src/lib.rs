//! C ABI over `seqcert`.
//!
//! Objects cross the boundary as opaque handles that the caller releases with
//! the matching `*_free` function. Every fallible call returns a
//! [`SeqcertStatus`]; on failure a message for the calling thread is
//! available from [`seqcert_last_error`]. Strings returned through out
//! pointers are owned by the caller and released with [`seqcert_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde::Deserialize;

use seqcert::analysis::{run_analysis, AnalysisRequest, CertificateSource, CheckKind, SequenceSource};
use seqcert::log_behavior::{check_log_balanced, check_log_concave, check_log_convex, check_nth_root_decreasing};
use seqcert::{catalog, certify_log_concavity, definition, generate_terms, TermTable, ThreeTermRecurrence};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqcertStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    NotFound = 4,
    ParseError = 5,
    ComputationError = 6,
    Panic = 7,
}

/// Sequence properties accepted by [`seqcert_check`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqcertProperty {
    LogConcave = 0,
    LogConvex = 1,
    LogBalanced = 2,
    /// Checks `z_n = S_{n+1}` over `[lo, hi]`.
    NthRootDecreasing = 3,
}

/// Opaque recurrence handle.
pub struct SeqcertRecurrence {
    inner: ThreeTermRecurrence,
}

/// Opaque term-table handle.
pub struct SeqcertTable {
    inner: TermTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(SeqcertStatus, String);

impl Failure {
    fn new(status: SeqcertStatus, msg: impl ToString) -> Self {
        Failure(status, msg.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SeqcertStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SeqcertStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SeqcertStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(SeqcertStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(SeqcertStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(SeqcertStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure::new(SeqcertStatus::NullPointer, format!("{what} is null")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

fn computation(e: impl ToString) -> Failure {
    Failure::new(SeqcertStatus::ComputationError, e)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn seqcert_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message describing the last failure on this thread, or null. The pointer
/// stays valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn seqcert_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Looks up a builtin sequence ("flf" or "clf").
#[no_mangle]
pub unsafe extern "C" fn seqcert_recurrence_builtin(
    name: *const c_char,
    out: *mut *mut SeqcertRecurrence,
) -> SeqcertStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        let out = out_arg(out, "out")?;
        let inner = catalog::builtin(name)
            .ok_or_else(|| Failure::new(SeqcertStatus::NotFound, format!("unknown builtin sequence {name:?}")))?;
        *out = Box::into_raw(Box::new(SeqcertRecurrence { inner }));
        Ok(())
    })
}

/// Parses a sequence definition document.
#[no_mangle]
pub unsafe extern "C" fn seqcert_recurrence_from_json(
    json: *const c_char,
    out: *mut *mut SeqcertRecurrence,
) -> SeqcertStatus {
    guard(|| {
        let json = str_arg(json, "json")?;
        let out = out_arg(out, "out")?;
        let def = definition::parse_sequence_spec(json).map_err(|e| Failure::new(SeqcertStatus::ParseError, e))?;
        *out = Box::into_raw(Box::new(SeqcertRecurrence { inner: def.recurrence }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn seqcert_recurrence_free(rec: *mut SeqcertRecurrence) {
    if !rec.is_null() {
        drop(Box::from_raw(rec));
    }
}

/// Generates `S_0..S_n`.
#[no_mangle]
pub unsafe extern "C" fn seqcert_generate(
    rec: *const SeqcertRecurrence,
    n: i64,
    out: *mut *mut SeqcertTable,
) -> SeqcertStatus {
    guard(|| {
        let rec = ref_arg(rec, "rec")?;
        let out = out_arg(out, "out")?;
        let inner = generate_terms(&rec.inner, n).map_err(computation)?;
        *out = Box::into_raw(Box::new(SeqcertTable { inner }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn seqcert_table_free(table: *mut SeqcertTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Number of terms held; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn seqcert_table_len(table: *const SeqcertTable) -> usize {
    table.as_ref().map_or(0, |t| t.inner.len())
}

/// Writes the decimal (or `p/q`) form of the term at index `k`.
#[no_mangle]
pub unsafe extern "C" fn seqcert_table_term(
    table: *const SeqcertTable,
    k: i64,
    out: *mut *mut c_char,
) -> SeqcertStatus {
    guard(|| {
        let table = ref_arg(table, "table")?;
        let out = out_arg(out, "out")?;
        let term = table
            .inner
            .get(k)
            .map_err(|e| Failure::new(SeqcertStatus::InvalidArgument, e))?;
        *out = into_c_string(term.to_string());
        Ok(())
    })
}

/// Runs a property check over `[lo, hi]`. `first_violation` receives the
/// first failing index, or -1 when the property holds; it may be null.
#[no_mangle]
pub unsafe extern "C" fn seqcert_check(
    table: *const SeqcertTable,
    property: SeqcertProperty,
    lo: i64,
    hi: i64,
    holds: *mut bool,
    first_violation: *mut i64,
) -> SeqcertStatus {
    guard(|| {
        let t = &ref_arg(table, "table")?.inner;
        let holds = out_arg(holds, "holds")?;
        let verdict = match property {
            SeqcertProperty::LogConcave => check_log_concave(t, lo, hi),
            SeqcertProperty::LogConvex => check_log_convex(t, lo, hi),
            SeqcertProperty::LogBalanced => check_log_balanced(t, lo, hi),
            SeqcertProperty::NthRootDecreasing => check_nth_root_decreasing(t, lo, hi, 1),
        }
        .map_err(|e| Failure::new(SeqcertStatus::InvalidArgument, e))?;
        *holds = verdict.holds();
        if let Some(fv) = first_violation.as_mut() {
            *fv = verdict.first_violation.map_or(-1, |v| v.index);
        }
        Ok(())
    })
}

/// Verifies a log-concavity certificate. `certificate_json` may be null to
/// use the catalog certificate of a builtin sequence. `proved_from` receives
/// the proved lower index, or -1 when rejected; it may be null.
#[no_mangle]
pub unsafe extern "C" fn seqcert_certify(
    rec: *const SeqcertRecurrence,
    table: *const SeqcertTable,
    certificate_json: *const c_char,
    proved: *mut bool,
    proved_from: *mut i64,
) -> SeqcertStatus {
    guard(|| {
        let rec = &ref_arg(rec, "rec")?.inner;
        let table = &ref_arg(table, "table")?.inner;
        let proved = out_arg(proved, "proved")?;
        let cert = if certificate_json.is_null() {
            catalog::builtin_certificate(&rec.name).ok_or_else(|| {
                Failure::new(
                    SeqcertStatus::NotFound,
                    format!("no catalog certificate for {:?}", rec.name),
                )
            })?
        } else {
            let text = str_arg(certificate_json, "certificate_json")?;
            definition::parse_certificate(text, &rec.name).map_err(|e| Failure::new(SeqcertStatus::ParseError, e))?
        };
        let verdict = certify_log_concavity(rec, table, &cert).map_err(computation)?;
        *proved = verdict.proved();
        if let Some(pf) = proved_from.as_mut() {
            *pf = verdict.proved_from().unwrap_or(-1);
        }
        Ok(())
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RequestDoc {
    sequence: String,
    terms: i64,
    #[serde(default)]
    checks: Vec<String>,
    #[serde(default = "default_certificate")]
    certificate: String,
    #[serde(default)]
    n0: Option<i64>,
    #[serde(default)]
    from: Option<i64>,
    #[serde(default)]
    seed: u64,
}

fn default_certificate() -> String {
    "none".into()
}

/// Runs a full analysis described by a JSON request such as
/// `{"sequence": "flf", "terms": 500, "checks": ["log-concave"],
/// "certificate": "builtin"}` and writes the JSON report. `exit_code`
/// receives the command-line exit code (0 pass, 1 violation, 2 inconclusive).
#[no_mangle]
pub unsafe extern "C" fn seqcert_analyze_json(
    request_json: *const c_char,
    report: *mut *mut c_char,
    exit_code: *mut i32,
) -> SeqcertStatus {
    guard(|| {
        let text = str_arg(request_json, "request_json")?;
        let report = out_arg(report, "report")?;
        let exit_code = out_arg(exit_code, "exit_code")?;
        let doc: RequestDoc = serde_json::from_str(text).map_err(|e| Failure::new(SeqcertStatus::ParseError, e))?;
        let checks = doc
            .checks
            .iter()
            .map(|c| CheckKind::parse(c))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure::new(SeqcertStatus::InvalidArgument, e))?;
        let req = AnalysisRequest {
            sequence: SequenceSource::parse(&doc.sequence),
            terms: doc.terms,
            checks,
            certificate: CertificateSource::parse(&doc.certificate),
            n0: doc.n0,
            from: doc.from,
            seed: doc.seed,
        };
        let outcome = run_analysis(&req).map_err(|e| Failure::new(SeqcertStatus::InvalidArgument, e))?;
        *report = into_c_string(outcome.report.to_json());
        *exit_code = outcome.exit_code;
        Ok(())
    })
}

/// Releases a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn seqcert_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
