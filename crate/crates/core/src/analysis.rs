//! Request orchestration and report assembly for the command-line front-end.

use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::catalog;
use crate::certificate::{
    certify_log_concavity, spot_check, CertificateError, CertificateStatus, CertificateVerdict, ConcavityCertificate,
    StageOutcome,
};
use crate::criterion::{find_minimal_n0, verify_criterion_range, CriterionError, CriterionStatus};
use crate::definition::{self, DefinitionError};
use crate::log_behavior::{
    check_log_balanced, check_log_concave, check_log_convex, check_nth_root_decreasing, BehaviorVerdict, Clause,
    LogBehaviorError, Property,
};
use crate::poly::ExactRational;
use crate::recurrence::{generate_terms, RecurrenceError, TermTable, ThreeTermRecurrence, ValueMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT_ERROR: i32 = 3;

/// Upper end of the range sampled by the certificate spot check.
pub const SPOT_CHECK_UPPER: i64 = 1_000_000;
pub const SPOT_CHECK_SAMPLES: usize = 50;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("unknown builtin sequence {0:?} (available: flf, clf)")]
    UnknownSequence(String),
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("term count must be at least 2, got {0}")]
    TooFewTerms(i64),
    #[error(transparent)]
    Definition(#[from] DefinitionError),
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
    #[error(transparent)]
    LogBehavior(#[from] LogBehaviorError),
    #[error(transparent)]
    Criterion(#[from] CriterionError),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceSource {
    Builtin(String),
    File(PathBuf),
}

impl SequenceSource {
    /// Builtin names win over paths; anything else is read as a file.
    pub fn parse(s: &str) -> Self {
        if catalog::entry(s).is_some() {
            SequenceSource::Builtin(s.to_string())
        } else {
            SequenceSource::File(PathBuf::from(s))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateSource {
    /// Catalog certificate for a builtin, or the block embedded in the
    /// sequence file.
    Builtin,
    File(PathBuf),
    None,
}

impl CertificateSource {
    pub fn parse(s: &str) -> Self {
        match s {
            "builtin" => CertificateSource::Builtin,
            "none" => CertificateSource::None,
            path => CertificateSource::File(PathBuf::from(path)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Behavior(Property),
    Criterion,
    Certificate,
}

impl CheckKind {
    pub fn parse(name: &str) -> Result<Self, AnalysisError> {
        match name.trim() {
            "criterion" => Ok(CheckKind::Criterion),
            "certificate" => Ok(CheckKind::Certificate),
            other => Property::from_cli_name(other)
                .map(CheckKind::Behavior)
                .ok_or_else(|| AnalysisError::UnknownCheck(other.to_string())),
        }
    }

    pub fn parse_list(list: &str) -> Result<Vec<Self>, AnalysisError> {
        list.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(Self::parse)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct AnalysisRequest {
    pub sequence: SequenceSource,
    pub terms: i64,
    pub checks: Vec<CheckKind>,
    pub certificate: CertificateSource,
    pub n0: Option<i64>,
    /// Lower window index for the log checks; defaults per sequence.
    pub from: Option<i64>,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct SequenceInfo {
    pub name: String,
    pub origin: String,
    pub mode: ValueMode,
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub c: Vec<String>,
    pub initial: [String; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct TermDigest {
    pub count: usize,
    pub first: Vec<String>,
    pub last_index: i64,
    pub last_digits: usize,
}

#[derive(Debug, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub window: [i64; 2],
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_strict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct StageEntry {
    pub name: &'static str,
    pub result: &'static str,
    pub strict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct SpotCheckEntry {
    pub seed: u64,
    pub samples: usize,
    pub upper: i64,
    pub failures: Vec<i64>,
}

#[derive(Debug, Serialize)]
pub struct CertificateEntry {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proved_from: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rejected_stage: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n0: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<[Vec<String>; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_index: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explicit_checks: Option<Vec<i64>>,
    pub stages: Vec<StageEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical: Option<CheckEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spot_check: Option<SpotCheckEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Default, Serialize)]
pub struct Timing {
    pub generate_ms: f64,
    pub checks_ms: f64,
    pub certificate_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub sequence: SequenceInfo,
    pub terms: TermDigest,
    pub checks: Vec<CheckEntry>,
    pub certificate: Option<CertificateEntry>,
    pub timing: Timing,
}

#[derive(Debug)]
pub struct AnalysisOutcome {
    pub report: AnalysisReport,
    pub exit_code: i32,
}

fn strings(terms: &[ExactRational]) -> Vec<String> {
    terms.iter().map(ToString::to_string).collect()
}

fn digest(table: &TermTable) -> TermDigest {
    let last = table.terms().last().expect("tables are nonempty");
    TermDigest {
        count: table.len(),
        first: strings(&table.terms()[..table.len().min(5)]),
        last_index: table.last_index(),
        last_digits: last.numer().to_string().trim_start_matches('-').len(),
    }
}

fn clause_name(c: Clause) -> &'static str {
    match c {
        Clause::Concave => "concave",
        Clause::Convex => "convex",
        Clause::FactorialScaledConcave => "factorial-scaled concave",
        Clause::NthRoot => "nth-root",
    }
}

fn behavior_entry(v: &BehaviorVerdict) -> CheckEntry {
    CheckEntry {
        name: v.property.cli_name().to_string(),
        window: [v.lo, v.hi],
        verdict: if v.holds() { "HOLDS" } else { "VIOLATED" }.to_string(),
        all_strict: Some(v.all_strict),
        first_violation: v.first_violation.as_ref().map(|w| w.index),
        witness: v.first_violation.as_ref().map(|w| strings(&w.terms)),
        detail: v
            .first_violation
            .as_ref()
            .map(|w| format!("{} clause fails", clause_name(w.clause))),
    }
}

struct Loaded {
    rec: ThreeTermRecurrence,
    origin: String,
    description: Option<String>,
    embedded_certificate: Option<ConcavityCertificate>,
    check_from: i64,
}

fn load(source: &SequenceSource) -> Result<Loaded, AnalysisError> {
    match source {
        SequenceSource::Builtin(name) => {
            let rec = catalog::builtin(name).ok_or_else(|| AnalysisError::UnknownSequence(name.clone()))?;
            let entry = catalog::entry(name).expect("builtin has an entry");
            Ok(Loaded {
                rec,
                origin: "builtin".into(),
                description: Some(format!("{}; {}; {}", entry.title, entry.recurrence, entry.context)),
                embedded_certificate: catalog::builtin_certificate(name),
                check_from: entry.check_from,
            })
        }
        SequenceSource::File(path) => {
            let def = definition::load_sequence_spec(path)?;
            Ok(Loaded {
                rec: def.recurrence,
                origin: path.display().to_string(),
                description: def.description,
                embedded_certificate: def.certificate,
                check_from: 1,
            })
        }
    }
}

fn run_behavior(table: &TermTable, property: Property, lo: i64, n: i64) -> Result<BehaviorVerdict, AnalysisError> {
    Ok(match property {
        Property::LogConcave => check_log_concave(table, lo, n - 1)?,
        Property::LogConvex => check_log_convex(table, lo, n - 1)?,
        Property::LogBalanced => check_log_balanced(table, lo, n - 1)?,
        Property::NthRootDecreasing => check_nth_root_decreasing(table, 1, n - 2, 1)?,
    })
}

fn criterion_entry(
    rec: &ThreeTermRecurrence,
    table: &TermTable,
    n0: Option<i64>,
    n: i64,
) -> Result<CheckEntry, AnalysisError> {
    let n0 = match n0 {
        Some(n0) => n0,
        None => match find_minimal_n0(rec, table, n)? {
            Some(n0) => n0,
            None => {
                return Ok(CheckEntry {
                    name: "criterion".into(),
                    window: [table.first_index() + 1, n],
                    verdict: "FAILED".into(),
                    all_strict: None,
                    first_violation: None,
                    witness: None,
                    detail: Some(format!("no n0 <= {} satisfies the criterion", n - 1)),
                })
            }
        },
    };
    let out = verify_criterion_range(rec, table, n0, n)?;
    let detail = match out.failing_record() {
        Some(r) if !r.condition_i => format!("n0 = {n0}; a({}) <= 0", r.n),
        Some(r) => format!("n0 = {n0}; ratio below the larger root at n = {}", r.n),
        None => format!("n0 = {n0}"),
    };
    Ok(CheckEntry {
        name: "criterion".into(),
        window: [n0 + 1, n],
        verdict: match out.status {
            CriterionStatus::Satisfied => "SATISFIED",
            CriterionStatus::Failed(_) => "FAILED",
        }
        .into(),
        all_strict: None,
        first_violation: match out.status {
            CriterionStatus::Failed(k) => Some(k),
            CriterionStatus::Satisfied => None,
        },
        witness: None,
        detail: Some(detail),
    })
}

fn stage_entries(v: &CertificateVerdict) -> Vec<StageEntry> {
    v.stages
        .iter()
        .map(|s| StageEntry {
            name: s.stage.name(),
            result: match s.outcome {
                StageOutcome::Pass => "PASS",
                StageOutcome::Fail => "FAIL",
                StageOutcome::Skipped => "SKIPPED",
            },
            strict: s.strict,
            witness: s.witness.as_ref().map(ToString::to_string),
            detail: s.detail.clone(),
        })
        .collect()
}

fn inconclusive(detail: &str) -> CertificateEntry {
    CertificateEntry {
        verdict: "INCONCLUSIVE".into(),
        proved_from: None,
        rejected_stage: None,
        witness: None,
        n0: None,
        h: None,
        base_index: None,
        explicit_checks: None,
        stages: Vec::new(),
        empirical: None,
        spot_check: None,
        detail: Some(detail.to_string()),
    }
}

fn certificate_entry(
    rec: &ThreeTermRecurrence,
    table: &TermTable,
    cert: &ConcavityCertificate,
    n: i64,
    seed: u64,
) -> Result<CertificateEntry, AnalysisError> {
    let verdict = certify_log_concavity(rec, table, cert)?;
    let (proved_from, rejected_stage, witness) = match &verdict.status {
        CertificateStatus::Proved { from } => (Some(*from), None, None),
        CertificateStatus::Rejected { stage, witness } => {
            (None, Some(stage.name()), witness.as_ref().map(ToString::to_string))
        }
    };
    let (empirical, spot) = match proved_from {
        Some(from) if from < n => {
            let emp = check_log_concave(table, from, n - 1)?;
            let spot = spot_check(rec, table, cert, seed, SPOT_CHECK_SAMPLES, SPOT_CHECK_UPPER);
            (
                Some(behavior_entry(&emp)),
                Some(SpotCheckEntry {
                    seed,
                    samples: spot.samples.len(),
                    upper: SPOT_CHECK_UPPER,
                    failures: spot.failures,
                }),
            )
        }
        _ => (None, None),
    };
    Ok(CertificateEntry {
        verdict: if verdict.proved() { "PROVED" } else { "REJECTED" }.into(),
        proved_from,
        rejected_stage,
        witness,
        n0: Some(cert.n0),
        h: Some([cert.h.num().to_strings(), cert.h.den().to_strings()]),
        base_index: Some(cert.base_index),
        explicit_checks: Some(cert.explicit_checks.clone()),
        stages: stage_entries(&verdict),
        empirical,
        spot_check: spot,
        detail: None,
    })
}

fn ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// Generates the table, runs every requested check and assembles the report.
pub fn run_analysis(req: &AnalysisRequest) -> Result<AnalysisOutcome, AnalysisError> {
    if req.terms < 2 {
        return Err(AnalysisError::TooFewTerms(req.terms));
    }
    let loaded = load(&req.sequence)?;
    let n = req.terms;
    let mut timing = Timing::default();

    let t0 = Instant::now();
    let table = generate_terms(&loaded.rec, n)?;
    timing.generate_ms = ms(t0);

    let t1 = Instant::now();
    let lo = req.from.unwrap_or(loaded.check_from);
    let mut checks = Vec::new();
    let mut any_failed = false;
    for check in &req.checks {
        let entry = match *check {
            CheckKind::Behavior(p) => behavior_entry(&run_behavior(&table, p, lo, n)?),
            CheckKind::Criterion => criterion_entry(&loaded.rec, &table, req.n0, n)?,
            CheckKind::Certificate => continue,
        };
        any_failed |= matches!(entry.verdict.as_str(), "VIOLATED" | "FAILED");
        checks.push(entry);
    }
    timing.checks_ms = ms(t1);

    let t2 = Instant::now();
    let wants_certificate = req.certificate != CertificateSource::None || req.checks.contains(&CheckKind::Certificate);
    let cert = match &req.certificate {
        CertificateSource::Builtin => loaded.embedded_certificate.clone(),
        CertificateSource::File(path) => Some(definition::load_certificate(path, &loaded.rec.name)?),
        CertificateSource::None => None,
    };
    let mut inconclusive_run = false;
    let certificate = match (wants_certificate, cert) {
        (false, _) => None,
        (true, None) => {
            inconclusive_run = true;
            Some(inconclusive(match req.certificate {
                CertificateSource::None => "certificate check requested without --certificate",
                _ => "no certificate available for this sequence",
            }))
        }
        (true, Some(cert)) => {
            let entry = certificate_entry(&loaded.rec, &table, &cert, n, req.seed)?;
            any_failed |= entry.verdict == "REJECTED"
                || entry.empirical.as_ref().is_some_and(|e| e.verdict != "HOLDS")
                || entry.spot_check.as_ref().is_some_and(|s| !s.failures.is_empty());
            Some(entry)
        }
    };
    timing.certificate_ms = ms(t2);

    let exit_code = if any_failed {
        EXIT_VIOLATION
    } else if inconclusive_run {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    };
    let rec = &loaded.rec;
    let report = AnalysisReport {
        sequence: SequenceInfo {
            name: rec.name.clone(),
            origin: loaded.origin,
            mode: rec.mode,
            a: rec.a.to_strings(),
            b: rec.b.to_strings(),
            c: rec.c.to_strings(),
            initial: [rec.initial[0].to_string(), rec.initial[1].to_string()],
            description: loaded.description,
        },
        terms: digest(&table),
        checks,
        certificate,
        timing,
    };
    Ok(AnalysisOutcome { report, exit_code })
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let s = &self.sequence;
        let mode = match s.mode {
            ValueMode::Integer => "integer",
            ValueMode::Rational => "rational",
        };
        out += &format!("sequence  {} ({}, {mode} mode)\n", s.name, s.origin);
        out += &format!("  a(n) = [{}]\n", s.a.join(", "));
        out += &format!("  b(n) = [{}]\n", s.b.join(", "));
        out += &format!("  c(n) = [{}]\n", s.c.join(", "));
        out += &format!("  initial = {}, {}\n", s.initial[0], s.initial[1]);
        let t = &self.terms;
        out += &format!(
            "terms     {} generated, first {}; S_{} has {} digits\n",
            t.count,
            t.first.join(", "),
            t.last_index,
            t.last_digits
        );
        for c in &self.checks {
            out += &format!("check     {:<13} [{}, {}]  {}", c.name, c.window[0], c.window[1], c.verdict);
            if let Some(k) = c.first_violation {
                out += &format!("  first violation at {k}");
            }
            if let Some(d) = &c.detail {
                out += &format!("  ({d})");
            }
            out += "\n";
        }
        if let Some(cert) = &self.certificate {
            out += &format!("certificate {}", cert.verdict);
            if let Some(from) = cert.proved_from {
                out += &format!(": log-concave for every n >= {from}");
            }
            if let Some(stage) = cert.rejected_stage {
                out += &format!(" at stage {stage}");
            }
            if let Some(d) = &cert.detail {
                out += &format!(" ({d})");
            }
            out += "\n";
            for st in &cert.stages {
                out += &format!("  {:<22} {:<7} {}\n", st.name, st.result, st.detail);
            }
            if let Some(e) = &cert.empirical {
                out += &format!("  empirical [{}, {}] {}\n", e.window[0], e.window[1], e.verdict);
            }
            if let Some(sc) = &cert.spot_check {
                out += &format!(
                    "  spot check seed {}: {} samples in (n0, {}], {} failures\n",
                    sc.seed,
                    sc.samples,
                    sc.upper,
                    sc.failures.len()
                );
            }
        }
        let tm = &self.timing;
        out += &format!(
            "timing    generate {:.1} ms, checks {:.1} ms, certificate {:.1} ms\n",
            tm.generate_ms, tm.checks_ms, tm.certificate_ms
        );
        out
    }
}
