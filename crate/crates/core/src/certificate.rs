//! Symbolic log-concavity certificates.
//!
//! A certificate supplies a rational function `h = p/q`, an index `n0` and an
//! induction anchor. Verification proves, for all `n` beyond the anchor,
//!
//! ```text
//! S_n / S_{n-1}  >=  h(n)  >=  (-b(n) + sqrt(D(n))) / 2a(n)
//! ```
//!
//! using only polynomial sign decisions over the integers, which together with
//! the criterion yields `S_n^2 >= S_{n+1} S_{n-1}` on an infinite range.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::criterion::{compare_with_larger_root, discriminant, RootComparison};
use crate::log_behavior::check_log_concave;
use crate::poly::{poly_nonnegative_beyond, poly_positive_beyond, ExactRational, IntPolynomial, PositivityVerdict};
use crate::recurrence::{ratio, RecurrenceError, TermTable, ThreeTermRecurrence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("rational function denominator is identically zero")]
    ZeroDenominator,
    #[error("c(n) > 0 cannot be established beyond n = {bound} (witness n = {witness})")]
    MonotonicityPremiseFailed { bound: i64, witness: BigInt },
    #[error("invalid certificate: {0}")]
    Invalid(String),
    #[error(transparent)]
    Table(#[from] RecurrenceError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalFunction {
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Result<Self, CertificateError> {
        if den.is_zero() {
            return Err(CertificateError::ZeroDenominator);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn num(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn den(&self) -> &IntPolynomial {
        &self.den
    }

    /// `None` where the denominator vanishes.
    pub fn eval_i64(&self, n: i64) -> Option<ExactRational> {
        let d = self.den.eval_i64(n);
        (!d.is_zero()).then(|| ExactRational::new(self.num.eval_i64(n), d))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcavityCertificate {
    pub sequence: String,
    pub n0: i64,
    pub h: RationalFunction,
    pub base_index: i64,
    pub explicit_checks: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    ConditionI,
    DiscriminantPositive,
    RootDomination,
    MonotonicityPremise,
    InductionBase,
    InductionStep,
    ExplicitBaseCases,
}

impl Stage {
    pub const ALL: [Stage; 7] = [
        Stage::ConditionI,
        Stage::DiscriminantPositive,
        Stage::RootDomination,
        Stage::MonotonicityPremise,
        Stage::InductionBase,
        Stage::InductionStep,
        Stage::ExplicitBaseCases,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::ConditionI => "condition_i",
            Stage::DiscriminantPositive => "discriminant_positive",
            Stage::RootDomination => "root_domination",
            Stage::MonotonicityPremise => "monotonicity_premise",
            Stage::InductionBase => "induction_base",
            Stage::InductionStep => "induction_step",
            Stage::ExplicitBaseCases => "explicit_base_cases",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageOutcome {
    Pass,
    Fail,
    /// Not needed on this branch (negative discriminant beyond `n0`).
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageResult {
    pub stage: Stage,
    pub outcome: StageOutcome,
    pub witness: Option<BigInt>,
    /// Every underlying inequality held strictly.
    pub strict: bool,
    pub detail: String,
}

impl StageResult {
    fn pass(stage: Stage, strict: bool, detail: impl Into<String>) -> Self {
        StageResult {
            stage,
            outcome: StageOutcome::Pass,
            witness: None,
            strict,
            detail: detail.into(),
        }
    }

    fn fail(stage: Stage, witness: Option<BigInt>, detail: impl Into<String>) -> Self {
        StageResult {
            stage,
            outcome: StageOutcome::Fail,
            witness,
            strict: false,
            detail: detail.into(),
        }
    }

    fn skipped(stage: Stage) -> Self {
        StageResult {
            stage,
            outcome: StageOutcome::Skipped,
            witness: None,
            strict: false,
            detail: "discriminant negative beyond n0".into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome != StageOutcome::Fail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscriminantBranch {
    /// `D(n) < 0` for all `n > n0`.
    Negative,
    /// `D(n) >= 0` for all `n > n0`.
    NonNegative,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateStatus {
    /// Log-concavity holds for every `n >= from`.
    Proved { from: i64 },
    Rejected { stage: Stage, witness: Option<BigInt> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateVerdict {
    pub status: CertificateStatus,
    pub branch: DiscriminantBranch,
    pub stages: Vec<StageResult>,
}

impl CertificateVerdict {
    pub fn proved(&self) -> bool {
        matches!(self.status, CertificateStatus::Proved { .. })
    }

    pub fn proved_from(&self) -> Option<i64> {
        match self.status {
            CertificateStatus::Proved { from } => Some(from),
            CertificateStatus::Rejected { .. } => None,
        }
    }

    pub fn stage(&self, stage: Stage) -> &StageResult {
        self.stages
            .iter()
            .find(|s| s.stage == stage)
            .expect("every stage is reported")
    }

    pub fn failed_stages(&self) -> Vec<Stage> {
        self.stages
            .iter()
            .filter(|s| s.outcome == StageOutcome::Fail)
            .map(|s| s.stage)
            .collect()
    }
}

fn first_failure(stage: Stage, checks: &[(&str, PositivityVerdict)]) -> Option<StageResult> {
    checks.iter().find(|(_, v)| !v.holds()).map(|(what, v)| {
        StageResult::fail(stage, v.witness.clone(), format!("{what} fails"))
    })
}

/// `a(n) > 0` for all `n > n0`.
pub fn verify_condition_i(rec: &ThreeTermRecurrence, cert: &ConcavityCertificate) -> StageResult {
    let v = positive_beyond_or_fail(&rec.a, cert.n0);
    first_failure(Stage::ConditionI, &[("a(n) > 0", v)])
        .unwrap_or_else(|| StageResult::pass(Stage::ConditionI, true, "a(n) > 0"))
}

/// Classifies the sign of `D` beyond `n0`.
pub fn verify_discriminant(rec: &ThreeTermRecurrence, cert: &ConcavityCertificate) -> (StageResult, DiscriminantBranch) {
    let d = discriminant(rec);
    let stage = Stage::DiscriminantPositive;
    if !d.is_zero() && poly_positive_beyond(&-&d, cert.n0).expect("nonzero").holds() {
        return (
            StageResult::pass(stage, true, "D(n) < 0: first branch of condition (ii)"),
            DiscriminantBranch::Negative,
        );
    }
    let nonneg = poly_nonnegative_beyond(&d, cert.n0);
    if !nonneg.holds() {
        return (
            StageResult::fail(stage, nonneg.witness, "D(n) changes sign beyond n0"),
            DiscriminantBranch::Mixed,
        );
    }
    let strict = !d.is_zero() && poly_positive_beyond(&d, cert.n0).expect("nonzero").holds();
    let detail = if strict { "D(n) > 0" } else { "D(n) >= 0" };
    (StageResult::pass(stage, strict, detail), DiscriminantBranch::NonNegative)
}

/// The sqrt-free form of `h(n) >= larger root`, with `h = p/q`:
/// `a p^2 + b p q + c q^2` and `2 a p + b q`.
pub fn root_domination_polynomials(rec: &ThreeTermRecurrence, h: &RationalFunction) -> (IntPolynomial, IntPolynomial) {
    let (p, q) = (&h.num, &h.den);
    let alpha = &(&(&rec.a * &(p * p)) + &(&rec.b * &(p * q))) + &(&rec.c * &(q * q));
    let beta = &(&rec.a * p).scale(&BigInt::from(2)) + &(&rec.b * q);
    (alpha, beta)
}

/// `h(n) >= (-b + sqrt(D)) / 2a` for every `n > n0`.
pub fn verify_root_domination(rec: &ThreeTermRecurrence, cert: &ConcavityCertificate) -> StageResult {
    let stage = Stage::RootDomination;
    let den = poly_positive_beyond(&cert.h.den, cert.n0).expect("nonzero denominator");
    if let Some(f) = first_failure(stage, &[("denominator of h positive", den)]) {
        return f;
    }
    let (alpha, beta) = root_domination_polynomials(rec, &cert.h);
    let checks = [
        ("a p^2 + b p q + c q^2 >= 0", poly_nonnegative_beyond(&alpha, cert.n0)),
        ("2 a p + b q >= 0", poly_nonnegative_beyond(&beta, cert.n0)),
    ];
    if let Some(f) = first_failure(stage, &checks) {
        return f;
    }
    let strict = [&alpha, &beta]
        .iter()
        .all(|p| !p.is_zero() && poly_positive_beyond(p, cert.n0).expect("nonzero").holds());
    StageResult::pass(stage, strict, "h(n) dominates the larger root")
}

fn positive_beyond_or_fail(p: &IntPolynomial, n0: i64) -> PositivityVerdict {
    if p.is_zero() {
        PositivityVerdict {
            status: crate::poly::PositivityStatus::Violation,
            witness: Some(BigInt::from(n0 + 1)),
            scan_bound: BigInt::from(n0 + 1),
        }
    } else {
        poly_positive_beyond(p, n0).expect("nonzero")
    }
}

/// Multipliers the induction step relies on, positive for every `n` from the
/// anchor on: `a`, `c` (which makes `r -> (-b - c/r)/a` increasing), and
/// both parts of `h`.
pub fn verify_monotonicity_premise(rec: &ThreeTermRecurrence, cert: &ConcavityCertificate) -> StageResult {
    let from = cert.base_index - 1;
    let checks = [
        ("c(n) > 0", positive_beyond_or_fail(&rec.c, from)),
        ("a(n) > 0", positive_beyond_or_fail(&rec.a, from)),
        ("numerator of h positive", positive_beyond_or_fail(&cert.h.num, from)),
        ("denominator of h positive", positive_beyond_or_fail(&cert.h.den, from)),
    ];
    first_failure(Stage::MonotonicityPremise, &checks)
        .unwrap_or_else(|| StageResult::pass(Stage::MonotonicityPremise, true, "a, c, p, q > 0"))
}

/// `(-b p - c q) q(n+1) - a p p(n+1)`: nonnegative exactly when the ratio map
/// sends `h(n)` to at least `h(n+1)`, given positive `a`, `p` and `q(n+1)`.
pub fn induction_step_polynomial(rec: &ThreeTermRecurrence, h: &RationalFunction) -> IntPolynomial {
    let (p, q) = (&h.num, &h.den);
    let image_num = &(&-&rec.b * p) - &(&rec.c * q);
    &(&image_num * &q.shift_compose(1)) - &(&(&rec.a * p) * &p.shift_compose(1))
}

fn step_stage(rec: &ThreeTermRecurrence, cert: &ConcavityCertificate) -> StageResult {
    let gap = induction_step_polynomial(rec, &cert.h);
    let from = cert.base_index - 1;
    let v = poly_nonnegative_beyond(&gap, from);
    if let Some(f) = first_failure(Stage::InductionStep, &[("step inequality", v)]) {
        return f;
    }
    let strict = !gap.is_zero() && poly_positive_beyond(&gap, from).expect("nonzero").holds();
    StageResult::pass(Stage::InductionStep, strict, "g(n) >= h(n) implies g(n+1) >= h(n+1)")
}

/// `g(n) >= h(n) => g(n+1) >= h(n+1)` for every `n >= base_index`.
pub fn verify_induction_step(
    rec: &ThreeTermRecurrence,
    cert: &ConcavityCertificate,
) -> Result<StageResult, CertificateError> {
    let from = cert.base_index - 1;
    let premise = positive_beyond_or_fail(&rec.c, from);
    if !premise.holds() {
        return Err(CertificateError::MonotonicityPremiseFailed {
            bound: from,
            witness: premise.witness.expect("violation has a witness"),
        });
    }
    Ok(step_stage(rec, cert))
}

/// `S_b / S_{b-1} >= h(b)` at the anchor `b`.
pub fn verify_induction_base(table: &TermTable, cert: &ConcavityCertificate) -> Result<StageResult, CertificateError> {
    let b = cert.base_index;
    let g = ratio(table, b)?;
    let stage = Stage::InductionBase;
    Ok(match cert.h.eval_i64(b) {
        None => StageResult::fail(stage, Some(b.into()), "h undefined at the anchor"),
        Some(h) if g >= h => StageResult::pass(stage, g > h, format!("g({b}) = {g} >= h({b}) = {h}")),
        Some(h) => StageResult::fail(stage, Some(b.into()), format!("g({b}) = {g} < h({b}) = {h}")),
    })
}

fn explicit_stage(table: &TermTable, cert: &ConcavityCertificate) -> Result<StageResult, CertificateError> {
    let stage = Stage::ExplicitBaseCases;
    let mut strict = true;
    for &k in &cert.explicit_checks {
        let v = check_log_concave(table, k, k).map_err(|e| match e {
            crate::log_behavior::LogBehaviorError::Table(t) => CertificateError::Table(t),
            other => CertificateError::Invalid(other.to_string()),
        })?;
        if !v.holds() {
            return Ok(StageResult::fail(stage, Some(k.into()), format!("S_{k}^2 < S_{}S_{}", k + 1, k - 1)));
        }
        strict &= v.all_strict;
    }
    Ok(StageResult::pass(stage, strict, format!("{} direct checks", cert.explicit_checks.len())))
}

fn validate(cert: &ConcavityCertificate, table: &TermTable) -> Result<(), CertificateError> {
    if cert.base_index < cert.n0 {
        return Err(CertificateError::Invalid(format!(
            "base_index {} precedes n0 {}",
            cert.base_index, cert.n0
        )));
    }
    ratio(table, cert.base_index)?;
    for &k in &cert.explicit_checks {
        table.get(k - 1)?;
        table.get(k + 1)?;
    }
    Ok(())
}

/// Runs every stage and assembles the verdict. A proof covers
/// `n >= max(n0 + 1, base_index)`, extended downwards through any contiguous
/// run of explicitly checked indices.
pub fn certify_log_concavity(
    rec: &ThreeTermRecurrence,
    table: &TermTable,
    cert: &ConcavityCertificate,
) -> Result<CertificateVerdict, CertificateError> {
    validate(cert, table)?;
    let condition_i = verify_condition_i(rec, cert);
    let (disc, branch) = verify_discriminant(rec, cert);
    let (root, premise, base, step) = if branch == DiscriminantBranch::Negative {
        (
            StageResult::skipped(Stage::RootDomination),
            StageResult::skipped(Stage::MonotonicityPremise),
            StageResult::skipped(Stage::InductionBase),
            StageResult::skipped(Stage::InductionStep),
        )
    } else {
        (
            verify_root_domination(rec, cert),
            verify_monotonicity_premise(rec, cert),
            verify_induction_base(table, cert)?,
            step_stage(rec, cert),
        )
    };
    let explicit = explicit_stage(table, cert)?;
    let stages = vec![condition_i, disc, root, premise, base, step, explicit];

    let status = match stages.iter().find(|s| !s.passed()) {
        Some(s) => CertificateStatus::Rejected {
            stage: s.stage,
            witness: s.witness.clone(),
        },
        None => {
            let mut from = if branch == DiscriminantBranch::Negative {
                cert.n0 + 1
            } else {
                (cert.n0 + 1).max(cert.base_index)
            };
            let explicit: BTreeSet<i64> = cert.explicit_checks.iter().copied().collect();
            while explicit.contains(&(from - 1)) {
                from -= 1;
            }
            CertificateStatus::Proved { from }
        }
    };
    Ok(CertificateVerdict { status, branch, stages })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpotCheck {
    pub seed: u64,
    pub samples: Vec<i64>,
    /// Sampled indices where `h(n)` failed to dominate the larger root, or
    /// where a tabulated ratio fell below `h(n)`.
    pub failures: Vec<i64>,
}

/// Re-evaluates the chain `g(n) >= h(n) >= larger root` at `count` seeded
/// random indices in `(n0, upper]`; `g(n)` is compared only where the table
/// reaches and the induction applies.
pub fn spot_check(
    rec: &ThreeTermRecurrence,
    table: &TermTable,
    cert: &ConcavityCertificate,
    seed: u64,
    count: usize,
    upper: i64,
) -> SpotCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = cert.n0 + 1;
    let mut samples: Vec<i64> = (0..count).map(|_| rng.gen_range(lo..=upper.max(lo))).collect();
    samples.sort_unstable();
    let failures = samples
        .iter()
        .copied()
        .filter(|&n| {
            let Some(h) = cert.h.eval_i64(n) else { return true };
            let (a, b, c) = rec.coefficients_at(n);
            let dominated = compare_with_larger_root(&a, &b, &c, &h) != RootComparison::Below;
            let g_ok = n < cert.base_index
                || n > table.last_index()
                || ratio(table, n).map(|g| g >= h).unwrap_or(true);
            !(dominated && g_ok)
        })
        .collect();
    SpotCheck { seed, samples, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::recurrence::{generate_terms, rational};

    fn frac(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn with_h(num: &[i64], den: &[i64]) -> ConcavityCertificate {
        ConcavityCertificate {
            h: RationalFunction::new(poly(num), poly(den)).unwrap(),
            ..catalog::flf_certificate()
        }
    }

    fn flf_table() -> TermTable {
        generate_terms(&catalog::flf(), 40).unwrap()
    }

    #[test]
    fn certificate_h_values() {
        let h = catalog::flf_certificate().h;
        assert_eq!(h.eval_i64(2), Some(rational(20)));
        assert_eq!(h.eval_i64(3), Some(frac(152, 9)));
        assert_eq!(h.eval_i64(4), Some(frac(49, 3)));
        assert_eq!(h.eval_i64(1), None);
        assert_eq!(
            RationalFunction::new(poly(&[1]), IntPolynomial::zero()),
            Err(CertificateError::ZeroDenominator)
        );
    }

    #[test]
    fn root_domination_examples() {
        let flf = catalog::flf();
        let cert = catalog::flf_certificate();
        let r = verify_root_domination(&flf, &cert);
        assert_eq!(r.outcome, StageOutcome::Pass);
        assert!(r.strict);

        let zero = ConcavityCertificate {
            h: RationalFunction::new(IntPolynomial::zero(), poly(&[0, 0, -1, 1])).unwrap(),
            ..cert.clone()
        };
        let r = verify_root_domination(&flf, &zero);
        assert_eq!(r.outcome, StageOutcome::Fail);
        assert_eq!(r.detail, "2 a p + b q >= 0 fails");

        let double = ThreeTermRecurrence::with_integer_initial("d", poly(&[1]), poly(&[-2]), poly(&[1]), 1, 1).unwrap();
        let one = ConcavityCertificate {
            sequence: "d".into(),
            n0: 0,
            h: RationalFunction::new(poly(&[1]), poly(&[1])).unwrap(),
            base_index: 1,
            explicit_checks: vec![],
        };
        let r = verify_root_domination(&double, &one);
        assert_eq!(r.outcome, StageOutcome::Pass);
        assert!(!r.strict);

        let negative_den = with_h(&[16, 0, -16, 16], &[0, 0, 1, -1]);
        let r = verify_root_domination(&flf, &negative_den);
        assert_eq!(r.detail, "denominator of h positive fails");
    }

    #[test]
    fn root_domination_polynomials_factor_as_expected() {
        let (alpha, beta) = root_domination_polynomials(&catalog::flf(), &catalog::flf_certificate().h);
        // 128n(4n^4 - n^3 - n^2 + 4n + 2) and 8n(n^5 + 2n^4 + n^2 + 8n + 4)
        let want_alpha = (&IntPolynomial::identity() * &poly(&[2, 4, -1, -1, 4])).scale(&128.into());
        let want_beta = (&IntPolynomial::identity() * &poly(&[4, 8, 1, 0, 2, 1])).scale(&8.into());
        assert_eq!(alpha, want_alpha);
        assert_eq!(beta, want_beta);
    }

    #[test]
    fn induction_step_examples() {
        let flf = catalog::flf();
        let r = verify_induction_step(&flf, &catalog::flf_certificate()).unwrap();
        assert_eq!(r.outcome, StageOutcome::Pass);
        assert!(r.strict);

        let inflated = with_h(&[17, 0, -17, 17], &[0, 0, -1, 1]);
        let r = verify_induction_step(&flf, &inflated).unwrap();
        assert_eq!(r.outcome, StageOutcome::Fail);
        // the witness is a genuine negative value of the step polynomial
        let gap = induction_step_polynomial(&flf, &inflated.h);
        assert!(gap.eval_int(r.witness.as_ref().unwrap()) < BigInt::zero());

        let no_c = ThreeTermRecurrence { c: IntPolynomial::zero(), ..flf };
        assert!(matches!(
            verify_induction_step(&no_c, &catalog::flf_certificate()),
            Err(CertificateError::MonotonicityPremiseFailed { .. })
        ));
    }

    #[test]
    fn gap_polynomial_identity() {
        let gap = induction_step_polynomial(&catalog::flf(), &catalog::flf_certificate().h);
        let positive_factors = &IntPolynomial::identity() * &IntPolynomial::linear(1).pow(2);
        let reduced = gap.div_exact(&positive_factors).unwrap();
        assert_eq!(reduced, poly(&[-2, -1, 2]).scale(&128.into()));
    }

    #[test]
    fn induction_base_examples() {
        let t = flf_table();
        let cert = catalog::flf_certificate();
        let r = verify_induction_base(&t, &cert).unwrap();
        assert_eq!(r.outcome, StageOutcome::Pass);
        assert!(!r.strict);
        let four = ConcavityCertificate { base_index: 4, ..cert.clone() };
        let r = verify_induction_base(&t, &four).unwrap();
        assert!(r.strict);
        let two = ConcavityCertificate { base_index: 2, ..cert.clone() };
        let r = verify_induction_base(&t, &two).unwrap();
        assert_eq!(r.outcome, StageOutcome::Fail);
        assert_eq!(r.detail, "g(2) = 18 < h(2) = 20");
        let far = ConcavityCertificate { base_index: 99, ..cert };
        assert!(matches!(verify_induction_base(&t, &far), Err(CertificateError::Table(_))));
    }

    #[test]
    fn flf_certificate_proves() {
        let v = certify_log_concavity(&catalog::flf(), &flf_table(), &catalog::flf_certificate()).unwrap();
        assert_eq!(v.status, CertificateStatus::Proved { from: 2 });
        assert_eq!(v.branch, DiscriminantBranch::NonNegative);
        assert!(v.stages.iter().all(|s| s.outcome == StageOutcome::Pass));
        assert!(v.stage(Stage::DiscriminantPositive).strict);
    }

    #[test]
    fn without_explicit_checks_range_shrinks() {
        let cert = ConcavityCertificate {
            explicit_checks: vec![],
            ..catalog::flf_certificate()
        };
        let v = certify_log_concavity(&catalog::flf(), &flf_table(), &cert).unwrap();
        assert_eq!(v.proved_from(), Some(4));
        // a gap in the explicit checks does not extend the range
        let gapped = ConcavityCertificate {
            explicit_checks: vec![2],
            ..catalog::flf_certificate()
        };
        let v = certify_log_concavity(&catalog::flf(), &flf_table(), &gapped).unwrap();
        assert_eq!(v.proved_from(), Some(4));
    }

    #[test]
    fn clf_certificate_rejected() {
        let clf = catalog::clf();
        let t = generate_terms(&clf, 40).unwrap();
        let cert = ConcavityCertificate {
            sequence: "clf".into(),
            ..catalog::flf_certificate()
        };
        let v = certify_log_concavity(&clf, &t, &cert).unwrap();
        assert!(!v.proved());
        // log-concavity fails at k = 2 already, so the direct checks fail too
        let failed = v.failed_stages();
        assert!(failed.contains(&Stage::InductionBase));
        assert!(failed.contains(&Stage::InductionStep));
        assert_eq!(
            v.status,
            CertificateStatus::Rejected {
                stage: Stage::InductionBase,
                witness: Some(3.into())
            }
        );
    }

    #[test]
    fn negative_discriminant_branch_skips_induction() {
        // a = 1, b = -1, c = 1 gives D = -3 everywhere; the table only has to
        // cover the anchor, so a constant one will do
        let rec = ThreeTermRecurrence::with_integer_initial("neg", poly(&[1]), poly(&[-1]), poly(&[1]), 1, 1).unwrap();
        let t = TermTable::from_terms("neg", 0, vec![rational(1); 10]).unwrap();
        let cert = ConcavityCertificate {
            sequence: "neg".into(),
            n0: 0,
            h: RationalFunction::new(poly(&[1]), poly(&[1])).unwrap(),
            base_index: 1,
            explicit_checks: vec![],
        };
        let v = certify_log_concavity(&rec, &t, &cert).unwrap();
        assert_eq!(v.branch, DiscriminantBranch::Negative);
        assert_eq!(v.proved_from(), Some(1));
        assert_eq!(v.stage(Stage::InductionStep).outcome, StageOutcome::Skipped);
    }

    #[test]
    fn mixed_discriminant_rejected() {
        // D = n^2 - 4*(1)*(4) changes sign at n = 4
        let rec = ThreeTermRecurrence::with_integer_initial("mix", poly(&[1]), poly(&[0, -1]), poly(&[4]), 1, 1).unwrap();
        let t = TermTable::from_terms("mix", 0, vec![rational(1); 10]).unwrap();
        let cert = ConcavityCertificate {
            sequence: "mix".into(),
            n0: 0,
            h: RationalFunction::new(poly(&[0, 1]), poly(&[1])).unwrap(),
            base_index: 1,
            explicit_checks: vec![],
        };
        let v = certify_log_concavity(&rec, &t, &cert).unwrap();
        assert_eq!(v.branch, DiscriminantBranch::Mixed);
        assert_eq!(
            v.status,
            CertificateStatus::Rejected {
                stage: Stage::DiscriminantPositive,
                witness: Some(1.into())
            }
        );
    }

    #[test]
    fn invalid_certificates() {
        let cert = ConcavityCertificate { base_index: 1, ..catalog::flf_certificate() };
        assert!(matches!(
            certify_log_concavity(&catalog::flf(), &flf_table(), &cert),
            Err(CertificateError::Invalid(_))
        ));
        let cert = ConcavityCertificate { explicit_checks: vec![40], ..catalog::flf_certificate() };
        assert!(matches!(
            certify_log_concavity(&catalog::flf(), &flf_table(), &cert),
            Err(CertificateError::Table(_))
        ));
    }

    #[test]
    fn spot_check_is_seeded() {
        let flf = catalog::flf();
        let t = flf_table();
        let cert = catalog::flf_certificate();
        let a = spot_check(&flf, &t, &cert, 7, 50, 1_000_000);
        let b = spot_check(&flf, &t, &cert, 7, 50, 1_000_000);
        assert_eq!(a, b);
        assert!(a.failures.is_empty());
        assert_eq!(a.samples.len(), 50);
        let bad = with_h(&[16], &[1]);
        assert!(!spot_check(&flf, &t, &bad, 7, 50, 1_000_000).failures.is_empty());
    }
}
