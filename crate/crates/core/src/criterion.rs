//! Sufficient condition for log-concavity of a positive sequence obeying
//! `a(n)S(n+1) + b(n)S(n) + c(n)S(n-1) = 0`: for every `n > n0`, `a(n) > 0`
//! and either `b(n)^2 < 4a(n)c(n)` or `S_n/S_{n-1}` is at least the larger
//! root of `a(n)x^2 + b(n)x + c(n)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::poly::{ExactRational, IntPolynomial};
use crate::recurrence::{ratio, ratio_step, RecurrenceError, TermTable, ThreeTermRecurrence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriterionError {
    #[error("a({0}) <= 0, the criterion does not apply")]
    NonPositiveLeading(i64),
    #[error(transparent)]
    Table(#[from] RecurrenceError),
    #[error("criterion satisfied but log-concavity fails at n = {0}")]
    SoundnessBreach(i64),
}

/// `b^2 - 4ac`.
pub fn discriminant(rec: &ThreeTermRecurrence) -> IntPolynomial {
    let four = BigInt::from(4);
    &(&rec.b * &rec.b) - &(&rec.a * &rec.c).scale(&four)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootComparison {
    Dominates,
    Below,
    NoRealRoot,
}

/// Decides `r >= (-b + sqrt(D)) / 2a` without radicals, given `a > 0`.
///
/// When `D >= 0` the quadratic `f(x) = ax^2 + bx + c` is nonnegative exactly
/// outside its roots, and the vertex `-b/2a` separates them, so
/// `r >= root  <=>  f(r) >= 0 && 2ar + b >= 0`. Both sides are evaluated with
/// the denominator of `r` cleared.
pub fn compare_with_larger_root(a: &BigInt, b: &BigInt, c: &BigInt, r: &ExactRational) -> RootComparison {
    let disc = b * b - BigInt::from(4) * a * c;
    if disc.is_negative() {
        return RootComparison::NoRealRoot;
    }
    let (p, q) = (r.numer(), r.denom());
    let quad = a * p * p + b * p * q + c * q * q;
    let vertex = BigInt::from(2) * a * p + b * q;
    if !quad.is_negative() && !vertex.is_negative() {
        RootComparison::Dominates
    } else {
        RootComparison::Below
    }
}

pub fn ratio_vs_larger_root(
    rec: &ThreeTermRecurrence,
    n: i64,
    r: &ExactRational,
) -> Result<RootComparison, CriterionError> {
    let (a, b, c) = rec.coefficients_at(n);
    if !a.is_positive() {
        return Err(CriterionError::NonPositiveLeading(n));
    }
    Ok(compare_with_larger_root(&a, &b, &c, r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexRecord {
    pub n: i64,
    pub condition_i: bool,
    pub discriminant_negative: bool,
    pub ratio_dominates_root: bool,
}

impl IndexRecord {
    pub fn passes(&self) -> bool {
        self.condition_i && (self.discriminant_negative || self.ratio_dominates_root)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriterionStatus {
    Satisfied,
    Failed(i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionOutcome {
    pub n0: i64,
    /// Checked indices are `n0 + 1 ..= last`.
    pub last: i64,
    pub records: Vec<IndexRecord>,
    pub status: CriterionStatus,
}

impl CriterionOutcome {
    pub fn satisfied(&self) -> bool {
        self.status == CriterionStatus::Satisfied
    }

    pub fn failing_record(&self) -> Option<&IndexRecord> {
        match self.status {
            CriterionStatus::Failed(n) => self.records.iter().find(|r| r.n == n),
            CriterionStatus::Satisfied => None,
        }
    }
}

fn index_record(rec: &ThreeTermRecurrence, table: &TermTable, n: i64) -> Result<IndexRecord, CriterionError> {
    let r = ratio(table, n)?;
    let (a, b, c) = rec.coefficients_at(n);
    let condition_i = a.is_positive();
    let cmp = condition_i.then(|| compare_with_larger_root(&a, &b, &c, &r));
    Ok(IndexRecord {
        n,
        condition_i,
        discriminant_negative: cmp == Some(RootComparison::NoRealRoot),
        ratio_dominates_root: cmp == Some(RootComparison::Dominates),
    })
}

/// Applies the criterion at every `n` in `(n0, last]` with `r = S_n/S_{n-1}`.
///
/// A satisfied outcome is cross-checked against the conclusion it implies:
/// `r(n+1) <= r(n)` through the recurrence at every checked index, and
/// `S_n^2 >= S_{n+1}S_{n-1}` wherever the table holds `S_{n+1}`.
pub fn verify_criterion_range(
    rec: &ThreeTermRecurrence,
    table: &TermTable,
    n0: i64,
    last: i64,
) -> Result<CriterionOutcome, CriterionError> {
    if n0 - 1 < table.first_index() {
        return Err(RecurrenceError::IndexOutOfRange {
            index: n0 - 1,
            lo: table.first_index(),
            hi: table.last_index(),
        }
        .into());
    }
    table.get(last)?;
    let records = (n0 + 1..=last)
        .map(|n| index_record(rec, table, n))
        .collect::<Result<Vec<_>, _>>()?;
    let status = records
        .iter()
        .find(|r| !r.passes())
        .map_or(CriterionStatus::Satisfied, |r| CriterionStatus::Failed(r.n));
    if status == CriterionStatus::Satisfied {
        cross_check(rec, table, n0, last)?;
    }
    Ok(CriterionOutcome {
        n0,
        last,
        records,
        status,
    })
}

fn cross_check(rec: &ThreeTermRecurrence, table: &TermTable, n0: i64, last: i64) -> Result<(), CriterionError> {
    for n in n0 + 1..=last {
        let r = ratio(table, n)?;
        let next = ratio_step(rec, n, &r)?;
        if next > r {
            return Err(CriterionError::SoundnessBreach(n));
        }
        if n < table.last_index() {
            let (prev, cur, nxt) = (table.get(n - 1)?, table.get(n)?, table.get(n + 1)?);
            if (cur * cur).cmp(&(nxt * prev)) == Ordering::Less {
                return Err(CriterionError::SoundnessBreach(n));
            }
        }
    }
    Ok(())
}

/// Smallest `n0` in `[first + 1, last - 1]` for which the criterion holds on
/// `(n0, last]`, where `first` is the table's first index.
pub fn find_minimal_n0(
    rec: &ThreeTermRecurrence,
    table: &TermTable,
    last: i64,
) -> Result<Option<i64>, CriterionError> {
    let lowest = table.first_index() + 1;
    if last - 1 < lowest {
        return Ok(None);
    }
    table.get(last)?;
    // The criterion holds on (n0, last] iff n0 is at or beyond the last
    // failing index, so one backwards pass suffices.
    let mut candidate = lowest;
    for n in (lowest + 1..=last).rev() {
        if !index_record(rec, table, n)?.passes() {
            candidate = n;
            break;
        }
    }
    if candidate > last - 1 {
        return Ok(None);
    }
    let outcome = verify_criterion_range(rec, table, candidate, last)?;
    debug_assert!(outcome.satisfied());
    Ok(outcome.satisfied().then_some(candidate))
}

/// The larger root test on `D(n) = 0` reduces to the vertex comparison; this
/// reports whether `D(n)` is a perfect square, useful for exact boundary
/// classification in reports.
pub fn discriminant_is_square(rec: &ThreeTermRecurrence, n: i64) -> bool {
    let d = discriminant(rec).eval_i64(n);
    if d.is_negative() {
        return false;
    }
    let s = d.sqrt();
    (&s * &s - d).is_zero()
}
