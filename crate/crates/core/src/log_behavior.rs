//! Empirical log-behavior checks over term tables.
//!
//! All comparisons are carried out on cross-multiplied integers; there is no
//! division, radical or float anywhere on the decision path.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use thiserror::Error;

use crate::poly::ExactRational;
use crate::recurrence::{factorial, rational, RecurrenceError, TermTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogBehaviorError {
    #[error(transparent)]
    Table(#[from] RecurrenceError),
    #[error("empty or inverted window [{0}, {1}]")]
    InvalidWindow(i64, i64),
    #[error("index ranges differ: [{0}, {1}] vs [{2}, {3}]")]
    RangeMismatch(i64, i64, i64, i64),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    LogConcave,
    LogConvex,
    LogBalanced,
    NthRootDecreasing,
}

impl Property {
    pub fn cli_name(self) -> &'static str {
        match self {
            Property::LogConcave => "log-concave",
            Property::LogConvex => "log-convex",
            Property::LogBalanced => "log-balanced",
            Property::NthRootDecreasing => "nth-root",
        }
    }

    pub fn from_cli_name(name: &str) -> Option<Self> {
        [
            Property::LogConcave,
            Property::LogConvex,
            Property::LogBalanced,
            Property::NthRootDecreasing,
        ]
        .into_iter()
        .find(|p| p.cli_name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BehaviorStatus {
    Holds,
    Violated,
}

/// Which defining inequality a witness breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    /// `S_k^2 >= S_{k+1} S_{k-1}`
    Concave,
    /// `S_k^2 <= S_{k+1} S_{k-1}`
    Convex,
    /// `S_k^2 (k+1) >= S_{k+1} S_{k-1} k`, i.e. `S_k/k!` log-concave
    FactorialScaledConcave,
    /// `z_n^(n+1) > z_{n+1}^n`
    NthRoot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub index: i64,
    pub clause: Clause,
    /// `(S_{k-1}, S_k, S_{k+1})` for the log clauses, `(z_n, z_{n+1})` for
    /// the n-th root clause.
    pub terms: Vec<ExactRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BehaviorVerdict {
    pub property: Property,
    pub lo: i64,
    pub hi: i64,
    pub status: BehaviorStatus,
    pub first_violation: Option<Violation>,
    /// Every comparison in the window was strict.
    pub all_strict: bool,
}

impl BehaviorVerdict {
    pub fn holds(&self) -> bool {
        self.status == BehaviorStatus::Holds
    }
}

/// Compares `lhs_factor * prod(lhs)` with `rhs_factor * prod(rhs)` exactly.
/// Denominators are positive, so clearing them preserves the order.
fn cmp_products(
    lhs: &[&ExactRational],
    lhs_factor: &BigInt,
    rhs: &[&ExactRational],
    rhs_factor: &BigInt,
) -> Ordering {
    let mut l = lhs_factor.clone();
    let mut r = rhs_factor.clone();
    for t in lhs {
        l *= t.numer();
        r *= t.denom();
    }
    for t in rhs {
        r *= t.numer();
        l *= t.denom();
    }
    l.cmp(&r)
}

fn check_window(table: &TermTable, lo: i64, hi: i64) -> Result<(), LogBehaviorError> {
    if lo > hi {
        return Err(LogBehaviorError::InvalidWindow(lo, hi));
    }
    table.get(lo - 1)?;
    table.get(hi + 1)?;
    Ok(())
}

/// `S_k^2` against `S_{k+1} S_{k-1}`, optionally with the factorial scaling
/// weights `(k+1)` and `k`.
fn square_vs_neighbors(table: &TermTable, k: i64, scaled: bool) -> Ordering {
    let (prev, cur, next) = triple(table, k);
    let (lf, rf) = if scaled {
        (BigInt::from(k + 1), BigInt::from(k))
    } else {
        (BigInt::one(), BigInt::one())
    };
    cmp_products(&[cur, cur], &lf, &[next, prev], &rf)
}

fn triple(table: &TermTable, k: i64) -> (&ExactRational, &ExactRational, &ExactRational) {
    (
        table.get(k - 1).expect("window checked"),
        table.get(k).expect("window checked"),
        table.get(k + 1).expect("window checked"),
    )
}

fn witness_triple(table: &TermTable, k: i64) -> Vec<ExactRational> {
    let (a, b, c) = triple(table, k);
    vec![a.clone(), b.clone(), c.clone()]
}

/// Per-index orderings, evaluated in parallel and returned in index order.
fn orderings(lo: i64, hi: i64, f: impl Fn(i64) -> Ordering + Sync + Send) -> Vec<Ordering> {
    (lo..=hi).into_par_iter().map(f).collect()
}

fn first_bad(lo: i64, ords: &[Ordering], bad: Ordering) -> Option<i64> {
    ords.iter().position(|&o| o == bad).map(|i| lo + i as i64)
}

fn verdict(
    property: Property,
    lo: i64,
    hi: i64,
    first_violation: Option<Violation>,
    all_strict: bool,
) -> BehaviorVerdict {
    BehaviorVerdict {
        property,
        lo,
        hi,
        status: if first_violation.is_some() {
            BehaviorStatus::Violated
        } else {
            BehaviorStatus::Holds
        },
        first_violation,
        all_strict,
    }
}

fn log_check(
    table: &TermTable,
    lo: i64,
    hi: i64,
    property: Property,
    clause: Clause,
    bad: Ordering,
) -> Result<BehaviorVerdict, LogBehaviorError> {
    check_window(table, lo, hi)?;
    let ords = orderings(lo, hi, |k| square_vs_neighbors(table, k, false));
    let all_strict = ords.iter().all(|&o| o != Ordering::Equal);
    let violation = first_bad(lo, &ords, bad).map(|k| Violation {
        index: k,
        clause,
        terms: witness_triple(table, k),
    });
    Ok(verdict(property, lo, hi, violation, all_strict))
}

/// `S_k^2 >= S_{k+1} S_{k-1}` for every `k` in `[lo, hi]`.
pub fn check_log_concave(table: &TermTable, lo: i64, hi: i64) -> Result<BehaviorVerdict, LogBehaviorError> {
    log_check(table, lo, hi, Property::LogConcave, Clause::Concave, Ordering::Less)
}

/// `S_k^2 <= S_{k+1} S_{k-1}` for every `k` in `[lo, hi]`.
pub fn check_log_convex(table: &TermTable, lo: i64, hi: i64) -> Result<BehaviorVerdict, LogBehaviorError> {
    log_check(table, lo, hi, Property::LogConvex, Clause::Convex, Ordering::Greater)
}

/// Log-convex, with `{S_k / k!}` log-concave, on `[lo, hi]`. Requires `lo >= 1`.
pub fn check_log_balanced(table: &TermTable, lo: i64, hi: i64) -> Result<BehaviorVerdict, LogBehaviorError> {
    check_window(table, lo, hi)?;
    if lo < 1 {
        return Err(LogBehaviorError::HypothesisViolated(
            "factorial scaling needs k >= 1".into(),
        ));
    }
    let plain = orderings(lo, hi, |k| square_vs_neighbors(table, k, false));
    let scaled = orderings(lo, hi, |k| square_vs_neighbors(table, k, true));
    let convex_bad = first_bad(lo, &plain, Ordering::Greater);
    let scaled_bad = first_bad(lo, &scaled, Ordering::Less);
    let violation = match (convex_bad, scaled_bad) {
        (Some(k), Some(j)) if j < k => Some((j, Clause::FactorialScaledConcave)),
        (Some(k), _) => Some((k, Clause::Convex)),
        (None, Some(j)) => Some((j, Clause::FactorialScaledConcave)),
        (None, None) => None,
    }
    .map(|(k, clause)| Violation {
        index: k,
        clause,
        terms: witness_triple(table, k),
    });
    let all_strict = plain
        .iter()
        .chain(&scaled)
        .all(|&o| o != Ordering::Equal);
    Ok(verdict(Property::LogBalanced, lo, hi, violation, all_strict))
}

/// Term-wise product of two tables over the same index range.
pub fn hadamard_product(a: &TermTable, b: &TermTable) -> Result<TermTable, LogBehaviorError> {
    if a.first_index() != b.first_index() || a.last_index() != b.last_index() {
        return Err(LogBehaviorError::RangeMismatch(
            a.first_index(),
            a.last_index(),
            b.first_index(),
            b.last_index(),
        ));
    }
    let terms = a
        .terms()
        .iter()
        .zip(b.terms())
        .map(|(x, y)| x * y)
        .collect();
    Ok(TermTable::from_terms(
        format!("{}*{}", a.name(), b.name()),
        a.first_index(),
        terms,
    )?)
}

/// `z_n^(n+1) > z_{n+1}^n` for `n` in `[lo, hi]`, with `z_n = table[n + offset]`.
///
/// This is the radical-free form of `z_n^(1/n) > z_{n+1}^(1/(n+1))`. The terms
/// must be integers with `z_0 > 1`.
pub fn check_nth_root_decreasing(
    table: &TermTable,
    lo: i64,
    hi: i64,
    offset: i64,
) -> Result<BehaviorVerdict, LogBehaviorError> {
    if lo > hi {
        return Err(LogBehaviorError::InvalidWindow(lo, hi));
    }
    if lo < 1 {
        return Err(LogBehaviorError::HypothesisViolated(
            "n-th roots are indexed from n = 1".into(),
        ));
    }
    let z = |n: i64| table.get(n + offset);
    let z0 = z(0)?;
    z(hi + 1)?;
    if !z0.is_integer() || *z0 <= rational(1) {
        return Err(LogBehaviorError::HypothesisViolated(format!(
            "z_0 = {z0} must be an integer greater than 1"
        )));
    }
    if let Some(k) = (lo..=hi + 1).find(|&n| !z(n).expect("range checked").is_integer()) {
        return Err(LogBehaviorError::HypothesisViolated(format!(
            "z_{k} is not an integer"
        )));
    }
    let ords = orderings(lo, hi, |n| {
        let cur = z(n).expect("range checked").numer();
        let next = z(n + 1).expect("range checked").numer();
        let lhs = num_traits::pow(cur.clone(), (n + 1) as usize);
        let rhs = num_traits::pow(next.clone(), n as usize);
        lhs.cmp(&rhs)
    });
    let violation = ords
        .iter()
        .position(|&o| o != Ordering::Greater)
        .map(|i| {
            let n = lo + i as i64;
            Violation {
                index: n,
                clause: Clause::NthRoot,
                terms: vec![z(n).unwrap().clone(), z(n + 1).unwrap().clone()],
            }
        });
    let all_strict = violation.is_none();
    Ok(verdict(Property::NthRootDecreasing, lo, hi, violation, all_strict))
}

/// `{n}` on `[first, last]`; requires positive indices.
pub fn index_sequence(first: i64, last: i64) -> Result<TermTable, RecurrenceError> {
    TermTable::tabulate("n", first, last, rational)
}

/// `{1/(n-1)!}` on `[first, last]`, `first >= 1`.
pub fn inverse_shifted_factorial(first: i64, last: i64) -> Result<TermTable, RecurrenceError> {
    if first < 1 {
        return Err(RecurrenceError::IndexOutOfRange {
            index: first,
            lo: 1,
            hi: last,
        });
    }
    let mut running = factorial((first - 1) as u64);
    let terms = (first..=last)
        .map(|n| {
            if n > first {
                running *= n - 1;
            }
            ExactRational::new(BigInt::one(), running.clone())
        })
        .collect();
    TermTable::from_terms("1/(n-1)!", first, terms)
}

/// Constant sequence on `[first, last]`.
pub fn constant_sequence(value: ExactRational, first: i64, last: i64) -> Result<TermTable, RecurrenceError> {
    TermTable::tabulate(value.to_string(), first, last, |_| value.clone())
}

/// True iff every term is a positive integer.
pub fn is_positive_integral(table: &TermTable) -> bool {
    table.terms().iter().all(|t| t.is_integer() && t.is_positive())
}
