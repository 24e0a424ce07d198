//! Homogeneous three-term recurrences `a(n)S(n+1) + b(n)S(n) + c(n)S(n-1) = 0`
//! and exact generation of their terms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{ExactRational, IntPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("a(n) does not divide the next numerator exactly at n = {0}")]
    NonExactDivision(i64),
    #[error("a(n) vanishes at n = {0}")]
    ZeroLeadingCoefficient(i64),
    #[error("term S({0}) is not strictly positive")]
    NonPositiveTerm(i64),
    #[error("ratio input must be strictly positive")]
    NonPositiveRatio,
    #[error("index {index} outside the table range [{lo}, {hi}]")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },
    #[error("term count must be at least 1, got {0}")]
    InvalidTermCount(i64),
    #[error("defining relation fails at n = {0}")]
    RelationViolated(i64),
    #[error("integer mode requires integral initial terms")]
    NonIntegralInitial,
    #[error("initial terms must be strictly positive")]
    NonPositiveInitial,
    #[error("a(n) is identically zero")]
    ZeroLeadingPolynomial,
}

/// Arithmetic domain for generated terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueMode {
    /// Every division must be exact; terms are integers.
    Integer,
    /// Terms are reduced fractions.
    Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeTermRecurrence {
    pub name: String,
    pub a: IntPolynomial,
    pub b: IntPolynomial,
    pub c: IntPolynomial,
    pub initial: [ExactRational; 2],
    pub mode: ValueMode,
}

impl ThreeTermRecurrence {
    /// Validated constructor: `a` nonzero, initial terms positive (and integral
    /// in integer mode).
    pub fn new(
        name: impl Into<String>,
        a: IntPolynomial,
        b: IntPolynomial,
        c: IntPolynomial,
        initial: [ExactRational; 2],
        mode: ValueMode,
    ) -> Result<Self, RecurrenceError> {
        if a.is_zero() {
            return Err(RecurrenceError::ZeroLeadingPolynomial);
        }
        if initial.iter().any(|t| !t.is_positive()) {
            return Err(RecurrenceError::NonPositiveInitial);
        }
        if mode == ValueMode::Integer && initial.iter().any(|t| !t.is_integer()) {
            return Err(RecurrenceError::NonIntegralInitial);
        }
        Ok(ThreeTermRecurrence {
            name: name.into(),
            a,
            b,
            c,
            initial,
            mode,
        })
    }

    pub fn with_integer_initial(
        name: impl Into<String>,
        a: IntPolynomial,
        b: IntPolynomial,
        c: IntPolynomial,
        s0: i64,
        s1: i64,
    ) -> Result<Self, RecurrenceError> {
        let initial = [s0, s1].map(|v| ExactRational::from_integer(BigInt::from(v)));
        Self::new(name, a, b, c, initial, ValueMode::Integer)
    }

    /// Coefficients `(a(n), b(n), c(n))` at an integer index.
    pub fn coefficients_at(&self, n: i64) -> (BigInt, BigInt, BigInt) {
        (self.a.eval_i64(n), self.b.eval_i64(n), self.c.eval_i64(n))
    }

    /// Streams `S_0, S_1, ...` without retaining the table.
    pub fn terms(&self) -> Terms<'_> {
        Terms {
            rec: self,
            prev: None,
            cur: None,
            next_index: 0,
            failed: false,
        }
    }

    fn step(&self, n: i64, cur: &ExactRational, prev: &ExactRational) -> Result<ExactRational, RecurrenceError> {
        let (a, b, c) = self.coefficients_at(n);
        if a.is_zero() {
            return Err(RecurrenceError::ZeroLeadingCoefficient(n));
        }
        let next = match self.mode {
            ValueMode::Integer => {
                let num = -(&b * cur.numer()) - &c * prev.numer();
                let (q, r) = num.div_rem(&a);
                if !r.is_zero() {
                    return Err(RecurrenceError::NonExactDivision(n));
                }
                ExactRational::from_integer(q)
            }
            ValueMode::Rational => {
                let bn = ExactRational::from_integer(b);
                let cn = ExactRational::from_integer(c);
                (-(bn * cur) - cn * prev) / ExactRational::from_integer(a)
            }
        };
        if !next.is_positive() {
            return Err(RecurrenceError::NonPositiveTerm(n + 1));
        }
        Ok(next)
    }
}

/// Streaming term generator; keeps only the two live predecessors.
pub struct Terms<'a> {
    rec: &'a ThreeTermRecurrence,
    prev: Option<ExactRational>,
    cur: Option<ExactRational>,
    next_index: i64,
    failed: bool,
}

impl Iterator for Terms<'_> {
    type Item = Result<ExactRational, RecurrenceError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let idx = self.next_index;
        let out = match idx {
            0 | 1 => Ok(self.rec.initial[idx as usize].clone()),
            _ => {
                let cur = self.cur.as_ref().expect("two predecessors");
                let prev = self.prev.as_ref().expect("two predecessors");
                self.rec.step(idx - 1, cur, prev)
            }
        };
        match &out {
            Ok(t) => {
                self.prev = self.cur.take();
                self.cur = Some(t.clone());
                self.next_index += 1;
            }
            Err(_) => self.failed = true,
        }
        Some(out)
    }
}

/// Exact terms `S_first, ..., S_last` of a sequence, all strictly positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermTable {
    name: String,
    first: i64,
    terms: Vec<ExactRational>,
}

impl TermTable {
    pub fn from_terms(
        name: impl Into<String>,
        first: i64,
        terms: Vec<ExactRational>,
    ) -> Result<Self, RecurrenceError> {
        if let Some(pos) = terms.iter().position(|t| !t.is_positive()) {
            return Err(RecurrenceError::NonPositiveTerm(first + pos as i64));
        }
        Ok(TermTable {
            name: name.into(),
            first,
            terms,
        })
    }

    /// Tabulates `f(k)` for `k` in `[first, last]`.
    pub fn tabulate(
        name: impl Into<String>,
        first: i64,
        last: i64,
        f: impl Fn(i64) -> ExactRational,
    ) -> Result<Self, RecurrenceError> {
        Self::from_terms(name, first, (first..=last).map(f).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn first_index(&self) -> i64 {
        self.first
    }

    pub fn last_index(&self) -> i64 {
        self.first + self.terms.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[ExactRational] {
        &self.terms
    }

    pub fn covers(&self, lo: i64, hi: i64) -> bool {
        lo >= self.first && hi <= self.last_index()
    }

    pub fn get(&self, k: i64) -> Result<&ExactRational, RecurrenceError> {
        if k < self.first || k > self.last_index() {
            return Err(self.out_of_range(k));
        }
        Ok(&self.terms[(k - self.first) as usize])
    }

    pub(crate) fn out_of_range(&self, index: i64) -> RecurrenceError {
        RecurrenceError::IndexOutOfRange {
            index,
            lo: self.first,
            hi: self.last_index(),
        }
    }

    /// Sub-table restricted to `[lo, hi]`.
    pub fn window(&self, lo: i64, hi: i64) -> Result<TermTable, RecurrenceError> {
        self.get(lo)?;
        self.get(hi)?;
        let start = (lo - self.first) as usize;
        let end = (hi - self.first) as usize;
        Ok(TermTable {
            name: self.name.clone(),
            first: lo,
            terms: self.terms[start..=end].to_vec(),
        })
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|t| t.is_integer())
    }
}

/// Generates `S_0..S_N` exactly, then re-checks the defining relation at
/// every interior index.
pub fn generate_terms(rec: &ThreeTermRecurrence, n: i64) -> Result<TermTable, RecurrenceError> {
    if n < 1 {
        return Err(RecurrenceError::InvalidTermCount(n));
    }
    let terms = rec
        .terms()
        .take(n as usize + 1)
        .collect::<Result<Vec<_>, _>>()?;
    let table = TermTable::from_terms(rec.name.clone(), 0, terms)?;
    check_relation(rec, &table)?;
    Ok(table)
}

/// Verifies `a(n)S(n+1) + b(n)S(n) + c(n)S(n-1) = 0` for every triple in the
/// table, by cross-multiplication over a common denominator.
pub fn check_relation(rec: &ThreeTermRecurrence, table: &TermTable) -> Result<(), RecurrenceError> {
    for n in table.first_index() + 1..table.last_index() {
        let (a, b, c) = rec.coefficients_at(n);
        let (next, cur, prev) = (table.get(n + 1)?, table.get(n)?, table.get(n - 1)?);
        let sum = if next.is_integer() && cur.is_integer() && prev.is_integer() {
            a * next.numer() + b * cur.numer() + c * prev.numer()
        } else {
            let r = ExactRational::from_integer(a) * next
                + ExactRational::from_integer(b) * cur
                + ExactRational::from_integer(c) * prev;
            r.numer().clone()
        };
        if !sum.is_zero() {
            return Err(RecurrenceError::RelationViolated(n));
        }
    }
    Ok(())
}

/// `S_n / S_{n-1}`.
pub fn ratio(table: &TermTable, n: i64) -> Result<ExactRational, RecurrenceError> {
    if n <= table.first_index() {
        return Err(table.out_of_range(n - 1));
    }
    Ok(table.get(n)? / table.get(n - 1)?)
}

/// Advances a consecutive-term ratio: `r(n+1) = (-b(n) - c(n)/r(n)) / a(n)`.
pub fn ratio_step(
    rec: &ThreeTermRecurrence,
    n: i64,
    r: &ExactRational,
) -> Result<ExactRational, RecurrenceError> {
    if !r.is_positive() {
        return Err(RecurrenceError::NonPositiveRatio);
    }
    let (a, b, c) = rec.coefficients_at(n);
    if a.is_zero() {
        return Err(RecurrenceError::ZeroLeadingCoefficient(n));
    }
    let c_over_r = ExactRational::from_integer(c) / r;
    Ok((ExactRational::from_integer(-b) - c_over_r) / ExactRational::from_integer(a))
}

pub(crate) fn rational(v: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(v))
}

pub(crate) fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}
