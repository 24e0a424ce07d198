//! Univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Coefficients are stored in ascending degree order and kept canonical (no
//! trailing zeros, the zero polynomial is the empty list), so structural
//! equality coincides with polynomial equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision reduced fraction with a positive denominator.
pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("positivity is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("invalid integer coefficient {0:?}")]
    InvalidCoefficient(String),
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The polynomial `n`.
    pub fn identity() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// The linear factor `n + k`.
    pub fn linear(k: i64) -> Self {
        Self::from_i64s(&[k, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval_int(&BigInt::from(x))
    }

    /// Horner evaluation at a rational point, done on a common denominator.
    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        // p(u/v) = (sum c_k u^k v^(d-k)) / v^d
        let (u, v) = (x.numer(), x.denom());
        let Some(d) = self.degree() else {
            return ExactRational::zero();
        };
        let mut acc = BigInt::zero();
        let mut vpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c * &vpow;
            vpow *= v;
        }
        // vpow = v^(d+1) after the loop; the numerator carries v^d.
        let den = num_traits::pow(v.clone(), d);
        ExactRational::new(acc, den)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(1), |acc, _| &acc * self)
    }

    /// Returns `q` with `q(n) = self(n + k)`.
    pub fn shift_compose(&self, k: i64) -> Self {
        // Horner in the shifted variable: q = (...(c_d (n+k) + c_{d-1})(n+k) ...)
        let step = Self::linear(k);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &step) + &Self::constant(c.clone())
        })
    }

    /// Exact division; `None` when `divisor` does not divide `self` over Z[n].
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let dlead = divisor.leading()?;
        let dd = divisor.coeffs.len() - 1;
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.len() < divisor.coeffs.len() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            let (q, r) = top.div_rem(dlead);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * dc;
                }
            }
            quot[i] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(quot))
    }

    /// Ceiling of the Cauchy root bound `1 + max|c_i| / |c_lead|`; every real
    /// root lies strictly inside `(-B, B)` for the returned `B`.
    pub fn cauchy_bound(&self) -> Option<BigInt> {
        let lead = self.leading()?.abs();
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_default();
        Some(BigInt::one() + max.div_ceil(&lead))
    }

    /// Decimal-string coefficient list, ascending.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self, PolyError> {
        items
            .iter()
            .map(|s| {
                let s = s.as_ref();
                s.trim()
                    .parse::<BigInt>()
                    .map_err(|_| PolyError::InvalidCoefficient(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }
}

/// True iff the canonical coefficient lists are identical.
pub fn poly_equal(p: &IntPolynomial, q: &IntPolynomial) -> bool {
    p == q
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            match (show_mag, k) {
                (_, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}n")?,
                (false, 1) => f.write_str("n")?,
                (true, _) => write!(f, "{mag}n^{k}")?,
                (false, _) => write!(f, "n^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o += c;
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Binary polynomial operations, as named in the command vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(p: &IntPolynomial, q: &IntPolynomial, op: PolyOp) -> IntPolynomial {
    match op {
        PolyOp::Add => p + q,
        PolyOp::Sub => p - q,
        PolyOp::Mul => p * q,
    }
}

pub fn poly_eval(p: &IntPolynomial, x: &ExactRational) -> ExactRational {
    p.eval(x)
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        IntPolynomial::from_strings(&raw).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PositivityStatus {
    PositiveAll,
    Violation,
}

/// Outcome of a sign decision over the integers `n > n0`.
///
/// For the strict decision a witness satisfies `p(witness) <= 0`; for the
/// non-strict one, `p(witness) < 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityVerdict {
    pub status: PositivityStatus,
    pub witness: Option<BigInt>,
    /// Largest integer evaluated explicitly.
    pub scan_bound: BigInt,
}

impl PositivityVerdict {
    pub fn holds(&self) -> bool {
        self.status == PositivityStatus::PositiveAll
    }
}

fn decide_sign_beyond(
    p: &IntPolynomial,
    n0: &BigInt,
    strict: bool,
) -> Result<PositivityVerdict, PolyError> {
    let bound = p.cauchy_bound().ok_or(PolyError::ZeroPolynomial)?;
    let fails = |v: &BigInt| {
        if strict {
            !v.is_positive()
        } else {
            v.is_negative()
        }
    };
    // Every real root has |x| < bound, so for n >= bound the sign of p(n) is
    // the sign of the leading coefficient. Scanning (n0, bound] is therefore
    // exhaustive, and with a negative leading coefficient it always ends on a
    // witness: p(max(n0 + 1, bound)) < 0.
    let lead_positive = p.leading().is_some_and(Signed::is_positive);
    let last = if lead_positive {
        bound.clone()
    } else {
        bound.clone().max(n0 + 1)
    };
    let mut n = n0 + 1;
    let mut scanned = n0.clone();
    while n <= last {
        let v = p.eval_int(&n);
        scanned = n.clone();
        if fails(&v) {
            return Ok(PositivityVerdict {
                status: PositivityStatus::Violation,
                witness: Some(n),
                scan_bound: scanned,
            });
        }
        n += 1;
    }
    debug_assert!(lead_positive);
    Ok(PositivityVerdict {
        status: PositivityStatus::PositiveAll,
        witness: None,
        scan_bound: scanned,
    })
}

/// Decides `p(n) > 0` for every integer `n > n0`, soundly and completely.
pub fn poly_positive_beyond(p: &IntPolynomial, n0: i64) -> Result<PositivityVerdict, PolyError> {
    decide_sign_beyond(p, &BigInt::from(n0), true)
}

/// Decides `p(n) >= 0` for every integer `n > n0`. The zero polynomial
/// trivially qualifies.
pub fn poly_nonnegative_beyond(p: &IntPolynomial, n0: i64) -> PositivityVerdict {
    if p.is_zero() {
        return PositivityVerdict {
            status: PositivityStatus::PositiveAll,
            witness: None,
            scan_bound: BigInt::from(n0),
        };
    }
    decide_sign_beyond(p, &BigInt::from(n0), false).expect("nonzero polynomial")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn int(v: i64) -> ExactRational {
        ExactRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn eval_examples() {
        assert_eq!(poly_eval(&p(&[0, 1, 2, 1]), &int(3)), int(48));
        assert_eq!(poly_eval(&IntPolynomial::zero(), &int(7)), int(0));
        assert_eq!(poly_eval(&p(&[16, 0, -16, 16]), &int(3)), int(304));
    }

    #[test]
    fn eval_at_fraction() {
        // 2n^2 - 3 at 1/2 = -5/2
        let half = ExactRational::new(1.into(), 2.into());
        assert_eq!(
            p(&[-3, 0, 2]).eval(&half),
            ExactRational::new((-5).into(), 2.into())
        );
        // constant polynomial ignores the point
        assert_eq!(p(&[7]).eval(&half), int(7));
    }

    #[test]
    fn canonical_form_strips_trailing_zeros() {
        let q = p(&[1, 2, 0, 0]);
        assert_eq!(q.coeffs().len(), 2);
        assert_eq!(q.degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(IntPolynomial::zero().degree(), None);
    }

    #[test]
    fn arith_examples() {
        assert_eq!(p(&[0, 0, 1]).shift_compose(1), p(&[1, 2, 1]));
        let c_over_128 = poly_arith(&p(&[-1, 1]), &p(&[1, 1]).pow(2), PolyOp::Mul);
        assert_eq!(c_over_128, p(&[-1, -1, 1, 1]));
        let q = p(&[3, -4, 5]);
        assert!(poly_arith(&q, &q, PolyOp::Sub).is_zero());
        assert_eq!(poly_arith(&q, &p(&[1]), PolyOp::Add), p(&[4, -4, 5]));
    }

    #[test]
    fn equality_examples() {
        let a = &IntPolynomial::identity() * &IntPolynomial::linear(1).pow(2);
        let b = IntPolynomial::from_i64s(&[0, -8, -40, -24]);
        let c = (&IntPolynomial::linear(-1) * &IntPolynomial::linear(1).pow(2))
            .scale(&BigInt::from(128));
        let disc = &(&b * &b) - &(&a * &c).scale(&BigInt::from(4));
        let expected = p(&[0, 8, 25, 26, 15, 6, 1]).scale(&BigInt::from(64));
        assert!(poly_equal(&disc, &expected));
        let q = p(&[5, -1, 0, 3]);
        assert!(poly_equal(&q, &q.shift_compose(1).shift_compose(-1)));
        assert!(!poly_equal(&a, &c));
    }

    #[test]
    fn div_exact_behaviour() {
        let prod = &p(&[2, 1]) * &p(&[-3, 0, 4]);
        assert_eq!(prod.div_exact(&p(&[2, 1])), Some(p(&[-3, 0, 4])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])), None);
        // not divisible over the integers
        assert_eq!(p(&[1, 1]).div_exact(&p(&[0, 2])), None);
        assert_eq!(p(&[1]).div_exact(&IntPolynomial::zero()), None);
    }

    #[test]
    fn positivity_examples() {
        let d = p(&[0, 8, 25, 26, 15, 6, 1]);
        assert!(poly_positive_beyond(&d, 3).unwrap().holds());

        let v = poly_positive_beyond(&p(&[-10, 0, 1]), 2).unwrap();
        assert_eq!(v.status, PositivityStatus::Violation);
        assert_eq!(v.witness, Some(BigInt::from(3)));

        assert!(poly_positive_beyond(&p(&[-10, 0, 1]), 3).unwrap().holds());
        assert_eq!(
            poly_positive_beyond(&IntPolynomial::zero(), 0),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn positivity_negative_leading_always_finds_witness() {
        // -n^2 + 100n: positive on (0, 100), negative afterwards
        let q = p(&[0, 100, -1]);
        let v = poly_positive_beyond(&q, 5).unwrap();
        assert_eq!(v.witness, Some(BigInt::from(100)));
        // starting beyond the bound still produces a witness
        let v = poly_positive_beyond(&q, 1000).unwrap();
        assert_eq!(v.witness, Some(BigInt::from(1001)));
        // negative constant
        let v = poly_positive_beyond(&p(&[-1]), -4).unwrap();
        assert_eq!(v.witness, Some(BigInt::from(-3)));
        // positive constant
        assert!(poly_positive_beyond(&p(&[2]), -4).unwrap().holds());
    }

    #[test]
    fn positivity_handles_negative_n0() {
        // (n - 1)^2 + 1 > 0 everywhere; n^3 has a zero at 0
        assert!(poly_positive_beyond(&p(&[2, -2, 1]), -20).unwrap().holds());
        let v = poly_positive_beyond(&p(&[0, 0, 0, 1]), -5).unwrap();
        assert_eq!(v.witness, Some(BigInt::from(-4)));
    }

    #[test]
    fn nonnegative_variant() {
        // (n - 3)^2 touches zero at 3
        let sq = p(&[9, -6, 1]);
        assert!(!poly_positive_beyond(&sq, 0).unwrap().holds());
        assert!(poly_nonnegative_beyond(&sq, 0).holds());
        assert!(poly_nonnegative_beyond(&IntPolynomial::zero(), 0).holds());
        let v = poly_nonnegative_beyond(&p(&[-10, 0, 1]), 0);
        assert_eq!(v.witness, Some(BigInt::from(1)));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[0, -8, -40, -24]).to_string(), "-24n^3 - 40n^2 - 8n");
        assert_eq!(p(&[1, 1]).to_string(), "n + 1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn serde_uses_decimal_strings() {
        let a = p(&[0, 1, 2, 1]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"["0","1","2","1"]"#);
        let back: IntPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<IntPolynomial>(r#"["1","x"]"#).is_err());
        let padded: IntPolynomial = serde_json::from_str(r#"["1","0"]"#).unwrap();
        assert_eq!(padded, p(&[1]));
    }
}
