//! Built-in sequences and certificates.

use num_bigint::BigInt;

use crate::certificate::{ConcavityCertificate, RationalFunction};
use crate::poly::IntPolynomial;
use crate::recurrence::ThreeTermRecurrence;

/// Catalog entry metadata. Documentation only; nothing here is computed.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub title: &'static str,
    pub recurrence: &'static str,
    pub context: &'static str,
    /// Default lower index for empirical checks run from the CLI.
    pub check_from: i64,
}

pub const ENTRIES: [CatalogEntry; 2] = [
    CatalogEntry {
        name: "flf",
        title: "Fennessey-Larcombe-French sequence V(n)",
        recurrence: "n(n+1)^2 V(n+1) = 8n(3n^2+5n+1) V(n) - 128(n-1)(n+1)^2 V(n-1), V(0)=1, V(1)=8",
        context: "coefficients of a series expansion of the complete elliptic integral of the second kind",
        check_from: 2,
    },
    CatalogEntry {
        name: "clf",
        title: "Catalan-Larcombe-French sequence P(n)",
        recurrence: "(n+1)^2 P(n+1) = 8(3n^2+3n+1) P(n) - 128n^2 P(n-1), P(0)=1, P(1)=8",
        context: "coefficients of a series expansion of the complete elliptic integral of the first kind",
        check_from: 1,
    },
];

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

pub fn builtin(name: &str) -> Option<ThreeTermRecurrence> {
    match name {
        "flf" => Some(flf()),
        "clf" => Some(clf()),
        _ => None,
    }
}

pub fn builtin_certificate(name: &str) -> Option<ConcavityCertificate> {
    (name == "flf").then(flf_certificate)
}

fn n() -> IntPolynomial {
    IntPolynomial::identity()
}

fn lin(k: i64) -> IntPolynomial {
    IntPolynomial::linear(k)
}

fn scaled(p: IntPolynomial, k: i64) -> IntPolynomial {
    p.scale(&BigInt::from(k))
}

/// FLF in homogeneous form: a = n(n+1)^2, b = -8n(3n^2+5n+1),
/// c = 128(n-1)(n+1)^2.
pub fn flf() -> ThreeTermRecurrence {
    let sq = lin(1).pow(2);
    let a = &n() * &sq;
    let b = scaled(&n() * &IntPolynomial::from_i64s(&[1, 5, 3]), -8);
    let c = scaled(&lin(-1) * &sq, 128);
    ThreeTermRecurrence::with_integer_initial("flf", a, b, c, 1, 8).expect("valid builtin")
}

/// CLF in homogeneous form: a = (n+1)^2, b = -8(3n^2+3n+1), c = 128n^2.
pub fn clf() -> ThreeTermRecurrence {
    let a = lin(1).pow(2);
    let b = scaled(IntPolynomial::from_i64s(&[1, 3, 3]), -8);
    let c = scaled(n().pow(2), 128);
    ThreeTermRecurrence::with_integer_initial("clf", a, b, c, 1, 8).expect("valid builtin")
}

/// h(n) = 16(n^3 - n^2 + 1) / (n^3 - n^2) with n0 = 3, anchored at 3, and
/// direct checks at 2 and 3.
pub fn flf_certificate() -> ConcavityCertificate {
    ConcavityCertificate {
        sequence: "flf".into(),
        n0: 3,
        h: RationalFunction::new(
            IntPolynomial::from_i64s(&[16, 0, -16, 16]),
            IntPolynomial::from_i64s(&[0, 0, -1, 1]),
        )
        .expect("nonzero denominator"),
        base_index: 3,
        explicit_checks: vec![2, 3],
    }
}
