//! Exact log-behavior analysis for positive sequences defined by three-term
//! recurrences with polynomial coefficients, and verification of symbolic
//! log-concavity certificates.
//!
//! Everything on the decision path is exact: big integers, reduced rationals
//! and polynomial sign decisions. Floats never enter a verdict.

pub mod analysis;
pub mod catalog;
pub mod certificate;
pub mod criterion;
pub mod definition;
pub mod log_behavior;
pub mod poly;
pub mod recurrence;

pub use certificate::{certify_log_concavity, CertificateVerdict, ConcavityCertificate, RationalFunction};
pub use criterion::{discriminant, verify_criterion_range, CriterionOutcome};
pub use log_behavior::{check_log_balanced, check_log_concave, check_log_convex, check_nth_root_decreasing, hadamard_product};
pub use poly::{poly_positive_beyond, ExactRational, IntPolynomial};
pub use recurrence::{generate_terms, ratio, ratio_step, TermTable, ThreeTermRecurrence, ValueMode};
