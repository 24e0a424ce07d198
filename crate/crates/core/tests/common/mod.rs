//! Strategies and independent oracles shared by the integration targets.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, RngSeed, TestRng, TestRunner};

use seqcert::criterion::RootComparison;
use seqcert::{ExactRational, IntPolynomial, TermTable, ThreeTermRecurrence, ValueMode};

/// FLF terms 0..=7 from an independent evaluation of the defining recurrence.
pub const FLF_HEAD: [u64; 8] = [1, 8, 144, 2432, 40000, 649728, 10486784, 168681472];
pub const FLF_20: &str = "768605487250493298180096";
pub const FLF_1000_DIGITS: usize = 1204;
pub const FLF_1000_PREFIX: &str = "83919436987565877150";
pub const FLF_1000_MOD_P: u64 = 760611216;
pub const CLF_20: &str = "38539148242634697342976";
pub const CLF_1000_DIGITS: usize = 1201;
pub const CLF_1000_MOD_P: u64 = 99852390;
pub const P: u64 = 1_000_000_007;

pub fn seeded_config(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        rng_algorithm: RngAlgorithm::ChaCha,
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn seeded_runner(cases: u32, seed: u64) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    TestRunner::new_with_rng(seeded_config(cases, seed), TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `P_n = sum_k C(2k,k)^2 C(2n-2k,n-k)^2 / C(n,k)`; each summand is exact
/// only after summation, so the sum is formed over the common denominator.
pub fn clf_closed_form(n: u64) -> BigInt {
    let mut total = ExactRational::zero();
    for k in 0..=n {
        let num = binomial(2 * k, k).pow(2) * binomial(2 * (n - k), n - k).pow(2);
        total += ExactRational::new(num, binomial(n, k));
    }
    assert!(total.is_integer());
    total.to_integer()
}

pub fn int(table: &TermTable, k: i64) -> BigInt {
    let t = table.get(k).unwrap();
    assert!(t.is_integer());
    t.to_integer()
}

/// Side of the larger root of `a x^2 + b x + c` on which `r` lies, from a
/// 128-bit fixed-point radical. `None` when the approximation cannot decide
/// and the discriminant is not a perfect square.
pub fn radical_oracle(a: &BigInt, b: &BigInt, c: &BigInt, r: &ExactRational) -> Option<RootComparison> {
    let d = b * b - BigInt::from(4) * a * c;
    if d.is_negative() {
        return Some(RootComparison::NoRealRoot);
    }
    let s = d.sqrt();
    if &s * &s == d {
        let root = ExactRational::new(-b + s, BigInt::from(2) * a);
        return Some(if *r >= root { RootComparison::Dominates } else { RootComparison::Below });
    }
    let scale = BigInt::one() << 128;
    // floor(sqrt(d) * 2^128) with error below one unit
    let radicand: BigInt = &d * &scale * &scale;
    let root_scaled = -b * &scale + radicand.sqrt();
    let (p, q) = (r.numer(), r.denom());
    let diff = p * BigInt::from(2) * a * &scale - &root_scaled * q;
    if diff > *q {
        Some(RootComparison::Dominates)
    } else if diff < -q {
        Some(RootComparison::Below)
    } else {
        None
    }
}

/// `floor(z^(1/n) * 2^200)`.
pub fn nth_root_fixed(z: &BigInt, n: u32) -> BigInt {
    (z << (200 * n as usize)).nth_root(n)
}

pub fn small_poly(max_degree: usize, bound: i64) -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-bound..=bound, 0..=max_degree + 1).prop_map(|c| IntPolynomial::from_i64s(&c))
}

/// Positive log-concave sequences by ratio construction: a positive first
/// term followed by weakly decreasing positive rational ratios.
pub fn log_concave_terms(len: usize) -> impl Strategy<Value = Vec<ExactRational>> {
    (1i64..=1000, prop::collection::vec((1i64..=500, 1i64..=60), len - 1)).prop_map(|(first, raw)| {
        let mut ratios: Vec<ExactRational> = raw
            .into_iter()
            .map(|(p, q)| ExactRational::new(p.into(), q.into()))
            .collect();
        ratios.sort_by(|x, y| y.cmp(x));
        let mut terms = vec![ExactRational::from_integer(first.into())];
        for r in ratios {
            let next = terms.last().unwrap() * r;
            terms.push(next);
        }
        terms
    })
}

pub fn table(name: &str, first: i64, terms: Vec<ExactRational>) -> TermTable {
    TermTable::from_terms(name, first, terms).unwrap()
}

/// Quadratic-coefficient recurrences with `a > 0` on `n >= 0`, `b <= 0` and
/// `c >= 0`, the sign pattern of the log-concave examples, in rational mode.
pub fn recurrence_strategy() -> impl Strategy<Value = ThreeTermRecurrence> {
    (
        prop::array::uniform3(0i64..=4),
        prop::array::uniform3(0i64..=40),
        prop::array::uniform3(0i64..=40),
        1i64..=10,
        1i64..=80,
    )
        .prop_map(|(a, b, c, s0, s1)| {
            let a = [a[0] + 1, a[1], a[2]];
            let b = b.map(|x| -x);
            ThreeTermRecurrence::new(
                "random",
                IntPolynomial::from_i64s(&a),
                IntPolynomial::from_i64s(&b),
                IntPolynomial::from_i64s(&c),
                [ExactRational::from_integer(s0.into()), ExactRational::from_integer(s1.into())],
                ValueMode::Rational,
            )
            .unwrap()
        })
}

pub fn mod_p(x: &BigInt) -> u64 {
    u64::try_from(x % BigInt::from(P)).unwrap()
}
