use thiserror::Error;

use crate::poly::Polynomial;
use crate::ring::RingDescriptor;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("cyclotomic order must be at least 1")]
    InvalidCyclotomicOrder,
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch {
        left: RingDescriptor,
        right: RingDescriptor,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is undefined for the zero polynomial")]
    ZeroPolynomial(&'static str),
    #[error("{what} must be at least {min}, got {value}")]
    OutOfRange { what: &'static str, min: u64, value: u64 },
    #[error("inexact division: {dividend} is not divisible by {divisor}")]
    InexactDivision { dividend: Polynomial, divisor: Polynomial },
    #[error("cannot parse scalar {input:?} for ring {ring}: {reason}")]
    ParseScalar {
        input: String,
        ring: RingDescriptor,
        reason: String,
    },
    #[error("cannot parse ring descriptor {0:?}")]
    ParseRing(String),
    #[error("operation requires a finite prime set")]
    InfinitePrimeSet,
    #[error("operation requires a nonempty prime set")]
    EmptyPrimeSet,
    #[error("support mismatch: {left} vs {right}")]
    SupportMismatch { left: String, right: String },
    #[error("seed polynomial for prime {0} is zero")]
    ZeroSeed(u64),
    #[error("seed keys do not match the prime set: {0}")]
    SeedKeys(String),
    #[error("seeds for {p1} and {p2} fail h_{p1}(q) h_{p2}(q^{p1}) = h_{p2}(q) h_{p1}(q^{p2}): {lhs} != {rhs}")]
    SeedCommutativity {
        p1: u64,
        p2: u64,
        lhs: Polynomial,
        rhs: Polynomial,
    },
    #[error("zeta^{d} != 1, so [n]_(zeta q) does not satisfy the equation on this support")]
    ZetaNotAdmissible { d: u64 },
    #[error("psi(q)^{p} != psi(q^{p}): {lhs} != {rhs}")]
    PsiIdentity { p: u64, lhs: Polynomial, rhs: Polynomial },
    #[error("on support of all positive integers only psi = q^t is admitted, got {0}")]
    PsiNotMonomial(Polynomial),
    #[error("t(n - 1) = {value} is not an integer at n = {n}")]
    NonIntegralExponent { n: u64, value: String },
    #[error("lambda({m} * {n}) != lambda({m}) * lambda({n})")]
    LambdaNotMultiplicative { m: u64, n: u64 },
    #[error("lambda({0}) is zero on the support or nonzero off it")]
    LambdaSupport(u64),
    #[error("lambda({0}) is not tabulated")]
    LambdaUndefined(u64),
    #[error("valuation table is inconsistent: delta({anchor})/{anchor_minus_one} != delta({witness})/{witness_minus_one}", anchor_minus_one = anchor - 1, witness_minus_one = witness - 1)]
    DeltaInconsistent { anchor: u64, witness: u64 },
    #[error("delta(1) must be 0, got {0}")]
    DeltaAtOne(String),
    #[error("t is undetermined: no tabulated support member n >= 2")]
    DeltaUndetermined,
    #[error("the zero sequence has no {0}")]
    ZeroSequence(&'static str),
    #[error("algebraic and exhaustive verdicts disagree for zeta (d = {d}, bound = {bound})")]
    VerdictMismatch { d: u64, bound: u64 },
    #[error("{0}")]
    Invalid(String),
}
