//! Verification and classification of sequences: exhaustive checks of the
//! equation and the commutativity identity, the degree law `deg f_n = t(n-1)`,
//! the canonical decomposition `f_n = lambda(n) q^(t(n-1)) g_n(q)`, and the
//! criteria that force `f_n = [n]_q`.

mod oracle;

pub use oracle::{uniqueness_oracle, OracleFamily, OracleOutcome, MAX_ORACLE_BOUND};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::feseq::{assemble, normalized_sequence, oplus, otimes, AdditiveSequence, FESequence, Lambda};
use crate::poly::{quantum_integer, valuation, Degree, Polynomial};
use crate::ring::Scalar;
use crate::semigroup::{enumerate_semigroup, seed_gcd, PrimeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    /// `f_{mn}(q) = f_m(q) f_n(q^m)`
    FunctionalEquation,
    /// `f_m(q) f_n(q^m) = f_n(q) f_m(q^n)`
    Commutativity,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Law::FunctionalEquation => write!(f, "equation"),
            Law::Commutativity => write!(f, "commutativity"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub law: Law,
    pub m: u64,
    pub n: u64,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
}

impl Counterexample {
    pub fn to_json(&self) -> Value {
        json!({
            "law": self.law.to_string(),
            "m": self.m,
            "n": self.n,
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
        })
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at (m={}, n={}): lhs = {}, rhs = {}",
            self.law, self.m, self.n, self.lhs, self.rhs
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub bound: u64,
    pub fe_ok: bool,
    pub commutativity_ok: bool,
    pub support_ok: bool,
    /// The first equation failure, or the first commutativity failure if the equation held.
    pub first_failure: Option<Counterexample>,
    /// First index where the nonzero values disagree with the declared support
    /// or with multiplicative closure.
    pub support_violation: Option<u64>,
}

impl VerificationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "bound": self.bound,
            "fe_ok": self.fe_ok,
            "commutativity_ok": self.commutativity_ok,
            "support_ok": self.support_ok,
            "first_failure": self.first_failure.as_ref().map_or(Value::Null, Counterexample::to_json),
            "support_violation": self.support_violation,
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bound: {}", self.bound)?;
        writeln!(f, "fe_ok: {}", self.fe_ok)?;
        writeln!(f, "commutativity_ok: {}", self.commutativity_ok)?;
        writeln!(f, "support_ok: {}", self.support_ok)?;
        match &self.first_failure {
            Some(c) => writeln!(f, "first_failure: {c}")?,
            None => writeln!(f, "first_failure: none")?,
        }
        match self.support_violation {
            Some(n) => writeln!(f, "support_violation: {n}"),
            None => writeln!(f, "support_violation: none"),
        }
    }
}

/// Checks the equation and the commutativity identity for every pair with
/// `mn <= bound`, and the support law for `n <= bound`.
pub fn verify_fe(f: &FESequence, bound: u64) -> Result<VerificationReport> {
    if bound < 2 {
        return Err(Error::OutOfRange {
            what: "verification bound",
            min: 2,
            value: bound,
        });
    }
    let values: Vec<Polynomial> = (1..=bound).map(|n| f.eval(n)).collect::<Result<_>>()?;
    let at = |n: u64| &values[(n - 1) as usize];

    let mut fe_failure = None;
    let mut comm_failure = None;
    for m in 1..=bound {
        for n in 1..=bound / m {
            let rhs = otimes(at(m), at(n), m)?;
            if fe_failure.is_none() && at(m * n) != &rhs {
                fe_failure = Some(Counterexample {
                    law: Law::FunctionalEquation,
                    m,
                    n,
                    lhs: at(m * n).clone(),
                    rhs: rhs.clone(),
                });
            }
            if comm_failure.is_none() && m < n {
                let swapped = otimes(at(n), at(m), n)?;
                if rhs != swapped {
                    comm_failure = Some(Counterexample {
                        law: Law::Commutativity,
                        m,
                        n,
                        lhs: rhs,
                        rhs: swapped,
                    });
                }
            }
        }
    }

    let nonzero = |n: u64| !at(n).is_zero();
    let mut support_violation = (1..=bound).find(|&n| nonzero(n) != f.support().contains(n));
    if support_violation.is_none() {
        'closure: for m in (1..=bound).filter(|&m| nonzero(m)) {
            for n in (1..=bound / m).filter(|&n| nonzero(n)) {
                if !nonzero(m * n) {
                    support_violation = Some(m * n);
                    break 'closure;
                }
            }
        }
    }

    let fe_ok = fe_failure.is_none();
    let commutativity_ok = comm_failure.is_none();
    Ok(VerificationReport {
        bound,
        fe_ok,
        commutativity_ok,
        support_ok: support_violation.is_none(),
        first_failure: fe_failure.or(comm_failure),
        support_violation,
    })
}

/// Checks `f_m(q) f_n(q^m) = f_n(q) f_m(q^n)` for all `m, n <= max_index`.
pub fn check_commutativity(f: &FESequence, max_index: u64) -> Result<Option<Counterexample>> {
    let values: Vec<Polynomial> = (1..=max_index).map(|n| f.eval(n)).collect::<Result<_>>()?;
    for m in 1..=max_index {
        for n in m + 1..=max_index {
            let (fm, fn_) = (&values[(m - 1) as usize], &values[(n - 1) as usize]);
            let lhs = otimes(fm, fn_, m)?;
            let rhs = otimes(fn_, fm, n)?;
            if lhs != rhs {
                return Ok(Some(Counterexample {
                    law: Law::Commutativity,
                    m,
                    n,
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(None)
}

/// First pair `(m, n)` with `m + n <= bound` where `f_{m+n} != f_m + q^m f_n`.
pub fn verify_additive(seq: &AdditiveSequence, bound: u64) -> Result<Option<(u64, u64)>> {
    let values: Vec<Polynomial> = (1..=bound).map(|n| seq.eval(n)).collect::<Result<_>>()?;
    let at = |n: u64| &values[(n - 1) as usize];
    for m in 1..bound {
        for n in 1..=bound - m {
            if *at(m + n) != oplus(at(m), at(n), m)? {
                return Ok(Some((m, n)));
            }
        }
    }
    Ok(None)
}

/// Recovers `t` with `delta(n) = t(n - 1)` from a valuation or degree table.
///
/// `t` is anchored at the smallest tabulated `n >= 2` and every other entry is
/// checked against it. Any table passing this check also satisfies
/// `delta(mn) = delta(m) + m delta(n)` on tabulated triples.
pub fn solve_delta(table: &BTreeMap<u64, BigRational>) -> Result<BigRational> {
    if let Some(d1) = table.get(&1) {
        if !d1.is_zero() {
            return Err(Error::DeltaAtOne(d1.to_string()));
        }
    }
    let mut rest = table.range(2..);
    let (&anchor, d_anchor) = rest.next().ok_or(Error::DeltaUndetermined)?;
    let t = d_anchor / BigRational::from_integer(BigInt::from(anchor - 1));
    for (&m, dm) in rest {
        if *dm != &t * BigRational::from_integer(BigInt::from(m - 1)) {
            return Err(Error::DeltaInconsistent { anchor, witness: m });
        }
    }
    Ok(t)
}

/// Support members `n <= bound`, requiring `f_n != 0` on each.
fn nonzero_members(f: &FESequence, bound: u64) -> Result<Vec<(u64, Polynomial)>> {
    if f.is_zero_sequence()? {
        return Err(Error::ZeroSequence("decomposition"));
    }
    f.support_members(bound)
        .into_iter()
        .map(|n| {
            let v = f.eval(n)?;
            if v.is_zero() {
                Err(Error::Invalid(format!("f_{n} vanishes on the declared support")))
            } else {
                Ok((n, v))
            }
        })
        .collect()
}

/// `t` with `deg f_n = t(n - 1)` on the support up to `bound`.
pub fn infer_degree_t(f: &FESequence, bound: u64) -> Result<BigRational> {
    let table = nonzero_members(f, bound)?
        .into_iter()
        .map(|(n, v)| {
            let d = v.degree().finite().expect("nonzero");
            (n, BigRational::from_integer(BigInt::from(d)))
        })
        .collect();
    solve_delta(&table)
}

/// `f_n = lambda(n) q^delta(n) g_n(q)` tabulated over the support up to `bound`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub bound: u64,
    pub t: BigRational,
    pub delta: BTreeMap<u64, u64>,
    pub lambda: BTreeMap<u64, Scalar>,
    pub g: FESequence,
}

impl Decomposition {
    /// Inverse direction: rebuilds `F` from `(t, lambda, G)`.
    pub fn reassemble(&self) -> Result<FESequence> {
        assemble(&self.t, Lambda::Table(self.lambda.clone()), &self.g)
    }

    pub fn g_table(&self) -> Result<BTreeMap<u64, Polynomial>> {
        self.delta.keys().map(|&n| Ok((n, self.g.eval(n)?))).collect()
    }

    /// JSON object with tables keyed by `n` as a string and `t` as `"num/den"`.
    pub fn to_json(&self) -> Result<Value> {
        let delta: Map<String, Value> = self
            .delta
            .iter()
            .map(|(n, d)| (n.to_string(), Value::from(*d)))
            .collect();
        let lambda: Map<String, Value> = self.lambda.iter().map(|(n, l)| (n.to_string(), l.to_json())).collect();
        let g: Map<String, Value> = self
            .g_table()?
            .into_iter()
            .map(|(n, p)| (n.to_string(), Value::String(p.to_string())))
            .collect();
        Ok(json!({
            "bound": self.bound,
            "t": format!("{}/{}", self.t.numer(), self.t.denom()),
            "delta": delta,
            "lambda": lambda,
            "g": g,
        }))
    }
}

/// Canonical decomposition over the support up to `bound`.
pub fn decompose(f: &FESequence, bound: u64) -> Result<Decomposition> {
    let members = nonzero_members(f, bound)?;
    let mut delta = BTreeMap::new();
    let mut lambda = BTreeMap::new();
    for (n, v) in &members {
        let d = valuation(v)?;
        lambda.insert(*n, v.coeff(d));
        delta.insert(*n, d as u64);
    }
    let table = delta
        .iter()
        .map(|(&n, &d)| (n, BigRational::from_integer(BigInt::from(d))))
        .collect();
    let t = solve_delta(&table)?;
    for (&m, lm) in &lambda {
        for (&n, ln) in lambda.range(m..) {
            let Some(mn) = m.checked_mul(n) else { break };
            if mn > bound {
                break;
            }
            if let Some(lmn) = lambda.get(&mn) {
                if *lmn != lm * ln {
                    return Err(Error::LambdaNotMultiplicative { m, n });
                }
            }
        }
    }
    Ok(Decomposition {
        bound,
        t,
        delta,
        lambda,
        g: normalized_sequence(f),
    })
}

/// A hypothesis of the quantum-integer forcing criterion that the input violates.
#[derive(Clone, Debug, PartialEq)]
pub enum ForcingHypothesis {
    Degree { n: u64, degree: Degree },
    ConstantTerm { n: u64, value: Scalar },
    MissingTwo,
    MissingOddMember,
}

impl fmt::Display for ForcingHypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForcingHypothesis::Degree { n, degree } => {
                write!(f, "deg f_{n} = {degree} != {}", n - 1)
            }
            ForcingHypothesis::ConstantTerm { n, value } => write!(f, "f_{n}(0) = {value} != 1"),
            ForcingHypothesis::MissingTwo => write!(f, "support does not contain 2"),
            ForcingHypothesis::MissingOddMember => {
                write!(f, "support has no odd member greater than 1")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum QuantumForcing {
    /// Hypotheses hold and `f_n = [n]_q` for every checked support member.
    Confirmed {
        checked: usize,
    },
    HypothesisFailure(ForcingHypothesis),
    /// Hypotheses hold yet `f_n != [n]_q`, so the input cannot satisfy the equation.
    Contradiction {
        n: u64,
        value: Polynomial,
    },
}

impl fmt::Display for QuantumForcing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantumForcing::Confirmed { checked } => {
                write!(f, "confirmed: f_n = [n]_q on {checked} support members")
            }
            QuantumForcing::HypothesisFailure(h) => write!(f, "hypothesis failure: {h}"),
            QuantumForcing::Contradiction { n, value } => {
                write!(f, "contradiction: f_{n} = {value} is not [{n}]_q")
            }
        }
    }
}

/// Checks `deg f_n = n - 1`, `f_n(0) = 1`, `2` and an odd `n > 1` in the
/// support (all up to `bound`), then compares every value with `[n]_q`.
pub fn check_quantum_forced(f: &FESequence, bound: u64) -> Result<QuantumForcing> {
    let mut members = Vec::new();
    for n in 1..=bound {
        let v = f.eval(n)?;
        if v.is_zero() {
            continue;
        }
        if v.degree() != Degree::Finite((n - 1) as usize) {
            return Ok(QuantumForcing::HypothesisFailure(ForcingHypothesis::Degree {
                n,
                degree: v.degree(),
            }));
        }
        let c0 = v.constant_term();
        if !c0.is_one() {
            return Ok(QuantumForcing::HypothesisFailure(ForcingHypothesis::ConstantTerm {
                n,
                value: c0,
            }));
        }
        members.push((n, v));
    }
    if !members.iter().any(|(n, _)| *n == 2) {
        return Ok(QuantumForcing::HypothesisFailure(ForcingHypothesis::MissingTwo));
    }
    if !members.iter().any(|(n, _)| *n > 1 && n % 2 == 1) {
        return Ok(QuantumForcing::HypothesisFailure(ForcingHypothesis::MissingOddMember));
    }
    for (n, v) in &members {
        if *v != quantum_integer(*n, f.ring())? {
            return Ok(QuantumForcing::Contradiction {
                n: *n,
                value: v.clone(),
            });
        }
    }
    Ok(QuantumForcing::Confirmed { checked: members.len() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaVerdict {
    pub d: u64,
    pub admissible: bool,
    /// Smallest `m in S(P)` with `zeta^(m-1) != 1`.
    pub counterexample: Option<u64>,
}

/// Decides `zeta^d = 1` for `d = gcd{p - 1}` and cross-checks it against
/// `zeta^(m-1) = 1` for every `m in S(P)` up to `bound`. Disagreement is an error.
pub fn zeta_admissibility(primes: &PrimeSet, zeta: &Scalar, bound: u64) -> Result<ZetaVerdict> {
    if zeta.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let d = seed_gcd(primes)?;
    let algebraic = zeta.pow(d).is_one();
    let counterexample = enumerate_semigroup(primes, bound)?
        .into_iter()
        .find(|&m| !zeta.pow(m - 1).is_one());
    if algebraic != counterexample.is_none() {
        return Err(Error::VerdictMismatch { d, bound });
    }
    Ok(ZetaVerdict {
        d,
        admissible: algebraic,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feseq::{constant_sequence, from_seeds, identity_sequence, monomial_sequence, quantum_sequence};
    use crate::ring::{make_ring, Ring, RingDescriptor};

    fn qq() -> Ring {
        Ring::rational()
    }

    fn p(v: &[i64]) -> Polynomial {
        Polynomial::from_i64(&qq(), v)
    }

    fn set(v: &[u64]) -> PrimeSet {
        PrimeSet::new(v.iter().copied()).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sequence_257() -> FESequence {
        let seeds = BTreeMap::from([
            (2, p(&[1, -1, 1])),
            (5, p(&[1, -1, 0, 1, -1, 1, 0, -1, 1])),
            (7, p(&[1, -1, 0, 1, -1, 0, 1, 0, -1, 1, 0, -1, 1])),
        ]);
        from_seeds(&qq(), &set(&[2, 5, 7]), seeds).unwrap()
    }

    #[test]
    fn quantum_integers_verify() {
        let r = verify_fe(&quantum_sequence(&qq(), PrimeSet::all()), 64).unwrap();
        assert!(r.fe_ok && r.commutativity_ok && r.support_ok);
        assert_eq!(r.first_failure, None);
    }

    #[test]
    fn constant_two_fails_only_the_equation() {
        let two = constant_sequence(&qq(), qq().from_i64(2));
        let r = verify_fe(&two, 20).unwrap();
        assert!(r.commutativity_ok);
        assert!(!r.fe_ok);
        let c = r.first_failure.unwrap();
        assert_eq!((c.law, c.m, c.n), (Law::FunctionalEquation, 1, 1));
        assert_eq!((c.lhs, c.rhs), (p(&[2]), p(&[4])));
        assert_eq!(check_commutativity(&two, 20).unwrap(), None);
    }

    #[test]
    fn tampered_value_is_caught() {
        let ring = qq();
        let tampered = FESequence::from_fn(&ring, PrimeSet::all(), "tampered", move |n| {
            if n == 4 {
                Polynomial::from_i64(&Ring::rational(), &[1, 1, 1, 0, 1])
            } else {
                quantum_integer(n, &Ring::rational()).unwrap()
            }
        });
        let r = verify_fe(&tampered, 16).unwrap();
        assert!(!r.fe_ok);
        let c = r.first_failure.unwrap();
        assert_eq!((c.m, c.n), (2, 2));
    }

    #[test]
    fn support_violations_are_reported() {
        let ring = qq();
        let holes = FESequence::from_fn(&ring, PrimeSet::all(), "holes", |n| {
            if n == 6 {
                Polynomial::zero(&Ring::rational())
            } else {
                quantum_integer(n, &Ring::rational()).unwrap()
            }
        });
        let r = verify_fe(&holes, 12).unwrap();
        assert!(!r.support_ok);
        assert_eq!(r.support_violation, Some(6));
        assert!(verify_fe(&holes, 1).is_err());
    }

    #[test]
    fn seeded_sequence_verifies() {
        let r = verify_fe(&sequence_257(), 100).unwrap();
        assert!(r.fe_ok && r.support_ok, "{r}");
    }

    #[test]
    fn delta_tables() {
        let linear: BTreeMap<u64, BigRational> = (1..=20).map(|n| (n, rat(n as i64 - 1, 1))).collect();
        assert_eq!(solve_delta(&linear).unwrap(), rat(1, 1));
        let sevens: BTreeMap<u64, BigRational> = (0..5u32)
            .map(|k| 7u64.pow(k))
            .map(|n| (n, rat(((n - 1) / 3) as i64, 1)))
            .collect();
        assert_eq!(solve_delta(&sevens).unwrap(), rat(1, 3));
        let zeros: BTreeMap<u64, BigRational> = [1, 2, 4, 8].into_iter().map(|n| (n, rat(0, 1))).collect();
        assert_eq!(solve_delta(&zeros).unwrap(), rat(0, 1));
        assert_eq!(
            solve_delta(&BTreeMap::from([(1, rat(0, 1))])).unwrap_err(),
            Error::DeltaUndetermined
        );
        assert!(matches!(
            solve_delta(&BTreeMap::from([(1, rat(1, 1)), (2, rat(1, 1))])),
            Err(Error::DeltaAtOne(_))
        ));
    }

    #[test]
    fn delta_rejects_tables_breaking_the_additive_law() {
        // delta(mn) = delta(m) + m delta(n) fails for (2, 2): 3 != 1 + 2 * 1
        let table = BTreeMap::from([(1, rat(0, 1)), (2, rat(1, 1)), (4, rat(2, 1))]);
        assert_eq!(
            solve_delta(&table).unwrap_err(),
            Error::DeltaInconsistent { anchor: 2, witness: 4 }
        );
        for bad in 0..40i64 {
            let table = BTreeMap::from([(2, rat(2, 1)), (3, rat(4, 1)), (6, rat(bad, 1))]);
            let law_holds = bad == 2 + 2 * 4;
            assert_eq!(solve_delta(&table).is_ok(), law_holds);
        }
    }

    #[test]
    fn degree_exponents() {
        assert_eq!(infer_degree_t(&monomial_sequence(&qq()), 30).unwrap(), rat(1, 1));
        assert_eq!(infer_degree_t(&sequence_257(), 100).unwrap(), rat(2, 1));
        assert_eq!(
            infer_degree_t(&quantum_sequence(&qq(), PrimeSet::all()), 30).unwrap(),
            rat(1, 1)
        );
        assert_eq!(
            infer_degree_t(&identity_sequence(&qq(), set(&[3])), 2).unwrap_err(),
            Error::DeltaUndetermined
        );
    }

    #[test]
    fn decompositions() {
        let quantum = quantum_sequence(&qq(), PrimeSet::all());
        let d = decompose(&quantum, 40).unwrap();
        assert_eq!(d.t, rat(0, 1));
        assert!(d.lambda.values().all(Scalar::is_one));
        for (n, g) in d.g_table().unwrap() {
            assert_eq!(g, quantum.eval(n).unwrap());
        }

        let d = decompose(&monomial_sequence(&qq()), 40).unwrap();
        assert_eq!(d.t, rat(1, 1));
        assert!(d.lambda.values().all(Scalar::is_one));
        assert!(d.g_table().unwrap().values().all(Polynomial::is_one));

        let weighted = assemble(&rat(1, 1), Lambda::Index, &quantum).unwrap();
        let d = decompose(&weighted, 60).unwrap();
        assert_eq!(d.t, rat(1, 1));
        for (n, l) in &d.lambda {
            assert_eq!(*l, qq().from_i64(*n as i64));
        }
        for (n, g) in d.g_table().unwrap() {
            assert_eq!(g, quantum_integer(n, &qq()).unwrap());
        }
        let back = d.reassemble().unwrap();
        for n in 1..=60 {
            assert_eq!(back.eval(n).unwrap(), weighted.eval(n).unwrap());
        }
    }

    #[test]
    fn weighted_sequence_satisfies_the_equation() {
        let quantum = quantum_sequence(&qq(), PrimeSet::all());
        let weighted = assemble(&rat(1, 1), Lambda::Index, &quantum).unwrap();
        // brute force: expand n q^(n-1) [n]_q directly, independent of assemble
        let direct = |n: u64| {
            let coeffs: Vec<i64> = (0..2 * n - 1).map(|k| if k + 1 >= n { n as i64 } else { 0 }).collect();
            p(&coeffs)
        };
        for m in 1..=20 {
            for n in 1..=20 {
                let lhs = direct(m * n);
                let rhs = otimes(&direct(m), &direct(n), m).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(weighted.eval(m * n).unwrap(), lhs);
            }
        }
    }

    #[test]
    fn decompose_rejects_non_solutions() {
        let bad = FESequence::from_fn(&qq(), PrimeSet::all(), "bad-lambda", |n| {
            let c = if n == 4 { 5 } else { n as i64 };
            Polynomial::from_i64(&Ring::rational(), &[c])
        });
        assert_eq!(
            decompose(&bad, 10).unwrap_err(),
            Error::LambdaNotMultiplicative { m: 2, n: 2 }
        );
        let bad_delta = FESequence::from_fn(&qq(), PrimeSet::all(), "bad-delta", |n| {
            Polynomial::monomial(
                &Ring::rational(),
                Ring::rational().one(),
                if n == 3 { 5 } else { n as usize - 1 },
            )
        });
        assert!(matches!(
            decompose(&bad_delta, 10),
            Err(Error::DeltaInconsistent { anchor: 2, witness: 3 })
        ));
    }

    #[test]
    fn forcing_criterion() {
        let quantum = quantum_sequence(&qq(), PrimeSet::all());
        assert_eq!(
            check_quantum_forced(&quantum, 50).unwrap(),
            QuantumForcing::Confirmed { checked: 50 }
        );
        assert!(matches!(
            check_quantum_forced(&monomial_sequence(&qq()), 50).unwrap(),
            QuantumForcing::HypothesisFailure(ForcingHypothesis::ConstantTerm { n: 2, .. })
        ));
        assert!(matches!(
            check_quantum_forced(&sequence_257(), 50).unwrap(),
            QuantumForcing::HypothesisFailure(ForcingHypothesis::Degree { n: 2, .. })
        ));
        assert_eq!(
            check_quantum_forced(&quantum_sequence(&qq(), set(&[3, 5])), 50).unwrap(),
            QuantumForcing::HypothesisFailure(ForcingHypothesis::MissingTwo)
        );
        assert_eq!(
            check_quantum_forced(&quantum_sequence(&qq(), set(&[2])), 50).unwrap(),
            QuantumForcing::HypothesisFailure(ForcingHypothesis::MissingOddMember)
        );
        assert_eq!(
            check_quantum_forced(&quantum_sequence(&qq(), set(&[2, 3])), 50).unwrap(),
            QuantumForcing::Confirmed { checked: 15 }
        );
    }

    #[test]
    fn zeta_verdicts() {
        let c2 = make_ring(RingDescriptor::Cyclotomic(2)).unwrap();
        let minus = c2.from_i64(-1);
        let v = zeta_admissibility(&set(&[3]), &minus, 1000).unwrap();
        assert!(v.admissible);
        assert_eq!(v.d, 2);
        let v = zeta_admissibility(&set(&[2]), &minus, 1000).unwrap();
        assert!(!v.admissible);
        assert_eq!(v.counterexample, Some(2));
        assert!(zeta_admissibility(&set(&[2, 5]), &qq().one(), 1000).unwrap().admissible);
        // bound too small to witness the failure
        assert_eq!(
            zeta_admissibility(&set(&[2]), &minus, 1).unwrap_err(),
            Error::VerdictMismatch { d: 1, bound: 1 }
        );
        assert!(zeta_admissibility(&set(&[2]), &qq().zero(), 10).is_err());
    }

    #[test]
    fn additive_checks() {
        let h = crate::feseq::additive_sequence(p(&[3, 0, -1]));
        assert_eq!(verify_additive(&h, 40).unwrap(), None);
    }

    #[test]
    fn report_serialization() {
        let two = constant_sequence(&qq(), qq().from_i64(2));
        let r = verify_fe(&two, 4).unwrap();
        let j = r.to_json();
        assert_eq!(j["fe_ok"], json!(false));
        assert_eq!(j["first_failure"]["lhs"], json!("2"));
        assert_eq!(j["first_failure"]["rhs"], json!("4"));
        let text = r.to_string();
        assert!(text.contains("commutativity_ok: true"));
        assert!(text.contains("first_failure: equation fails at (m=1, n=1): lhs = 2, rhs = 4"));
    }
}
