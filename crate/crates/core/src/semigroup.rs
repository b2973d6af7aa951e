//! Prime semigroups `S(P)`: the positive integers whose prime factors all lie in `P`.

use std::fmt;

use num_integer::Integer;
use serde_json::Value;

use crate::error::{Error, Result};

/// Deterministic primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut k = 5u64;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) || n.is_multiple_of(k + 2) {
            return false;
        }
        k += 6;
    }
    true
}

/// A finite sorted set of primes, or every prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeSet {
    primes: Option<Vec<u64>>,
}

impl PrimeSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<PrimeSet> {
        let mut v: Vec<u64> = primes.into_iter().collect();
        if let Some(&bad) = v.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::NotPrime(bad));
        }
        v.sort_unstable();
        v.dedup();
        Ok(PrimeSet { primes: Some(v) })
    }

    pub fn all() -> PrimeSet {
        PrimeSet { primes: None }
    }

    pub fn empty() -> PrimeSet {
        PrimeSet {
            primes: Some(Vec::new()),
        }
    }

    pub fn is_all(&self) -> bool {
        self.primes.is_none()
    }

    /// The listed primes, or `None` for the set of all primes.
    pub fn primes(&self) -> Option<&[u64]> {
        self.primes.as_deref()
    }

    /// Membership of `n` in `S(P)`.
    pub fn contains(&self, n: u64) -> bool {
        in_semigroup(n, self)
    }

    /// Whether `S(self)` is contained in `S(other)`.
    pub fn is_subset_of(&self, other: &PrimeSet) -> bool {
        match (&self.primes, &other.primes) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => a.iter().all(|p| b.binary_search(p).is_ok()),
        }
    }

    /// `[2,5,7]` or `"all"`.
    pub fn to_json(&self) -> Value {
        match &self.primes {
            None => Value::String("all".into()),
            Some(v) => Value::Array(v.iter().map(|&p| Value::from(p)).collect()),
        }
    }

    pub fn from_json(value: &Value) -> Result<PrimeSet> {
        match value {
            Value::String(s) if s == "all" => Ok(PrimeSet::all()),
            Value::Array(items) => {
                let primes = items
                    .iter()
                    .map(|v| {
                        v.as_u64()
                            .ok_or_else(|| Error::Invalid(format!("prime set entry {v} is not a positive integer")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if primes.len() != {
                    let mut s = primes.clone();
                    s.sort_unstable();
                    s.dedup();
                    s.len()
                } {
                    return Err(Error::Invalid("prime set contains duplicates".into()));
                }
                PrimeSet::new(primes)
            }
            other => Err(Error::Invalid(format!(
                "prime set must be an array of primes or \"all\", got {other}"
            ))),
        }
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.primes {
            None => write!(f, "all"),
            Some(v) => {
                let parts: Vec<String> = v.iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
        }
    }
}

/// `n = prod p^e` with primes ascending; empty for `n = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

fn positive(n: u64, what: &'static str) -> Result<()> {
    if n == 0 {
        Err(Error::OutOfRange { what, min: 1, value: 0 })
    } else {
        Ok(())
    }
}

pub fn factorize(n: u64) -> Result<Factorization> {
    positive(n, "integer to factor")?;
    let mut factors = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization { n, factors })
}

/// Number of prime factors counted with multiplicity.
pub fn omega(n: u64) -> Result<u32> {
    Ok(factorize(n)?.factors.iter().map(|&(_, e)| e).sum())
}

pub fn in_semigroup(n: u64, primes: &PrimeSet) -> bool {
    if n == 0 {
        return false;
    }
    match &primes.primes {
        None => true,
        Some(ps) => {
            let mut m = n;
            for &p in ps {
                while m.is_multiple_of(p) {
                    m /= p;
                }
            }
            m == 1
        }
    }
}

/// Members of `S(P)` up to `bound`, ascending.
pub fn enumerate_semigroup(primes: &PrimeSet, bound: u64) -> Result<Vec<u64>> {
    positive(bound, "semigroup bound")?;
    let ps = primes.primes().ok_or(Error::InfinitePrimeSet)?;
    let mut members = vec![1u64];
    for &p in ps {
        let mut next = Vec::new();
        for &m in &members {
            let mut x = m;
            loop {
                next.push(x);
                match x.checked_mul(p) {
                    Some(y) if y <= bound => x = y,
                    _ => break,
                }
            }
        }
        members = next;
    }
    members.sort_unstable();
    Ok(members)
}

/// Members of the support up to `bound`: `S(P)` for finite `P`, otherwise `1..=bound`.
pub fn support_members(primes: &PrimeSet, bound: u64) -> Vec<u64> {
    if bound == 0 {
        return Vec::new();
    }
    match primes.primes() {
        None => (1..=bound).collect(),
        Some(_) => enumerate_semigroup(primes, bound).expect("finite prime set"),
    }
}

/// `gcd{p - 1 : p in P}`.
pub fn seed_gcd(primes: &PrimeSet) -> Result<u64> {
    let ps = primes.primes().ok_or(Error::InfinitePrimeSet)?;
    if ps.is_empty() {
        return Err(Error::EmptyPrimeSet);
    }
    Ok(ps.iter().fold(0u64, |g, &p| g.gcd(&(p - 1))))
}
