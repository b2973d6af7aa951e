//! JSON seed files: `{"ring": {...}, "primes": [..] | "all", "seeds": {"p": [..]}}`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::feseq::{from_seeds, FESequence};
use crate::poly::Polynomial;
use crate::ring::{Ring, RingDescriptor};
use crate::semigroup::PrimeSet;
use crate::Error;

#[derive(Debug, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    Rational,
    PrimeField { p: u64 },
    Cyclotomic { d: u32 },
}

impl From<RingSpec> for RingDescriptor {
    fn from(spec: RingSpec) -> RingDescriptor {
        match spec {
            RingSpec::Rational => RingDescriptor::Rational,
            RingSpec::PrimeField { p } => RingDescriptor::PrimeField(p),
            RingSpec::Cyclotomic { d } => RingDescriptor::Cyclotomic(d),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedSpec {
    pub ring: RingSpec,
    pub primes: Value,
    pub seeds: BTreeMap<String, Vec<Value>>,
}

/// Why a seed file could not be turned into a sequence.
#[derive(Debug)]
pub enum LoadError {
    Malformed(String),
    Commutativity(String),
}

impl LoadError {
    pub fn message(&self) -> &str {
        match self {
            LoadError::Malformed(m) | LoadError::Commutativity(m) => m,
        }
    }
}

impl SeedSpec {
    pub fn parse(text: &str) -> Result<SeedSpec, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    /// Validates the seed file and builds the seeded sequence.
    pub fn build(&self) -> Result<FESequence, LoadError> {
        let malformed = |what: String| LoadError::Malformed(what);
        let ring = Ring::new(self.ring.into()).map_err(|e| malformed(format!("ring: {e}")))?;
        let primes = PrimeSet::from_json(&self.primes).map_err(|e| malformed(format!("primes: {e}")))?;
        if primes.is_all() {
            return Err(malformed("primes: a seed file needs a finite prime set".into()));
        }
        let mut seeds = BTreeMap::new();
        for (key, coeffs) in &self.seeds {
            let p: u64 = key
                .parse()
                .map_err(|_| malformed(format!("seeds.{key}: key is not a positive integer")))?;
            let last = coeffs
                .last()
                .ok_or_else(|| malformed(format!("seeds.{key}: coefficient array is empty")))?;
            let last = ring
                .parse_scalar(last)
                .map_err(|e| malformed(format!("seeds.{key}: {e}")))?;
            if last.is_zero() {
                return Err(malformed(format!("seeds.{key}: last coefficient is zero")));
            }
            let h = Polynomial::parse(&ring, coeffs).map_err(|e| malformed(format!("seeds.{key}: {e}")))?;
            seeds.insert(p, h);
        }
        from_seeds(&ring, &primes, seeds).map_err(|e| match e {
            Error::SeedCommutativity { .. } => LoadError::Commutativity(e.to_string()),
            other => malformed(format!("seeds: {other}")),
        })
    }
}

pub fn load(path: &Path) -> Result<FESequence, LoadError> {
    let shown = path.display();
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Malformed(format!("{shown}: {e}")))?;
    let spec = SeedSpec::parse(&text).map_err(|e| LoadError::Malformed(format!("{shown}: {e}")))?;
    spec.build().map_err(|e| match e {
        LoadError::Malformed(m) => LoadError::Malformed(format!("{shown}: {m}")),
        LoadError::Commutativity(m) => LoadError::Commutativity(format!("{shown}: {m}")),
    })
}
