//! Brute-force reconstruction of the uniqueness argument for `t = 1`.
//!
//! Unknowns: `f_2 = 1 + a q` and, for each odd `n = 2r + 1 <= N`,
//! `f_n = 1 + b_1 q + ... + b_{n-1} q^(n-1)`. Matching coefficients of
//! `f_n(q) f_2(q^n) = f_2(q) f_n(q^2)` degree by degree determines every `b_k`
//! as a polynomial in `a` (degrees below `n`), and the remaining degrees give
//! polynomial constraints on `a` alone. The common nonzero rational roots of
//! those constraints, with `b_{n-1}(a) != 0`, are the solution families.
//!
//! Everything here works on raw coefficient vectors over `Q`, independent of
//! the sequence machinery it is used to cross-check.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dense::{self, trim};
use crate::error::{Error, Result};

pub const MAX_ORACLE_BOUND: u64 = 25;

type QPoly = Vec<BigRational>;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn a_times(p: &QPoly) -> QPoly {
    if p.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero()];
    out.extend(p.iter().cloned());
    out
}

fn eval(p: &QPoly, a: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * a + c)
}

/// The `b_k` as polynomials in `a` together with the constraints on `a`, for odd `n`.
fn propagate(n: usize) -> (Vec<QPoly>, Vec<QPoly>) {
    let mut b: Vec<QPoly> = vec![vec![rat(1)]];
    // right-hand side coefficient of q^k in (1 + a q) f_n(q^2)
    let rhs = |b: &[QPoly], k: usize| -> QPoly {
        if k.is_multiple_of(2) {
            b.get(k / 2).cloned().unwrap_or_default()
        } else {
            b.get(k / 2).map(a_times).unwrap_or_default()
        }
    };
    for k in 1..n {
        let next = rhs(&b, k);
        b.push(next);
    }
    let mut constraints = Vec::new();
    for k in n..2 * n {
        // left-hand side coefficient of q^k in f_n(q) (1 + a q^n)
        let lhs = a_times(&b[k - n]);
        let mut diff = dense::sub(&lhs, &rhs(&b, k));
        trim(&mut diff);
        if !diff.is_empty() {
            constraints.push(diff);
        }
    }
    (b, constraints)
}

fn divisors(n: &BigInt) -> Result<Vec<u64>> {
    let n = n
        .abs()
        .to_u64()
        .ok_or_else(|| Error::Invalid("constraint coefficients too large for root search".into()))?;
    Ok((1..=n).filter(|d| n % d == 0).collect())
}

/// Nonzero rational roots of `p`.
fn nonzero_rational_roots(p: &QPoly) -> Result<Vec<BigRational>> {
    let mut p = p.clone();
    trim(&mut p);
    while p.first().is_some_and(Zero::is_zero) {
        p.remove(0);
    }
    if p.len() <= 1 {
        return Ok(Vec::new());
    }
    let lcm = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    for num in divisors(&ints[0])? {
        for den in divisors(ints.last().unwrap())? {
            for sign in [1i64, -1] {
                let cand = BigRational::new(BigInt::from(num) * sign, BigInt::from(den));
                if eval(&p, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// One solution: the value of `a`, the propagated `b` vectors and `f_1..f_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleFamily {
    pub a: BigRational,
    /// `b_0..b_{n-1}` for each odd `n`.
    pub odd: BTreeMap<u64, Vec<BigRational>>,
    /// Ascending coefficients of `f_n` for `n = 1..=N`.
    pub polys: BTreeMap<u64, Vec<BigRational>>,
}

impl OracleFamily {
    /// Whether every `f_n` is the all-ones vector of length `n`.
    pub fn is_quantum(&self) -> bool {
        self.polys
            .iter()
            .all(|(&n, c)| c.len() == n as usize && c.iter().all(One::is_one))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleOutcome {
    pub bound: u64,
    /// Nonzero constraints on `a` gathered from all odd `n`.
    pub constraints: Vec<Vec<BigRational>>,
    pub families: Vec<OracleFamily>,
    /// True when no constraint pins down `a`.
    pub underdetermined: bool,
}

impl OracleOutcome {
    pub fn is_unique(&self) -> bool {
        !self.underdetermined && self.families.len() == 1
    }
}

fn coeff_string(c: &[BigRational]) -> String {
    c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for OracleOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "system: f_2 = 1 + a q, odd n <= {} matched in f_n(q) f_2(q^n) = f_2(q) f_n(q^2)",
            self.bound
        )?;
        writeln!(f, "constraints on a: {}", self.constraints.len())?;
        if self.underdetermined {
            writeln!(f, "underdetermined: a is free")?;
        }
        for (i, fam) in self.families.iter().enumerate() {
            writeln!(f, "family {}: a = {}", i + 1, fam.a)?;
            for (n, b) in &fam.odd {
                writeln!(f, "  b[{n}] = {}", coeff_string(&b[1..]))?;
            }
            for (n, c) in &fam.polys {
                writeln!(f, "  f_{n} = {}", coeff_string(c))?;
            }
        }
        writeln!(f, "solutions: {}", self.families.len())?;
        let verdict = if self.is_unique() && self.families[0].is_quantum() {
            "unique: f_n = [n]_q".to_string()
        } else if self.is_unique() {
            "unique, but not the quantum integers".to_string()
        } else {
            "not unique".to_string()
        };
        writeln!(f, "{verdict}")
    }
}

fn dilate2(p: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); 2 * p.len() - 1];
    for (i, c) in p.iter().enumerate() {
        out[2 * i] = c.clone();
    }
    out
}

/// Solves the coefficient system for `3 <= N <= 25`.
pub fn uniqueness_oracle(bound: u64) -> Result<OracleOutcome> {
    if !(3..=MAX_ORACLE_BOUND).contains(&bound) {
        return Err(Error::Invalid(format!(
            "oracle bound must lie in 3..={MAX_ORACLE_BOUND}, got {bound}"
        )));
    }
    let odds: Vec<u64> = (3..=bound).step_by(2).collect();
    let mut systems = BTreeMap::new();
    let mut constraints = Vec::new();
    for &n in &odds {
        let (b, c) = propagate(n as usize);
        constraints.extend(c);
        systems.insert(n, b);
    }
    if constraints.is_empty() {
        return Ok(OracleOutcome {
            bound,
            constraints,
            families: Vec::new(),
            underdetermined: true,
        });
    }
    let common = constraints[1..]
        .iter()
        .fold(constraints[0].clone(), |g, c| dense::ext_gcd(c, &g).1);
    let mut families = Vec::new();
    for a in nonzero_rational_roots(&common)? {
        let odd: BTreeMap<u64, Vec<BigRational>> = systems
            .iter()
            .map(|(&n, b)| (n, b.iter().map(|bk| eval(bk, &a)).collect()))
            .collect();
        if odd.values().any(|b| b.last().is_none_or(Zero::is_zero)) {
            continue;
        }
        let mut polys: BTreeMap<u64, Vec<BigRational>> = BTreeMap::new();
        for n in 1..=bound {
            let f = match n {
                1 => vec![rat(1)],
                2 => vec![rat(1), a.clone()],
                _ if n % 2 == 1 => odd[&n].clone(),
                _ => dense::mul(&polys[&2], &dilate2(&polys[&(n / 2)])),
            };
            polys.insert(n, f);
        }
        families.push(OracleFamily { a, odd, polys });
    }
    Ok(OracleOutcome {
        bound,
        constraints,
        families,
        underdetermined: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_forces_a_equals_one() {
        let out = uniqueness_oracle(3).unwrap();
        assert!(out.is_unique());
        let fam = &out.families[0];
        assert_eq!(fam.a, rat(1));
        assert_eq!(fam.odd[&3], vec![rat(1), rat(1), rat(1)]);
    }

    #[test]
    fn five_gives_all_ones() {
        let out = uniqueness_oracle(5).unwrap();
        assert!(out.is_unique());
        assert_eq!(out.families[0].odd[&5], vec![rat(1); 5]);
        assert!(out.families[0].is_quantum());
    }

    #[test]
    fn propagation_before_solving_matches_hand_expansion() {
        // n = 3: b_1 = a, b_2 = b_1 = a; degree 3 gives a - a^2
        let (b, c) = propagate(3);
        assert_eq!(b[1], vec![rat(0), rat(1)]);
        assert_eq!(b[2], vec![rat(0), rat(1)]);
        assert_eq!(c[0], vec![rat(0), rat(1), rat(-1)]);
    }

    #[test]
    fn rational_root_search() {
        // (a - 1)(2a + 3) a = 2a^3 + a^2 - 3a
        let p = vec![rat(0), rat(-3), rat(1), rat(2)];
        let roots = nonzero_rational_roots(&p).unwrap();
        assert_eq!(roots, vec![BigRational::new((-3).into(), 2.into()), rat(1)]);
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(uniqueness_oracle(2).is_err());
        assert!(uniqueness_oracle(26).is_err());
    }

    #[test]
    fn unique_up_to_fifteen() {
        for n in 3..=15 {
            let out = uniqueness_oracle(n).unwrap();
            assert!(out.is_unique(), "N = {n}");
            assert!(out.families[0].is_quantum(), "N = {n}");
        }
    }
}
