//! Dense univariate polynomials in `q` with exact coefficients.
//!
//! Coefficients are stored in ascending degree order and the list is always
//! normalized: the last entry is nonzero and the zero polynomial is empty.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::{Ring, RingDescriptor, Scalar};

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Ring,
    coeffs: Vec<Scalar>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.coeffs == other.coeffs
    }
}

impl Eq for Polynomial {}

fn normalize(mut coeffs: Vec<Scalar>) -> Vec<Scalar> {
    while coeffs.last().is_some_and(Scalar::is_zero) {
        coeffs.pop();
    }
    coeffs
}

fn same_ring(f: &Polynomial, g: &Polynomial) -> Result<()> {
    if f.ring == g.ring {
        Ok(())
    } else {
        Err(Error::RingMismatch {
            left: f.ring.descriptor(),
            right: g.ring.descriptor(),
        })
    }
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(ring: &Ring, coeffs: Vec<Scalar>) -> Result<Polynomial> {
        if let Some(bad) = coeffs.iter().find(|c| c.ring() != ring.descriptor()) {
            return Err(Error::RingMismatch {
                left: ring.descriptor(),
                right: bad.ring(),
            });
        }
        Ok(Polynomial {
            ring: ring.clone(),
            coeffs: normalize(coeffs),
        })
    }

    pub(crate) fn from_raw(ring: &Ring, coeffs: Vec<Scalar>) -> Polynomial {
        debug_assert!(coeffs.iter().all(|c| c.ring() == ring.descriptor()));
        Polynomial {
            ring: ring.clone(),
            coeffs: normalize(coeffs),
        }
    }

    pub fn from_i64(ring: &Ring, coeffs: &[i64]) -> Polynomial {
        Polynomial::from_raw(ring, coeffs.iter().map(|&c| ring.from_i64(c)).collect())
    }

    /// Parses an ascending array in the textual scalar format.
    pub fn parse(ring: &Ring, coeffs: &[Value]) -> Result<Polynomial> {
        let coeffs = coeffs
            .iter()
            .map(|v| ring.parse_scalar(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_raw(ring, coeffs))
    }

    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, ring.one())
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Polynomial {
        Polynomial::from_raw(ring, vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(ring: &Ring, c: Scalar, k: usize) -> Polynomial {
        let mut coeffs = vec![ring.zero(); k];
        coeffs.push(c);
        Polynomial::from_raw(ring, coeffs)
    }

    /// The indeterminate `q`.
    pub fn q(ring: &Ring) -> Polynomial {
        Polynomial::monomial(ring, ring.one(), 1)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn descriptor(&self) -> RingDescriptor {
        self.ring.descriptor()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Coefficient of `q^0`.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(0)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale(&self, c: &Scalar) -> Result<Polynomial> {
        if c.ring() != self.descriptor() {
            return Err(Error::RingMismatch {
                left: self.descriptor(),
                right: c.ring(),
            });
        }
        Ok(Polynomial::from_raw(
            &self.ring,
            self.coeffs.iter().map(|x| x * c).collect(),
        ))
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.ring.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    /// Divides by `q^k`, which must divide the polynomial.
    pub(crate) fn unshift(&self, k: usize) -> Polynomial {
        debug_assert!(self.coeffs.iter().take(k).all(Scalar::is_zero));
        Polynomial {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = mul_unchecked(&acc, self);
        }
        acc
    }

    /// Evaluates at a scalar by Horner's rule.
    pub fn eval_at(&self, x: &Scalar) -> Result<Scalar> {
        if x.ring() != self.descriptor() {
            return Err(Error::RingMismatch {
                left: self.descriptor(),
                right: x.ring(),
            });
        }
        let mut acc = self.ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(Scalar::to_json).collect())
    }
}

impl fmt::Display for Polynomial {
    /// Ascending terms joined by ` + ` / ` - `; unit coefficients are omitted
    /// on nonconstant terms, e.g. `1 - q + q^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (negative, mag, parens) = c.signed_parts();
            let power = match i {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{i}"),
            };
            let term = if i == 0 {
                mag
            } else if mag == "1" {
                power
            } else if parens {
                format!("({mag}){power}")
            } else {
                format!("{mag}{power}")
            };
            match (first, negative) {
                (true, true) => write!(f, "-{term}")?,
                (true, false) => write!(f, "{term}")?,
                (false, true) => write!(f, " - {term}")?,
                (false, false) => write!(f, " + {term}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Integer coefficients as `i128` when every coefficient is a rational integer fitting in `i64`.
fn small_integers(f: &Polynomial) -> Option<Vec<i128>> {
    f.coeffs
        .iter()
        .map(|c| match c {
            Scalar::Rational(x) if x.is_integer() => x.numer().to_i64().map(i128::from),
            _ => None,
        })
        .collect()
}

fn from_i128(ring: &Ring, v: Vec<i128>) -> Polynomial {
    Polynomial::from_raw(
        ring,
        v.into_iter()
            .map(|x| Scalar::Rational(BigRational::from_integer(BigInt::from(x))))
            .collect(),
    )
}

fn mul_small(a: &[i128], b: &[i128]) -> Option<Vec<i128>> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    let b_nz: Vec<(usize, i128)> = b.iter().copied().enumerate().filter(|&(_, y)| y != 0).collect();
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for &(j, y) in &b_nz {
            out[i + j] = out[i + j].checked_add(x.checked_mul(y)?)?;
        }
    }
    Some(out)
}

fn mul_unchecked(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() || g.is_zero() {
        return Polynomial::zero(&f.ring);
    }
    if let (Some(a), Some(b)) = (small_integers(f), small_integers(g)) {
        if let Some(prod) = mul_small(&a, &b) {
            return from_i128(&f.ring, prod);
        }
    }
    let mut out = vec![f.ring.zero(); f.coeffs.len() + g.coeffs.len() - 1];
    let g_nz: Vec<(usize, &Scalar)> = g.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()).collect();
    for (i, x) in f.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for &(j, y) in &g_nz {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    Polynomial::from_raw(&f.ring, out)
}

pub fn poly_add(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    same_ring(f, g)?;
    let n = f.coeffs.len().max(g.coeffs.len());
    let coeffs = (0..n)
        .map(|i| match (f.coeffs.get(i), g.coeffs.get(i)) {
            (Some(a), Some(b)) => a + b,
            (Some(a), None) | (None, Some(a)) => a.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    Ok(Polynomial::from_raw(&f.ring, coeffs))
}

pub fn poly_neg(f: &Polynomial) -> Polynomial {
    Polynomial::from_raw(&f.ring, f.coeffs.iter().map(|c| -c).collect())
}

pub fn poly_sub(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    poly_add(f, &poly_neg(g))
}

pub fn poly_mul(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    same_ring(f, g)?;
    Ok(mul_unchecked(f, g))
}

/// The substitution `q -> q^m`.
pub fn dilate(f: &Polynomial, m: u64) -> Result<Polynomial> {
    if m < 1 {
        return Err(Error::OutOfRange {
            what: "dilation factor",
            min: 1,
            value: m,
        });
    }
    if m == 1 || f.is_zero() {
        return Ok(f.clone());
    }
    let m = m as usize;
    let mut coeffs = vec![f.ring.zero(); (f.coeffs.len() - 1) * m + 1];
    for (i, c) in f.coeffs.iter().enumerate() {
        coeffs[i * m] = c.clone();
    }
    Ok(Polynomial::from_raw(&f.ring, coeffs))
}

/// `f(psi(q))` by Horner evaluation in the polynomial ring.
pub fn compose(f: &Polynomial, psi: &Polynomial) -> Result<Polynomial> {
    same_ring(f, psi)?;
    let mut acc = Polynomial::zero(&f.ring);
    for c in f.coeffs.iter().rev() {
        acc = mul_unchecked(&acc, psi);
        acc = poly_add(&acc, &Polynomial::constant(&f.ring, c.clone()))?;
    }
    Ok(acc)
}

/// `q^deg(f) f(1/q)`: the coefficient-reversed polynomial.
pub fn reciprocal(f: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("reciprocal"));
    }
    let coeffs = f.coeffs.iter().rev().cloned().collect();
    Ok(Polynomial::from_raw(&f.ring, coeffs))
}

/// The largest `k` with `q^k` dividing `f`.
pub fn valuation(f: &Polynomial) -> Result<usize> {
    f.coeffs
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(Error::ZeroPolynomial("valuation"))
}

fn div_small(a: &[i128], b: &[i128]) -> Option<Option<Vec<i128>>> {
    let db = b.len() - 1;
    let lead = b[db];
    if lead != 1 && lead != -1 {
        return None;
    }
    let mut rem = a.to_vec();
    let mut quo = vec![0i128; a.len() - db];
    let b_nz: Vec<(usize, i128)> = b.iter().copied().enumerate().filter(|&(_, y)| y != 0).collect();
    for k in (0..quo.len()).rev() {
        let c = rem[k + db] * lead;
        if c == 0 {
            continue;
        }
        for &(j, y) in &b_nz {
            rem[k + j] = rem[k + j].checked_sub(c.checked_mul(y)?)?;
        }
        quo[k] = c;
    }
    Some(rem.iter().all(|&x| x == 0).then_some(quo))
}

/// The exact quotient `f / g`; fails with `InexactDivision` when `g` does not divide `f`.
pub fn exact_div(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    same_ring(f, g)?;
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if f.is_zero() {
        return Ok(f.clone());
    }
    let inexact = || Error::InexactDivision {
        dividend: f.clone(),
        divisor: g.clone(),
    };
    if f.coeffs.len() < g.coeffs.len() {
        return Err(inexact());
    }
    if let (Some(a), Some(b)) = (small_integers(f), small_integers(g)) {
        match div_small(&a, &b) {
            Some(Some(quo)) => return Ok(from_i128(&f.ring, quo)),
            Some(None) => return Err(inexact()),
            None => {}
        }
    }
    let db = g.coeffs.len() - 1;
    let lead_inv = g.coeffs[db].inv()?;
    let g_nz: Vec<(usize, &Scalar)> = g.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()).collect();
    let mut rem = f.coeffs.clone();
    let mut quo = vec![f.ring.zero(); f.coeffs.len() - db];
    for k in (0..quo.len()).rev() {
        if rem[k + db].is_zero() {
            continue;
        }
        let c = &rem[k + db] * &lead_inv;
        for &(j, y) in &g_nz {
            rem[k + j] = &rem[k + j] - &(&c * y);
        }
        quo[k] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(inexact());
    }
    Ok(Polynomial::from_raw(&f.ring, quo))
}

/// `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn quantum_integer(n: u64, ring: &Ring) -> Result<Polynomial> {
    if n < 1 {
        return Err(Error::OutOfRange {
            what: "quantum integer index",
            min: 1,
            value: n,
        });
    }
    Ok(Polynomial::from_raw(ring, vec![ring.one(); n as usize]))
}

/// `[n]_(zeta q) = sum_{i < n} zeta^i q^i`.
pub fn scaled_quantum_integer(n: u64, zeta: &Scalar) -> Result<Polynomial> {
    if zeta.is_zero() {
        return Err(Error::Invalid("zeta must be nonzero".into()));
    }
    if n < 1 {
        return Err(Error::OutOfRange {
            what: "quantum integer index",
            min: 1,
            value: n,
        });
    }
    let ring = Ring::new(zeta.ring())?;
    let mut coeffs = Vec::with_capacity(n as usize);
    let mut power = zeta.one_like();
    for _ in 0..n {
        let next = &power * zeta;
        coeffs.push(power);
        power = next;
    }
    Ok(Polynomial::from_raw(&ring, coeffs))
}
