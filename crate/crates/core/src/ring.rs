//! Exact scalars over the three coefficient domains: `Q`, `GF(p)` and the
//! cyclotomic field `Q(zeta_d)`.
//!
//! Cyclotomic elements are stored as coordinate vectors on `1, zeta, ..., zeta^(phi(d)-1)`
//! reduced modulo the cyclotomic polynomial, so every nonzero element is invertible.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::dense;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::semigroup::is_prime;

/// Selects one of the supported coefficient rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingDescriptor {
    Rational,
    PrimeField(u64),
    Cyclotomic(u32),
}

impl RingDescriptor {
    pub fn validate(self) -> Result<Self> {
        match self {
            RingDescriptor::PrimeField(p) if !is_prime(p) => Err(Error::NotPrime(p)),
            RingDescriptor::Cyclotomic(0) => Err(Error::InvalidCyclotomicOrder),
            other => Ok(other),
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Rational => write!(f, "rational"),
            RingDescriptor::PrimeField(p) => write!(f, "gfp:{p}"),
            RingDescriptor::Cyclotomic(d) => write!(f, "cyclotomic:{d}"),
        }
    }
}

impl FromStr for RingDescriptor {
    type Err = Error;

    /// Accepts `rational`, `gfp:<p>` and `cyclotomic:<d>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRing(s.to_string());
        let desc = match s.split_once(':') {
            None if s == "rational" => RingDescriptor::Rational,
            Some(("gfp", p)) => RingDescriptor::PrimeField(p.parse().map_err(|_| bad())?),
            Some(("cyclotomic", d)) => RingDescriptor::Cyclotomic(d.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        desc.validate()
    }
}

/// Precomputed data for `Q(zeta_d)`.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    /// Monic `Phi_d` in ascending order; its length is `phi(d) + 1`.
    modulus: Vec<BigRational>,
}

impl CyclotomicField {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Euler's totient of the order, the dimension of the field over `Q`.
    pub fn dimension(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        let phi = self.dimension();
        for k in (phi..v.len()).rev() {
            let c = std::mem::replace(&mut v[k], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for (i, m) in self.modulus[..phi].iter().enumerate() {
                if !m.is_zero() {
                    v[k - phi + i] = &v[k - phi + i] - &(&c * m);
                }
            }
        }
        v.resize(phi, BigRational::zero());
        v
    }
}

fn field_cache() -> &'static Mutex<HashMap<u32, Arc<CyclotomicField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cyclotomic_field(d: u32) -> Arc<CyclotomicField> {
    if let Some(f) = field_cache().lock().unwrap().get(&d) {
        return f.clone();
    }
    let modulus = cyclotomic_integer_coeffs(d)
        .into_iter()
        .map(BigRational::from_integer)
        .collect();
    let field = Arc::new(CyclotomicField { order: d, modulus });
    field_cache().lock().unwrap().entry(d).or_insert(field).clone()
}

/// `Phi_d` with integer coefficients via `(x^d - 1) / prod_{e | d, e < d} Phi_e`.
fn cyclotomic_integer_coeffs(d: u32) -> Vec<BigInt> {
    if d == 1 {
        return vec![-BigInt::one(), BigInt::one()];
    }
    if let Some(f) = field_cache().lock().unwrap().get(&d) {
        return f.modulus.iter().map(|c| c.to_integer()).collect();
    }
    let mut num = vec![BigInt::zero(); d as usize + 1];
    num[0] = -BigInt::one();
    num[d as usize] = BigInt::one();
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        let phi_e: Vec<BigInt> = cyclotomic_field(e).modulus.iter().map(|c| c.to_integer()).collect();
        num = dense::div_monic_int(&num, &phi_e).expect("Phi_e divides x^d - 1");
    }
    num
}

/// The `d`-th cyclotomic polynomial over the rationals.
pub fn cyclotomic_polynomial(d: u32) -> Result<Polynomial> {
    if d == 0 {
        return Err(Error::InvalidCyclotomicOrder);
    }
    let coeffs = cyclotomic_field(d)
        .modulus
        .iter()
        .cloned()
        .map(Scalar::Rational)
        .collect();
    Polynomial::new(&Ring::rational(), coeffs)
}

/// A residue in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

#[derive(Clone, Debug)]
pub struct CyclotomicElement {
    field: Arc<CyclotomicField>,
    coords: Vec<BigRational>,
}

impl CyclotomicElement {
    pub fn order(&self) -> u32 {
        self.field.order
    }

    /// Coordinates on `1, zeta, ..., zeta^(phi(d)-1)`.
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }
}

impl PartialEq for CyclotomicElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coords == other.coords
    }
}

impl Eq for CyclotomicElement {}

/// An exact ring element. Arithmetic between scalars of different rings panics;
/// [`Polynomial`] checks ring compatibility before combining coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Modular(Residue),
    Cyclotomic(CyclotomicElement),
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

impl Scalar {
    pub fn ring(&self) -> RingDescriptor {
        match self {
            Scalar::Rational(_) => RingDescriptor::Rational,
            Scalar::Modular(r) => RingDescriptor::PrimeField(r.modulus),
            Scalar::Cyclotomic(c) => RingDescriptor::Cyclotomic(c.field.order),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Modular(r) => r.value == 0,
            Scalar::Cyclotomic(c) => c.coords.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_one(),
            Scalar::Modular(r) => r.value == 1 % r.modulus,
            Scalar::Cyclotomic(c) => c.coords[0].is_one() && c.coords[1..].iter().all(Zero::is_zero),
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.from_integer_like(&BigInt::zero())
    }

    pub fn one_like(&self) -> Scalar {
        self.from_integer_like(&BigInt::one())
    }

    /// Embeds an integer into the ring of `self`.
    pub fn from_integer_like(&self, v: &BigInt) -> Scalar {
        match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::from_integer(v.clone())),
            Scalar::Modular(r) => Scalar::Modular(Residue {
                value: reduce_bigint(v, r.modulus),
                modulus: r.modulus,
            }),
            Scalar::Cyclotomic(c) => {
                let mut coords = vec![BigRational::zero(); c.field.dimension()];
                coords[0] = BigRational::from_integer(v.clone());
                Scalar::Cyclotomic(CyclotomicElement {
                    field: c.field.clone(),
                    coords,
                })
            }
        }
    }

    /// The value as a rational number when it lies in the prime subfield of a
    /// characteristic-zero ring.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(x) => Some(x.clone()),
            Scalar::Modular(_) => None,
            Scalar::Cyclotomic(c) => c.coords[1..].iter().all(Zero::is_zero).then(|| c.coords[0].clone()),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(x) => Scalar::Rational(x.recip()),
            Scalar::Modular(r) => Scalar::Modular(Residue {
                value: pow_mod(r.value, r.modulus - 2, r.modulus),
                modulus: r.modulus,
            }),
            Scalar::Cyclotomic(c) => {
                let (s, g) = dense::ext_gcd(&c.coords, &c.field.modulus);
                debug_assert_eq!(g.len(), 1, "Phi_d is irreducible");
                Scalar::Cyclotomic(CyclotomicElement {
                    coords: c.field.reduce(s),
                    field: c.field.clone(),
                })
            }
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Textual form used by seed files: a string for rational and prime-field
    /// values, an array of rational strings for cyclotomic values.
    pub fn to_json(&self) -> Value {
        match self {
            Scalar::Rational(x) => Value::String(x.to_string()),
            Scalar::Modular(r) => Value::String(r.value.to_string()),
            Scalar::Cyclotomic(c) => Value::Array(c.coords.iter().map(|x| Value::String(x.to_string())).collect()),
        }
    }

    /// Rendering for polynomial coefficients: `(negative, magnitude, needs_parens)`.
    pub(crate) fn signed_parts(&self) -> (bool, String, bool) {
        let rational_parts = |x: &BigRational| {
            let mag = x.abs();
            let frac = !mag.is_integer();
            (x.is_negative(), mag.to_string(), frac)
        };
        match self {
            Scalar::Rational(x) => rational_parts(x),
            Scalar::Modular(r) => (false, r.value.to_string(), false),
            Scalar::Cyclotomic(c) => {
                let nonzero: Vec<usize> = (0..c.coords.len()).filter(|&i| !c.coords[i].is_zero()).collect();
                match nonzero.as_slice() {
                    [] => (false, "0".into(), false),
                    [0] => rational_parts(&c.coords[0]),
                    [k] => {
                        let x = &c.coords[*k];
                        let mag = x.abs();
                        let z = zeta_power(*k);
                        let s = if mag.is_one() { z } else { format!("{mag}{z}") };
                        (x.is_negative(), s, true)
                    }
                    _ => (false, self.to_string(), true),
                }
            }
        }
    }
}

fn zeta_power(k: usize) -> String {
    if k == 1 {
        "z".into()
    } else {
        format!("z^{k}")
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, b, p);
        }
        b = mod_mul(b, b, p);
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(x) => write!(f, "{x}"),
            Scalar::Modular(r) => write!(f, "{}", r.value),
            Scalar::Cyclotomic(c) => {
                let mut first = true;
                for (k, x) in c.coords.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let mag = x.abs();
                    let body = match (k, mag.is_one()) {
                        (0, _) => mag.to_string(),
                        (_, true) => zeta_power(k),
                        (_, false) => format!("{mag}{}", zeta_power(k)),
                    };
                    match (first, x.is_negative()) {
                        (true, true) => write!(f, "-{body}")?,
                        (true, false) => write!(f, "{body}")?,
                        (false, true) => write!(f, " - {body}")?,
                        (false, false) => write!(f, " + {body}")?,
                    }
                    first = false;
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

fn check_same(a: &Scalar, b: &Scalar) {
    assert_eq!(a.ring(), b.ring(), "scalar ring mismatch");
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        check_same(self, rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular(a), Scalar::Modular(b)) => Scalar::Modular(Residue {
                value: ((a.value as u128 + b.value as u128) % a.modulus as u128) as u64,
                modulus: a.modulus,
            }),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => Scalar::Cyclotomic(CyclotomicElement {
                field: a.field.clone(),
                coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
            }),
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular(a) => Scalar::Modular(Residue {
                value: (a.modulus - a.value) % a.modulus,
                modulus: a.modulus,
            }),
            Scalar::Cyclotomic(a) => Scalar::Cyclotomic(CyclotomicElement {
                field: a.field.clone(),
                coords: a.coords.iter().map(|x| -x).collect(),
            }),
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        check_same(self, rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular(a), Scalar::Modular(b)) => Scalar::Modular(Residue {
                value: mod_mul(a.value, b.value, a.modulus),
                modulus: a.modulus,
            }),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => {
                let phi = a.field.dimension();
                let mut prod = dense::mul(&a.coords, &b.coords);
                prod.resize(prod.len().max(phi), BigRational::zero());
                Scalar::Cyclotomic(CyclotomicElement {
                    coords: a.field.reduce(prod),
                    field: a.field.clone(),
                })
            }
            _ => unreachable!(),
        }
    }
}

/// Handle on a coefficient ring: constructors for its elements plus the ring
/// operations. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Ring {
    descriptor: RingDescriptor,
    field: Option<Arc<CyclotomicField>>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.descriptor == other.descriptor
    }
}

impl Eq for Ring {}

/// Builds the ring selected by `descriptor`.
pub fn make_ring(descriptor: RingDescriptor) -> Result<Ring> {
    Ring::new(descriptor)
}

impl Ring {
    pub fn new(descriptor: RingDescriptor) -> Result<Ring> {
        let descriptor = descriptor.validate()?;
        let field = match descriptor {
            RingDescriptor::Cyclotomic(d) => Some(cyclotomic_field(d)),
            _ => None,
        };
        Ok(Ring { descriptor, field })
    }

    pub fn rational() -> Ring {
        Ring {
            descriptor: RingDescriptor::Rational,
            field: None,
        }
    }

    pub fn descriptor(&self) -> RingDescriptor {
        self.descriptor
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self.descriptor {
            RingDescriptor::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            RingDescriptor::PrimeField(p) => Scalar::Modular(Residue {
                value: reduce_bigint(v, p),
                modulus: p,
            }),
            RingDescriptor::Cyclotomic(_) => {
                let field = self.field.clone().expect("cyclotomic ring carries its field");
                let mut coords = vec![BigRational::zero(); field.dimension()];
                coords[0] = BigRational::from_integer(v.clone());
                Scalar::Cyclotomic(CyclotomicElement { field, coords })
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_rational(&self, v: &BigRational) -> Result<Scalar> {
        let num = self.from_bigint(v.numer());
        let den = self.from_bigint(v.denom());
        Ok(&num * &den.inv()?)
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    /// The distinguished primitive root `zeta` of a cyclotomic ring.
    pub fn zeta(&self) -> Option<Scalar> {
        let field = self.field.clone()?;
        let coords = field.reduce(vec![BigRational::zero(), BigRational::one()]);
        Some(Scalar::Cyclotomic(CyclotomicElement { field, coords }))
    }

    /// `Phi_d` for a cyclotomic ring.
    pub fn cyclotomic_modulus(&self) -> Option<Polynomial> {
        match self.descriptor {
            RingDescriptor::Cyclotomic(d) => cyclotomic_polynomial(d).ok(),
            _ => None,
        }
    }

    /// Builds a cyclotomic element from coordinates on `1, zeta, ...`; the
    /// vector may be longer than `phi(d)` and is reduced.
    pub fn from_coords(&self, coords: Vec<BigRational>) -> Result<Scalar> {
        let field = self.field.clone().ok_or(Error::Invalid(format!(
            "ring {} has no zeta coordinates",
            self.descriptor
        )))?;
        let mut coords = coords;
        if coords.len() < field.dimension() {
            coords.resize(field.dimension(), BigRational::zero());
        }
        Ok(Scalar::Cyclotomic(CyclotomicElement {
            coords: field.reduce(coords),
            field,
        }))
    }

    fn owns(&self, a: &Scalar) -> Result<()> {
        if a.ring() == self.descriptor {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.descriptor,
                right: a.ring(),
            })
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.owns(a)?;
        self.owns(b)?;
        Ok(a + b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.owns(a)?;
        self.owns(b)?;
        Ok(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Result<Scalar> {
        self.owns(a)?;
        Ok(-a)
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        self.owns(a)?;
        a.inv()
    }

    pub fn equal(&self, a: &Scalar, b: &Scalar) -> Result<bool> {
        self.owns(a)?;
        self.owns(b)?;
        Ok(a == b)
    }

    /// Parses the textual scalar format: `"a/b"` or `"a"` for rationals, a
    /// decimal integer (reduced mod `p`) for prime fields, and for cyclotomic
    /// fields an array of `phi(d)` rational strings or a single rational string.
    pub fn parse_scalar(&self, value: &Value) -> Result<Scalar> {
        let err = |reason: &str| Error::ParseScalar {
            input: value.to_string(),
            ring: self.descriptor,
            reason: reason.to_string(),
        };
        let parse_rational =
            |s: &str| -> Result<BigRational> { BigRational::from_str(s.trim()).map_err(|e| err(&e.to_string())) };
        let text = match value {
            Value::String(s) => Some(s.as_str().to_owned()),
            Value::Number(n) if n.is_i64() || n.is_u64() => Some(n.to_string()),
            _ => None,
        };
        match (self.descriptor, text, value) {
            (RingDescriptor::PrimeField(_), Some(s), _) => {
                let v = BigInt::from_str(s.trim()).map_err(|e| err(&e.to_string()))?;
                Ok(self.from_bigint(&v))
            }
            (_, Some(s), _) => self.from_rational(&parse_rational(&s)?),
            (RingDescriptor::Cyclotomic(_), None, Value::Array(items)) => {
                let dim = self.field.as_ref().map_or(0, |f| f.dimension());
                if items.len() != dim {
                    return Err(err(&format!("expected {dim} coordinates")));
                }
                let coords = items
                    .iter()
                    .map(|it| match it {
                        Value::String(s) => parse_rational(s),
                        Value::Number(n) if n.is_i64() => parse_rational(&n.to_string()),
                        _ => Err(err("coordinates must be rational strings")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.from_coords(coords)
            }
            _ => Err(err("unsupported scalar encoding")),
        }
    }
}

/// The least `l >= 1` with `z^l = 1`, searching up to `4d` in `Q(zeta_d)` (`4` over `Q`)
/// and up to `p - 1` in `GF(p)`.
pub fn root_of_unity_order(z: &Scalar) -> Result<Option<u64>> {
    if z.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let bound = match z.ring() {
        RingDescriptor::Rational => 4,
        RingDescriptor::PrimeField(p) => p - 1,
        RingDescriptor::Cyclotomic(d) => 4 * u64::from(d),
    };
    let mut acc = z.clone();
    for l in 1..=bound {
        if acc.is_one() {
            return Ok(Some(l));
        }
        acc = &acc * z;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn rational_fraction_sum() {
        let r = Ring::rational();
        assert_eq!(r.add(&rat(1, 2), &rat(1, 3)).unwrap(), rat(5, 6));
    }

    #[test]
    fn prime_field_product() {
        let r = make_ring(RingDescriptor::PrimeField(5)).unwrap();
        let p = r.mul(&r.from_i64(3), &r.from_i64(4)).unwrap();
        assert_eq!(p, r.from_i64(2));
    }

    #[test]
    fn cyclotomic_four_zeta_squared() {
        let r = make_ring(RingDescriptor::Cyclotomic(4)).unwrap();
        let z = r.zeta().unwrap();
        assert_eq!(&z * &z, r.from_i64(-1));
    }

    #[test]
    fn invalid_descriptors() {
        assert_eq!(
            make_ring(RingDescriptor::PrimeField(9)).unwrap_err(),
            Error::NotPrime(9)
        );
        assert_eq!(
            make_ring(RingDescriptor::Cyclotomic(0)).unwrap_err(),
            Error::InvalidCyclotomicOrder
        );
        assert!(make_ring(RingDescriptor::PrimeField(1)).is_err());
    }

    #[test]
    fn descriptor_text_round_trip() {
        for s in ["rational", "gfp:7", "cyclotomic:12"] {
            assert_eq!(RingDescriptor::from_str(s).unwrap().to_string(), s);
        }
        assert!(RingDescriptor::from_str("gfp:8").is_err());
        assert!(RingDescriptor::from_str("real").is_err());
    }

    fn int_poly(v: &[i64]) -> Polynomial {
        Polynomial::from_i64(&Ring::rational(), v)
    }

    #[test]
    fn cyclotomic_polynomial_small_orders() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), int_poly(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2).unwrap(), int_poly(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(12).unwrap(), int_poly(&[1, 0, -1, 0, 1]));
        assert!(cyclotomic_polynomial(0).is_err());
    }

    #[test]
    fn cyclotomic_products_give_x_n_minus_one() {
        use crate::poly::poly_mul;
        for n in 1..=64u32 {
            let mut prod = Polynomial::one(&Ring::rational());
            for e in (1..=n).filter(|e| n % e == 0) {
                prod = poly_mul(&prod, &cyclotomic_polynomial(e).unwrap()).unwrap();
            }
            let mut expected = vec![0i64; n as usize + 1];
            expected[0] = -1;
            expected[n as usize] = 1;
            assert_eq!(prod, int_poly(&expected), "n = {n}");
        }
    }

    #[test]
    fn zeta_is_a_root_of_its_cyclotomic_polynomial() {
        for d in 1..=30u32 {
            let r = make_ring(RingDescriptor::Cyclotomic(d)).unwrap();
            let z = r.zeta().unwrap();
            assert!(z.pow(d.into()).is_one(), "zeta^d = 1 for d = {d}");
            let phi = r.cyclotomic_modulus().unwrap();
            let mut acc = r.zero();
            for c in phi.coeffs().iter().rev() {
                acc = &(&acc * &z) + &r.from_rational(&c.to_rational().unwrap()).unwrap();
            }
            assert!(acc.is_zero(), "Phi_d(zeta) = 0 for d = {d}");
        }
    }

    #[test]
    fn root_orders() {
        let c2 = make_ring(RingDescriptor::Cyclotomic(2)).unwrap();
        assert_eq!(root_of_unity_order(&c2.from_i64(-1)).unwrap(), Some(2));
        assert_eq!(root_of_unity_order(&Ring::rational().one()).unwrap(), Some(1));
        let c6 = make_ring(RingDescriptor::Cyclotomic(6)).unwrap();
        assert_eq!(root_of_unity_order(&c6.zeta().unwrap()).unwrap(), Some(6));
        assert_eq!(root_of_unity_order(&rat(2, 1)).unwrap(), None);
        assert!(root_of_unity_order(&rat(0, 1)).is_err());
        // -zeta_3 is a primitive 6th root inside Q(zeta_3)
        let c3 = make_ring(RingDescriptor::Cyclotomic(3)).unwrap();
        assert_eq!(root_of_unity_order(&-&c3.zeta().unwrap()).unwrap(), Some(6));
    }

    #[test]
    fn cyclotomic_one_matches_rationals() {
        let c1 = make_ring(RingDescriptor::Cyclotomic(1)).unwrap();
        let q = Ring::rational();
        let a = c1.from_rational(&BigRational::new(3.into(), 7.into())).unwrap();
        let b = c1.from_rational(&BigRational::new((-2).into(), 5.into())).unwrap();
        let qa = q.from_rational(&BigRational::new(3.into(), 7.into())).unwrap();
        let qb = q.from_rational(&BigRational::new((-2).into(), 5.into())).unwrap();
        assert_eq!((&a * &b).to_rational(), (&qa * &qb).to_rational());
        assert_eq!((&a + &b).to_rational(), (&qa + &qb).to_rational());
        assert_eq!(a.inv().unwrap().to_rational(), qa.inv().unwrap().to_rational());
        assert!(c1.zeta().unwrap().is_one());
    }

    #[test]
    fn parse_and_print_scalars() {
        let q = Ring::rational();
        assert_eq!(q.parse_scalar(&Value::from("-3/6")).unwrap(), rat(-1, 2));
        assert!(q.parse_scalar(&Value::from("1/0")).is_err());
        let f7 = make_ring(RingDescriptor::PrimeField(7)).unwrap();
        assert_eq!(f7.parse_scalar(&Value::from("-1")).unwrap(), f7.from_i64(6));
        let c4 = make_ring(RingDescriptor::Cyclotomic(4)).unwrap();
        let s = c4.parse_scalar(&serde_json::json!(["1", "-1/2"])).unwrap();
        assert_eq!(s.to_string(), "1 - 1/2z");
        assert_eq!(s.to_json(), serde_json::json!(["1", "-1/2"]));
        assert!(c4.parse_scalar(&serde_json::json!(["1"])).is_err());
    }

    fn arb_ring() -> impl Strategy<Value = Ring> {
        prop_oneof![
            Just(RingDescriptor::Rational),
            Just(RingDescriptor::PrimeField(2)),
            Just(RingDescriptor::PrimeField(101)),
            Just(RingDescriptor::Cyclotomic(5)),
            Just(RingDescriptor::Cyclotomic(12)),
        ]
        .prop_map(|d| make_ring(d).unwrap())
    }

    fn arb_scalar(ring: Ring) -> impl Strategy<Value = Scalar> {
        proptest::collection::vec((-9i64..=9, 1i64..=5), 4).prop_map(move |parts| {
            let coords: Vec<BigRational> = parts
                .iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect();
            match ring.descriptor() {
                RingDescriptor::Cyclotomic(_) => ring.from_coords(coords).unwrap(),
                RingDescriptor::Rational => ring.from_rational(&coords[0]).unwrap(),
                RingDescriptor::PrimeField(_) => ring.from_bigint(coords[0].numer()),
            }
        })
    }

    proptest! {
        #[test]
        fn field_axioms(
            (a, b, c) in arb_ring().prop_flat_map(|r| (arb_scalar(r.clone()), arb_scalar(r.clone()), arb_scalar(r)))
        ) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }
}
