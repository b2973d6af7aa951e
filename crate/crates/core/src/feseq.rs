//! Sequences `n -> f_n(q)` satisfying `f_{mn}(q) = f_m(q) f_n(q^m)`.
//!
//! An [`FESequence`] is a cheap, shareable handle on a generation rule, a
//! declared support and a write-once memo of computed values. Every value off
//! the support is the zero polynomial. Derived sequences (dilations,
//! substitutions, products, ...) hold handles to their bases and evaluate lazily.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::poly::{
    compose, dilate, exact_div, poly_add, poly_mul, quantum_integer, reciprocal, scaled_quantum_integer, valuation,
    Polynomial,
};
use crate::ring::{Ring, Scalar};
use crate::semigroup::{factorize, is_prime, seed_gcd, support_members, PrimeSet};

/// `f_m(q) f_n(q^m)`.
pub fn otimes(fm: &Polynomial, fn_: &Polynomial, m: u64) -> Result<Polynomial> {
    poly_mul(fm, &dilate(fn_, m)?)
}

/// `f_m(q) + q^m f_n(q)`.
pub fn oplus(fm: &Polynomial, fn_: &Polynomial, m: u64) -> Result<Polynomial> {
    poly_add(fm, &fn_.shift(m as usize))
}

/// The completely multiplicative factor of an assembled sequence.
#[derive(Clone, Debug, PartialEq)]
pub enum Lambda {
    /// `lambda(n) = 1`.
    One,
    /// `lambda(n) = n`, embedded in the coefficient ring.
    Index,
    /// Explicit values; evaluation outside the table fails.
    Table(BTreeMap<u64, Scalar>),
}

impl Lambda {
    pub fn value(&self, n: u64, ring: &Ring) -> Result<Scalar> {
        match self {
            Lambda::One => Ok(ring.one()),
            Lambda::Index => Ok(ring.from_bigint(&BigInt::from(n))),
            Lambda::Table(t) => t.get(&n).cloned().ok_or(Error::LambdaUndefined(n)),
        }
    }
}

type ValueFn = Arc<dyn Fn(u64) -> Polynomial + Send + Sync>;

#[derive(Clone)]
enum Rule {
    QuantumInteger,
    Monomial,
    Identity,
    SeedBased(BTreeMap<u64, Polynomial>),
    ZetaScaled(Scalar),
    Dilated(FESequence, u64),
    PsiSubstituted(FESequence, Polynomial),
    Reciprocal(FESequence),
    Product(FESequence, FESequence),
    Quotient(FESequence, FESequence),
    Restricted(FESequence),
    Normalized(FESequence),
    Assembled {
        t: BigRational,
        lambda: Lambda,
        base: FESequence,
    },
    Custom(String, ValueFn),
}

struct Inner {
    ring: Ring,
    support: PrimeSet,
    rule: Rule,
    memo: RwLock<HashMap<u64, Polynomial>>,
}

/// A lazily evaluated, memoized polynomial sequence with a declared support.
///
/// Clones share the memo. Concurrent `eval` calls are allowed; a value may be
/// computed twice but the first stored entry wins and is never replaced.
#[derive(Clone)]
pub struct FESequence {
    inner: Arc<Inner>,
}

impl fmt::Debug for FESequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FESequence")
            .field("rule", &self.describe())
            .field("ring", &self.inner.ring.descriptor())
            .field("support", &self.inner.support.to_string())
            .finish()
    }
}

impl FESequence {
    fn build(ring: &Ring, support: PrimeSet, rule: Rule) -> FESequence {
        FESequence {
            inner: Arc::new(Inner {
                ring: ring.clone(),
                support,
                rule,
                memo: RwLock::new(HashMap::new()),
            }),
        }
    }

    /// A sequence given by an arbitrary value function, masked to zero off
    /// `support`. No law is enforced; this is the hook for probing the
    /// verifiers with non-solutions.
    pub fn from_fn(
        ring: &Ring,
        support: PrimeSet,
        name: impl Into<String>,
        f: impl Fn(u64) -> Polynomial + Send + Sync + 'static,
    ) -> FESequence {
        FESequence::build(ring, support, Rule::Custom(name.into(), Arc::new(f)))
    }

    pub fn ring(&self) -> &Ring {
        &self.inner.ring
    }

    pub fn support(&self) -> &PrimeSet {
        &self.inner.support
    }

    /// Seed polynomials of a seed-based sequence.
    pub fn seeds(&self) -> Option<&BTreeMap<u64, Polynomial>> {
        match &self.inner.rule {
            Rule::SeedBased(s) => Some(s),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match &self.inner.rule {
            Rule::QuantumInteger => "quantum".into(),
            Rule::Monomial => "monomial".into(),
            Rule::Identity => "identity".into(),
            Rule::SeedBased(s) => {
                let ps: Vec<String> = s.keys().map(u64::to_string).collect();
                format!("seeded({})", ps.join(","))
            }
            Rule::ZetaScaled(z) => format!("zeta-scaled({z})"),
            Rule::Dilated(b, t) => format!("dilate({}, {t})", b.describe()),
            Rule::PsiSubstituted(b, psi) => format!("substitute({}, {psi})", b.describe()),
            Rule::Reciprocal(b) => format!("reciprocal({})", b.describe()),
            Rule::Product(a, b) => format!("({}) * ({})", a.describe(), b.describe()),
            Rule::Quotient(a, b) => format!("({}) / ({})", a.describe(), b.describe()),
            Rule::Restricted(b) => format!("restrict({}, {})", b.describe(), self.support()),
            Rule::Normalized(b) => format!("normalize({})", b.describe()),
            Rule::Assembled { t, base, .. } => format!("assemble(t={t}, {})", base.describe()),
            Rule::Custom(name, _) => name.clone(),
        }
    }

    pub fn eval(&self, n: u64) -> Result<Polynomial> {
        if n == 0 {
            return Err(Error::OutOfRange {
                what: "sequence index",
                min: 1,
                value: 0,
            });
        }
        if !self.inner.support.contains(n) {
            return Ok(Polynomial::zero(&self.inner.ring));
        }
        if let Some(v) = self.inner.memo.read().unwrap().get(&n) {
            return Ok(v.clone());
        }
        let v = self.compute(n)?;
        let mut memo = self.inner.memo.write().unwrap();
        Ok(memo.entry(n).or_insert(v).clone())
    }

    /// `(n, f_n)` for `n = 1..=bound`.
    pub fn values(&self, bound: u64) -> Result<Vec<(u64, Polynomial)>> {
        (1..=bound).map(|n| Ok((n, self.eval(n)?))).collect()
    }

    /// Support members up to `bound`.
    pub fn support_members(&self, bound: u64) -> Vec<u64> {
        support_members(&self.inner.support, bound)
    }

    pub fn is_zero_sequence(&self) -> Result<bool> {
        Ok(self.eval(1)?.is_zero())
    }

    fn compute(&self, n: u64) -> Result<Polynomial> {
        let ring = &self.inner.ring;
        match &self.inner.rule {
            Rule::QuantumInteger => quantum_integer(n, ring),
            Rule::Monomial => Ok(Polynomial::monomial(ring, ring.one(), (n - 1) as usize)),
            Rule::Identity => Ok(Polynomial::one(ring)),
            Rule::SeedBased(seeds) => self.compute_seeded(seeds, n),
            Rule::ZetaScaled(z) => scaled_quantum_integer(n, z),
            Rule::Dilated(base, t) => dilate(&base.eval(n)?, *t),
            Rule::PsiSubstituted(base, psi) => compose(&base.eval(n)?, psi),
            Rule::Reciprocal(base) => {
                let f = base.eval(n)?;
                if f.is_zero() {
                    Ok(f)
                } else {
                    reciprocal(&f)
                }
            }
            Rule::Product(a, b) => poly_mul(&a.eval(n)?, &b.eval(n)?),
            Rule::Quotient(a, b) => exact_div(&a.eval(n)?, &b.eval(n)?),
            Rule::Restricted(base) => base.eval(n),
            Rule::Normalized(base) => {
                let f = base.eval(n)?;
                if f.is_zero() {
                    return Ok(f);
                }
                let delta = valuation(&f)?;
                let lambda = f.coeff(delta);
                f.unshift(delta).scale(&lambda.inv()?)
            }
            Rule::Assembled { t, lambda, base } => {
                let g = base.eval(n)?;
                if g.is_zero() {
                    return Ok(g);
                }
                let exponent = integral_exponent(t, n)?;
                let l = lambda.value(n, ring)?;
                if l.is_zero() {
                    return Err(Error::LambdaSupport(n));
                }
                Ok(g.scale(&l)?.shift(exponent))
            }
            Rule::Custom(_, f) => Ok(f(n)),
        }
    }

    /// Evaluation order: `f_{p^a} = f_p(q) f_{p^(a-1)}(q^p)`, then
    /// `f_n = f_{n'}(q) f_{p^a}(q^{n'})` splitting off the largest prime power.
    fn compute_seeded(&self, seeds: &BTreeMap<u64, Polynomial>, n: u64) -> Result<Polynomial> {
        let fact = factorize(n)?;
        match fact.factors.as_slice() {
            [] => Ok(Polynomial::one(&self.inner.ring)),
            [(p, 1)] => Ok(seeds[p].clone()),
            [(p, _)] => otimes(&self.eval(*p)?, &self.eval(n / p)?, *p),
            [.., (p, a)] => {
                let pa = p.pow(*a);
                let rest = n / pa;
                otimes(&self.eval(rest)?, &self.eval(pa)?, rest)
            }
        }
    }
}

fn integral_exponent(t: &BigRational, n: u64) -> Result<usize> {
    let value = t * BigRational::from_integer(BigInt::from(n - 1));
    if !value.is_integer() {
        return Err(Error::NonIntegralExponent {
            n,
            value: value.to_string(),
        });
    }
    value
        .to_integer()
        .to_usize()
        .ok_or_else(|| Error::Invalid(format!("exponent {value} is out of range")))
}

/// `f_n = [n]_q` on the support, `0` off it.
pub fn quantum_sequence(ring: &Ring, support: PrimeSet) -> FESequence {
    FESequence::build(ring, support, Rule::QuantumInteger)
}

/// `f_n = q^(n-1)` for every `n`.
pub fn monomial_sequence(ring: &Ring) -> FESequence {
    FESequence::build(ring, PrimeSet::all(), Rule::Monomial)
}

/// `f_n = 1` on the support, `0` off it: the unit for value-wise products.
pub fn identity_sequence(ring: &Ring, support: PrimeSet) -> FESequence {
    FESequence::build(ring, support, Rule::Identity)
}

/// The constant sequence `f_n = c` for all `n`, which satisfies the
/// commutativity identity but not the equation itself unless `c` is `0` or `1`.
pub fn constant_sequence(ring: &Ring, c: Scalar) -> FESequence {
    let name = format!("constant({c})");
    let value = Polynomial::constant(ring, c);
    FESequence::from_fn(ring, PrimeSet::all(), name, move |_| value.clone())
}

/// A failing pair of seeds together with both sides of
/// `h_{p1}(q) h_{p2}(q^{p1}) = h_{p2}(q) h_{p1}(q^{p2})`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedConflict {
    pub p1: u64,
    pub p2: u64,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
    /// Lowest degree at which the two sides differ.
    pub first_difference: usize,
}

impl From<SeedConflict> for Error {
    fn from(c: SeedConflict) -> Error {
        Error::SeedCommutativity {
            p1: c.p1,
            p2: c.p2,
            lhs: c.lhs,
            rhs: c.rhs,
        }
    }
}

/// Checks the seed commutativity condition for every unordered pair, returning
/// the first failing pair.
pub fn check_seed_commutativity(seeds: &BTreeMap<u64, Polynomial>) -> Result<Option<SeedConflict>> {
    let mut ring: Option<&Ring> = None;
    for (&p, h) in seeds {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if h.is_zero() {
            return Err(Error::ZeroSeed(p));
        }
        match ring {
            Some(r) if r != h.ring() => {
                return Err(Error::RingMismatch {
                    left: r.descriptor(),
                    right: h.descriptor(),
                })
            }
            _ => ring = Some(h.ring()),
        }
    }
    let entries: Vec<(&u64, &Polynomial)> = seeds.iter().collect();
    for (i, &(&p1, h1)) in entries.iter().enumerate() {
        for &(&p2, h2) in &entries[i + 1..] {
            let lhs = otimes(h1, h2, p1)?;
            let rhs = otimes(h2, h1, p2)?;
            if lhs != rhs {
                let len = lhs.coeffs().len().max(rhs.coeffs().len());
                let first_difference = (0..len)
                    .find(|&k| lhs.coeff(k) != rhs.coeff(k))
                    .expect("polynomials differ");
                return Ok(Some(SeedConflict {
                    p1,
                    p2,
                    lhs,
                    rhs,
                    first_difference,
                }));
            }
        }
    }
    Ok(None)
}

/// The unique sequence with support `S(P)` and `f_p = h_p` for `p in P`.
pub fn from_seeds(ring: &Ring, primes: &PrimeSet, seeds: BTreeMap<u64, Polynomial>) -> Result<FESequence> {
    let ps = primes.primes().ok_or(Error::InfinitePrimeSet)?;
    if let Some(extra) = seeds.keys().find(|p| ps.binary_search(p).is_err()) {
        return Err(Error::SeedKeys(format!("seed for {extra} which is not in {primes}")));
    }
    if let Some(missing) = ps.iter().find(|p| !seeds.contains_key(p)) {
        return Err(Error::SeedKeys(format!("no seed for prime {missing}")));
    }
    if let Some(h) = seeds.values().find(|h| h.ring() != ring) {
        return Err(Error::RingMismatch {
            left: ring.descriptor(),
            right: h.descriptor(),
        });
    }
    if let Some(conflict) = check_seed_commutativity(&seeds)? {
        return Err(conflict.into());
    }
    Ok(FESequence::build(ring, primes.clone(), Rule::SeedBased(seeds)))
}

/// `f_n = [n]_(zeta q)` on `S(P)`; refused unless `zeta^d = 1` with `d = gcd{p - 1}`.
pub fn zeta_scaled_sequence(primes: &PrimeSet, zeta: &Scalar) -> Result<FESequence> {
    if zeta.is_zero() {
        return Err(Error::Invalid("zeta must be nonzero".into()));
    }
    let d = seed_gcd(primes)?;
    if !zeta.pow(d).is_one() {
        return Err(Error::ZetaNotAdmissible { d });
    }
    let ring = Ring::new(zeta.ring())?;
    Ok(FESequence::build(&ring, primes.clone(), Rule::ZetaScaled(zeta.clone())))
}

/// `f_n(q^t)`.
pub fn dilate_sequence(f: &FESequence, t: u64) -> Result<FESequence> {
    if t < 1 {
        return Err(Error::OutOfRange {
            what: "dilation factor",
            min: 1,
            value: t,
        });
    }
    Ok(FESequence::build(
        f.ring(),
        f.support().clone(),
        Rule::Dilated(f.clone(), t),
    ))
}

/// `f_n(psi(q))`, admitted when `psi(q)^p = psi(q^p)` for every generator `p`
/// of the support. The identity for generators extends to all of `S(P)`:
/// if it holds for `a` and `b` then `psi(q)^(ab) = psi(q^a)^b = psi(q^(ab))`.
/// For full support only `psi = q^t` is admitted.
pub fn psi_substitute_sequence(f: &FESequence, psi: &Polynomial) -> Result<FESequence> {
    if psi.ring() != f.ring() {
        return Err(Error::RingMismatch {
            left: f.ring().descriptor(),
            right: psi.descriptor(),
        });
    }
    match f.support().primes() {
        None => {
            let monic_monomial = psi.term_count() == 1 && psi.leading_coeff().is_some_and(Scalar::is_one);
            if !monic_monomial {
                return Err(Error::PsiNotMonomial(psi.clone()));
            }
        }
        Some(ps) => {
            for &p in ps {
                let exp = u32::try_from(p).map_err(|_| Error::Invalid(format!("prime {p} too large")))?;
                let lhs = psi.pow(exp);
                let rhs = dilate(psi, p)?;
                if lhs != rhs {
                    return Err(Error::PsiIdentity { p, lhs, rhs });
                }
            }
        }
    }
    Ok(FESequence::build(
        f.ring(),
        f.support().clone(),
        Rule::PsiSubstituted(f.clone(), psi.clone()),
    ))
}

/// The sequence of reciprocal polynomials.
pub fn reciprocal_sequence(f: &FESequence) -> Result<FESequence> {
    if f.is_zero_sequence()? {
        return Err(Error::ZeroSequence("reciprocal sequence"));
    }
    Ok(FESequence::build(
        f.ring(),
        f.support().clone(),
        Rule::Reciprocal(f.clone()),
    ))
}

fn same_shape(f: &FESequence, g: &FESequence) -> Result<()> {
    if f.ring() != g.ring() {
        return Err(Error::RingMismatch {
            left: f.ring().descriptor(),
            right: g.ring().descriptor(),
        });
    }
    if f.support() != g.support() {
        return Err(Error::SupportMismatch {
            left: f.support().to_string(),
            right: g.support().to_string(),
        });
    }
    Ok(())
}

/// Value-wise product `f_n g_n`.
pub fn product_sequence(f: &FESequence, g: &FESequence) -> Result<FESequence> {
    same_shape(f, g)?;
    Ok(FESequence::build(
        f.ring(),
        f.support().clone(),
        Rule::Product(f.clone(), g.clone()),
    ))
}

/// Recovers `G` from `FG` and `F` by value-wise exact division.
pub fn quotient_sequence(product: &FESequence, factor: &FESequence) -> Result<FESequence> {
    same_shape(product, factor)?;
    Ok(FESequence::build(
        product.ring(),
        product.support().clone(),
        Rule::Quotient(product.clone(), factor.clone()),
    ))
}

/// Restricts a sequence to the sub-semigroup `S(P)`.
pub fn restrict_sequence(f: &FESequence, primes: &PrimeSet) -> Result<FESequence> {
    if !primes.is_subset_of(f.support()) {
        return Err(Error::SupportMismatch {
            left: primes.to_string(),
            right: f.support().to_string(),
        });
    }
    Ok(FESequence::build(f.ring(), primes.clone(), Rule::Restricted(f.clone())))
}

/// `g_n = f_n / (lambda(n) q^delta(n))` where `lambda(n) q^delta(n)` is the lowest term of `f_n`.
pub fn normalized_sequence(f: &FESequence) -> FESequence {
    FESequence::build(f.ring(), f.support().clone(), Rule::Normalized(f.clone()))
}

/// `f_n = lambda(n) q^(t(n-1)) g_n(q)`.
///
/// `t` must make `t(n - 1)` integral on the support (checked on the generators
/// up front and on every evaluated index). A tabulated `lambda` must be
/// nonzero exactly on the support and completely multiplicative on every
/// tabulated pair.
pub fn assemble(t: &BigRational, lambda: Lambda, g: &FESequence) -> Result<FESequence> {
    if t.is_negative() {
        return Err(Error::Invalid(format!("t = {t} must be nonnegative")));
    }
    match g.support().primes() {
        None => {
            integral_exponent(t, 2)?;
        }
        Some(ps) => {
            for &p in ps {
                integral_exponent(t, p)?;
            }
        }
    }
    if let Lambda::Table(table) = &lambda {
        for (&n, l) in table {
            if l.ring() != g.ring().descriptor() {
                return Err(Error::RingMismatch {
                    left: g.ring().descriptor(),
                    right: l.ring(),
                });
            }
            if l.is_zero() == g.support().contains(n) {
                return Err(Error::LambdaSupport(n));
            }
        }
        for (&m, lm) in table {
            for (&n, ln) in table.range(m..) {
                let Some(mn) = m.checked_mul(n) else { break };
                match table.get(&mn) {
                    Some(lmn) if *lmn != lm * ln => return Err(Error::LambdaNotMultiplicative { m, n }),
                    _ => {}
                }
            }
        }
    }
    Ok(FESequence::build(
        g.ring(),
        g.support().clone(),
        Rule::Assembled {
            t: t.clone(),
            lambda,
            base: g.clone(),
        },
    ))
}

/// `f_n = h(q) [n]_q`, a solution of `f_{m+n} = f_m + q^m f_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdditiveSequence {
    h: Polynomial,
}

pub fn additive_sequence(h: Polynomial) -> AdditiveSequence {
    AdditiveSequence { h }
}

impl AdditiveSequence {
    pub fn h(&self) -> &Polynomial {
        &self.h
    }

    pub fn eval(&self, n: u64) -> Result<Polynomial> {
        poly_mul(&self.h, &quantum_integer(n, self.h.ring())?)
    }
}

/// An element `F/G` of the group of formal quotients of sequences sharing one support.
#[derive(Clone, Debug)]
pub struct RationalSequence {
    numerator: FESequence,
    denominator: FESequence,
}

pub fn rational_quotient(f: &FESequence, g: &FESequence) -> Result<RationalSequence> {
    same_shape(f, g)?;
    Ok(RationalSequence {
        numerator: f.clone(),
        denominator: g.clone(),
    })
}

impl RationalSequence {
    pub fn identity(ring: &Ring, support: PrimeSet) -> RationalSequence {
        let one = identity_sequence(ring, support);
        RationalSequence {
            numerator: one.clone(),
            denominator: one,
        }
    }

    pub fn numerator(&self) -> &FESequence {
        &self.numerator
    }

    pub fn denominator(&self) -> &FESequence {
        &self.denominator
    }

    pub fn multiply(&self, other: &RationalSequence) -> Result<RationalSequence> {
        Ok(RationalSequence {
            numerator: product_sequence(&self.numerator, &other.numerator)?,
            denominator: product_sequence(&self.denominator, &other.denominator)?,
        })
    }

    pub fn invert(&self) -> RationalSequence {
        RationalSequence {
            numerator: self.denominator.clone(),
            denominator: self.numerator.clone(),
        }
    }

    /// `f_n / g_n` as a numerator/denominator pair, or `None` off the support.
    pub fn value_at(&self, n: u64) -> Result<Option<(Polynomial, Polynomial)>> {
        let den = self.denominator.eval(n)?;
        if den.is_zero() {
            return Ok(None);
        }
        Ok(Some((self.numerator.eval(n)?, den)))
    }

    /// Cross-multiplicative equality `F G1 = F1 G` checked for `n = 1..=bound`.
    pub fn equals_up_to(&self, other: &RationalSequence, bound: u64) -> Result<bool> {
        same_shape(&self.numerator, &other.numerator)?;
        for n in 1..=bound {
            let lhs = poly_mul(&self.numerator.eval(n)?, &other.denominator.eval(n)?)?;
            let rhs = poly_mul(&other.numerator.eval(n)?, &self.denominator.eval(n)?)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
