//! Coefficient-vector helpers over `Q[x]` and `Z[x]` used internally by the
//! cyclotomic field arithmetic and the uniqueness oracle. Vectors are in
//! ascending degree order and trimmed of trailing zeros.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

pub(crate) fn mul<T>(a: &[T], b: &[T]) -> Vec<T>
where
    T: Zero + Clone,
    for<'x> &'x T: std::ops::Mul<&'x T, Output = T>,
{
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                let acc = std::mem::replace(&mut out[i + j], T::zero());
                out[i + j] = acc + x * y;
            }
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder of `a / b` over `Q`. `b` must be nonzero.
pub(crate) fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quo = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quo.len()).rev() {
        let c = &rem[k + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                rem[k + j] = &rem[k + j] - &(&c * y);
            }
        }
        quo[k] = c;
    }
    rem.truncate(db);
    trim(&mut rem);
    trim(&mut quo);
    (quo, rem)
}

/// Returns `s` with `s * a = g (mod m)` where `g` is the monic gcd of `a` and `m`.
pub(crate) fn ext_gcd(a: &[BigRational], m: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if let Some(lead) = r0.last().cloned() {
        let inv = lead.recip();
        for c in r0.iter_mut().chain(s0.iter_mut()) {
            *c = &*c * &inv;
        }
    }
    (s0, r0)
}

/// Exact division in `Z[x]` by a monic divisor.
pub(crate) fn div_monic_int(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return if rem.iter().all(Zero::is_zero) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let mut quo = vec![BigInt::zero(); rem.len() - db];
    for k in (0..quo.len()).rev() {
        let c = rem[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                rem[k + j] -= &c * y;
            }
        }
        quo[k] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut quo);
    Some(quo)
}
