//! Acceptance suite: one line per criterion, exact equality throughout.
//!
//! Expected values are built from raw integer coefficient vectors here rather
//! than from the library's own quantum-integer constructors wherever possible.

use std::collections::BTreeMap;
use std::process::ExitCode;

use num_bigint::BigInt;
use num_rational::BigRational;

use qfe::analyze::{
    check_commutativity, decompose, uniqueness_oracle, verify_additive, verify_fe, zeta_admissibility, Law,
};
use qfe::feseq::{
    additive_sequence, check_seed_commutativity, constant_sequence, dilate_sequence, from_seeds, identity_sequence,
    monomial_sequence, oplus, otimes, product_sequence, psi_substitute_sequence, quantum_sequence, quotient_sequence,
    rational_quotient, reciprocal_sequence, restrict_sequence, zeta_scaled_sequence,
};
use qfe::poly::{dilate, exact_div, poly_mul};
use qfe::semigroup::enumerate_semigroup;
use qfe::{Error, FESequence, Polynomial, PrimeSet, Ring, RingDescriptor, Scalar};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: qfe::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn qq() -> Ring {
    Ring::rational()
}

fn set(ps: &[u64]) -> PrimeSet {
    PrimeSet::new(ps.iter().copied()).unwrap()
}

fn poly(ring: &Ring, c: &[i64]) -> Polynomial {
    Polynomial::from_i64(ring, c)
}

/// `1 + q^step + ... + q^(step (n-1))` from a literal coefficient vector.
fn ones(ring: &Ring, n: u64, step: u64) -> Polynomial {
    let mut c = vec![0i64; (step * (n - 1) + 1) as usize];
    for k in 0..n {
        c[(step * k) as usize] = 1;
    }
    poly(ring, &c)
}

fn monomial(ring: &Ring, k: u64) -> Polynomial {
    let mut c = vec![0i64; k as usize + 1];
    c[k as usize] = 1;
    poly(ring, &c)
}

fn seeds_257() -> BTreeMap<u64, Polynomial> {
    let r = qq();
    BTreeMap::from([
        (2, poly(&r, &[1, -1, 1])),
        (5, poly(&r, &[1, -1, 0, 1, -1, 1, 0, -1, 1])),
        (7, poly(&r, &[1, -1, 0, 1, -1, 0, 1, 0, -1, 1, 0, -1, 1])),
    ])
}

fn same_values(f: &FESequence, g: &FESequence, bound: u64) -> Check {
    for n in 1..=bound {
        let (a, b) = (e2s(f.eval(n))?, e2s(g.eval(n))?);
        ensure(a == b, || format!("values differ at n = {n}: {a} vs {b}"))?;
    }
    Ok(())
}

fn fe_holds(f: &FESequence, bound: u64) -> Check {
    let r = e2s(verify_fe(f, bound))?;
    ensure(r.fe_ok && r.commutativity_ok && r.support_ok, || {
        format!("verification failed:\n{r}")
    })
}

fn criterion_1() -> Check {
    let r = qq();
    let quantum = quantum_sequence(&r, PrimeSet::all());
    for m in 1..=64u64 {
        for n in 1..=64 / m {
            let lhs = e2s(quantum.eval(m * n))?;
            ensure(lhs == ones(&r, m * n, 1), || {
                format!("f_{} is not [{}]_q", m * n, m * n)
            })?;
            let rhs = e2s(otimes(&ones(&r, m, 1), &ones(&r, n, 1), m))?;
            ensure(lhs == rhs, || format!("equation fails at ({m},{n})"))?;
            let product = e2s(poly_mul(&ones(&r, m, 1), &ones(&r, n, m)))?;
            let all_ones = product.coeffs().len() as u64 == m * n && product.coeffs().iter().all(Scalar::is_one);
            ensure(all_ones, || format!("[{m}]_q [{n}]_(q^{m}) is not all ones"))?;
        }
    }
    fe_holds(&quantum, 64)
}

fn criterion_2() -> Check {
    let r = qq();
    let two = constant_sequence(&r, r.from_i64(2));
    ensure(e2s(check_commutativity(&two, 20))?.is_none(), || {
        "commutativity fails".into()
    })?;
    let report = e2s(verify_fe(&two, 20))?;
    ensure(!report.fe_ok, || "equation unexpectedly holds".into())?;
    let c = report.first_failure.ok_or("no counterexample")?;
    ensure(c.law == Law::FunctionalEquation && (c.m, c.n) == (1, 1), || {
        format!("first failure is {c}")
    })?;
    ensure(c.lhs == poly(&r, &[2]) && c.rhs == poly(&r, &[4]), || {
        format!("sides are {c}")
    })
}

fn criterion_3() -> Check {
    let r = qq();
    let seeds = seeds_257();
    ensure(e2s(check_seed_commutativity(&seeds))?.is_none(), || {
        "seeds do not commute".into()
    })?;
    let p = set(&[2, 5, 7]);
    let f = e2s(from_seeds(&r, &p, seeds))?;
    for n in e2s(enumerate_semigroup(&p, 500))? {
        let value = e2s(f.eval(n))?;
        let qn = ones(&r, n, 1);
        let q3n = ones(&r, n, 3);
        ensure(value == e2s(exact_div(&q3n, &qn))?, || {
            format!("f_{n} is not [n]_(q^3)/[n]_q")
        })?;
        ensure(e2s(poly_mul(&value, &qn))? == q3n, || {
            format!("f_{n} [n]_q != [n]_(q^3)")
        })?;
        ensure(value.degree().finite() == Some(2 * (n as usize - 1)), || {
            format!("deg f_{n}")
        })?;
    }
    Ok(())
}

fn criterion_4() -> Check {
    let r = qq();
    let ring = r.clone();
    let f = FESequence::from_fn(&r, set(&[7]), "sevens", move |n| {
        let mut m = n;
        while m % 7 == 0 {
            m /= 7;
        }
        if m == 1 {
            monomial(&ring, (n - 1) / 3)
        } else {
            Polynomial::zero(&ring)
        }
    });
    fe_holds(&f, 7u64.pow(3))?;
    let d = e2s(decompose(&f, 7u64.pow(5)))?;
    let third = BigRational::new(BigInt::from(1), BigInt::from(3));
    ensure(d.t == third, || format!("t = {}", d.t))?;
    ensure(d.delta.len() == 6, || format!("{} tabulated members", d.delta.len()))
}

fn criterion_5() -> Check {
    let r = qq();
    let ring = r.clone();
    let weighted = FESequence::from_fn(&r, PrimeSet::all(), "n q^(n-1) [n]_q", move |n| {
        let mut c = vec![0i64; 2 * n as usize - 1];
        for slot in c.iter_mut().skip(n as usize - 1) {
            *slot = n as i64;
        }
        poly(&ring, &c)
    });
    fe_holds(&weighted, 200)?;
    let seeded = e2s(from_seeds(&r, &set(&[2, 5, 7]), seeds_257()))?;
    let cases = [
        ("quantum", quantum_sequence(&r, PrimeSet::all())),
        ("monomial", monomial_sequence(&r)),
        ("weighted", weighted),
        ("257", seeded),
    ];
    for (name, f) in cases {
        let d = e2s(decompose(&f, 200))?;
        same_values(&e2s(d.reassemble())?, &f, 200).map_err(|e| format!("{name}: {e}"))?;
        for (&m, lm) in &d.lambda {
            for (&n, ln) in &d.lambda {
                if let Some(lmn) = d.lambda.get(&(m * n)) {
                    ensure(*lmn == lm * ln, || {
                        format!("{name}: lambda not multiplicative at ({m},{n})")
                    })?;
                }
            }
        }
        for (n, g) in e2s(d.g_table())? {
            ensure(g.constant_term().is_one(), || format!("{name}: g_{n}(0) != 1"))?;
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    let r = qq();
    let quantum = quantum_sequence(&r, PrimeSet::all());
    for t in [2u64, 3, 5] {
        let f = e2s(dilate_sequence(&quantum, t))?;
        fe_holds(&f, 64)?;
        for n in 1..=64 {
            ensure(e2s(f.eval(n))? == ones(&r, n, t), || format!("t = {t}, n = {n}"))?;
        }
    }
    let identity = identity_sequence(&r, PrimeSet::all());
    same_values(&e2s(reciprocal_sequence(&monomial_sequence(&r)))?, &identity, 64)?;
    same_values(&e2s(reciprocal_sequence(&quantum))?, &quantum, 64)
}

fn criterion_7() -> Check {
    let c2 = Ring::new(RingDescriptor::Cyclotomic(2)).unwrap();
    let minus = c2.from_i64(-1);
    let f = e2s(zeta_scaled_sequence(&set(&[3]), &minus))?;
    fe_holds(&f, 81)?;
    let refused = zeta_scaled_sequence(&set(&[2]), &minus);
    ensure(matches!(refused, Err(Error::ZetaNotAdmissible { .. })), || {
        "P = {2} not refused".into()
    })?;
    let f2 = poly(&c2, &[1, -1]);
    let direct = e2s(poly_mul(&f2, &e2s(dilate(&f2, 2))?))?;
    ensure(direct == poly(&c2, &[1, -1, -1, 1]), || {
        format!("f_2 f_2(q^2) = {direct}")
    })?;
    ensure(direct != poly(&c2, &[1, -1, 1, -1]), || {
        "expansion equals [4]_(-q)".into()
    })?;

    let c4 = Ring::new(RingDescriptor::Cyclotomic(4)).unwrap();
    let c3 = Ring::new(RingDescriptor::Cyclotomic(3)).unwrap();
    let c6 = Ring::new(RingDescriptor::Cyclotomic(6)).unwrap();
    let cases = [
        (set(&[3]), minus.clone(), true),
        (set(&[2]), minus.clone(), false),
        (set(&[5, 13]), c4.zeta().unwrap(), true),
        (set(&[3, 7]), c3.zeta().unwrap(), false),
        (set(&[7, 13]), c6.zeta().unwrap(), true),
    ];
    for (p, zeta, expected) in cases {
        let v = e2s(zeta_admissibility(&p, &zeta, 1000))?;
        let exhaustive = e2s(enumerate_semigroup(&p, 1000))?
            .into_iter()
            .all(|m| zeta.pow(m - 1).is_one());
        ensure(v.admissible == expected && exhaustive == expected, || {
            format!(
                "P = {p}, zeta = {zeta}: verdict {}, exhaustive {exhaustive}",
                v.admissible
            )
        })?;
    }
    Ok(())
}

fn criterion_8() -> Check {
    let gf2 = Ring::new(RingDescriptor::PrimeField(2)).unwrap();
    let psi = poly(&gf2, &[1, 1, 0, 1]);
    let frob = e2s(poly_mul(&psi, &psi))?;
    ensure(frob == poly(&gf2, &[1, 0, 1, 0, 0, 0, 1]), || format!("psi^2 = {frob}"))?;
    let base = quantum_sequence(&gf2, set(&[2]));
    let f = e2s(psi_substitute_sequence(&base, &psi))?;
    fe_holds(&f, 32)?;
    ensure(e2s(f.eval(4))? == poly(&gf2, &[0, 0, 0, 1, 0, 1, 0, 1, 0, 1]), || {
        "f_4".into()
    })
}

fn criterion_9() -> Check {
    let r = qq();
    let p = set(&[2, 3]);
    let f = e2s(restrict_sequence(&quantum_sequence(&r, PrimeSet::all()), &p))?;
    let g = e2s(restrict_sequence(&monomial_sequence(&r), &p))?;
    let h = f.clone();
    let fg = e2s(product_sequence(&f, &g))?;
    fe_holds(&fg, 100)?;
    let recovered = e2s(quotient_sequence(&fg, &f))?;
    fe_holds(&recovered, 100)?;
    same_values(&recovered, &g, 100)?;
    let lhs = e2s(rational_quotient(&f, &g))?;
    let rhs = e2s(rational_quotient(
        &e2s(product_sequence(&f, &h))?,
        &e2s(product_sequence(&g, &h))?,
    ))?;
    ensure(e2s(lhs.equals_up_to(&rhs, 100))?, || "F/G != FH/GH".into())
}

fn criterion_10() -> Check {
    let r = qq();
    let outcome = e2s(uniqueness_oracle(12))?;
    ensure(outcome.is_unique(), || format!("{} families", outcome.families.len()))?;
    let family = &outcome.families[0];
    ensure(family.a == BigRational::from_integer(1.into()), || {
        format!("a = {}", family.a)
    })?;
    for (&n, c) in &family.polys {
        let as_poly = Polynomial::new(&r, c.iter().map(|x| r.from_rational(x).unwrap()).collect()).unwrap();
        ensure(as_poly == ones(&r, n, 1), || format!("f_{n} = {as_poly}"))?;
    }
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = qfe::cli::run(["qfe", "oracle", "--upto", "12"], &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    ensure(code == 0, || format!("exit {code}"))?;
    ensure(
        text.contains("solutions: 1\n") && text.contains("family 1: a = 1\n"),
        || text.clone(),
    )
}

fn criterion_11() -> Check {
    let r = qq();
    for m in 1..=100u64 {
        for n in 1..=100u64 {
            let sum = e2s(oplus(&ones(&r, m, 1), &ones(&r, n, 1), m))?;
            ensure(sum == ones(&r, m + n, 1), || format!("[{m}] + q^{m} [{n}]"))?;
        }
    }
    for h in [poly(&r, &[1]), poly(&r, &[1, 1]), poly(&r, &[3, 0, -1])] {
        let seq = additive_sequence(h.clone());
        ensure(e2s(verify_additive(&seq, 60))?.is_none(), || format!("h = {h}"))?;
        for n in 1..=60 {
            let expected = e2s(poly_mul(&h, &ones(&r, n, 1)))?;
            ensure(e2s(seq.eval(n))? == expected, || format!("h = {h}, n = {n}"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [fn() -> Check; 11] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    ];
    let mut failed = 0;
    for (i, check) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(()) => println!("criterion {}: PASS", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
