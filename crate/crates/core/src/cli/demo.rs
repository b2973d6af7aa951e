//! Named end-to-end scenarios. Each prints one line per check and reports
//! whether all of them passed.

use std::collections::BTreeMap;
use std::io::{self, Write};

use num_traits::Zero;

use crate::analyze::{decompose, verify_additive, verify_fe, zeta_admissibility};
use crate::feseq::{
    additive_sequence, from_seeds, identity_sequence, monomial_sequence, oplus, otimes, psi_substitute_sequence,
    quantum_sequence, reciprocal_sequence, zeta_scaled_sequence, FESequence,
};
use crate::poly::{dilate, exact_div, quantum_integer, scaled_quantum_integer, Polynomial};
use crate::ring::{Ring, RingDescriptor};
use crate::semigroup::{support_members, PrimeSet};
use crate::Error;

pub const NAMES: [&str; 5] = [
    "nathanson-257",
    "zeta-neg1-p3",
    "additive",
    "frobenius-gf2",
    "reciprocal",
];

/// The seeds `h_2`, `h_5`, `h_7` of the `{2, 5, 7}` example over `Q`.
pub fn seeds_257() -> BTreeMap<u64, Polynomial> {
    let ring = Ring::rational();
    BTreeMap::from([
        (2, Polynomial::from_i64(&ring, &[1, -1, 1])),
        (5, Polynomial::from_i64(&ring, &[1, -1, 0, 1, -1, 1, 0, -1, 1])),
        (
            7,
            Polynomial::from_i64(&ring, &[1, -1, 0, 1, -1, 0, 1, 0, -1, 1, 0, -1, 1]),
        ),
    ])
}

pub fn sequence_257() -> crate::Result<FESequence> {
    from_seeds(&Ring::rational(), &PrimeSet::new([2, 5, 7])?, seeds_257())
}

struct Narrator<'a> {
    out: &'a mut dyn Write,
    ok: bool,
}

impl Narrator<'_> {
    fn say(&mut self, text: impl AsRef<str>) -> io::Result<()> {
        writeln!(self.out, "{}", text.as_ref())
    }

    fn check(&mut self, label: &str, result: crate::Result<bool>) -> io::Result<()> {
        let (mark, extra) = match result {
            Ok(true) => ("ok", String::new()),
            Ok(false) => ("FAIL", String::new()),
            Err(e) => ("FAIL", format!(" ({e})")),
        };
        if mark != "ok" {
            self.ok = false;
        }
        writeln!(self.out, "[{mark}] {label}{extra}")
    }
}

pub fn run(name: &str, out: &mut dyn Write) -> io::Result<bool> {
    let mut nar = Narrator { out, ok: true };
    match name {
        "nathanson-257" => nathanson_257(&mut nar)?,
        "zeta-neg1-p3" => zeta_neg1_p3(&mut nar)?,
        "additive" => additive(&mut nar)?,
        "frobenius-gf2" => frobenius_gf2(&mut nar)?,
        "reciprocal" => reciprocal(&mut nar)?,
        other => {
            nar.say(format!("unknown demo {other:?}"))?;
            return Ok(false);
        }
    }
    let ok = nar.ok;
    nar.say(if ok { "all checks passed" } else { "some checks failed" })?;
    Ok(ok)
}

fn nathanson_257(nar: &mut Narrator) -> io::Result<()> {
    nar.say("P = {2,5,7} over Q")?;
    for (p, h) in seeds_257() {
        nar.say(format!("h_{p} = {h}"))?;
    }
    let seq = match sequence_257() {
        Ok(s) => s,
        Err(e) => return nar.check("seeds commute", Err(e)),
    };
    nar.check("seeds commute", Ok(true))?;
    if let Ok(f10) = seq.eval(10) {
        nar.say(format!("f_10 = {f10}"))?;
    }
    nar.check(
        "equation, commutativity and support hold up to 100",
        verify_fe(&seq, 100).map(|r| r.fe_ok && r.commutativity_ok && r.support_ok),
    )?;
    let ring = Ring::rational();
    let closed_form = || -> crate::Result<bool> {
        for n in support_members(seq.support(), 500) {
            let qn = quantum_integer(n, &ring)?;
            let expected = exact_div(&dilate(&qn, 3)?, &qn)?;
            let value = seq.eval(n)?;
            if value != expected || value.degree().finite() != Some(2 * (n as usize - 1)) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    nar.check(
        "f_n = [n]_(q^3) / [n]_q with degree 2(n - 1) on S(P) up to 500",
        closed_form(),
    )?;
    match decompose(&seq, 500) {
        Ok(d) => {
            nar.say(format!("t = {}", d.t))?;
            let trivial = d.t.is_zero() && d.lambda.values().all(|l| l.is_one());
            nar.check("t = 0 and lambda = 1", Ok(trivial))
        }
        Err(e) => nar.check("decomposition", Err(e)),
    }
}

fn zeta_neg1_p3(nar: &mut Narrator) -> io::Result<()> {
    let ring = match Ring::new(RingDescriptor::Cyclotomic(2)) {
        Ok(r) => r,
        Err(e) => return nar.check("ring Q(zeta_2)", Err(e)),
    };
    let minus_one = ring.from_i64(-1);
    nar.say("zeta = -1 in Q(zeta_2)")?;
    let threes = PrimeSet::new([3]).expect("3 is prime");
    match zeta_scaled_sequence(&threes, &minus_one) {
        Ok(seq) => {
            nar.check("P = {3}: [n]_(-q) accepted", Ok(true))?;
            if let Ok(f9) = seq.eval(9) {
                nar.say(format!("f_9 = {f9}"))?;
            }
            nar.check(
                "P = {3}: equation holds up to 81",
                verify_fe(&seq, 81).map(|r| r.fe_ok && r.support_ok),
            )?;
        }
        Err(e) => nar.check("P = {3}: [n]_(-q) accepted", Err(e))?,
    }
    let twos = PrimeSet::new([2]).expect("2 is prime");
    let refused = matches!(
        zeta_scaled_sequence(&twos, &minus_one),
        Err(Error::ZetaNotAdmissible { .. })
    );
    nar.check("P = {2}: [n]_(-q) refused", Ok(refused))?;
    let direct = || -> crate::Result<bool> {
        let f2 = scaled_quantum_integer(2, &minus_one)?;
        let lhs = otimes(&f2, &f2, 2)?;
        let rhs = scaled_quantum_integer(4, &minus_one)?;
        Ok(lhs != rhs)
    };
    nar.check("f_2(q) f_2(q^2) != [4]_(-q)", direct())?;
    for (primes, zeta) in [(&threes, &minus_one), (&twos, &minus_one)] {
        let verdict = zeta_admissibility(primes, zeta, 1000);
        let label = format!("P = {primes}: algebraic and exhaustive verdicts agree up to 1000");
        nar.check(&label, verdict.map(|_| true))?;
    }
    Ok(())
}

fn additive(nar: &mut Narrator) -> io::Result<()> {
    let ring = Ring::rational();
    let sums = || -> crate::Result<bool> {
        for m in 1..=100 {
            let qm = quantum_integer(m, &ring)?;
            for n in 1..=100 {
                if oplus(&qm, &quantum_integer(n, &ring)?, m)? != quantum_integer(m + n, &ring)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    nar.check("[m]_q + q^m [n]_q = [m + n]_q for m, n <= 100", sums())?;
    let h = Polynomial::from_i64(&ring, &[1, 1]);
    nar.say(format!("h = {h}"))?;
    let seq = additive_sequence(h);
    nar.check(
        "f_(m+n) = f_m + q^m f_n for m + n <= 60",
        verify_additive(&seq, 60).map(|c| c.is_none()),
    )?;
    if let Ok(f4) = seq.eval(4) {
        nar.say(format!("f_4 = {f4}"))?;
    }
    Ok(())
}

fn frobenius_gf2(nar: &mut Narrator) -> io::Result<()> {
    let ring = match Ring::new(RingDescriptor::PrimeField(2)) {
        Ok(r) => r,
        Err(e) => return nar.check("ring GF(2)", Err(e)),
    };
    let base = quantum_sequence(&ring, PrimeSet::new([2]).expect("2 is prime"));
    let psi = Polynomial::from_i64(&ring, &[1, 1, 0, 1]);
    nar.say(format!("GF(2), support S({{2}}), psi = {psi}"))?;
    match psi_substitute_sequence(&base, &psi) {
        Ok(seq) => {
            nar.check("psi(q)^2 = psi(q^2) accepted", Ok(true))?;
            if let Ok(f4) = seq.eval(4) {
                nar.say(format!("f_4 = {f4}"))?;
            }
            nar.check(
                "equation holds up to 32",
                verify_fe(&seq, 32).map(|r| r.fe_ok && r.support_ok),
            )
        }
        Err(e) => nar.check("psi(q)^2 = psi(q^2) accepted", Err(e)),
    }
}

fn values_equal(f: &FESequence, g: &FESequence, bound: u64) -> crate::Result<bool> {
    for n in 1..=bound {
        if f.eval(n)? != g.eval(n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn reciprocal(nar: &mut Narrator) -> io::Result<()> {
    let ring = Ring::rational();
    let monomial = monomial_sequence(&ring);
    let quantum = quantum_sequence(&ring, PrimeSet::all());
    let identity = identity_sequence(&ring, PrimeSet::all());
    nar.check(
        "reciprocal of q^(n-1) is 1 for n <= 64",
        reciprocal_sequence(&monomial).and_then(|r| values_equal(&r, &identity, 64)),
    )?;
    nar.check(
        "[n]_q is self-reciprocal for n <= 64",
        reciprocal_sequence(&quantum).and_then(|r| values_equal(&r, &quantum, 64)),
    )?;
    let seeded = sequence_257().and_then(|s| reciprocal_sequence(&s));
    nar.check(
        "reciprocal of the {2,5,7} sequence satisfies the equation up to 100",
        seeded.and_then(|s| verify_fe(&s, 100)).map(|r| r.fe_ok),
    )
}
