//! The `qfe` command-line interface.
//!
//! Exit statuses: 0 success, 1 a mathematical check failed, 2 malformed input,
//! 3 seed commutativity failed.

pub mod demo;
pub mod seedfile;

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::analyze::{decompose, uniqueness_oracle, verify_fe, Decomposition, MAX_ORACLE_BOUND};
use crate::feseq::{
    assemble, constant_sequence, identity_sequence, monomial_sequence, quantum_sequence, FESequence, Lambda,
};
use crate::ring::{Ring, RingDescriptor};
use crate::semigroup::PrimeSet;
use seedfile::LoadError;

pub const MAX_UPTO: u64 = 2000;
pub const BUILTINS: [&str; 5] = ["quantum", "monomial", "identity", "constant2", "power7-third"];

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_COMMUTATIVITY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qfe", version, about = "Polynomial solutions of f_mn(q) = f_m(q) f_n(q^m)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a sequence from a seed file and print f_1..f_N as TSV.
    Construct {
        seed_file: PathBuf,
        #[arg(long, default_value_t = 64)]
        upto: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the functional equation, commutativity and support up to N.
    Verify {
        /// Seed file path or builtin name.
        source: String,
        #[arg(long, default_value_t = 64)]
        upto: u64,
        #[arg(long)]
        json: bool,
        /// Coefficient ring for builtins: rational, gfp:p or cyclotomic:d.
        #[arg(long)]
        ring: Option<String>,
    },
    /// Print t, lambda and the normalized sequence g.
    Decompose {
        source: String,
        #[arg(long, default_value_t = 64)]
        upto: u64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        ring: Option<String>,
    },
    /// Run a named scenario end to end.
    Demo {
        #[arg(value_parser = demo::NAMES)]
        name: String,
    },
    /// Solve the coefficient system forced by f_n(q) f_2(q^n) = f_2(q) f_n(q^2).
    Oracle {
        #[arg(long, default_value_t = 12)]
        upto: u64,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn malformed(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_MALFORMED,
            message: message.into(),
        }
    }

    fn check(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_CHECK_FAILED,
            message: message.into(),
        }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Failure {
        match e {
            LoadError::Malformed(m) => Failure::malformed(m),
            LoadError::Commutativity(m) => Failure {
                code: EXIT_COMMUTATIVITY,
                message: m,
            },
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::malformed(format!("i/o error: {e}"))
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_MALFORMED
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Construct {
            seed_file,
            upto,
            out: path,
        } => cmd_construct(&seed_file, upto, path, out),
        Command::Verify {
            source,
            upto,
            json,
            ring,
        } => cmd_verify(&source, upto, json, ring.as_deref(), out),
        Command::Decompose {
            source,
            upto,
            json,
            ring,
        } => cmd_decompose(&source, upto, json, ring.as_deref(), out, err),
        Command::Demo { name } => demo::run(&name, out)
            .map(|ok| if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
            .map_err(Failure::from),
        Command::Oracle { upto } => cmd_oracle(upto, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn check_upto(upto: u64, min: u64) -> Result<(), Failure> {
    if upto < min || upto > MAX_UPTO {
        return Err(Failure::malformed(format!(
            "--upto must lie in {min}..={MAX_UPTO}, got {upto}"
        )));
    }
    Ok(())
}

/// A builtin sequence by name over `ring`.
pub fn builtin(name: &str, ring: &Ring) -> Option<FESequence> {
    let seq = match name {
        "quantum" => quantum_sequence(ring, PrimeSet::all()),
        "monomial" => monomial_sequence(ring),
        "identity" => identity_sequence(ring, PrimeSet::all()),
        "constant2" => constant_sequence(ring, ring.from_i64(2)),
        "power7-third" => {
            let sevens = identity_sequence(ring, PrimeSet::new([7]).expect("7 is prime"));
            let third = BigRational::new(BigInt::from(1), BigInt::from(3));
            assemble(&third, Lambda::One, &sevens).expect("t = 1/3 is integral on powers of 7")
        }
        _ => return None,
    };
    Some(seq)
}

fn resolve(source: &str, ring: Option<&str>) -> Result<FESequence, Failure> {
    let descriptor = match ring {
        Some(text) => Some(
            text.parse::<RingDescriptor>()
                .and_then(RingDescriptor::validate)
                .map_err(|e| Failure::malformed(format!("--ring: {e}")))?,
        ),
        None => None,
    };
    if BUILTINS.contains(&source) {
        let ring = Ring::new(descriptor.unwrap_or(RingDescriptor::Rational))
            .map_err(|e| Failure::malformed(format!("--ring: {e}")))?;
        return Ok(builtin(source, &ring).expect("listed builtin"));
    }
    let seq = seedfile::load(std::path::Path::new(source))?;
    if let Some(d) = descriptor {
        if d != seq.ring().descriptor() {
            return Err(Failure::malformed(format!(
                "--ring {d} conflicts with the seed file ring {}",
                seq.ring().descriptor()
            )));
        }
    }
    Ok(seq)
}

/// The TSV table for `f_1..f_upto`.
pub fn render_table(seq: &FESequence, upto: u64) -> crate::Result<String> {
    let mut text = String::from("n\tin_support\tdegree\tpolynomial\n");
    for n in 1..=upto {
        let value = seq.eval(n)?;
        let in_support = seq.support().contains(n);
        let degree = match value.degree().finite() {
            Some(d) if in_support => d.to_string(),
            _ => "-".to_string(),
        };
        let _ = writeln!(text, "{n}\t{in_support}\t{degree}\t{value}");
    }
    Ok(text)
}

fn cmd_construct(seed_file: &std::path::Path, upto: u64, path: Option<PathBuf>, out: &mut dyn Write) -> Outcome {
    check_upto(upto, 1)?;
    let seq = seedfile::load(seed_file)?;
    let table = render_table(&seq, upto).map_err(|e| Failure::check(e.to_string()))?;
    match path {
        Some(p) => std::fs::write(&p, table).map_err(|e| Failure::malformed(format!("{}: {e}", p.display())))?,
        None => out.write_all(table.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(source: &str, upto: u64, json: bool, ring: Option<&str>, out: &mut dyn Write) -> Outcome {
    check_upto(upto, 2)?;
    let seq = resolve(source, ring)?;
    let report = verify_fe(&seq, upto).map_err(|e| Failure::check(e.to_string()))?;
    if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report.to_json()).expect("json")
        )?;
    } else {
        write!(out, "{report}")?;
    }
    Ok(if report.fe_ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Line-oriented text form of a decomposition.
pub fn render_decomposition(d: &Decomposition) -> crate::Result<String> {
    let mut text = String::new();
    let _ = writeln!(text, "bound: {}", d.bound);
    let _ = writeln!(text, "t: {}", d.t);
    text.push_str("n\tdelta\tlambda\tg\n");
    let g = d.g_table()?;
    for (n, delta) in &d.delta {
        let _ = writeln!(text, "{n}\t{delta}\t{}\t{}", d.lambda[n], g[n]);
    }
    Ok(text)
}

fn cmd_decompose(
    source: &str,
    upto: u64,
    json: bool,
    ring: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    check_upto(upto, 2)?;
    let seq = resolve(source, ring)?;
    let report = verify_fe(&seq, upto).map_err(|e| Failure::check(e.to_string()))?;
    if !report.fe_ok || !report.support_ok {
        write!(err, "{report}")?;
        return Err(Failure::check("verification failed; not decomposing"));
    }
    let d = decompose(&seq, upto).map_err(|e| Failure::check(e.to_string()))?;
    if json {
        let value = d.to_json().map_err(|e| Failure::check(e.to_string()))?;
        writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json"))?;
    } else {
        let text = render_decomposition(&d).map_err(|e| Failure::check(e.to_string()))?;
        out.write_all(text.as_bytes())?;
    }
    Ok(EXIT_OK)
}

fn cmd_oracle(upto: u64, out: &mut dyn Write) -> Outcome {
    if !(3..=MAX_ORACLE_BOUND).contains(&upto) {
        return Err(Failure::malformed(format!(
            "--upto must lie in 3..={MAX_ORACLE_BOUND}, got {upto}"
        )));
    }
    let outcome = uniqueness_oracle(upto).map_err(|e| Failure::check(e.to_string()))?;
    write!(out, "{outcome}")?;
    Ok(if outcome.is_unique() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
