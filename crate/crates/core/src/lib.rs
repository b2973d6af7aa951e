//! Exact arithmetic for sequences of polynomials satisfying the quantum-integer
//! multiplication equation `f_{mn}(q) = f_m(q) * f_n(q^m)` and its additive
//! counterpart `f_m(q) + q^m f_n(q)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`ring`]: exact scalars over the rationals, prime fields and cyclotomic fields.
//! * [`poly`]: dense univariate polynomials over those rings.
//! * [`semigroup`]: prime semigroups `S(P)`, factorization and `Omega(n)`.
//! * [`feseq`]: lazily evaluated sequences and the constructions that preserve the equation.
//! * [`analyze`]: verification, degree laws, canonical decomposition and classification.
//! * [`cli`]: the `qfe` command-line tool.

pub mod analyze;
pub mod cli;
mod dense;
pub mod error;
pub mod feseq;
pub mod poly;
pub mod ring;
pub mod semigroup;

pub use error::{Error, Result};
pub use feseq::{FESequence, Lambda, RationalSequence};
pub use poly::{Degree, Polynomial};
pub use ring::{Ring, RingDescriptor, Scalar};
pub use semigroup::{Factorization, PrimeSet};
