//! Powerful numbers, Pell equations, bounded integral-point search, and an
//! exhaustive verification harness around consecutive powerful triples of the
//! form x^3 - 1 = p^3 y^2, x^3, x^3 + 1 = q^3 z^2.
//!
//! Layout:
//! - [`arith`]: exact bignum primitives (roots, primality, factorization).
//! - [`powerful`]: the powerful-number predicate, a^2 b^3 decomposition,
//!   streaming enumeration, consecutive-run detection, Pell-derived pairs.
//! - [`pell`]: continued fractions, fundamental solutions, generalized Pell
//!   class representatives, and second-order recurrences.
//! - [`curves`]: the quartic-to-Weierstrass point transform and a bounded
//!   integral-point searcher with a registry of known curves.
//! - [`harness`]: executable verification suites (square gaps, valuations,
//!   gcd identities, the main non-existence search, sequence collisions).
//! - [`cli`]: the `squareful` command-line front end.

pub mod arith;
pub mod cli;
pub mod curves;
pub mod error;
pub mod harness;
pub mod pell;
pub mod powerful;

pub use error::{Error, Result};
