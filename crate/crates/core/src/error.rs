//! Crate-wide error type.

use num_bigint::{BigInt, BigUint};
use thiserror::Error;

/// Errors produced by the arithmetic, Pell, curve, and harness layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A factorization ran out of rho budget. The cofactor is reported so the
    /// caller can retry with a larger budget or fail closed; a wrong answer is
    /// never returned.
    #[error("factorization of {n} stalled on composite cofactor {cofactor} (rho budget exhausted)")]
    Unfactored { n: BigUint, cofactor: BigUint },

    /// `padic_valuation` was called with a composite modulus.
    #[error("{0} is not prime")]
    NotPrime(BigUint),

    /// `powerful_decomposition` was called on a non-powerful number.
    #[error("{0} is not a powerful number")]
    NotPowerful(BigUint),

    /// Continued-fraction expansion of a perfect square does not exist.
    #[error("{0} is a perfect square; x^2 - {0}y^2 = 1 has no nontrivial solution")]
    SquareDiscriminant(BigUint),

    /// The class-representative search interval for x^2 - D y^2 = N exceeds
    /// the configured ceiling.
    #[error("class search bound {bound} exceeds ceiling {ceiling}")]
    SearchBoundExceeded { bound: BigUint, ceiling: u64 },

    /// A point handed to the quartic-to-Weierstrass transform does not lie on
    /// the quartic. Boxed to keep the error enum small.
    #[error("({}, {}) is not on the quartic y^2 = {}x^4 + {}x^2 + {}", .0.x, .0.y, .0.a, .0.c, .0.e)]
    PointNotOnQuartic(Box<OffQuartic>),

    /// The transform requires x != 0.
    #[error("the quartic-to-Weierstrass point map requires x != 0")]
    ZeroQuarticX,

    /// Membership search over a recurrence whose monotonicity is not
    /// established would not be guaranteed to terminate.
    #[error("recurrence is not certified strictly increasing; membership search refused")]
    NotMonotonic,

    /// Generic argument rejection for CLI-facing entry points.
    #[error("{0}")]
    InvalidArgument(String),
}

/// The quartic and the rejected point, for [`Error::PointNotOnQuartic`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffQuartic {
    pub a: BigInt,
    pub c: BigInt,
    pub e: BigInt,
    pub x: BigInt,
    pub y: BigInt,
}

pub type Result<T> = std::result::Result<T, Error>;
