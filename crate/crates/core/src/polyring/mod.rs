//! Exact sparse polynomials and truncated power series over the rationals.
//!
//! Coefficients are [`num_rational::BigRational`], always in lowest terms.
//! A [`TruncatedSeries`] is a power series known modulo `m^N`, where `m` is
//! the maximal ideal at the origin; all series arithmetic re-truncates.

mod map;
mod monomial;
mod parse;
mod poly;
mod series;

use num_bigint::BigInt;

pub use map::CoordinateMap;
pub use monomial::Monomial;
pub use parse::{parse_poly, ParseError};
pub use poly::Polynomial;
pub use series::TruncatedSeries;

pub type Rational = num_rational::BigRational;

/// Truncation order used when a caller does not pick one.
pub const DEFAULT_ORDER: u32 = 16;

/// `mult(f)`: the largest `q` with `f` in `m^q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Finite(u32),
    /// The zero polynomial.
    Infinite,
    /// A truncated series whose known terms all vanish: only `f` in `m^N`
    /// is certified.
    AtLeast(u32),
}

impl Multiplicity {
    pub fn finite(self) -> Option<u32> {
        match self {
            Multiplicity::Finite(d) => Some(d),
            _ => None,
        }
    }

    /// A lower bound usable in comparisons (`u32::MAX` for infinity).
    pub fn lower_bound(self) -> u32 {
        match self {
            Multiplicity::Finite(d) | Multiplicity::AtLeast(d) => d,
            Multiplicity::Infinite => u32::MAX,
        }
    }
}

impl std::fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Multiplicity::Finite(d) => write!(f, "{d}"),
            Multiplicity::Infinite => write!(f, "inf"),
            Multiplicity::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable index {var} out of range for {nvars} variables")]
    VarOutOfRange { var: usize, nvars: usize },
    #[error("shape mismatch: expected {expected} variables, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("image of x{} has a nonzero constant term", var + 1)]
    NonzeroConstantImage { var: usize },
    #[error("square root needs a series with constant term 1")]
    SqrtConstantTerm,
    #[error("series is not a unit")]
    NotAUnit,
    #[error("linear part of the map is singular")]
    NotAnAutomorphism,
}

/// `f(map)` truncated to degrees `< order`.
pub fn substitute(f: &Polynomial, map: &CoordinateMap, order: u32) -> Result<TruncatedSeries, PolyError> {
    let images: Vec<Polynomial> = map.images().iter().map(|s| s.poly().clone()).collect();
    f.substitute(&images, order.min(map.order()))
}

/// `binom(n, k)`, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
