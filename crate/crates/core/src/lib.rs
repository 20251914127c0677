//! Exact computation and cross-checking of singularity invariants attached to
//! a polynomial `f`: log canonical thresholds of `(f) + J_f^2`, Milnor
//! numbers, formal equivalences `f ~ f + g` for `g` in `J_f^2`, jet
//! contact-locus counts over finite fields, and exponential sums modulo
//! prime powers.

pub mod arcs;
pub mod budget;
pub mod equiv;
pub mod exec;
pub mod expsum;
pub mod jacobian;
pub mod lct;
pub mod linalg;
mod modular;
pub mod polyring;
pub mod randgen;

pub use exec::Execution;
pub use polyring::{parse_poly, CoordinateMap, Monomial, Multiplicity, Polynomial, Rational, TruncatedSeries};
