//! Exact computations with locally nilpotent derivations.
//!
//! The crate works over polynomial rings `R[X, Y, ...]` where the coefficient
//! ring `R` is generated over Q by designated coefficient variables, possibly
//! modulo relations among them (for example `Q[a, b]/(a^2 + b^2 - 1)`).
//!
//! * [`poly`]: polynomials, parsing, gcd.
//! * [`groebner`]: Groebner bases, ideal and subalgebra membership, elimination.
//! * [`derivation`]: derivations, nilpotency certificates, irreducibility.
//! * [`dixmier`]: local slices and the Dixmier map.
//! * [`linalg`]: matrices over Q and Q[t], unimodular completion.
//! * [`certkit`]: kernel certificates, Jacobian rank, rank witnesses.
//! * [`job`]: JSON job files, the built-in example corpus and reports.

pub mod certkit;
pub mod derivation;
pub mod dixmier;
pub mod error;
pub mod groebner;
pub mod job;
pub mod linalg;
pub mod poly;
pub mod rational;

pub use derivation::Derivation;
pub use error::{Error, Result};
pub use groebner::{Budget, GroebnerBasis, MonomialOrder};
pub use poly::{Polynomial, VarContext};
pub use rational::Rational;
