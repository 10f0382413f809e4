//! Exact sparse multivariate polynomials over Q.

mod context;
mod gcd;
mod monomial;
mod parse;
mod polynomial;

pub use context::VarContext;
pub use gcd::{gcd, gcd_all};
pub use monomial::Monomial;
pub use parse::{parse_poly, parse_with_bindings};
pub use polynomial::{ArithOp, Polynomial};
