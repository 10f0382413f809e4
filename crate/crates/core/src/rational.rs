//! Exact rationals.
//!
//! `num_rational::BigRational` keeps numerator and denominator coprime with a
//! positive denominator after every operation, which is the normal form the
//! rest of the crate relies on.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats `q` the way the polynomial grammar reads it back: `n` or `n/d`.
pub fn format(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}

pub fn is_unit(q: &Rational) -> bool {
    !q.is_zero()
}

pub fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}
