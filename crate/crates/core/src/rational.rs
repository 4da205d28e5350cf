//! Exact rational scalars and their canonical text form.
//!
//! Every coefficient in this crate is an arbitrary-precision rational.
//! Interfaces (manifold files, CLI output) carry rationals as strings,
//! `"p"` or `"p/q"` in lowest terms, never as floating point.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical text form: `"p"` when the denominator is 1, else `"p/q"` in
/// lowest terms with the sign on the numerator.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p"` or `"p/q"` (optional leading `-`). The denominator must be
/// nonzero; the result is reduced to lowest terms.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let numer: BigInt = num.parse().ok()?;
    let denom: BigInt = den.parse().ok()?;
    if denom.is_zero() {
        return None;
    }
    Some(Rational::new(numer, denom))
}

pub fn is_negative(q: &Rational) -> bool {
    q.numer().is_negative()
}
