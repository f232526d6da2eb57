//! Exact arithmetic for words, commutative monomials and polynomials over Q,
//! together with the admissible monomial orders used throughout the crate.

mod monomial;
mod order;
mod poly;

pub use monomial::{CommMonomial, Monomial, Word};
pub use order::{MonomialOrder, OrderKind};
pub use poly::{leading, CommPoly, NcPoly, PolyDisplay, Polynomial};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational coefficient.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p` or `p/q` (optionally signed).
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(Scalar::new(n, d))
        }
        None => text.parse::<BigInt>().ok().map(Scalar::from_integer),
    }
}
