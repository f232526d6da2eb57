//! Gröbner bases in commutative and free algebras over Q, Anick chains,
//! the Anick resolution of the base field, Hilbert series and Tor.

pub mod algebra;
pub mod chains;
pub mod commutative;
pub mod error;
pub mod hilbert;
pub mod linalg;
pub mod matcher;
pub mod noncommutative;
pub mod presentation;
pub mod resolution;
pub mod series;

pub use algebra::{CommMonomial, CommPoly, Monomial, MonomialOrder, NcPoly, OrderKind, Polynomial, Scalar, Word};
pub use error::{AlgebraError, ParseError, Result};
pub use presentation::{free_product, make_bn, parse_presentation, AlgebraKind, Generator, Presentation, Relations};
