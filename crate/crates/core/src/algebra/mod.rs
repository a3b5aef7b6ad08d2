//! Exact arithmetic in `Q[x1, x2]`, its Laurent localization and its fraction
//! field.

pub mod division;
pub mod laurent;
pub mod poly;
pub mod ratfunc;

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;

pub use division::poly_exact_div;
pub use laurent::{laurent_normalize, LaurentFraction};
pub use poly::{Monomial, Polynomial};
pub use ratfunc::{ratfunc_equal, ratfunc_substitute, RationalFunction};

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
