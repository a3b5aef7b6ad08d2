//! Exact computations for rank-2 cluster algebras: mutations, denominator
//! vectors, mutation invariants and the Diophantine equations they define.

pub mod algebra;
pub mod cluster;
pub mod diophantine;
pub mod dvector;
pub mod error;
pub mod expr;
pub mod invariants;

pub use error::{Error, Result};

#[cfg(test)]
pub(crate) mod testutil {
    use crate::algebra::{Polynomial, RationalFunction};

    pub fn poly(s: &str) -> Polynomial {
        crate::expr::parse_polynomial(s).unwrap()
    }

    pub fn rf(s: &str) -> RationalFunction {
        crate::expr::parse_ratfunc(s).unwrap()
    }
}
