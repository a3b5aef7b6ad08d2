//! Exact lowest terms of cluster variables without expanding them.
//!
//! A Laurent polynomial embeds in the iterated Laurent series field
//! `Q((x2))((x1))`, where "lowest term under lex order with x1 first" is a
//! valuation: it is multiplicative and survives exact division. The same
//! holds with the roles of the variables swapped. The exchange relation
//! `(y^e + 1) / x` therefore only needs the lowest term of `y^e` compared
//! against the constant 1. When the two tie and their coefficients cancel
//! the tracker gives up with `Cancellation`.
//!
//! The x1-first lowest term carries the smallest `x1` exponent, i.e. `-d1`,
//! and the x2-first one carries `-d2`. The numerator's constant term is the
//! coefficient of `x1^-d1 x2^-d2`, which is the x1-first lowest term when its
//! `x2` exponent equals `-d2` and zero otherwise.

use num_traits::{One, Zero};

use super::{tree_step, ExchangeData};
use crate::algebra::{LaurentFraction, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub e1: i64,
    pub e2: i64,
    pub coeff: Rational,
}

impl Term {
    fn one() -> Self {
        Term { e1: 0, e2: 0, coeff: Rational::one() }
    }

    fn key(&self, x1_first: bool) -> (i64, i64) {
        if x1_first {
            (self.e1, self.e2)
        } else {
            (self.e2, self.e1)
        }
    }

    fn pow(&self, e: u32) -> Term {
        Term {
            e1: self.e1 * e as i64,
            e2: self.e2 * e as i64,
            coeff: num_traits::pow(self.coeff.clone(), e as usize),
        }
    }

    fn div(&self, other: &Term) -> Term {
        Term {
            e1: self.e1 - other.e1,
            e2: self.e2 - other.e2,
            coeff: &self.coeff / &other.coeff,
        }
    }

    fn plus_one(self, x1_first: bool) -> Result<Term> {
        match self.key(x1_first).cmp(&(0, 0)) {
            std::cmp::Ordering::Less => Ok(self),
            std::cmp::Ordering::Greater => Ok(Term::one()),
            std::cmp::Ordering::Equal => {
                let coeff = self.coeff + Rational::one();
                if coeff.is_zero() {
                    return Err(Error::Cancellation("lowest term of y^e + 1 cancels".into()));
                }
                Ok(Term { coeff, ..Term::one() })
            }
        }
    }
}

/// Lowest terms of one cluster variable under both lex orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerms {
    pub x1_first: Term,
    pub x2_first: Term,
}

impl LeadingTerms {
    pub fn x1() -> Self {
        let t = Term { e1: 1, e2: 0, coeff: Rational::one() };
        LeadingTerms { x1_first: t.clone(), x2_first: t }
    }

    pub fn x2() -> Self {
        let t = Term { e1: 0, e2: 1, coeff: Rational::one() };
        LeadingTerms { x1_first: t.clone(), x2_first: t }
    }

    /// Reads the lowest terms off an expanded Laurent fraction.
    pub fn of(f: &LaurentFraction) -> Self {
        let (d1, d2) = f.denominator_exponents();
        let terms = f.numerator().terms();
        let pick = |x1_first: bool| {
            let (m, c) = terms
                .iter()
                .min_by_key(|(m, _)| if x1_first { (m.e1, m.e2) } else { (m.e2, m.e1) })
                .expect("numerator is nonzero");
            Term { e1: m.e1 as i64 - d1, e2: m.e2 as i64 - d2, coeff: c.clone() }
        };
        LeadingTerms { x1_first: pick(true), x2_first: pick(false) }
    }

    /// Lowest terms of `(other^e + 1) / self`.
    pub fn exchange(&self, other: &LeadingTerms, e: u32) -> Result<Self> {
        let x1_first = other.x1_first.pow(e).plus_one(true)?.div(&self.x1_first);
        let x2_first = other.x2_first.pow(e).plus_one(false)?.div(&self.x2_first);
        Ok(LeadingTerms { x1_first, x2_first })
    }

    pub fn dvector(&self) -> (i64, i64) {
        (-self.x1_first.e1, -self.x2_first.e2)
    }

    /// Constant term of the numerator `x1^d1 x2^d2 * f`.
    pub fn numerator_constant_term(&self) -> Rational {
        let (_, d2) = self.dvector();
        if self.x1_first.e2 == -d2 {
            self.x1_first.coeff.clone()
        } else {
            Rational::zero()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedVariable {
    pub position: i64,
    pub vars: [LeadingTerms; 2],
}

/// Follows `word` from the initial seed, keeping only lowest terms.
pub fn track_walk(exchange: ExchangeData, word: &[u8]) -> Result<Vec<TrackedVariable>> {
    let mut out = vec![TrackedVariable { position: 0, vars: [LeadingTerms::x1(), LeadingTerms::x2()] }];
    let mut ex = exchange;
    for &d in word {
        let last = out.last().unwrap();
        let e = ex.exponent(d);
        let mut vars = last.vars.clone();
        let (k, other) = if d == 1 { (0, 1) } else { (1, 0) };
        vars[k] = last.vars[k].exchange(&last.vars[other], e)?;
        out.push(TrackedVariable { position: tree_step(last.position, d), vars });
        ex = ex.mutate();
    }
    Ok(out)
}
