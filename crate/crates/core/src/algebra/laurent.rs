use num_traits::One;

use super::division::poly_exact_div;
use super::poly::{Monomial, Polynomial};
use super::ratfunc::RationalFunction;
use super::Rational;
use crate::error::{Error, Result};

/// `numerator / (x1^d1 * x2^d2)` with a numerator not divisible by `x1` or
/// `x2`. This is the canonical shape of a cluster variable, and `(d1, d2)` is
/// its denominator vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentFraction {
    numerator: Polynomial,
    d1: i64,
    d2: i64,
}

/// Factors the largest monomial out of `num` and adjusts the exponents.
pub fn laurent_normalize(num: Polynomial, d1: i64, d2: i64) -> Result<LaurentFraction> {
    if num.is_zero() {
        return Err(Error::ZeroNumerator);
    }
    let content = num.monomial_content();
    let numerator = num.div_monomial(content).expect("content divides every term");
    Ok(LaurentFraction {
        numerator,
        d1: d1 - content.e1 as i64,
        d2: d2 - content.e2 as i64,
    })
}

impl LaurentFraction {
    pub fn new(num: Polynomial, d1: i64, d2: i64) -> Result<Self> {
        laurent_normalize(num, d1, d2)
    }

    pub fn x1() -> Self {
        LaurentFraction { numerator: Polynomial::one(), d1: -1, d2: 0 }
    }

    pub fn x2() -> Self {
        LaurentFraction { numerator: Polynomial::one(), d1: 0, d2: -1 }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    /// Denominator exponents `(d1, d2)`.
    pub fn denominator_exponents(&self) -> (i64, i64) {
        (self.d1, self.d2)
    }

    /// Splits `x1^e1 x2^e2` (signed exponents) into a numerator monomial and a
    /// denominator monomial.
    fn split(e1: i64, e2: i64) -> (Monomial, Monomial) {
        let pos = Monomial::new(e1.max(0) as u32, e2.max(0) as u32);
        let neg = Monomial::new((-e1).max(0) as u32, (-e2).max(0) as u32);
        (pos, neg)
    }

    pub fn to_ratfunc(&self) -> RationalFunction {
        let (den, num_shift) = Self::split(self.d1, self.d2);
        RationalFunction::new(
            self.numerator.mul_monomial(num_shift),
            Polynomial::monomial(Rational::one(), den),
        )
        .expect("monomial denominator is nonzero")
    }

    /// `self^e + 1`, returned as `(polynomial, a1, a2)` meaning
    /// `polynomial / (x1^a1 x2^a2)` with `a1, a2 >= 0`.
    fn pow_plus_one(&self, e: u32) -> (Polynomial, u32, u32) {
        let p = self.numerator.pow(e);
        let ed1 = self.d1 * e as i64;
        let ed2 = self.d2 * e as i64;
        let a1 = ed1.max(0);
        let a2 = ed2.max(0);
        // p * x1^(a1 - ed1) x2^(a2 - ed2) + x1^a1 x2^a2
        let lifted = p.mul_monomial(Monomial::new((a1 - ed1) as u32, (a2 - ed2) as u32));
        let sum = &lifted + &Polynomial::pure(a1 as u32, a2 as u32);
        (sum, a1 as u32, a2 as u32)
    }

    /// The exchange `(other^e + 1) / self`, computed by exact division.
    pub fn exchange(&self, other: &LaurentFraction, e: u32) -> Result<LaurentFraction> {
        let (sum, a1, a2) = other.pow_plus_one(e);
        let quotient = poly_exact_div(&sum, &self.numerator)?;
        // (sum / x^a) * x^d / N  =  quotient * x^(d - a)
        laurent_normalize(quotient, a1 as i64 - self.d1, a2 as i64 - self.d2)
    }

    /// Evaluates at a point with nonzero coordinates.
    pub fn eval(&self, x1: &Rational, x2: &Rational) -> Rational {
        let n = self.numerator.eval(x1, x2);
        let scale = pow_signed(x1, -self.d1) * pow_signed(x2, -self.d2);
        n * scale
    }

    pub fn is_integral(&self) -> bool {
        self.numerator.is_integral()
    }
}

fn pow_signed(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

impl std::fmt::Display for LaurentFraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_ratfunc())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::poly as p;

    #[test]
    fn normalize_strips_monomial_content() {
        let f = laurent_normalize(p("x1*x2^2 + x1^2*x2"), 2, 2).unwrap();
        assert_eq!(f.numerator(), &p("x1 + x2"));
        assert_eq!(f.denominator_exponents(), (1, 1));
    }

    #[test]
    fn normalize_keeps_normal_input() {
        let f = laurent_normalize(p("x2 + 1"), 1, 0).unwrap();
        assert_eq!(f.numerator(), &p("x2 + 1"));
        assert_eq!(f.denominator_exponents(), (1, 0));
    }

    #[test]
    fn normalize_pure_monomial() {
        let f = laurent_normalize(p("x1^2*x2^3"), 0, 0).unwrap();
        assert!(f.numerator().is_one());
        assert_eq!(f.denominator_exponents(), (-2, -3));
    }

    #[test]
    fn normalize_rejects_zero() {
        assert_eq!(laurent_normalize(Polynomial::zero(), 0, 0), Err(Error::ZeroNumerator));
    }

    #[test]
    fn normalize_is_idempotent() {
        let f = laurent_normalize(p("x1^3*x2 + 5*x1^2*x2^4"), 1, -2).unwrap();
        let g = laurent_normalize(f.numerator().clone(), f.d1, f.d2).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn exchange_a2() {
        // (x2 + 1) / x1
        let x1 = LaurentFraction::x1();
        let x2 = LaurentFraction::x2();
        let y = x1.exchange(&x2, 1).unwrap();
        assert_eq!(y.numerator(), &p("x2 + 1"));
        assert_eq!(y.denominator_exponents(), (1, 0));
        // involution
        let back = y.exchange(&x2, 1).unwrap();
        assert_eq!(back, x1);
    }
}
