use std::fmt;

use num_traits::{One, Zero};

use super::division::poly_exact_div;
use super::poly::{Monomial, Polynomial};
use super::Rational;
use crate::error::{Error, Result};

/// `num / den` over `Q`. Stored with the common monomial content removed and
/// `den` scaled to a primitive integer polynomial whose lex-greatest
/// coefficient is positive. Fractions are not reduced by a polynomial gcd,
/// so equality goes through [`ratfunc_equal`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero(format!("({num}) / 0")));
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let a = num.monomial_content();
        let b = den.monomial_content();
        let g = Monomial::new(a.e1.min(b.e1), a.e2.min(b.e2));
        let (num, den) = if g == Monomial::ONE {
            (num, den)
        } else {
            (num.div_monomial(g).unwrap(), den.div_monomial(g).unwrap())
        };
        let scale = den.primitive_scale().expect("nonzero denominator");
        if scale.is_one() {
            return RationalFunction { num, den };
        }
        let inv = scale.recip();
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        RationalFunction { num: Polynomial::one(), den: Polynomial::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction { num: Polynomial::constant(c), den: Polynomial::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn x1() -> Self {
        Polynomial::x1().into()
    }

    pub fn x2() -> Self {
        Polynomial::x2().into()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The constant value, if `num` is a scalar multiple of `den`.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.num.is_zero() {
            return Some(Rational::zero());
        }
        if self.num.len() != self.den.len() {
            return None;
        }
        let (lm, lc) = self.num.leading_term()?;
        let (dm, dc) = self.den.leading_term()?;
        if lm != dm {
            return None;
        }
        let c = lc / dc;
        (self.den.scale(&c) == self.num).then_some(c)
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// The polynomial value, if the denominator is a constant.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        let (m, c) = self.den.as_monomial()?;
        (m == Monomial::ONE).then(|| self.num.scale(&c.recip()))
    }

    /// `(numerator, x1-exponent, x2-exponent)` with value
    /// `numerator / (x1^a x2^b)`, if the denominator is a monomial.
    pub fn as_laurent(&self) -> Option<(Polynomial, u32, u32)> {
        let (m, c) = self.den.as_monomial()?;
        Some((self.num.scale(&c.recip()), m.e1, m.e2))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero("reciprocal of 0".into()));
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let e = k.unsigned_abs() as u32;
        let p = RationalFunction { num: self.num.pow(e), den: self.den.pow(e) };
        let p = Self::canonical(p.num, p.den);
        if k < 0 {
            p.recip()
        } else {
            Ok(p)
        }
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, x1: &Rational, x2: &Rational) -> Result<Rational> {
        let d = self.den.eval(x1, x2);
        if d.is_zero() {
            return Err(Error::DenominatorVanishes(format!("({}) at ({x1}, {x2})", self.den)));
        }
        Ok(self.num.eval(x1, x2) / d)
    }

    /// Divides `factor` out of numerator and denominator as long as both are
    /// exactly divisible by it.
    pub fn reduce_by(&self, factor: &Polynomial) -> Self {
        if factor.is_constant() {
            return self.clone();
        }
        let (mut num, mut den) = (self.num.clone(), self.den.clone());
        while !num.is_zero() {
            let (Ok(a), Ok(b)) = (poly_exact_div(&num, factor), poly_exact_div(&den, factor)) else {
                break;
            };
            num = a;
            den = b;
        }
        Self::canonical(num, den)
    }

    /// Swaps the roles of `x1` and `x2`.
    pub fn swap_variables(&self) -> Self {
        Self::canonical(self.num.swap_variables(), self.den.swap_variables())
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let combine = |a: &Polynomial, b: &Polynomial| if negate { a - b } else { a + b };
        if self.den == other.den {
            return Self::canonical(combine(&self.num, &other.num), self.den.clone());
        }
        if let (Some((ma, ca)), Some((mb, cb))) = (self.den.as_monomial(), other.den.as_monomial()) {
            let l = Monomial::new(ma.e1.max(mb.e1), ma.e2.max(mb.e2));
            let a = self
                .num
                .mul_monomial(Monomial::new(l.e1 - ma.e1, l.e2 - ma.e2))
                .scale(&ca.recip());
            let b = other
                .num
                .mul_monomial(Monomial::new(l.e1 - mb.e1, l.e2 - mb.e2))
                .scale(&cb.recip());
            return Self::canonical(combine(&a, &b), Polynomial::pure(l.e1, l.e2));
        }
        let num = combine(&(&self.num * &other.den), &(&other.num * &self.den));
        Self::canonical(num, &self.den * &other.den)
    }
}

/// Cross-multiplication equality: `f.num * g.den == g.num * f.den`.
pub fn ratfunc_equal(f: &RationalFunction, g: &RationalFunction) -> bool {
    if f.den == g.den {
        return f.num == g.num;
    }
    if f.num.is_zero() || g.num.is_zero() {
        return f.num.is_zero() && g.num.is_zero();
    }
    &f.num * &g.den == &g.num * &f.den
}

/// Powers `p^i q^(d - i)` for `i = 0..=d`.
fn homogeneous_powers(p: &Polynomial, q: &Polynomial, d: u32) -> Vec<Polynomial> {
    let mut pp = vec![Polynomial::one()];
    let mut qq = vec![Polynomial::one()];
    for i in 1..=d as usize {
        pp.push(&pp[i - 1] * p);
        qq.push(&qq[i - 1] * q);
    }
    (0..=d as usize).map(|i| &pp[i] * &qq[d as usize - i]).collect()
}

/// `poly(p1/q1, p2/q2) * q1^d1 * q2^d2`, given the homogeneous power tables.
fn homogenized(poly: &Polynomial, h1: &[Polynomial], h2: &[Polynomial]) -> Polynomial {
    let mut out = Polynomial::zero();
    let terms = poly.terms();
    let mut start = 0;
    while start < terms.len() {
        let e1 = terms[start].0.e1;
        let mut end = start;
        let mut inner = Polynomial::zero();
        while end < terms.len() && terms[end].0.e1 == e1 {
            let (m, c) = &terms[end];
            inner = &inner + &h2[m.e2 as usize].scale(c);
            end += 1;
        }
        out = &out + &(&h1[e1 as usize] * &inner);
        start = end;
    }
    out
}

/// `f(s1, s2)`. Both numerator and denominator of `f` are homogenized over
/// the substituted denominators, so the result is a single exact fraction.
pub fn ratfunc_substitute(
    f: &RationalFunction,
    s1: &RationalFunction,
    s2: &RationalFunction,
) -> Result<RationalFunction> {
    if f.num.is_zero() {
        return Ok(RationalFunction::zero());
    }
    let d1 = f.num.degree_x1().unwrap().max(f.den.degree_x1().unwrap());
    let d2 = f.num.degree_x2().unwrap().max(f.den.degree_x2().unwrap());
    let h1 = homogeneous_powers(&s1.num, &s1.den, d1);
    let h2 = homogeneous_powers(&s2.num, &s2.den, d2);
    let den = homogenized(&f.den, &h1, &h2);
    if den.is_zero() {
        return Err(Error::DenominatorVanishes(format!(
            "({}) at x1 = {s1}, x2 = {s2}",
            f.den
        )));
    }
    let num = homogenized(&f.num, &h1, &h2);
    Ok(RationalFunction::canonical(num, den))
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }
}

impl std::ops::Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.add_impl(rhs, false)
    }
}

impl std::ops::Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self.add_impl(rhs, true)
    }
}

impl std::ops::Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl std::ops::Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::print_canonical(self))
    }
}
