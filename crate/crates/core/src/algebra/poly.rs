use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Exponent pair `x1^e1 * x2^e2`, ordered lexicographically on `(e1, e2)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub e1: u32,
    pub e2: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { e1: 0, e2: 0 };

    pub fn new(e1: u32, e2: u32) -> Self {
        Monomial { e1, e2 }
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial::new(self.e1 + other.e1, self.e2 + other.e2)
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.e1 <= other.e1 && self.e2 <= other.e2
    }

    pub fn total_degree(self) -> u64 {
        self.e1 as u64 + self.e2 as u64
    }
}

/// Sparse polynomial in `x1, x2` with exact rational coefficients.
///
/// Terms are kept sorted ascending in the monomial order and never store a
/// zero coefficient, so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Monomial::ONE)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn x1() -> Self {
        Self::monomial(Rational::one(), Monomial::new(1, 0))
    }

    pub fn x2() -> Self {
        Self::monomial(Rational::one(), Monomial::new(0, 1))
    }

    /// `x1^e1 * x2^e2` with coefficient one.
    pub fn pure(e1: u32, e2: u32) -> Self {
        Self::monomial(Rational::one(), Monomial::new(e1, e2))
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Polynomial { terms }
    }

    /// Caller guarantees `terms` is sorted ascending, duplicate-free and zero-free.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { terms }
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE)
    }

    /// `Some((m, c))` when the polynomial is a single nonzero term.
    pub fn as_monomial(&self) -> Option<(Monomial, &Rational)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((*m, c)),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: Monomial) -> Rational {
        match self.terms.binary_search_by(|t| t.0.cmp(&m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(Monomial::ONE)
    }

    /// Greatest term in the monomial order.
    pub fn leading_term(&self) -> Option<(Monomial, &Rational)> {
        self.terms.last().map(|(m, c)| (*m, c))
    }

    pub fn degree_x1(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.e1).max()
    }

    pub fn degree_x2(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.e2).max()
    }

    /// Largest monomial dividing every term (`x1^0 x2^0` for zero).
    pub fn monomial_content(&self) -> Monomial {
        if self.terms.is_empty() {
            return Monomial::ONE;
        }
        let e1 = self.terms.iter().map(|(m, _)| m.e1).min().unwrap_or(0);
        let e2 = self.terms.iter().map(|(m, _)| m.e2).min().unwrap_or(0);
        Monomial::new(e1, e2)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    pub fn mul_monomial(&self, m: Monomial) -> Polynomial {
        if m == Monomial::ONE {
            return self.clone();
        }
        Polynomial {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    /// Divides by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: Monomial) -> Option<Polynomial> {
        if m == Monomial::ONE {
            return Some(self.clone());
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, c) in &self.terms {
            if !m.divides(*t) {
                return None;
            }
            terms.push((Monomial::new(t.e1 - m.e1, t.e2 - m.e2), c.clone()));
        }
        Some(Polynomial { terms })
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Returns `(p, d)` with `self = p / d`, `p` integral and `d >= 1`
    /// the lcm of coefficient denominators.
    pub fn integer_scaled(&self) -> (Vec<(Monomial, BigInt)>, BigInt) {
        let den = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.numer() * (&den / c.denom())))
            .collect();
        (terms, den)
    }

    /// Scalar `c` such that `self / c` has coprime integer coefficients and a
    /// positive leading coefficient. `None` for the zero polynomial.
    pub fn primitive_scale(&self) -> Option<Rational> {
        let (lead, _) = self.leading_term()?;
        let (ints, den) = self.integer_scaled();
        let g = ints.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
        let mut scale = Rational::new(g, den);
        if self.coefficient(lead).is_negative() {
            scale = -scale;
        }
        Some(scale)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        if k == 0 {
            return Polynomial::one();
        }
        if let Some((m, c)) = self.as_monomial() {
            return Polynomial::monomial(
                num_traits::pow(c.clone(), k as usize),
                Monomial::new(m.e1 * k, m.e2 * k),
            );
        }
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut e = k;
        loop {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = &base * &base;
        }
        result
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, x1: &Rational, x2: &Rational) -> Rational {
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            sum += c * num_traits::pow(x1.clone(), m.e1 as usize) * num_traits::pow(x2.clone(), m.e2 as usize);
        }
        sum
    }

    /// Swaps the roles of `x1` and `x2`.
    pub fn swap_variables(&self) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.e2, m.e1), c.clone())),
        )
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let pick = if i == a.len() {
                std::cmp::Ordering::Greater
            } else if j == b.len() {
                std::cmp::Ordering::Less
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match pick {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { terms: out }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        if let Some((m, c)) = other.as_monomial() {
            return self.mul_monomial(m).scale(c);
        }
        if let Some((m, c)) = self.as_monomial() {
            return other.mul_monomial(m).scale(c);
        }
        let (a, da) = self.integer_scaled();
        let (b, db) = other.integer_scaled();
        let den = da * db;
        let d1 = (self.degree_x1().unwrap_or(0) + other.degree_x1().unwrap_or(0)) as usize + 1;
        let d2 = (self.degree_x2().unwrap_or(0) + other.degree_x2().unwrap_or(0)) as usize + 1;
        let pairs = a.len().saturating_mul(b.len());
        let to_rational = |c: BigInt| Rational::new(c, den.clone());

        if d1.saturating_mul(d2) <= pairs.saturating_mul(4).max(64) {
            // Dense accumulation over the exponent box.
            let mut acc = vec![BigInt::zero(); d1 * d2];
            for (ma, ca) in &a {
                for (mb, cb) in &b {
                    let idx = (ma.e1 + mb.e1) as usize * d2 + (ma.e2 + mb.e2) as usize;
                    acc[idx] += ca * cb;
                }
            }
            let terms = acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(idx, c)| (Monomial::new((idx / d2) as u32, (idx % d2) as u32), to_rational(c)))
                .collect();
            Polynomial { terms }
        } else {
            let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(pairs.min(1 << 20));
            for (ma, ca) in &a {
                for (mb, cb) in &b {
                    *acc.entry(ma.mul(*mb)).or_insert_with(BigInt::zero) += ca * cb;
                }
            }
            let mut terms: Vec<_> = acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m, to_rational(c)))
                .collect();
            terms.sort_unstable_by(|x, y| x.0.cmp(&y.0));
            Polynomial { terms }
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.product(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::print_polynomial(self))
    }
}
