use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::expr::{parse_multivariate, print_rational, ExprAst};

/// Sparse polynomial in `X1 .. Xk`, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    fn constant(arity: usize, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; arity], c);
        }
        MultiPoly { arity, terms }
    }

    fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        MultiPoly { arity, terms: BTreeMap::from([(e, Rational::one())]) }
    }

    fn add_scaled(&self, other: &Self, c: &Rational) -> Self {
        let mut terms = self.terms.clone();
        for (e, v) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Rational::zero);
            *entry += v * c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        MultiPoly { arity: self.arity, terms }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = MultiPoly::constant(self.arity, Rational::zero());
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                let g: Vec<u32> = e.iter().zip(f).map(|(a, b)| a + b).collect();
                let one = MultiPoly { arity: self.arity, terms: BTreeMap::from([(g, c * d)]) };
                out = out.add_scaled(&one, &Rational::one());
            }
        }
        out
    }

    fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&vec![0; self.arity]).cloned(),
            _ => None,
        }
    }

    fn from_ast(ast: &ExprAst, arity: usize) -> Result<Self> {
        let not_poly = || Error::PreconditionViolated("a combiner must be a polynomial in X1 .. Xk".into());
        Ok(match ast {
            ExprAst::Var(i) => MultiPoly::var(arity, *i as usize - 1),
            ExprAst::Int(k) => MultiPoly::constant(arity, Rational::from_integer(k.clone())),
            ExprAst::Neg(a) => MultiPoly::constant(arity, Rational::zero())
                .add_scaled(&Self::from_ast(a, arity)?, &-Rational::one()),
            ExprAst::Add(a, b) => Self::from_ast(a, arity)?.add_scaled(&Self::from_ast(b, arity)?, &Rational::one()),
            ExprAst::Sub(a, b) => Self::from_ast(a, arity)?.add_scaled(&Self::from_ast(b, arity)?, &-Rational::one()),
            ExprAst::Mul(a, b) => Self::from_ast(a, arity)?.mul(&Self::from_ast(b, arity)?),
            ExprAst::Div(a, b) => {
                let d = Self::from_ast(b, arity)?.as_constant().filter(|d| !d.is_zero()).ok_or_else(not_poly)?;
                MultiPoly::constant(arity, Rational::zero()).add_scaled(&Self::from_ast(a, arity)?, &d.recip())
            }
            ExprAst::Pow(a, k) => {
                if *k < 0 {
                    return Err(not_poly());
                }
                let base = Self::from_ast(a, arity)?;
                let mut out = MultiPoly::constant(arity, Rational::one());
                for _ in 0..*k {
                    out = out.mul(&base);
                }
                out
            }
        })
    }

    fn swapped(&self, i: usize, j: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.swap(i, j);
                (e, c.clone())
            })
            .collect();
        MultiPoly { arity: self.arity, terms }
    }
}

/// The symmetric polynomial applied to the values of `F` on all clusters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetricCombiner {
    /// `e_k(X1, ..., Xp)`.
    Elementary(usize),
    /// `scale * (X1^k + ... + Xp^k)`.
    PowerSum { k: u32, scale: Rational },
    /// An explicit polynomial, checked symmetric on construction.
    Explicit { text: String, poly: ExplicitPoly },
}

/// Opaque parsed form of an explicit combiner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitPoly(MultiPoly);

impl SymmetricCombiner {
    /// `(X1 + ... + Xp) / d`, the combiner used throughout the examples.
    pub fn mean_over(d: i64) -> Self {
        SymmetricCombiner::PowerSum { k: 1, scale: Rational::new(1.into(), d.into()) }
    }

    /// Parses a polynomial in `X1 .. X{arity}` and checks that every adjacent
    /// transposition of the variables leaves it unchanged.
    pub fn explicit(text: &str, arity: usize) -> Result<Self> {
        let k = u8::try_from(arity)
            .ok()
            .filter(|&k| k > 0)
            .ok_or_else(|| Error::PreconditionViolated(format!("combiner arity {arity} must be in 1..=255")))?;
        let poly = MultiPoly::from_ast(&parse_multivariate(text, k)?, arity)?;
        for i in 0..arity.saturating_sub(1) {
            if poly.swapped(i, i + 1) != poly {
                return Err(Error::NotSymmetric(format!("{text} changes under X{} <-> X{}", i + 1, i + 2)));
            }
        }
        Ok(SymmetricCombiner::Explicit { text: text.to_string(), poly: ExplicitPoly(poly) })
    }

    /// Number of arguments this combiner requires, if fixed.
    pub fn arity(&self) -> Option<usize> {
        match self {
            SymmetricCombiner::Explicit { poly, .. } => Some(poly.0.arity),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SymmetricCombiner::Elementary(k) => format!("e{k}"),
            SymmetricCombiner::PowerSum { k, scale } => format!("{}*p{k}", print_rational(scale)),
            SymmetricCombiner::Explicit { text, .. } => text.clone(),
        }
    }

    pub fn apply(&self, values: &[RationalFunction]) -> Result<RationalFunction> {
        match self {
            SymmetricCombiner::Elementary(k) => {
                // e_j over a growing prefix of the values
                let mut e = vec![RationalFunction::zero(); k + 1];
                e[0] = RationalFunction::one();
                for v in values {
                    for j in (1..=*k).rev() {
                        e[j] = &e[j] + &(&e[j - 1] * v);
                    }
                }
                Ok(e.swap_remove(*k))
            }
            SymmetricCombiner::PowerSum { k, scale } => {
                let mut sum = RationalFunction::zero();
                for v in values {
                    sum = &sum + &v.pow(*k as i64)?;
                }
                Ok(&sum * &RationalFunction::constant(scale.clone()))
            }
            SymmetricCombiner::Explicit { poly, .. } => {
                let poly = &poly.0;
                if values.len() != poly.arity {
                    return Err(Error::PreconditionViolated(format!(
                        "combiner takes {} arguments, got {}",
                        poly.arity,
                        values.len()
                    )));
                }
                let mut out = RationalFunction::zero();
                for (e, c) in &poly.terms {
                    let mut term = RationalFunction::constant(c.clone());
                    for (v, &k) in values.iter().zip(e) {
                        if k > 0 {
                            term = &term * &v.pow(k as i64)?;
                        }
                    }
                    out = &out + &term;
                }
                Ok(out)
            }
        }
    }
}

impl std::fmt::Display for SymmetricCombiner {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Parses the command-line spelling of a combiner: `e<k>`, `p<k>`,
/// `p<k>/<d>` for `(X1^k + ... + Xp^k) / d`, or `mean` for `p1` scaled by
/// `1/arity`; anything else is an explicit polynomial in `X1 .. X{arity}`.
pub fn parse_combiner(text: &str, arity: usize) -> Result<SymmetricCombiner> {
    let t = text.trim();
    if t == "mean" {
        return Ok(SymmetricCombiner::mean_over(arity as i64));
    }
    if let Some(k) = t.strip_prefix('e').and_then(|k| k.parse::<usize>().ok()) {
        return Ok(SymmetricCombiner::Elementary(k));
    }
    if let Some(rest) = t.strip_prefix('p') {
        let (k, d) = match rest.split_once('/') {
            Some((k, d)) => (k, d),
            None => (rest, "1"),
        };
        if let (Ok(k), Ok(d)) = (k.trim().parse::<u32>(), d.trim().parse::<i64>()) {
            if d == 0 {
                return Err(Error::DivisionByZero("combiner scale 1/0".into()));
            }
            return Ok(SymmetricCombiner::PowerSum { k, scale: Rational::new(1.into(), d.into()) });
        }
    }
    SymmetricCombiner::explicit(t, arity)
}
