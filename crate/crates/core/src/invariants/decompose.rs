//! Invariants of the isolated type as polynomials in `x + 2/x`.
//!
//! With `F_0 = 2`, `F_1 = X`, `F_k = X F_{k-1} - 2 F_{k-2}` one has
//! `F_k(x + 2/x) = x^k + (2/x)^k`. A Laurent polynomial with `f(x) = f(2/x)`
//! is `c_0 + sum_k c_k (x^k + (2/x)^k)`, so peeling off the top pair of
//! coefficients at a time gives `g = c_0 + sum_k c_k F_k`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::verify_invariant;
use crate::algebra::{Monomial, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

/// Coefficients of `F_0, ..., F_k` in ascending powers of `X`.
fn f_basis(k: usize) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = vec![vec![Rational::from_integer(2.into())], vec![Rational::zero(), Rational::one()]];
    while out.len() <= k {
        let j = out.len();
        let mut next = vec![Rational::zero(); j + 1];
        for (i, c) in out[j - 1].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in out[j - 2].iter().enumerate() {
            next[i] -= c * Rational::from_integer(2.into());
        }
        out.push(next);
    }
    out.truncate(k + 1);
    out
}

/// Laurent polynomial in one variable with coefficients in `C`.
type Row<C> = BTreeMap<i64, C>;

trait Coeff: Clone + PartialEq {
    fn nil() -> Self;
    fn vanishes(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
}

impl Coeff for Rational {
    fn nil() -> Self {
        Rational::zero()
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

impl Coeff for Row<Rational> {
    fn nil() -> Self {
        BTreeMap::new()
    }
    fn vanishes(&self) -> bool {
        self.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in other {
            let e = out.entry(*k).or_insert_with(Rational::zero);
            *e += v;
            if e.is_zero() {
                out.remove(k);
            }
        }
        out
    }
    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return BTreeMap::new();
        }
        self.iter().map(|(k, v)| (*k, v * c)).collect()
    }
}

/// `g` with `row(x) = g(x + 2/x)`, as coefficients of `X^0, X^1, ...`, or
/// `None` when `row(x) != row(2/x)`.
fn decompose_row<C: Coeff>(row: &Row<C>) -> Option<Vec<C>> {
    let top = row.keys().map(|k| k.unsigned_abs()).max().unwrap_or(0) as usize;
    let basis = f_basis(top);
    let mut g = vec![C::nil(); top + 1];
    let get = |e: i64| row.get(&e).cloned().unwrap_or_else(C::nil);
    g[0] = get(0);
    for k in 1..=top {
        let c = get(k as i64);
        // the partner of x^k in F_k(x + 2/x) is 2^k x^-k
        let two_k = Rational::from_integer(num_bigint::BigInt::from(2).pow(k as u32));
        if get(-(k as i64)) != c.scale(&two_k) {
            return None;
        }
        for (i, b) in basis[k].iter().enumerate() {
            g[i] = g[i].add(&c.scale(b));
        }
    }
    while g.len() > 1 && g.last().unwrap().vanishes() {
        g.pop();
    }
    Some(g)
}

/// Laurent coefficients of `f`, keyed by exponent pairs.
fn laurent_terms(f: &RationalFunction) -> Result<Vec<((i64, i64), Rational)>> {
    let (num, a, b) = f
        .as_laurent()
        .ok_or_else(|| Error::NotLaurent(format!("{f} is not a Laurent polynomial")))?;
    Ok(num
        .terms()
        .iter()
        .map(|(m, c)| ((m.e1 as i64 - a as i64, m.e2 as i64 - b as i64), c.clone()))
        .collect())
}

/// `g` with `f(x) = g(x + 2/x)` for a Laurent polynomial `f` in a single
/// variable (`x1` or `x2`). The result is a polynomial in `x1` standing for
/// `X`.
pub fn decompose_half_invariant(f: &RationalFunction) -> Result<Polynomial> {
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    let terms = laurent_terms(f)?;
    let in_x1 = terms.iter().all(|((_, e2), _)| *e2 == 0);
    let in_x2 = terms.iter().all(|((e1, _), _)| *e1 == 0);
    if !in_x1 && !in_x2 {
        return Err(Error::PreconditionViolated(format!("{f} depends on both variables")));
    }
    let row: Row<Rational> = terms
        .into_iter()
        .map(|((e1, e2), c)| (if in_x1 { e1 } else { e2 }, c))
        .collect();
    let g = decompose_row(&row).ok_or_else(|| Error::NotSymmetric(format!("{f} differs from its image under x -> 2/x")))?;
    Ok(Polynomial::from_terms(g.into_iter().enumerate().map(|(i, c)| (Monomial::new(i as u32, 0), c))))
}

/// `G` with `T(x1, x2) = G(x1 + 2/x1, x2 + 2/x2)` for a Laurent invariant of
/// the isolated type. `G` is returned as a polynomial in `x1, x2` standing for
/// `X1, X2`. The decomposition runs in `x1` with coefficients in
/// `Q[x2, 1/x2]`, then each coefficient is decomposed in `x2`.
pub fn decompose_a1a1(t: &RationalFunction) -> Result<Polynomial> {
    if !verify_invariant(t, 0, 0)? {
        return Err(Error::NotInvariant(format!("{t} is not invariant for (m, n) = (0, 0)")));
    }
    let mut rows: Row<Row<Rational>> = BTreeMap::new();
    for ((e1, e2), c) in laurent_terms(t)? {
        rows.entry(e1).or_default().insert(e2, c);
    }
    let broken = || Error::NotInvariant(format!("{t} has no decomposition in x1 + 2/x1, x2 + 2/x2"));
    let outer = decompose_row(&rows).ok_or_else(broken)?;
    let mut terms = Vec::new();
    for (i, coeff) in outer.iter().enumerate() {
        for (j, c) in decompose_row(coeff).ok_or_else(broken)?.into_iter().enumerate() {
            terms.push((Monomial::new(i as u32, j as u32), c));
        }
    }
    Ok(Polynomial::from_terms(terms))
}

/// `G(x1 + 2/x1, x2 + 2/x2)`, the inverse of [`decompose_a1a1`].
pub fn recompose_a1a1(g: &Polynomial) -> Result<RationalFunction> {
    let two = RationalFunction::from_int(2);
    let s1 = &RationalFunction::x1() + &two.div(&RationalFunction::x1())?;
    let s2 = &RationalFunction::x2() + &two.div(&RationalFunction::x2())?;
    crate::algebra::ratfunc_substitute(&RationalFunction::from(g.clone()), &s1, &s2)
}
