//! Exact division in `Q[x1, x2]`.
//!
//! The dividend is viewed as a univariate polynomial in `x1` whose
//! coefficients are dense univariate polynomials in `x2`. Long division runs
//! from the top `x1` degree down; every coefficient quotient must itself be
//! exact, and the final remainder must vanish.

use num_bigint::BigInt;
use num_traits::{NumRef, One, Signed, Zero};

use super::poly::{Monomial, Polynomial};
use super::Rational;
use crate::error::{Error, Result};

/// Dense coefficients in `x2`, index = exponent. Trailing zeros trimmed.
type Dense<T> = Vec<T>;

fn trim<T: Zero>(v: &mut Dense<T>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Splits `terms` into dense `x2` coefficient rows indexed by the `x1` exponent.
fn rows<T: Clone + Zero>(terms: impl Iterator<Item = (Monomial, T)>, d1: u32) -> Vec<Dense<T>> {
    let mut out: Vec<Dense<T>> = vec![Vec::new(); d1 as usize + 1];
    for (m, c) in terms {
        let row = &mut out[m.e1 as usize];
        let j = m.e2 as usize;
        if row.len() <= j {
            row.resize(j + 1, T::zero());
        }
        row[j] = c;
    }
    out
}

/// `acc -= q * d` without cloning `acc`.
fn sub_mul<T: Clone + NumRef>(acc: &mut T, q: &T, d: &T) {
    let cur = std::mem::replace(acc, T::zero());
    *acc = cur - q.clone() * d;
}

/// Exact univariate division `num / den`; `None` on a nonzero remainder.
/// `div_lead` divides by the leading coefficient of `den` and fails when
/// that is not exact in `T`.
fn dense_div<T: Clone + NumRef>(num: &Dense<T>, den: &Dense<T>, div_lead: &dyn Fn(&T) -> Option<T>) -> Option<Dense<T>> {
    let dn = den.len() - 1;
    if num.len() < den.len() {
        return if num.iter().all(|c| c.is_zero()) { Some(Vec::new()) } else { None };
    }
    let mut rem = num.clone();
    let mut quot = vec![T::zero(); num.len() - dn];
    for k in (0..quot.len()).rev() {
        if rem[k + dn].is_zero() {
            continue;
        }
        let q = div_lead(&rem[k + dn])?;
        for (i, d) in den.iter().enumerate() {
            if !d.is_zero() {
                sub_mul(&mut rem[k + i], &q, d);
            }
        }
        quot[k] = q;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut quot);
    Some(quot)
}

/// Long division in `x1` over dense rows in `x2`.
fn row_div<T: Clone + NumRef>(
    mut rem: Vec<Dense<T>>,
    div: &[Dense<T>],
    div_lead: &dyn Fn(&T) -> Option<T>,
) -> Option<Vec<Dense<T>>> {
    let db = div.len() - 1;
    if rem.len() < div.len() {
        return None;
    }
    let lead = &div[db];
    let mut quot: Vec<Dense<T>> = vec![Vec::new(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = std::mem::take(&mut rem[k + db]);
        if c.iter().all(|x| x.is_zero()) {
            continue;
        }
        let q = dense_div(&c, lead, div_lead)?;
        // row k + db is consumed exactly; subtract q * div from the lower rows
        for (i, d) in div.iter().enumerate().take(db) {
            if d.is_empty() {
                continue;
            }
            let row = &mut rem[k + i];
            let need = q.len() + d.len() - 1;
            if row.len() < need {
                row.resize(need, T::zero());
            }
            for (qi, qc) in q.iter().enumerate() {
                if qc.is_zero() {
                    continue;
                }
                for (di, dc) in d.iter().enumerate() {
                    if !dc.is_zero() {
                        sub_mul(&mut row[qi + di], qc, dc);
                    }
                }
            }
        }
        quot[k] = q;
    }
    if rem.iter().any(|row| row.iter().any(|c| !c.is_zero())) {
        return None;
    }
    Some(quot)
}

fn from_rows<T>(quot: Vec<Dense<T>>, conv: impl Fn(T) -> Rational) -> Polynomial
where
    T: Zero,
{
    let mut terms = Vec::new();
    for (e1, row) in quot.into_iter().enumerate() {
        for (e2, c) in row.into_iter().enumerate() {
            if !c.is_zero() {
                terms.push((Monomial::new(e1 as u32, e2 as u32), conv(c)));
            }
        }
    }
    Polynomial::from_sorted_unchecked(terms)
}

/// Returns `q` with `a = q * b`, or `NotDivisible`.
///
/// When both operands have integer coefficients and the divisor's leading
/// coefficient is a unit, the quotient is integral and the division runs
/// over `BigInt`.
pub fn poly_exact_div(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    if b.is_zero() {
        return Err(Error::DivisionByZero("exact division by the zero polynomial".into()));
    }
    if a.is_zero() {
        return Ok(Polynomial::zero());
    }
    let not_divisible = || Error::NotDivisible(format!("({a}) / ({b})"));
    if let Some((m, c)) = b.as_monomial() {
        return a.div_monomial(m).map(|q| q.scale(&c.recip())).ok_or_else(not_divisible);
    }
    let (da, db) = (a.degree_x1().unwrap(), b.degree_x1().unwrap());
    let (lead_m, lead_c) = b.leading_term().unwrap();
    debug_assert_eq!(lead_m.e1, db);
    if a.is_integral() && b.is_integral() && lead_c.numer().abs().is_one() {
        let unit = lead_c.numer().clone();
        let int = |p: &Polynomial| p.terms().iter().map(|(m, c)| (*m, c.numer().clone())).collect::<Vec<_>>();
        let quot = row_div(
            rows(int(a).into_iter(), da),
            &rows(int(b).into_iter(), db),
            &|c: &BigInt| Some(c * &unit),
        )
        .ok_or_else(not_divisible)?;
        return Ok(from_rows(quot, Rational::from_integer));
    }
    let lead = lead_c.clone();
    let quot = row_div(
        rows(a.terms().iter().cloned(), da),
        &rows(b.terms().iter().cloned(), db),
        &|c: &Rational| Some(c / &lead),
    )
    .ok_or_else(not_divisible)?;
    Ok(from_rows(quot, |c| c))
}
