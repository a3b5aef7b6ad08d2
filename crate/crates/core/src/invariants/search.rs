//! Bounded-degree search for Laurent invariants.
//!
//! The ansatz `T = sum lambda_ij x1^i x2^j / (x1^s x2^t)` over
//! `0 <= i <= 2s`, `0 <= j <= 2t` turns `T o M_1 = T` and `T o M_2 = T` into
//! linear conditions on `lambda` once denominators are cleared. With
//! `B = x2^n + 1` and `A = x1^m + 1` they read
//!
//! ```text
//! sum lambda_ij (B^i x1^(2s-i) x2^j - B^s x1^i x2^j) = 0
//! sum lambda_ij (A^j x1^i x2^(2t-j) - A^t x1^i x2^j) = 0
//! ```
//!
//! `lambda_st` is pinned to zero, which removes the constants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{verify_invariant, InvariantCandidate};
use crate::algebra::{Monomial, Polynomial, Rational, RationalFunction};
use crate::cluster::ExchangeData;
use crate::error::{Error, Result};

/// Fraction-free (Bareiss) forward elimination. Returns the echelon form and
/// its pivot columns. Every intermediate entry is a minor of the input, so
/// the divisions are exact.
fn bareiss(mut a: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            for j in c + 1..ncols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero());
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Clears denominators and divides by the content; the first nonzero entry
/// becomes positive.
fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

/// Basis of `{x : A x = 0}` with one primitive integer vector per free
/// column, in increasing free-column order.
pub fn nullspace(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let (u, pivots) = bareiss(rows.to_vec(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (k, &p) in pivots.iter().enumerate().rev() {
                let s: Rational = (p + 1..ncols)
                    .filter(|&j| !u[k][j].is_zero() && !x[j].is_zero())
                    .map(|j| Rational::from_integer(u[k][j].clone()) * &x[j])
                    .sum();
                x[p] = -s / Rational::from_integer(u[k][p].clone());
            }
            primitive(&x)
        })
        .collect()
}

fn rank(rows: &[Vec<BigInt>], ncols: usize) -> usize {
    bareiss(rows.to_vec(), ncols).1.len()
}

/// Result of one `(s, t)` search.
#[derive(Clone, Debug)]
pub struct InvariantSpace {
    pub m: u32,
    pub n: u32,
    pub s: u32,
    pub t: u32,
    /// Unknowns `(i, j)` in column order.
    pub columns: Vec<(u32, u32)>,
    /// Nullspace basis in column coordinates.
    pub vectors: Vec<Vec<BigInt>>,
    pub basis: Vec<InvariantCandidate>,
    /// Number of linear conditions.
    pub equations: usize,
}

impl InvariantSpace {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    /// Coordinates of `f - c` in this frame for the constant `c` that clears
    /// `lambda_st`, or `None` if `f` does not fit the ansatz.
    fn coordinates(&self, f: &RationalFunction) -> Option<Vec<BigInt>> {
        let scaled = f * &RationalFunction::from(Polynomial::pure(self.s, self.t));
        let p = scaled.as_polynomial()?;
        if p.degree_x1().unwrap_or(0) > 2 * self.s || p.degree_x2().unwrap_or(0) > 2 * self.t {
            return None;
        }
        let v: Vec<Rational> = self.columns.iter().map(|&(i, j)| p.coefficient(Monomial::new(i, j))).collect();
        Some(primitive(&v))
    }

    /// Whether `f`, up to an additive constant, lies in the space.
    pub fn contains(&self, f: &RationalFunction) -> bool {
        let Some(v) = self.coordinates(f) else {
            return false;
        };
        let mut rows = self.vectors.clone();
        let before = rank(&rows, self.columns.len());
        rows.push(v);
        rank(&rows, self.columns.len()) == before
    }
}

/// Contribution of `lambda_ij` to the two cleared-denominator conditions.
fn column(i: u32, j: u32, s: u32, t: u32, a: &Polynomial, b: &Polynomial) -> [Polynomial; 2] {
    let mono = |e1, e2| Polynomial::pure(e1, e2);
    let c1 = &(&b.pow(i) * &mono(2 * s - i, j)) - &(&b.pow(s) * &mono(i, j));
    let c2 = &(&a.pow(j) * &mono(i, 2 * t - j)) - &(&a.pow(t) * &mono(i, j));
    [c1, c2]
}

/// Nullspace of the invariance conditions at `(m, n)` for the frame
/// `(s, t)`. Every returned candidate is checked with [`verify_invariant`].
pub fn search_laurent_invariants(m: u32, n: u32, s: u32, t: u32) -> Result<InvariantSpace> {
    ExchangeData::new(m, n)?;
    if s == 0 || t == 0 {
        return Err(Error::PreconditionViolated(format!("s = {s}, t = {t} must both be positive")));
    }
    let a = &Polynomial::pure(m, 0) + &Polynomial::one();
    let b = &Polynomial::pure(0, n) + &Polynomial::one();
    let columns: Vec<(u32, u32)> = (0..=2 * s)
        .rev()
        .flat_map(|i| (0..=2 * t).rev().map(move |j| (i, j)))
        .filter(|&ij| ij != (s, t))
        .collect();
    let polys: Vec<[Polynomial; 2]> = columns.iter().map(|&(i, j)| column(i, j, s, t, &a, &b)).collect();
    let mut rows = Vec::new();
    for cond in 0..2 {
        // rows keyed by monomial, highest first
        let mut index: BTreeMap<std::cmp::Reverse<Monomial>, Vec<BigInt>> = BTreeMap::new();
        for (col, p) in polys.iter().enumerate() {
            for (mono, c) in p[cond].terms() {
                let row = index
                    .entry(std::cmp::Reverse(*mono))
                    .or_insert_with(|| vec![BigInt::zero(); columns.len()]);
                debug_assert!(c.is_integer());
                row[col] = c.to_integer();
            }
        }
        rows.extend(index.into_values());
    }
    let vectors = nullspace(&rows, columns.len());
    let mut basis = Vec::with_capacity(vectors.len());
    for v in &vectors {
        let num = Polynomial::from_terms(
            columns
                .iter()
                .zip(v)
                .map(|(&(i, j), c)| (Monomial::new(i, j), Rational::from_integer(c.clone()))),
        );
        let value = RationalFunction::new(num, Polynomial::pure(s, t))?;
        if !verify_invariant(&value, m, n)? {
            return Err(Error::NotInvariant(format!("nullspace vector {value} fails verification")));
        }
        basis.push(InvariantCandidate::new(value));
    }
    Ok(InvariantSpace { m, n, s, t, columns, vectors, basis, equations: rows.len() })
}

/// Searches every frame `1 <= s <= s_max`, `1 <= t <= t_max` in parallel;
/// results come back in `(s, t)` order.
pub fn search_grid(m: u32, n: u32, s_max: u32, t_max: u32) -> Result<Vec<InvariantSpace>> {
    let frames: Vec<(u32, u32)> = (1..=s_max).flat_map(|s| (1..=t_max).map(move |t| (s, t))).collect();
    frames.into_par_iter().map(|(s, t)| search_laurent_invariants(m, n, s, t)).collect()
}
