//! Seeds of a rank-2 cluster algebra and their mutations along the
//! 2-regular tree `... t_{-1} -2- t0 -1- t1 -2- t2 -1- t3 ...`.

mod maction;
mod matrix;
mod tracker;

pub use maction::{
    check_mutation_maction_equivalence, check_mutation_maction_equivalence_at, m_action,
    maction_sequence, EquivalenceReport,
};
pub use matrix::{check_imr, matrix_mutate, ExchangeMatrix, ImrReport};
pub use tracker::{track_walk, LeadingTerms, Term, TrackedVariable};

use num_traits::One;

use crate::algebra::{LaurentFraction, Rational};
use crate::dvector::ClusterSource;
use crate::error::{Error, Result};

/// Exchange matrix `sign * [[0, m], [-n, 0]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeData {
    pub m: u32,
    pub n: u32,
    pub sign: i8,
}

impl ExchangeData {
    /// Rejects `(m, n)` with exactly one of them zero: such a matrix is not
    /// skew-symmetrizable and the exchange relations stop being Laurent.
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if (m == 0) != (n == 0) {
            return Err(Error::InvalidExchange { m, n });
        }
        Ok(ExchangeData { m, n, sign: 1 })
    }

    /// Exponent in the exchange relation for `direction`: `n` for 1, `m` for 2.
    pub fn exponent(&self, direction: u8) -> u32 {
        if direction == 1 {
            self.n
        } else {
            self.m
        }
    }

    pub fn mutate(&self) -> Self {
        ExchangeData { sign: -self.sign, ..*self }
    }
}

/// Neighbor of tree position `p` along `direction`.
pub fn tree_step(p: i64, direction: u8) -> i64 {
    let even = p.rem_euclid(2) == 0;
    match (direction, even) {
        (1, true) | (2, false) => p + 1,
        _ => p - 1,
    }
}

/// Checks that every letter of a walk word is 1 or 2.
pub fn parse_word(word: &str) -> Result<Vec<u8>> {
    word.chars()
        .map(|c| match c {
            '1' => Ok(1),
            '2' => Ok(2),
            _ => Err(Error::PreconditionViolated(format!(
                "walk word {word:?} may only contain 1 and 2"
            ))),
        })
        .collect()
}

/// The alternating word of length `len` starting with `first`.
pub fn alternating_word(first: u8, len: usize) -> Vec<u8> {
    (0..len).map(|i| if i % 2 == 0 { first } else { 3 - first }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seed {
    pub var1: LaurentFraction,
    pub var2: LaurentFraction,
    pub exchange: ExchangeData,
    pub position: i64,
}

impl Seed {
    pub fn initial(exchange: ExchangeData) -> Self {
        Seed {
            var1: LaurentFraction::x1(),
            var2: LaurentFraction::x2(),
            exchange,
            position: 0,
        }
    }

    pub fn var(&self, i: u8) -> &LaurentFraction {
        if i == 1 {
            &self.var1
        } else {
            &self.var2
        }
    }

    /// Same cluster, in the same order, with the same exchange sign.
    pub fn same_labeled(&self, other: &Seed) -> bool {
        self.var1 == other.var1 && self.var2 == other.var2 && self.exchange == other.exchange
    }
}

/// Mutation in `direction`: `var_k <- (other^e + 1) / var_k`.
pub fn mutate_seed(s: &Seed, direction: u8) -> Result<Seed> {
    if direction != 1 && direction != 2 {
        return Err(Error::IndexOutOfRange { index: direction as usize, size: 2 });
    }
    let e = s.exchange.exponent(direction);
    let (var1, var2) = if direction == 1 {
        (s.var1.exchange(&s.var2, e)?, s.var2.clone())
    } else {
        (s.var1.clone(), s.var2.exchange(&s.var1, e)?)
    };
    Ok(Seed {
        var1,
        var2,
        exchange: s.exchange.mutate(),
        position: tree_step(s.position, direction),
    })
}

/// Every seed along `word` applied left to right, starting with the initial
/// seed.
pub fn walk(exchange: ExchangeData, word: &[u8]) -> Result<Vec<Seed>> {
    let mut seeds = vec![Seed::initial(exchange)];
    for &d in word {
        let next = mutate_seed(seeds.last().unwrap(), d)?;
        seeds.push(next);
    }
    Ok(seeds)
}

#[derive(Clone, Debug)]
pub struct ClusterEnumeration {
    pub period: Option<usize>,
    /// Seeds at `t0, t1, ...`: one full period, or `max_steps` seeds.
    pub seeds: Vec<Seed>,
}

/// Walks `t0, t1, t2, ...` until the initial labeled seed recurs.
pub fn enumerate_clusters(m: u32, n: u32, max_steps: usize) -> Result<ClusterEnumeration> {
    let ex = ExchangeData::new(m, n)?;
    let start = Seed::initial(ex);
    let mut seeds = vec![start.clone()];
    for step in 1..=max_steps {
        let next = mutate_seed(seeds.last().unwrap(), if step % 2 == 1 { 1 } else { 2 })?;
        if next.same_labeled(&start) {
            return Ok(ClusterEnumeration { period: Some(step), seeds });
        }
        if step < max_steps {
            seeds.push(next);
        }
    }
    Ok(ClusterEnumeration { period: None, seeds })
}

/// Period of the labeled seeds along `t0, t1, ...` if it is at most
/// `max_steps`. Denominator vectors rule out most steps cheaply: a seed equal
/// to the initial one has d-vectors `(-1, 0)` and `(0, -1)`. Remaining
/// candidates are confirmed by exact mutation.
pub fn cluster_period(m: u32, n: u32, max_steps: usize) -> Result<Option<usize>> {
    let ex = ExchangeData::new(m, n)?;
    let table = crate::dvector::dvectors_recurrence(m, n, max_steps as i64)?;
    let initial = table.get(&0).expect("t0 is tabulated");
    let candidate = (1..=max_steps).find(|&p| table.get(&(p as i64)) == Some(initial));
    let Some(p) = candidate else {
        return Ok(None);
    };
    let seeds = walk(ex, &alternating_word(1, p))?;
    if seeds[p].same_labeled(&seeds[0]) {
        Ok(Some(p))
    } else {
        // Matching d-vectors without a matching seed cannot happen in rank 2,
        // but fall back to the exhaustive search rather than guess.
        Ok(enumerate_clusters(m, n, max_steps)?.period)
    }
}

/// A numerator whose constant term is not 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantTermViolation {
    pub position: i64,
    /// 1 or 2.
    pub variable: u8,
    pub constant: Rational,
}

/// Checks that both cluster variables of every seed at tree distance at
/// least 2 along the alternating walks of length `len` have numerator
/// constant term 1. Returns the first violation.
pub fn check_constant_terms(
    m: u32,
    n: u32,
    len: usize,
    source: ClusterSource,
) -> Result<Option<ConstantTermViolation>> {
    let ex = ExchangeData::new(m, n)?;
    for first in [1u8, 2] {
        let word = alternating_word(first, len);
        let rows: Vec<(i64, [Rational; 2])> = match source {
            ClusterSource::Expanded => walk(ex, &word)?
                .iter()
                .map(|s| (s.position, [s.var1.numerator().constant_term(), s.var2.numerator().constant_term()]))
                .collect(),
            ClusterSource::LowestTerms => track_walk(ex, &word)?
                .iter()
                .map(|t| (t.position, [t.vars[0].numerator_constant_term(), t.vars[1].numerator_constant_term()]))
                .collect(),
        };
        for (position, constants) in rows.into_iter().filter(|(p, _)| p.abs() >= 2) {
            for (i, constant) in constants.into_iter().enumerate() {
                if !constant.is_one() {
                    return Ok(Some(ConstantTermViolation { position, variable: i as u8 + 1, constant }));
                }
            }
        }
    }
    Ok(None)
}
