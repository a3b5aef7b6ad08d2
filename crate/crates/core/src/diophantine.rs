//! Positive integer solutions of `T(x1, x2) = T(a, b)` for a mutation
//! invariant `T`: mutation orbits of the initial solution, a brute-force
//! scan to compare them with, and the descent inequalities used for the
//! `(1, 4)` equation.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::{Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::expr::parse_ratfunc;
use crate::invariants::verify_invariant;

pub type Pair = (BigInt, BigInt);

/// `direction` 1 gives `((b^n + 1) / a, b)`, 2 gives `(a, (a^m + 1) / b)`.
pub fn dio_step(pair: &Pair, direction: u8, m: u32, n: u32) -> Result<Pair> {
    let (a, b) = pair;
    if a < &BigInt::one() || b < &BigInt::one() {
        return Err(Error::PreconditionViolated(format!("({a}, {b}) is not a positive pair")));
    }
    let (num, den): (BigInt, &BigInt) = match direction {
        1 => (num_traits::pow(b.clone(), n as usize) + 1, a),
        2 => (num_traits::pow(a.clone(), m as usize) + 1, b),
        _ => return Err(Error::IndexOutOfRange { index: direction as usize, size: 2 }),
    };
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::NonIntegral(format!("{num}/{den} at ({a}, {b}), direction {direction}")));
    }
    Ok(if direction == 1 { (q, b.clone()) } else { (a.clone(), q) })
}

#[derive(Clone, Debug)]
pub struct DioEquation {
    pub invariant: RationalFunction,
    pub m: u32,
    pub n: u32,
    pub level: Rational,
    pub initial: Pair,
}

/// The built-in equations: name, `(m, n)`, invariant and expected level at
/// the initial solution `(1, 1)`.
pub const PRESETS: [(&str, u32, u32, &str, i64); 6] = [
    ("a1xa1", 0, 0, "x1 + 2/x1 + x2 + 2/x2", 6),
    ("a2", 1, 1, "(x1^2*x2 + x1*x2^2 + x1^2 + x2^2 + 2*x1 + 2*x2 + 1)/(x1*x2)", 9),
    ("b2", 1, 2, "(x1^2*x2^2 + x2^4 + 2*x2^2 + x1^2 + 2*x1 + 1)/(x1*x2^2)", 8),
    ("g2", 1, 3, "(x2^4 + x1*x2^3 + x2^3 + x1^2*x2 + 2*x1*x2 + x1^2 + x2 + 2*x1 + 1)/(x1*x2^2)", 11),
    ("affine22", 2, 2, "(x1^2 + x2^2 + 1)/(x1*x2)", 3),
    ("affine14", 1, 4, "(x2^4 + x1^2 + 2*x1 + 1)/(x1*x2^2)", 5),
];

impl DioEquation {
    /// Checks that `invariant` is a mutation invariant for `(m, n)` and takes
    /// the level from the initial solution.
    pub fn new(invariant: RationalFunction, m: u32, n: u32, initial: Pair) -> Result<Self> {
        if !verify_invariant(&invariant, m, n)? {
            return Err(Error::NotInvariant(format!("{invariant} for (m, n) = ({m}, {n})")));
        }
        if initial.0 < BigInt::one() || initial.1 < BigInt::one() {
            return Err(Error::PreconditionViolated("the initial solution must be positive".into()));
        }
        let level = invariant.eval(&Rational::from_integer(initial.0.clone()), &Rational::from_integer(initial.1.clone()))?;
        Ok(DioEquation { invariant, m, n, level, initial })
    }

    /// As [`DioEquation::new`], additionally requiring `T(initial) = level`.
    pub fn with_level(invariant: RationalFunction, m: u32, n: u32, initial: Pair, level: Rational) -> Result<Self> {
        let eq = Self::new(invariant, m, n, initial)?;
        if eq.level != level {
            return Err(Error::LevelViolation(format!(
                "T({}, {}) = {}, not {level}",
                eq.initial.0, eq.initial.1, eq.level
            )));
        }
        Ok(eq)
    }

    pub fn preset(name: &str) -> Result<Self> {
        let (_, m, n, t, level) = PRESETS
            .iter()
            .find(|p| p.0 == name)
            .ok_or_else(|| Error::PreconditionViolated(format!("unknown preset {name:?}")))?;
        Self::with_level(parse_ratfunc(t)?, *m, *n, (BigInt::one(), BigInt::one()), Rational::from_integer((*level).into()))
    }

    pub fn value_at(&self, pair: &Pair) -> Result<Rational> {
        self.invariant.eval(&Rational::from_integer(pair.0.clone()), &Rational::from_integer(pair.1.clone()))
    }

    pub fn is_solution(&self, pair: &Pair) -> bool {
        matches!(self.value_at(pair), Ok(v) if v == self.level)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitNode {
    pub pair: Pair,
    /// Shortest mutation word from the initial solution, letters in the
    /// order they are applied.
    pub word: String,
}

#[derive(Clone, Debug)]
pub struct Orbit {
    /// The initial solution, then nodes whose word starts with 1 by
    /// increasing length, then those starting with 2 by decreasing length,
    /// so a single chain reads in walk order.
    pub nodes: Vec<OrbitNode>,
    /// True when no step left the bound, i.e. the orbit closed.
    pub closed: bool,
}

/// Breadth-first closure of the initial solution under both mutations,
/// dropping pairs with a component above `bound`. Every node is checked to
/// lie on the level set, and every step must be integral. A bound below the
/// initial solution gives an empty orbit.
pub fn enumerate_orbit(eq: &DioEquation, bound: &BigInt) -> Result<Orbit> {
    if &eq.initial.0 > bound || &eq.initial.1 > bound {
        return Ok(Orbit { nodes: Vec::new(), closed: false });
    }
    let mut seen: HashMap<Pair, usize> = HashMap::from([(eq.initial.clone(), 0)]);
    let mut found = vec![OrbitNode { pair: eq.initial.clone(), word: String::new() }];
    let mut queue = VecDeque::from([0usize]);
    let mut closed = true;
    while let Some(i) = queue.pop_front() {
        for d in [1u8, 2] {
            let next = dio_step(&found[i].pair, d, eq.m, eq.n)?;
            if &next.0 > bound || &next.1 > bound {
                closed = false;
                continue;
            }
            if seen.contains_key(&next) {
                continue;
            }
            if !eq.is_solution(&next) {
                return Err(Error::LevelViolation(format!("({}, {}) left the level set", next.0, next.1)));
            }
            let word = format!("{}{d}", found[i].word);
            seen.insert(next.clone(), found.len());
            queue.push_back(found.len());
            found.push(OrbitNode { pair: next, word });
        }
    }
    let mut rest = found.split_off(1);
    // stable sorts keep discovery order among equal keys
    rest.sort_by_key(|node| {
        let len = node.word.len() as i64;
        if node.word.starts_with('1') {
            (0, len)
        } else {
            (1, -len)
        }
    });
    found.extend(rest);
    Ok(Orbit { nodes: found, closed })
}

/// `q N(x1, x2) - p D(x1, x2)` with integer coefficients, for `T = N / D`
/// and level `p / q`; its zeros with `D != 0` are the solutions.
struct LevelTest {
    diff: Vec<(u32, u32, BigInt)>,
    den: Vec<(u32, u32, BigInt)>,
}

fn integer_terms(p: &Polynomial) -> Vec<(u32, u32, BigInt)> {
    let (terms, _) = p.integer_scaled();
    terms.into_iter().map(|(m, c)| (m.e1, m.e2, c)).collect()
}

/// Exact value at small arguments, using 128-bit arithmetic until it would
/// overflow.
fn eval_terms(terms: &[(u32, u32, BigInt)], a: u64, b: u64) -> BigInt {
    let fast = || -> Option<i128> {
        let mut acc: i128 = 0;
        for (e1, e2, c) in terms {
            let t = c.to_i128()?.checked_mul((a as i128).checked_pow(*e1)?)?.checked_mul((b as i128).checked_pow(*e2)?)?;
            acc = acc.checked_add(t)?;
        }
        Some(acc)
    };
    if let Some(v) = fast() {
        return v.into();
    }
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    terms
        .iter()
        .map(|(e1, e2, c)| c * num_traits::pow(a.clone(), *e1 as usize) * num_traits::pow(b.clone(), *e2 as usize))
        .sum()
}

impl LevelTest {
    fn new(eq: &DioEquation) -> Self {
        let p = Rational::from_integer(eq.level.numer().clone());
        let q = Rational::from_integer(eq.level.denom().clone());
        let diff = &eq.invariant.num().scale(&q) - &eq.invariant.den().scale(&p);
        LevelTest { diff: integer_terms(&diff), den: integer_terms(eq.invariant.den()) }
    }

    fn holds(&self, a: u64, b: u64) -> bool {
        eval_terms(&self.diff, a, b).is_zero() && !eval_terms(&self.den, a, b).is_zero()
    }
}

/// Every `(a, b)` in `[1, bound]^2` with `T(a, b) = level`, sorted. Rows are
/// scanned in parallel.
pub fn brute_force_solutions(eq: &DioEquation, bound: u64) -> Vec<(u64, u64)> {
    let test = LevelTest::new(eq);
    (1..=bound)
        .into_par_iter()
        .flat_map_iter(|a| {
            let test = &test;
            (1..=bound).filter(move |&b| test.holds(a, b)).map(move |b| (a, b))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct CompletenessReport {
    pub holds: bool,
    pub bound: u64,
    pub orbit: Orbit,
    pub brute_force: Vec<(u64, u64)>,
    /// Brute-force solutions the orbit misses.
    pub missing: Vec<(u64, u64)>,
    /// Orbit pairs the scan did not find; nonempty only on a bug.
    pub unexpected: Vec<Pair>,
}

/// Compares the orbit with the brute-force scan inside `[1, bound]^2`. A
/// positive answer says nothing beyond the bound.
pub fn certify_completeness(eq: &DioEquation, bound: u64) -> Result<CompletenessReport> {
    let orbit = enumerate_orbit(eq, &BigInt::from(bound))?;
    let brute_force = brute_force_solutions(eq, bound);
    let orbit_pairs: HashMap<(u64, u64), ()> = orbit
        .nodes
        .iter()
        .filter_map(|n| Some(((n.pair.0.to_u64()?, n.pair.1.to_u64()?), ())))
        .collect();
    let missing: Vec<(u64, u64)> = brute_force.iter().filter(|p| !orbit_pairs.contains_key(p)).copied().collect();
    let unexpected: Vec<Pair> = orbit
        .nodes
        .iter()
        .filter(|n| {
            let key = (n.pair.0.to_u64(), n.pair.1.to_u64());
            !matches!(key, (Some(a), Some(b)) if brute_force.binary_search(&(a, b)).is_ok())
        })
        .map(|n| n.pair.clone())
        .collect();
    Ok(CompletenessReport {
        holds: missing.is_empty() && unexpected.is_empty(),
        bound,
        orbit,
        brute_force,
        missing,
        unexpected,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DescentCase {
    /// `a > b^2`
    Above,
    /// `a < b^2`
    Below,
}

#[derive(Clone, Debug)]
pub struct DescentReport {
    pub pair: Pair,
    pub case: DescentCase,
    /// First coordinate after mutation in direction 1.
    pub a_prime: BigInt,
    /// Second coordinate after mutation in direction 2.
    pub b_prime: BigInt,
    /// `a' < b^2 < a` (above) or `a' > b^2 > a` (below).
    pub first: bool,
    /// `b'^2 > a > b^2` (above) or `b'^2 < a < b^2` (below).
    pub second: bool,
}

impl DescentReport {
    pub fn holds(&self) -> bool {
        self.first && self.second
    }
}

/// The descent inequalities for a solution of the `(1, 4)` equation
/// `x2^4 + x1^2 + 2 x1 + 1 = 5 x1 x2^2` with both coordinates above 1.
pub fn check_descent(pair: &Pair) -> Result<DescentReport> {
    let eq = DioEquation::preset("affine14")?;
    let (a, b) = pair;
    if a.is_one() || b.is_one() || !eq.is_solution(pair) {
        return Err(Error::PreconditionViolated(format!(
            "({a}, {b}) is not a solution of the (1, 4) equation with a, b != 1"
        )));
    }
    let b2 = b * b;
    let case = match a.cmp(&b2) {
        std::cmp::Ordering::Greater => DescentCase::Above,
        std::cmp::Ordering::Less => DescentCase::Below,
        std::cmp::Ordering::Equal => {
            // a = b^2 forces a = b = 1 on this level set
            return Err(Error::PreconditionViolated(format!("({a}, {b}) has a = b^2")));
        }
    };
    let a_prime = dio_step(pair, 1, 1, 4)?.0;
    let b_prime = dio_step(pair, 2, 1, 4)?.1;
    let bp2 = &b_prime * &b_prime;
    let (first, second) = match case {
        DescentCase::Above => (a_prime < b2 && &b2 < a, &bp2 > a && a > &b2),
        DescentCase::Below => (a_prime > b2 && &b2 > a, &bp2 < a && a < &b2),
    };
    Ok(DescentReport { pair: pair.clone(), case, a_prime, b_prime, first, second })
}
