//! Mutation invariants: verification, construction from a symmetric
//! combiner, decomposition for the isolated type, and bounded-degree search
//! for Laurent invariants.

mod combiner;
mod decompose;
mod search;

pub use combiner::{parse_combiner, ExplicitPoly, SymmetricCombiner};
pub use decompose::{decompose_a1a1, decompose_half_invariant, recompose_a1a1};
pub use search::{nullspace, search_grid, search_laurent_invariants, InvariantSpace};

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{ratfunc_equal, ratfunc_substitute, Monomial, Polynomial, Rational, RationalFunction};
use crate::cluster::{enumerate_clusters, ExchangeData};
use crate::dvector::{classify, ClusterType};
use crate::error::{Error, Result};

/// `(m1(x1, x2), x2)` and `(x1, m2(x1, x2))`, the two initial-seed
/// substitutions.
pub fn initial_substitutions(m: u32, n: u32) -> Result<[(RationalFunction, RationalFunction); 2]> {
    ExchangeData::new(m, n)?;
    let x1 = RationalFunction::x1();
    let x2 = RationalFunction::x2();
    let m1 = RationalFunction::new(&Polynomial::pure(0, n) + &Polynomial::one(), Polynomial::x1())?;
    let m2 = RationalFunction::new(&Polynomial::pure(m, 0) + &Polynomial::one(), Polynomial::x2())?;
    Ok([(m1, x2.clone()), (x1, m2)])
}

/// True iff `T` is unchanged by both initial-seed substitutions. In rank 2
/// every seed mutates by the same rule, so this covers every seed.
pub fn verify_invariant(t: &RationalFunction, m: u32, n: u32) -> Result<bool> {
    if t.is_constant() {
        return Err(Error::ConstantInput);
    }
    for (s1, s2) in initial_substitutions(m, n)? {
        if !ratfunc_equal(t, &ratfunc_substitute(t, &s1, &s2)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Phi(F(c_1), ..., F(c_p))` over the given clusters.
pub fn combine_over_clusters(
    clusters: &[(RationalFunction, RationalFunction)],
    f: &RationalFunction,
    phi: &SymmetricCombiner,
) -> Result<RationalFunction> {
    let values = clusters
        .iter()
        .map(|(c1, c2)| ratfunc_substitute(f, c1, c2))
        .collect::<Result<Vec<_>>>()?;
    phi.apply(&values)
}

/// The labeled clusters `t0, ..., t_{p-1}` of a finite type.
pub fn finite_clusters(m: u32, n: u32) -> Result<Vec<(RationalFunction, RationalFunction)>> {
    ExchangeData::new(m, n)?;
    if classify(m, n) != ClusterType::Finite {
        return Err(Error::InfiniteType { m, n });
    }
    let e = enumerate_clusters(m, n, 64)?;
    debug_assert!(e.period.is_some());
    Ok(e.seeds.iter().map(|s| (s.var1.to_ratfunc(), s.var2.to_ratfunc())).collect())
}

/// `Phi(F(c_{1;i}, c_{2;i}) for every labeled cluster)` for a finite type.
/// The result is a mutation invariant or a constant.
pub fn construct_invariant(
    m: u32,
    n: u32,
    f: &RationalFunction,
    phi: &SymmetricCombiner,
) -> Result<RationalFunction> {
    combine_over_clusters(&finite_clusters(m, n)?, f, phi)
}

/// `sum lambda_ij x1^i x2^j / (x1^s x2^t)` with `lambda_st = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentForm {
    pub s: u32,
    pub t: u32,
    pub lambda: BTreeMap<(u32, u32), Rational>,
}

impl LaurentForm {
    pub fn to_ratfunc(&self) -> RationalFunction {
        let num = Polynomial::from_terms(self.lambda.iter().map(|(&(i, j), c)| (Monomial::new(i, j), c.clone())));
        RationalFunction::new(num, Polynomial::pure(self.s, self.t)).expect("monomial denominator")
    }

    /// Largest `i` and `j` with a nonzero `lambda_ij`.
    pub fn degrees(&self) -> Option<(u32, u32)> {
        let i = self.lambda.keys().map(|k| k.0).max()?;
        let j = self.lambda.keys().map(|k| k.1).max()?;
        Some((i, j))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCandidate {
    pub value: RationalFunction,
    pub laurent_form: Option<LaurentForm>,
}

impl InvariantCandidate {
    /// Reads off the Laurent form of `value` with `s, t` the exponents of
    /// its reduced monomial denominator. A nonzero `lambda_st` is a constant
    /// summand; it is dropped from both the form and the value.
    pub fn new(value: RationalFunction) -> Self {
        let Some((num, s, t)) = value.as_laurent() else {
            return InvariantCandidate { value, laurent_form: None };
        };
        let mut lambda: BTreeMap<(u32, u32), Rational> =
            num.terms().iter().map(|(m, c)| ((m.e1, m.e2), c.clone())).collect();
        lambda.remove(&(s, t));
        lambda.retain(|_, c| !c.is_zero());
        let form = LaurentForm { s, t, lambda };
        InvariantCandidate { value: form.to_ratfunc(), laurent_form: Some(form) }
    }
}

/// The highest powers of `x1` and `x2` in the numerator are `2s` and `2t`.
pub fn check_degree_condition(candidate: &InvariantCandidate) -> Result<bool> {
    let form = candidate.laurent_form.as_ref().ok_or(Error::MissingLaurentForm)?;
    Ok(form.degrees() == Some((2 * form.s, 2 * form.t)))
}
