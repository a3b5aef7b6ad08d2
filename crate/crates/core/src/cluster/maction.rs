use num_traits::{One, Zero};

use super::{alternating_word, walk, ExchangeData};
use crate::algebra::{
    poly_exact_div, ratfunc_equal, ratfunc_substitute, Monomial, Polynomial, Rational, RationalFunction,
};
use crate::error::Result;

pub type Pair = (RationalFunction, RationalFunction);

/// Substitution `(s1, s2)` of the M-action in `direction` and the binomial
/// that appears in its denominator.
fn substitution(direction: u8, m: u32, n: u32) -> (RationalFunction, RationalFunction, Polynomial) {
    let x1 = RationalFunction::x1();
    let x2 = RationalFunction::x2();
    if direction == 1 {
        let b = &Polynomial::pure(0, n) + &Polynomial::one();
        let s1 = RationalFunction::new(b.clone(), Polynomial::x1()).unwrap();
        (s1, x2, b)
    } else {
        let b = &Polynomial::pure(m, 0) + &Polynomial::one();
        let s2 = RationalFunction::new(b.clone(), Polynomial::x2()).unwrap();
        (x1, s2, b)
    }
}

/// Direction-1 action on a Laurent polynomial `num / (x1^a x2^b)`. With
/// `B = x2^n + 1` the image is `sum_i N_i(x2) B^(i - a) x1^(a - i) / x2^b`
/// over the `x1`-rows `N_i` of `num`; rows with `i < a` must be divisible by
/// `B^(a - i)`, otherwise `None`.
fn laurent_action_dir1(num: &Polynomial, a: u32, b: u32, n: u32) -> Option<RationalFunction> {
    let binom = &Polynomial::pure(0, n) + &Polynomial::one();
    let top = num.degree_x1()?;
    let shift = top.max(a);
    let mut out = Polynomial::zero();
    let terms = num.terms();
    let mut start = 0;
    while start < terms.len() {
        let i = terms[start].0.e1;
        let end = start + terms[start..].iter().take_while(|(m, _)| m.e1 == i).count();
        let row = Polynomial::from_terms(terms[start..end].iter().map(|(m, c)| (Monomial::new(0, m.e2), c.clone())));
        let row = if i >= a {
            &row * &binom.pow(i - a)
        } else {
            poly_exact_div(&row, &binom.pow(a - i)).ok()?
        };
        out = &out + &row.mul_monomial(Monomial::new(shift - i, 0));
        start = end;
    }
    RationalFunction::new(out, Polynomial::pure(shift - a, b)).ok()
}

fn act(f: &RationalFunction, direction: u8, m: u32, n: u32) -> Result<RationalFunction> {
    if let Some((num, a, b)) = f.as_laurent() {
        let fast = if direction == 1 {
            laurent_action_dir1(&num, a, b, n)
        } else {
            laurent_action_dir1(&num.swap_variables(), b, a, m).map(|g| g.swap_variables())
        };
        if let Some(g) = fast {
            return Ok(g);
        }
    }
    let (s1, s2, binom) = substitution(direction, m, n);
    Ok(ratfunc_substitute(f, &s1, &s2)?.reduce_by(&binom))
}

/// Substitutes `x1 -> m1(x1, x2)` (direction 1) or `x2 -> m2(x1, x2)`
/// (direction 2) into both components. Laurent components are handled row
/// by row; anything else goes through general substitution, after which
/// cancelling powers of the substituted binomial are divided out.
pub fn m_action(pair: &Pair, direction: u8, m: u32, n: u32) -> Result<Pair> {
    Ok((act(&pair.0, direction, m, n)?, act(&pair.1, direction, m, n)?))
}

/// `P_0 = (x1, x2)`, `P_{r+1} = M_{l_{r+1}}(P_r)` for the alternating
/// letters `l_1 = first, l_2, ...`.
pub fn maction_sequence(m: u32, n: u32, first: u8, len: usize) -> Result<Vec<Pair>> {
    let mut out = vec![(RationalFunction::x1(), RationalFunction::x2())];
    for d in alternating_word(first, len) {
        let next = m_action(out.last().unwrap(), d, m, n)?;
        out.push(next);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub holds: bool,
    /// Number of identities compared.
    pub checked: usize,
    pub counterexample: Option<String>,
}

/// Index pairs `(mu_start, mu_len, m_start, m_len)` for every identity with
/// `k <= k_max` and `(i, j)` in `{(1, 2), (2, 1)}`:
/// `mu_i (mu_j mu_i)^k = M_i (M_j M_i)^k` and `(mu_i mu_j)^k = (M_j M_i)^k`.
/// The right factor of a product of mutations acts first, so the second
/// identity compares the walk starting with `j` against the M-action
/// sequence starting with `i`.
fn identities(k_max: usize) -> Vec<(String, u8, usize, u8, usize)> {
    let mut out = Vec::new();
    for k in 0..=k_max {
        for (i, j) in [(1u8, 2u8), (2, 1)] {
            out.push((format!("mu{i}(mu{j}mu{i})^{k}"), i, 2 * k + 1, i, 2 * k + 1));
            if k > 0 {
                out.push((format!("(mu{i}mu{j})^{k}"), j, 2 * k, i, 2 * k));
            }
        }
    }
    out
}

/// Symbolic check of both identities for `k <= k_max`.
pub fn check_mutation_maction_equivalence(m: u32, n: u32, k_max: usize) -> Result<EquivalenceReport> {
    let ex = ExchangeData::new(m, n)?;
    let len = 2 * k_max + 1;
    let walks = [walk(ex, &alternating_word(1, len))?, walk(ex, &alternating_word(2, len))?];
    let seqs = [maction_sequence(m, n, 1, len)?, maction_sequence(m, n, 2, len)?];
    let mut checked = 0;
    for (name, mu_first, mu_len, m_first, m_len) in identities(k_max) {
        let seed = &walks[mu_first as usize - 1][mu_len];
        let (f, g) = &seqs[m_first as usize - 1][m_len];
        checked += 1;
        if !ratfunc_equal(&seed.var1.to_ratfunc(), f) || !ratfunc_equal(&seed.var2.to_ratfunc(), g) {
            return Ok(EquivalenceReport {
                holds: false,
                checked,
                counterexample: Some(format!(
                    "{name} at (m, n) = ({m}, {n}): mutation gives ({}, {}), M-action gives ({f}, {g})",
                    seed.var1, seed.var2
                )),
            });
        }
    }
    Ok(EquivalenceReport { holds: true, checked, counterexample: None })
}

fn mutate_value(a: &Rational, b: &Rational, e: u32) -> Rational {
    (num_traits::pow(b.clone(), e as usize) + Rational::one()) / a
}

/// Value of `mu_{w_r} ... mu_{w_1}` at `point`.
fn walk_value(point: &(Rational, Rational), word: &[u8], m: u32, n: u32) -> (Rational, Rational) {
    let (mut a, mut b) = point.clone();
    for &d in word {
        if d == 1 {
            a = mutate_value(&a, &b, n);
        } else {
            b = mutate_value(&b, &a, m);
        }
    }
    (a, b)
}

/// Value of `P_r = P_{r-1} o s_{w_r}` at `point`: the substitution of the
/// last letter acts on the point first.
fn maction_value(point: &(Rational, Rational), word: &[u8], m: u32, n: u32) -> (Rational, Rational) {
    let (mut a, mut b) = point.clone();
    for &d in word.iter().rev() {
        if d == 1 {
            a = mutate_value(&a, &b, n);
        } else {
            b = mutate_value(&b, &a, m);
        }
    }
    (a, b)
}

/// Exact evaluation of both identities at the given points, for
/// `k_min <= k <= k_max`. Points must have positive coordinates so that no
/// intermediate value vanishes. This is an identity test by evaluation:
/// a disagreement is a proof of failure, agreement at random points is
/// evidence.
pub fn check_mutation_maction_equivalence_at(
    m: u32,
    n: u32,
    k_min: usize,
    k_max: usize,
    points: &[(Rational, Rational)],
) -> Result<EquivalenceReport> {
    ExchangeData::new(m, n)?;
    assert!(
        points.iter().all(|(a, b)| a > &Rational::zero() && b > &Rational::zero()),
        "evaluation points must be positive"
    );
    let mut checked = 0;
    for (name, mu_first, mu_len, m_first, m_len) in identities(k_max) {
        if mu_len < 2 * k_min {
            continue;
        }
        let mu_word = alternating_word(mu_first, mu_len);
        let m_word = alternating_word(m_first, m_len);
        for p in points {
            checked += 1;
            let lhs = walk_value(p, &mu_word, m, n);
            let rhs = maction_value(p, &m_word, m, n);
            if lhs != rhs {
                return Ok(EquivalenceReport {
                    holds: false,
                    checked,
                    counterexample: Some(format!(
                        "{name} at (m, n) = ({m}, {n}), point ({}, {}): {lhs:?} vs {rhs:?}",
                        p.0, p.1
                    )),
                });
            }
        }
    }
    Ok(EquivalenceReport { holds: true, checked, counterexample: None })
}
