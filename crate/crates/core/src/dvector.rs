//! Denominator vectors of rank-2 cluster variables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cluster::{alternating_word, track_walk, tree_step, walk, ExchangeData};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DVector {
    pub d1: BigInt,
    pub d2: BigInt,
}

impl DVector {
    pub fn new(d1: impl Into<BigInt>, d2: impl Into<BigInt>) -> Self {
        DVector { d1: d1.into(), d2: d2.into() }
    }

    fn scaled(&self, c: &BigInt) -> DVector {
        DVector { d1: &self.d1 * c, d2: &self.d2 * c }
    }

    fn add(&self, o: &DVector) -> DVector {
        DVector { d1: &self.d1 + &o.d1, d2: &self.d2 + &o.d2 }
    }

    /// `a * u + b * v`.
    fn combo(a: &BigInt, u: &DVector, b: &BigInt, v: &DVector) -> DVector {
        u.scaled(a).add(&v.scaled(b))
    }

    fn positive_part(&self) -> DVector {
        DVector { d1: self.d1.clone().max(BigInt::zero()), d2: self.d2.clone().max(BigInt::zero()) }
    }

    pub fn as_i64(&self) -> Option<(i64, i64)> {
        Some((self.d1.to_i64()?, self.d2.to_i64()?))
    }
}

impl fmt::Display for DVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d1, self.d2)
    }
}

/// d-vectors of both cluster variables, keyed by tree position.
pub type DTable = BTreeMap<i64, [DVector; 2]>;

/// One exchange step on d-vectors. Direction 1 replaces `d_1` by
/// `-d_1 + [n d_2]_+`, direction 2 replaces `d_2` by `-d_2 + [m d_1]_+`,
/// with `[.]_+` taken componentwise.
pub fn dvector_step(pair: &[DVector; 2], direction: u8, m: u32, n: u32) -> [DVector; 2] {
    let mut out = pair.clone();
    let (k, other, e) = if direction == 1 { (0, 1, n) } else { (1, 0, m) };
    let lifted = pair[other].scaled(&BigInt::from(e)).positive_part();
    out[k] = DVector { d1: &lifted.d1 - &pair[k].d1, d2: &lifted.d2 - &pair[k].d2 };
    out
}

fn initial_pair() -> [DVector; 2] {
    [DVector::new(-1, 0), DVector::new(0, -1)]
}

/// Positions `-k_max ..= k_max` by the exchange recurrence, walking out from
/// `t0` in both directions.
pub fn dvectors_recurrence(m: u32, n: u32, k_max: i64) -> Result<DTable> {
    ExchangeData::new(m, n)?;
    let mut table = DTable::new();
    table.insert(0, initial_pair());
    for first in [1u8, 2] {
        let mut pos = 0;
        let mut cur = initial_pair();
        for d in alternating_word(first, k_max.max(0) as usize) {
            cur = dvector_step(&cur, d, m, n);
            pos = tree_step(pos, d);
            table.insert(pos, cur.clone());
        }
    }
    Ok(table)
}

/// d-vectors at `t_{2k}` and `t_{2k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub even: [DVector; 2],
    pub odd: [DVector; 2],
}

/// `u_j` for `j = 0..=len` with `u_{j+1} = (mn - 2) u_j - u_{j-1}`.
fn chebyshev(u0: BigInt, u1: BigInt, c: &BigInt, len: usize) -> Vec<BigInt> {
    let mut out = vec![u0, u1];
    while out.len() <= len {
        let k = out.len();
        let next = c * &out[k - 1] - &out[k - 2];
        out.push(next);
    }
    out.truncate(len + 1);
    out
}

/// `alpha_{i,j}` (entries of the upper 2x2 block of `W^j`) and `beta_{i,j}`
/// (lower block), `i = 1..4` row-major, from the integer recurrence.
pub fn alpha_beta(m: u32, n: u32, j: usize) -> ([BigInt; 4], [BigInt; 4]) {
    let (m, n) = (BigInt::from(m), BigInt::from(n));
    let mn = &m * &n;
    let c = &mn - 2;
    let one = BigInt::from(1);
    let zero = BigInt::zero();
    let seq = |u0: &BigInt, u1: BigInt| chebyshev(u0.clone(), u1, &c, j)[j].clone();
    let alpha = [
        seq(&one, BigInt::from(-1)),
        seq(&zero, n.clone()),
        seq(&zero, -m.clone()),
        seq(&one, &mn - 1),
    ];
    let beta = [seq(&one, &mn - 1), seq(&zero, -n.clone()), seq(&zero, m.clone()), seq(&one, BigInt::from(-1))];
    (alpha, beta)
}

fn base_vectors(m: u32) -> (DVector, DVector, DVector, DVector) {
    (DVector::new(1, 0), DVector::new(0, -1), DVector::new(1, 0), DVector::new(m, 1))
}

/// Closed forms for `mn >= 4` and `k >= 1`.
pub fn dvectors_closed_form(m: u32, n: u32, k: u64) -> Result<ClosedForm> {
    if (m as u64) * (n as u64) <= 3 {
        return Err(Error::UnsupportedRegime(format!(
            "closed forms need mn >= 4, got (m, n) = ({m}, {n})"
        )));
    }
    if k == 0 {
        return Err(Error::PreconditionViolated("closed forms start at k = 1".into()));
    }
    let (d11, d21, d12, d22) = base_vectors(m);
    let kk = BigInt::from(k);
    // a * k + b
    let f = |a: i64, b: i64| -> BigInt { &kk * a + b };
    let (even, odd) = match (m, n) {
        (2, 2) => (
            [
                DVector::combo(&f(2, -1), &d11, &f(-2, 2), &d21),
                DVector::combo(&f(2, 0), &d11, &f(-2, 1), &d21),
            ],
            [
                DVector::combo(&f(-2, 1), &d12, &f(2, 0), &d22),
                DVector::combo(&f(-2, 2), &d12, &f(2, -1), &d22),
            ],
        ),
        (1, 4) => (
            [
                DVector::combo(&f(2, -1), &d11, &f(-4, 4), &d21),
                DVector::combo(&f(1, 0), &d11, &f(-2, 1), &d21),
            ],
            [
                DVector::combo(&f(-2, 1), &d12, &f(4, 0), &d22),
                DVector::combo(&f(-1, 1), &d12, &f(2, -1), &d22),
            ],
        ),
        // W - I is nilpotent here, so W^j = I + j (W - I).
        (4, 1) => (
            [
                DVector::combo(&f(2, -1), &d11, &f(-1, 1), &d21),
                DVector::combo(&f(4, 0), &d11, &f(-2, 1), &d21),
            ],
            [
                DVector::combo(&f(-2, 1), &d12, &f(1, 0), &d22),
                DVector::combo(&f(-4, 4), &d12, &f(2, -1), &d22),
            ],
        ),
        _ => {
            let (a, b) = alpha_beta(m, n, (k - 1) as usize);
            let (mb, nb) = (BigInt::from(m), BigInt::from(n));
            (
                [
                    DVector::combo(&(&a[0] + &mb * &a[1]), &d11, &-a[1].clone(), &d21),
                    DVector::combo(&(&a[2] + &mb * &a[3]), &d11, &-a[3].clone(), &d21),
                ],
                [
                    DVector::combo(&-b[0].clone(), &d12, &(&nb * &b[0] + &b[1]), &d22),
                    DVector::combo(&-b[2].clone(), &d12, &(&nb * &b[2] + &b[3]), &d22),
                ],
            )
        }
    };
    Ok(ClosedForm { even, odd })
}

type Mat4 = [[BigInt; 4]; 4];

fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|l| &a[i][l] * &b[l][j]).sum()))
}

fn mat(rows: [[i64; 4]; 4]) -> Mat4 {
    rows.map(|r| r.map(BigInt::from))
}

/// `B_k = W^{k-1} U A_1` with `W = U V`; rows of `B_k` are
/// `d_{1;t2k}, d_{2;t2k}, d_{1;t2k+1}, d_{2;t2k+1}`.
pub fn dvectors_matrix_form(m: u32, n: u32, k: u64) -> Result<ClosedForm> {
    if k == 0 {
        return Err(Error::PreconditionViolated("matrix form starts at k = 1".into()));
    }
    let (m, n) = (m as i64, n as i64);
    let u = mat([[1, 0, 0, 0], [m, -1, 0, 0], [0, 0, -1, n], [0, 0, 0, 1]]);
    let v = mat([[-1, n, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, m, -1]]);
    let w = mat_mul(&u, &v);
    let mut p = mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
    for _ in 1..k {
        p = mat_mul(&w, &p);
    }
    let pu = mat_mul(&p, &u);
    let (d11, d21, d12, d22) = base_vectors(m as u32);
    let a1 = [d11, d21, d12, d22];
    let row = |r: usize| {
        (0..4).fold(DVector::new(0, 0), |acc, l| acc.add(&a1[l].scaled(&pu[r][l])))
    };
    Ok(ClosedForm { even: [row(0), row(1)], odd: [row(2), row(3)] })
}

/// `a = mn/2 - 1`, `b = sqrt(mn(mn - 4))/2`; the eigenvalues of `W` are
/// `a +- b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormParams {
    pub m: u32,
    pub n: u32,
    pub a: f64,
    pub b: f64,
}

impl ClosedFormParams {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        let mn = (m * n) as f64;
        if m * n < 5 {
            return Err(Error::UnsupportedRegime(format!("radical form needs mn >= 5, got {}", m * n)));
        }
        let p = ClosedFormParams { m, n, a: mn / 2.0 - 1.0, b: (mn * (mn - 4.0)).sqrt() / 2.0 };
        debug_assert!(p.a > p.b && p.b > 1.0 && p.a - p.b > 0.0 && p.a - p.b < 1.0);
        Ok(p)
    }

    /// `alpha_{i,j}` and `beta_{i,j}` from the radical expressions, in
    /// double precision.
    pub fn alpha_beta_f64(&self, j: i32) -> ([f64; 4], [f64; 4]) {
        let (m, n) = (self.m as f64, self.n as f64);
        let mn = m * n;
        let (s, r) = (mn.sqrt(), (mn - 4.0).sqrt());
        let lo = (self.a - self.b).powi(j);
        let hi = (self.a + self.b).powi(j);
        let alpha = [
            0.5 * (lo + hi + (s * lo - s * hi) / r),
            (-n.sqrt() * lo + n.sqrt() * hi) / (m * (mn - 4.0)).sqrt(),
            (m.sqrt() * lo - m.sqrt() * hi) / (n * (mn - 4.0)).sqrt(),
            ((-s + r) * lo + (s + r) * hi) / (2.0 * r),
        ];
        let beta = [
            0.5 * (lo + hi + (-s * lo + s * hi) / r),
            (n.sqrt() * lo - n.sqrt() * hi) / (m * (mn - 4.0)).sqrt(),
            (-m.sqrt() * lo + m.sqrt() * hi) / (n * (mn - 4.0)).sqrt(),
            ((s + r) * lo + (-s + r) * hi) / (2.0 * r),
        ];
        (alpha, beta)
    }
}

/// Compares the radical expressions, rounded to the nearest integer, with
/// the integer recurrence for `j = 0..=j_max`. Only meaningful while the
/// values stay well inside double precision.
pub fn radical_sanity_check(m: u32, n: u32, j_max: usize) -> Result<bool> {
    let p = ClosedFormParams::new(m, n)?;
    for j in 0..=j_max {
        let (fa, fb) = p.alpha_beta_f64(j as i32);
        let (ea, eb) = alpha_beta(m, n, j);
        for (f, e) in fa.iter().chain(&fb).zip(ea.iter().chain(&eb)) {
            let rounded = f.round();
            if (f - rounded).abs() > 1e-6 * f.abs().max(1.0) || BigInt::from(rounded as i64) != *e {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Where the denominator exponents come from in [`check_dvector_vs_cluster`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClusterSource {
    /// Fully expanded Laurent fractions.
    Expanded,
    /// Exact lowest-term tracking, see `cluster::LeadingTerms`.
    LowestTerms,
}

/// Compares the recurrence with the denominator exponents of the cluster
/// variables at every position within `k_max` steps of `t0`. Returns the
/// first mismatching position, if any.
pub fn check_dvector_vs_cluster(m: u32, n: u32, k_max: usize, source: ClusterSource) -> Result<Option<i64>> {
    let ex = ExchangeData::new(m, n)?;
    let table = dvectors_recurrence(m, n, k_max as i64)?;
    for first in [1u8, 2] {
        let word = alternating_word(first, k_max);
        let observed: Vec<(i64, [(i64, i64); 2])> = match source {
            ClusterSource::Expanded => walk(ex, &word)?
                .iter()
                .map(|s| (s.position, [s.var1.denominator_exponents(), s.var2.denominator_exponents()]))
                .collect(),
            ClusterSource::LowestTerms => track_walk(ex, &word)?
                .iter()
                .map(|t| (t.position, [t.vars[0].dvector(), t.vars[1].dvector()]))
                .collect(),
        };
        for (pos, ds) in observed {
            let expected = &table[&pos];
            for i in 0..2 {
                if expected[i] != DVector::new(ds[i].0, ds[i].1) {
                    return Ok(Some(pos));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClusterType {
    Finite,
    Affine,
    NonAffine,
}

impl ClusterType {
    pub fn name(self) -> &'static str {
        match self {
            ClusterType::Finite => "finite",
            ClusterType::Affine => "affine",
            ClusterType::NonAffine => "non_affine",
        }
    }
}

pub fn classify(m: u32, n: u32) -> ClusterType {
    match (m as u64) * (n as u64) {
        0..=3 => ClusterType::Finite,
        4 => ClusterType::Affine,
        _ => ClusterType::NonAffine,
    }
}

/// Each variable is compared with itself at consecutive positions where it
/// was just exchanged (`x1` at odd `j`, `x2` at even `j`), for
/// `3 <= j <= k_max`; both components must strictly increase.
pub fn check_growth(m: u32, n: u32, k_max: usize) -> Result<bool> {
    if (m as u64) * (n as u64) <= 3 {
        return Err(Error::UnsupportedRegime(format!("growth needs mn >= 4, got (m, n) = ({m}, {n})")));
    }
    let table = dvectors_recurrence(m, n, k_max as i64)?;
    for var in 0..2 {
        let parity = if var == 0 { 1 } else { 0 };
        let seq: Vec<&DVector> = (3..=k_max as i64)
            .filter(|j| j.rem_euclid(2) == parity)
            .map(|j| &table[&j][var])
            .collect();
        for w in seq.windows(2) {
            if w[1].d1 <= w[0].d1 || w[1].d2 <= w[0].d2 {
                return Ok(false);
            }
        }
        if seq.iter().any(|d| d.d1.is_negative() || d.d2.is_negative()) {
            return Ok(false);
        }
    }
    Ok(true)
}
