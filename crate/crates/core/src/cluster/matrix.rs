use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};

/// Square integer exchange matrix of any size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    entries: Vec<Vec<i64>>,
}

impl ExchangeMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let size = entries.len();
        if size == 0 || entries.iter().any(|r| r.len() != size) {
            return Err(Error::PreconditionViolated("exchange matrix must be square and nonempty".into()));
        }
        Ok(ExchangeMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn neg(&self) -> Self {
        ExchangeMatrix {
            entries: self.entries.iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
        }
    }

    /// Looks for positive `d_i` with `d_i b_ij = -d_j b_ji`, propagating
    /// ratios over the connected components of the support.
    pub fn is_skew_symmetrizable(&self) -> bool {
        use num_rational::Ratio;
        let n = self.size();
        let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
        for root in 0..n {
            if d[root].is_some() {
                continue;
            }
            d[root] = Some(Ratio::from_integer(1));
            let mut stack = vec![root];
            while let Some(i) = stack.pop() {
                let di = d[i].unwrap();
                for j in 0..n {
                    let (bij, bji) = (self.get(i, j), self.get(j, i));
                    if i == j {
                        if bij != 0 {
                            return false;
                        }
                        continue;
                    }
                    if (bij == 0) != (bji == 0) || (bij != 0 && bij.signum() == bji.signum()) {
                        return false;
                    }
                    if bij == 0 {
                        continue;
                    }
                    // d_i b_ij = -d_j b_ji
                    let dj = di * Ratio::new(bij, -bji);
                    match d[j] {
                        None => {
                            d[j] = Some(dj);
                            stack.push(j);
                        }
                        Some(old) if old != dj => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }
}

/// Matrix mutation at the 1-based index `k`.
pub fn matrix_mutate(b: &ExchangeMatrix, k: usize) -> Result<ExchangeMatrix> {
    let size = b.size();
    if k == 0 || k > size {
        return Err(Error::IndexOutOfRange { index: k, size });
    }
    let k = k - 1;
    let entries = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let bij = b.get(i, j);
                    if i == k || j == k {
                        -bij
                    } else {
                        let (bik, bkj) = (b.get(i, k), b.get(k, j));
                        bij + bik.max(0) * bkj + bik * (-bkj).max(0)
                    }
                })
                .collect()
        })
        .collect();
    Ok(ExchangeMatrix { entries })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImrReport {
    pub holds: bool,
    pub depth: usize,
    /// Distinct matrices reached.
    pub reached: usize,
    /// True when no new matrix appeared before `depth` ran out, so the
    /// answer covers the whole mutation class.
    pub closed: bool,
    /// Mutation sequence reaching a matrix other than `B` and `-B`.
    pub witness: Option<Vec<usize>>,
}

/// Breadth-first matrix mutation up to `depth` steps; holds iff every matrix
/// reached is `B` or `-B`.
pub fn check_imr(b: &ExchangeMatrix, depth: usize) -> ImrReport {
    let neg = b.neg();
    let mut seen: HashSet<ExchangeMatrix> = HashSet::from([b.clone()]);
    let mut queue = VecDeque::from([(b.clone(), Vec::<usize>::new())]);
    let mut closed = true;
    while let Some((cur, path)) = queue.pop_front() {
        if path.len() == depth {
            closed = false;
            continue;
        }
        for k in 1..=b.size() {
            let next = matrix_mutate(&cur, k).expect("index within size");
            let mut p = path.clone();
            p.push(k);
            if next != *b && next != neg {
                return ImrReport {
                    holds: false,
                    depth,
                    reached: seen.len() + 1,
                    closed: false,
                    witness: Some(p),
                };
            }
            if seen.insert(next.clone()) {
                queue.push_back((next, p));
            }
        }
    }
    ImrReport { holds: true, depth, reached: seen.len(), closed, witness: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> ExchangeMatrix {
        ExchangeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn rank3_examples_satisfy_imr() {
        let b = mat(&[&[0, 2, -2], &[-2, 0, 2], &[2, -2, 0]]);
        assert_eq!(matrix_mutate(&b, 1).unwrap(), b.neg());
        assert!(check_imr(&b, 6).holds);
        let c = mat(&[&[0, 1, -1], &[-4, 0, 2], &[4, -2, 0]]);
        assert!(c.is_skew_symmetrizable());
        assert!(check_imr(&c, 6).holds);
    }

    #[test]
    fn a3_fails() {
        let a3 = mat(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]]);
        let r = check_imr(&a3, 3);
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().len(), 1);
    }

    #[test]
    fn involution_and_rank2() {
        let b = mat(&[&[0, 3], &[-2, 0]]);
        assert_eq!(matrix_mutate(&b, 1).unwrap(), mat(&[&[0, -3], &[2, 0]]));
        for k in 1..=2 {
            assert_eq!(matrix_mutate(&matrix_mutate(&b, k).unwrap(), k).unwrap(), b);
        }
        assert_eq!(
            matrix_mutate(&b, 3).unwrap_err(),
            Error::IndexOutOfRange { index: 3, size: 2 }
        );
    }

    #[test]
    fn symmetrizability() {
        assert!(mat(&[&[0, 1], &[-4, 0]]).is_skew_symmetrizable());
        assert!(!mat(&[&[0, 3], &[0, 0]]).is_skew_symmetrizable());
        assert!(!mat(&[&[0, 1], &[1, 0]]).is_skew_symmetrizable());
        // 3-cycle with inconsistent ratios
        assert!(!mat(&[&[0, 1, -1], &[-2, 0, 1], &[1, -1, 0]]).is_skew_symmetrizable());
    }
}
