//! Sparse exact linear algebra over the rationals.
//!
//! Everything is phrased through [`Echelon`], an incrementally built row
//! echelon form that remembers, for every stored row, which combination of
//! the inserted vectors produced it. That is enough for rank, kernel,
//! membership and solving.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::ring::Rational;

/// Sorted by index, no explicit zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// `a + f * b`.
pub fn axpy(a: &[(usize, Rational)], f: &Rational, b: &[(usize, Rational)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((b[j].0, f * &b[j].1));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let v = &a[i].1 + f * &b[j].1;
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(k, v)| (*k, f * v)));
    out
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn sparse_from(entries: impl IntoIterator<Item = (usize, Rational)>) -> SparseVec {
    let mut v: Vec<(usize, Rational)> = entries.into_iter().collect();
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (k, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 += c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    combo: SparseVec,
}

#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<Row>,
    pivot_of: HashMap<usize, usize>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors inserted so far (the domain dimension).
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    fn reduce(&self, mut v: SparseVec, mut combo: SparseVec) -> (SparseVec, SparseVec) {
        let mut k = 0;
        while k < v.len() {
            match self.pivot_of.get(&v[k].0) {
                Some(&r) => {
                    let row = &self.rows[r];
                    let f = -v[k].1.clone();
                    v = axpy(&v, &f, &row.vec);
                    combo = axpy(&combo, &f, &row.combo);
                }
                None => k += 1,
            }
        }
        (v, combo)
    }

    /// Inserts the next domain vector. Returns a kernel vector (a combination
    /// of inserted vectors summing to zero) when `v` is dependent.
    pub fn insert(&mut self, v: SparseVec) -> Option<SparseVec> {
        let idx = self.inserted;
        self.inserted += 1;
        let (res, combo) = self.reduce(v, vec![(idx, Rational::one())]);
        if res.is_empty() {
            return Some(combo);
        }
        let inv = res[0].1.recip();
        let vec: SparseVec = res.iter().map(|(k, c)| (*k, c * &inv)).collect();
        let combo: SparseVec = combo.iter().map(|(k, c)| (*k, c * &inv)).collect();
        self.pivot_of.insert(vec[0].0, self.rows.len());
        self.rows.push(Row { vec, combo });
        None
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone(), Vec::new()).0.is_empty()
    }

    /// Coefficients `c` with `sum c_i * inserted_i = v`, if any.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        let (res, combo) = self.reduce(v.clone(), Vec::new());
        if !res.is_empty() {
            return None;
        }
        Some(combo.into_iter().map(|(k, c)| (k, -c)).collect())
    }
}

/// Rank of the map whose columns are `images`, plus a kernel basis in
/// domain coordinates.
pub fn rank_and_kernel(images: impl IntoIterator<Item = SparseVec>) -> (usize, Vec<SparseVec>) {
    let mut ech = Echelon::new();
    let mut kernel = Vec::new();
    for v in images {
        if let Some(k) = ech.insert(v) {
            kernel.push(k);
        }
    }
    (ech.rank(), kernel)
}

pub fn rank(images: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut ech = Echelon::new();
    for v in images {
        ech.insert(v);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn dense(v: &[i64]) -> SparseVec {
        sparse_from(v.iter().enumerate().map(|(i, &c)| (i, q(c))))
    }

    #[test]
    fn rank_and_kernel_small() {
        // columns (1,2,3), (2,4,6), (0,1,1)
        let (r, ker) = rank_and_kernel(vec![dense(&[1, 2, 3]), dense(&[2, 4, 6]), dense(&[0, 1, 1])]);
        assert_eq!(r, 2);
        assert_eq!(ker, vec![vec![(0, q(-2)), (1, q(1))]]);
    }

    #[test]
    fn solve_recovers_combination() {
        let mut e = Echelon::new();
        e.insert(dense(&[1, 1, 0]));
        e.insert(dense(&[0, 1, 1]));
        let target = dense(&[2, 5, 3]);
        let c = e.solve(&target).unwrap();
        assert_eq!(c, vec![(0, q(2)), (1, q(3))]);
        assert!(e.solve(&dense(&[1, 0, 0])).is_none());
        assert!(e.contains(&dense(&[1, 2, 1])));
    }

    #[test]
    fn axpy_cancels() {
        let a = dense(&[1, 2, 0]);
        let b = dense(&[1, 2, 5]);
        assert_eq!(axpy(&a, &q(-1), &b), vec![(2, q(-5))]);
    }
}
