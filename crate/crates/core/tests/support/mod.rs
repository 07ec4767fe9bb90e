//! Independent reference computations for the integration tests.
//!
//! Nothing here calls the library's slicing, Gröbner or elimination code:
//! monomials are enumerated by hand, Hom differentials are formed as full
//! block matrices, and ranks come from dense Gaussian elimination.

#![allow(dead_code)]

use std::collections::HashMap;

use mfcat_core::mfcore::MatrixFactorization;
use mfcat_core::ring::{GradedRing, Monomial, Polynomial, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent vectors of weighted degree `d` for the given positive weights.
pub fn monomials(weights: &[i64], d: i64) -> Vec<Vec<u32>> {
    fn go(weights: &[i64], d: i64, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == weights.len() {
            if d == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let w = weights[prefix.len()];
        let mut e = 0;
        while e as i64 * w <= d {
            prefix.push(e);
            go(weights, d - e as i64 * w, prefix, out);
            prefix.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    if d >= 0 {
        go(weights, d, &mut Vec::new(), &mut out);
    }
    out
}

pub fn weights(ring: &GradedRing) -> Vec<i64> {
    ring.variables().iter().map(|v| v.degree.get(0)).collect()
}

/// Rank of a dense rational matrix given as rows.
pub fn dense_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].recip();
        for x in rows[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                for k in 0..ncols {
                    let v = &rows[rank][k] * &f;
                    rows[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

type PolyMat = Vec<Vec<Polynomial>>;

fn matmul(a: &PolyMat, b: &PolyMat, ring: &std::sync::Arc<GradedRing>) -> PolyMat {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let inner = b.len();
    let mut out = vec![vec![Polynomial::zero(ring); m]; n];
    for i in 0..n {
        for j in 0..m {
            for k in 0..inner {
                out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
            }
        }
    }
    out
}

/// `d` of a factorization as one square matrix on `P0 ⊕ P1`.
fn total_differential(mf: &MatrixFactorization) -> PolyMat {
    let ring = mf.ring();
    let (r0, r1) = mf.rank();
    let n = r0 + r1;
    let mut d = vec![vec![Polynomial::zero(ring); n]; n];
    for i in 0..r1 {
        for j in 0..r0 {
            d[r0 + i][j] = mf.alpha().entry(i, j).clone();
        }
    }
    for i in 0..r0 {
        for j in 0..r1 {
            d[i][r0 + j] = mf.beta().entry(i, j).clone();
        }
    }
    d
}

/// Basis of the morphism slice: `(row, col, exponents)` triples of the full
/// `(Q0 ⊕ Q1) x (P0 ⊕ P1)` matrix.
fn slice_basis(p: &MatrixFactorization, q: &MatrixFactorization, odd: bool, k: i64) -> Vec<(usize, usize, Vec<u32>)> {
    let wts = weights(p.ring());
    let w = p.w().get(0);
    let (p0, p1) = p.rank();
    let (q0, q1) = q.rank();
    let src: Vec<(bool, i64)> = p.shifts0().iter().map(|s| (false, s.get(0)))
        .chain(p.shifts1().iter().map(|s| (true, s.get(0))))
        .collect();
    let tgt: Vec<(bool, i64)> = q.shifts0().iter().map(|s| (false, s.get(0)))
        .chain(q.shifts1().iter().map(|s| (true, s.get(0))))
        .collect();
    let _ = (p0, p1, q0, q1);
    let mut out = Vec::new();
    for (i, &(ti, t)) in tgt.iter().enumerate() {
        for (j, &(sj, s)) in src.iter().enumerate() {
            if (ti != sj) != odd {
                continue;
            }
            // odd maps out of P1 carry an extra w
            let extra = if odd && sj { w } else { 0 };
            for e in monomials(&wts, t - s + k + extra) {
                out.push((i, j, e));
            }
        }
    }
    out
}

/// Rank of `d` from the slice `(odd, k)` to the next one.
fn differential_rank(p: &MatrixFactorization, q: &MatrixFactorization, odd: bool, k: i64) -> usize {
    let ring = p.ring();
    let n = ring.nvars();
    let w = p.w().get(0);
    let dp = total_differential(p);
    let dq = total_differential(q);
    let (next_odd, next_k) = if odd { (false, k + w) } else { (true, k) };
    let target = slice_basis(p, q, next_odd, next_k);
    let index: HashMap<(usize, usize, Vec<u32>), usize> =
        target.iter().cloned().enumerate().map(|(i, key)| (key, i)).collect();
    let np = dp.len();
    let nq = dq.len();
    let mut rows = Vec::new();
    for (i, j, e) in slice_basis(p, q, odd, k) {
        let mut phi = vec![vec![Polynomial::zero(ring); np]; nq];
        phi[i][j] = Polynomial::monomial(ring, Monomial(e.clone()), Rational::one());
        let left = matmul(&dq, &phi, ring);
        let right = matmul(&phi, &dp, ring);
        let mut row = vec![Rational::zero(); target.len()];
        for a in 0..nq {
            for b in 0..np {
                let v = if odd { &left[a][b] + &right[a][b] } else { &left[a][b] - &right[a][b] };
                for (m, c) in v.terms() {
                    assert_eq!(m.0.len(), n);
                    let idx = index[&(a, b, m.0.clone())];
                    row[idx] += c;
                }
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return 0;
    }
    dense_rank(rows)
}

/// `(dim E_k, dim O_k, H_even(k), H_odd(k))` of `Hom(p, q)`, single grading.
pub fn dense_hom_slice(p: &MatrixFactorization, q: &MatrixFactorization, k: i64) -> (usize, usize, usize, usize) {
    let w = p.w().get(0);
    let dim_e = slice_basis(p, q, false, k).len();
    let dim_o = slice_basis(p, q, true, k).len();
    let r_out_even = differential_rank(p, q, false, k);
    let r_in_even = differential_rank(p, q, true, k - w);
    let r_out_odd = differential_rank(p, q, true, k);
    (dim_e, dim_o, dim_e - r_out_even - r_in_even, dim_o - r_out_odd - r_out_even)
}

/// `dim (R/(f))_d` for homogeneous `f` of degree `e` in a standard-graded
/// ring with `n` variables: `C(d+n-1, n-1) - C(d-e+n-1, n-1)`.
pub fn hypersurface_hilbert(n: u64, e: i64, d: i64) -> u64 {
    let c = |d: i64| -> u64 {
        if d < 0 {
            return 0;
        }
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..(n - 1) {
            num *= (d as u128) + 1 + i as u128;
            den *= 1 + i as u128;
        }
        (num / den) as u64
    };
    c(d) - c(d - e)
}

/// `dim (R/I)_d` by linear algebra: `dim R_d` minus the rank of all
/// `m * g` with `deg m + deg g = d`.
pub fn quotient_dimension(ring: &std::sync::Arc<GradedRing>, gens: &[Polynomial], d: i64) -> usize {
    let wts = weights(ring);
    let basis = monomials(&wts, d);
    let index: HashMap<Vec<u32>, usize> = basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let Some((m0, _)) = g.terms().next() else { continue };
        let dg: i64 = m0.0.iter().zip(&wts).map(|(&e, &w)| e as i64 * w).sum();
        for e in monomials(&wts, d - dg) {
            let mut row = vec![Rational::zero(); basis.len()];
            let prod = g.mul_monomial(&Monomial(e), &Rational::one());
            for (m, c) in prod.terms() {
                row[index[&m.0]] += c;
            }
            rows.push(row);
        }
    }
    basis.len() - if rows.is_empty() { 0 } else { dense_rank(rows) }
}
