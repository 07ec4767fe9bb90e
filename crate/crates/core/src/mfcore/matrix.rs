use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{same_ring, GradeVector, GradedRing, Polynomial};

/// Generator twists of a free graded module `⊕ R(s_i)`; the generator with
/// twist `s` lives in degree `-s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ShiftList(pub Vec<GradeVector>);

impl ShiftList {
    pub fn new(shifts: Vec<GradeVector>) -> Self {
        ShiftList(shifts)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GradeVector> {
        self.0.iter()
    }

    pub fn shifted(&self, k: &GradeVector) -> ShiftList {
        ShiftList(self.0.iter().map(|s| s + k).collect())
    }

    pub fn negated(&self) -> ShiftList {
        ShiftList(self.0.iter().map(|s| -s).collect())
    }

    pub fn concat(&self, other: &ShiftList) -> ShiftList {
        ShiftList(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn permuted(&self, perm: &[usize]) -> ShiftList {
        ShiftList(perm.iter().map(|&i| self.0[i].clone()).collect())
    }
}

impl std::ops::Index<usize> for ShiftList {
    type Output = GradeVector;
    fn index(&self, i: usize) -> &GradeVector {
        &self.0[i]
    }
}

/// Polynomial matrix between free graded modules. Entry `(i, j)` must be
/// homogeneous of degree `rows[i] - cols[j] + weight` (or zero).
#[derive(Clone, Debug)]
pub struct GradedMatrix {
    ring: Arc<GradedRing>,
    rows: ShiftList,
    cols: ShiftList,
    weight: GradeVector,
    entries: Vec<Vec<Polynomial>>,
}

impl PartialEq for GradedMatrix {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring)
            && self.rows == other.rows
            && self.cols == other.cols
            && self.weight == other.weight
            && self.entries == other.entries
    }
}

impl GradedMatrix {
    /// Shape is checked here; homogeneity is checked by [`Self::check_homogeneity`].
    pub fn new(
        ring: &Arc<GradedRing>,
        rows: ShiftList,
        cols: ShiftList,
        weight: GradeVector,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if entries.len() != rows.len() || entries.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::ShapeMismatch(format!(
                "expected a {}x{} matrix",
                rows.len(),
                cols.len()
            )));
        }
        let g = ring.channels();
        if weight.len() != g || rows.iter().chain(cols.iter()).any(|s| s.len() != g) {
            return Err(Error::ShapeMismatch(format!(
                "shift vectors must have {g} channels"
            )));
        }
        if entries.iter().flatten().any(|p| !same_ring(p.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(GradedMatrix {
            ring: ring.clone(),
            rows,
            cols,
            weight,
            entries,
        })
    }

    pub fn zero(ring: &Arc<GradedRing>, rows: ShiftList, cols: ShiftList, weight: GradeVector) -> Self {
        let entries = vec![vec![Polynomial::zero(ring); cols.len()]; rows.len()];
        GradedMatrix {
            ring: ring.clone(),
            rows,
            cols,
            weight,
            entries,
        }
    }

    pub fn identity(ring: &Arc<GradedRing>, shifts: &ShiftList) -> Self {
        let mut m = Self::zero(ring, shifts.clone(), shifts.clone(), ring.zero_degree());
        for i in 0..shifts.len() {
            m.entries[i][i] = Polynomial::one(ring);
        }
        m
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn rows(&self) -> &ShiftList {
        &self.rows
    }

    pub fn cols(&self) -> &ShiftList {
        &self.cols
    }

    pub fn weight(&self) -> &GradeVector {
        &self.weight
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn expected_degree(&self, i: usize, j: usize) -> GradeVector {
        &(&self.rows[i] - &self.cols[j]) + &self.weight
    }

    pub fn check_homogeneity(&self, name: &str) -> Result<()> {
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                let expected = self.expected_degree(i, j);
                if !self.entries[i][j].is_homogeneous_of(&expected) {
                    return Err(Error::HomogeneityViolation {
                        matrix: name.to_string(),
                        row: i,
                        col: j,
                        expected,
                    });
                }
            }
        }
        Ok(())
    }

    /// Matrix product; weights add.
    pub fn mul(&self, rhs: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.ncols(), rhs.nrows(), "matrix product shape");
        let mut out = GradedMatrix::zero(
            &self.ring,
            self.rows.clone(),
            rhs.cols.clone(),
            &self.weight + &rhs.weight,
        );
        for i in 0..self.nrows() {
            for k in 0..self.ncols() {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols() {
                    let b = &rhs.entries[k][j];
                    if !b.is_zero() {
                        out.entries[i][j] = &out.entries[i][j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    /// Entrywise sum; metadata of `self` is kept.
    pub fn add(&self, rhs: &GradedMatrix) -> GradedMatrix {
        let mut out = self.clone();
        for (ro, rr) in out.entries.iter_mut().zip(&rhs.entries) {
            for (a, b) in ro.iter_mut().zip(rr) {
                *a = &*a + b;
            }
        }
        out
    }

    pub fn neg(&self) -> GradedMatrix {
        self.map_entries(|p| -p)
    }

    pub fn scale_by(&self, g: &Polynomial) -> GradedMatrix {
        self.map_entries(|p| p * g)
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> GradedMatrix {
        GradedMatrix {
            ring: self.ring.clone(),
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            weight: self.weight.clone(),
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(&f).collect())
                .collect(),
        }
    }

    /// Same entries with new grading metadata.
    pub fn relabel(&self, rows: ShiftList, cols: ShiftList, weight: GradeVector) -> GradedMatrix {
        assert_eq!(rows.len(), self.nrows());
        assert_eq!(cols.len(), self.ncols());
        GradedMatrix {
            ring: self.ring.clone(),
            rows,
            cols,
            weight,
            entries: self.entries.clone(),
        }
    }

    pub fn transposed_entries(&self) -> Vec<Vec<Polynomial>> {
        (0..self.ncols())
            .map(|j| (0..self.nrows()).map(|i| self.entries[i][j].clone()).collect())
            .collect()
    }

    /// `self == g * id` entrywise; returns the first differing entry.
    pub fn first_deviation_from_scalar(&self, g: &Polynomial) -> Option<(usize, usize)> {
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                let expect = if i == j { g.clone() } else { Polynomial::zero(&self.ring) };
                if self.entries[i][j] != expect {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|p| p.is_zero())
    }

    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> GradedMatrix {
        GradedMatrix {
            ring: self.ring.clone(),
            rows: self.rows.permuted(row_perm),
            cols: self.cols.permuted(col_perm),
            weight: self.weight.clone(),
            entries: row_perm
                .iter()
                .map(|&i| col_perm.iter().map(|&j| self.entries[i][j].clone()).collect())
                .collect(),
        }
    }

    /// Block matrix; `None` blocks are zero.
    pub fn from_blocks(
        ring: &Arc<GradedRing>,
        row_parts: &[&ShiftList],
        col_parts: &[&ShiftList],
        weight: GradeVector,
        blocks: &[Vec<Option<&[Vec<Polynomial>]>>],
    ) -> GradedMatrix {
        let rows = row_parts
            .iter()
            .fold(ShiftList::default(), |acc, s| acc.concat(s));
        let cols = col_parts
            .iter()
            .fold(ShiftList::default(), |acc, s| acc.concat(s));
        let mut out = GradedMatrix::zero(ring, rows, cols, weight);
        let mut r0 = 0;
        for (bi, rp) in row_parts.iter().enumerate() {
            let mut c0 = 0;
            for (bj, cp) in col_parts.iter().enumerate() {
                if let Some(block) = blocks[bi][bj] {
                    for i in 0..rp.len() {
                        for j in 0..cp.len() {
                            out.entries[r0 + i][c0 + j] = block[i][j].clone();
                        }
                    }
                }
                c0 += cp.len();
            }
            r0 += rp.len();
        }
        out
    }
}

impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            write!(f, "{}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
