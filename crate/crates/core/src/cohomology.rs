//! Degree-sliced cohomology of `Hom(P, Q)`.
//!
//! The even part of weight `k` is `A = Hom(P0,Q0)` and `B = Hom(P1,Q1)` at
//! weight `k`; the odd part is `C = Hom(P0,Q1)` at weight `k` and
//! `D = Hom(P1,Q0)` at weight `k + w`. The differential runs
//!
//! ```text
//! O_{k-w} -> E_k -> O_k -> E_{k+w}
//! ```
//!
//! so each slice is a finite-dimensional piece of a complex that is not
//! closed on itself: the ranks flowing in and out of a slice are recorded
//! alongside the cohomology.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{rank_and_kernel, sparse_from, Echelon, SparseVec};
use crate::mfcore::{GradedMatrix, MFMorphism, MatrixFactorization, Parity, ShiftList};
use crate::ring::{monomial_basis, monomials_of_slicing_degree, GradeVector, Monomial, Polynomial, Rational};
use crate::singularity::tyurina_ideal;

#[derive(Clone, Debug)]
pub struct HomComplex {
    source: MatrixFactorization,
    target: MatrixFactorization,
    square_zero: bool,
}

/// Scalar `V` with `M = V * id` for a square matrix, if there is one.
fn scalar_of(m: &GradedMatrix) -> Option<Polynomial> {
    if m.nrows() == 0 {
        return None;
    }
    let g = m.entry(0, 0).clone();
    m.first_deviation_from_scalar(&g).is_none().then_some(g)
}

pub fn hom_complex(source: &MatrixFactorization, target: &MatrixFactorization) -> Result<HomComplex> {
    source.check_compatible(target)?;
    // d^2(phi) = V_Q phi - phi V_P, where V is the actual curvature
    let curvature = |mf: &MatrixFactorization| -> Option<Option<Polynomial>> {
        let ab = mf.alpha().mul(mf.beta());
        let ba = mf.beta().mul(mf.alpha());
        match (mf.rank(), scalar_of(&ab), scalar_of(&ba)) {
            ((0, 0), _, _) => Some(None),
            ((0, _), _, Some(v)) => Some(Some(v)),
            ((_, 0), Some(v), _) => Some(Some(v)),
            (_, Some(u), Some(v)) if u == v => Some(Some(u)),
            _ => None,
        }
    };
    let square_zero = match (curvature(source), curvature(target)) {
        (Some(Some(u)), Some(Some(v))) => u == v,
        (Some(_), Some(_)) => true,
        _ => false,
    };
    Ok(HomComplex {
        source: source.clone(),
        target: target.clone(),
        square_zero,
    })
}

/// Which part of a Hom complex a slice lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SliceIndex {
    /// Exact multidegree.
    Degree(GradeVector),
    /// All multidegrees with this slicing-channel component.
    Slicing(i64),
}

impl SliceIndex {
    fn shifted(&self, d: &GradeVector, ch: usize) -> SliceIndex {
        match self {
            SliceIndex::Degree(g) => SliceIndex::Degree(g + d),
            SliceIndex::Slicing(k) => SliceIndex::Slicing(k + d.get(ch)),
        }
    }

    /// The slicing-channel component.
    pub fn slicing(&self, ch: usize) -> i64 {
        match self {
            SliceIndex::Degree(g) => g.get(ch),
            SliceIndex::Slicing(k) => *k,
        }
    }
}

impl fmt::Display for SliceIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceIndex::Degree(g) => write!(f, "{g}"),
            SliceIndex::Slicing(k) => write!(f, "{k}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Block {
    A,
    B,
    C,
    D,
}

type Key = (Block, usize, usize, Monomial);

struct Space {
    keys: Vec<Key>,
    lookup: HashMap<Key, usize>,
}

impl Space {
    fn dim(&self) -> usize {
        self.keys.len()
    }
}

/// Coordinates in a target space; keys outside the space (possible only
/// for inhomogeneous data) get fresh indices past the end.
struct Coords<'a> {
    space: &'a Space,
    extra: HashMap<Key, usize>,
}

impl<'a> Coords<'a> {
    fn new(space: &'a Space) -> Self {
        Coords {
            space,
            extra: HashMap::new(),
        }
    }

    fn index(&mut self, key: Key) -> usize {
        if let Some(&i) = self.space.lookup.get(&key) {
            return i;
        }
        let n = self.space.dim() + self.extra.len();
        *self.extra.entry(key).or_insert(n)
    }

    fn vector(&mut self, parts: Vec<(Block, usize, usize, Polynomial)>) -> SparseVec {
        let mut entries = Vec::new();
        for (b, i, j, p) in parts {
            for (m, c) in p.terms() {
                entries.push((self.index((b, i, j, m.clone())), c.clone()));
            }
        }
        sparse_from(entries)
    }
}

impl HomComplex {
    pub fn source(&self) -> &MatrixFactorization {
        &self.source
    }

    pub fn target(&self) -> &MatrixFactorization {
        &self.target
    }

    /// Whether `d^2 = 0` holds exactly, decided from the actual products
    /// `alpha*beta` and `beta*alpha` of both ends.
    pub fn square_zero(&self) -> bool {
        self.square_zero
    }

    fn slicing_channel(&self) -> Result<usize> {
        self.source.ring().slicing_channel().ok_or(Error::NoSlicingChannel)
    }

    fn block_shape(&self, b: Block) -> (&ShiftList, &ShiftList, bool) {
        let (p, q) = (&self.source, &self.target);
        match b {
            Block::A => (q.shifts0(), p.shifts0(), false),
            Block::B => (q.shifts1(), p.shifts1(), false),
            Block::C => (q.shifts1(), p.shifts0(), false),
            Block::D => (q.shifts0(), p.shifts1(), true),
        }
    }

    fn space(&self, parity: Parity, idx: &SliceIndex) -> Result<Space> {
        let ch = self.slicing_channel()?;
        let ring = self.source.ring();
        let w = self.source.w();
        let blocks = match parity {
            Parity::Even => [Block::A, Block::B],
            Parity::Odd => [Block::C, Block::D],
        };
        let mut keys = Vec::new();
        let mut cache: HashMap<SliceIndex, Vec<Monomial>> = HashMap::new();
        for b in blocks {
            let (rows, cols, plus_w) = self.block_shape(b);
            for (i, r) in rows.iter().enumerate() {
                for (j, c) in cols.iter().enumerate() {
                    let mut d = r - c;
                    if plus_w {
                        d = &d + w;
                    }
                    let e = idx.shifted(&d, ch);
                    if !cache.contains_key(&e) {
                        let basis = match &e {
                            SliceIndex::Degree(g) => monomial_basis(ring, g)?,
                            SliceIndex::Slicing(k) => monomials_of_slicing_degree(ring, *k)?,
                        };
                        cache.insert(e.clone(), basis);
                    }
                    for m in &cache[&e] {
                        keys.push((b, i, j, m.clone()));
                    }
                }
            }
        }
        let lookup = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Ok(Space { keys, lookup })
    }

    /// Image of one basis element `m * E_{ij}` of block `b` under `d`.
    fn image(&self, b: Block, i: usize, j: usize, m: &Monomial) -> Vec<(Block, usize, usize, Polynomial)> {
        let (p, q) = (&self.source, &self.target);
        let one = Rational::from_integer(1.into());
        let mut out = Vec::new();
        // left multiplication: entry (l, j) gets M[l][i] * m
        let left = |mat: &GradedMatrix, to: Block, neg: bool, out: &mut Vec<_>| {
            for l in 0..mat.nrows() {
                let e = mat.entry(l, i);
                if !e.is_zero() {
                    let v = e.mul_monomial(m, &one);
                    out.push((to, l, j, if neg { -v } else { v }));
                }
            }
        };
        match b {
            Block::A => left(q.alpha(), Block::C, false, &mut out),
            Block::B => left(q.beta(), Block::D, false, &mut out),
            Block::C => left(q.beta(), Block::A, false, &mut out),
            Block::D => left(q.alpha(), Block::B, false, &mut out),
        }
        // right multiplication: entry (i, c) gets m * N[j][c]
        let right = |mat: &GradedMatrix, to: Block, neg: bool, out: &mut Vec<_>| {
            for c in 0..mat.ncols() {
                let e = mat.entry(j, c);
                if !e.is_zero() {
                    let v = e.mul_monomial(m, &one);
                    out.push((to, i, c, if neg { -v } else { v }));
                }
            }
        };
        match b {
            Block::A => right(p.beta(), Block::D, true, &mut out),
            Block::B => right(p.alpha(), Block::C, true, &mut out),
            Block::C => right(p.beta(), Block::B, false, &mut out),
            Block::D => right(p.alpha(), Block::A, false, &mut out),
        }
        out
    }

    fn images(&self, from: &Space, to: &Space) -> Vec<SparseVec> {
        let mut coords = Coords::new(to);
        from.keys
            .iter()
            .map(|(b, i, j, m)| coords.vector(self.image(*b, *i, *j, m)))
            .collect()
    }

    fn normalize(&self, idx: SliceIndex) -> SliceIndex {
        match idx {
            SliceIndex::Slicing(k) if self.source.ring().channels() == 1 => {
                SliceIndex::Degree(GradeVector::new(vec![k]))
            }
            other => other,
        }
    }

    fn to_morphism(&self, parity: Parity, idx: &SliceIndex, space: &Space, v: &SparseVec) -> Option<MFMorphism> {
        let SliceIndex::Degree(weight) = idx else {
            return None;
        };
        let mut phi = MFMorphism::zero(&self.source, &self.target, parity, weight.clone());
        let ring = self.source.ring();
        let (b0, b1) = match parity {
            Parity::Even => (Block::A, Block::B),
            Parity::Odd => (Block::C, Block::D),
        };
        let mut m0: Vec<Vec<Polynomial>> = phi.block0().entries().to_vec();
        let mut m1: Vec<Vec<Polynomial>> = phi.block1().entries().to_vec();
        for (k, c) in v {
            let (b, i, j, m) = &space.keys[*k];
            let term = Polynomial::monomial(ring, m.clone(), c.clone());
            let slot = if *b == b0 {
                &mut m0[*i][*j]
            } else {
                debug_assert_eq!(*b, b1);
                &mut m1[*i][*j]
            };
            *slot = &*slot + &term;
        }
        phi = MFMorphism::new(&self.source, &self.target, parity, weight.clone(), m0, m1).ok()?;
        Some(phi)
    }

    fn coordinates(&self, phi: &MFMorphism, coords: &mut Coords<'_>) -> SparseVec {
        let (b0, b1) = match phi.parity() {
            Parity::Even => (Block::A, Block::B),
            Parity::Odd => (Block::C, Block::D),
        };
        let mut parts = Vec::new();
        for (b, mat) in [(b0, phi.block0()), (b1, phi.block1())] {
            for i in 0..mat.nrows() {
                for j in 0..mat.ncols() {
                    parts.push((b, i, j, mat.entry(i, j).clone()));
                }
            }
        }
        coords.vector(parts)
    }

    /// Cohomology of the slice at exact multidegree `degree`, with
    /// representatives.
    pub fn cohomology_slice(&self, degree: &GradeVector) -> Result<SliceReport> {
        self.slice(SliceIndex::Degree(degree.clone()), true)
    }

    pub fn slice(&self, idx: SliceIndex, representatives: bool) -> Result<SliceReport> {
        let ch = self.slicing_channel()?;
        let idx = self.normalize(idx);
        let w = self.source.w().clone();
        let even = self.space(Parity::Even, &idx)?;
        let odd = self.space(Parity::Odd, &idx)?;
        let odd_prev = self.space(Parity::Odd, &idx.shifted(&-&w, ch))?;
        let even_next = self.space(Parity::Even, &idx.shifted(&w, ch))?;

        let (rank_even_out, even_kernel) = rank_and_kernel(self.images(&even, &odd));
        let (rank_odd_out, odd_kernel) = rank_and_kernel(self.images(&odd, &even_next));
        let into_even = self.images(&odd_prev, &even);
        let into_odd = self.images(&even, &odd);

        let mut even_reps = Vec::new();
        let mut odd_reps = Vec::new();
        let rank_odd_in;
        {
            let mut ech = Echelon::new();
            for v in into_even {
                ech.insert(v);
            }
            rank_odd_in = ech.rank();
            if representatives {
                for v in &even_kernel {
                    if ech.insert(v.clone()).is_none() {
                        if let Some(m) = self.to_morphism(Parity::Even, &idx, &even, v) {
                            even_reps.push(m);
                        }
                    }
                }
            }
        }
        if representatives {
            let mut ech = Echelon::new();
            for v in into_odd {
                ech.insert(v);
            }
            for v in &odd_kernel {
                if ech.insert(v.clone()).is_none() {
                    if let Some(m) = self.to_morphism(Parity::Odd, &idx, &odd, v) {
                        odd_reps.push(m);
                    }
                }
            }
        }
        let dim_even = even.dim();
        let dim_odd = odd.dim();
        Ok(SliceReport {
            degree: idx,
            dim_even,
            dim_odd,
            h_even: dim_even - rank_even_out - rank_odd_in,
            h_odd: dim_odd - rank_odd_out - rank_even_out,
            rank_even_out,
            rank_odd_in,
            rank_odd_out,
            even_representatives: even_reps,
            odd_representatives: odd_reps,
        })
    }

    /// Lowest slicing degree at which some Hom space is nonzero; `None` if
    /// every space is zero.
    pub fn lowest_nonzero_degree(&self) -> Result<Option<i64>> {
        let ch = self.slicing_channel()?;
        let w = self.source.w().get(ch);
        let mut low: Option<i64> = None;
        for b in [Block::A, Block::B, Block::C, Block::D] {
            let (rows, cols, plus_w) = self.block_shape(b);
            for r in rows.iter() {
                for c in cols.iter() {
                    let k = c.get(ch) - r.get(ch) - if plus_w { w } else { 0 };
                    low = Some(low.map_or(k, |l: i64| l.min(k)));
                }
            }
        }
        Ok(low)
    }
}

#[derive(Clone, Debug)]
pub struct SliceReport {
    pub degree: SliceIndex,
    pub dim_even: usize,
    pub dim_odd: usize,
    pub h_even: usize,
    pub h_odd: usize,
    /// `rank(E_k -> O_k)`.
    pub rank_even_out: usize,
    /// `rank(O_{k-w} -> E_k)`.
    pub rank_odd_in: usize,
    /// `rank(O_k -> E_{k+w})`.
    pub rank_odd_out: usize,
    pub even_representatives: Vec<MFMorphism>,
    pub odd_representatives: Vec<MFMorphism>,
}

impl SliceReport {
    /// `h_even - h_odd == dim_even - dim_odd`. This is rank-nullity for a
    /// two-term periodic complex and fails in general when `w != 0`.
    pub fn euler_identity_holds(&self) -> bool {
        self.h_even as i64 - self.h_odd as i64 == self.dim_even as i64 - self.dim_odd as i64
    }

    /// The identity that always holds for the open slice:
    /// `h_even - h_odd = dim_even - dim_odd - rank_in + rank_out`.
    pub fn balanced_euler_identity_holds(&self) -> bool {
        self.h_even as i64 - self.h_odd as i64
            == self.dim_even as i64 - self.dim_odd as i64 - self.rank_odd_in as i64
                + self.rank_odd_out as i64
    }

    pub fn is_zero(&self) -> bool {
        self.h_even == 0 && self.h_odd == 0
    }
}

/// Whether a window provably contains every nonzero slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowCoverage {
    /// Every Hom space below the window is zero.
    pub lower_complete: bool,
    /// Nothing is claimed above the window unless all Hom spaces vanish.
    pub upper_complete: bool,
}

#[derive(Clone, Debug)]
pub struct ExtTable {
    pub lo: i64,
    pub hi: i64,
    pub slices: Vec<SliceReport>,
    pub coverage: WindowCoverage,
}

impl ExtTable {
    pub fn totals(&self) -> (usize, usize) {
        self.slices
            .iter()
            .fold((0, 0), |(e, o), s| (e + s.h_even, o + s.h_odd))
    }

    pub fn nonzero(&self) -> Vec<&SliceReport> {
        self.slices.iter().filter(|s| !s.is_zero()).collect()
    }

    /// `(h_even, h_odd)` at slicing degree `k`, if inside the window.
    pub fn at(&self, k: i64) -> Option<(usize, usize)> {
        if k < self.lo || k > self.hi {
            return None;
        }
        let s = &self.slices[(k - self.lo) as usize];
        Some((s.h_even, s.h_odd))
    }
}

/// `[-2M, 2M]` with `M` the largest variable degree in the slicing channel.
pub fn default_window(mf: &MatrixFactorization) -> Result<(i64, i64)> {
    let m = mf.ring().max_slicing_degree().ok_or(Error::NoSlicingChannel)?;
    Ok((-2 * m, 2 * m))
}

pub fn ext_table(source: &MatrixFactorization, target: &MatrixFactorization, lo: i64, hi: i64) -> Result<ExtTable> {
    ext_table_with(source, target, lo, hi, false)
}

pub fn ext_table_with(
    source: &MatrixFactorization,
    target: &MatrixFactorization,
    lo: i64,
    hi: i64,
    representatives: bool,
) -> Result<ExtTable> {
    let hc = hom_complex(source, target)?;
    if !hc.square_zero() {
        return Err(Error::NotAComplex);
    }
    let slices = (lo..=hi)
        .map(|k| hc.slice(SliceIndex::Slicing(k), representatives))
        .collect::<Result<Vec<_>>>()?;
    let low = hc.lowest_nonzero_degree()?;
    let coverage = WindowCoverage {
        lower_complete: low.is_none_or(|l| lo <= l),
        upper_complete: low.is_none(),
    };
    Ok(ExtTable { lo, hi, slices, coverage })
}

#[derive(Clone, Debug)]
pub struct NullHomotopy {
    pub nullhomotopic: bool,
    /// `h` with `d(h) = phi` when one exists.
    pub witness: Option<MFMorphism>,
}

/// Solves `d(h) = phi` in the slice of opposite parity: weight `k - w` for
/// even `phi` of weight `k`, weight `k` for odd `phi`.
pub fn is_nullhomotopic(phi: &MFMorphism) -> Result<NullHomotopy> {
    let hc = hom_complex(phi.source(), phi.target())?;
    if !hc.square_zero() {
        return Err(Error::NotAComplex);
    }
    if !phi.is_closed() {
        return Err(Error::NotClosed);
    }
    hc.slicing_channel()?;
    let w = phi.source().w();
    let (h_parity, h_weight) = match phi.parity() {
        Parity::Even => (Parity::Odd, phi.weight() - w),
        Parity::Odd => (Parity::Even, phi.weight().clone()),
    };
    let h_idx = SliceIndex::Degree(h_weight);
    let phi_idx = SliceIndex::Degree(phi.weight().clone());
    let domain = hc.space(h_parity, &h_idx)?;
    let codomain = hc.space(phi.parity(), &phi_idx)?;
    let mut coords = Coords::new(&codomain);
    let mut ech = Echelon::new();
    for (b, i, j, m) in &domain.keys {
        ech.insert(coords.vector(hc.image(*b, *i, *j, m)));
    }
    let target = hc.coordinates(phi, &mut coords);
    match ech.solve(&target) {
        None => Ok(NullHomotopy {
            nullhomotopic: false,
            witness: None,
        }),
        Some(c) => Ok(NullHomotopy {
            nullhomotopic: true,
            witness: hc.to_morphism(h_parity, &h_idx, &domain, &c),
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilationFailure {
    pub generator: String,
    pub degree: String,
    pub parity: Parity,
    pub representative: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilationReport {
    pub passed: bool,
    pub square_zero: bool,
    pub generators: Vec<String>,
    pub checks: usize,
    pub failures: Vec<AnnihilationFailure>,
}

/// Checks that every generator of the Tyurina ideal kills every cohomology
/// representative of `Hom(source, target)` in the window.
pub fn tyurina_annihilation(
    source: &MatrixFactorization,
    target: &MatrixFactorization,
    lo: i64,
    hi: i64,
) -> Result<AnnihilationReport> {
    let hc = hom_complex(source, target)?;
    let tau = tyurina_ideal(target.potential());
    let generators: Vec<Polynomial> = tau.generators().to_vec();
    let mut report = AnnihilationReport {
        passed: true,
        square_zero: hc.square_zero(),
        generators: generators.iter().map(|g| g.to_string()).collect(),
        checks: 0,
        failures: Vec::new(),
    };
    if !hc.square_zero() {
        report.passed = false;
        report.failures.push(AnnihilationFailure {
            generator: String::new(),
            degree: String::new(),
            parity: Parity::Even,
            representative: 0,
            reason: "the Hom differential does not square to zero".into(),
        });
        return Ok(report);
    }
    for k in lo..=hi {
        let s = hc.slice(SliceIndex::Slicing(k), true)?;
        for (parity, reps) in [(Parity::Even, &s.even_representatives), (Parity::Odd, &s.odd_representatives)] {
            for (r, rep) in reps.iter().enumerate() {
                for g in &generators {
                    report.checks += 1;
                    let fail = |reason: String| AnnihilationFailure {
                        generator: g.to_string(),
                        degree: s.degree.to_string(),
                        parity,
                        representative: r,
                        reason,
                    };
                    let mult = MFMorphism::scalar(target, g)?;
                    let product = mult.compose(rep)?;
                    match is_nullhomotopic(&product) {
                        Ok(n) if n.nullhomotopic => {}
                        Ok(_) => report.failures.push(fail("not null-homotopic".into())),
                        Err(e) => report.failures.push(fail(e.to_string())),
                    }
                }
            }
        }
    }
    report.passed = report.failures.is_empty();
    Ok(report)
}

/// A random closed morphism of the given parity and weight: a random
/// combination of cycles in the slice, with small integer coefficients.
pub fn random_closed_morphism<R: rand::Rng>(
    source: &MatrixFactorization,
    target: &MatrixFactorization,
    parity: Parity,
    weight: &GradeVector,
    rng: &mut R,
) -> Result<MFMorphism> {
    let hc = hom_complex(source, target)?;
    if !hc.square_zero() {
        return Err(Error::NotAComplex);
    }
    let ch = hc.slicing_channel()?;
    let idx = SliceIndex::Degree(weight.clone());
    let space = hc.space(parity, &idx)?;
    let next_idx = match parity {
        Parity::Even => idx.clone(),
        Parity::Odd => idx.shifted(source.w(), ch),
    };
    let next = hc.space(parity.flip(), &next_idx)?;
    let (_, kernel) = rank_and_kernel(hc.images(&space, &next));
    let mut acc: SparseVec = Vec::new();
    for v in &kernel {
        let c = Rational::from_integer(rng.gen_range(-3i64..=3).into());
        acc = crate::linalg::axpy(&acc, &c, v);
    }
    hc.to_morphism(parity, &idx, &space, &acc)
        .ok_or_else(|| Error::ShapeMismatch("could not assemble morphism".into()))
}
