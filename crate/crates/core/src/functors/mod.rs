//! Constructions producing new factorizations or modules from old ones.

mod coker;
mod rees;
mod segal;

use std::sync::Arc;

pub use coker::{coker_presentation, CokerPresentation};
pub use rees::{rees_degenerate, ReesChart, ReesFamily};
pub use segal::{segal_canonicalize, segal_hom_dimension, BigradedLabel};

use crate::error::{Error, Result};
use crate::mfcore::{potential_degree, GradedMatrix, MatrixFactorization, ShiftList};
use crate::ring::{same_ring, GradeVector, GradedRing, Homogeneity, Polynomial};

/// `A ⊗ B` with `d = d_A ⊗ 1 + σ ⊗ d_B`, `σ = -1` on the odd part of `A`.
///
/// Even part: `A0⊗B0` then `A1⊗B1`; odd part: `A0⊗B1` then `A1⊗B0`. Inside a
/// block the left index is outer. The twist of `A1⊗B1` is `s1 + t1 - w` so
/// that the result is again a factorization of degree `w`.
pub fn tensor_product(a: &MatrixFactorization, b: &MatrixFactorization) -> Result<MatrixFactorization> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    if a.w() != b.w() {
        return Err(Error::DegreeMismatch(format!(
            "potential degrees differ: {} vs {}",
            a.w(),
            b.w()
        )));
    }
    let ring = a.ring();
    let w = a.w();
    let (p0, p1) = a.rank();
    let (q0, q1) = b.rank();
    let (s0, s1, t0, t1) = (a.shifts0(), a.shifts1(), b.shifts0(), b.shifts1());

    let block = |x: &ShiftList, y: &ShiftList, extra: Option<&GradeVector>| -> ShiftList {
        let mut v = Vec::with_capacity(x.len() * y.len());
        for sx in x.iter() {
            for sy in y.iter() {
                let mut s = sx + sy;
                if let Some(e) = extra {
                    s = &s - e;
                }
                v.push(s);
            }
        }
        ShiftList::new(v)
    };
    let even = block(s0, t0, None).concat(&block(s1, t1, Some(w)));
    let odd = block(s0, t1, None).concat(&block(s1, t0, None));

    // index helpers
    let e00 = |i: usize, j: usize| i * q0 + j;
    let e11 = |i: usize, j: usize| p0 * q0 + i * q1 + j;
    let o01 = |i: usize, j: usize| i * q1 + j;
    let o10 = |i: usize, j: usize| p0 * q1 + i * q0 + j;

    let zero = Polynomial::zero(ring);
    let mut alpha = vec![vec![zero.clone(); even.len()]; odd.len()];
    let mut beta = vec![vec![zero.clone(); odd.len()]; even.len()];
    let (aa, ab) = (a.alpha().entries(), a.beta().entries());
    let (ba, bb) = (b.alpha().entries(), b.beta().entries());

    for i in 0..p0 {
        for j in 0..q0 {
            let c = e00(i, j);
            for i2 in 0..p1 {
                alpha[o10(i2, j)][c] = &alpha[o10(i2, j)][c] + &aa[i2][i];
            }
            for j2 in 0..q1 {
                alpha[o01(i, j2)][c] = &alpha[o01(i, j2)][c] + &ba[j2][j];
            }
        }
    }
    for i in 0..p1 {
        for j in 0..q1 {
            let c = e11(i, j);
            for i2 in 0..p0 {
                alpha[o01(i2, j)][c] = &alpha[o01(i2, j)][c] + &ab[i2][i];
            }
            for j2 in 0..q0 {
                alpha[o10(i, j2)][c] = &alpha[o10(i, j2)][c] - &bb[j2][j];
            }
        }
    }
    for i in 0..p0 {
        for j in 0..q1 {
            let c = o01(i, j);
            for i2 in 0..p1 {
                beta[e11(i2, j)][c] = &beta[e11(i2, j)][c] + &aa[i2][i];
            }
            for j2 in 0..q0 {
                beta[e00(i, j2)][c] = &beta[e00(i, j2)][c] + &bb[j2][j];
            }
        }
    }
    for i in 0..p1 {
        for j in 0..q0 {
            let c = o10(i, j);
            for i2 in 0..p0 {
                beta[e00(i2, j)][c] = &beta[e00(i2, j)][c] + &ab[i2][i];
            }
            for j2 in 0..q1 {
                beta[e11(i, j2)][c] = &beta[e11(i, j2)][c] - &ba[j2][j];
            }
        }
    }

    let alpha = GradedMatrix::new(ring, odd.clone(), even.clone(), ring.zero_degree(), alpha)?;
    let beta = GradedMatrix::new(ring, even, odd, w.clone(), beta)?;
    let out = MatrixFactorization::from_parts_unchecked(
        ring,
        a.potential() + b.potential(),
        w.clone(),
        alpha,
        beta,
    );
    out.verify()?;
    Ok(out)
}

/// Section `s_Y`, cosection `s` and the twists of the exterior algebra.
///
/// Slot `i` carries degree `a_i = deg s_Y[i]`; `s[i]` then has degree
/// `w - a_i`. The generator `e_S` of the exterior algebra has twist
/// `base + sum_{i in S} a_i - floor(|S|/2) * w`.
#[derive(Clone, Debug)]
pub struct KoszulData {
    ring: Arc<GradedRing>,
    s: Vec<Polynomial>,
    s_y: Vec<Polynomial>,
    potential: Polynomial,
    w: GradeVector,
    slot_degrees: Vec<GradeVector>,
    base: GradeVector,
}

impl KoszulData {
    /// Reads slot degrees off `s_Y` (or off `s` where `s_Y[i] = 0`).
    pub fn new(
        ring: &Arc<GradedRing>,
        s: Vec<Polynomial>,
        s_y: Vec<Polynomial>,
        potential: &Polynomial,
    ) -> Result<Self> {
        let w = potential_degree(potential)?.unwrap_or_else(|| ring.zero_degree());
        let mut slots = Vec::with_capacity(s.len());
        for (si, yi) in s.iter().zip(&s_y) {
            let d = match (yi.homogeneity(), si.homogeneity()) {
                (Homogeneity::Homogeneous(d), _) => d,
                (Homogeneity::Zero, Homogeneity::Homogeneous(d)) => &w - &d,
                (Homogeneity::Zero, Homogeneity::Zero) => ring.zero_degree(),
                (Homogeneity::Inhomogeneous, _) => return Err(Error::InhomogeneousInput(yi.to_string())),
                (_, Homogeneity::Inhomogeneous) => return Err(Error::InhomogeneousInput(si.to_string())),
            };
            slots.push(d);
        }
        Self::with_degrees(ring, s, s_y, potential, Some(w), slots, ring.zero_degree())
    }

    pub fn with_degrees(
        ring: &Arc<GradedRing>,
        s: Vec<Polynomial>,
        s_y: Vec<Polynomial>,
        potential: &Polynomial,
        w: Option<GradeVector>,
        slot_degrees: Vec<GradeVector>,
        base: GradeVector,
    ) -> Result<Self> {
        if s.len() != s_y.len() || s.len() != slot_degrees.len() {
            return Err(Error::ShapeMismatch(format!(
                "s, s_Y and slot degrees have lengths {}, {}, {}",
                s.len(),
                s_y.len(),
                slot_degrees.len()
            )));
        }
        if s.iter().chain(&s_y).chain(std::iter::once(potential)).any(|p| !same_ring(p.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        let w = match (potential_degree(potential)?, w) {
            (Some(d), Some(g)) if d != g => {
                return Err(Error::DegreeMismatch(format!("potential has degree {d}, declared {g}")))
            }
            (Some(d), _) => d,
            (None, Some(g)) => g,
            (None, None) => ring.zero_degree(),
        };
        for (i, ((si, yi), a)) in s.iter().zip(&s_y).zip(&slot_degrees).enumerate() {
            if !yi.is_homogeneous_of(a) {
                return Err(Error::HomogeneityViolation {
                    matrix: "s_Y".into(),
                    row: i,
                    col: 0,
                    expected: a.clone(),
                });
            }
            let expected = &w - a;
            if !si.is_homogeneous_of(&expected) {
                return Err(Error::HomogeneityViolation {
                    matrix: "s".into(),
                    row: i,
                    col: 0,
                    expected,
                });
            }
        }
        let mut pairing = Polynomial::zero(ring);
        for (si, yi) in s.iter().zip(&s_y) {
            pairing = &pairing + &(si * yi);
        }
        if &pairing != potential {
            return Err(Error::ContractionMismatch);
        }
        Ok(KoszulData {
            ring: ring.clone(),
            s,
            s_y,
            potential: potential.clone(),
            w,
            slot_degrees,
            base,
        })
    }

    /// Same data with the twist of `e_∅` set to `base`.
    pub fn with_base(mut self, base: GradeVector) -> Self {
        self.base = base;
        self
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &[Polynomial] {
        &self.s
    }

    pub fn s_y(&self) -> &[Polynomial] {
        &self.s_y
    }

    pub fn potential(&self) -> &Polynomial {
        &self.potential
    }

    pub fn w(&self) -> &GradeVector {
        &self.w
    }

    pub fn slot_degrees(&self) -> &[GradeVector] {
        &self.slot_degrees
    }

    pub fn base(&self) -> &GradeVector {
        &self.base
    }

    /// Concatenation `(s, s')`, `(s_Y, s_Y')`, potential `W + W'`, bases added.
    pub fn concat(&self, other: &KoszulData) -> Result<KoszulData> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.w != other.w {
            return Err(Error::DegreeMismatch("potential degrees differ".into()));
        }
        let cat = |a: &[Polynomial], b: &[Polynomial]| a.iter().chain(b).cloned().collect::<Vec<_>>();
        KoszulData::with_degrees(
            &self.ring,
            cat(&self.s, &other.s),
            cat(&self.s_y, &other.s_y),
            &(&self.potential + &other.potential),
            Some(self.w.clone()),
            self.slot_degrees.iter().chain(&other.slot_degrees).cloned().collect(),
            &self.base + &other.base,
        )
    }
}

/// Subsets of `{0..r-1}` as bitmasks, colex order, split by parity.
pub fn exterior_basis(r: usize) -> (Vec<u32>, Vec<u32>) {
    let (mut even, mut odd) = (Vec::new(), Vec::new());
    for mask in 0..(1u32 << r) {
        if mask.count_ones() % 2 == 0 {
            even.push(mask);
        } else {
            odd.push(mask);
        }
    }
    (even, odd)
}

/// `d = sum s_Y[i] e_i ∧ + sum s[i] ι_i` on the exterior algebra, even
/// exterior degrees forming `P0`.
pub fn koszul_brane(data: &KoszulData) -> Result<MatrixFactorization> {
    let ring = &data.ring;
    let r = data.rank();
    if r > 16 {
        return Err(Error::ShapeMismatch("Koszul rank above 16 is not supported".into()));
    }
    let (even, odd) = exterior_basis(r);
    let twist = |mask: u32| -> GradeVector {
        let mut s = data.base.clone();
        for i in 0..r {
            if mask & (1 << i) != 0 {
                s = &s + &data.slot_degrees[i];
            }
        }
        &s - &data.w.scaled((mask.count_ones() / 2) as i64)
    };
    let shifts0 = ShiftList::new(even.iter().map(|&m| twist(m)).collect());
    let shifts1 = ShiftList::new(odd.iter().map(|&m| twist(m)).collect());
    let sign = |mask: u32, i: usize| -> bool { (mask & ((1u32 << i) - 1)).count_ones() % 2 == 1 };

    // d as a map from `from` basis to `to` basis.
    let build = |from: &[u32], to: &[u32]| -> Vec<Vec<Polynomial>> {
        let pos = |m: u32| to.iter().position(|&x| x == m).expect("parity");
        let mut out = vec![vec![Polynomial::zero(ring); from.len()]; to.len()];
        for (c, &mask) in from.iter().enumerate() {
            for i in 0..r {
                let neg = sign(mask, i);
                let (target, coeff) = if mask & (1 << i) == 0 {
                    (mask | (1 << i), &data.s_y[i])
                } else {
                    (mask & !(1 << i), &data.s[i])
                };
                let row = pos(target);
                out[row][c] = if neg { &out[row][c] - coeff } else { &out[row][c] + coeff };
            }
        }
        out
    };
    let alpha = GradedMatrix::new(ring, shifts1.clone(), shifts0.clone(), ring.zero_degree(), build(&even, &odd))?;
    let beta = GradedMatrix::new(ring, shifts0, shifts1, data.w.clone(), build(&odd, &even))?;
    let out = MatrixFactorization::from_parts_unchecked(ring, data.potential.clone(), data.w.clone(), alpha, beta);
    out.verify()?;
    Ok(out)
}

/// A free graded module on the base: its generator twists and the ring
/// variables that coordinatize the base.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseModule {
    pub base_variables: Vec<String>,
    pub shifts: ShiftList,
}

/// `q*P ⊗ K` for a free base module `P`: one twisted copy of the Koszul
/// brane per generator of `P`, in generator order.
///
/// The base variables must not occur in the section `s_Y`, whose entries
/// are the fiber coordinates.
pub fn knorrer_lift(base: &BaseModule, data: &KoszulData) -> Result<MatrixFactorization> {
    let ring = data.ring();
    for name in &base.base_variables {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable { name: name.clone() })?;
        if data.s_y().iter().any(|p| p.support_variables().contains(&i)) {
            return Err(Error::VariableLeak { name: name.clone() });
        }
    }
    if base.shifts.iter().any(|s| s.len() != ring.channels()) {
        return Err(Error::ShapeMismatch("base shifts have the wrong number of channels".into()));
    }
    let k = koszul_brane(data)?;
    let zero = Polynomial::zero(ring);
    let empty = ShiftList::default();
    let pulled_back = MatrixFactorization::from_parts_unchecked(
        ring,
        zero,
        data.w().clone(),
        GradedMatrix::zero(ring, empty.clone(), base.shifts.clone(), ring.zero_degree()),
        GradedMatrix::zero(ring, base.shifts.clone(), empty, data.w().clone()),
    );
    tensor_product(&pulled_back, &k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mfcore::make_mf;

    fn sl(v: &[i64]) -> ShiftList {
        ShiftList::new(v.iter().map(|&x| GradeVector::new(vec![x])).collect())
    }

    #[test]
    fn koszul_rank_one_is_xy_brane() {
        let r = GradedRing::standard(&["x", "y"]);
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        let data = KoszulData::new(&r, vec![p("y")], vec![p("x")], &p("x*y")).unwrap();
        let k = koszul_brane(&data).unwrap();
        let expect = make_mf(&r, &p("x*y"), sl(&[0]), sl(&[1]), vec![vec![p("x")]], vec![vec![p("y")]]).unwrap();
        assert_eq!(k, expect);
    }

    #[test]
    fn koszul_rank_two() {
        let r = GradedRing::standard(&["x", "y", "u", "v"]);
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        let data = KoszulData::new(&r, vec![p("x"), p("y")], vec![p("u"), p("v")], &p("u*x+v*y")).unwrap();
        let k = koszul_brane(&data).unwrap();
        assert_eq!(k.rank(), (2, 2));
        assert!(matches!(
            KoszulData::new(&r, vec![p("x"), p("y")], vec![p("u"), p("v")], &p("u*x")),
            Err(Error::ContractionMismatch)
        ));
    }

    #[test]
    fn tensor_of_squares() {
        let r = GradedRing::standard(&["x", "y"]);
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        let a = make_mf(&r, &p("x^2"), sl(&[0]), sl(&[1]), vec![vec![p("x")]], vec![vec![p("x")]]).unwrap();
        let b = make_mf(&r, &p("y^2"), sl(&[0]), sl(&[1]), vec![vec![p("y")]], vec![vec![p("y")]]).unwrap();
        let t = tensor_product(&a, &b).unwrap();
        assert_eq!(t.rank(), (2, 2));
        assert_eq!(t.potential(), &p("x^2+y^2"));
    }

    #[test]
    fn tensor_unit_law() {
        let r = GradedRing::standard(&["x", "y"]);
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        let a = make_mf(&r, &p("x*y"), sl(&[0]), sl(&[1]), vec![vec![p("x")]], vec![vec![p("y")]]).unwrap();
        let unit = make_mf_unit(&r, a.w().clone());
        assert_eq!(tensor_product(&a, &unit).unwrap(), a);
        assert_eq!(tensor_product(&unit, &a).unwrap(), a);
    }

    fn make_mf_unit(r: &Arc<GradedRing>, w: GradeVector) -> MatrixFactorization {
        crate::mfcore::make_mf_with_degree(
            r,
            &Polynomial::zero(r),
            Some(w),
            sl(&[0]),
            sl(&[]),
            vec![],
            vec![vec![]],
        )
        .unwrap()
    }

    #[test]
    fn koszul_tensor_matches_concatenation() {
        let r = GradedRing::standard(&["x", "y", "u", "v"]);
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        let d1 = KoszulData::new(&r, vec![p("x")], vec![p("u")], &p("u*x")).unwrap();
        let d2 = KoszulData::new(&r, vec![p("y")], vec![p("v")], &p("v*y")).unwrap();
        let t = tensor_product(&koszul_brane(&d1).unwrap(), &koszul_brane(&d2).unwrap()).unwrap();
        let k = koszul_brane(&d1.concat(&d2).unwrap()).unwrap();
        assert_eq!(t.permute_basis(&[0, 1], &[1, 0]), k);
    }

    #[test]
    fn knorrer_lift_examples() {
        let r = GradedRing::standard(&["x", "y"]);
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        let data = KoszulData::new(&r, vec![p("y")], vec![p("x")], &p("x*y")).unwrap();
        let one = BaseModule { base_variables: vec![], shifts: sl(&[0]) };
        assert_eq!(knorrer_lift(&one, &data).unwrap(), koszul_brane(&data).unwrap());
        let two = BaseModule { base_variables: vec![], shifts: sl(&[0, 3]) };
        let k = koszul_brane(&data).unwrap();
        assert_eq!(
            knorrer_lift(&two, &data).unwrap(),
            k.direct_sum(&k.twist(&GradeVector::new(vec![3]))).unwrap()
        );
        let leak = BaseModule { base_variables: vec!["x".into()], shifts: sl(&[0]) };
        assert_eq!(knorrer_lift(&leak, &data), Err(Error::VariableLeak { name: "x".into() }));
    }
}
