//! Graded matrix factorizations stored as verified data.
//!
//! `P = P0 ⊕ P1` with `alpha: P0 -> P1` of weight zero and `beta: P1 -> P0`
//! of weight `w = deg W`. Every constructor that accepts user data checks
//! `alpha * beta = W * id` and `beta * alpha = W * id` exactly.

mod matrix;
mod morphism;

use std::fmt;
use std::sync::Arc;

pub use matrix::{GradedMatrix, ShiftList};
pub use morphism::{MFMorphism, Parity};

use crate::error::{Error, Result};
use crate::ring::{same_ring, GradeVector, GradedRing, Homogeneity, Polynomial};

#[derive(Clone, Debug)]
pub struct MatrixFactorization {
    ring: Arc<GradedRing>,
    potential: Polynomial,
    w: GradeVector,
    alpha: GradedMatrix,
    beta: GradedMatrix,
}

impl PartialEq for MatrixFactorization {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring)
            && self.potential == other.potential
            && self.w == other.w
            && self.alpha == other.alpha
            && self.beta == other.beta
    }
}

/// The degree of `W`; `None` for the zero polynomial.
pub fn potential_degree(potential: &Polynomial) -> Result<Option<GradeVector>> {
    match potential.homogeneity() {
        Homogeneity::Zero => Ok(None),
        Homogeneity::Homogeneous(d) => Ok(Some(d)),
        Homogeneity::Inhomogeneous => Err(Error::InhomogeneousInput(potential.to_string())),
    }
}

/// Builds and verifies a factorization; the degree of `W` is read off `W`
/// (zero for `W = 0`).
pub fn make_mf(
    ring: &Arc<GradedRing>,
    potential: &Polynomial,
    shifts0: ShiftList,
    shifts1: ShiftList,
    alpha: Vec<Vec<Polynomial>>,
    beta: Vec<Vec<Polynomial>>,
) -> Result<MatrixFactorization> {
    make_mf_with_degree(ring, potential, None, shifts0, shifts1, alpha, beta)
}

/// As [`make_mf`], with an explicit degree `w`. Needed when `W = 0`, and
/// checked against `deg W` otherwise.
pub fn make_mf_with_degree(
    ring: &Arc<GradedRing>,
    potential: &Polynomial,
    w: Option<GradeVector>,
    shifts0: ShiftList,
    shifts1: ShiftList,
    alpha: Vec<Vec<Polynomial>>,
    beta: Vec<Vec<Polynomial>>,
) -> Result<MatrixFactorization> {
    if !same_ring(potential.ring(), ring) {
        return Err(Error::RingMismatch);
    }
    let w = match (potential_degree(potential)?, w) {
        (Some(d), Some(given)) if d != given => {
            return Err(Error::DegreeMismatch(format!(
                "potential has degree {d}, declared {given}"
            )))
        }
        (Some(d), _) => d,
        (None, Some(given)) => given,
        (None, None) => ring.zero_degree(),
    };
    if w.len() != ring.channels() {
        return Err(Error::ShapeMismatch(format!(
            "degree vector must have {} channels",
            ring.channels()
        )));
    }
    let alpha = GradedMatrix::new(ring, shifts1.clone(), shifts0.clone(), ring.zero_degree(), alpha)
        .map_err(|e| annotate_shape(e, "alpha"))?;
    let beta = GradedMatrix::new(ring, shifts0, shifts1, w.clone(), beta)
        .map_err(|e| annotate_shape(e, "beta"))?;
    let mf = MatrixFactorization {
        ring: ring.clone(),
        potential: potential.clone(),
        w,
        alpha,
        beta,
    };
    mf.verify()?;
    Ok(mf)
}

fn annotate_shape(e: Error, name: &str) -> Error {
    match e {
        Error::ShapeMismatch(m) => Error::ShapeMismatch(format!("{name}: {m}")),
        other => other,
    }
}

impl MatrixFactorization {
    /// Skips verification. Used by internal constructions whose output is
    /// correct by construction, and by tests that need broken data.
    pub fn from_parts_unchecked(
        ring: &Arc<GradedRing>,
        potential: Polynomial,
        w: GradeVector,
        alpha: GradedMatrix,
        beta: GradedMatrix,
    ) -> Self {
        MatrixFactorization {
            ring: ring.clone(),
            potential,
            w,
            alpha,
            beta,
        }
    }

    /// The rank-zero factorization.
    pub fn zero(ring: &Arc<GradedRing>, potential: &Polynomial, w: GradeVector) -> Self {
        let empty = ShiftList::default();
        MatrixFactorization {
            ring: ring.clone(),
            potential: potential.clone(),
            alpha: GradedMatrix::zero(ring, empty.clone(), empty.clone(), ring.zero_degree()),
            beta: GradedMatrix::zero(ring, empty.clone(), empty, w.clone()),
            w,
        }
    }

    /// Re-checks shapes, homogeneity and curvature.
    pub fn verify(&self) -> Result<()> {
        if self.alpha.rows() != self.beta.cols() || self.alpha.cols() != self.beta.rows() {
            return Err(Error::ShapeMismatch("alpha and beta shift lists disagree".into()));
        }
        if !self.alpha.weight().is_zero() || self.beta.weight() != &self.w {
            return Err(Error::ShapeMismatch("block weights must be 0 and w".into()));
        }
        if let Some(d) = potential_degree(&self.potential)? {
            if d != self.w {
                return Err(Error::DegreeMismatch(format!(
                    "potential has degree {d}, declared {}",
                    self.w
                )));
            }
        }
        self.alpha.check_homogeneity("alpha")?;
        self.beta.check_homogeneity("beta")?;
        let ab = self.alpha.mul(&self.beta);
        if let Some((row, col)) = ab.first_deviation_from_scalar(&self.potential) {
            return Err(Error::CurvatureMismatch {
                product: "alpha*beta".into(),
                row,
                col,
            });
        }
        let ba = self.beta.mul(&self.alpha);
        if let Some((row, col)) = ba.first_deviation_from_scalar(&self.potential) {
            return Err(Error::CurvatureMismatch {
                product: "beta*alpha".into(),
                row,
                col,
            });
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn potential(&self) -> &Polynomial {
        &self.potential
    }

    pub fn w(&self) -> &GradeVector {
        &self.w
    }

    pub fn shifts0(&self) -> &ShiftList {
        self.alpha.cols()
    }

    pub fn shifts1(&self) -> &ShiftList {
        self.alpha.rows()
    }

    pub fn alpha(&self) -> &GradedMatrix {
        &self.alpha
    }

    pub fn beta(&self) -> &GradedMatrix {
        &self.beta
    }

    /// `(rank P0, rank P1)`.
    pub fn rank(&self) -> (usize, usize) {
        (self.shifts0().len(), self.shifts1().len())
    }

    pub fn suspension(&self) -> MatrixFactorization {
        let s0 = self.shifts1().clone();
        let s1 = self.shifts0().shifted(&self.w);
        MatrixFactorization {
            ring: self.ring.clone(),
            potential: self.potential.clone(),
            w: self.w.clone(),
            alpha: self.beta.neg().relabel(s1.clone(), s0.clone(), self.ring.zero_degree()),
            beta: self.alpha.neg().relabel(s0, s1, self.w.clone()),
        }
    }

    pub fn twist(&self, k: &GradeVector) -> MatrixFactorization {
        let s0 = self.shifts0().shifted(k);
        let s1 = self.shifts1().shifted(k);
        MatrixFactorization {
            ring: self.ring.clone(),
            potential: self.potential.clone(),
            w: self.w.clone(),
            alpha: self.alpha.relabel(s1.clone(), s0.clone(), self.ring.zero_degree()),
            beta: self.beta.relabel(s0, s1, self.w.clone()),
        }
    }

    pub fn direct_sum(&self, other: &MatrixFactorization) -> Result<MatrixFactorization> {
        self.check_compatible(other)?;
        let ring = &self.ring;
        let alpha = GradedMatrix::from_blocks(
            ring,
            &[self.shifts1(), other.shifts1()],
            &[self.shifts0(), other.shifts0()],
            ring.zero_degree(),
            &[
                vec![Some(self.alpha.entries()), None],
                vec![None, Some(other.alpha.entries())],
            ],
        );
        let beta = GradedMatrix::from_blocks(
            ring,
            &[self.shifts0(), other.shifts0()],
            &[self.shifts1(), other.shifts1()],
            self.w.clone(),
            &[
                vec![Some(self.beta.entries()), None],
                vec![None, Some(other.beta.entries())],
            ],
        );
        Ok(MatrixFactorization {
            ring: ring.clone(),
            potential: self.potential.clone(),
            w: self.w.clone(),
            alpha,
            beta,
        })
    }

    /// Same ring, same potential, same degree.
    pub fn check_compatible(&self, other: &MatrixFactorization) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.potential != other.potential || self.w != other.w {
            return Err(Error::PotentialMismatch);
        }
        Ok(())
    }

    /// Factorization of `-W` on the dual modules: `alpha' = beta^T`,
    /// `beta' = -alpha^T`, shifts `-s0` and `w - s1`. Applying it twice
    /// negates both blocks.
    pub fn dual(&self) -> MatrixFactorization {
        let ring = &self.ring;
        let s0 = self.shifts0().negated();
        let s1 = self.shifts1().negated().shifted(&self.w);
        let alpha = GradedMatrix::new(
            ring,
            s1.clone(),
            s0.clone(),
            ring.zero_degree(),
            self.beta.transposed_entries(),
        )
        .expect("shape");
        let beta = GradedMatrix::new(ring, s0, s1, self.w.clone(), self.alpha.transposed_entries())
            .expect("shape")
            .neg();
        MatrixFactorization {
            ring: ring.clone(),
            potential: -&self.potential,
            w: self.w.clone(),
            alpha,
            beta,
        }
    }

    /// Reorders generators: new generator `k` of `P0` is old `perm0[k]`.
    pub fn permute_basis(&self, perm0: &[usize], perm1: &[usize]) -> MatrixFactorization {
        MatrixFactorization {
            ring: self.ring.clone(),
            potential: self.potential.clone(),
            w: self.w.clone(),
            alpha: self.alpha.permuted(perm1, perm0),
            beta: self.beta.permuted(perm0, perm1),
        }
    }

    /// Entrywise partial derivative of the differential, with the check
    /// `d * dd + dd * d = (dW/dvar) * id`.
    pub fn leibniz_homotopy(&self, var: &str) -> Result<LeibnizHomotopy> {
        let i = self
            .ring
            .var_index(var)
            .ok_or_else(|| Error::UnknownVariable { name: var.to_string() })?;
        let deg = self.ring.var_degree(i);
        let da = self
            .alpha
            .map_entries(|p| p.derivative(i))
            .relabel(self.shifts1().clone(), self.shifts0().clone(), -deg);
        let db = self.beta.map_entries(|p| p.derivative(i)).relabel(
            self.shifts0().clone(),
            self.shifts1().clone(),
            &self.w - deg,
        );
        let dw = self.potential.derivative(i);
        let on_p0 = self.beta.mul(&da).add(&db.mul(&self.alpha));
        let on_p1 = self.alpha.mul(&db).add(&da.mul(&self.beta));
        let verified = on_p0.first_deviation_from_scalar(&dw).is_none()
            && on_p1.first_deviation_from_scalar(&dw).is_none();
        Ok(LeibnizHomotopy {
            var: i,
            d_alpha: da,
            d_beta: db,
            verified,
        })
    }
}

/// Output of [`MatrixFactorization::leibniz_homotopy`].
#[derive(Clone, Debug)]
pub struct LeibnizHomotopy {
    pub var: usize,
    /// `P0 -> P1`, weight `-deg var`.
    pub d_alpha: GradedMatrix,
    /// `P1 -> P0`, weight `w - deg var`.
    pub d_beta: GradedMatrix,
    pub verified: bool,
}

impl LeibnizHomotopy {
    /// The pair as an odd endomorphism of weight `-deg var`.
    pub fn as_morphism(&self, mf: &MatrixFactorization) -> Result<MFMorphism> {
        MFMorphism::new(
            mf,
            mf,
            Parity::Odd,
            -mf.ring().var_degree(self.var),
            self.d_alpha.entries().to_vec(),
            self.d_beta.entries().to_vec(),
        )
    }
}

/// Cone of a closed even weight-zero morphism `phi: P -> Q`, built on
/// `Q ⊕ ΣP`:
///
/// ```text
/// alpha = [[alpha_Q, phi1], [0, -beta_P]]    beta = [[beta_Q, phi0], [0, -alpha_P]]
/// ```
pub fn cone(phi: &MFMorphism) -> Result<MatrixFactorization> {
    if phi.parity() != Parity::Even {
        return Err(Error::ParityMismatch("cone needs an even morphism".into()));
    }
    if !phi.weight().is_zero() {
        return Err(Error::DegreeMismatch(format!(
            "cone needs a weight-zero morphism, got weight {}",
            phi.weight()
        )));
    }
    if !phi.is_closed() {
        return Err(Error::NotClosed);
    }
    let p = phi.source();
    let q = phi.target();
    let sp = p.suspension();
    let ring = q.ring();
    let alpha = GradedMatrix::from_blocks(
        ring,
        &[q.shifts1(), sp.shifts1()],
        &[q.shifts0(), sp.shifts0()],
        ring.zero_degree(),
        &[
            vec![Some(q.alpha().entries()), Some(phi.block1().entries())],
            vec![None, Some(sp.alpha().entries())],
        ],
    );
    let beta = GradedMatrix::from_blocks(
        ring,
        &[q.shifts0(), sp.shifts0()],
        &[q.shifts1(), sp.shifts1()],
        q.w().clone(),
        &[
            vec![Some(q.beta().entries()), Some(phi.block0().entries())],
            vec![None, Some(sp.beta().entries())],
        ],
    );
    let out = MatrixFactorization::from_parts_unchecked(
        ring,
        q.potential().clone(),
        q.w().clone(),
        alpha,
        beta,
    );
    out.verify()?;
    Ok(out)
}

impl fmt::Display for MatrixFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r0, r1) = self.rank();
        write!(
            f,
            "MF(W = {}, rank ({r0},{r1}), alpha = {}, beta = {})",
            self.potential, self.alpha, self.beta
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gv(v: i64) -> GradeVector {
        GradeVector::new(vec![v])
    }

    fn sl(v: &[i64]) -> ShiftList {
        ShiftList::new(v.iter().map(|&x| gv(x)).collect())
    }

    fn xy() -> (Arc<GradedRing>, MatrixFactorization) {
        let r = GradedRing::standard(&["x", "y"]);
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        let mf = make_mf(&r, &p("x*y"), sl(&[0]), sl(&[1]), vec![vec![p("x")]], vec![vec![p("y")]]).unwrap();
        (r, mf)
    }

    #[test]
    fn make_mf_examples() {
        let (_, mf) = xy();
        assert_eq!(mf.rank(), (1, 1));
        let r = GradedRing::standard(&["x", "y"]);
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        assert!(make_mf(&r, &p("x^2"), sl(&[0]), sl(&[1]), vec![vec![p("x")]], vec![vec![p("x")]]).is_ok());
        assert!(matches!(
            make_mf(&r, &p("x^2"), sl(&[0]), sl(&[1]), vec![vec![p("x")]], vec![vec![p("y")]]),
            Err(Error::CurvatureMismatch { .. })
        ));
        assert!(matches!(
            make_mf(&r, &p("x^2"), sl(&[0]), sl(&[2]), vec![vec![p("x")]], vec![vec![p("x")]]),
            Err(Error::HomogeneityViolation { row: 0, col: 0, .. })
        ));
        assert!(matches!(
            make_mf(&r, &p("x^2"), sl(&[0, 0]), sl(&[1]), vec![vec![p("x")]], vec![vec![p("x")]]),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            make_mf(&r, &p("x^2+y"), sl(&[0]), sl(&[1]), vec![vec![p("x")]], vec![vec![p("x")]]),
            Err(Error::InhomogeneousInput(_))
        ));
    }

    #[test]
    fn suspension_squares_to_twist() {
        let (_, mf) = xy();
        let s = mf.suspension();
        assert_eq!(s.alpha().entries()[0][0].to_string(), "-y");
        assert_eq!(s.beta().entries()[0][0].to_string(), "-x");
        s.verify().unwrap();
        assert_eq!(s.suspension(), mf.twist(mf.w()));
    }

    #[test]
    fn twist_laws() {
        let (_, mf) = xy();
        assert_eq!(mf.twist(&gv(0)), mf);
        assert_eq!(mf.twist(&gv(2)).twist(&gv(-5)), mf.twist(&gv(-3)));
    }

    #[test]
    fn direct_sum_and_zero() {
        let (r, mf) = xy();
        let z = MatrixFactorization::zero(&r, mf.potential(), mf.w().clone());
        assert_eq!(mf.direct_sum(&z).unwrap(), mf);
        let s = mf.direct_sum(&mf).unwrap();
        assert_eq!(s.rank(), (2, 2));
        s.verify().unwrap();
        let other = mf.dual();
        assert_eq!(mf.direct_sum(&other), Err(Error::PotentialMismatch));
    }

    #[test]
    fn dual_examples() {
        let (_, mf) = xy();
        let d = mf.dual();
        d.verify().unwrap();
        assert_eq!(d.potential().to_string(), "-x*y");
        let dd = d.dual();
        assert_eq!(dd.shifts0(), mf.shifts0());
        assert_eq!(dd.shifts1(), mf.shifts1());
        assert_eq!(dd.alpha(), &mf.alpha().neg());
        assert_eq!(dd.beta(), &mf.beta().neg());
    }

    #[test]
    fn leibniz_examples() {
        let r = GradedRing::standard(&["x", "y"]);
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        let mf = make_mf(&r, &p("x^2"), sl(&[0]), sl(&[1]), vec![vec![p("x")]], vec![vec![p("x")]]).unwrap();
        let h = mf.leibniz_homotopy("x").unwrap();
        assert!(h.verified);
        assert_eq!(h.d_alpha.entries()[0][0], p("1"));
        let hy = mf.leibniz_homotopy("y").unwrap();
        assert!(hy.verified && hy.d_alpha.is_zero() && hy.d_beta.is_zero());
        assert!(matches!(mf.leibniz_homotopy("q"), Err(Error::UnknownVariable { .. })));
        h.as_morphism(&mf).unwrap();
    }

    #[test]
    fn cone_of_zero_is_direct_sum() {
        let (_, mf) = xy();
        let z = MFMorphism::zero(&mf, &mf, Parity::Even, mf.ring().zero_degree());
        assert_eq!(cone(&z).unwrap(), mf.direct_sum(&mf.suspension()).unwrap());
        let id = MFMorphism::identity(&mf);
        cone(&id).unwrap().verify().unwrap();
    }

    #[test]
    fn cone_rejects_bad_input() {
        let (r, mf) = xy();
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        let odd = MFMorphism::zero(&mf, &mf, Parity::Odd, gv(0));
        assert!(matches!(cone(&odd), Err(Error::ParityMismatch(_))));
        // (x, 0) is not closed: alpha*phi0 - phi1*alpha = x^2
        let bad = MFMorphism::new(&mf, &mf, Parity::Even, gv(0), vec![vec![p("1")]], vec![vec![p("0")]]).unwrap();
        assert_eq!(cone(&bad), Err(Error::NotClosed));
    }
}
