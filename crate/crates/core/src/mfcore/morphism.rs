use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{GradeVector, Homogeneity, Polynomial};

use super::{GradedMatrix, MatrixFactorization, ShiftList};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Homogeneous element of the morphism complex `Hom(P, Q)`.
///
/// Even of weight `k`: `block0: P0 -> Q0` and `block1: P1 -> Q1`, both of
/// weight `k`. Odd of weight `k`: `block0: P0 -> Q1` of weight `k` and
/// `block1: P1 -> Q0` of weight `k + w`.
#[derive(Clone, Debug, PartialEq)]
pub struct MFMorphism {
    source: MatrixFactorization,
    target: MatrixFactorization,
    parity: Parity,
    weight: GradeVector,
    block0: GradedMatrix,
    block1: GradedMatrix,
}

fn block_layout<'a>(
    source: &'a MatrixFactorization,
    target: &'a MatrixFactorization,
    parity: Parity,
    weight: &GradeVector,
) -> [(&'a ShiftList, &'a ShiftList, GradeVector); 2] {
    match parity {
        Parity::Even => [
            (target.shifts0(), source.shifts0(), weight.clone()),
            (target.shifts1(), source.shifts1(), weight.clone()),
        ],
        Parity::Odd => [
            (target.shifts1(), source.shifts0(), weight.clone()),
            (target.shifts0(), source.shifts1(), weight + source.w()),
        ],
    }
}

impl MFMorphism {
    pub fn new(
        source: &MatrixFactorization,
        target: &MatrixFactorization,
        parity: Parity,
        weight: GradeVector,
        block0: Vec<Vec<Polynomial>>,
        block1: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        source.check_compatible(target)?;
        if weight.len() != source.ring().channels() {
            return Err(Error::ShapeMismatch("morphism weight has wrong length".into()));
        }
        let [(r0, c0, w0), (r1, c1, w1)] = block_layout(source, target, parity, &weight);
        let ring = source.ring();
        let b0 = GradedMatrix::new(ring, r0.clone(), c0.clone(), w0, block0)?;
        let b1 = GradedMatrix::new(ring, r1.clone(), c1.clone(), w1, block1)?;
        b0.check_homogeneity("phi0")?;
        b1.check_homogeneity("phi1")?;
        Ok(MFMorphism {
            source: source.clone(),
            target: target.clone(),
            parity,
            weight,
            block0: b0,
            block1: b1,
        })
    }

    pub fn zero(
        source: &MatrixFactorization,
        target: &MatrixFactorization,
        parity: Parity,
        weight: GradeVector,
    ) -> Self {
        let [(r0, c0, w0), (r1, c1, w1)] = block_layout(source, target, parity, &weight);
        let ring = source.ring();
        MFMorphism {
            source: source.clone(),
            target: target.clone(),
            parity,
            block0: GradedMatrix::zero(ring, r0.clone(), c0.clone(), w0),
            block1: GradedMatrix::zero(ring, r1.clone(), c1.clone(), w1),
            weight,
        }
    }

    pub fn identity(mf: &MatrixFactorization) -> Self {
        Self::scalar(mf, &Polynomial::one(mf.ring())).expect("constant is homogeneous")
    }

    /// `g * id` for homogeneous `g`, of weight `deg g`.
    pub fn scalar(mf: &MatrixFactorization, g: &Polynomial) -> Result<Self> {
        let weight = match g.homogeneity() {
            Homogeneity::Zero => mf.ring().zero_degree(),
            Homogeneity::Homogeneous(d) => d,
            Homogeneity::Inhomogeneous => return Err(Error::InhomogeneousInput(g.to_string())),
        };
        let ring = mf.ring();
        let b0 = GradedMatrix::identity(ring, mf.shifts0()).scale_by(g);
        let b1 = GradedMatrix::identity(ring, mf.shifts1()).scale_by(g);
        Ok(MFMorphism {
            source: mf.clone(),
            target: mf.clone(),
            parity: Parity::Even,
            block0: b0.relabel(mf.shifts0().clone(), mf.shifts0().clone(), weight.clone()),
            block1: b1.relabel(mf.shifts1().clone(), mf.shifts1().clone(), weight.clone()),
            weight,
        })
    }

    pub fn source(&self) -> &MatrixFactorization {
        &self.source
    }

    pub fn target(&self) -> &MatrixFactorization {
        &self.target
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn weight(&self) -> &GradeVector {
        &self.weight
    }

    pub fn block0(&self) -> &GradedMatrix {
        &self.block0
    }

    pub fn block1(&self) -> &GradedMatrix {
        &self.block1
    }

    pub fn is_zero(&self) -> bool {
        self.block0.is_zero() && self.block1.is_zero()
    }

    /// `d(phi) = d_Q phi - (-1)^|phi| phi d_P`. Even weight `k` goes to odd
    /// weight `k`; odd weight `k` goes to even weight `k + w`.
    pub fn differential(&self) -> MFMorphism {
        let (p, q) = (&self.source, &self.target);
        let (b0, b1, weight) = match self.parity {
            Parity::Even => (
                q.alpha().mul(&self.block0).add(&self.block1.mul(p.alpha()).neg()),
                q.beta().mul(&self.block1).add(&self.block0.mul(p.beta()).neg()),
                self.weight.clone(),
            ),
            Parity::Odd => (
                q.beta().mul(&self.block0).add(&self.block1.mul(p.alpha())),
                q.alpha().mul(&self.block1).add(&self.block0.mul(p.beta())),
                &self.weight + p.w(),
            ),
        };
        MFMorphism {
            source: p.clone(),
            target: q.clone(),
            parity: self.parity.flip(),
            weight,
            block0: b0,
            block1: b1,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.differential().is_zero()
    }

    /// `self ∘ phi`, where `phi: P -> Q` and `self: Q -> R`.
    pub fn compose(&self, phi: &MFMorphism) -> Result<MFMorphism> {
        if phi.target != self.source {
            return Err(Error::ShapeMismatch("composition endpoints differ".into()));
        }
        let (b0, b1) = match (self.parity, phi.parity) {
            (Parity::Even, Parity::Even) => (self.block0.mul(&phi.block0), self.block1.mul(&phi.block1)),
            (Parity::Even, Parity::Odd) => (self.block1.mul(&phi.block0), self.block0.mul(&phi.block1)),
            (Parity::Odd, Parity::Even) => (self.block0.mul(&phi.block0), self.block1.mul(&phi.block1)),
            (Parity::Odd, Parity::Odd) => (self.block1.mul(&phi.block0), self.block0.mul(&phi.block1)),
        };
        let parity = if self.parity == phi.parity { Parity::Even } else { Parity::Odd };
        let mut weight = &self.weight + &phi.weight;
        if self.parity == Parity::Odd && phi.parity == Parity::Odd {
            weight = &weight + self.source.w();
        }
        Ok(MFMorphism {
            source: phi.source.clone(),
            target: self.target.clone(),
            parity,
            weight,
            block0: b0,
            block1: b1,
        })
    }

    pub fn add(&self, other: &MFMorphism) -> Result<MFMorphism> {
        if self.source != other.source
            || self.target != other.target
            || self.parity != other.parity
            || self.weight != other.weight
        {
            return Err(Error::ShapeMismatch("summands live in different Hom spaces".into()));
        }
        let mut out = self.clone();
        out.block0 = self.block0.add(&other.block0);
        out.block1 = self.block1.add(&other.block1);
        Ok(out)
    }

    pub fn neg(&self) -> MFMorphism {
        let mut out = self.clone();
        out.block0 = self.block0.neg();
        out.block1 = self.block1.neg();
        out
    }
}

impl fmt::Display for MFMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} morphism of weight {}: phi0 = {}, phi1 = {}",
            self.parity, self.weight, self.block0, self.block1
        )
    }
}
