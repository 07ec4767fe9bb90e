use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis, Ideal, MonomialOrder};
use crate::linalg::{sparse_from, Echelon};
use crate::mfcore::{GradedMatrix, MatrixFactorization};
use crate::ring::{monomials_of_slicing_degree, Monomial, Polynomial};

/// `coker(beta: P1 -> P0(w))` as a graded module over `R/(W)`.
#[derive(Clone, Debug)]
pub struct CokerPresentation {
    mf: MatrixFactorization,
    gb: GroebnerBasis,
    channel: usize,
}

pub fn coker_presentation(mf: &MatrixFactorization) -> Result<CokerPresentation> {
    let ring = mf.ring();
    let channel = ring.slicing_channel().ok_or(Error::NoSlicingChannel)?;
    let ideal = Ideal::new(ring, vec![mf.potential().clone()])?;
    let gb = buchberger(&ideal, &MonomialOrder::degrevlex(ring));
    Ok(CokerPresentation {
        mf: mf.clone(),
        gb,
        channel,
    })
}

impl CokerPresentation {
    pub fn presentation(&self) -> &GradedMatrix {
        self.mf.beta()
    }

    pub fn factorization(&self) -> &MatrixFactorization {
        &self.mf
    }

    fn standard(&self, d: i64) -> Result<Vec<Monomial>> {
        let lms = self.gb.leading_monomials();
        Ok(monomials_of_slicing_degree(self.mf.ring(), d)?
            .into_iter()
            .filter(|m| !lms.iter().any(|l| l.divides(m)))
            .collect())
    }

    /// Dimension of the cokernel in slicing degree `k`.
    pub fn hilbert(&self, k: i64) -> Result<usize> {
        let ch = self.channel;
        let s0 = self.mf.shifts0();
        let s1 = self.mf.shifts1();
        let w = self.mf.w().get(ch);
        let mut ambient = 0;
        let mut index: HashMap<(usize, Monomial), usize> = HashMap::new();
        for (i, s) in s0.iter().enumerate() {
            for m in self.standard(k + s.get(ch))? {
                index.insert((i, m), ambient);
                ambient += 1;
            }
        }
        let beta = self.mf.beta();
        let mut ech = Echelon::new();
        for (j, s) in s1.iter().enumerate() {
            for m in monomials_of_slicing_degree(self.mf.ring(), k - w + s.get(ch))? {
                let mut entries = Vec::new();
                for i in 0..s0.len() {
                    let e = beta.entry(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    let v = self.gb.normal_form(&e.mul_monomial(&m, &num_traits::One::one()))?;
                    for (mono, c) in v.terms() {
                        let key = (i, mono.clone());
                        let idx = match index.get(&key) {
                            Some(&idx) => idx,
                            None => {
                                let n = index.len();
                                index.insert(key, n);
                                n
                            }
                        };
                        entries.push((idx, c.clone()));
                    }
                }
                ech.insert(sparse_from(entries));
            }
        }
        Ok(ambient.saturating_sub(ech.rank()))
    }

    /// Hilbert function on `lo..=hi`.
    pub fn hilbert_range(&self, lo: i64, hi: i64) -> Result<Vec<usize>> {
        (lo..=hi).map(|k| self.hilbert(k)).collect()
    }

    /// The presentation matrix reduced modulo `W`.
    pub fn presentation_mod_w(&self) -> Result<Vec<Vec<Polynomial>>> {
        self.mf
            .beta()
            .entries()
            .iter()
            .map(|row| row.iter().map(|p| self.gb.normal_form(p)).collect())
            .collect()
    }
}
