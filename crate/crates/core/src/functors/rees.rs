//! One-parameter degeneration `x_i -> t^{m_i} x_i`, `W -> t^{-d} W` of a
//! potential towards its weighted leading form, plus the matching family
//! of factorizations.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::mfcore::{make_mf, GradedMatrix, MatrixFactorization};
use crate::ring::{GradedRing, Monomial, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesChart {
    /// Filtration weight `m_i` of each ring variable.
    pub weights: Vec<u64>,
    /// Vanishing order `d`.
    pub order: u64,
    /// `t`-orders `(e0, e1)` removed from `alpha` and `beta`, with
    /// `e0 + e1 = d`. Defaults to `(d/2, d - d/2)`.
    pub block_orders: Option<(u64, u64)>,
}

impl ReesChart {
    pub fn new(weights: Vec<u64>, order: u64) -> Self {
        ReesChart {
            weights,
            order,
            block_orders: None,
        }
    }

    pub fn block_orders(&self) -> (u64, u64) {
        self.block_orders
            .unwrap_or((self.order / 2, self.order - self.order / 2))
    }

    pub fn weight_of(&self, m: &Monomial) -> u64 {
        m.0.iter().zip(&self.weights).map(|(&e, &w)| e as u64 * w).sum()
    }
}

#[derive(Clone, Debug)]
pub struct ReesFamily {
    base_ring: Arc<GradedRing>,
    ring_t: Arc<GradedRing>,
    t: usize,
    potential_t: Polynomial,
    brane: Option<MatrixFactorization>,
}

/// `t^{-order} * p(t^m x)`, failing if a term has weight below `order`.
fn substitute(p: &Polynomial, chart: &ReesChart, order: u64, ring_t: &Arc<GradedRing>, t: usize) -> Result<Polynomial> {
    let n = ring_t.nvars();
    let mut out = Polynomial::zero(ring_t);
    for (m, c) in p.terms() {
        let weight = chart.weight_of(m);
        if weight < order {
            let term = Polynomial::monomial(p.ring(), m.clone(), c.clone());
            return Err(Error::FiltrationTooShallow {
                term: term.to_string(),
                weight,
                order,
            });
        }
        let mut e = m.0.clone();
        e.resize(n, 0);
        e[t] = (weight - order) as u32;
        out.add_term(Monomial(e), c.clone());
    }
    Ok(out)
}

pub fn rees_degenerate(
    w: &Polynomial,
    chart: &ReesChart,
    mf: Option<&MatrixFactorization>,
) -> Result<ReesFamily> {
    let base = w.ring();
    if chart.weights.len() != base.nvars() {
        return Err(Error::ShapeMismatch(format!(
            "chart has {} weights for {} variables",
            chart.weights.len(),
            base.nvars()
        )));
    }
    let (e0, e1) = chart.block_orders();
    if e0 + e1 != chart.order {
        return Err(Error::DegreeMismatch(format!(
            "block orders {e0} + {e1} must equal the vanishing order {}",
            chart.order
        )));
    }
    let mut name = String::from("t");
    while base.var_index(&name).is_some() {
        name.push('_');
    }
    let ring_t = base.with_parameter(&name)?;
    let t = ring_t.nvars() - 1;
    let potential_t = substitute(w, chart, chart.order, &ring_t, t)?;
    let brane = match mf {
        None => None,
        Some(mf) => {
            if mf.potential() != w {
                return Err(Error::PotentialMismatch);
            }
            let lift = |m: &GradedMatrix, order: u64| -> Result<Vec<Vec<Polynomial>>> {
                m.entries()
                    .iter()
                    .map(|row| row.iter().map(|p| substitute(p, chart, order, &ring_t, t)).collect())
                    .collect()
            };
            let alpha = lift(mf.alpha(), e0)?;
            let beta = lift(mf.beta(), e1)?;
            Some(make_mf(
                &ring_t,
                &potential_t,
                mf.shifts0().clone(),
                mf.shifts1().clone(),
                alpha,
                beta,
            )?)
        }
    };
    Ok(ReesFamily {
        base_ring: base.clone(),
        ring_t,
        t,
        potential_t,
        brane,
    })
}

impl ReesFamily {
    pub fn ring_t(&self) -> &Arc<GradedRing> {
        &self.ring_t
    }

    pub fn parameter_name(&self) -> &str {
        self.ring_t.var_name(self.t)
    }

    pub fn potential_t(&self) -> &Polynomial {
        &self.potential_t
    }

    pub fn brane(&self) -> Option<&MatrixFactorization> {
        self.brane.as_ref()
    }

    fn fiber(&self, p: &Polynomial, c: &Rational) -> Polynomial {
        let spec = p.specialize(self.t, c);
        if self.base_ring.nvars() == 0 {
            let c = spec.coefficient(&Monomial::one(self.ring_t.nvars()));
            return Polynomial::constant(&self.base_ring, c);
        }
        // t no longer occurs, so where it is sent does not matter
        let index_map: Vec<usize> = (0..self.ring_t.nvars())
            .map(|i| if i == self.t { 0 } else { i })
            .collect();
        spec.embed(&self.base_ring, &index_map)
    }

    /// The fiber `W_c` at `t = c`, over the original ring.
    pub fn specialize(&self, c: &Rational) -> Polynomial {
        self.fiber(&self.potential_t, c)
    }

    pub fn specialize_int(&self, c: i64) -> Polynomial {
        self.specialize(&Rational::from_integer(BigInt::from(c)))
    }

    /// True when the leading form `W_0` is zero.
    pub fn leading_form_vanishes(&self) -> bool {
        self.specialize(&Rational::zero()).is_zero()
    }

    /// The brane fiber at `t = c`, verified as a factorization of `W_c`.
    pub fn specialize_brane(&self, c: &Rational) -> Option<Result<MatrixFactorization>> {
        let b = self.brane.as_ref()?;
        let map = |m: &GradedMatrix| -> Vec<Vec<Polynomial>> {
            m.entries()
                .iter()
                .map(|row| row.iter().map(|p| self.fiber(p, c)).collect())
                .collect()
        };
        Some(make_mf(
            &self.base_ring,
            &self.specialize(c),
            b.shifts0().clone(),
            b.shifts1().clone(),
            map(b.alpha()),
            map(b.beta()),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mfcore::ShiftList;
    use crate::ring::GradeVector;

    fn sl(v: &[i64]) -> ShiftList {
        ShiftList::new(v.iter().map(|&x| GradeVector::new(vec![x])).collect())
    }

    #[test]
    fn degenerates_to_leading_form() {
        let r = GradedRing::ungraded(&["x", "p"]);
        let q = |s: &str| Polynomial::parse(&r, s).unwrap();
        let w = q("p*(x+x^2)");
        let mf = make_mf(&r, &w, sl(&[0]), sl(&[0]), vec![vec![q("p")]], vec![vec![q("x+x^2")]]).unwrap();
        let fam = rees_degenerate(&w, &ReesChart::new(vec![1, 1], 2), Some(&mf)).unwrap();
        assert_eq!(fam.potential_t().to_string(), "x^2*p*t + x*p");
        assert_eq!(fam.specialize_int(1), w);
        assert_eq!(fam.specialize_int(0), q("p*x"));
        let f0 = fam.specialize_brane(&Rational::zero()).unwrap().unwrap();
        assert_eq!(f0.beta().entry(0, 0), &q("x"));
        fam.specialize_brane(&Rational::from_integer(BigInt::from(1))).unwrap().unwrap();
    }

    #[test]
    fn shallow_and_vanishing_leading_forms() {
        let r = GradedRing::ungraded(&["x", "p"]);
        let q = |s: &str| Polynomial::parse(&r, s).unwrap();
        let fam = rees_degenerate(&q("p*x^3"), &ReesChart::new(vec![1, 1], 2), None).unwrap();
        assert!(fam.leading_form_vanishes());
        assert!(matches!(
            rees_degenerate(&q("x"), &ReesChart::new(vec![1, 1], 2), None),
            Err(Error::FiltrationTooShallow { weight: 1, order: 2, .. })
        ));
        let fixed = rees_degenerate(&q("p*x"), &ReesChart::new(vec![1, 1], 2), None).unwrap();
        assert_eq!(fixed.specialize_int(0), q("p*x"));
        assert_eq!(fixed.specialize_int(5), q("p*x"));
    }
}
