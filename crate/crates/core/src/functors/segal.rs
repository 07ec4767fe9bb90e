//! Bigraded labels for free modules over `R[p, p^-1]` with `deg x_i = (1,0)`
//! and `deg p = (-N, 2)`, so that `(a, b)` and `(a + N, b - 2)` label
//! isomorphic modules. Only the rank-one case is modelled.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{monomials_of_slicing_degree, GradedRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BigradedLabel {
    pub a: i64,
    pub b: i64,
    /// The relation modulus `N`.
    pub n: i64,
}

impl BigradedLabel {
    pub fn new(a: i64, b: i64, n: i64) -> Self {
        BigradedLabel { a, b, n }
    }

    pub fn is_canonical(&self) -> bool {
        self.b == 0 || self.b == 1
    }
}

impl fmt::Display for BigradedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Moves `b` into `{0, 1}` using `(a, b) ~ (a + N, b - 2)`.
pub fn segal_canonicalize(label: BigradedLabel) -> BigradedLabel {
    let q = label.b.div_euclid(2);
    BigradedLabel {
        a: label.a + q * label.n,
        b: label.b - 2 * q,
        n: label.n,
    }
}

/// `dim Hom(from, to)` in bidegree `(0, 1)`: `dim R_{a' - a}` when the
/// canonical parities differ and zero when they agree.
pub fn segal_hom_dimension(from: BigradedLabel, to: BigradedLabel, ring: &GradedRing) -> Result<usize> {
    if from.n != to.n {
        return Err(Error::DegreeMismatch(format!(
            "labels use different moduli {} and {}",
            from.n, to.n
        )));
    }
    let (f, t) = (segal_canonicalize(from), segal_canonicalize(to));
    if f.b == t.b {
        return Ok(0);
    }
    Ok(monomials_of_slicing_degree(ring, t.a - f.a)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(segal_canonicalize(BigradedLabel::new(5, 4, 3)), BigradedLabel::new(11, 0, 3));
        assert_eq!(segal_canonicalize(BigradedLabel::new(5, -1, 3)), BigradedLabel::new(2, 1, 3));
        for b in 0..2 {
            let l = BigradedLabel::new(7, b, 3);
            assert_eq!(segal_canonicalize(l), l);
        }
    }

    #[test]
    fn hom_dimensions() {
        let r = GradedRing::standard(&["x", "y", "z"]);
        let l = |a, b| BigradedLabel::new(a, b, 3);
        assert_eq!(segal_hom_dimension(l(0, 1), l(2, 0), &r).unwrap(), 6);
        assert_eq!(segal_hom_dimension(l(0, 0), l(2, 0), &r).unwrap(), 0);
        assert_eq!(segal_hom_dimension(l(0, 0), l(0, 1), &r).unwrap(), 1);
        assert_eq!(segal_hom_dimension(l(2, 0), l(0, 1), &r).unwrap(), 0);
    }
}
