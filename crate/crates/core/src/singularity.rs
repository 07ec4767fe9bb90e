//! Jacobi and Tyurina ideals of a potential, Milnor numbers and the Euler
//! identity for quasi-homogeneous potentials.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::groebner::{colength, Dimension, Ideal};
use crate::ring::{Homogeneity, Polynomial, Rational};

/// Ideal generated by all partial derivatives of `w`.
pub fn jacobi_ideal(w: &Polynomial) -> Ideal {
    let ring = w.ring();
    let gens = (0..ring.nvars()).map(|i| w.derivative(i)).collect();
    Ideal::new(ring, gens).expect("same ring")
}

/// Jacobi generators followed by `w` itself.
pub fn tyurina_ideal(w: &Polynomial) -> Ideal {
    let ring = w.ring();
    let mut gens: Vec<Polynomial> = (0..ring.nvars()).map(|i| w.derivative(i)).collect();
    gens.push(w.clone());
    Ideal::new(ring, gens).expect("same ring")
}

pub fn milnor_number(w: &Polynomial) -> Dimension {
    colength(&jacobi_ideal(w))
}

pub fn tyurina_number(w: &Polynomial) -> Dimension {
    colength(&tyurina_ideal(w))
}

/// Checks `sum deg_i * x_i * dW/dx_i = deg(W) * W` in the slicing channel
/// (channel 0 if the ring has none).
pub fn euler_identity_check(w: &Polynomial) -> Result<bool> {
    let ring = w.ring();
    let ch = ring.slicing_channel().unwrap_or(0);
    if ring.channels() == 0 {
        return Err(Error::InhomogeneousInput("ring has no grading channels".into()));
    }
    let degree = match w.homogeneity() {
        Homogeneity::Zero => return Ok(true),
        Homogeneity::Homogeneous(d) => d.get(ch),
        Homogeneity::Inhomogeneous => {
            let mut degs = w.terms().map(|(m, _)| ring.degree_of(m).get(ch));
            let first = degs.next().unwrap();
            if degs.any(|d| d != first) {
                return Err(Error::InhomogeneousInput(w.to_string()));
            }
            first
        }
    };
    let mut lhs = Polynomial::zero(ring);
    for i in 0..ring.nvars() {
        let xi = Polynomial::monomial(
            ring,
            crate::ring::Monomial::var(ring.nvars(), i, 1),
            Rational::from_integer(BigInt::from(ring.var_degree(i).get(ch))),
        );
        lhs = &lhs + &(&xi * &w.derivative(i));
    }
    let rhs = w.scale(&Rational::from_integer(BigInt::from(degree)));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{buchberger, MonomialOrder};
    use crate::ring::GradedRing;

    #[test]
    fn jacobi_examples() {
        let r = GradedRing::standard(&["x", "y"]);
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        assert_eq!(jacobi_ideal(&p("x^3+y^3")).generators(), &[p("3*x^2"), p("3*y^2")]);
        assert_eq!(jacobi_ideal(&p("x*y")).generators(), &[p("y"), p("x")]);
        assert!(jacobi_ideal(&p("5")).is_zero());
    }

    #[test]
    fn tyurina_examples() {
        let r = GradedRing::standard(&["x", "y"]);
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        let t = tyurina_ideal(&p("x*y"));
        let gb = buchberger(&t, &MonomialOrder::degrevlex(&r));
        assert!(gb.contains(&p("x")).unwrap() && gb.contains(&p("y")).unwrap());
        let r1 = GradedRing::standard(&["x"]);
        assert_eq!(
            tyurina_number(&Polynomial::parse(&r1, "x^2").unwrap()),
            Dimension::Finite(1)
        );
        assert!(tyurina_ideal(&Polynomial::zero(&r)).is_zero());
    }

    #[test]
    fn milnor_examples() {
        let r = GradedRing::standard(&["x", "y"]);
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        assert_eq!(milnor_number(&p("x^3+y^3")), Dimension::Finite(4));
        assert_eq!(milnor_number(&p("x*y")), Dimension::Finite(1));
        assert_eq!(milnor_number(&p("x^2*y")), Dimension::Infinite);
        for a in 1..=4u32 {
            for b in 1..=4u32 {
                let w = p(&format!("x^{}+y^{}", a + 1, b + 1));
                assert_eq!(milnor_number(&w), Dimension::Finite((a * b) as usize));
            }
        }
    }

    #[test]
    fn euler_examples() {
        let r = GradedRing::standard(&["x", "y", "z"]);
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        assert!(euler_identity_check(&p("x^3+y^3+z^3")).unwrap());
        assert!(euler_identity_check(&p("x^2*y")).unwrap());
        assert!(matches!(
            euler_identity_check(&p("x+x^2")),
            Err(Error::InhomogeneousInput(_))
        ));
        let wr = GradedRing::weighted(&[("x", 2), ("y", 3)]);
        assert!(euler_identity_check(&Polynomial::parse(&wr, "x^3+y^2").unwrap()).unwrap());
    }
}
