//! Buchberger's algorithm over the rationals: reduced Gröbner bases, normal
//! forms, ideal membership, standard monomials and colength.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{same_ring, GradedRing, Monomial, Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Degrevlex,
    Lex,
}

/// A monomial order. `perm[0]` is the largest variable. Degrevlex compares
/// the slicing-channel degree first (plain total degree when the ring has
/// no slicing channel).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    perm: Vec<usize>,
    weights: Vec<i64>,
}

impl MonomialOrder {
    pub fn degrevlex(ring: &GradedRing) -> Self {
        Self::with_permutation(OrderKind::Degrevlex, ring, (0..ring.nvars()).collect())
            .expect("identity permutation")
    }

    pub fn lex(ring: &GradedRing) -> Self {
        Self::with_permutation(OrderKind::Lex, ring, (0..ring.nvars()).collect())
            .expect("identity permutation")
    }

    pub fn with_permutation(kind: OrderKind, ring: &GradedRing, perm: Vec<usize>) -> Result<Self> {
        let n = ring.nvars();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::ShapeMismatch(
                "variable permutation is not a permutation".into(),
            ));
        }
        let weights = match ring.slicing_channel() {
            Some(ch) => ring.variables().iter().map(|v| v.degree.get(ch)).collect(),
            None => vec![1; n],
        };
        Ok(MonomialOrder {
            kind,
            perm,
            weights,
        })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    fn weighted_degree(&self, m: &Monomial) -> i64 {
        self.weights
            .iter()
            .zip(m.exponents())
            .map(|(w, &e)| w * e as i64)
            .sum()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &i in &self.perm {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Degrevlex => {
                match self.weighted_degree(a).cmp(&self.weighted_degree(b)) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for &i in self.perm.iter().rev() {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<GradedRing>,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<GradedRing>, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Dimension count that may be unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardMonomials {
    Finite(Vec<Monomial>),
    Infinite,
}

/// Terms sorted largest-first under a fixed order.
type Sorted = Vec<(Monomial, Rational)>;

fn to_sorted(p: &Polynomial, order: &MonomialOrder) -> Sorted {
    let mut v: Sorted = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    v.sort_by(|a, b| order.cmp(&b.0, &a.0));
    v
}

fn from_sorted(ring: &Arc<GradedRing>, v: Sorted) -> Polynomial {
    Polynomial::from_terms(ring, v)
}

/// `a - c * m * b`, all sorted largest-first.
fn sub_mul(a: &[(Monomial, Rational)], b: &[(Monomial, Rational)], c: &Rational, m: &Monomial, order: &MonomialOrder) -> Sorted {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let shifted: Vec<(Monomial, Rational)> = b.iter().map(|(bm, bc)| (bm.mul(m), bc * c)).collect();
    while i < a.len() && j < shifted.len() {
        match order.cmp(&a[i].0, &shifted[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((shifted[j].0.clone(), -shifted[j].1.clone()));
                j += 1;
            }
            Ordering::Equal => {
                let v = &a[i].1 - &shifted[j].1;
                if !v.is_zero() {
                    out.push((a[i].0.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(shifted[j..].iter().map(|(m, c)| (m.clone(), -c.clone())));
    out
}

fn make_monic(mut v: Sorted) -> Sorted {
    if let Some((_, lc)) = v.first() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in v.iter_mut() {
                *c *= &inv;
            }
        }
    }
    v
}

/// Full reduction of `p` by monic `basis` elements.
fn reduce(p: Sorted, basis: &[Sorted], order: &MonomialOrder) -> Sorted {
    let mut rem: Sorted = Vec::new();
    let mut p = p;
    while !p.is_empty() {
        let (lm, lc) = (&p[0].0, &p[0].1);
        let divisor = basis.iter().find(|g| g[0].0.divides(lm));
        match divisor {
            Some(g) => {
                let m = g[0].0.quotient_of(lm);
                let c = lc / &g[0].1;
                p = sub_mul(&p, g, &c, &m, order);
            }
            None => {
                rem.push(p.remove(0));
            }
        }
    }
    rem
}

fn s_poly_sorted(f: &Sorted, g: &Sorted, order: &MonomialOrder) -> Sorted {
    let lcm = f[0].0.lcm(&g[0].0);
    let mf = f[0].0.quotient_of(&lcm);
    let mg = g[0].0.quotient_of(&lcm);
    let fm: Sorted = f
        .iter()
        .map(|(m, c)| (m.mul(&mf), c / &f[0].1))
        .collect();
    sub_mul(&fm, g, &g[0].1.recip(), &mg, order)
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let fs = to_sorted(f, order);
    let gs = to_sorted(g, order);
    from_sorted(f.ring(), s_poly_sorted(&fs, &gs, order))
}

/// Reduced Gröbner basis with monic elements.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<GradedRing>,
    order: MonomialOrder,
    sorted: Vec<Sorted>,
    elements: Vec<Polynomial>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.elements == other.elements
    }
}

/// Buchberger's algorithm with normal pair selection, the coprime
/// criterion and the chain criterion.
pub fn buchberger(ideal: &Ideal, order: &MonomialOrder) -> GroebnerBasis {
    let ring = ideal.ring().clone();
    let mut basis: Vec<Sorted> = ideal
        .generators()
        .iter()
        .map(|g| make_monic(to_sorted(g, order)))
        .collect();
    // Pre-reduce the input so the pair set starts small.
    let mut g: Vec<Sorted> = Vec::new();
    for f in basis.drain(..) {
        let r = reduce(f, &g, order);
        if !r.is_empty() {
            g.push(make_monic(r));
        }
    }

    let mut pending: Vec<(usize, usize)> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pending.push((i, j));
        }
    }

    while !pending.is_empty() {
        // normal strategy: smallest lcm first, ties by index
        let (idx, _) = pending
            .iter()
            .enumerate()
            .min_by(|(_, &(a, b)), (_, &(c, d))| {
                let l1 = g[a][0].0.lcm(&g[b][0].0);
                let l2 = g[c][0].0.lcm(&g[d][0].0);
                order.cmp(&l1, &l2).then((a, b).cmp(&(c, d)))
            })
            .unwrap();
        let (i, j) = pending.swap_remove(idx);
        let lmi = &g[i][0].0;
        let lmj = &g[j][0].0;
        if lmi.coprime(lmj) {
            continue;
        }
        let lcm = lmi.lcm(lmj);
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && g[k][0].0.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_poly_sorted(&g[i], &g[j], order);
        let r = reduce(s, &g, order);
        if !r.is_empty() {
            let n = g.len();
            g.push(make_monic(r));
            for k in 0..n {
                pending.push((k, n));
            }
        }
    }

    // minimalize
    let mut keep = vec![true; g.len()];
    for a in 0..g.len() {
        for b in 0..g.len() {
            if a != b && keep[b] && g[b][0].0.divides(&g[a][0].0) && (g[b][0].0 != g[a][0].0 || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    let minimal: Vec<Sorted> = g
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect();

    // interreduce tails
    let mut reduced: Vec<Sorted> = Vec::with_capacity(minimal.len());
    for (a, p) in minimal.iter().enumerate() {
        let others: Vec<Sorted> = minimal
            .iter()
            .enumerate()
            .filter(|(b, _)| *b != a)
            .map(|(_, q)| q.clone())
            .collect();
        let head = p[0].clone();
        let tail = reduce(p[1..].to_vec(), &others, order);
        let mut v = vec![head];
        v.extend(tail);
        reduced.push(make_monic(v));
    }
    reduced.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));

    let elements = reduced.iter().map(|s| from_sorted(&ring, s.clone())).collect();
    GroebnerBasis {
        ring,
        order: order.clone(),
        sorted: reduced,
        elements,
    }
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|s| s[0].0.clone()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.sorted.iter().any(|s| s[0].0.is_one())
    }

    /// Remainder of `p` on division by the basis; no term of the result is
    /// divisible by a leading monomial.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if !same_ring(p.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(from_sorted(
            &self.ring,
            reduce(to_sorted(p, &self.order), &self.sorted, &self.order),
        ))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// True when every S-polynomial of basis elements reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        for j in 0..self.sorted.len() {
            for i in 0..j {
                let s = s_poly_sorted(&self.sorted[i], &self.sorted[j], &self.order);
                if !reduce(s, &self.sorted, &self.order).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    fn standard(&self, m: &Monomial) -> bool {
        !self.sorted.iter().any(|s| s[0].0.divides(m))
    }

    /// Monomials outside the leading-term ideal. With `bound`, only those of
    /// sort degree at most `bound` are listed (always finite).
    pub fn standard_monomials(&self, bound: Option<i64>) -> StandardMonomials {
        let n = self.ring.nvars();
        if self.is_unit_ideal() {
            return StandardMonomials::Finite(Vec::new());
        }
        let mut out = Vec::new();
        if let Some(b) = bound {
            let weights: Vec<i64> = (0..n)
                .map(|i| match self.ring.slicing_channel() {
                    Some(ch) => self.ring.var_degree(i).get(ch),
                    None => 1,
                })
                .collect();
            let mut exps = vec![0u32; n];
            enumerate_bounded(&weights, 0, b, &mut exps, &mut |e| {
                let m = Monomial(e.to_vec());
                if self.standard(&m) {
                    out.push(m);
                }
            });
        } else {
            let lms = self.leading_monomials();
            let mut caps = Vec::with_capacity(n);
            for i in 0..n {
                let cap = lms
                    .iter()
                    .filter(|m| m.pure_power_of() == Some(i))
                    .map(|m| m.0[i])
                    .min();
                match cap {
                    Some(c) => caps.push(c),
                    None => return StandardMonomials::Infinite,
                }
            }
            let mut exps = vec![0u32; n];
            enumerate_box(&caps, 0, &mut exps, &mut |e| {
                let m = Monomial(e.to_vec());
                if self.standard(&m) {
                    out.push(m);
                }
            });
        }
        out.sort_by(|a, b| self.ring.canonical_cmp(a, b));
        StandardMonomials::Finite(out)
    }

    pub fn colength(&self) -> Dimension {
        match self.standard_monomials(None) {
            StandardMonomials::Finite(v) => Dimension::Finite(v.len()),
            StandardMonomials::Infinite => Dimension::Infinite,
        }
    }
}

fn enumerate_box(caps: &[u32], i: usize, exps: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if i == caps.len() {
        f(exps);
        return;
    }
    for e in 0..caps[i] {
        exps[i] = e;
        enumerate_box(caps, i + 1, exps, f);
    }
    exps[i] = 0;
}

fn enumerate_bounded(weights: &[i64], i: usize, budget: i64, exps: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if i == weights.len() {
        f(exps);
        return;
    }
    let w = weights[i].max(1);
    let mut e = 0u32;
    while e as i64 * w <= budget {
        exps[i] = e;
        enumerate_bounded(weights, i + 1, budget - e as i64 * w, exps, f);
        e += 1;
    }
    exps[i] = 0;
}

/// Convenience wrappers mirroring the ideal-level operations.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(p)
}

pub fn ideal_membership(p: &Polynomial, gb: &GroebnerBasis) -> Result<bool> {
    gb.contains(p)
}

pub fn standard_monomials(gb: &GroebnerBasis, bound: Option<i64>) -> StandardMonomials {
    gb.standard_monomials(bound)
}

/// Dimension of R/I; independent of the monomial order.
pub fn colength(ideal: &Ideal) -> Dimension {
    if ideal.ring().nvars() == 0 {
        return if ideal.is_zero() {
            Dimension::Finite(1)
        } else {
            Dimension::Finite(0)
        };
    }
    buchberger(ideal, &MonomialOrder::degrevlex(ideal.ring())).colength()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::GradedRing;

    fn ideal(ring: &Arc<GradedRing>, gens: &[&str]) -> Ideal {
        Ideal::new(
            ring,
            gens.iter().map(|g| Polynomial::parse(ring, g).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = GradedRing::standard(&["x", "y"]);
        let gb = buchberger(&ideal(&r, &["x^2", "y^2"]), &MonomialOrder::degrevlex(&r));
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        assert_eq!(gb.elements(), &[p("y^2"), p("x^2")]);
    }

    #[test]
    fn twisted_cubic_lex() {
        let r = GradedRing::ungraded(&["z", "y", "x"]);
        let gb = buchberger(&ideal(&r, &["y - x^2", "z - x^3"]), &MonomialOrder::lex(&r));
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        assert!(gb.s_pairs_reduce_to_zero());
        assert!(gb.elements().contains(&p("y - x^2")));
        assert!(gb.elements().contains(&p("z - x^3")));
    }

    #[test]
    fn unit_ideal() {
        let r = GradedRing::ungraded(&["x"]);
        let gb = buchberger(&ideal(&r, &["x", "1 + x"]), &MonomialOrder::degrevlex(&r));
        assert_eq!(gb.elements(), &[Polynomial::one(&r)]);
        assert_eq!(gb.standard_monomials(None), StandardMonomials::Finite(vec![]));
    }

    #[test]
    fn normal_forms_and_membership() {
        let r = GradedRing::standard(&["x", "y"]);
        let gb = buchberger(&ideal(&r, &["x^2", "y^2"]), &MonomialOrder::degrevlex(&r));
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        assert!(gb.normal_form(&p("x^3")).unwrap().is_zero());
        assert_eq!(gb.normal_form(&p("x*y")).unwrap(), p("x*y"));
        assert!(ideal_membership(&p("x^3+y^3"), &gb).unwrap());
        assert!(!ideal_membership(&p("x*y"), &gb).unwrap());
        assert!(ideal_membership(&Polynomial::zero(&r), &gb).unwrap());
        let other = GradedRing::standard(&["u"]);
        assert_eq!(
            gb.normal_form(&Polynomial::var(&other, "u").unwrap()),
            Err(Error::RingMismatch)
        );
    }

    #[test]
    fn standard_monomial_examples() {
        let r = GradedRing::standard(&["x", "y"]);
        let gb = buchberger(&ideal(&r, &["x^2", "y^2"]), &MonomialOrder::degrevlex(&r));
        let StandardMonomials::Finite(sm) = gb.standard_monomials(None) else {
            panic!("finite expected")
        };
        let names: Vec<String> = sm
            .iter()
            .map(|m| Polynomial::monomial(&r, m.clone(), Rational::one()).to_string())
            .collect();
        assert_eq!(names, ["1", "y", "x", "x*y"]);

        let gbx = buchberger(&ideal(&r, &["x"]), &MonomialOrder::degrevlex(&r));
        assert_eq!(gbx.standard_monomials(None), StandardMonomials::Infinite);
        // bounded listing still works for infinite staircases
        let StandardMonomials::Finite(b) = gbx.standard_monomials(Some(3)) else {
            panic!()
        };
        assert_eq!(b.len(), 4);
    }

    #[test]
    fn colength_examples() {
        let r = GradedRing::standard(&["x", "y"]);
        assert_eq!(colength(&ideal(&r, &["x^2", "y^2"])), Dimension::Finite(4));
        assert_eq!(colength(&ideal(&r, &["x", "y"])), Dimension::Finite(1));
        assert_eq!(colength(&ideal(&r, &["x^2*y"])), Dimension::Infinite);
        assert_eq!(colength(&ideal(&r, &[])), Dimension::Infinite);
    }

    #[test]
    fn orders_are_consistent() {
        let r = GradedRing::standard(&["x", "y", "z"]);
        let dr = MonomialOrder::degrevlex(&r);
        let lx = MonomialOrder::lex(&r);
        let m = |e: [u32; 3]| Monomial(e.to_vec());
        // degrevlex: x*z < y^2 ; lex: x*z > y^2
        assert_eq!(dr.cmp(&m([1, 0, 1]), &m([0, 2, 0])), Ordering::Less);
        assert_eq!(lx.cmp(&m([1, 0, 1]), &m([0, 2, 0])), Ordering::Greater);
        let rev = MonomialOrder::with_permutation(OrderKind::Lex, &r, vec![2, 1, 0]).unwrap();
        assert_eq!(rev.cmp(&m([1, 0, 0]), &m([0, 0, 1])), Ordering::Less);
        assert!(MonomialOrder::with_permutation(OrderKind::Lex, &r, vec![0, 0, 1]).is_err());
    }
}
