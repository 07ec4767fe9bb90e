//! Sparse multivariate polynomials with exact rational coefficients over a
//! multigraded ring.
//!
//! Every variable carries a degree vector with one entry per grading
//! channel. A ring may designate a *slicing channel* in which all variable
//! degrees are strictly positive; this makes every graded piece
//! finite-dimensional and is what the cohomology code slices on.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use parse::parse_poly;

pub type Rational = BigRational;

/// Degree vector, one signed entry per grading channel.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradeVector(pub Vec<i64>);

impl GradeVector {
    pub fn new(entries: Vec<i64>) -> Self {
        GradeVector(entries)
    }

    pub fn zero(channels: usize) -> Self {
        GradeVector(vec![0; channels])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, channel: usize) -> i64 {
        self.0[channel]
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        GradeVector(self.0.iter().map(|e| e * k).collect())
    }
}

impl fmt::Display for GradeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl Add for &GradeVector {
    type Output = GradeVector;
    fn add(self, rhs: &GradeVector) -> GradeVector {
        assert_eq!(self.len(), rhs.len(), "grade vectors of different length");
        GradeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &GradeVector {
    type Output = GradeVector;
    fn sub(self, rhs: &GradeVector) -> GradeVector {
        assert_eq!(self.len(), rhs.len(), "grade vectors of different length");
        GradeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &GradeVector {
    type Output = GradeVector;
    fn neg(self) -> GradeVector {
        GradeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Add for GradeVector {
    type Output = GradeVector;
    fn add(self, rhs: GradeVector) -> GradeVector {
        &self + &rhs
    }
}

impl Sub for GradeVector {
    type Output = GradeVector;
    fn sub(self, rhs: GradeVector) -> GradeVector {
        &self - &rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub degree: GradeVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRing {
    variables: Vec<Variable>,
    channels: usize,
    slicing_channel: Option<usize>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl GradedRing {
    pub fn new(
        variables: Vec<(String, GradeVector)>,
        channels: usize,
        slicing_channel: Option<usize>,
    ) -> Result<Arc<Self>> {
        let mut seen = std::collections::HashSet::new();
        for (name, degree) in &variables {
            if !is_identifier(name) {
                return Err(Error::InvalidRing(format!("`{name}` is not an identifier")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable `{name}`")));
            }
            if degree.len() != channels {
                return Err(Error::InvalidRing(format!(
                    "variable `{name}` has degree {degree} but the ring has {channels} channels"
                )));
            }
        }
        if let Some(ch) = slicing_channel {
            if ch >= channels {
                return Err(Error::InvalidRing(format!("slicing channel {ch} out of range")));
            }
            if let Some((name, _)) = variables.iter().find(|(_, d)| d.get(ch) <= 0) {
                return Err(Error::InvalidRing(format!(
                    "variable `{name}` is not positive in slicing channel {ch}"
                )));
            }
        }
        Ok(Arc::new(GradedRing {
            variables: variables
                .into_iter()
                .map(|(name, degree)| Variable { name, degree })
                .collect(),
            channels,
            slicing_channel,
        }))
    }

    /// Single channel, every variable of degree 1, sliced on that channel.
    pub fn standard(names: &[&str]) -> Arc<Self> {
        Self::weighted(&names.iter().map(|n| (*n, 1)).collect::<Vec<_>>())
    }

    /// Single channel with the given positive weights, sliced on that channel.
    pub fn weighted(vars: &[(&str, i64)]) -> Arc<Self> {
        Self::new(
            vars.iter()
                .map(|(n, d)| (n.to_string(), GradeVector(vec![*d])))
                .collect(),
            1,
            Some(0),
        )
        .expect("valid weighted ring")
    }

    /// Single channel, every variable of degree 0, no slicing: the plain
    /// Z/2-graded setting.
    pub fn ungraded(names: &[&str]) -> Arc<Self> {
        Self::new(
            names
                .iter()
                .map(|n| (n.to_string(), GradeVector(vec![0])))
                .collect(),
            1,
            None,
        )
        .expect("valid ungraded ring")
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn slicing_channel(&self) -> Option<usize> {
        self.slicing_channel
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.variables[i].name
    }

    pub fn var_degree(&self, i: usize) -> &GradeVector {
        &self.variables[i].degree
    }

    pub fn zero_degree(&self) -> GradeVector {
        GradeVector::zero(self.channels)
    }

    pub fn degree_of(&self, m: &Monomial) -> GradeVector {
        let mut d = vec![0i64; self.channels];
        for (v, &e) in self.variables.iter().zip(&m.0) {
            if e > 0 {
                for (acc, g) in d.iter_mut().zip(&v.degree.0) {
                    *acc += g * e as i64;
                }
            }
        }
        GradeVector(d)
    }

    /// Weight of a monomial in the slicing channel, or its total degree if
    /// the ring has none.
    pub fn sort_degree(&self, m: &Monomial) -> i64 {
        match self.slicing_channel {
            Some(ch) => self
                .variables
                .iter()
                .zip(&m.0)
                .map(|(v, &e)| v.degree.get(ch) * e as i64)
                .sum(),
            None => m.total_degree() as i64,
        }
    }

    /// Largest variable degree in the slicing channel.
    pub fn max_slicing_degree(&self) -> Option<i64> {
        let ch = self.slicing_channel?;
        self.variables.iter().map(|v| v.degree.get(ch)).max()
    }

    /// Canonical term order: slicing degree, ties broken by exponent-lex.
    pub fn canonical_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.sort_degree(a)
            .cmp(&self.sort_degree(b))
            .then_with(|| a.0.cmp(&b.0))
    }

    /// The same ring with one extra variable of degree zero appended and
    /// slicing disabled. Used for parameter families.
    pub fn with_parameter(&self, name: &str) -> Result<Arc<Self>> {
        let mut vars: Vec<(String, GradeVector)> = self
            .variables
            .iter()
            .map(|v| (v.name.clone(), v.degree.clone()))
            .collect();
        vars.push((name.to_string(), self.zero_degree()));
        GradedRing::new(vars, self.channels, None)
    }
}

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[i] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable if this is a pure power `x_i^e`, e > 0.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

/// Result of [`Polynomial::homogeneity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    Zero,
    Homogeneous(GradeVector),
    Inhomogeneous,
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<GradedRing>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

pub(crate) fn same_ring(a: &Arc<GradedRing>, b: &Arc<GradedRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(ring: &Arc<GradedRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<GradedRing>, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_int(ring: &Arc<GradedRing>, c: i64) -> Self {
        Self::constant(ring, Rational::from_integer(BigInt::from(c)))
    }

    pub fn one(ring: &Arc<GradedRing>) -> Self {
        Self::from_int(ring, 1)
    }

    pub fn monomial(ring: &Arc<GradedRing>, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.0.len(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<GradedRing>, name: &str) -> Result<Self> {
        let i = ring.var_index(name).ok_or_else(|| Error::UnknownVariable {
            name: name.to_string(),
        })?;
        Ok(Self::monomial(
            ring,
            Monomial::var(ring.nvars(), i, 1),
            Rational::one(),
        ))
    }

    pub fn from_terms(
        ring: &Arc<GradedRing>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Parses `text` with the polynomial grammar over `ring`.
    pub fn parse(ring: &Arc<GradedRing>, text: &str) -> Result<Self> {
        parse_poly(text, ring)
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to the variable at index `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.add_term(dm, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial> {
        let i = self.ring.var_index(var).ok_or_else(|| Error::UnknownVariable {
            name: var.to_string(),
        })?;
        Ok(self.derivative(i))
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut iter = self.terms.keys();
        let Some(first) = iter.next() else {
            return Homogeneity::Zero;
        };
        let d = self.ring.degree_of(first);
        if iter.all(|m| self.ring.degree_of(m) == d) {
            Homogeneity::Homogeneous(d)
        } else {
            Homogeneity::Inhomogeneous
        }
    }

    /// True for zero, or when every term has degree `d`.
    pub fn is_homogeneous_of(&self, d: &GradeVector) -> bool {
        self.terms.keys().all(|m| &self.ring.degree_of(m) == d)
    }

    /// Substitutes the rational `value` for the variable at index `i`.
    pub fn specialize(&self, i: usize, value: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut rest = m.clone();
            rest.0[i] = 0;
            let factor = num_traits::pow::pow(value.clone(), e as usize);
            out.add_term(rest, c * factor);
        }
        out
    }

    /// Re-expresses the polynomial in `target`, mapping variable `i` to
    /// variable `index_map[i]`.
    pub fn embed(&self, target: &Arc<GradedRing>, index_map: &[usize]) -> Polynomial {
        let n = target.nvars();
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; n];
                for (i, &x) in m.0.iter().enumerate() {
                    e[index_map[i]] += x;
                }
                (Monomial(e), c.clone())
            }),
        )
    }

    /// Indices of variables occurring with positive exponent.
    pub fn support_variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for m in self.terms.keys() {
            for (u, &e) in used.iter_mut().zip(&m.0) {
                *u |= e > 0;
            }
        }
        used.iter()
            .enumerate()
            .filter_map(|(i, &u)| u.then_some(i))
            .collect()
    }

    /// Terms in canonical order, largest first.
    pub fn canonical_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.ring.canonical_cmp(b.0, a.0));
        v
    }
}

/// Exact ring arithmetic with an explicit ring check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(op: ArithOp, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        debug_assert!(same_ring(&self.ring, &rhs.ring));
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        debug_assert!(same_ring(&self.ring, &rhs.ring));
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        debug_assert!(same_ring(&self.ring, &rhs.ring));
        let mut out = Polynomial::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.canonical_terms().into_iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.var_name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.ring.var_name(i), e)),
                }
            }
            if factors.is_empty() {
                write_rational(f, &mag)?;
            } else {
                if !mag.is_one() {
                    write_rational(f, &mag)?;
                    write!(f, "*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// All monomials of exactly multidegree `degree`, largest first in
/// exponent-lex order.
pub fn monomial_basis(ring: &GradedRing, degree: &GradeVector) -> Result<Vec<Monomial>> {
    let ch = ring.slicing_channel().ok_or(Error::NoSlicingChannel)?;
    if degree.len() != ring.channels() {
        return Err(Error::DegreeMismatch(format!(
            "degree {degree} has the wrong number of channels"
        )));
    }
    let target = degree.get(ch);
    let mut out = Vec::new();
    if target < 0 {
        return Ok(out);
    }
    let weights: Vec<i64> = ring.variables().iter().map(|v| v.degree.get(ch)).collect();
    let mut exps = vec![0u32; ring.nvars()];
    enumerate_weighted(&weights, 0, target, &mut exps, &mut |e| {
        let m = Monomial(e.to_vec());
        if &ring.degree_of(&m) == degree {
            out.push(m);
        }
    });
    out.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(out)
}

/// All monomials whose slicing-channel degree is `k`, largest first in
/// exponent-lex order. Coarser than [`monomial_basis`] when `g > 1`.
pub fn monomials_of_slicing_degree(ring: &GradedRing, k: i64) -> Result<Vec<Monomial>> {
    let ch = ring.slicing_channel().ok_or(Error::NoSlicingChannel)?;
    let mut out = Vec::new();
    if k < 0 {
        return Ok(out);
    }
    let weights: Vec<i64> = ring.variables().iter().map(|v| v.degree.get(ch)).collect();
    let mut exps = vec![0u32; ring.nvars()];
    enumerate_weighted(&weights, 0, k, &mut exps, &mut |e| out.push(Monomial(e.to_vec())));
    out.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(out)
}

/// Calls `f` with every exponent vector whose weighted degree is exactly `remaining`.
fn enumerate_weighted(
    weights: &[i64],
    i: usize,
    remaining: i64,
    exps: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]),
) {
    if i == weights.len() {
        if remaining == 0 {
            f(exps);
        }
        return;
    }
    let w = weights[i];
    let mut e = 0u32;
    while (e as i64) * w <= remaining {
        exps[i] = e;
        enumerate_weighted(weights, i + 1, remaining - e as i64 * w, exps, f);
        e += 1;
    }
    exps[i] = 0;
}
