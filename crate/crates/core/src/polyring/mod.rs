//! Exact sparse multivariate polynomials over the rationals, plus the
//! univariate and bivariate containers used by the involution engine.

mod bipoly;
mod eval;
mod parse;
mod rng;
mod unipoly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use bipoly::BiPoly;
pub use eval::{eval_complex, eval_complex_with_scale};
pub use parse::{parse_poly, ParseError, ParseErrorKind};
pub use rng::{random_affine_forms, Draws, RandomSource, DENOMINATOR_MAX, NUMERATOR_MAX};
pub use unipoly::UniPoly;

use crate::error::{Error, Result};

/// An exponent vector ordered graded-lexicographically: total degree first,
/// then lexicographic on the exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Sparse polynomial with exact rational coefficients over an ordered list
/// of named variables.
///
/// Zero coefficients are never stored. Binary operations require both
/// operands to share the same variable list and panic otherwise; use
/// [`Poly::embed`] to move a polynomial into a larger ring first.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero(vars: &[String]) -> Self {
        Poly { vars: vars.into(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: BigRational) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn from_int(vars: &[String], c: i64) -> Self {
        Poly::constant(vars, BigRational::from_integer(c.into()))
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: &[String], name: &str) -> Result<Self> {
        let idx = index_of(vars, name)?;
        Ok(Poly::var_at(vars, idx))
    }

    pub fn var_at(vars: &[String], idx: usize) -> Self {
        let mut p = Poly::zero(vars);
        p.terms.insert(Monomial::var(vars.len(), idx), BigRational::one());
        p
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(vars: &[String], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut p = Poly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length mismatch");
            p.add_term(Monomial(e), c);
        }
        p
    }

    /// Affine form `c0 + sum_i coeffs[i] * x_i`.
    pub fn affine(vars: &[String], constant: BigRational, coeffs: &[BigRational]) -> Self {
        assert_eq!(coeffs.len(), vars.len());
        let mut p = Poly::constant(vars, constant);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(vars.len(), i), c.clone());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Degree in the variables selected by `mask`.
    pub fn degree_in(&self, mask: &[bool]) -> u32 {
        self.terms
            .keys()
            .map(|m| m.0.iter().zip(mask).filter(|(_, &s)| s).map(|(e, _)| e).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::from_int(&self.vars, 1);
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

    /// Formal partial derivative with respect to `name`.
    pub fn differentiate(&self, name: &str) -> Result<Poly> {
        let idx = index_of(&self.vars, name)?;
        Ok(self.differentiate_at(idx))
    }

    pub fn differentiate_at(&self, idx: usize) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[idx] -= 1;
            out.add_term(m2, c * BigRational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Euler operator `sum_i x_i d/dx_i`: scales every term by its degree.
    pub fn euler(&self) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * BigRational::from_integer(m.degree().into()));
        }
        out
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// variable of `self` (missing ones are an error).
    pub fn embed(&self, vars: &[String]) -> Result<Poly> {
        let map = self
            .vars
            .iter()
            .map(|v| index_of(vars, v))
            .collect::<Result<Vec<_>>>()?;
        let mut out = Poly::zero(vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Substitutes polynomials (all over a common target ring) for every
    /// variable of `self`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), got: point.len() });
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Largest absolute coefficient as an f64.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    /// Canonical textual form: graded-lex descending, parseable by
    /// [`parse_poly`].
    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = format_monomial(&self.vars, &m.0);
            if mono.is_empty() {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format_rational(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

pub(crate) fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(vars: &[String], exps: &[u32]) -> String {
    let mut parts = Vec::new();
    for (v, &e) in vars.iter().zip(exps) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

pub(crate) fn index_of(vars: &[String], name: &str) -> Result<usize> {
    vars.iter()
        .position(|v| v == name)
        .ok_or_else(|| Error::UnknownVariable(name.to_string()))
}

/// Convenience: owned variable names from string slices.
pub fn var_names<S: AsRef<str>>(names: &[S]) -> Vec<String> {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars.join(","), self)
    }
}

fn check_same_ring(a: &Poly, b: &Poly) {
    assert!(
        Arc::ptr_eq(&a.vars, &b.vars) || a.vars == b.vars,
        "polynomials over different variable lists"
    );
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        check_same_ring(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        check_same_ring(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        check_same_ring(self, rhs);
        let mut out = Poly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
