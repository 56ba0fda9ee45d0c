//! Exact transforms between ML-bidegree and sectional-ML-degree
//! polynomials, and Aluffi's involution on univariate polynomials.
//!
//! Bivariate transforms dehomogenize at `p = 1`, operate on a univariate
//! polynomial in `u` and rehomogenize; homogeneity makes this lossless.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{BiPoly, UniPoly};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `I(p) = (t p(-t-1) + p(0)) / (t+1)`.
///
/// The numerator always vanishes at `t = -1`, so a nonzero remainder means
/// an arithmetic bug and is reported as [`Error::InexactDivision`].
pub fn aluffi_involution(p: &UniPoly) -> Result<UniPoly> {
    let numerator = p
        .compose_affine(&q(-1), &q(-1))
        .shift(1)
        .add(&UniPoly::constant(p.coeff(0)));
    let (quot, rem) = numerator.div_linear(&q(-1));
    if !rem.is_zero() {
        return Err(Error::InexactDivision(format!("I({p}) left remainder {rem}")));
    }
    Ok(quot)
}

fn validate(poly: &BiPoly, n: u32, d: u32, what: &str) -> Result<()> {
    if d > n {
        return Err(Error::InvalidInput(format!("d = {d} exceeds n = {n}")));
    }
    if !poly.is_homogeneous_of_degree(n) {
        return Err(Error::InvalidInput(format!("{what} = {poly} is not homogeneous of degree {n}")));
    }
    if poly.u_degree() > d {
        return Err(Error::InvalidInput(format!(
            "{what} = {poly} has u-degree {} > d = {d}",
            poly.u_degree()
        )));
    }
    Ok(())
}

/// `S(p,u) = (u B(p, u+p) + p B(p, 0)) / (u + p)`.
pub fn s_from_b(b: &BiPoly, n: u32, d: u32) -> Result<BiPoly> {
    validate(b, n, d, "B")?;
    let f = b.dehomogenize();
    let numerator = f
        .compose_affine(&q(1), &q(1))
        .shift(1)
        .add(&UniPoly::constant(f.coeff(0)));
    let (g, rem) = numerator.div_linear(&q(-1));
    if !rem.is_zero() {
        return Err(Error::InexactDivision(format!("(u + p) does not divide the numerator for B = {b}")));
    }
    BiPoly::homogenize(&g, n)
}

/// `B(p,u) = (u S(p, u-p) - p S(p, 0)) / (u - p)`.
pub fn b_from_s(s: &BiPoly, n: u32, d: u32) -> Result<BiPoly> {
    validate(s, n, d, "S")?;
    let g = s.dehomogenize();
    let numerator = g
        .compose_affine(&q(1), &q(-1))
        .shift(1)
        .sub(&UniPoly::constant(g.coeff(0)));
    let (f, rem) = numerator.div_linear(&q(1));
    if !rem.is_zero() {
        return Err(Error::InexactDivision(format!("(u - p) does not divide the numerator for S = {s}")));
    }
    BiPoly::homogenize(&f, n)
}

/// Second route to `S` through Aluffi's involution: with
/// `gamma(t) = (-1)^d B(1, -t)`, one has `S(1, u) = (-1)^d I(gamma)(u)`.
pub fn s_from_b_via_aluffi(b: &BiPoly, n: u32, d: u32) -> Result<BiPoly> {
    validate(b, n, d, "B")?;
    let sign = if d.is_multiple_of(2) { q(1) } else { q(-1) };
    let gamma = b.dehomogenize().compose_affine(&q(-1), &q(0)).scale(&sign);
    let chi = aluffi_involution(&gamma)?;
    BiPoly::homogenize(&chi.scale(&sign), n)
}

/// Outcome of comparing a (B, S) pair in both directions. All comparisons
/// are exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvolutionReport {
    pub n: u32,
    pub d: u32,
    pub b: String,
    pub s: String,
    pub s_from_b: Option<String>,
    pub b_from_s: Option<String>,
    pub s_matches: bool,
    pub b_matches: bool,
    pub b0_equals_s0: bool,
    pub u_degree_within_d: bool,
    /// Every division performed was exact (false also when a transform was
    /// rejected as invalid input).
    pub divisions_exact: bool,
    pub errors: Vec<String>,
}

impl InvolutionReport {
    pub fn passed(&self) -> bool {
        self.s_matches && self.b_matches && self.b0_equals_s0 && self.u_degree_within_d && self.divisions_exact
    }
}

pub fn cross_check(b: &BiPoly, s: &BiPoly, n: u32, d: u32) -> InvolutionReport {
    let mut errors = Vec::new();
    let mut exact = true;
    let mut run = |r: Result<BiPoly>| match r {
        Ok(p) => Some(p),
        Err(e) => {
            exact = false;
            errors.push(e.to_string());
            None
        }
    };
    let s2 = run(s_from_b(b, n, d));
    let b2 = run(b_from_s(s, n, d));
    InvolutionReport {
        n,
        d,
        b: b.to_string(),
        s: s.to_string(),
        s_matches: s2.as_ref() == Some(s),
        b_matches: b2.as_ref() == Some(b),
        s_from_b: s2.map(|p| p.to_string()),
        b_from_s: b2.map(|p| p.to_string()),
        b0_equals_s0: b.coeff(n, 0) == s.coeff(n, 0),
        u_degree_within_d: b.u_degree() <= d && s.u_degree() <= d,
        divisions_exact: exact,
        errors,
    }
}

/// `B = p^n + sum_{i=1..k} i! C(k,i) p^(n-i) u^i` with `n = 2^k - 1`: the
/// closed form suggested for rank-one `2 x ... x 2` tensors. A comparison
/// target, not ground truth.
pub fn conjectured_b_tensor(k: u32) -> Result<BiPoly> {
    if k == 0 || k > 31 {
        return Err(Error::InvalidInput(format!("k = {k} out of range")));
    }
    let n = (1u32 << k) - 1;
    let mut terms = vec![((n, 0), BigRational::one())];
    let mut coeff = num_bigint::BigInt::one();
    for i in 1..=k {
        // i! C(k,i) = k!/(k-i)! = previous * (k - i + 1)
        coeff *= k - i + 1;
        terms.push(((n - i, i), BigRational::from_integer(coeff.clone())));
    }
    Ok(BiPoly::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, var_names};

    fn bi(s: &str) -> BiPoly {
        BiPoly::from_poly(&parse_poly(s, &var_names(&["p", "u"])).unwrap()).unwrap()
    }

    #[test]
    fn constant_is_fixed() {
        let c = UniPoly::from_ints(&[7]);
        assert_eq!(aluffi_involution(&c).unwrap(), c);
        assert_eq!(aluffi_involution(&UniPoly::zero()).unwrap(), UniPoly::zero());
    }

    #[test]
    fn quadratic_example() {
        let p = UniPoly::from_ints(&[1, 2, 3]);
        let ip = aluffi_involution(&p).unwrap();
        assert_eq!(ip, UniPoly::from_ints(&[1, 1, 3]));
        assert_eq!(aluffi_involution(&ip).unwrap(), p);
    }

    #[test]
    fn point_is_fixed_by_both_transforms() {
        for n in 0..5 {
            let b = BiPoly::from_terms([((n, 0), q(1))]);
            assert_eq!(s_from_b(&b, n, 0).unwrap(), b);
            assert_eq!(b_from_s(&b, n, 0).unwrap(), b);
        }
    }

    #[test]
    fn independence_2x2_pair() {
        let b = bi("p^3+2*p^2*u+2*p*u^2");
        let s = bi("p^3+4*p^2*u+2*p*u^2");
        assert_eq!(s_from_b(&b, 3, 2).unwrap(), s);
        assert_eq!(b_from_s(&s, 3, 2).unwrap(), b);
        assert_eq!(s_from_b_via_aluffi(&b, 3, 2).unwrap(), s);
        assert!(cross_check(&b, &s, 3, 2).passed());
    }

    #[test]
    fn cubic_rows() {
        let b = bi("5*p^4+5*p^3*u+5*p^2*u^2+3*p*u^3");
        assert_eq!(s_from_b(&b, 4, 3).unwrap(), bi("5*p^4+13*p^3*u+11*p^2*u^2+3*p*u^3"));
        let s = bi("6*p^4+15*p^3*u+12*p^2*u^2+3*p*u^3");
        assert_eq!(b_from_s(&s, 4, 3).unwrap(), bi("6*p^4+6*p^3*u+6*p^2*u^2+3*p*u^3"));
        let r = cross_check(
            &bi("11*p^4+12*p^3*u+9*p^2*u^2+3*p*u^3"),
            &bi("11*p^4+24*p^3*u+15*p^2*u^2+3*p*u^3"),
            4,
            3,
        );
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn perturbed_pair_fails() {
        let b = bi("p^3+3*p^2*u+2*p*u^2");
        let s = bi("p^3+4*p^2*u+2*p*u^2");
        let r = cross_check(&b, &s, 3, 2);
        assert!(!r.passed());
        assert!(!r.s_matches || !r.b_matches);
    }

    #[test]
    fn invalid_inputs_are_errors_not_panics() {
        assert!(matches!(s_from_b(&bi("p^3+u"), 3, 2), Err(Error::InvalidInput(_))));
        assert!(matches!(s_from_b(&bi("p*u^2"), 3, 1), Err(Error::InvalidInput(_))));
        assert!(matches!(b_from_s(&bi("u^3"), 3, 2), Err(Error::InvalidInput(_))));
        let r = cross_check(&bi("p^3+u"), &bi("p^3"), 3, 2);
        assert!(!r.passed());
        assert!(!r.divisions_exact);
        assert!(!r.errors.is_empty());
    }

    #[test]
    fn conjectured_tensor_rows() {
        assert_eq!(conjectured_b_tensor(2).unwrap(), bi("p^3+2*p^2*u+2*p*u^2"));
        assert_eq!(conjectured_b_tensor(3).unwrap(), bi("p^7+3*p^6*u+6*p^5*u^2+6*p^4*u^3"));
        assert_eq!(
            conjectured_b_tensor(4).unwrap(),
            bi("p^15+4*p^14*u+12*p^13*u^2+24*p^12*u^3+24*p^11*u^4")
        );
    }
}
