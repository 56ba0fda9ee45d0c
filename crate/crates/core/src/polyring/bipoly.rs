use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{format_rational, Poly, UniPoly};
use crate::error::{Error, Result};

/// Bivariate polynomial in `p` and `u`; the key `(i, j)` stands for the
/// monomial `p^i u^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    coeffs: BTreeMap<(u32, u32), BigRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), BigRational)>>(terms: I) -> Self {
        let mut b = BiPoly::zero();
        for (k, c) in terms {
            b.add_term(k, c);
        }
        b
    }

    fn add_term(&mut self, k: (u32, u32), c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, p_exp: u32, u_exp: u32) -> BigRational {
        self.coeffs
            .get(&(p_exp, u_exp))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Some(n)` when every monomial has total degree `n`; the zero
    /// polynomial is homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.coeffs.keys().map(|&(i, j)| i + j);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of_degree(&self, n: u32) -> bool {
        self.is_zero() || self.homogeneous_degree() == Some(n)
    }

    pub fn u_degree(&self) -> u32 {
        self.coeffs.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// Sets `p = 1`, giving a univariate polynomial in `u`.
    pub fn dehomogenize(&self) -> UniPoly {
        let deg = self.u_degree() as usize;
        let mut c = vec![BigRational::zero(); deg + 1];
        for (&(_, j), a) in &self.coeffs {
            c[j as usize] += a;
        }
        UniPoly::new(c)
    }

    /// Inverse of [`dehomogenize`](Self::dehomogenize) in total degree `n`:
    /// `u^j` becomes `p^(n-j) u^j`.
    pub fn homogenize(f: &UniPoly, n: u32) -> Result<BiPoly> {
        if let Some(d) = f.degree() {
            if d as u32 > n {
                return Err(Error::InvalidInput(format!(
                    "degree {d} exceeds homogenization degree {n}"
                )));
            }
        }
        Ok(BiPoly::from_terms(
            f.coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| ((n - j as u32, j as u32), c.clone())),
        ))
    }

    /// Reads a polynomial over the variable list `[p, u]`.
    pub fn from_poly(poly: &Poly) -> Result<BiPoly> {
        if poly.nvars() != 2 {
            return Err(Error::InvalidInput(format!(
                "expected a polynomial in two variables, got {:?}",
                poly.variables()
            )));
        }
        Ok(BiPoly::from_terms(
            poly.terms().map(|(m, c)| ((m.exponents()[0], m.exponents()[1]), c.clone())),
        ))
    }

    /// `(p^i u^j, coefficient)` triples sorted by ascending `u` power,
    /// as strings, for machine-readable reports.
    pub fn coefficient_map(&self) -> Vec<(u32, u32, String)> {
        let mut v: Vec<_> = self
            .coeffs
            .iter()
            .map(|(&(i, j), c)| (i, j, format_rational(c)))
            .collect();
        v.sort_by_key(|&(i, j, _)| (j, std::cmp::Reverse(i)));
        v
    }

    pub fn to_string_in(&self, pv: &str, uv: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<_> = self.coeffs.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| (j, std::cmp::Reverse(i)));
        let mut out = String::new();
        for (k, key) in keys.iter().enumerate() {
            let c = &self.coeffs[key];
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut parts = Vec::new();
            for (v, e) in [(pv, key.0), (uv, key.1)] {
                match e {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            let mono = parts.join("*");
            let a = c.abs();
            if mono.is_empty() {
                out.push_str(&format_rational(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", format_rational(&a), mono));
            }
        }
        out
    }
}

/// Serialized as the pretty-printed polynomial plus its coefficient map.
impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            p: u32,
            u: u32,
            coefficient: String,
        }
        let mut st = s.serialize_struct("BiPoly", 2)?;
        st.serialize_field("polynomial", &self.to_string())?;
        let terms: Vec<Term> = self
            .coefficient_map()
            .into_iter()
            .map(|(p, u, coefficient)| Term { p, u, coefficient })
            .collect();
        st.serialize_field("coefficients", &terms)?;
        st.end()
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("p", "u"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, var_names};

    #[test]
    fn parse_and_display() {
        let v = var_names(&["p", "u"]);
        let b = BiPoly::from_poly(&parse_poly("2*p*u^2 + p^3 + 2*p^2*u", &v).unwrap()).unwrap();
        assert_eq!(b.to_string(), "p^3 + 2*p^2*u + 2*p*u^2");
        assert_eq!(b.homogeneous_degree(), Some(3));
        assert_eq!(b.u_degree(), 2);
    }

    #[test]
    fn dehomogenize_roundtrip() {
        let v = var_names(&["p", "u"]);
        let b = BiPoly::from_poly(&parse_poly("6*p^4 + 15*p^3*u + 12*p^2*u^2 + 3*p*u^3", &v).unwrap())
            .unwrap();
        let f = b.dehomogenize();
        assert_eq!(f, UniPoly::from_ints(&[6, 15, 12, 3]));
        assert_eq!(BiPoly::homogenize(&f, 4).unwrap(), b);
        assert!(BiPoly::homogenize(&f, 2).is_err());
    }

    #[test]
    fn inhomogeneous_detected() {
        let b = BiPoly::from_terms([((2, 0), BigRational::one()), ((0, 1), BigRational::one())]);
        assert_eq!(b.homogeneous_degree(), None);
        assert!(!b.is_homogeneous_of_degree(2));
    }
}
