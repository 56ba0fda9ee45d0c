//! Compensated complex evaluation.
//!
//! Every monomial is formed and accumulated in double-double arithmetic
//! (error-free `TwoSum`/`TwoProd` via fused multiply-add), and only the final
//! sum is rounded to `f64`. For a polynomial of total degree `D` evaluated at
//! a floating point `z`, the computed value `v` satisfies
//!
//! ```text
//! |v - p(z)| <= u * |p(z)| + 4 * (D + 2) * u^2 * sum_t |c_t| |z^a_t|
//! ```
//!
//! with `u = 2^-53`, where coefficients are first rounded to double-double.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default)]
struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn from_rational(c: &BigRational) -> Self {
        let hi = c.to_f64().unwrap_or(f64::NAN);
        let lo = BigRational::from_float(hi)
            .map(|h| (c - h).to_f64().unwrap_or(0.0))
            .unwrap_or(0.0);
        quick_two_sum(hi, lo)
    }

    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        quick_two_sum(s, e + self.lo + b.lo)
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        quick_two_sum(p, e + self.hi * b.lo + self.lo * b.hi)
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct DdComplex {
    re: Dd,
    im: Dd,
}

impl DdComplex {
    fn mul(self, b: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.mul(b.re).add(self.im.mul(b.im).neg()),
            im: self.re.mul(b.im).add(self.im.mul(b.re)),
        }
    }

    fn add(self, b: DdComplex) -> DdComplex {
        DdComplex { re: self.re.add(b.re), im: self.im.add(b.im) }
    }

    fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.hi + self.re.lo, self.im.hi + self.im.lo)
    }
}

/// Evaluates `p` at a complex point.
pub fn eval_complex(p: &Poly, point: &[Complex64]) -> Result<Complex64> {
    eval_complex_with_scale(p, point).map(|(v, _)| v)
}

/// Evaluates `p` and also returns `sum_t |c_t| |z^a_t|`, the natural scale
/// against which the value's rounding error (and a relative residual) is
/// measured.
pub fn eval_complex_with_scale(p: &Poly, point: &[Complex64]) -> Result<(Complex64, f64)> {
    if point.len() != p.nvars() {
        return Err(Error::DimensionMismatch { expected: p.nvars(), got: point.len() });
    }
    let z: Vec<DdComplex> = point
        .iter()
        .map(|c| DdComplex { re: Dd::from_f64(c.re), im: Dd::from_f64(c.im) })
        .collect();
    let mut acc = DdComplex::default();
    let mut scale = 0.0;
    for (m, c) in p.terms() {
        let mut t = DdComplex { re: Dd::from_rational(c), im: Dd::default() };
        for (zi, &e) in z.iter().zip(m.exponents()) {
            for _ in 0..e {
                t = t.mul(*zi);
            }
        }
        scale += t.to_c64().norm();
        acc = acc.add(t);
    }
    Ok((acc.to_c64(), scale))
}
