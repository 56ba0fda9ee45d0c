//! Maximum-likelihood degrees, ML bidegrees, sectional ML degrees and
//! Chern–Mather coefficients of very affine varieties.
//!
//! The crate is organised bottom-up:
//!
//! * [`polyring`] exact sparse polynomials, the text grammar, seeded
//!   generic choices;
//! * [`homotopy`] a total-degree (or linear-product) homotopy solver for
//!   square systems over the complex numbers;
//! * [`likelihood`] square Lagrange systems for likelihood and master
//!   functions, with slicing and junk filters;
//! * [`degrees`] the counting protocol and the degree vectors built on it;
//! * [`involution`] exact transforms between bidegree and sectional
//!   polynomials.

pub mod degrees;
pub mod error;
pub mod homotopy;
pub mod involution;
pub mod likelihood;
pub mod polyring;

pub use error::{Error, Result};
pub use polyring::{parse_poly, BiPoly, Poly, RandomSource, UniPoly};
