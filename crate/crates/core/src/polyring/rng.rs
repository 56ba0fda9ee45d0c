use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::Poly;

/// Numerators of generic rationals are drawn uniformly from `[-NUMERATOR_MAX, NUMERATOR_MAX]`.
pub const NUMERATOR_MAX: i64 = 1_000_000;
/// Denominators of generic rationals are drawn uniformly from `[1, DENOMINATOR_MAX]`.
pub const DENOMINATOR_MAX: i64 = 1_000;

/// A reproducible source of "generic" choices, identified by a seed and a
/// stream id. Two sources with equal `(seed, stream)` produce identical draw
/// sequences on every platform (ChaCha20 keyed from the seed, with the
/// stream id selecting the ChaCha stream).
///
/// Consumers never share a generator: they [`split`](Self::split) off their
/// own stream and draw from a private [`Draws`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RandomSource {
    pub seed: u64,
    pub stream: u64,
}

impl RandomSource {
    pub fn new(seed: u64, stream: u64) -> Self {
        RandomSource { seed, stream }
    }

    /// A child source whose stream id is a deterministic mix of this
    /// stream id and `label`.
    pub fn split(&self, label: u64) -> Self {
        RandomSource { seed: self.seed, stream: splitmix(self.stream ^ splitmix(label.wrapping_add(1))) }
    }

    pub fn draws(&self) -> Draws {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        Draws { rng }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A private draw sequence obtained from a [`RandomSource`].
pub struct Draws {
    rng: ChaCha20Rng,
}

impl Draws {
    /// Random rational `p/q` with `p` in `[-NUMERATOR_MAX, NUMERATOR_MAX]`
    /// and `q` in `[1, DENOMINATOR_MAX]`.
    pub fn rational(&mut self) -> BigRational {
        let p = self.rng.gen_range(-NUMERATOR_MAX..=NUMERATOR_MAX);
        let q = self.rng.gen_range(1..=DENOMINATOR_MAX);
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    /// As [`rational`](Self::rational), redrawing zero.
    pub fn nonzero_rational(&mut self) -> BigRational {
        loop {
            let r = self.rational();
            if r != BigRational::from_integer(0.into()) {
                return r;
            }
        }
    }

    pub fn rationals(&mut self, n: usize) -> Vec<BigRational> {
        (0..n).map(|_| self.rational()).collect()
    }

    pub fn unit_complex(&mut self) -> Complex64 {
        let theta = self.rng.gen_range(0.0..std::f64::consts::TAU);
        Complex64::from_polar(1.0, theta)
    }

    /// Complex number with real and imaginary parts uniform in `[-1, 1]`,
    /// rejecting tiny moduli.
    pub fn complex(&mut self) -> Complex64 {
        loop {
            let z = Complex64::new(self.rng.gen_range(-1.0..1.0), self.rng.gen_range(-1.0..1.0));
            if z.norm() > 1e-3 {
                return z;
            }
        }
    }

    /// Integer uniform in `[lo, hi]`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn u64(&mut self) -> u64 {
        self.rng.gen()
    }
}

/// `count` affine forms `c0 + sum_i c_i x_i` over `variables` with exact
/// random rational coefficients.
pub fn random_affine_forms(variables: &[String], count: usize, rng: RandomSource) -> Vec<Poly> {
    let mut d = rng.draws();
    (0..count)
        .map(|_| {
            let c0 = d.rational();
            let cs = d.rationals(variables.len());
            Poly::affine(variables, c0, &cs)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::var_names;
    use nalgebra::DMatrix;
    use num_traits::ToPrimitive;

    #[test]
    fn zero_forms() {
        assert!(random_affine_forms(&var_names(&["x"]), 0, RandomSource::new(1, 0)).is_empty());
    }

    #[test]
    fn same_source_same_draws() {
        let v = var_names(&["x1", "x2", "x3"]);
        let a = random_affine_forms(&v, 2, RandomSource::new(42, 7));
        let b = random_affine_forms(&v, 2, RandomSource::new(42, 7));
        assert_eq!(a, b);
        let c = random_affine_forms(&v, 2, RandomSource::new(42, 8));
        assert_ne!(a, c);
    }

    #[test]
    fn split_streams_differ() {
        let s = RandomSource::new(3, 0);
        assert_ne!(s.split(0), s.split(1));
        assert_eq!(s.split(5), s.split(5));
        assert_eq!(s.split(5).seed, 3);
    }

    #[test]
    fn n_plus_one_forms_have_full_rank_linear_part() {
        for seed in 0..20 {
            let n = 4;
            let v: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            let forms = random_affine_forms(&v, n + 1, RandomSource::new(seed, 0));
            let m = DMatrix::from_fn(n + 1, n, |r, c| {
                let mut e = vec![0; n];
                e[c] = 1;
                forms[r].coefficient(&e).to_f64().unwrap()
            });
            assert_eq!(m.rank(1e-9 * m.norm()), n);
        }
    }

    #[test]
    fn draws_within_documented_range() {
        let mut d = RandomSource::new(9, 9).draws();
        for _ in 0..1000 {
            let r = d.rational();
            assert!(r.denom() >= &BigInt::from(1) && r.denom() <= &BigInt::from(DENOMINATOR_MAX));
            assert!(r.numer().magnitude() <= &num_bigint::BigUint::from(NUMERATOR_MAX as u64));
        }
    }
}
