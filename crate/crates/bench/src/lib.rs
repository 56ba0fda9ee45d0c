//! Inputs shared by the benchmarks.

use mlinv_core::likelihood::ModelSpec;
use mlinv_core::polyring::Draws;
use mlinv_core::{Poly, RandomSource};

/// The 2 x 2 independence model in the 3-torus.
pub fn independence_2x2() -> ModelSpec {
    ModelSpec::parse(&["x1", "x2", "x3"], &["(1 - x1 - x2 - x3)*x3 - x1*x2"], 2).expect("valid model")
}

/// Dense polynomial of total degree `deg` with generic rational coefficients.
pub fn dense(vars: &[String], deg: u32, d: &mut Draws) -> Poly {
    let n = vars.len() as u32;
    let terms = (0..(deg + 1).pow(n)).filter_map(|code| {
        let e: Vec<u32> = (0..n).map(|i| code / (deg + 1).pow(i) % (deg + 1)).collect();
        (e.iter().sum::<u32>() <= deg).then(|| (e, d.nonzero_rational()))
    });
    Poly::from_terms(vars, terms.collect::<Vec<_>>())
}

/// Square system of dense polynomials with the given degrees.
pub fn dense_system(degs: &[u32], seed: u64) -> Vec<Poly> {
    let vars: Vec<String> = (1..=degs.len()).map(|i| format!("x{i}")).collect();
    let mut d = RandomSource::new(seed, 0).draws();
    degs.iter().map(|&g| dense(&vars, g, &mut d)).collect()
}
