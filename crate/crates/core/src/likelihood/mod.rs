//! Square Lagrange systems whose isolated solutions are the critical points
//! of likelihood and master functions on a very affine variety, with generic
//! slicing on the variety side and on the data side, and the predicates
//! that separate genuine critical points from junk.
//!
//! The data vector ranges over the span of an anchor `u^0` and `k`
//! directions `u^1..u^k` (`k = 0` for fixed data), written
//! `u = Σ_j μ_j u^j`. Unknowns are ordered `x_1..x_n`, then the data weights
//! `μ_0..μ_k`, then the multipliers `λ_1..λ_c`. For the likelihood function
//! the critical equations are
//!
//! ```text
//! Σ_j μ_j (u^j_i - U^j x_i) - x_i Σ_k λ_k (∂_i g_k + D_k g_k - E g_k) = 0,   i = 1..n,
//! ```
//!
//! with `U^j = u^j_0 + ... + u^j_n`, `E` the Euler operator and
//! `D_k = deg g_k`, plus a generic affine chart on `(μ, λ)`. For fixed data
//! and `μ_0 = 1` they are equivalent, on the torus and on `V(g)`, to
//! `u_i/x_i - u_0/x_0 = Σ_k λ_k ∂_i g_k` (summing `x_i` times the latter
//! recovers `u_0/x_0 = U + Σ_k λ_k (D_k g_k - E g_k)`), but have one degree
//! less than the form cleared by `x_0 x_i`, and a solution with `x_i = 0`
//! forces `u_i = 0`. For the master function they are
//! `Σ_j μ_j w^j_i - x_i Σ_k λ_k ∂_i g_k = 0`.
//!
//! Every equation is linear in `(μ, λ)`. Keeping these projective matters
//! near the singular locus of `Y`, where the affine multipliers `λ_k / μ_0`
//! grow without bound and paths stall. A solution with `μ = 0` is critical
//! for no data vector: it marks dependent constraint gradients and is
//! rejected as junk.

mod model;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

pub use model::{ModelSpec, Tolerances};

use crate::error::{Error, Result};
use crate::homotopy::{track_all_multihomogeneous, CompiledSystem, Evaluate, SolutionSet, SquareSystem};
use crate::polyring::{eval_complex_with_scale, random_affine_forms, Poly, RandomSource};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    Likelihood,
    Master,
}

/// How [`add_slices`] cuts a problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SliceMode {
    /// `i` affine conditions on `x` and an `i`-dimensional affine family of
    /// data vectors.
    Bidegree,
    /// `i` affine forms added to the constraints of the variety.
    Sectional,
}

/// Why a solution of the square system is not a critical point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Valid,
    /// Some `|x_i|` is below the torus tolerance.
    OffTorus,
    /// `|x_0|` is below the torus tolerance.
    OnHyperplane,
    /// Some original generator does not vanish.
    NotOnVariety,
    /// The generator Jacobian has the wrong rank.
    SingularPoint,
    /// The data weights vanish relative to the multipliers.
    ZeroWeight,
}

/// Membership, torus and smooth-point tests on the `x` part of a solution,
/// and for critical systems the test that the data weights do not vanish.
#[derive(Clone, Debug)]
pub struct Validity {
    n: usize,
    generators: Vec<Poly>,
    jacobian: CompiledSystem,
    expected_rank: usize,
    x0: Option<Poly>,
    /// Number of data weights following `x` in a full solution vector.
    weights: Option<usize>,
    tol: Tolerances,
}

impl Validity {
    fn new(model: &ModelSpec, check_x0: bool) -> Self {
        Validity {
            n: model.n(),
            generators: model.generators().to_vec(),
            jacobian: CompiledSystem::new(model.generators(), model.n()),
            expected_rank: model.codim(),
            x0: check_x0.then(|| model.x0()),
            weights: None,
            tol: model.tolerances.clone(),
        }
    }

    fn with_weights(mut self, count: usize) -> Self {
        self.weights = Some(count);
        self
    }

    pub fn check(&self, point: &[Complex64]) -> Verdict {
        let x = &point[..self.n];
        if x.iter().any(|z| z.norm() <= self.tol.torus) {
            return Verdict::OffTorus;
        }
        if let Some(x0) = &self.x0 {
            let (v, _) = eval_complex_with_scale(x0, x).expect("length checked");
            if v.norm() <= self.tol.torus {
                return Verdict::OnHyperplane;
            }
        }
        for g in &self.generators {
            let (v, scale) = eval_complex_with_scale(g, x).expect("length checked");
            if scale > 0.0 && v.norm() / scale >= self.tol.residual {
                return Verdict::NotOnVariety;
            }
        }
        if self.rank_at(x) != self.expected_rank {
            return Verdict::SingularPoint;
        }
        if let Some(k) = self.weights {
            let sup = |v: &[Complex64]| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if sup(&point[self.n..self.n + k]) <= self.tol.weight * sup(&point[self.n..]) {
                return Verdict::ZeroWeight;
            }
        }
        Verdict::Valid
    }

    /// Numerical rank of the generator Jacobian with columns scaled by
    /// `max(1, |x_j|)` and unit rows.
    pub fn rank_at(&self, x: &[Complex64]) -> usize {
        let m = self.generators.len();
        if m == 0 {
            return 0;
        }
        let mut f = vec![Complex64::default(); m];
        let mut j = DMatrix::zeros(m, self.n);
        self.jacobian.eval_into(x, &mut f, Some(&mut j));
        for (c, xc) in x.iter().enumerate() {
            j.column_mut(c).scale_mut(xc.norm().max(1.0));
        }
        for mut row in j.row_iter_mut() {
            let nrm = row.norm();
            if nrm > 0.0 {
                row.unscale_mut(nrm);
            }
        }
        let sv = j.singular_values();
        let top = sv.iter().copied().fold(0.0, f64::max);
        sv.iter().filter(|&&s| s > self.tol.rank * top).count()
    }
}

/// A square critical-point system together with the data needed to rebuild
/// it under slicing and to filter its solutions.
#[derive(Clone, Debug)]
pub struct CriticalProblem {
    kind: ProblemKind,
    model: ModelSpec,
    constraints: Vec<Poly>,
    anchor: Vec<BigRational>,
    directions: Vec<Vec<BigRational>>,
    x_slices: Vec<Poly>,
    system: SquareSystem,
    groups: Vec<usize>,
}

/// Counts and junk classification of one solve.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveDiagnostics {
    pub paths: usize,
    pub bezout: String,
    pub nonsingular: usize,
    pub singular: usize,
    pub diverged: usize,
    pub failed: usize,
    pub duplicates: usize,
    pub off_torus: usize,
    pub on_hyperplane: usize,
    pub not_on_variety: usize,
    pub singular_point: usize,
    pub zero_weight: usize,
    pub valid: usize,
}

impl SolveDiagnostics {
    pub fn from_set(set: &SolutionSet, verdicts: &[Verdict]) -> Self {
        let count = |v: Verdict| verdicts.iter().filter(|&&w| w == v).count();
        SolveDiagnostics {
            paths: set.paths,
            bezout: set.bezout.to_string(),
            nonsingular: set.counts.nonsingular,
            singular: set.counts.singular,
            diverged: set.counts.diverged,
            failed: set.counts.failed,
            duplicates: set.duplicates,
            off_torus: count(Verdict::OffTorus),
            on_hyperplane: count(Verdict::OnHyperplane),
            not_on_variety: count(Verdict::NotOnVariety),
            singular_point: count(Verdict::SingularPoint),
            zero_weight: count(Verdict::ZeroWeight),
            valid: count(Verdict::Valid),
        }
    }
}

/// Valid nonsingular solutions of a solve and the diagnostics behind the
/// count.
#[derive(Clone, Debug)]
pub struct CountOutcome {
    pub count: usize,
    pub solutions: Vec<Vec<Complex64>>,
    pub diagnostics: SolveDiagnostics,
}

const STREAM_MIX: u64 = 1;
const STREAM_CHART: u64 = 2;

fn fresh_names(prefix: &str, first: usize, count: usize, taken: &[String]) -> Vec<String> {
    let mut p = prefix.to_string();
    loop {
        let names: Vec<String> = (first..first + count).map(|k| format!("{p}{k}")).collect();
        if names.iter().all(|n| !taken.contains(n)) {
            return names;
        }
        p.insert(0, '_');
    }
}

/// The `c = codim` constraints of a model: its affine tail as is, preceded
/// by generic rational combinations of the remaining generators (the
/// generators themselves when there are exactly enough).
fn constraints(model: &ModelSpec) -> Vec<Poly> {
    let tail = model.affine_tail();
    let gens = model.generators();
    let (head, affine) = gens.split_at(gens.len() - tail);
    let want = model.codim() - tail;
    let mut out: Vec<Poly> = if head.len() == want {
        head.to_vec()
    } else {
        let mut d = model.rng().split(STREAM_MIX).draws();
        (0..want)
            .map(|_| {
                head.iter()
                    .fold(Poly::zero(model.variables()), |acc, g| acc + g.scale(&d.nonzero_rational()))
            })
            .collect()
    };
    out.extend(affine.iter().cloned());
    out
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl CriticalProblem {
    fn assemble(
        kind: ProblemKind,
        model: &ModelSpec,
        anchor: Vec<BigRational>,
        directions: Vec<Vec<BigRational>>,
        x_slices: Vec<Poly>,
    ) -> Result<Self> {
        let n = model.n();
        let data_len = match kind {
            ProblemKind::Likelihood => n + 1,
            ProblemKind::Master => n,
        };
        if anchor.len() != data_len {
            return Err(Error::DimensionMismatch { expected: data_len, got: anchor.len() });
        }
        if directions.iter().any(|d| d.len() != data_len) {
            return Err(Error::InvalidInput("data direction of wrong length".into()));
        }
        if x_slices.len() != directions.len() {
            return Err(Error::InvalidInput(format!(
                "{} x-slices but {} data directions",
                x_slices.len(),
                directions.len()
            )));
        }
        let cons = constraints(model);
        let c = cons.len();
        let k = directions.len();
        let xv = model.variables();
        let weights = fresh_names("m", 0, k + 1, xv);
        let mut taken = xv.to_vec();
        taken.extend(weights.iter().cloned());
        let lambdas = fresh_names("l", 1, c, &taken);
        let mut vars = xv.to_vec();
        vars.extend(weights);
        vars.extend(lambdas);

        let mu: Vec<Poly> = (0..=k).map(|j| Poly::var_at(&vars, n + j)).collect();
        let lam: Vec<Poly> = (0..c).map(|i| Poly::var_at(&vars, n + k + 1 + i)).collect();
        let spanning: Vec<&Vec<BigRational>> = std::iter::once(&anchor).chain(&directions).collect();
        // data coordinate j as a linear form in the weights
        let data: Vec<Poly> = (0..data_len)
            .map(|j| {
                spanning.iter().zip(&mu).fold(Poly::zero(&vars), |acc, (v, m)| acc + m.scale(&v[j]))
            })
            .collect();
        let cons_full: Vec<Poly> = cons.iter().map(|g| g.embed(&vars)).collect::<Result<_>>()?;
        // per constraint: the factor multiplying x_i λ_k in equation i
        let hom: Vec<Option<Poly>> = cons
            .iter()
            .map(|g| match kind {
                ProblemKind::Likelihood => {
                    let dk = q(g.total_degree() as i64);
                    Some(g.scale(&dk) - g.euler())
                }
                ProblemKind::Master => None,
            })
            .collect();

        let mut equations = Vec::with_capacity(vars.len());
        let total = data.iter().fold(Poly::zero(&vars), |acc, p| &acc + p);
        for i in 0..n {
            let xi = Poly::var_at(&vars, i);
            let mut e = match kind {
                ProblemKind::Likelihood => &data[i + 1] - &(&total * &xi),
                ProblemKind::Master => data[i].clone(),
            };
            let mut sum = Poly::zero(&vars);
            for (kk, g) in cons.iter().enumerate() {
                let mut factor = g.differentiate_at(i);
                if let Some(h) = &hom[kk] {
                    factor = factor + h.clone();
                }
                sum = sum + &lam[kk] * &factor.embed(&vars)?;
            }
            e = e - &xi * &sum;
            equations.push(e);
        }
        equations.extend(cons_full);
        for f in &x_slices {
            equations.push(f.embed(&vars)?);
        }
        let mut d = model.rng().split(STREAM_CHART).draws();
        let chart = (n..vars.len()).fold(Poly::constant(&vars, -q(1)), |acc, v| {
            acc + Poly::var_at(&vars, v).scale(&d.nonzero_rational())
        });
        equations.push(chart);
        let groups: Vec<usize> = (0..vars.len()).map(|v| usize::from(v >= n)).collect();
        let system = SquareSystem::new(equations, vars)?;
        Ok(CriticalProblem { kind, model: model.clone(), constraints: cons, anchor, directions, x_slices, system, groups })
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn model(&self) -> &ModelSpec {
        &self.model
    }

    pub fn system(&self) -> &SquareSystem {
        &self.system
    }

    /// Variable groups (`x` versus multipliers and data parameters) used by
    /// the linear-product start system.
    pub fn groups(&self) -> &[usize] {
        &self.groups
    }

    /// Number of constraint multipliers `λ_1..λ_c` (the data weights
    /// `μ_j` are not counted).
    pub fn num_multipliers(&self) -> usize {
        self.constraints.len()
    }

    pub fn constraints(&self) -> &[Poly] {
        &self.constraints
    }

    pub fn x_slices(&self) -> &[Poly] {
        &self.x_slices
    }

    pub fn data_dim(&self) -> usize {
        self.directions.len()
    }

    pub fn validity(&self) -> Validity {
        Validity::new(&self.model, self.kind == ProblemKind::Likelihood).with_weights(self.directions.len() + 1)
    }

    /// Solves the system and counts valid nonsingular solutions.
    pub fn count(&self, rng: RandomSource) -> Result<CountOutcome> {
        let set = track_all_multihomogeneous(&self.system, &self.groups, &self.model.tolerances.tracker, rng)?;
        let validity = self.validity();
        let verdicts: Vec<Verdict> = set.nonsingular().map(|s| validity.check(&s.point)).collect();
        let solutions: Vec<Vec<Complex64>> = set
            .nonsingular()
            .zip(&verdicts)
            .filter(|(_, &v)| v == Verdict::Valid)
            .map(|(s, _)| s.point.clone())
            .collect();
        Ok(CountOutcome { count: solutions.len(), solutions, diagnostics: SolveDiagnostics::from_set(&set, &verdicts) })
    }
}

/// Critical points of `ℓ_u = x_0^{u_0} x_1^{u_1} ... x_n^{u_n}` on the model;
/// `u` has length `n + 1` and should be generic.
pub fn build_likelihood_critical(model: &ModelSpec, u: &[BigRational]) -> Result<CriticalProblem> {
    CriticalProblem::assemble(ProblemKind::Likelihood, model, u.to_vec(), Vec::new(), Vec::new())
}

/// Critical points of the master function `x_1^{w_1} ... x_n^{w_n}` on the
/// model; `w` has length `n`.
pub fn build_master_critical(model: &ModelSpec, w: &[BigRational]) -> Result<CriticalProblem> {
    CriticalProblem::assemble(ProblemKind::Master, model, w.to_vec(), Vec::new(), Vec::new())
}

/// Slices an unsliced problem.
///
/// [`SliceMode::Bidegree`] adds `x_codim` generic affine conditions on `x`
/// and lets the data vary over a generic `data_dim`-dimensional affine
/// subspace through the current data vector, the `data_dim` parameters
/// becoming unknowns; squareness requires `x_codim == data_dim`.
/// [`SliceMode::Sectional`] intersects the variety with `x_codim` generic
/// affine hyperplanes, with fixed data (`data_dim == 0`).
pub fn add_slices(
    problem: &CriticalProblem,
    mode: SliceMode,
    x_codim: usize,
    data_dim: usize,
    rng: RandomSource,
) -> Result<CriticalProblem> {
    if !problem.x_slices.is_empty() || problem.model.affine_tail() > 0 {
        return Err(Error::InvalidInput("problem is already sliced".into()));
    }
    let model = &problem.model;
    if x_codim > model.dim() {
        return Err(Error::InvalidInput(format!("x_codim = {x_codim} exceeds dim = {}", model.dim())));
    }
    let vars = model.variables();
    match mode {
        SliceMode::Bidegree => {
            if x_codim != data_dim {
                return Err(Error::InvalidInput(format!(
                    "bidegree slicing needs x_codim = data_dim, got {x_codim} and {data_dim}"
                )));
            }
            let max = problem.anchor.len();
            if data_dim > max {
                return Err(Error::InvalidInput(format!("data_dim = {data_dim} exceeds {max}")));
            }
            let forms = random_affine_forms(vars, x_codim, rng.split(0));
            let mut d = rng.split(1).draws();
            let directions = (0..data_dim).map(|_| d.rationals(max)).collect();
            CriticalProblem::assemble(problem.kind, model, problem.anchor.clone(), directions, forms)
        }
        SliceMode::Sectional => {
            if data_dim != 0 {
                return Err(Error::InvalidInput("sectional slicing keeps the data fixed".into()));
            }
            let forms = random_affine_forms(vars, x_codim, rng.split(0));
            let cut = model.section(forms)?;
            CriticalProblem::assemble(problem.kind, &cut, problem.anchor.clone(), Vec::new(), Vec::new())
        }
    }
}

/// Points of `Y` cut by `dim` generic affine forms: the square system in
/// `x` alone whose valid solutions count `deg Y`.
pub fn degree_system(model: &ModelSpec, rng: RandomSource) -> Result<(SquareSystem, Validity)> {
    let forms = random_affine_forms(model.variables(), model.dim(), rng);
    let cut = model.section(forms)?;
    let eqs = constraints(&cut);
    let system = SquareSystem::new(eqs, model.variables().to_vec())?;
    Ok((system, Validity::new(model, false)))
}

/// `count` generic rational data entries.
pub fn generic_data(count: usize, rng: RandomSource) -> Vec<BigRational> {
    let mut d = rng.draws();
    (0..count).map(|_| d.nonzero_rational()).collect()
}

/// Whether a rational vector has a zero entry (a data vector is then not
/// generic).
pub fn has_zero(v: &[BigRational]) -> bool {
    v.iter().any(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn qs(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn torus_line_closed_form() {
        let m = ModelSpec::parse::<&str>(&["x1"], &[], 1).unwrap();
        let p = build_likelihood_critical(&m, &qs(&[2, 3])).unwrap();
        // μ0 (u1 - (u0 + u1) x1)
        assert_eq!(p.system().polys()[0].to_canonical_string(), "-5*x1*m0 + 3*m0");
        let out = p.count(RandomSource::new(0, 0)).unwrap();
        assert_eq!(out.count, 1);
        assert!((out.solutions[0][0] - Complex64::new(0.6, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn equations_match_cleared_form_on_variety() {
        // u_i x_0 - u_0 x_i - x_0 x_i Σ λ ∂_i g vanishes at the computed critical points
        let m = ModelSpec::parse(&["x1", "x2", "x3"], &["(1-x1-x2-x3)*x3 - x1*x2"], 2).unwrap();
        let u = qs(&[3, 5, 7, 11]);
        let p = build_likelihood_critical(&m, &u).unwrap();
        assert_eq!(p.system().size(), 5);
        let out = p.count(RandomSource::new(1, 0)).unwrap();
        assert_eq!(out.count, 1);
        let z = &out.solutions[0];
        let g = &m.generators()[0];
        let x0 = Complex64::new(1.0, 0.0) - z[0] - z[1] - z[2];
        for i in 0..3 {
            let (dg, _) = eval_complex_with_scale(&g.differentiate_at(i), &z[..3]).unwrap();
            let ui = Complex64::new(u[i + 1].to_string().parse().unwrap(), 0.0);
            let u0 = Complex64::new(u[0].to_string().parse().unwrap(), 0.0);
            let r = ui * x0 - u0 * z[i] - x0 * z[i] * (z[4] / z[3]) * dg;
            assert!(r.norm() < 1e-10, "{r}");
        }
        // the MLE of the independence model [[x0, x1], [x2, x3]] is the
        // product of the margins
        let (row, col) = ((3.0 + 5.0) / 26.0, (5.0 + 11.0) / 26.0);
        assert!((z[0] - Complex64::new(row * col, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn vanishing_weights_are_junk() {
        let m = ModelSpec::parse(&["x1", "x2", "x3"], &["(1-x1-x2-x3)*x3 - x1*x2"], 2).unwrap();
        let v = build_likelihood_critical(&m, &qs(&[3, 5, 7, 11])).unwrap().validity();
        let point = |mu: f64| [0.25, 0.25, 0.25, mu, 1.0].map(|t| Complex64::new(t, 0.0));
        assert_eq!(v.check(&point(1e-6)), Verdict::Valid);
        assert_eq!(v.check(&point(1e-14)), Verdict::ZeroWeight);
    }

    #[test]
    fn master_torus_and_point() {
        let m = ModelSpec::parse::<&str>(&["x1", "x2"], &[], 2).unwrap();
        let p = build_master_critical(&m, &qs(&[2, 3])).unwrap();
        assert_eq!(p.count(RandomSource::new(0, 0)).unwrap().count, 0);
        let m = ModelSpec::parse(&["x1", "x2"], &["x1 - 2", "x2 + 3"], 0).unwrap();
        let p = build_master_critical(&m, &qs(&[5, -7])).unwrap();
        assert_eq!(p.count(RandomSource::new(0, 0)).unwrap().count, 1);
        let m = ModelSpec::parse(&["x1", "x2"], &["x1 + x2 - 1"], 1).unwrap();
        let p = build_master_critical(&m, &qs(&[5, -7])).unwrap();
        let out = p.count(RandomSource::new(0, 0)).unwrap();
        assert_eq!(out.count, 1);
        // w1/x1 = w2/x2 on the line: x1 = w1/(w1+w2)
        assert!((out.solutions[0][0] - Complex64::new(5.0 / -2.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn squareness_and_slice_errors() {
        let m = ModelSpec::parse(&["x1", "x2", "x3"], &["(1-x1-x2-x3)*x3 - x1*x2"], 2).unwrap();
        let p = build_likelihood_critical(&m, &qs(&[3, 5, 7, 11])).unwrap();
        let r = RandomSource::new(0, 0);
        for i in 0..=2 {
            let b = add_slices(&p, SliceMode::Bidegree, i, i, r).unwrap();
            assert_eq!(b.system().size(), 5 + i);
            assert_eq!(b.data_dim(), i);
            let s = add_slices(&p, SliceMode::Sectional, i, 0, r).unwrap();
            assert_eq!(s.system().size(), 5 + i);
            assert_eq!(s.num_multipliers(), 1 + i);
        }
        assert!(add_slices(&p, SliceMode::Bidegree, 1, 2, r).is_err());
        assert!(add_slices(&p, SliceMode::Bidegree, 3, 3, r).is_err());
        assert!(add_slices(&p, SliceMode::Sectional, 1, 1, r).is_err());
        let b = add_slices(&p, SliceMode::Bidegree, 0, 0, r).unwrap();
        assert_eq!(b.system().polys(), p.system().polys());
        assert!(build_likelihood_critical(&m, &qs(&[1, 2, 3])).is_err());
    }

    #[test]
    fn randomization_only_when_overdetermined() {
        let m = ModelSpec::parse(&["a", "b"], &["a - 1", "b - 2", "a + b - 3"], 0).unwrap();
        let p = build_master_critical(&m, &qs(&[1, 1])).unwrap();
        assert_eq!(p.num_multipliers(), 2);
        assert_ne!(p.constraints()[0], m.generators()[0]);
        let m = ModelSpec::parse(&["a", "b"], &["a - 1", "b - 2"], 0).unwrap();
        let p = build_master_critical(&m, &qs(&[1, 1])).unwrap();
        assert_eq!(p.constraints(), m.generators());
        let _ = parse_poly("a", m.variables()).unwrap();
    }

    #[test]
    fn degree_of_a_conic() {
        let m = ModelSpec::parse(&["x", "y"], &["x^2 + 3*y^2 - 5"], 1).unwrap();
        let (s, v) = degree_system(&m, RandomSource::new(2, 0)).unwrap();
        let set = crate::homotopy::track_all(&s, &m.tolerances.tracker, RandomSource::new(2, 1)).unwrap();
        let valid = set.nonsingular().filter(|sol| v.check(&sol.point) == Verdict::Valid).count();
        assert_eq!(valid, 2);
    }
}
