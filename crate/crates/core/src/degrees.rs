//! Degree vectors of a model, each count obtained by solving a sliced
//! critical-point system under several independent seeds and accepted only
//! when all seeds agree.

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homotopy::track_all;
use crate::involution::{cross_check, InvolutionReport};
use crate::likelihood::{
    add_slices, build_likelihood_critical, build_master_critical, degree_system, generic_data, CountOutcome,
    ModelSpec, SliceMode, SolveDiagnostics, Verdict,
};
use crate::polyring::{BiPoly, RandomSource};

/// Default number of seeds in the agreement protocol.
pub const DEFAULT_AGREEMENT: usize = 3;

/// One count under every seed of the agreement protocol.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRecord {
    pub what: String,
    pub seeds: Vec<u64>,
    pub counts: Vec<usize>,
    pub agreed: bool,
    pub diagnostics: Vec<SolveDiagnostics>,
}

impl CountRecord {
    pub fn value(&self) -> Option<usize> {
        self.agreed.then(|| self.counts[0])
    }

    fn require(&self) -> Result<usize> {
        self.value()
            .ok_or_else(|| Error::SeedDisagreement { what: self.what.clone(), counts: self.counts.clone() })
    }
}

/// Seeds `base, base + 1, ...` used by the agreement protocol.
pub fn agreement_seeds(base: u64, agreement: usize) -> Vec<u64> {
    (0..agreement as u64).map(|j| base.wrapping_add(j)).collect()
}

#[derive(Clone, Copy)]
enum Quantity {
    Bidegree,
    Sectional,
    Master,
    Degree,
}

impl Quantity {
    fn label(self, i: usize) -> String {
        match self {
            Quantity::Bidegree => format!("b{i}"),
            Quantity::Sectional => format!("s{i}"),
            Quantity::Master => format!("v{i}"),
            Quantity::Degree => "deg".into(),
        }
    }

    fn stream(self, i: usize) -> u64 {
        let tag = match self {
            Quantity::Bidegree => 1,
            Quantity::Sectional => 2,
            Quantity::Master => 3,
            Quantity::Degree => 4,
        };
        (tag << 32) | i as u64
    }
}

const DATA: u64 = 0;
const SLICE: u64 = 1;
const TRACK: u64 = 2;

fn count_once(model: &ModelSpec, what: Quantity, i: usize) -> Result<CountOutcome> {
    let rng = RandomSource::new(model.seed, 0).split(what.stream(i));
    let n = model.n();
    match what {
        Quantity::Bidegree | Quantity::Sectional => {
            let u = generic_data(n + 1, rng.split(DATA));
            let base = build_likelihood_critical(model, &u)?;
            let problem = match what {
                Quantity::Bidegree => add_slices(&base, SliceMode::Bidegree, i, i, rng.split(SLICE))?,
                _ => add_slices(&base, SliceMode::Sectional, i, 0, rng.split(SLICE))?,
            };
            problem.count(rng.split(TRACK))
        }
        Quantity::Master => {
            let w = generic_data(n, rng.split(DATA));
            let base = build_master_critical(model, &w)?;
            add_slices(&base, SliceMode::Bidegree, i, i, rng.split(SLICE))?.count(rng.split(TRACK))
        }
        Quantity::Degree => {
            let (system, validity) = degree_system(model, rng.split(SLICE))?;
            let set = track_all(&system, &model.tolerances.tracker, rng.split(TRACK))?;
            let verdicts: Vec<Verdict> = set.nonsingular().map(|s| validity.check(&s.point)).collect();
            let solutions: Vec<_> = set
                .nonsingular()
                .zip(&verdicts)
                .filter(|(_, &v)| v == Verdict::Valid)
                .map(|(s, _)| s.point.clone())
                .collect();
            Ok(CountOutcome {
                count: solutions.len(),
                solutions,
                diagnostics: SolveDiagnostics::from_set(&set, &verdicts),
            })
        }
    }
}

fn record(model: &ModelSpec, what: Quantity, i: usize, agreement: usize) -> Result<CountRecord> {
    if agreement == 0 {
        return Err(Error::InvalidInput("agreement needs at least one seed".into()));
    }
    let seeds = agreement_seeds(model.seed, agreement);
    let mut counts = Vec::with_capacity(agreement);
    let mut diagnostics = Vec::with_capacity(agreement);
    for &seed in &seeds {
        let out = count_once(&model.clone().with_seed(seed), what, i)?;
        counts.push(out.count);
        diagnostics.push(out.diagnostics);
    }
    let agreed = counts.iter().all(|&c| c == counts[0]);
    Ok(CountRecord { what: what.label(i), seeds, counts, agreed, diagnostics })
}

fn records(model: &ModelSpec, what: Quantity, agreement: usize) -> Result<Vec<CountRecord>> {
    (0..=model.dim()).map(|i| record(model, what, i, agreement)).collect()
}

fn values(records: &[CountRecord]) -> Result<Vec<usize>> {
    records.iter().map(CountRecord::require).collect()
}

/// Per-index records of the ML bidegrees `b_0..b_d`.
pub fn bidegree_records(model: &ModelSpec, agreement: usize) -> Result<Vec<CountRecord>> {
    records(model, Quantity::Bidegree, agreement)
}

/// Per-index records of the sectional ML degrees `s_0..s_d`.
pub fn sectional_records(model: &ModelSpec, agreement: usize) -> Result<Vec<CountRecord>> {
    records(model, Quantity::Sectional, agreement)
}

/// Per-index records of the master-function bidegrees `v_0..v_d`.
pub fn master_records(model: &ModelSpec, agreement: usize) -> Result<Vec<CountRecord>> {
    records(model, Quantity::Master, agreement)
}

/// Record of `deg Y`: points of `Y` on `d` generic affine hyperplanes.
pub fn degree_record(model: &ModelSpec, agreement: usize) -> Result<CountRecord> {
    record(model, Quantity::Degree, 0, agreement)
}

/// Number of critical points of a generic likelihood function on the
/// smooth part of `Y` off the hyperplane `x_0 = 0`.
pub fn ml_degree(model: &ModelSpec, agreement: usize) -> Result<usize> {
    ml_degree_record(model, agreement)?.require()
}

/// Record of the ML degree `b_0`.
pub fn ml_degree_record(model: &ModelSpec, agreement: usize) -> Result<CountRecord> {
    record(model, Quantity::Bidegree, 0, agreement)
}

pub fn ml_bidegrees(model: &ModelSpec, agreement: usize) -> Result<Vec<usize>> {
    values(&bidegree_records(model, agreement)?)
}

pub fn sectional_ml_degrees(model: &ModelSpec, agreement: usize) -> Result<Vec<usize>> {
    values(&sectional_records(model, agreement)?)
}

pub fn degree_of_y(model: &ModelSpec, agreement: usize) -> Result<usize> {
    degree_record(model, agreement)?.require()
}

/// Master-function bidegrees and the Chern–Mather coefficients derived from
/// them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MasterReport {
    pub n: usize,
    pub d: usize,
    pub v: Vec<usize>,
    /// Coefficient of `[P^i]`, `i = 0..d`.
    #[serde(rename = "cMa")]
    pub c_ma: Vec<i64>,
}

impl MasterReport {
    pub fn new(n: usize, d: usize, v: Vec<usize>) -> Result<Self> {
        if v.len() != d + 1 {
            return Err(Error::DimensionMismatch { expected: d + 1, got: v.len() });
        }
        let c_ma = chern_mather_from_v(&v, d);
        Ok(MasterReport { n, d, v, c_ma })
    }
}

/// `cMa[i] = (-1)^(d-i) v[i]`.
pub fn chern_mather_from_v(v: &[usize], d: usize) -> Vec<i64> {
    v.iter()
        .enumerate()
        .map(|(i, &vi)| if (d - i).is_multiple_of(2) { vi as i64 } else { -(vi as i64) })
        .collect()
}

pub fn master_bidegrees(model: &ModelSpec, agreement: usize) -> Result<MasterReport> {
    let v = values(&master_records(model, agreement)?)?;
    MasterReport::new(model.n(), model.dim(), v)
}

fn assemble(coeffs: &[usize], n: usize, d: usize) -> Result<BiPoly> {
    if coeffs.len() != d + 1 {
        return Err(Error::DimensionMismatch { expected: d + 1, got: coeffs.len() });
    }
    if d > n {
        return Err(Error::InvalidInput(format!("d = {d} exceeds n = {n}")));
    }
    Ok(BiPoly::from_terms(
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (((n - i) as u32, i as u32), BigRational::from_integer(c.into()))),
    ))
}

/// `B = (Σ b_i p^(d-i) u^i) p^(n-d)`.
pub fn assemble_b(b: &[usize], n: usize, d: usize) -> Result<BiPoly> {
    assemble(b, n, d)
}

/// `S = (Σ s_i p^(d-i) u^i) p^(n-d)`.
pub fn assemble_s(s: &[usize], n: usize, d: usize) -> Result<BiPoly> {
    assemble(s, n, d)
}

/// Everything `check` computes. Vectors are `None` when some entry failed
/// the agreement protocol.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub n: usize,
    pub d: usize,
    pub b: Option<Vec<usize>>,
    pub s: Option<Vec<usize>>,
    pub degree: Option<usize>,
    #[serde(rename = "B")]
    pub big_b: Option<BiPoly>,
    #[serde(rename = "S")]
    pub big_s: Option<BiPoly>,
    pub seeds: Vec<u64>,
    pub records: Vec<CountRecord>,
}

impl DegreeReport {
    pub fn agreed(&self) -> bool {
        self.records.iter().all(|r| r.agreed)
    }
}

/// Outcome of the end-to-end consistency check of a model.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub degrees: DegreeReport,
    pub involution: Option<InvolutionReport>,
    pub b0_equals_s0: Option<bool>,
    /// `s_d` equals `deg Y` and `deg Y > 0`.
    pub sd_equals_degree: Option<bool>,
    pub passed: bool,
}

/// Computes `b`, `s` and `deg Y`, assembles `B` and `S` and checks the
/// transforms between them in both directions.
pub fn check_model(model: &ModelSpec, agreement: usize) -> Result<CheckReport> {
    let (n, d) = (model.n(), model.dim());
    let b_rec = bidegree_records(model, agreement)?;
    let s_rec = sectional_records(model, agreement)?;
    let deg_rec = degree_record(model, agreement)?;
    let b = values(&b_rec).ok();
    let s = values(&s_rec).ok();
    let degree = deg_rec.value();
    let big_b = b.as_ref().map(|b| assemble_b(b, n, d)).transpose()?;
    let big_s = s.as_ref().map(|s| assemble_s(s, n, d)).transpose()?;
    let involution = match (&big_b, &big_s) {
        (Some(bb), Some(ss)) => Some(cross_check(bb, ss, n as u32, d as u32)),
        _ => None,
    };
    let b0_equals_s0 = b.as_ref().zip(s.as_ref()).map(|(b, s)| b[0] == s[0]);
    let sd_equals_degree = s.as_ref().zip(degree).map(|(s, deg)| deg > 0 && s[d] == deg);
    let passed = involution.as_ref().is_some_and(InvolutionReport::passed)
        && b0_equals_s0 == Some(true)
        && sd_equals_degree == Some(true);
    let mut records = b_rec;
    records.extend(s_rec);
    records.push(deg_rec);
    let degrees = DegreeReport {
        n,
        d,
        b,
        s,
        degree,
        big_b,
        big_s,
        seeds: agreement_seeds(model.seed, agreement),
        records,
    };
    Ok(CheckReport { degrees, involution, b0_equals_s0, sd_equals_degree, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assemble_examples() {
        assert_eq!(assemble_b(&[1, 2, 2], 3, 2).unwrap().to_string(), "p^3 + 2*p^2*u + 2*p*u^2");
        assert_eq!(assemble_b(&[1], 0, 0).unwrap().to_string(), "1");
        assert_eq!(
            assemble_s(&[6, 15, 12, 3], 4, 3).unwrap().to_string(),
            "6*p^4 + 15*p^3*u + 12*p^2*u^2 + 3*p*u^3"
        );
        assert!(assemble_b(&[1, 2], 3, 2).is_err());
    }

    #[test]
    fn chern_mather_sign_rule() {
        assert_eq!(chern_mather_from_v(&[0, 0, 0, 1], 3), vec![0, 0, 0, 1]);
        assert_eq!(chern_mather_from_v(&[1, 1], 1), vec![-1, 1]);
        assert_eq!(chern_mather_from_v(&[2, 3, 4], 2), vec![2, -3, 4]);
    }

    #[test]
    fn torus_line() {
        let m = ModelSpec::parse::<&str>(&["x1"], &[], 1).unwrap();
        assert_eq!(ml_degree(&m, 3).unwrap(), 1);
        assert_eq!(ml_bidegrees(&m, 2).unwrap(), vec![1, 1]);
        assert_eq!(sectional_ml_degrees(&m, 2).unwrap(), vec![1, 1]);
        assert_eq!(degree_of_y(&m, 2).unwrap(), 1);
    }

    #[test]
    fn agreement_needs_a_seed() {
        let m = ModelSpec::parse::<&str>(&["x1"], &[], 1).unwrap();
        assert!(ml_degree(&m, 0).is_err());
        assert_eq!(agreement_seeds(u64::MAX, 2), vec![u64::MAX, 0]);
    }
}
