use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homotopy::TrackerConfig;
use crate::polyring::{parse_poly, Poly, RandomSource};

/// Thresholds of the validity predicates plus the path-tracker settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Smallest admissible `|x_i|` and `|x_0|`.
    pub torus: f64,
    /// Largest admissible relative residual of an original generator.
    pub residual: f64,
    /// Relative singular-value cutoff of the generator Jacobian rank test.
    pub rank: f64,
    /// Largest data-weight norm, relative to the multipliers, treated as zero.
    pub weight: f64,
    pub tracker: TrackerConfig,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { torus: 1e-8, residual: 1e-8, rank: 1e-8, weight: 1e-11, tracker: TrackerConfig::default() }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("torus", self.torus), ("residual", self.residual), ("rank", self.rank), ("weight", self.weight)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!("tolerance {name} must be positive, got {v}")));
            }
        }
        self.tracker.validate()
    }
}

/// A very affine variety `Y` in the torus with coordinates `x_1..x_n`,
/// given by generators and a declared dimension.
///
/// The last `affine_tail` generators are affine forms added by slicing; the
/// critical-point systems keep them as separate constraints instead of
/// mixing them with the original generators.
#[derive(Clone, Debug)]
pub struct ModelSpec {
    variables: Vec<String>,
    generators: Vec<Poly>,
    dim: usize,
    affine_tail: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl ModelSpec {
    pub fn new(variables: Vec<String>, generators: Vec<Poly>, dim: usize) -> Result<Self> {
        let n = variables.len();
        for (i, v) in variables.iter().enumerate() {
            if v.is_empty() || variables[..i].contains(v) {
                return Err(Error::InvalidModel(format!("variable names must be distinct and nonempty: {v:?}")));
            }
        }
        if dim > n {
            return Err(Error::InvalidModel(format!("dim = {dim} exceeds n = {n}")));
        }
        if dim == n && !generators.is_empty() {
            return Err(Error::InvalidModel(format!("dim = n = {n} but {} generators given", generators.len())));
        }
        if generators.len() < n - dim {
            return Err(Error::InvalidModel(format!(
                "{} generators cannot cut out codimension {}",
                generators.len(),
                n - dim
            )));
        }
        let generators = generators
            .into_iter()
            .enumerate()
            .map(|(j, g)| {
                if g.is_zero() {
                    return Err(Error::InvalidModel(format!("generator {j} is zero")));
                }
                g.embed(&variables)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ModelSpec { variables, generators, dim, affine_tail: 0, seed: 0, tolerances: Tolerances::default() })
    }

    /// Parses generator strings over `variables`.
    pub fn parse<S: AsRef<str>>(variables: &[S], generators: &[S], dim: usize) -> Result<Self> {
        let vars: Vec<String> = variables.iter().map(|v| v.as_ref().to_string()).collect();
        let gens = generators
            .iter()
            .map(|g| parse_poly(g.as_ref(), &vars).map_err(Error::from))
            .collect::<Result<Vec<_>>>()?;
        ModelSpec::new(vars, gens, dim)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_tolerances(mut self, tolerances: Tolerances) -> Result<Self> {
        tolerances.validate()?;
        self.tolerances = tolerances;
        Ok(self)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn n(&self) -> usize {
        self.variables.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.n() - self.dim
    }

    pub fn affine_tail(&self) -> usize {
        self.affine_tail
    }

    pub fn rng(&self) -> RandomSource {
        RandomSource::new(self.seed, 0)
    }

    /// `x_0 = 1 - x_1 - ... - x_n`.
    pub fn x0(&self) -> Poly {
        let minus_one = -BigRational::one();
        Poly::affine(&self.variables, BigRational::one(), &vec![minus_one; self.n()])
    }

    /// `Y` cut by the affine forms `forms`: dimension drops by their number.
    pub fn section(&self, forms: Vec<Poly>) -> Result<ModelSpec> {
        let k = forms.len();
        if k > self.dim {
            return Err(Error::InvalidInput(format!("cannot cut a {}-dimensional model by {k} forms", self.dim)));
        }
        if forms.iter().any(|f| f.total_degree() > 1) {
            return Err(Error::InvalidInput("section forms must be affine".into()));
        }
        let mut generators = self.generators.clone();
        for f in forms {
            generators.push(f.embed(&self.variables)?);
        }
        Ok(ModelSpec {
            variables: self.variables.clone(),
            generators,
            dim: self.dim - k,
            affine_tail: self.affine_tail + k,
            seed: self.seed,
            tolerances: self.tolerances.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ModelSpec::parse(&["x", "y"], &[], 2).is_ok());
        assert!(matches!(ModelSpec::parse(&["x", "y"], &["x"], 2), Err(Error::InvalidModel(_))));
        assert!(matches!(ModelSpec::parse(&["x", "y"], &[], 1), Err(Error::InvalidModel(_))));
        assert!(matches!(ModelSpec::parse(&["x", "y"], &[], 3), Err(Error::InvalidModel(_))));
        assert!(matches!(ModelSpec::parse(&["x", "x"], &[], 2), Err(Error::InvalidModel(_))));
        assert!(matches!(ModelSpec::parse(&["x"], &["z"], 0), Err(Error::Parse(_))));
        assert!(matches!(ModelSpec::parse(&["x"], &["x - x"], 0), Err(Error::InvalidModel(_))));
    }

    #[test]
    fn x0_and_sections() {
        let m = ModelSpec::parse(&["a", "b"], &[], 2).unwrap();
        assert_eq!(m.x0().to_canonical_string(), "-a - b + 1");
        let v = m.variables().to_vec();
        let s = m.section(vec![parse_poly("a + 2*b - 3", &v).unwrap()]).unwrap();
        assert_eq!((s.dim(), s.codim(), s.affine_tail()), (1, 1, 1));
        assert!(s.section(vec![parse_poly("a*b", &v).unwrap()]).is_err());
        assert!(m.section(vec![parse_poly("a", &v).unwrap(); 3]).is_err());
    }

    #[test]
    fn tolerance_validation() {
        let t = Tolerances { torus: 0.0, ..Tolerances::default() };
        assert!(t.validate().is_err());
        assert!(Tolerances::default().validate().is_ok());
    }
}
