use std::fs;
use std::path::Path;

use mlinv_core::likelihood::{ModelSpec, Tolerances};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// On-disk model description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("model file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model file serializes")
    }

    /// Parses the generators and applies the optional seed and tolerances.
    pub fn to_spec(&self) -> Result<ModelSpec, CliError> {
        let mut gens = Vec::with_capacity(self.generators.len());
        for (j, g) in self.generators.iter().enumerate() {
            let p = mlinv_core::parse_poly(g, &self.variables)
                .map_err(|e| CliError::Input(format!("generator {j} ({g:?}): {e}")))?;
            gens.push(p);
        }
        let mut spec = ModelSpec::new(self.variables.clone(), gens, self.dim)
            .map_err(|e| CliError::Input(e.to_string()))?
            .with_seed(self.seed.unwrap_or(0));
        if let Some(t) = &self.tolerances {
            spec = spec.with_tolerances(t.clone()).map_err(|e| CliError::Input(e.to_string()))?;
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"variables":["x1","x2"],"generators":["x1 + x2 - 1"],"dim":1,"seed":7}"#;
        let m = ModelFile::from_json(text).unwrap();
        assert_eq!(ModelFile::from_json(&m.to_json()).unwrap(), m);
        let spec = m.to_spec().unwrap();
        assert_eq!((spec.n(), spec.dim(), spec.seed), (2, 1, 7));
    }

    #[test]
    fn tolerances_round_trip() {
        let text = r#"{"variables":["x"],"generators":[],"dim":1,"tolerances":{"torus":1e-6,"tracker":{"max_steps":500}}}"#;
        let m = ModelFile::from_json(text).unwrap();
        let t = m.tolerances.as_ref().unwrap();
        assert_eq!(t.torus, 1e-6);
        assert_eq!(t.tracker.max_steps, 500);
        assert_eq!(ModelFile::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn rejects_unknown_fields_and_bad_generators() {
        assert!(ModelFile::from_json(r#"{"variables":[],"generators":[],"dim":0,"extra":1}"#).is_err());
        let m = ModelFile::from_json(r#"{"variables":["x"],"generators":["x + y"],"dim":0}"#).unwrap();
        let err = m.to_spec().unwrap_err().to_string();
        assert!(err.contains("generator 0"), "{err}");
        let m = ModelFile::from_json(r#"{"variables":["x"],"generators":["x +* 1"],"dim":0}"#).unwrap();
        assert!(m.to_spec().unwrap_err().to_string().contains("position"));
    }
}
