//! Command implementations behind the `mlinv` binary. Every command yields a
//! [`Report`] plus an exit status; rendering is separate so reports can be
//! compared byte for byte.

pub mod model_file;
pub mod report;

use std::fmt;
use std::path::Path;

use mlinv_core::degrees::{
    self, assemble_b, assemble_s, check_model, CountRecord, MasterReport, DEFAULT_AGREEMENT,
};
use mlinv_core::involution::{aluffi_involution, b_from_s, s_from_b};
use mlinv_core::likelihood::ModelSpec;
use mlinv_core::{parse_poly, BiPoly, UniPoly};
use serde::Serialize;
use serde_json::{json, Value};

pub use model_file::ModelFile;
pub use report::{render, ModelEcho, OutputFormat, Report};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Mismatch,
    InputError,
    SeedDisagreement,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Mismatch => 1,
            Status::InputError => 2,
            Status::SeedDisagreement => 3,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Solver(String),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Input(_) => Status::InputError,
            CliError::Solver(_) => Status::SeedDisagreement,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Solver(m) => write!(f, "solver error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<mlinv_core::Error> for CliError {
    fn from(e: mlinv_core::Error) -> Self {
        match e {
            mlinv_core::Error::SeedDisagreement { .. } => CliError::Solver(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// Options shared by the model commands.
#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Overrides the seed of the model file.
    pub seed: Option<u64>,
    pub agreement: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: None, agreement: DEFAULT_AGREEMENT }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelCommand {
    MlDegree,
    Bidegrees,
    Sectional,
    Master,
    ChernMather,
    Check,
}

impl ModelCommand {
    pub fn name(self) -> &'static str {
        match self {
            ModelCommand::MlDegree => "mldeg",
            ModelCommand::Bidegrees => "bidegrees",
            ModelCommand::Sectional => "sectional",
            ModelCommand::Master => "master",
            ModelCommand::ChernMather => "chern-mather",
            ModelCommand::Check => "check",
        }
    }
}

pub fn load_model(path: &Path, opts: &RunOptions) -> Result<ModelSpec, CliError> {
    let spec = ModelFile::load(path)?.to_spec()?;
    Ok(match opts.seed {
        Some(s) => spec.with_seed(s),
        None => spec,
    })
}

fn disagreement(records: &[CountRecord]) -> Status {
    if records.iter().all(|r| r.agreed) {
        Status::Pass
    } else {
        Status::SeedDisagreement
    }
}

fn values(records: &[CountRecord]) -> Option<Vec<usize>> {
    records.iter().map(CountRecord::value).collect()
}

/// Runs one of the model commands on a parsed model.
pub fn run_model(cmd: ModelCommand, path: &str, model: &ModelSpec, opts: &RunOptions) -> Result<Report, CliError> {
    if opts.agreement == 0 {
        return Err(CliError::Input("--agreement must be at least 1".into()));
    }
    let k = opts.agreement;
    let (n, d) = (model.n(), model.dim());
    let (status, result) = match cmd {
        ModelCommand::MlDegree => {
            let rec = degrees::ml_degree_record(model, k)?;
            let status = disagreement(std::slice::from_ref(&rec));
            (status, json!({ "ml_degree": rec.value(), "records": [rec] }))
        }
        ModelCommand::Bidegrees => {
            let recs = degrees::bidegree_records(model, k)?;
            let b = values(&recs);
            let big_b = b.as_ref().map(|b| assemble_b(b, n, d)).transpose()?;
            (disagreement(&recs), json!({ "b": b, "B": big_b, "records": recs }))
        }
        ModelCommand::Sectional => {
            let recs = degrees::sectional_records(model, k)?;
            let s = values(&recs);
            let big_s = s.as_ref().map(|s| assemble_s(s, n, d)).transpose()?;
            (disagreement(&recs), json!({ "s": s, "S": big_s, "records": recs }))
        }
        ModelCommand::Master | ModelCommand::ChernMather => {
            let recs = degrees::master_records(model, k)?;
            let master = values(&recs).map(|v| MasterReport::new(n, d, v)).transpose()?;
            (disagreement(&recs), json!({ "master": master, "records": recs }))
        }
        ModelCommand::Check => {
            let rep = check_model(model, k)?;
            let status = if !rep.degrees.agreed() {
                Status::SeedDisagreement
            } else if rep.passed {
                Status::Pass
            } else {
                Status::Mismatch
            };
            (status, serde_json::to_value(&rep).expect("check report serializes"))
        }
    };
    Ok(Report {
        tool: "mlinv",
        version: env!("CARGO_PKG_VERSION"),
        command: cmd.name().to_string(),
        input: Value::String(path.to_string()),
        model: Some(ModelEcho::new(model)),
        agreement: Some(k),
        seeds: Some(degrees::agreement_seeds(model.seed, k)),
        status,
        result,
    })
}

/// Direction of the `involution` command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    FromB,
    FromS,
    Aluffi,
}

fn parse_bivariate(text: &str) -> Result<BiPoly, CliError> {
    let vars = ["p".to_string(), "u".to_string()];
    let poly = parse_poly(text, &vars).map_err(|e| CliError::Input(format!("{text:?}: {e}")))?;
    Ok(BiPoly::from_poly(&poly)?)
}

fn parse_univariate(text: &str) -> Result<UniPoly, CliError> {
    let vars = ["t".to_string()];
    let poly = parse_poly(text, &vars).map_err(|e| CliError::Input(format!("{text:?}: {e}")))?;
    Ok(UniPoly::from_poly(&poly)?)
}

/// Runs the `involution` command. `n` and `d` are required for the B/S
/// transforms and ignored by the Aluffi involution.
pub fn run_involution(dir: Transform, input: &str, n: Option<u32>, d: Option<u32>) -> Result<Report, CliError> {
    let (command, result) = match dir {
        Transform::Aluffi => {
            let p = parse_univariate(input)?;
            let out = aluffi_involution(&p)?;
            ("involution --aluffi", json!({ "input": p.to_string_in("t"), "output": out.to_string_in("t") }))
        }
        Transform::FromB | Transform::FromS => {
            let (n, d) = match (n, d) {
                (Some(n), Some(d)) => (n, d),
                _ => return Err(CliError::Input("--n and --d are required".into())),
            };
            let p = parse_bivariate(input)?;
            let (name, out) = match dir {
                Transform::FromB => ("involution --from-b", s_from_b(&p, n, d)?),
                _ => ("involution --from-s", b_from_s(&p, n, d)?),
            };
            (
                name,
                json!({ "n": n, "d": d, "input": p.to_string(), "output": out.to_string(), "coefficients": out }),
            )
        }
    };
    Ok(Report {
        tool: "mlinv",
        version: env!("CARGO_PKG_VERSION"),
        command: command.to_string(),
        input: Value::String(input.to_string()),
        model: None,
        agreement: None,
        seeds: None,
        status: Status::Pass,
        result,
    })
}
