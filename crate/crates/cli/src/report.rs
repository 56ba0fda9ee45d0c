use std::fmt::Write as _;

use mlinv_core::likelihood::{ModelSpec, Tolerances};
use serde::Serialize;
use serde_json::Value;

use crate::Status;

/// The model as the computation saw it, with the tolerance set in force.
#[derive(Clone, Debug, Serialize)]
pub struct ModelEcho {
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    pub n: usize,
    pub dim: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl ModelEcho {
    pub fn new(model: &ModelSpec) -> Self {
        ModelEcho {
            variables: model.variables().to_vec(),
            generators: model.generators().iter().map(|g| g.to_string()).collect(),
            n: model.n(),
            dim: model.dim(),
            seed: model.seed,
            tolerances: model.tolerances.clone(),
        }
    }
}

/// Output of one command. Contains no timing or thread information, so it
/// depends only on the input, the seed and the tool version.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Vec<u64>>,
    pub status: Status,
    pub result: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Pretty,
}

pub fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string(report).expect("report serializes") + "\n",
        OutputFormat::Pretty => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        OutputFormat::Text => render_text(report),
    }
}

fn vector(v: &Value) -> String {
    match v {
        Value::Null => "undetermined (seed disagreement)".into(),
        other => other.to_string().replace(',', ", "),
    }
}

fn poly(v: &Value) -> String {
    v.get("polynomial").and_then(Value::as_str).unwrap_or("undetermined").to_string()
}

fn yes_no(v: &Value) -> &'static str {
    match v.as_bool() {
        Some(true) => "yes",
        Some(false) => "no",
        None => "undetermined",
    }
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", r.tool, r.version, r.command);
    if let Some(m) = &r.model {
        let _ = writeln!(out, "model: {} (n = {}, dim = {})", r.input.as_str().unwrap_or(""), m.n, m.dim);
        for g in &m.generators {
            let _ = writeln!(out, "  {g} = 0");
        }
    }
    if let Some(seeds) = &r.seeds {
        let _ = writeln!(out, "seeds: {}", vector(&serde_json::json!(seeds)));
    }
    let res = &r.result;
    let mut line = |k: &str, v: String| {
        let _ = writeln!(out, "{k}: {v}");
    };
    match r.command.as_str() {
        "mldeg" => line("ML degree", vector(&res["ml_degree"])),
        "bidegrees" => {
            line("b", vector(&res["b"]));
            line("B", poly(&res["B"]));
        }
        "sectional" => {
            line("s", vector(&res["s"]));
            line("S", poly(&res["S"]));
        }
        "master" | "chern-mather" => {
            let m = &res["master"];
            line("v", vector(&m["v"]));
            line("cMa", vector(&m["cMa"]));
        }
        "check" => {
            let d = &res["degrees"];
            line("b", vector(&d["b"]));
            line("s", vector(&d["s"]));
            line("deg Y", vector(&d["degree"]));
            line("B", poly(&d["B"]));
            line("S", poly(&d["S"]));
            if let Some(inv) = res.get("involution").filter(|v| !v.is_null()) {
                let show = |k: &str| inv[k].as_str().unwrap_or("invalid").to_string();
                line("S from B", format!("{} ({})", show("s_from_b"), if inv["s_matches"] == true { "match" } else { "MISMATCH" }));
                line("B from S", format!("{} ({})", show("b_from_s"), if inv["b_matches"] == true { "match" } else { "MISMATCH" }));
            }
            line("b0 = s0", yes_no(&res["b0_equals_s0"]).into());
            line("s_d = deg Y", yes_no(&res["sd_equals_degree"]).into());
        }
        _ => {
            if let Some(s) = res.get("output").and_then(Value::as_str) {
                line("result", s.to_string());
            }
        }
    }
    let verdict = match r.status {
        Status::Pass => "PASS",
        Status::Mismatch => "FAIL",
        Status::InputError => "INPUT ERROR",
        Status::SeedDisagreement => "SEED DISAGREEMENT",
    };
    let _ = writeln!(out, "{verdict}");
    out
}
