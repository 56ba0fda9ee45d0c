use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use mlinv_cli::{
    load_model, render, run_involution, run_model, CliError, ModelCommand, OutputFormat, Report, RunOptions,
    Transform,
};
use mlinv_core::degrees::DEFAULT_AGREEMENT;

#[derive(Parser)]
#[command(name = "mlinv", version, about = "ML degrees, ML bidegrees, sectional ML degrees and Chern-Mather classes")]
struct Cli {
    /// Base seed; overrides the seed of the model file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for path tracking (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Number of seeds that must agree on every count.
    #[arg(long, global = true, default_value_t = DEFAULT_AGREEMENT)]
    agreement: usize,
    /// Compact JSON report.
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// ML degree of the model.
    Mldeg(ModelArg),
    /// ML bidegrees b_0..b_d and the polynomial B.
    Bidegrees(ModelArg),
    /// Sectional ML degrees s_0..s_d and the polynomial S.
    Sectional(ModelArg),
    /// Master-function bidegrees v_0..v_d.
    Master(ModelArg),
    /// Chern-Mather coefficients from the master-function bidegrees.
    ChernMather(ModelArg),
    /// Computes B and S independently and checks the transforms between them.
    Check(ModelArg),
    /// Transforms between B and S, or the involution on univariate polynomials.
    Involution(InvolutionArgs),
}

#[derive(Args)]
struct ModelArg {
    /// Model file (JSON).
    model: PathBuf,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "direction")]
struct Direction {
    /// Bidegree polynomial in p, u; prints S.
    #[arg(long, value_name = "B")]
    from_b: Option<String>,
    /// Sectional polynomial in p, u; prints B.
    #[arg(long, value_name = "S")]
    from_s: Option<String>,
    /// Univariate polynomial in t; prints its image under the involution.
    #[arg(long, value_name = "P")]
    aluffi: Option<String>,
}

#[derive(Args)]
struct InvolutionArgs {
    #[command(flatten)]
    direction: Direction,
    /// Ambient dimension.
    #[arg(long)]
    n: Option<u32>,
    /// Dimension of the variety.
    #[arg(long)]
    d: Option<u32>,
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let opts = RunOptions { seed: cli.seed, agreement: cli.agreement };
    let model_cmd = |cmd: ModelCommand, arg: &ModelArg| {
        let model = load_model(&arg.model, &opts)?;
        run_model(cmd, &arg.model.display().to_string(), &model, &opts)
    };
    match &cli.command {
        Command::Mldeg(a) => model_cmd(ModelCommand::MlDegree, a),
        Command::Bidegrees(a) => model_cmd(ModelCommand::Bidegrees, a),
        Command::Sectional(a) => model_cmd(ModelCommand::Sectional, a),
        Command::Master(a) => model_cmd(ModelCommand::Master, a),
        Command::ChernMather(a) => model_cmd(ModelCommand::ChernMather, a),
        Command::Check(a) => model_cmd(ModelCommand::Check, a),
        Command::Involution(a) => {
            let d = &a.direction;
            let (dir, input) = match (&d.from_b, &d.from_s, &d.aluffi) {
                (Some(b), _, _) => (Transform::FromB, b),
                (_, Some(s), _) => (Transform::FromS, s),
                (_, _, Some(p)) => (Transform::Aluffi, p),
                _ => unreachable!("clap enforces one direction"),
            };
            run_involution(dir, input, a.n, a.d)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("input error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    let format = if cli.pretty {
        OutputFormat::Pretty
    } else if cli.json {
        OutputFormat::Json
    } else {
        OutputFormat::Text
    };
    let started = Instant::now();
    let result = run(&cli);
    eprintln!("wall time: {:.3} s", started.elapsed().as_secs_f64());
    match result {
        Ok(report) => {
            let text = render(&report, format);
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(report.status.code() as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.status().code() as u8)
        }
    }
}
