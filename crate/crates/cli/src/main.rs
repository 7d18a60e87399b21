use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use coset_ideal::atlas::abelian_atlas;
use coset_ideal::group::{make_group, DEFAULT_ORDER_CAP};
use coset_ideal::groupoid::{cross_checked_report, CosetGroupoid};
use coset_ideal::hls::hls_report;
use coset_ideal::ideal::integer_witness;
use coset_ideal::norm::{default_subsets, normcheck, NormcheckReport};
use coset_ideal::spec::{resolve_family, FamilySpec};
use coset_ideal::{Error, FiniteGroup, GroupSpec, SubgroupFamily};

const EXIT_PARSE: u8 = 1;
const EXIT_INCONSISTENT: u8 = 2;
const EXIT_TOLERANCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "coset-ideal", version, about = "Coset ideals of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kernel dimensions, witness and cross-checks for a group and family.
    Analyze(Input),
    /// Property AI for every abelian group up to a given order.
    AiAtlas {
        #[arg(long, default_value_t = 64)]
        max_order: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Truncated non-Hausdorff groupoid: dangerous point and witness lift.
    Hls {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Norm equation residuals for random functions on the coset groupoid.
    Normcheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Unit subsets as JSON, e.g. `[[0],[0,1]]`; default: singletons,
        /// pairs and all units.
        #[arg(long)]
        subsets: Option<String>,
    },
    /// Prints the integer witness only (`null` if there is none).
    Witness(Input),
}

#[derive(Args, Debug)]
struct Input {
    /// Group spec: a JSON file or inline JSON.
    #[arg(long)]
    group: String,
    /// Family spec: a JSON file or inline JSON.
    #[arg(long)]
    family: String,
    /// Reject non-invariant families instead of closing them.
    #[arg(long)]
    no_auto_close: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// An error tagged with its exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let error = e.into();
        let code = match error.downcast_ref::<Error>() {
            Some(Error::InternalInconsistency(_)) => EXIT_INCONSISTENT,
            _ => EXIT_PARSE,
        };
        Failure { code, error }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> anyhow::Result<T> {
    let text = if arg.trim_start().starts_with('{') || arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).with_context(|| format!("reading {what} file {arg}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {what} spec"))
}

fn load(input: &Input) -> anyhow::Result<(FiniteGroup, SubgroupFamily)> {
    let spec: GroupSpec = read_json(&input.group, "group")?;
    let group = make_group(&spec, DEFAULT_ORDER_CAP)?;
    let family_spec: FamilySpec = read_json(&input.family, "family")?;
    let family = resolve_family(&group, &family_spec, !input.no_auto_close)?;
    Ok((group, family))
}

fn emit<T: Serialize>(report: &T, out: &Output) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    match &out.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn normcheck_command(input: &Input, trials: usize, seed: u64, tol: f64, subsets: Option<&str>) -> anyhow::Result<NormcheckReport> {
    let (group, family) = load(input)?;
    let cg = CosetGroupoid::build(&group, &family)?;
    let subsets = match subsets {
        Some(s) => serde_json::from_str(s).context("parsing --subsets")?,
        None => default_subsets(cg.groupoid().num_units()),
    };
    Ok(normcheck(cg.groupoid(), subsets, trials, seed, tol)?)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze(input) => {
            let (group, family) = load(&input)?;
            emit(&cross_checked_report(&group, &family)?, &input.out)?;
        }
        Command::Witness(input) => {
            let (group, family) = load(&input)?;
            emit(&integer_witness(&group, &family)?, &input.out)?;
        }
        Command::Hls { input, depth } => {
            let (group, family) = load(&input)?;
            emit(&hls_report(&group, &family, depth)?, &input.out)?;
        }
        Command::AiAtlas { max_order, out } => {
            let report = abelian_atlas(max_order)?;
            emit(&report, &out)?;
            if report.disagreements > 0 {
                return Ok(EXIT_INCONSISTENT);
            }
        }
        Command::Normcheck {
            input,
            trials,
            seed,
            tol,
            subsets,
        } => {
            let report = normcheck_command(&input, trials, seed, tol, subsets.as_deref())?;
            emit(&report, &input.out)?;
            if !report.passed {
                return Ok(EXIT_TOLERANCE);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
