//! The `wsat` command-line front end.
//!
//! Every command reads `--n`, `--S`, `--R` (except `sweep`, which walks a
//! grid) and writes JSON to stdout or `--out`. Without `--json` a command
//! prints its headline result; with it, the input echo and the full report.
//!
//! Exit codes: 0 on success, 1 when the input is rejected, 2 when an
//! internal check fails (a trace that does not verify, a certificate whose
//! support condition fails, a construction that does not percolate).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::certificate::{certificate_report_with, CertificateError};
use crate::construct::{construct_max_s, construct_min_r, ConstructError, ConstructionResult, SChoice};
use crate::exterior::{SignRule, DEFAULT_BLOCK_CAP, DEFAULT_SEED};
use crate::formula::{cwsat_formula, tight_case, FormulaError, TightCase};
use crate::grid::GridSpec;
use crate::model::json::edge_from_json;
use crate::model::{build_host, EdgeSet, ModelError, ParamVec, VecFamily};
use crate::percolation::{
    closure_with, cwsat_bruteforce, verify_trace, wsat_bruteforce_uncolored, CopyMode, PercolationError,
    TraceError, TraceJson, UncoloredStrategy, DEFAULT_EDGE_CAP,
};
use crate::ParamFamily;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse {what}: {detail}")]
    Parse { what: String, detail: String },
    #[error("missing --{0}")]
    Missing(&'static str),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Percolation(#[from] PercolationError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
    #[error(transparent)]
    Trace(#[from] TraceError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Trace(_) => 2,
            CliError::Certificate(e) if e.is_assertion() => 2,
            _ => 1,
        }
    }
}

/// `"a,b,c;d,e,f"` into a duplicate-free family of one dimension.
pub fn parse_family(text: &str) -> Result<VecFamily, CliError> {
    let err = |detail: String| CliError::Parse {
        what: format!("family {text:?}"),
        detail,
    };
    let members = text
        .split(';')
        .map(|v| parse_vector(v).map_err(|e| err(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    VecFamily::new(members).map_err(|e| err(e.to_string()))
}

/// `"a,b,c"` into a vector.
pub fn parse_vector(text: &str) -> Result<ParamVec, CliError> {
    let entries = text
        .split(',')
        .map(|x| {
            x.trim().parse::<usize>().map_err(|e| CliError::Parse {
                what: format!("vector {text:?}"),
                detail: format!("{x:?}: {e}"),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ParamVec::new(entries))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Colored,
    Uncolored,
}

impl From<ModeArg> for CopyMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Colored => CopyMode::Colored,
            ModeArg::Uncolored => CopyMode::Uncolored,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Exhaustive,
}

impl From<StrategyArg> for UncoloredStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => UncoloredStrategy::Auto,
            StrategyArg::Exhaustive => UncoloredStrategy::Exhaustive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructionArg {
    /// Maximum-`s` when `S` has a maximum, else minimum-`r`.
    Auto,
    MinR,
    MaxS,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SignRuleArg {
    LaterColors,
    AllOtherColors,
}

impl From<SignRuleArg> for SignRule {
    fn from(s: SignRuleArg) -> Self {
        match s {
            SignRuleArg::LaterColors => SignRule::LaterColors,
            SignRuleArg::AllOtherColors => SignRule::AllOtherColors,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepTask {
    Formula,
    Construct,
    Oracle,
    Certify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Closed-form colored weak saturation value.
    Formula,
    /// Extremal construction with its addition order.
    Construct,
    /// Percolation closure of the start set in `--start`.
    Closure,
    /// Check the trace in `--trace`.
    Verify,
    /// Brute-force minimum percolating set.
    Oracle,
    /// Exterior-algebra rank certificate.
    Certify,
    /// One JSON line per grid point.
    Sweep,
}

#[derive(Debug, Parser)]
#[command(name = "wsat", version, about = "Weak saturation of tensor products of cliques")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Host sizes, e.g. `4,4`.
    #[arg(long, global = true)]
    pub n: Option<String>,
    /// Uniformity profiles, e.g. `1,0;0,1`.
    #[arg(long = "S", global = true)]
    pub s: Option<String>,
    /// Pattern sizes, e.g. `2,1;1,2`.
    #[arg(long = "R", global = true)]
    pub r: Option<String>,
    #[arg(long, value_enum, default_value = "colored", global = true)]
    pub mode: ModeArg,
    /// How uncolored copies are enumerated.
    #[arg(long, value_enum, default_value = "auto", global = true)]
    pub strategy: StrategyArg,
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Largest host edge count for brute force.
    #[arg(long, default_value_t = DEFAULT_EDGE_CAP, global = true)]
    pub edge_cap: usize,
    /// Largest block whose minors are verified.
    #[arg(long, default_value_t = DEFAULT_BLOCK_CAP, global = true)]
    pub block_cap: usize,
    #[arg(long, value_enum, default_value = "auto", global = true)]
    pub construction: ConstructionArg,
    #[arg(long, value_enum, default_value = "later-colors", global = true)]
    pub sign_rule: SignRuleArg,
    /// Start-set file: JSON with a `start` edge list.
    #[arg(long, global = true)]
    pub start: Option<PathBuf>,
    /// Trace file: JSON with `start` and `steps`.
    #[arg(long, global = true)]
    pub trace: Option<PathBuf>,
    /// Sweep task.
    #[arg(long, value_enum, default_value = "formula", global = true)]
    pub task: SweepTask,
    /// Sweep dimensions, e.g. `1,2`.
    #[arg(long, default_value = "1,2", global = true)]
    pub dims: String,
    #[arg(long, default_value_t = 5, global = true)]
    pub n_max: usize,
    #[arg(long, default_value_t = 3, global = true)]
    pub entry_max: usize,
    #[arg(long, default_value_t = 2, global = true)]
    pub family_max: usize,
    /// Keep every point rather than one per color permutation orbit.
    #[arg(long, global = true)]
    pub all_orientations: bool,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Emit the full report with the input echoed.
    #[arg(long, global = true)]
    pub json: bool,
}

/// A fully parsed invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    /// Absent for `sweep`.
    pub family: Option<ParamFamily>,
    pub mode: CopyMode,
    pub strategy: UncoloredStrategy,
    pub seed: u64,
    pub edge_cap: usize,
    pub block_cap: usize,
    pub construction: ConstructionArg,
    pub sign_rule: SignRule,
    pub start: Option<PathBuf>,
    pub trace: Option<PathBuf>,
    pub task: SweepTask,
    pub grid: GridSpec,
    pub out: Option<PathBuf>,
    pub full: bool,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let family = if cli.command == Command::Sweep {
            None
        } else {
            let n = parse_vector(cli.n.as_deref().ok_or(CliError::Missing("n"))?)?;
            let s = parse_family(cli.s.as_deref().ok_or(CliError::Missing("S"))?)?;
            let r = parse_family(cli.r.as_deref().ok_or(CliError::Missing("R"))?)?;
            Some(ParamFamily::new(n, s, r)?)
        };
        let dims = parse_vector(&cli.dims)?.into_inner();
        Ok(RunConfig {
            command: cli.command,
            family,
            mode: cli.mode.into(),
            strategy: cli.strategy.into(),
            seed: cli.seed,
            edge_cap: cli.edge_cap,
            block_cap: cli.block_cap,
            construction: cli.construction,
            sign_rule: cli.sign_rule.into(),
            start: cli.start,
            trace: cli.trace,
            task: cli.task,
            grid: GridSpec {
                dims,
                n_max: cli.n_max,
                entry_max: cli.entry_max,
                family_max: cli.family_max,
                up_to_color_symmetry: !cli.all_orientations,
            },
            out: cli.out,
            full: cli.json,
        })
    }

    fn family(&self) -> &ParamFamily {
        self.family.as_ref().expect("non-sweep commands carry a family")
    }
}

/// Start-set file: any JSON object with a `start` edge list.
#[derive(Deserialize)]
struct StartFile {
    start: Vec<Vec<[usize; 2]>>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &PathBuf) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.clone(),
        source,
    })
}

fn echo(family: &ParamFamily) -> Value {
    json!({ "n": family.n(), "S": family.s(), "R": family.r() })
}

fn with_echo(family: &ParamFamily, result: Value) -> Value {
    let mut out = echo(family);
    out["result"] = result;
    out
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn formula_value(family: &ParamFamily) -> Result<Value, CliError> {
    let f = cwsat_formula(family)?;
    let mut v = to_value(&f);
    v["tight_case"] = to_value(&tight_case(family));
    Ok(v)
}

fn build_construction(family: &ParamFamily, which: ConstructionArg) -> Result<ConstructionResult, CliError> {
    let pick = match which {
        ConstructionArg::Auto => match tight_case(family) {
            Some(TightCase::MaxS) => ConstructionArg::MaxS,
            _ => ConstructionArg::MinR,
        },
        other => other,
    };
    Ok(match pick {
        ConstructionArg::MaxS => construct_max_s(family)?,
        _ => construct_min_r(family, &SChoice::default())?,
    })
}

fn construct_value(family: &ParamFamily, which: ConstructionArg) -> Result<Value, CliError> {
    let c = build_construction(family, which)?;
    verify_trace(&c.host, family.s(), family.r(), &c.kept, &c.order, CopyMode::Colored)?;
    Ok(to_value(&c.to_json()))
}

fn oracle_value(family: &ParamFamily, cfg: &RunConfig, full: bool) -> Result<Value, CliError> {
    let res = match cfg.mode {
        CopyMode::Colored => cwsat_bruteforce(family, cfg.edge_cap)?,
        CopyMode::Uncolored => wsat_bruteforce_uncolored(family, cfg.edge_cap, cfg.strategy)?,
    };
    if !full {
        return Ok(json!(res.value));
    }
    let host = build_host(family.n(), family.s())?;
    let u = host.universe();
    let witness: Vec<_> = res
        .witness
        .iter()
        .map(|&e| crate::model::json::edge_to_json(u, e))
        .collect();
    Ok(json!({
        "mode": cfg.mode,
        "value": res.value,
        "floor": res.floor,
        "fallback": res.fallback,
        "witness": witness,
    }))
}

fn certify_value(family: &ParamFamily, cfg: &RunConfig) -> Result<Value, CliError> {
    let report = certificate_report_with(family, cfg.seed, cfg.block_cap, cfg.sign_rule)?;
    Ok(to_value(&report))
}

fn closure_value(cfg: &RunConfig) -> Result<Value, CliError> {
    let family = cfg.family();
    let path = cfg.start.as_ref().ok_or(CliError::Missing("start"))?;
    let file: StartFile = read_json(path)?;
    let host = build_host(family.n(), family.s())?;
    let u = host.universe();
    let start = file
        .start
        .iter()
        .map(|e| edge_from_json(u, e))
        .collect::<Result<EdgeSet, _>>()?;
    let c = closure_with(&host, family.s(), family.r(), &start, cfg.mode, cfg.strategy)?;
    let mut v = to_value(&TraceJson::new(u, &start, &c.trace));
    v["mode"] = to_value(&cfg.mode);
    v["closure_size"] = json!(c.edges.len());
    v["host_size"] = json!(host.edge_count());
    v["percolates"] = json!(&c.edges == host.edges());
    v["fallback"] = json!(c.fallback);
    Ok(v)
}

fn verify_value(cfg: &RunConfig) -> Result<Value, CliError> {
    let family = cfg.family();
    let path = cfg.trace.as_ref().ok_or(CliError::Missing("trace"))?;
    let file: TraceJson = read_json(path)?;
    let host = build_host(family.n(), family.s())?;
    let u = host.universe();
    let start = file.start_edges(u)?;
    let trace = file.trace(u)?;
    verify_trace(&host, family.s(), family.r(), &start, &trace, cfg.mode)?;
    Ok(json!(true))
}

/// One sweep line; failures are recorded in the line rather than aborting.
fn sweep_line(index: usize, family: &ParamFamily, cfg: &RunConfig) -> (Value, i32) {
    let result = match cfg.task {
        SweepTask::Formula => formula_value(family),
        SweepTask::Construct => construct_value(family, cfg.construction),
        SweepTask::Oracle => oracle_value(family, cfg, true),
        SweepTask::Certify => certify_value(family, cfg),
    };
    let mut line = json!({ "index": index });
    for (k, v) in echo(family).as_object().expect("object") {
        line[k] = v.clone();
    }
    match result {
        Ok(v) => {
            line["result"] = v;
            (line, 0)
        }
        Err(e) => {
            let code = e.exit_code();
            line["error"] = json!(e.to_string());
            (line, code)
        }
    }
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs one command without touching the process streams or `--out`.
pub fn execute(cfg: &RunConfig) -> Outcome {
    if cfg.command == Command::Sweep {
        let points = cfg.grid.points();
        let lines: Vec<(Value, i32)> = points
            .par_iter()
            .enumerate()
            .map(|(i, p)| sweep_line(i, p, cfg))
            .collect();
        let mut stdout = String::new();
        for (line, _) in &lines {
            stdout.push_str(&line.to_string());
            stdout.push('\n');
        }
        let failed = lines.iter().filter(|(_, c)| *c == 2).count();
        return Outcome {
            stdout,
            stderr: if failed > 0 { format!("{failed} grid points failed an internal check\n") } else { String::new() },
            code: if failed > 0 { 2 } else { 0 },
        };
    }
    match single(cfg) {
        Ok(v) => Outcome {
            stdout: format!("{v}\n"),
            stderr: String::new(),
            code: 0,
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}

fn single(cfg: &RunConfig) -> Result<Value, CliError> {
    let family = cfg.family();
    let headline = match cfg.command {
        Command::Formula => formula_value(family)?,
        Command::Construct => construct_value(family, cfg.construction)?,
        Command::Closure => closure_value(cfg)?,
        Command::Verify => verify_value(cfg)?,
        Command::Oracle => oracle_value(family, cfg, cfg.full)?,
        Command::Certify => certify_value(family, cfg)?,
        Command::Sweep => unreachable!("handled by execute"),
    };
    Ok(if cfg.full { with_echo(family, headline) } else { headline })
}

/// Parses `args`, runs, writes the output and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let cfg = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let outcome = execute(&cfg);
    eprint!("{}", outcome.stderr);
    let written = match &cfg.out {
        Some(path) => fs::write(path, &outcome.stdout).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => std::io::stdout()
            .write_all(outcome.stdout.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    };
    match written {
        Ok(()) => outcome.code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
