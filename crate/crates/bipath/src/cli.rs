//! Command-line surface: `build`, `distance`, `optimize`, `matching`.
//!
//! Every command is a pure function of its input files, flags, and the
//! global `--seed`; rerunning with the same triple reproduces the output
//! byte for byte. Each JSON result embeds a [`RunManifest`] recording the
//! command, all parameters, the seed, SHA-256 digests of every input file,
//! and the tool version, so a result can be audited and reproduced.
//! Wall-clock time is reported on standard error only, keeping outputs
//! stable.
//!
//! Exit codes: 0 success, 2 parse errors, 3 validation or computation
//! errors, 4 path errors, 5 search-space errors, 1 internal errors.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bifiltration::{
    build_codensity_values, build_function_rips, parse_bifiltration, parse_point_cloud,
    serialize_bifiltration, Bifiltration, BuildError, ParseError,
};
use crate::distances::{bottleneck, wasserstein, DistanceError};
use crate::grade::BiGrade;
use crate::path::{MonotonePath, PathError, ProjectionMode, SearchSpace, SearchSpaceConfig, SpaceError};
use crate::persistence::{compute_diagrams, PersistenceDiagram, PersistenceError};
use crate::search::{
    ensemble_search, greedy_search, matching_distance_approx, qlearn_search, Metric, QParams,
    QueryConfig, SearchError, SearchResult,
};
use crate::slicer::slice;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Persistence(#[from] PersistenceError),
    #[error(transparent)]
    Distance(#[from] DistanceError),
    #[error("internal: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Internal(_) => 1,
            CliError::Json { .. } => 2,
            CliError::Parse(ParseError::Invalid(_)) => 3,
            CliError::Parse(_) | CliError::Build(_) => 2,
            CliError::Path(_) => 4,
            CliError::Space(_) => 5,
            CliError::Search(e) => match e {
                SearchError::Path(_) => 4,
                SearchError::Persistence(_) | SearchError::Distance(_) => 3,
                _ => 5,
            },
            CliError::Persistence(_) | CliError::Distance(_) => 3,
        }
    }
}

/// Distances between bifiltrations along monotone paths.
#[derive(Debug, Parser)]
#[command(name = "bipath", version, about)]
pub struct Cli {
    /// Seed for every random choice in the run.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for independent evaluations (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a Rips/codensity bifiltration from a point cloud.
    Build(BuildArgs),
    /// Distance between two bifiltrations along one path.
    Distance(DistanceArgs),
    /// Search path space for the most discriminating path.
    Optimize(OptimizeArgs),
    /// Straight-line matching-distance baseline.
    Matching(MatchingArgs),
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Point cloud: one point per line, comma or whitespace separated.
    #[arg(long)]
    pub input: PathBuf,
    /// Codensity neighbor index (1 <= k <= n - 1).
    #[arg(long)]
    pub k: usize,
    /// Top simplex dimension of the Rips expansion.
    #[arg(long, default_value_t = 2)]
    pub max_dim: usize,
    /// Rips scale cutoff.
    #[arg(long)]
    pub max_radius: f64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    /// First bifiltration file.
    #[arg(long)]
    pub a: PathBuf,
    /// Second bifiltration file.
    #[arg(long)]
    pub b: PathBuf,
    /// Path file: JSON {"waypoints": [[x, y], ...]}.
    #[arg(long)]
    pub path: PathBuf,
    #[arg(long, value_enum, default_value_t = Metric::Bottleneck)]
    pub metric: Metric,
    /// Wasserstein exponent (>= 1).
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    /// Homology dimension to compare.
    #[arg(long, default_value_t = 0)]
    pub dim: usize,
    #[arg(long, value_enum, default_value_t = ProjectionMode::PushForward)]
    pub mode: ProjectionMode,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// First bifiltration file.
    #[arg(long)]
    pub a: PathBuf,
    /// Second bifiltration file.
    #[arg(long)]
    pub b: PathBuf,
    /// Search space file: JSON with grid and move-window parameters.
    #[arg(long)]
    pub space: PathBuf,
    #[arg(long, value_enum, default_value_t = Strategy::Ensemble)]
    pub strategy: Strategy,
    /// Rollouts for the ensemble strategy.
    #[arg(long, default_value_t = 64)]
    pub rollouts: usize,
    /// Episodes for the qlearn strategy.
    #[arg(long, default_value_t = 200)]
    pub episodes: usize,
    /// Q-learning learning rate.
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,
    /// Q-learning discount factor.
    #[arg(long, default_value_t = 0.9)]
    pub gamma: f64,
    /// Q-learning probability of the argmax action.
    #[arg(long, default_value_t = 0.9)]
    pub exploit: f64,
    /// Score only completed paths during Q-learning.
    #[arg(long, default_value_t = false)]
    pub terminal_only: bool,
    #[arg(long, value_enum, default_value_t = Metric::Bottleneck)]
    pub metric: Metric,
    /// Wasserstein exponent (>= 1).
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    /// Homology dimension to compare.
    #[arg(long, default_value_t = 0)]
    pub dim: usize,
    #[arg(long, value_enum, default_value_t = ProjectionMode::PushForward)]
    pub mode: ProjectionMode,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MatchingArgs {
    /// First bifiltration file.
    #[arg(long)]
    pub a: PathBuf,
    /// Second bifiltration file.
    #[arg(long)]
    pub b: PathBuf,
    /// Number of straight-line slices.
    #[arg(long, default_value_t = 32)]
    pub slices: usize,
    /// Homology dimension to compare.
    #[arg(long, default_value_t = 0)]
    pub dim: usize,
    #[arg(long, value_enum, default_value_t = ProjectionMode::PushForward)]
    pub mode: ProjectionMode,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Ensemble,
    Greedy,
    Qlearn,
}

/// Everything needed to reproduce a run: the command, its parameters, the
/// seed, digests of all input files, and the tool version. Wall time is
/// carried for reporting but never serialized, so outputs stay identical
/// across reruns.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: u64,
    /// Input name -> SHA-256 of the file bytes.
    pub inputs: BTreeMap<String, String>,
    pub version: String,
    #[serde(skip_serializing, default)]
    pub wall_time_secs: f64,
}

impl RunManifest {
    fn new(command: &str, seed: u64) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            seed,
            inputs: BTreeMap::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_secs: 0.0,
        }
    }

    fn param(mut self, name: &str, value: impl ToString) -> Self {
        self.parameters.insert(name.to_string(), value.to_string());
        self
    }

    fn input(mut self, name: &str, raw: &str) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(raw.as_bytes());
        self.inputs.insert(name.to_string(), hex::encode(hasher.finalize()));
        self
    }
}

/// Runs a parsed command line; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let started = Instant::now();
    match execute(cli) {
        Ok(()) => {
            eprintln!("wall_time_secs: {:.6}", started.elapsed().as_secs_f64());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    pool.install(|| match &cli.command {
        Command::Build(args) => cmd_build(args, cli.seed),
        Command::Distance(args) => cmd_distance(args, cli.seed),
        Command::Optimize(args) => cmd_optimize(args, cli.seed),
        Command::Matching(args) => cmd_matching(args, cli.seed),
    })
}

#[derive(Debug, Serialize)]
struct DistanceOutput {
    #[serde(with = "crate::float_json")]
    distance: f64,
    diagram_a: PersistenceDiagram,
    diagram_b: PersistenceDiagram,
    manifest: RunManifest,
}

#[derive(Debug, Serialize)]
struct OptimizeOutput {
    #[serde(flatten)]
    result: SearchResult,
    manifest: RunManifest,
}

#[derive(Debug, Serialize)]
struct MatchingOutput {
    #[serde(with = "crate::float_json")]
    distance: f64,
    slices: usize,
    manifest: RunManifest,
}

fn cmd_build(args: &BuildArgs, seed: u64) -> Result<(), CliError> {
    let raw = read_file(&args.input)?;
    let pc = parse_point_cloud(&raw)?;
    let values = build_codensity_values(&pc, args.k)?;
    let rips = build_function_rips(&pc, &values, args.max_dim, args.max_radius)?;
    let labeled = Bifiltration::with_labels(rips.simplices().to_vec(), "rips", "codensity")
        .expect("relabeling preserves validity");
    let manifest = RunManifest::new("build", seed)
        .param("k", args.k)
        .param("max_dim", args.max_dim)
        .param("max_radius", args.max_radius)
        .input("input", &raw);
    write_output(args.out.as_deref(), &serialize_bifiltration(&labeled))?;
    report_manifest(&manifest)?;
    Ok(())
}

fn cmd_distance(args: &DistanceArgs, seed: u64) -> Result<(), CliError> {
    let (a, raw_a) = load_bifiltration(&args.a)?;
    let (b, raw_b) = load_bifiltration(&args.b)?;
    let (path, raw_path) = load_path(&args.path)?;
    let fa = slice(&a, &path, args.mode);
    let fb = slice(&b, &path, args.mode);
    let mut da = compute_diagrams(&fa, args.dim)?;
    let mut db = compute_diagrams(&fb, args.dim)?;
    let (da, db) = (da.swap_remove(args.dim), db.swap_remove(args.dim));
    let matching = match args.metric {
        Metric::Bottleneck => bottleneck(&da, &db)?,
        Metric::Wasserstein => wasserstein(&da, &db, args.q)?,
    };
    let manifest = RunManifest::new("distance", seed)
        .param("metric", enum_name(&args.metric))
        .param("q", args.q)
        .param("dim", args.dim)
        .param("mode", enum_name(&args.mode))
        .input("a", &raw_a)
        .input("b", &raw_b)
        .input("path", &raw_path);
    let output = DistanceOutput {
        distance: matching.cost,
        diagram_a: da,
        diagram_b: db,
        manifest,
    };
    write_json(args.out.as_deref(), &output)
}

fn cmd_optimize(args: &OptimizeArgs, seed: u64) -> Result<(), CliError> {
    let (a, raw_a) = load_bifiltration(&args.a)?;
    let (b, raw_b) = load_bifiltration(&args.b)?;
    let raw_space = read_file(&args.space)?;
    let config: SearchSpaceConfig = parse_json(&args.space, &raw_space)?;
    let space = SearchSpace::new(config)?;
    let cfg = QueryConfig {
        metric: args.metric,
        q: args.q,
        hom_dim: args.dim,
        mode: args.mode,
    };
    let mut manifest = RunManifest::new("optimize", seed)
        .param("strategy", enum_name(&args.strategy))
        .param("metric", enum_name(&args.metric))
        .param("q", args.q)
        .param("dim", args.dim)
        .param("mode", enum_name(&args.mode))
        .input("a", &raw_a)
        .input("b", &raw_b)
        .input("space", &raw_space);
    let result = match args.strategy {
        Strategy::Ensemble => {
            manifest = manifest.param("rollouts", args.rollouts);
            ensemble_search(&a, &b, &space, &cfg, args.rollouts, seed, &[])?
        }
        Strategy::Greedy => greedy_search(&a, &b, &space, &cfg, seed)?,
        Strategy::Qlearn => {
            let params = QParams {
                alpha: args.alpha,
                gamma: args.gamma,
                exploit: args.exploit,
                terminal_only: args.terminal_only,
            };
            manifest = manifest
                .param("episodes", args.episodes)
                .param("alpha", args.alpha)
                .param("gamma", args.gamma)
                .param("exploit", args.exploit)
                .param("terminal_only", args.terminal_only);
            qlearn_search(&a, &b, &space, &cfg, args.episodes, &params, seed)?.result
        }
    };
    write_json(args.out.as_deref(), &OptimizeOutput { result, manifest })
}

fn cmd_matching(args: &MatchingArgs, seed: u64) -> Result<(), CliError> {
    let (a, raw_a) = load_bifiltration(&args.a)?;
    let (b, raw_b) = load_bifiltration(&args.b)?;
    let cfg = QueryConfig {
        metric: Metric::Bottleneck,
        q: 1.0,
        hom_dim: args.dim,
        mode: args.mode,
    };
    let distance = matching_distance_approx(&a, &b, &cfg, args.slices)?;
    let manifest = RunManifest::new("matching", seed)
        .param("slices", args.slices)
        .param("dim", args.dim)
        .param("mode", enum_name(&args.mode))
        .input("a", &raw_a)
        .input("b", &raw_b);
    let output = MatchingOutput { distance, slices: args.slices, manifest };
    write_json(args.out.as_deref(), &output)
}

fn enum_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_bifiltration(path: &Path) -> Result<(Bifiltration, String), CliError> {
    let raw = read_file(path)?;
    Ok((parse_bifiltration(&raw)?, raw))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PathFile {
    waypoints: Vec<[f64; 2]>,
}

fn load_path(path: &Path) -> Result<(MonotonePath, String), CliError> {
    let raw = read_file(path)?;
    let file: PathFile = parse_json(path, &raw)?;
    let waypoints = file.waypoints.iter().map(|&[x, y]| BiGrade::new(x, y)).collect();
    Ok((MonotonePath::new(waypoints)?, raw))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path, raw: &str) -> Result<T, CliError> {
    serde_json::from_str(raw).map_err(|source| CliError::Json { path: path.to_path_buf(), source })
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    let mut content = content.to_string();
    if !content.ends_with('\n') {
        content.push('\n');
    }
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|source| CliError::Io { path: path.to_path_buf(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
        }
    }
}

fn write_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|source| CliError::Json { path: PathBuf::from("<output>"), source })?;
    write_output(out, &text)
}

fn report_manifest(manifest: &RunManifest) -> Result<(), CliError> {
    let text = serde_json::to_string(manifest)
        .map_err(|source| CliError::Json { path: PathBuf::from("<manifest>"), source })?;
    eprintln!("manifest: {text}");
    Ok(())
}
