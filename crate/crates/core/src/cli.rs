//! Command-line front end: `sample`, `phase`, `validate` and `sweep`.
//!
//! Every command writes `manifest.json` into its output directory. Wall-clock
//! timings go to a separate `timing.txt`; all other outputs are reproducible
//! byte for byte from the same flags and seed.
//!
//! A `--config FILE` (TOML key/value pairs named like the long flags) may
//! precede the subcommand; flags given on the command line win.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation failure, 3 internal error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::analysis::{assign_modes, default_delta, DegreeSummary, DEFAULT_BINS};
use crate::error::{Error, Result};
use crate::graph::AdjacencyState;
use crate::model::ModelParams;
use crate::oracle::{enumerate, tv_distance, tv_distance_keyed, EmpiricalDistribution};
use crate::output::{
    write_curve_csv, write_degrees_csv, write_histogram_csv, write_histogram_svg, write_json, write_rows_csv,
    ParamsRecord, RunManifest,
};
use crate::phase::{classify, tanh_curve, PhaseReport, RootKind};
use crate::sampler::{derive_seed, run_chains, ChainConfig, InitialGraph, SamplerKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "TWOSTAR_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "twostar", version, about = "Edge/two-star random graph sampler and phase analysis")]
#[command(args_override_self = true)]
pub struct Cli {
    /// TOML file of `flag = value` defaults for the subcommand.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run independent chains and write degree/histogram files.
    Sample(SampleArgs),
    /// Classify (θ₁, θ₂) and report fixed points and predicted degree limits.
    Phase(PhaseArgs),
    /// Compare sampler output with the exact distribution for small n.
    Validate(ValidateArgs),
    /// Grid sweep over (θ₁, θ₂) with predicted and empirical modes.
    Sweep(SweepArgs),
}

/// Model parameters as a β-pair or a θ-pair.
#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["theta1", "theta2"], requires = "beta2")]
    pub beta1: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "beta1")]
    pub beta2: Option<f64>,
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["beta1", "beta2"], requires = "theta2")]
    pub theta1: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "theta1")]
    pub theta2: Option<f64>,
}

impl ParamArgs {
    /// Unchecked pair `(β₁, β₂)`.
    fn betas(&self) -> Result<(f64, f64)> {
        match (self.beta1, self.beta2, self.theta1, self.theta2) {
            (Some(b1), Some(b2), None, None) => Ok((b1, b2)),
            (None, None, Some(t1), Some(t2)) => Ok((2.0 * t1 - 4.0 * t2, 4.0 * t2)),
            _ => Err(Error::InvalidParameter("give either --beta1/--beta2 or --theta1/--theta2".into())),
        }
    }

    fn thetas(&self) -> Result<(f64, f64)> {
        match (self.beta1, self.beta2, self.theta1, self.theta2) {
            (None, None, Some(t1), Some(t2)) => Ok((t1, t2)),
            _ => {
                let (b1, b2) = self.betas()?;
                Ok((0.5 * (b1 + b2), 0.25 * b2))
            }
        }
    }

    fn model(&self, n: usize, sampler: SamplerKind) -> Result<ModelParams> {
        let (b1, b2) = self.betas()?;
        match sampler {
            SamplerKind::Gibbs => ModelParams::new(n, b1, b2),
            SamplerKind::Glauber => {
                if n < 2 {
                    return Err(Error::TooFewVertices(n));
                }
                if !b1.is_finite() || !b2.is_finite() {
                    return Err(Error::NonFinite("model parameters"));
                }
                Ok(ModelParams::new_unchecked(n, b1, b2))
            }
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    /// Output directory.
    #[arg(long, env = OUT_DIR_ENV, default_value = "twostar-out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = ChainConfig::DEFAULT_BURN_IN)]
    pub burn_in: usize,
    #[arg(long, default_value_t = 1)]
    pub sweeps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub chains: u64,
    /// Index of the first chain; chain `c` is seeded from `(seed, c)`.
    #[arg(long, default_value_t = 0)]
    pub first_chain: u64,
    #[command(flatten)]
    pub out: OutArgs,
    #[arg(long, value_enum, default_value_t = SamplerKind::Gibbs)]
    pub sampler: SamplerKind,
    #[arg(long, default_value_t = 1)]
    pub record_every: usize,
    /// `er:<p>`, `empty`, `complete` or `file:<edge list>`.
    #[arg(long, default_value = "er:0.5")]
    pub init: String,
    #[arg(long, default_value_t = DEFAULT_BINS)]
    pub bins: usize,
    /// Also write an SVG histogram of each chain's last recorded state.
    #[arg(long)]
    pub svg: bool,
    /// Also write each chain's final graph as an edge list.
    #[arg(long)]
    pub dump_graph: bool,
}

#[derive(Debug, Clone, Args)]
pub struct PhaseArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Write `curve.csv` with (t, tanh(2θ₂t + θ₁)) pairs.
    #[arg(long)]
    pub curve_csv: bool,
    #[arg(long, default_value_t = 301)]
    pub curve_points: usize,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ValidateSampler {
    Gibbs,
    Glauber,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 1_000_000)]
    pub sweeps: usize,
    #[arg(long, default_value_t = 1000)]
    pub burn_in: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ValidateSampler::Both)]
    pub sampler: ValidateSampler,
    /// Pass iff every reported TV distance is below this.
    #[arg(long, default_value_t = 0.02)]
    pub threshold: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub theta1_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub theta1_max: f64,
    #[arg(long, default_value_t = 1)]
    pub theta1_steps: usize,
    #[arg(long)]
    pub theta2_min: f64,
    #[arg(long)]
    pub theta2_max: f64,
    #[arg(long, default_value_t = 1)]
    pub theta2_steps: usize,
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub chains: u64,
    #[arg(long, default_value_t = ChainConfig::DEFAULT_BURN_IN)]
    pub burn_in: usize,
    #[arg(long, default_value_t = 1)]
    pub sweeps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Concentration tolerance; defaults by n (0.1 for n >= 1000, else 0.15).
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, value_enum, default_value_t = SamplerKind::Gibbs)]
    pub sampler: SamplerKind,
    #[command(flatten)]
    pub out: OutArgs,
}

/// Result of a successful command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub validation_passed: bool,
    pub out_dir: PathBuf,
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Diagnostics go to stderr, reports to stdout.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let args = match apply_config(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(o) if o.validation_passed => EXIT_OK,
        Ok(_) => EXIT_VALIDATION,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidParameter(_)
                | Error::TooFewVertices(_)
                | Error::OracleSize { .. }
                | Error::NonFinite(_)
                | Error::Parse(_) => EXIT_USAGE,
                _ => EXIT_INTERNAL,
            }
        }
    }
}

const SUBCOMMANDS: [&str; 4] = ["sample", "phase", "validate", "sweep"];

/// Splices `--key value` pairs from the `--config` file right after the
/// subcommand name. Explicit flags come later and override them.
fn apply_config(args: Vec<String>) -> Result<Vec<String>> {
    let mut path = None;
    let mut rest = Vec::with_capacity(args.len());
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            path = Some(it.next().ok_or_else(|| Error::InvalidParameter("--config needs a path".into()))?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let text = std::fs::read_to_string(&path)?;
    let table: toml::Table = text.parse().map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    let mut injected = Vec::new();
    for (key, value) in table {
        let flag = format!("--{}", key.replace('_', "-"));
        match value {
            toml::Value::Boolean(true) => injected.push(flag),
            toml::Value::Boolean(false) => {}
            toml::Value::String(s) => injected.extend([flag, s]),
            toml::Value::Integer(i) => injected.extend([flag, i.to_string()]),
            toml::Value::Float(f) => injected.extend([flag, f.to_string()]),
            other => return Err(Error::Parse(format!("{path}: unsupported value for {key}: {other}"))),
        }
    }
    let Some(pos) = rest.iter().position(|a| SUBCOMMANDS.contains(&a.as_str())) else {
        return Ok(rest);
    };
    rest.splice(pos + 1..pos + 1, injected);
    Ok(rest)
}

pub fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Sample(a) => cmd_sample(&a),
        Command::Phase(a) => cmd_phase(&a),
        Command::Validate(a) => cmd_validate(&a),
        Command::Sweep(a) => cmd_sweep(&a),
    }
}

fn parse_init(init: &str) -> Result<InitialGraph> {
    match init {
        "empty" => Ok(InitialGraph::Empty),
        "complete" => Ok(InitialGraph::Complete),
        s if s.starts_with("er:") => {
            let p: f64 = s[3..].parse().map_err(|e| Error::Parse(format!("bad --init {s:?}: {e}")))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!("--init edge probability {p} not in [0, 1]")));
            }
            Ok(InitialGraph::ErdosRenyi(p))
        }
        s if s.starts_with("file:") => {
            let f = std::fs::File::open(&s[5..])?;
            Ok(InitialGraph::Given(AdjacencyState::read_edge_list(std::io::BufReader::new(f))?))
        }
        s => Err(Error::Parse(format!("unknown --init {s:?}; use er:<p>, empty, complete or file:<path>"))),
    }
}

fn write_timing(dir: &Path, lines: &str) -> Result<()> {
    std::fs::write(dir.join("timing.txt"), lines)?;
    Ok(())
}

fn summary_json(s: &DegreeSummary) -> serde_json::Value {
    json!({ "mean": s.mean, "min": s.min, "max": s.max })
}

fn cmd_sample(a: &SampleArgs) -> Result<Outcome> {
    let params = a.params.model(a.n, a.sampler)?;
    if a.chains == 0 {
        return Err(Error::InvalidParameter("--chains must be >= 1".into()));
    }
    let cfg = ChainConfig {
        seed: a.seed,
        burn_in: a.burn_in,
        n_sweeps: a.sweeps,
        init: parse_init(&a.init)?,
        record_every: a.record_every,
        bins: a.bins,
        keep_snapshots: false,
    };
    cfg.validate()?;
    let dir = &a.out.out;
    std::fs::create_dir_all(dir)?;
    let start = Instant::now();
    let outputs = run_chains(&params, a.sampler, &cfg, a.seed, a.first_chain, a.chains)?;

    let mut manifest = RunManifest::new("sample");
    let mut timing = String::new();
    let mut chains = Vec::new();
    for (offset, (seed, out)) in outputs.iter().enumerate() {
        let c = a.first_chain + offset as u64;
        let stem = format!("chain{c:03}");
        let last = out.last_sample().ok_or_else(|| Error::Analysis("chain recorded no state".into()))?;
        write_degrees_csv(&dir.join(format!("{stem}_degrees.csv")), out)?;
        write_histogram_csv(&dir.join(format!("{stem}_hist.csv")), &last.histogram)?;
        manifest.outputs.push(format!("{stem}_degrees.csv"));
        manifest.outputs.push(format!("{stem}_hist.csv"));
        if a.svg {
            let title = format!(
                "theta = ({:.4}, {:.4}), n = {}, chain {c}",
                params.theta1(),
                params.theta2(),
                params.n()
            );
            write_histogram_svg(&dir.join(format!("{stem}_hist.svg")), last, &title)?;
            manifest.outputs.push(format!("{stem}_hist.svg"));
        }
        if a.dump_graph {
            let f = std::fs::File::create(dir.join(format!("{stem}_final.edges")))?;
            out.final_state.write_edge_list(std::io::BufWriter::new(f))?;
            manifest.outputs.push(format!("{stem}_final.edges"));
        }
        let _ = writeln!(timing, "chain {c}: {:.6} s", out.wall_time);
        println!(
            "chain {c} (seed {seed}): mean {:.4}, min {:.4}, max {:.4}",
            last.mean, last.min, last.max
        );
        chains.push(json!({
            "index": c,
            "seed": seed,
            "recorded": out.samples.len(),
            "last_state": summary_json(last),
        }));
    }
    manifest.parameters = serde_json::to_value(ParamsRecord::from(&params))?;
    manifest.seed = Some(a.seed);
    manifest.config = json!({
        "sampler": a.sampler.name(),
        "burn_in": a.burn_in,
        "sweeps": a.sweeps,
        "record_every": a.record_every,
        "init": a.init,
        "bins": a.bins,
        "chains": a.chains,
        "first_chain": a.first_chain,
    });
    manifest.summary = json!({ "chains": chains });
    manifest.outputs.push("manifest.json".into());
    write_json(&dir.join("manifest.json"), &manifest)?;
    let _ = writeln!(timing, "total: {:.6} s", start.elapsed().as_secs_f64());
    write_timing(dir, &timing)?;
    Ok(Outcome { validation_passed: true, out_dir: dir.clone() })
}

/// Human-readable table for a phase report.
pub fn format_phase_report(r: &PhaseReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "theta1          {}", r.theta1);
    let _ = writeln!(s, "theta2          {}", r.theta2);
    let _ = writeln!(s, "domain          {}{}", r.domain, if r.is_critical { " (critical)" } else { "" });
    let _ = writeln!(s, "roots of t = tanh(2*theta2*t + theta1):");
    let _ = writeln!(s, "  {:>14}  {:>12}  {:>10}", "m", "q''(2m)", "kind");
    for root in &r.roots {
        let kind = match root.kind {
            RootKind::Minimum => "minimum",
            RootKind::Maximum => "maximum",
            RootKind::Degenerate => "degenerate",
        };
        let _ = writeln!(s, "  {:>14.10}  {:>12.3e}  {:>10}", root.m, root.q_second, kind);
    }
    let _ = writeln!(s, "fixed points    {}", join(&r.fixed_points, 10));
    let _ = writeln!(s, "predicted p     {}", join(&r.predicted_p, 4));
    s
}

fn join(xs: &[f64], digits: usize) -> String {
    xs.iter().map(|x| format!("{x:.digits$}")).collect::<Vec<_>>().join(", ")
}

fn cmd_phase(a: &PhaseArgs) -> Result<Outcome> {
    let (t1, t2) = a.params.thetas()?;
    let report = classify(t1, t2)?;
    print!("{}", format_phase_report(&report));
    let dir = &a.out.out;
    std::fs::create_dir_all(dir)?;
    let mut manifest = RunManifest::new("phase");
    write_json(&dir.join("phase.json"), &report)?;
    manifest.outputs.push("phase.json".into());
    if a.curve_csv {
        write_curve_csv(&dir.join("curve.csv"), &tanh_curve(t1, t2, -1.5, 1.5, a.curve_points))?;
        manifest.outputs.push("curve.csv".into());
    }
    manifest.parameters = json!({ "theta1": t1, "theta2": t2 });
    manifest.config = json!({ "curve_csv": a.curve_csv, "curve_points": a.curve_points });
    manifest.summary = json!({
        "domain": report.domain.label(),
        "fixed_points": report.fixed_points,
        "predicted_p": report.predicted_p,
        "is_critical": report.is_critical,
    });
    manifest.outputs.push("manifest.json".into());
    write_json(&dir.join("manifest.json"), &manifest)?;
    Ok(Outcome { validation_passed: true, out_dir: dir.clone() })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationResult {
    pub sampler: String,
    pub seed: u64,
    pub sweeps: usize,
    pub tv_graph: Option<f64>,
    pub tv_degree_sequence: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Largest `n` whose full graph distribution is compared (64 states).
const GRAPH_TV_MAX_N: usize = 4;

/// Runs one chain and compares its visit frequencies with the exact
/// distribution. Sampler `k` in `[gibbs, glauber]` is seeded from `(seed, k)`.
pub fn validate_sampler(
    params: &ModelParams,
    kind: SamplerKind,
    burn_in: usize,
    sweeps: usize,
    seed: u64,
    threshold: f64,
) -> Result<ValidationResult> {
    let exact = enumerate(params)?;
    let chain_seed = derive_seed(seed, kind as u64);
    let mut chain = kind.chain(params, &InitialGraph::default(), chain_seed)?;
    for _ in 0..burn_in {
        chain.sweep();
    }
    let mut emp = EmpiricalDistribution::new(params.n());
    for _ in 0..sweeps {
        chain.sweep();
        emp.record(chain.state());
    }
    let tv_graph = if params.n() <= GRAPH_TV_MAX_N {
        Some(tv_distance(&emp.graph_probs().expect("small n"), &exact.probs)?)
    } else {
        None
    };
    let tv_degree_sequence = tv_distance_keyed(&emp.degree_probs(), &exact.degree_dist);
    let pass = tv_degree_sequence < threshold && tv_graph.is_none_or(|t| t < threshold);
    Ok(ValidationResult {
        sampler: kind.name().into(),
        seed: chain_seed,
        sweeps,
        tv_graph,
        tv_degree_sequence,
        threshold,
        pass,
    })
}

fn cmd_validate(a: &ValidateArgs) -> Result<Outcome> {
    if a.sweeps == 0 {
        return Err(Error::InvalidParameter("--sweeps must be >= 1".into()));
    }
    let kinds: &[SamplerKind] = match a.sampler {
        ValidateSampler::Gibbs => &[SamplerKind::Gibbs],
        ValidateSampler::Glauber => &[SamplerKind::Glauber],
        ValidateSampler::Both => &[SamplerKind::Gibbs, SamplerKind::Glauber],
    };
    let dir = &a.out.out;
    std::fs::create_dir_all(dir)?;
    let start = Instant::now();
    let results = kinds
        .par_iter()
        .map(|&k| {
            let params = a.params.model(a.n, k)?;
            validate_sampler(&params, k, a.burn_in, a.sweeps, a.seed, a.threshold)
        })
        .collect::<Result<Vec<_>>>()?;
    for r in &results {
        let graph = r.tv_graph.map_or("n/a".to_string(), |t| format!("{t:.5}"));
        println!(
            "{:<8} TV(graph) {graph:<8} TV(degree sequence) {:.5}  threshold {}  {}",
            r.sampler,
            r.tv_degree_sequence,
            r.threshold,
            if r.pass { "PASS" } else { "FAIL" }
        );
    }
    let passed = results.iter().all(|r| r.pass);
    let (b1, b2) = a.params.betas()?;
    let mut manifest = RunManifest::new("validate");
    manifest.parameters = serde_json::to_value(ParamsRecord::from(&ModelParams::new_unchecked(a.n, b1, b2)))?;
    manifest.seed = Some(a.seed);
    manifest.config = json!({
        "sweeps": a.sweeps,
        "burn_in": a.burn_in,
        "threshold": a.threshold,
        "samplers": kinds.iter().map(|k| k.name()).collect::<Vec<_>>(),
    });
    manifest.summary = json!({ "pass": passed });
    write_json(&dir.join("validate.json"), &results)?;
    manifest.outputs = vec!["validate.json".into(), "manifest.json".into()];
    write_json(&dir.join("manifest.json"), &manifest)?;
    write_timing(dir, &format!("total: {:.6} s\n", start.elapsed().as_secs_f64()))?;
    Ok(Outcome { validation_passed: passed, out_dir: dir.clone() })
}

fn grid(min: f64, max: f64, steps: usize, name: &str) -> Result<Vec<f64>> {
    if steps == 0 || !min.is_finite() || !max.is_finite() || max < min {
        return Err(Error::InvalidParameter(format!("invalid {name} grid [{min}, {max}] x {steps}")));
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    Ok((0..steps).map(|k| min + (max - min) * k as f64 / (steps - 1) as f64).collect())
}

fn join_full(xs: &[f64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

fn cmd_sweep(a: &SweepArgs) -> Result<Outcome> {
    let t1s = grid(a.theta1_min, a.theta1_max, a.theta1_steps, "theta1")?;
    let t2s = grid(a.theta2_min, a.theta2_max, a.theta2_steps, "theta2")?;
    if a.theta2_min <= 0.0 {
        return Err(Error::InvalidParameter("theta2 grid must be > 0".into()));
    }
    if a.chains == 0 {
        return Err(Error::InvalidParameter("--chains must be >= 1".into()));
    }
    let delta = a.delta.unwrap_or_else(|| default_delta(a.n));
    let points: Vec<(f64, f64)> = t1s.iter().flat_map(|&t1| t2s.iter().map(move |&t2| (t1, t2))).collect();
    let template = ChainConfig {
        burn_in: a.burn_in,
        ..ChainConfig::new(0, a.sweeps)
    };
    template.validate()?;
    let dir = &a.out.out;
    std::fs::create_dir_all(dir)?;
    let start = Instant::now();

    let rows = points
        .par_iter()
        .enumerate()
        .map(|(k, &(t1, t2))| {
            let point_seed = derive_seed(a.seed, k as u64);
            let report = classify(t1, t2)?;
            let params = ModelParams::from_theta(a.n, t1, t2)?;
            let outs = run_chains(&params, a.sampler, &template, point_seed, 0, a.chains)?;
            let lasts: Vec<DegreeSummary> = outs
                .iter()
                .map(|(_, o)| o.last_sample().cloned().ok_or_else(|| Error::Analysis("no samples".into())))
                .collect::<Result<_>>()?;
            let stats = assign_modes(&lasts, &report.predicted_p, delta)?;
            Ok((point_seed, report, stats, lasts))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut csv_rows = Vec::with_capacity(rows.len());
    let mut seeds = Vec::with_capacity(rows.len());
    for (point_seed, report, stats, lasts) in &rows {
        let mode_means = stats
            .mode_means
            .iter()
            .map(|m| m.map_or("NA".to_string(), |v| v.to_string()))
            .collect::<Vec<_>>()
            .join(";");
        let chain_means: Vec<f64> = lasts.iter().map(|s| s.mean).collect();
        csv_rows.push(vec![
            report.theta1.to_string(),
            report.theta2.to_string(),
            report.domain.label().to_string(),
            join_full(&report.predicted_p),
            mode_means,
            stats.fraction_upper.to_string(),
            join_full(&chain_means),
        ]);
        seeds.push(json!({ "theta1": report.theta1, "theta2": report.theta2, "seed": point_seed }));
    }
    write_rows_csv(
        &dir.join("sweep.csv"),
        &["theta1", "theta2", "domain", "predicted_p", "empirical_mode_means", "fraction_upper", "chain_means"],
        &csv_rows,
    )?;
    println!("wrote {} grid points to {}", csv_rows.len(), dir.join("sweep.csv").display());
    let mut manifest = RunManifest::new("sweep");
    manifest.parameters = json!({
        "n": a.n,
        "theta1": [a.theta1_min, a.theta1_max, a.theta1_steps],
        "theta2": [a.theta2_min, a.theta2_max, a.theta2_steps],
    });
    manifest.seed = Some(a.seed);
    manifest.config = json!({
        "sampler": a.sampler.name(),
        "chains": a.chains,
        "burn_in": a.burn_in,
        "sweeps": a.sweeps,
        "delta": delta,
    });
    manifest.summary = json!({ "points": seeds });
    manifest.outputs = vec!["sweep.csv".into(), "manifest.json".into()];
    write_json(&dir.join("manifest.json"), &manifest)?;
    write_timing(dir, &format!("total: {:.6} s\n", start.elapsed().as_secs_f64()))?;
    Ok(Outcome { validation_passed: true, out_dir: dir.clone() })
}
