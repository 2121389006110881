//! Command-line front end.
//!
//! Every subcommand writes `report.json`, `report.csv` and `config.echo` into
//! the output directory. `config.echo` uses the flat `key = value` format read
//! by `--config`, so `stable-jacobi <cmd> --config out/config.echo` reruns an
//! experiment. Flags given on the command line override the file.
//!
//! Exit codes: 0 pass, 1 verdict failure, 2 usage or configuration error.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fourier_jacobi::{p_range, ultraspherical_config, CoefficientVector};
use crate::jacobi::{gauss_jacobi_rule, orthonormal_table, Interval, JacobiParams, TestFunction};
use crate::stable_process::{Grid, StableLaw};
use crate::stochastic_integral::build_y;
use crate::verification::{
    self, cf_match_check, convergence_experiment, existence_check, sample_paths, tail_check, ConvergenceReport,
    ExistenceReport, ExperimentConfig, Verdict,
};

/// Environment variable consulted when `--threads` is absent.
pub const THREADS_ENV: &str = "STABLE_JACOBI_THREADS";

#[derive(Debug, Parser)]
#[command(name = "stable-jacobi", version, about = "Monte Carlo checks for stochastic integrals against weighted symmetric stable processes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Gram matrix of the orthonormal Jacobi polynomials.
    Orthocheck(OrthoArgs),
    /// Dump simulated paths of X and Y as CSV.
    Samplepaths(SamplePathsArgs),
    /// Empirical characteristic function of the integral against its closed form.
    Cfcheck(CfArgs),
    /// Estimated tail probabilities of the integral against the tail bound.
    Tailcheck(TailArgs),
    /// Cauchy-in-probability ladder for polynomial approximants of the integrand.
    Exists(ExistsArgs),
    /// Convergence in probability of random Fourier-Jacobi partial sums.
    Converge(ConvergeArgs),
    /// Admissible range of p for given weight exponents.
    Prange(PrangeArgs),
    /// Convergence experiment for the symmetric weight on [-1, 1].
    Ultra(UltraArgs),
}

/// Flags shared by every subcommand. None of them enter the config echo.
#[derive(Debug, Args)]
struct Common {
    /// Flat `key = value` file of flag values; command-line flags take precedence
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Output directory for report.json, report.csv and config.echo
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,
    /// Worker threads (results do not depend on it) [default: $STABLE_JACOBI_THREADS, else all cores]
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
    /// Print per-row results to stdout (repeat for more)
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,
    /// Print nothing to stdout
    #[arg(short, long)]
    quiet: bool,
}

#[derive(Debug, Args, Serialize)]
struct WeightArgs {
    /// Exponent of (1 - u) in the weight
    #[arg(long, default_value_t = 0.0)]
    zeta: f64,
    /// Exponent of (1 + u) in the weight
    #[arg(long, default_value_t = 0.0)]
    eta: f64,
}

#[derive(Debug, Args, Serialize)]
struct LawArgs {
    /// Stability index in [1, 2]
    #[arg(long, default_value_t = 1.5)]
    chi: f64,
    /// Scale C > 0 of the driving process (characteristic function exp{-C t |x|^chi})
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
}

#[derive(Debug, Args, Serialize)]
struct IntervalArgs {
    /// Left end of the integration interval, in [-1, 1]
    #[arg(long = "a", default_value_t = -0.5)]
    a: f64,
    /// Right end of the integration interval, in [-1, 1]
    #[arg(long = "b", default_value_t = 0.5)]
    b: f64,
}

#[derive(Debug, Args, Serialize)]
struct SimArgs {
    /// Number of Monte Carlo paths
    #[arg(long, default_value_t = 10_000)]
    paths: usize,
    /// Grid steps per path
    #[arg(long, default_value_t = 4096)]
    steps: usize,
    /// Master seed; path k uses substream k
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args, Serialize)]
struct OrthoArgs {
    #[command(flatten)]
    #[serde(flatten)]
    weight: WeightArgs,
    /// Largest polynomial degree checked
    #[arg(long, default_value_t = 30)]
    max_degree: usize,
    /// Allowed absolute deviation of the Gram matrix from the identity
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
}

#[derive(Debug, Args, Serialize)]
struct SamplePathsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    weight: WeightArgs,
    #[command(flatten)]
    #[serde(flatten)]
    law: LawArgs,
    #[command(flatten)]
    #[serde(flatten)]
    interval: IntervalArgs,
    /// Number of paths written
    #[arg(long, default_value_t = 4)]
    paths: usize,
    /// Grid steps per path
    #[arg(long, default_value_t = 4096)]
    steps: usize,
    /// Master seed; path k uses substream k
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
}

#[derive(Debug, Args, Serialize)]
struct CfArgs {
    /// Integrand: poly:c0,c1,..  const:v  power:s,+1|-1  step:x0  cos:k
    #[arg(long = "g", default_value = "const:1")]
    g: String,
    #[command(flatten)]
    #[serde(flatten)]
    weight: WeightArgs,
    #[command(flatten)]
    #[serde(flatten)]
    law: LawArgs,
    #[command(flatten)]
    #[serde(flatten)]
    interval: IntervalArgs,
    #[command(flatten)]
    #[serde(flatten)]
    sim: SimArgs,
    /// Comma-separated arguments of the characteristic function
    #[arg(long = "x", default_value = "0.25,0.5,1,2")]
    x: String,
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
}

#[derive(Debug, Args, Serialize)]
struct TailArgs {
    /// Integrand: poly:c0,c1,..  const:v  power:s,+1|-1  step:x0  cos:k
    #[arg(long = "g", default_value = "const:1")]
    g: String,
    #[command(flatten)]
    #[serde(flatten)]
    weight: WeightArgs,
    #[command(flatten)]
    #[serde(flatten)]
    law: LawArgs,
    #[command(flatten)]
    #[serde(flatten)]
    interval: IntervalArgs,
    #[command(flatten)]
    #[serde(flatten)]
    sim: SimArgs,
    /// Comma-separated tail thresholds (positive)
    #[arg(long, default_value = "0.5,1,2")]
    eps: String,
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
}

#[derive(Debug, Args, Serialize)]
struct ExistsArgs {
    /// Integrand: poly:c0,c1,..  const:v  power:s,+1|-1  step:x0  cos:k
    #[arg(long = "g", default_value = "cos:1")]
    g: String,
    #[command(flatten)]
    #[serde(flatten)]
    weight: WeightArgs,
    #[command(flatten)]
    #[serde(flatten)]
    law: LawArgs,
    #[command(flatten)]
    #[serde(flatten)]
    interval: IntervalArgs,
    #[command(flatten)]
    #[serde(flatten)]
    sim: SimArgs,
    /// Integrability exponent of the integrand (must be at least chi)
    #[arg(long = "p", default_value_t = 2.0)]
    p: f64,
    /// Comma-separated increasing approximant degrees
    #[arg(long, default_value = "4,8,16,32,64")]
    degrees: String,
    /// Comma-separated tail thresholds (positive)
    #[arg(long, default_value = "0.1")]
    eps: String,
    /// Run despite violated hypotheses and invert the verdict
    #[arg(long)]
    expect_failure: bool,
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
}

#[derive(Debug, Args, Serialize)]
struct SeriesArgs {
    #[command(flatten)]
    #[serde(flatten)]
    sim: SimArgs,
    /// Largest truncation index of the ladder 2, 4, 8, ...
    #[arg(long, default_value_t = 32)]
    m_max: usize,
    /// Truncation index of the reference kernel
    #[arg(long, default_value_t = 128)]
    m_ref: usize,
    /// Comma-separated tail thresholds (positive)
    #[arg(long, default_value = "0.1")]
    eps: String,
    /// Comma-separated evaluation points [default: -0.9,-0.5,0,0.5,0.9 inside (a, b)]
    #[arg(long = "u")]
    u: Option<String>,
    /// Run despite violated hypotheses and invert the verdict
    #[arg(long)]
    expect_failure: bool,
}

#[derive(Debug, Args, Serialize)]
struct ConvergeArgs {
    /// Integrand: poly:c0,c1,..  const:v  power:s,+1|-1  step:x0  cos:k
    #[arg(long = "g", default_value = "cos:1")]
    g: String,
    #[command(flatten)]
    #[serde(flatten)]
    weight: WeightArgs,
    #[command(flatten)]
    #[serde(flatten)]
    law: LawArgs,
    #[command(flatten)]
    #[serde(flatten)]
    interval: IntervalArgs,
    /// Integrability exponent of the integrand
    #[arg(long = "p", default_value_t = 2.0)]
    p: f64,
    #[command(flatten)]
    #[serde(flatten)]
    series: SeriesArgs,
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
}

#[derive(Debug, Args, Serialize)]
struct PrangeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    weight: WeightArgs,
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
}

#[derive(Debug, Args, Serialize)]
struct UltraArgs {
    /// Common exponent of (1 - u) and (1 + u)
    #[arg(long, default_value_t = 0.0)]
    zeta: f64,
    /// Integrand: poly:c0,c1,..  const:v  power:s,+1|-1  step:x0  cos:k
    #[arg(long = "g", default_value = "cos:1")]
    g: String,
    #[command(flatten)]
    #[serde(flatten)]
    law: LawArgs,
    /// Integrability exponent [default: midpoint of the admissible range]
    #[arg(long = "p")]
    p: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    series: SeriesArgs,
    #[command(flatten)]
    #[serde(skip)]
    common: Common,
}

/// Result of one subcommand before it is written out.
struct Outcome {
    report: Value,
    csv: String,
    extra_files: Vec<(String, String)>,
    summary: Vec<String>,
    details: Vec<String>,
    pass: bool,
}

/// Parses `argv` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let argv = match splice_config_file(&argv) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let command = Cli::command().mut_subcommands(|s| s.allow_negative_numbers(true).args_override_self(true));
    let cli = match command.try_get_matches_from(&argv).and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Inserts the contents of `--config FILE` as flags directly after the subcommand,
/// so that later command-line flags override them.
fn splice_config_file(argv: &[String]) -> Result<Vec<String>> {
    let mut path = None;
    for (i, arg) in argv.iter().enumerate() {
        if arg == "--config" {
            path = argv.get(i + 1).cloned();
        } else if let Some(p) = arg.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else {
        return Ok(argv.to_vec());
    };
    let text = fs::read_to_string(&path).map_err(|e| Error::Parse(format!("cannot read config {path}: {e}")))?;
    let flags = config_to_flags(&text)?;
    let sub = argv.iter().skip(1).position(|a| !a.starts_with('-')).map(|i| i + 2).unwrap_or(argv.len());
    let mut out = argv[..sub.min(argv.len())].to_vec();
    out.extend(flags);
    out.extend_from_slice(&argv[sub.min(argv.len())..]);
    Ok(out)
}

/// Parses the flat `key = value` format into command-line flags.
pub fn config_to_flags(text: &str) -> Result<Vec<String>> {
    let mut flags = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", n + 1)))?;
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        match value {
            "true" => flags.push(format!("--{key}")),
            "false" => {}
            _ => {
                flags.push(format!("--{key}"));
                flags.push(value.to_string());
            }
        }
    }
    Ok(flags)
}

/// Flat `key = value` rendering of serialized flags.
fn config_echo(subcommand: &str, args: &impl Serialize) -> Result<(String, BTreeMap<String, String>)> {
    let value = serde_json::to_value(args).map_err(|e| Error::Parse(e.to_string()))?;
    let mut map = BTreeMap::new();
    if let Value::Object(obj) = value {
        for (k, v) in obj {
            let rendered = match v {
                Value::Null => continue,
                Value::String(s) => s,
                other => other.to_string(),
            };
            map.insert(k.replace('_', "-"), rendered);
        }
    }
    let mut text = format!("# stable-jacobi {subcommand} --config <this file>\n");
    for (k, v) in &map {
        text.push_str(&format!("{k} = {v}\n"));
    }
    Ok((text, map))
}

fn parse_list<T: std::str::FromStr>(name: &str, s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("--{name}: cannot parse '{t}'"))))
        .collect()
}

fn install<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let threads = match threads {
        Some(n) => Some(n),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => Some(v.trim().parse().map_err(|_| Error::Parse(format!("{THREADS_ENV}: cannot parse '{v}'")))?),
            Err(_) => None,
        },
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::InvalidParameter("--threads must be positive".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(pool.install(f))
}

fn dispatch(command: Command) -> Result<bool> {
    match command {
        Command::Orthocheck(a) => execute("orthocheck", &a, &a.common, || orthocheck(&a)),
        Command::Samplepaths(a) => execute("samplepaths", &a, &a.common, || samplepaths(&a)),
        Command::Cfcheck(a) => execute("cfcheck", &a, &a.common, || cfcheck(&a)),
        Command::Tailcheck(a) => execute("tailcheck", &a, &a.common, || tailcheck(&a)),
        Command::Exists(a) => execute("exists", &a, &a.common, || exists(&a)),
        Command::Converge(a) => execute("converge", &a, &a.common, || converge(&a)),
        Command::Prange(a) => execute("prange", &a, &a.common, || prange(&a)),
        Command::Ultra(a) => execute("ultra", &a, &a.common, || ultra(&a)),
    }
}

fn execute<A: Serialize + Sync>(
    name: &str,
    args: &A,
    common: &Common,
    body: impl FnOnce() -> Result<Outcome> + Send,
) -> Result<bool> {
    let (echo_text, echo_map) = config_echo(name, args)?;
    let outcome = install(common.threads, body)??;
    let verdict = Verdict::from_bool(outcome.pass);
    let report = json!({
        "subcommand": name,
        "config": echo_map,
        "report": outcome.report,
        "verdict": verdict,
    });
    write_outputs(&common.out, &echo_text, &report, &outcome)?;
    if common.quiet {
        return Ok(outcome.pass);
    }
    for line in &outcome.summary {
        println!("{line}");
    }
    if common.verbose > 0 {
        for line in &outcome.details {
            println!("{line}");
        }
    }
    println!("verdict: {}", verdict.as_str());
    Ok(outcome.pass)
}

fn write_outputs(dir: &Path, echo: &str, report: &Value, outcome: &Outcome) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(format!("cannot write to {}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let json = serde_json::to_string_pretty(report).map_err(|e| Error::Parse(e.to_string()))?;
    fs::write(dir.join("report.json"), json + "\n").map_err(io)?;
    fs::write(dir.join("report.csv"), &outcome.csv).map_err(io)?;
    fs::write(dir.join("config.echo"), echo).map_err(io)?;
    for (name, body) in &outcome.extra_files {
        fs::write(dir.join(name), body).map_err(io)?;
    }
    Ok(())
}

fn to_value(v: &impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Parse(e.to_string()))
}

fn params_of(w: &WeightArgs) -> Result<JacobiParams> {
    JacobiParams::new(w.zeta, w.eta)
}

fn experiment(
    g: &str,
    weight: &WeightArgs,
    law: &LawArgs,
    interval: &IntervalArgs,
    sim: &SimArgs,
) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::new(
        StableLaw::new(law.chi, law.scale)?,
        params_of(weight)?,
        Interval::new(interval.a, interval.b)?,
        g.parse::<TestFunction>()?,
    );
    cfg.n_paths = sim.paths;
    cfg.n_steps = sim.steps;
    cfg.master_seed = sim.seed;
    Ok(cfg)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn orthocheck(a: &OrthoArgs) -> Result<Outcome> {
    let params = params_of(&a.weight)?;
    let n = a.max_degree;
    let rule = gauss_jacobi_rule(&params, n + 2)?;
    let table = orthonormal_table(&params, n, &rule.nodes)?;
    let mut csv = String::from("i,j,gram,deviation\n");
    let mut max_dev = 0.0f64;
    for i in 0..=n {
        for j in 0..=n {
            let gram: f64 = rule.weights.iter().enumerate().map(|(k, w)| w * table[i][k] * table[j][k]).sum();
            let dev = (gram - if i == j { 1.0 } else { 0.0 }).abs();
            max_dev = max_dev.max(dev);
            csv.push_str(&format!("{i},{j},{gram},{dev}\n"));
        }
    }
    let pass = max_dev < a.tol;
    Ok(Outcome {
        report: json!({ "max_degree": n, "quadrature_order": n + 2, "max_deviation": max_dev, "tolerance": a.tol }),
        csv,
        extra_files: Vec::new(),
        summary: vec![format!("max |gram - identity| = {max_dev:e} (tolerance {:e})", a.tol)],
        details: Vec::new(),
        pass,
    })
}

fn samplepaths(a: &SamplePathsArgs) -> Result<Outcome> {
    let params = params_of(&a.weight)?;
    params.require_nonnegative()?;
    let law = StableLaw::new(a.law.chi, a.law.scale)?;
    let grid = Grid::new(Interval::new(a.interval.a, a.interval.b)?, a.steps)?;
    let paths = sample_paths(&law, &grid, a.paths, a.seed)?;
    let mut csv = String::from("path,x_terminal,y_terminal\n");
    let mut extra = Vec::new();
    let mut rows = Vec::new();
    for (k, x) in paths.iter().enumerate() {
        let y = build_y(&params, x)?;
        csv.push_str(&format!("{k},{},{}\n", x.terminal(), y.terminal()));
        rows.push(json!({ "path": k, "x_terminal": x.terminal(), "y_terminal": y.terminal() }));
        extra.push((format!("x_{k:04}.csv"), x.to_csv()));
        extra.push((format!("y_{k:04}.csv"), y.to_csv()));
    }
    Ok(Outcome {
        report: json!({ "paths": rows }),
        csv,
        extra_files: extra,
        summary: vec![format!("wrote {} paths of {} steps", a.paths, a.steps)],
        details: Vec::new(),
        pass: true,
    })
}

fn cfcheck(a: &CfArgs) -> Result<Outcome> {
    let cfg = experiment(&a.g, &a.weight, &a.law, &a.interval, &a.sim)?;
    let xs: Vec<f64> = parse_list("x", &a.x)?;
    let report = cf_match_check(&cfg, &xs)?;
    let mut csv = String::from("x,empirical_re,empirical_im,theoretical,pathwise,deviation,allowance,verdict\n");
    let mut details = Vec::new();
    for r in &report.rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.x, r.empirical_re, r.empirical_im, r.theoretical, r.pathwise, r.deviation, r.allowance, r.verdict.as_str()
        ));
        details.push(format!("x={} deviation={:.5} allowance={:.5} {}", r.x, r.deviation, r.allowance, r.verdict.as_str()));
    }
    Ok(Outcome {
        summary: vec![format!(
            "max deviation {:.5} (allowance {:.5})",
            report.max_deviation,
            verification::cf_allowance(report.n_samples)
        )],
        pass: report.verdict.is_pass(),
        report: to_value(&report)?,
        csv,
        extra_files: Vec::new(),
        details,
    })
}

fn tailcheck(a: &TailArgs) -> Result<Outcome> {
    let mut cfg = experiment(&a.g, &a.weight, &a.law, &a.interval, &a.sim)?;
    cfg.eps_list = parse_list("eps", &a.eps)?;
    let report = tail_check(&cfg)?;
    let mut csv = String::from("eps,p_hat,se,bound,vacuous,verdict\n");
    let mut details = Vec::new();
    for r in &report.rows {
        csv.push_str(&format!("{},{},{},{},{},{}\n", r.eps, r.p_hat, r.se, r.bound, r.vacuous, r.verdict.as_str()));
        details.push(format!("eps={} p_hat={:.5} bound={:.5} {}", r.eps, r.p_hat, r.bound, r.verdict.as_str()));
    }
    Ok(Outcome {
        summary: vec![format!("dispersion {:.6}", report.dispersion)],
        pass: report.verdict.is_pass(),
        report: to_value(&report)?,
        csv,
        extra_files: Vec::new(),
        details,
    })
}

fn exists(a: &ExistsArgs) -> Result<Outcome> {
    let mut cfg = experiment(&a.g, &a.weight, &a.law, &a.interval, &a.sim)?;
    cfg.p = a.p;
    cfg.eps_list = parse_list("eps", &a.eps)?;
    cfg.expect_failure = a.expect_failure;
    let degrees: Vec<usize> = parse_list("degrees", &a.degrees)?;
    let report = existence_check(&cfg, &degrees)?;
    existence_outcome(&report)
}

fn existence_outcome(report: &ExistenceReport) -> Result<Outcome> {
    let mut csv = String::from("n,n_next,eps,p_hat,se,bound,verdict\n");
    let mut details = Vec::new();
    for r in &report.rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.m, r.against, r.eps, r.p_hat, r.se, fmt_opt(r.bound), r.verdict.as_str()
        ));
        details.push(format!("n={} vs {} eps={} p_hat={:.5} se={:.5}", r.m, r.against, r.eps, r.p_hat, r.se));
    }
    Ok(Outcome {
        summary: report.hypothesis_violations.iter().map(|v| format!("hypothesis violated: {v}")).collect(),
        pass: report.verdict.is_pass(),
        report: to_value(report)?,
        csv,
        extra_files: Vec::new(),
        details,
    })
}

fn apply_series(cfg: &mut ExperimentConfig, s: &SeriesArgs) -> Result<()> {
    cfg.n_paths = s.sim.paths;
    cfg.n_steps = s.sim.steps;
    cfg.master_seed = s.sim.seed;
    cfg.m_max = s.m_max;
    cfg.m_ref = s.m_ref;
    cfg.eps_list = parse_list("eps", &s.eps)?;
    if let Some(u) = &s.u {
        cfg.u_points = parse_list("u", u)?;
    }
    cfg.expect_failure = s.expect_failure;
    Ok(())
}

fn converge(a: &ConvergeArgs) -> Result<Outcome> {
    let mut cfg = ExperimentConfig::new(
        StableLaw::new(a.law.chi, a.law.scale)?,
        params_of(&a.weight)?,
        Interval::new(a.interval.a, a.interval.b)?,
        a.g.parse()?,
    );
    cfg.p = a.p;
    apply_series(&mut cfg, &a.series)?;
    convergence_outcome(&cfg, convergence_experiment(&cfg)?)
}

fn ultra(a: &UltraArgs) -> Result<Outcome> {
    let (params, iv) = ultraspherical_config(a.zeta)?;
    let mut cfg = ExperimentConfig::new(StableLaw::new(a.law.chi, a.law.scale)?, params, iv, a.g.parse()?);
    cfg.p = match a.p {
        Some(p) => p,
        None => {
            let r = p_range(&params)?;
            0.5 * (r.lower + r.upper)
        }
    };
    apply_series(&mut cfg, &a.series)?;
    convergence_outcome(&cfg, convergence_experiment(&cfg)?)
}

fn convergence_outcome(cfg: &ExperimentConfig, report: ConvergenceReport) -> Result<Outcome> {
    let mut csv = String::from("u,eps,m,p_hat,se,bound,verdict\n");
    let mut details = Vec::new();
    for r in &report.rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt_opt(r.u),
            r.eps,
            r.m,
            r.p_hat,
            r.se,
            fmt_opt(r.bound),
            r.verdict.as_str()
        ));
        details.push(format!(
            "u={} eps={} m={} p_hat={:.5} se={:.5}",
            fmt_opt(r.u),
            r.eps,
            r.m,
            r.p_hat,
            r.se
        ));
    }
    let coeffs = CoefficientVector::compute(&cfg.g, &cfg.params, cfg.m_ref)?;
    let mut summary: Vec<String> =
        report.hypothesis_violations.iter().map(|v| format!("hypothesis violated: {v}")).collect();
    for l in &report.ladders {
        summary.push(format!("u={} eps={}: {}", fmt_opt(l.u), l.eps, l.verdict.as_str()));
    }
    Ok(Outcome {
        pass: report.verdict.is_pass(),
        report: to_value(&report)?,
        csv,
        extra_files: vec![("coefficients.csv".into(), coeffs.to_csv())],
        summary,
        details,
    })
}

fn prange(a: &PrangeArgs) -> Result<Outcome> {
    let r = p_range(&params_of(&a.weight)?)?;
    Ok(Outcome {
        report: json!({ "lower": r.lower, "upper": r.upper }),
        csv: format!("lower,upper\n{},{}\n", r.lower, r.upper),
        extra_files: Vec::new(),
        summary: vec![format!("lower={:.6}", r.lower), format!("upper={:.6}", r.upper)],
        details: Vec::new(),
        pass: true,
    })
}
