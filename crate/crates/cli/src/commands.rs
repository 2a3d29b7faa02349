use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::thread;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use oddsmo_core::orders::{check_order, classify_shape};
use oddsmo_core::stability::geometric_extreme_experiment;
use oddsmo_core::theorems::{
    find_case, list_cases, sweep_case, BaselineShapes, CaseFlag, CaseSummary, SweepConfig, SweepReport,
};
use oddsmo_core::{
    Baseline, ContinuousDistribution, DistortedOdds, Error, GridSpec, Law, OrderStatus, ParamTriple,
    ProfilePoint, Relation,
};

use crate::error::CliError;
use crate::format::{csv_row, num};
use crate::spec::parse;

/// Environment variable that overrides the sweep thread count.
pub const THREADS_ENV: &str = "ODDSMO_THREADS";

#[derive(Debug, Parser)]
#[command(name = "oddsmo", version, about = "Distorted odds and enlarged log-logistic distributions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate cdf, pdf, survival, hazard, odds and odds rate at quantile-spaced points.
    Eval(EvalArgs),
    /// Report hazard, odds-rate and CDF shape classes.
    Classify(ClassifyArgs),
    /// Check a stochastic order numerically. Exit 0 holds, 1 reversed, 2 crosses, 3 inconclusive.
    Order(OrderArgs),
    /// Run the randomized theorem sweep and write a JSON report.
    Verify(VerifyArgs),
    /// Monte Carlo check of geometric extreme stability for a domo law.
    Stability(StabilityArgs),
    /// Densities of the lung-cancer example: baseline Gamma(1.13, 116.6) and its oMO distortion.
    Prentice(PrenticeArgs),
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Probability levels per distribution.
    #[arg(long, default_value_t = 2049)]
    pub points: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub plo: f64,
    #[arg(long, default_value_t = 1.0 - 1e-4)]
    pub phi: f64,
    /// Relative tolerance of the numeric comparisons.
    #[arg(long, default_value_t = 1e-9)]
    pub slack: f64,
}

impl GridArgs {
    fn spec(&self) -> Result<GridSpec, CliError> {
        Ok(GridSpec::new(self.points, self.plo, self.phi, self.slack)?)
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub dist: String,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    #[arg(long, default_value_t = 0.001)]
    pub plo: f64,
    #[arg(long, default_value_t = 0.999)]
    pub phi: f64,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub dist: String,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    #[arg(long, value_parser = ["st", "hr", "rh", "lr", "c", "disp"])]
    pub relation: String,
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Restrict the sweep to these case ids (repeatable).
    #[arg(long = "case")]
    pub cases: Vec<String>,
    /// Worker threads; defaults to $ODDSMO_THREADS or the available parallelism.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    /// A `domo:` spec.
    #[arg(long)]
    pub dist: String,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct PrenticeArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Result of a successful command: text for standard output or a file, and
/// the exit status.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub status: i32,
}

impl Outcome {
    fn text(stdout: String) -> Self {
        Outcome {
            stdout,
            ..Default::default()
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing to the given streams. Returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { crate::error::EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            let written = stdout
                .write_all(out.stdout.as_bytes())
                .and_then(|_| stderr.write_all(out.stderr.as_bytes()));
            match written {
                Ok(()) => out.status,
                Err(e) => {
                    let e = CliError::Stream(e);
                    let _ = writeln!(stderr, "error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Eval(a) => eval(a),
        Command::Classify(a) => classify(a),
        Command::Order(a) => order(a),
        Command::Verify(a) => verify(a),
        Command::Stability(a) => stability(a),
        Command::Prentice(a) => prentice(a),
    }
}

/// Writes `body` to `path`, or returns it for standard output.
fn deliver(body: String, path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) => {
            fs::write(p, body).map_err(|source| CliError::Io {
                path: p.to_path_buf(),
                source,
            })?;
            Ok(String::new())
        }
        None => Ok(body),
    }
}

fn probability_levels(points: usize, lo: f64, hi: f64) -> Result<Vec<f64>, CliError> {
    if points == 0 {
        return Err(CliError::Usage("--points must be at least 1".into()));
    }
    if !(lo > 0.0 && lo <= hi && hi < 1.0) {
        return Err(CliError::Usage(format!(
            "need 0 < plo <= phi < 1 (got plo={lo}, phi={hi})"
        )));
    }
    if points == 1 {
        return Ok(vec![lo]);
    }
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| if i + 1 == points { hi } else { lo + step * i as f64 })
        .collect())
}

pub const EVAL_HEADER: &str = "x,cdf,pdf,survival,hazard,odds,odds_rate\n";

fn eval(a: &EvalArgs) -> Result<Outcome, CliError> {
    let law = parse(&a.dist)?;
    let mut body = String::from(EVAL_HEADER);
    for u in probability_levels(a.points, a.plo, a.phi)? {
        let x = law.quantile(u)?;
        let p = ProfilePoint::of(&law, x);
        body.push_str(&csv_row(&[p.x, p.cdf, p.pdf, p.survival, p.hazard, p.odds, p.odds_rate]));
    }
    Ok(Outcome::text(deliver(body, a.out.as_deref())?))
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn classify(a: &ClassifyArgs) -> Result<Outcome, CliError> {
    let law = parse(&a.dist)?;
    let s = classify_shape(&law, &a.grid.spec()?)?;
    let mut out = String::new();
    for (key, value) in [
        ("ihr", s.ihr),
        ("dhr", s.dhr),
        ("ior", s.ior),
        ("dor", s.dor),
        ("cdf_convex", s.cdf_convex),
        ("cdf_concave", s.cdf_concave),
        ("constant_hazard", s.constant_hazard),
        ("constant_odds_rate", s.constant_odds_rate),
    ] {
        let _ = writeln!(out, "{key}={}", flag(value));
    }
    Ok(Outcome::text(out))
}

pub fn order_exit_code(status: OrderStatus) -> i32 {
    match status {
        OrderStatus::Holds => 0,
        OrderStatus::Reversed => 1,
        OrderStatus::Crosses => 2,
        OrderStatus::Inconclusive => 3,
    }
}

fn order(a: &OrderArgs) -> Result<Outcome, CliError> {
    let relation: Relation = a.relation.parse()?;
    let left = parse(&a.left)?;
    let right = parse(&a.right)?;
    let v = check_order(relation, &left, &right, &a.grid.spec()?)?;
    let mut out = String::new();
    let _ = writeln!(out, "relation={relation}");
    let _ = writeln!(out, "left={}", a.left);
    let _ = writeln!(out, "right={}", a.right);
    let _ = writeln!(out, "status={}", v.status);
    let _ = writeln!(out, "equal={}", flag(v.equal));
    let _ = writeln!(out, "witness={}", v.witness.map_or("none".into(), num));
    let _ = writeln!(out, "max_violation={}", num(v.max_violation));
    let _ = writeln!(out, "points={}", v.points);
    if let Some(c) = v.odds_cross_check {
        let _ = writeln!(out, "odds_cross_check={c}");
    }
    Ok(Outcome {
        stdout: out,
        stderr: String::new(),
        status: order_exit_code(v.status),
    })
}

fn thread_count(requested: Option<usize>) -> Result<usize, CliError> {
    if let Some(n) = requested {
        return if n == 0 {
            Err(CliError::Usage("--threads must be at least 1".into()))
        } else {
            Ok(n)
        };
    }
    if let Ok(v) = std::env::var(THREADS_ENV) {
        return match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Usage(format!("{THREADS_ENV} must be a positive integer (got `{v}`)"))),
        };
    }
    Ok(thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs the sweep with cases spread over `threads` workers. The report does
/// not depend on the thread count.
pub fn parallel_sweep(config: &SweepConfig, seed: u64, threads: usize) -> Result<SweepReport, CliError> {
    if config.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let cases = list_cases();
    if let Some(ids) = &config.only {
        for id in ids {
            find_case(id)?;
        }
    }
    let selected: Vec<usize> = (0..cases.len())
        .filter(|&i| config.only.as_ref().is_none_or(|ids| ids.iter().any(|x| x == cases[i].id)))
        .collect();
    let shapes = BaselineShapes::new(&config.grid)?;
    let threads = threads.clamp(1, selected.len().max(1));
    let mut results: Vec<(usize, oddsmo_core::Result<CaseSummary>)> = thread::scope(|scope| {
        let workers: Vec<_> = (0..threads)
            .map(|w| {
                let (cases, selected, shapes) = (&cases, &selected, &shapes);
                scope.spawn(move || {
                    selected
                        .iter()
                        .skip(w)
                        .step_by(threads)
                        .map(|&i| (i, sweep_case(&cases[i], i, config, seed, shapes)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        workers
            .into_iter()
            .flat_map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    results.sort_by_key(|(i, _)| *i);
    let cases = results
        .into_iter()
        .map(|(_, r)| r)
        .collect::<oddsmo_core::Result<Vec<_>>>()?;
    Ok(SweepReport {
        seed,
        trials: config.trials,
        grid: config.grid,
        cases,
    })
}

#[derive(Debug, Serialize)]
pub struct FlaggedCase<'a> {
    pub id: &'a str,
    pub flag: CaseFlag,
    pub trials_applicable: usize,
    pub agreements: usize,
    pub disagreements: usize,
}

#[derive(Debug, Serialize)]
pub struct VerifySummary<'a> {
    pub cases: usize,
    pub unflagged_disagreements: usize,
    pub implication_violations: usize,
    /// Cases whose statement is implemented with a known defect, reported
    /// apart from the main tally.
    pub flagged: Vec<FlaggedCase<'a>>,
}

#[derive(Debug, Serialize)]
pub struct VerifyDocument<'a> {
    #[serde(flatten)]
    pub report: &'a SweepReport,
    pub summary: VerifySummary<'a>,
}

pub fn verify_document(report: &SweepReport) -> VerifyDocument<'_> {
    let flagged = report
        .cases
        .iter()
        .filter_map(|c| {
            c.flag.map(|flag| FlaggedCase {
                id: &c.id,
                flag,
                trials_applicable: c.trials_applicable,
                agreements: c.agreements,
                disagreements: c.disagreements.len(),
            })
        })
        .collect();
    VerifyDocument {
        report,
        summary: VerifySummary {
            cases: report.cases.len(),
            unflagged_disagreements: report.unflagged_disagreements(),
            implication_violations: report.implication_violations(),
            flagged,
        },
    }
}

fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let mut config = SweepConfig::with_trials(a.trials);
    if !a.cases.is_empty() {
        config.only = Some(a.cases.clone());
    }
    let report = parallel_sweep(&config, a.seed, thread_count(a.threads)?)?;
    let mut body = serde_json::to_string_pretty(&verify_document(&report)).expect("report serializes");
    body.push('\n');

    let mut log = String::new();
    for c in &report.cases {
        let tag = match c.flag {
            Some(CaseFlag::Typo) => " [typo]",
            Some(CaseFlag::AsPrinted) => " [as printed]",
            None => "",
        };
        let _ = writeln!(
            log,
            "{:<28} applicable={:<4} agreements={:<4} disagreements={}{tag}",
            c.id,
            c.trials_applicable,
            c.agreements,
            c.disagreements.len()
        );
    }
    let _ = writeln!(
        log,
        "cases={} unflagged_disagreements={} implication_violations={}",
        report.cases.len(),
        report.unflagged_disagreements(),
        report.implication_violations()
    );
    Ok(Outcome {
        stdout: deliver(body, a.out.as_deref())?,
        stderr: log,
        status: 0,
    })
}

fn stability(a: &StabilityArgs) -> Result<Outcome, CliError> {
    let law = parse(&a.dist)?;
    let Law::Domo(d) = law else {
        return Err(Error::Capability(format!(
            "stability needs a domo distribution, got `{}`",
            a.dist
        ))
        .into());
    };
    let r = geometric_extreme_experiment(&d, a.p, a.n, a.seed)?;
    let mut out = String::new();
    let p = r.params;
    for (key, value) in [
        ("alpha", num(p.alpha())),
        ("beta", num(p.beta())),
        ("theta", num(p.theta())),
        ("p", num(r.p)),
        ("n", r.n.to_string()),
        ("seed", r.seed.to_string()),
        ("ks_min", num(r.ks_min)),
        ("ks_max", num(r.ks_max)),
        ("critical", num(r.critical)),
        ("min_pass", flag(r.min_pass).into()),
        ("max_pass", flag(r.max_pass).into()),
        ("cap_hits", r.cap_hits.to_string()),
        ("mean_group_size", num(r.mean_group_size)),
        ("passed", flag(r.passed()).into()),
    ] {
        let _ = writeln!(out, "{key}={value}");
    }
    Ok(Outcome {
        stdout: out,
        stderr: String::new(),
        status: if r.passed() { 0 } else { 1 },
    })
}

/// Fitted constants of the lung-cancer example.
pub fn prentice_laws() -> (Baseline, DistortedOdds<Baseline>) {
    let f = Baseline::gamma(1.13, 116.6).expect("valid");
    let g = DistortedOdds::new(f, ParamTriple::omo(4.4324, 0.6822).expect("valid"));
    (f, g)
}

pub const PRENTICE_HEADER: &str = "x,baseline_pdf,domo_pdf,baseline_cdf,domo_cdf\n";

fn prentice(a: &PrenticeArgs) -> Result<Outcome, CliError> {
    let (f, g) = prentice_laws();
    let mut body = String::from(PRENTICE_HEADER);
    for day in 0..=1000 {
        let x = day as f64;
        body.push_str(&csv_row(&[x, f.pdf(x), g.pdf(x), f.cdf(x), g.cdf(x)]));
    }
    Ok(Outcome::text(deliver(body, a.out.as_deref())?))
}
