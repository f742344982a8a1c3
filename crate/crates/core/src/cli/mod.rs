//! Command-line front end. `run_cli` parses arguments, runs one subcommand
//! and returns the process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 2 | algorithm and advice (or valuations) do not fit together |
//! | 3 | unreadable or malformed input |
//! | 4 | incomplete allocation |
//! | 5 | a certified bound or fuzz property failed |

pub mod files;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::adversaries::{certify_bound, AdversaryKind, AdversaryParams};
use crate::algorithms::Algorithm;
use crate::augmented::{noisy_freq_run, noisy_norm_run};
use crate::error::{FairError, Result};
use crate::fairness::{mms_values, BruteForceBudget, FairnessReport};
use crate::frequency::{run_freq_pipeline, ShareOracle};
use crate::gen;
use crate::harness::run_stream;
use crate::model::{Advice, Instance};
use crate::online::{GreedyAllocator, NormAllocator, ThresholdAllocator};
use crate::value::{golden_geq, ExtendedFactor, Value};
use files::{
    read_allocation_field, BoundEntry, InstanceFile, IntervalsFile, NoisyFreqEntry, NoisyNormEntry, PredictionsFile,
    ReportFile,
};

#[derive(Debug, Parser)]
#[command(name = "online-fair", version, about = "Online fair division with exact fairness checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Feed an instance through an online algorithm and report its fairness.
    Run(RunArgs),
    /// Compute all fairness factors of a given allocation.
    Verify(VerifyArgs),
    /// Play an algorithm against an adaptive adversary.
    Adversary(AdversaryArgs),
    /// Print every agent's maximin share.
    Mms(MmsArgs),
    /// Check the algorithms' guarantees on seeded random instances.
    Fuzz(FuzzArgs),
}

#[derive(Debug, Args, Clone, Copy)]
struct BudgetArgs {
    /// Largest agent count for exhaustive MMS searches.
    #[arg(long, default_value_t = 4)]
    max_agents: usize,
    /// Largest good count for exhaustive MMS searches.
    #[arg(long, default_value_t = 12)]
    max_goods: usize,
}

impl From<BudgetArgs> for BruteForceBudget {
    fn from(b: BudgetArgs) -> Self {
        BruteForceBudget {
            max_agents: b.max_agents,
            max_goods: b.max_goods,
        }
    }
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long)]
    algo: String,
    #[arg(long)]
    instance: PathBuf,
    /// Interval totals for the normalization allocator.
    #[arg(long, conflicts_with = "noisy_freq")]
    noisy_intervals: Option<PathBuf>,
    /// Predicted multisets for a frequency algorithm.
    #[arg(long)]
    noisy_freq: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Any JSON file with an "allocation" map, e.g. a report.
    #[arg(long)]
    allocation: PathBuf,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Debug, Args)]
struct AdversaryArgs {
    #[arg(long)]
    adv: String,
    #[arg(long)]
    algo: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long = "K")]
    big_k: Option<Value>,
    #[arg(long)]
    eps: Option<Value>,
    #[arg(long)]
    delta: Option<Value>,
    /// Exponent parameter of a2.
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Debug, Args)]
struct MmsArgs {
    #[arg(long)]
    instance: PathBuf,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Debug, Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instances per check.
    #[arg(long, default_value_t = 200)]
    count: usize,
    /// Values are k/D with k uniform in 0..=D.
    #[arg(long, default_value_t = 64)]
    denominator: i64,
    /// Largest number of goods per instance.
    #[arg(long, default_value_t = 8)]
    max_goods: usize,
}

/// Runs the CLI with the given arguments (the first one is the program name)
/// and returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Run(a) => cmd_run(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Adversary(a) => cmd_adversary(&a, out),
        Command::Mms(a) => cmd_mms(&a, out),
        Command::Fuzz(a) => cmd_fuzz(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &FairError) -> i32 {
    match e {
        FairError::AdviceMismatch(_)
        | FairError::IdenticalViolation { .. }
        | FairError::PredictionViolated { .. }
        | FairError::ExhaustedPredictions { .. }
        | FairError::InvalidAdvice(_)
        | FairError::InvalidInterval { .. }
        | FairError::CardinalityMismatch(_) => 2,
        FairError::IncompleteAllocation(_) => 4,
        _ => 3,
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| FairError::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| FairError::Io(format!("{}: {e}", path.display())))
}

fn io(e: std::io::Error) -> FairError {
    FairError::Io(e.to_string())
}

fn load_instance(path: &Path) -> Result<(InstanceFile, Instance)> {
    let file = InstanceFile::parse(&read(path)?)?;
    let instance = file.instance()?;
    Ok((file, instance))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).map_err(|e| FairError::Parse(format!("{}: {e}", path.display())))
}

/// The advice an algorithm gets when the instance file has none.
fn derived_advice(algo: Algorithm, instance: &Instance) -> Advice {
    match algo {
        Algorithm::Norm | Algorithm::Threshold => Advice::exact_totals(instance),
        Algorithm::FreqRoundRobin | Algorithm::FreqLeximin | Algorithm::FreqBruteForce => {
            Advice::exact_frequency(instance)
        }
        _ => Advice::None,
    }
}

fn oracle_of(algo: Algorithm, budget: BruteForceBudget) -> Result<ShareOracle> {
    match algo {
        Algorithm::FreqRoundRobin => Ok(ShareOracle::RoundRobin),
        Algorithm::FreqLeximin => Ok(ShareOracle::Leximin(budget)),
        Algorithm::FreqBruteForce => Ok(ShareOracle::BruteForce(budget)),
        other => Err(FairError::AdviceMismatch(format!("{other} does not use frequency predictions"))),
    }
}

fn emit_report(report: &ReportFile, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let json = report.to_json();
    match path {
        Some(p) => {
            write_file(p, &(json + "\n"))?;
            write_factors(&report.factors, out)
        }
        None => writeln!(out, "{json}").map_err(io),
    }
}

fn write_factors(f: &files::Factors, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "ef1: {}", f.ef1).map_err(io)?;
    writeln!(out, "efx: {}", f.efx).map_err(io)?;
    writeln!(out, "prop1: {}", f.prop1).map_err(io)?;
    writeln!(out, "mms: {}", f.mms).map_err(io)
}

fn cmd_run(a: &RunArgs, out: &mut dyn Write) -> Result<i32> {
    let algo: Algorithm = a.algo.parse()?;
    let budget = BruteForceBudget::from(a.budget);
    let (file, instance) = load_instance(&a.instance)?;
    let ids = file.ids();
    if algo.requires_identical() && !instance.is_identical() {
        return Err(FairError::AdviceMismatch(format!("{algo} needs identical valuations")));
    }
    let mut report_extra: Option<ReportFile> = None;
    let allocation;
    let mut advice_violation = None;
    let mut benchmark = None;
    if let Some(path) = &a.noisy_intervals {
        if algo != Algorithm::Norm {
            return Err(FairError::AdviceMismatch(format!("--noisy-intervals needs --algo norm, got {algo}")));
        }
        let intervals: IntervalsFile = parse_json(path)?;
        let (alloc, noisy) = noisy_norm_run(&instance, &intervals.intervals)?;
        let fr = FairnessReport::compute(&instance, &alloc, budget)?;
        let mut r = ReportFile::new(algo.name(), &instance, &ids, &alloc, &fr);
        r.noisy_norm = Some(NoisyNormEntry {
            rho: noisy.rho,
            kappa: noisy.kappa,
            additive_ef1_margin: noisy.additive_ef1_margin,
            kappa_prop1: noisy.kappa_prop1,
        });
        report_extra = Some(r);
        allocation = alloc;
    } else if let Some(path) = &a.noisy_freq {
        let oracle = oracle_of(algo, budget)?;
        let predictions: PredictionsFile = parse_json(path)?;
        let outcome = noisy_freq_run(&instance, &predictions.multisets, oracle)?;
        let fr = FairnessReport::compute(&instance, &outcome.allocation, budget)?;
        let mut r = ReportFile::new(algo.name(), &instance, &ids, &outcome.allocation, &fr);
        r.benchmark = Some(outcome.share.benchmark.clone());
        r.noisy_freq = Some(NoisyFreqEntry {
            eta: outcome.trace.eta.clone(),
            eps: outcome.trace.eps.clone(),
            wasserstein: outcome.wasserstein.clone(),
            guarantee_holds: outcome.guarantee_holds,
            additive_holds: outcome.additive_holds,
        });
        report_extra = Some(r);
        allocation = outcome.allocation;
    } else {
        let advice = match file.advice()? {
            Some(adv) => {
                advice_violation = adv.inconsistency(&instance);
                adv
            }
            None => derived_advice(algo, &instance),
        };
        let mut allocator = algo.build_with(instance.n(), &advice, budget)?;
        allocation = run_stream(allocator.as_mut(), &instance)?;
        if let Advice::Frequency(_) = advice {
            if advice_violation.is_none() {
                benchmark = Some(oracle_of(algo, budget)?.compute(&crate::frequency::multisets_of(&instance))?.benchmark);
            }
        }
    }
    let mut report = match report_extra {
        Some(r) => r,
        None => {
            let fr = FairnessReport::compute(&instance, &allocation, budget)?;
            let mut r = ReportFile::new(algo.name(), &instance, &ids, &allocation, &fr);
            r.benchmark = benchmark;
            r
        }
    };
    report.advice_violation = advice_violation;
    emit_report(&report, a.out.as_deref(), out)?;
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let budget = BruteForceBudget::from(a.budget);
    let (file, instance) = load_instance(&a.instance)?;
    let map = read_allocation_field(&read(&a.allocation)?)?;
    let allocation = map.to_allocation(instance.n(), &file.ids())?;
    let report = FairnessReport::compute(&instance, &allocation, budget)?;
    write_factors(&files::Factors::from(&report), out)?;
    Ok(0)
}

fn cmd_adversary(a: &AdversaryArgs, out: &mut dyn Write) -> Result<i32> {
    let kind: AdversaryKind = a.adv.parse()?;
    let algo: Algorithm = a.algo.parse()?;
    let budget = BruteForceBudget::from(a.budget);
    let defaults = AdversaryParams::default();
    let params = AdversaryParams {
        n: a.n,
        big_k: a.big_k.clone().unwrap_or(defaults.big_k),
        epsilon: a.eps.clone().unwrap_or(defaults.epsilon),
        delta: a.delta.clone().unwrap_or(defaults.delta),
        k: a.k.unwrap_or(defaults.k),
    };
    let mut adversary = kind.build(&params).map_err(|e| FairError::Parse(e.to_string()))?;
    let cert = certify_bound(adversary.as_mut(), &algo, budget)?;
    let t = &cert.transcript;
    let ids: Vec<String> = (1..=t.instance.m()).map(|k| format!("g{k}")).collect();
    let mut report = ReportFile::new(algo.name(), &t.instance, &ids, &t.allocation, &t.report);
    report.adversary = Some(kind.name().to_owned());
    report.advice_violation = t.advice_violation.as_ref().map(ToString::to_string);
    report.bound = Some(BoundEntry {
        property: cert.bound.property.to_string(),
        ceiling: cert.bound.ceiling.clone(),
        measured: cert.measured.clone(),
        holds: cert.holds,
        branch: cert.branch.clone(),
    });
    for row in &report.transcript {
        let values: Vec<String> = row.values.iter().map(ToString::to_string).collect();
        writeln!(out, "{} [{}] -> agent {}", row.good, values.join(", "), row.agent).map_err(io)?;
    }
    if let Some(branch) = &cert.branch {
        writeln!(out, "branch: {branch}").map_err(io)?;
    }
    writeln!(out, "measured {}: {}", cert.bound.property, cert.measured).map_err(io)?;
    writeln!(out, "ceiling: {}", cert.bound.ceiling).map_err(io)?;
    writeln!(out, "holds: {}", cert.holds).map_err(io)?;
    if let Some(v) = &report.advice_violation {
        writeln!(out, "advice violation: {v}").map_err(io)?;
    }
    if let Some(p) = &a.out {
        write_file(p, &(report.to_json() + "\n"))?;
    }
    Ok(if cert.holds { 0 } else { 5 })
}

fn cmd_mms(a: &MmsArgs, out: &mut dyn Write) -> Result<i32> {
    let (_, instance) = load_instance(&a.instance)?;
    let mms = mms_values(&instance, BruteForceBudget::from(a.budget))?;
    for (i, v) in mms.0.iter().enumerate() {
        writeln!(out, "agent {}: {v}", i + 1).map_err(io)?;
    }
    Ok(0)
}

/// Counts passes of one property over generated instances.
struct Tally {
    name: &'static str,
    runs: usize,
    failures: usize,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            runs: 0,
            failures: 0,
        }
    }

    fn record(&mut self, ok: bool) {
        self.runs += 1;
        self.failures += usize::from(!ok);
    }
}

fn cmd_fuzz(a: &FuzzArgs, out: &mut dyn Write) -> Result<i32> {
    if a.denominator <= 0 || a.max_goods == 0 {
        return Err(FairError::Parse("denominator and max goods must be positive".into()));
    }
    let d = a.denominator;
    let mut rng = gen::seeded(a.seed);
    let budget = BruteForceBudget::default();
    let mut norm = Tally::new("norm prop1 >= 1 (and ef1 >= 1 for n = 2)");
    let mut greedy = Tally::new("greedy ef1 >= 1 on identical valuations");
    let mut threshold = Tally::new("threshold efx >= (sqrt 5 - 1)/2");
    let mut freq = Tally::new("freq-rr meets its IDO benchmark");
    let mut leximin = Tally::new("freq-leximin efx >= 1");
    use rand::Rng;
    for _ in 0..a.count {
        let n = rng.gen_range(2..=4);
        let m = rng.gen_range(1..=a.max_goods);
        let inst = gen::random_positive_instance(&mut rng, n, m, d);
        let mut alg = NormAllocator::new(n, &Advice::exact_totals(&inst))?;
        let alloc = run_stream(&mut alg, &inst)?;
        let r = FairnessReport::compute(&inst, &alloc, budget)?;
        norm.record(r.prop1.satisfied() && (n != 2 || r.ef1.satisfied()));

        let ident = gen::random_identical_instance(&mut rng, n, m, d);
        let alloc = run_stream(&mut GreedyAllocator::new(n), &ident)?;
        greedy.record(crate::fairness::ef1_factor(&ident, &alloc)?.satisfied());

        let pair = gen::random_identical_instance(&mut rng, 2, m, d);
        let mut alg = ThresholdAllocator::new(2, &Advice::exact_totals(&pair))?;
        let alloc = run_stream(&mut alg, &pair)?;
        threshold.record(match crate::fairness::efx_factor(&pair, &alloc)? {
            ExtendedFactor::Infinite => true,
            ExtendedFactor::Finite(v) => golden_geq(&v)?,
        });

        let any = gen::random_instance(&mut rng, n, m, d);
        freq.record(run_freq_pipeline(&any, ShareOracle::RoundRobin)?.meets_benchmark());

        let two = gen::random_instance(&mut rng, 2, m, d);
        let report = run_freq_pipeline(&two, ShareOracle::Leximin(budget))?;
        leximin.record(crate::fairness::efx_factor(&two, &report.allocation)?.satisfied());
    }
    let mut failed = false;
    for t in [norm, greedy, threshold, freq, leximin] {
        failed |= t.failures > 0;
        writeln!(out, "{}: {}/{} ok", t.name, t.runs - t.failures, t.runs).map_err(io)?;
    }
    Ok(if failed { 5 } else { 0 })
}
