use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use corels::core::dataset::{MiningConfig, Negations};
use corels::core::oracle::{brute_force, DEFAULT_BUDGET};
use corels::core::solver::{solve_with, Ablations, Clock, LogicalClock, Observer, SolverConfig, Status};
use corels::core::{Lambda, SearchPolicy};
use corels::manifest::Manifest;
use corels::metrics::Metrics;
use corels::pipeline::{mine_folds, write_folds, FoldOptions};
use corels::trace::{CsvTrace, WallClock};
use corels::{formats, model, propublica, table};

/// Optimal rule lists with a certificate of optimality.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine antecedents from a categorical CSV and write rule/label files per fold.
    Mine(MineArgs),
    /// Search for the optimal rule list and write model, trace and manifest.
    Train(TrainArgs),
    /// Score a model on a rule/label file pair.
    Eval(EvalArgs),
    /// Exhaustively enumerate rule lists (small instances only).
    Oracle(OracleArgs),
    /// Discretize the two-year recidivism CSV into the six-attribute feature set.
    PrepPropublica(PrepArgs),
}

#[derive(Args)]
struct MineArgs {
    #[arg(long)]
    csv: PathBuf,
    #[arg(long)]
    label_column: String,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    max_clauses: u8,
    /// Add negations of every single-clause antecedent.
    #[arg(long, conflicts_with = "negate_columns")]
    negate_all: bool,
    /// Add negations of single-clause antecedents on these columns.
    #[arg(long, value_delimiter = ',')]
    negate_columns: Vec<String>,
    #[arg(long, default_value = "0")]
    lambda_min: Lambda,
    #[arg(long, default_value_t = 1)]
    folds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Upsample the minority class in training folds.
    #[arg(long)]
    resample: bool,
    #[arg(long)]
    outdir: PathBuf,
}

#[derive(Args)]
struct AblationArgs {
    #[arg(long)]
    no_priority: bool,
    #[arg(long)]
    no_support_bounds: bool,
    #[arg(long)]
    no_lookahead: bool,
    #[arg(long)]
    no_symmap: bool,
    #[arg(long)]
    no_equiv_points: bool,
}

impl AblationArgs {
    fn ablations(&self) -> Ablations {
        Ablations {
            no_priority: self.no_priority,
            no_support_bounds: self.no_support_bounds,
            no_lookahead: self.no_lookahead,
            no_symmap: self.no_symmap,
            no_equiv_points: self.no_equiv_points,
        }
    }
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long)]
    rules: PathBuf,
    #[arg(long)]
    labels: PathBuf,
    /// Precomputed minority mask; computed from the rules when omitted.
    #[arg(long)]
    minority: Option<PathBuf>,
    #[arg(long)]
    lambda: Lambda,
    #[arg(long, default_value = "lower_bound")]
    policy: SearchPolicy,
    #[arg(long)]
    max_nodes: Option<usize>,
    #[arg(long)]
    max_seconds: Option<f64>,
    #[command(flatten)]
    ablations: AblationArgs,
    /// The lambda_min used when mining, to warn about weak filtering.
    #[arg(long)]
    mining_lambda: Option<Lambda>,
    #[arg(long, default_value_t = 4096)]
    trace_interval: u64,
    /// Report pops instead of seconds in the trace, for reproducible output.
    #[arg(long)]
    logical_clock: bool,
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    model: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    rules: PathBuf,
    #[arg(long)]
    labels: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    rules: PathBuf,
    #[arg(long)]
    labels: PathBuf,
    #[arg(long)]
    minority: Option<PathBuf>,
    #[arg(long)]
    lambda: Lambda,
    #[arg(long)]
    k_cap: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct PrepArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
}

fn mine(a: MineArgs) -> anyhow::Result<ExitCode> {
    let loaded = table::load_categorical_csv(&a.csv, &a.label_column)?;
    let negations = if a.negate_all {
        Negations::All
    } else if a.negate_columns.is_empty() {
        Negations::None
    } else {
        Negations::Columns(a.negate_columns.clone())
    };
    let mining = MiningConfig {
        max_clauses: a.max_clauses,
        negations,
        lambda_min: a.lambda_min,
    };
    let folds = FoldOptions {
        folds: a.folds,
        seed: a.seed,
        resample_minority: a.resample,
    };
    let mined = mine_folds(&loaded.table, &mining, &folds)?;
    let mut m = Manifest::new("mine");
    m.set("csv", a.csv.display())
        .set("label_column", &a.label_column)
        .set("records_read", loaded.records_read)
        .set("records_dropped", loaded.dropped)
        .set("max_clauses", a.max_clauses)
        .set("negations", format!("{:?}", mining.negations))
        .set("lambda_min", a.lambda_min)
        .set("folds", a.folds)
        .set("seed", a.seed)
        .set("resample", a.resample)
        .set("outdir", a.outdir.display());
    let paths = write_folds(&a.outdir, &mined, m)?;
    eprintln!(
        "read {} records, dropped {}; wrote {} fold(s) to {}",
        loaded.records_read,
        loaded.dropped,
        paths.len(),
        a.outdir.display()
    );
    for (p, f) in paths.iter().zip(&mined) {
        println!("{}\t{} antecedents", p.dir.display(), f.train.antecedents.len());
    }
    Ok(ExitCode::SUCCESS)
}

fn manifest_path(model: &Path) -> PathBuf {
    let mut s = model.as_os_str().to_owned();
    s.push(".manifest");
    PathBuf::from(s)
}

fn train(a: TrainArgs) -> anyhow::Result<ExitCode> {
    let ds = formats::load_dataset(&a.rules, &a.labels, a.minority.as_deref())?;
    let config = SolverConfig {
        lambda: a.lambda,
        policy: a.policy,
        max_nodes: a.max_nodes,
        max_seconds: a.max_seconds,
        ablations: a.ablations.ablations(),
        trace_sample_interval: a.trace_interval,
        mining_lambda: a.mining_lambda,
    };
    let mut clock: Box<dyn Clock> = if a.logical_clock {
        Box::new(LogicalClock)
    } else {
        Box::new(WallClock::start())
    };
    let result = match &a.trace {
        Some(p) => {
            let f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            let mut sink = CsvTrace::new(BufWriter::new(f));
            let r = solve_with(&ds, &config, clock.as_mut(), &mut sink)?;
            sink.finish().with_context(|| format!("writing {}", p.display()))?;
            r
        }
        None => solve_with(&ds, &config, clock.as_mut(), &mut () as &mut dyn Observer)?,
    };
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    model::write_model(&a.model, &result.best_rule_list, &ds.antecedents)?;

    let c = &result.counters;
    let mut m = Manifest::new("train");
    m.set("rules", a.rules.display())
        .set("labels", a.labels.display())
        .set("minority", a.minority.as_ref().map(|p| p.display().to_string()).unwrap_or_default())
        .set("lambda", a.lambda)
        .set("policy", a.policy)
        .set("max_nodes", a.max_nodes.map(|v| v.to_string()).unwrap_or_default())
        .set("max_seconds", a.max_seconds.map(|v| v.to_string()).unwrap_or_default())
        .set("ablations", format!("{:?}", config.ablations))
        .set("trace_interval", a.trace_interval)
        .set("logical_clock", a.logical_clock)
        .set("model", a.model.display())
        .set("trace", a.trace.as_ref().map(|p| p.display().to_string()).unwrap_or_default())
        .set("samples", ds.n_samples())
        .set("antecedents", ds.antecedents.len())
        .set("status", result.status)
        .set("objective", result.best_objective)
        .set("mistakes", result.best_mistakes)
        .set("optimality_gap", result.optimality_gap)
        .set("prefix_length", result.best_rule_list.len())
        .set("lower_bound_evaluations", c.lower_bound_evaluations)
        .set("queue_insertions", c.queue_insertions)
        .set("max_physical_queue", c.max_physical_queue)
        .set("max_logical_queue", c.max_logical_queue)
        .set("trie_node_peak", c.trie_node_peak)
        .set("incumbent_updates", c.incumbent_updates)
        .set("max_evaluated_prefix_length", c.max_evaluated_prefix_length)
        .set("nodes_expanded", c.nodes_expanded);
    m.write(&manifest_path(&a.model))?;

    print!("{}", model::render_model(&result.best_rule_list, &ds.antecedents));
    eprintln!(
        "status={} objective={} gap={} evaluations={}",
        result.status, result.best_objective, result.optimality_gap, c.lower_bound_evaluations
    );
    Ok(match result.status {
        Status::CertifiedOptimal => ExitCode::SUCCESS,
        Status::IncompleteTime => ExitCode::from(2),
        Status::IncompleteMemory => ExitCode::from(3),
    })
}

fn eval(a: EvalArgs) -> anyhow::Result<ExitCode> {
    let antecedents = formats::read_rule_file(&a.rules)?;
    let labels = formats::read_label_file(&a.labels)?;
    if antecedents.n_samples() != labels.len() {
        bail!(
            "{}: {} samples, rule file has {}",
            a.labels.display(),
            labels.len(),
            antecedents.n_samples()
        );
    }
    let rl = model::read_model(&a.model, &antecedents)?;
    let metrics = Metrics::new(&rl.predict(&antecedents), &labels);
    println!("{}", Metrics::CSV_HEADER);
    println!("{}", metrics.csv_row());
    Ok(ExitCode::SUCCESS)
}

fn oracle(a: OracleArgs) -> anyhow::Result<ExitCode> {
    let ds = formats::load_dataset(&a.rules, &a.labels, a.minority.as_deref())?;
    let r = brute_force(&ds, a.lambda, a.k_cap, a.budget)?;
    println!("min_objective={}", r.min_objective);
    println!("evaluated={}", r.evaluated);
    println!("witnesses={}", r.witnesses.len());
    for w in &r.witnesses {
        println!("{}", w.to_line(&ds.antecedents));
    }
    Ok(ExitCode::SUCCESS)
}

fn prep(a: PrepArgs) -> anyhow::Result<ExitCode> {
    let p = propublica::prepare(&a.input)?;
    p.write_csv(&a.output)?;
    eprintln!(
        "read {} records, dropped {} with missing fields, wrote {}",
        p.records_read,
        p.dropped,
        p.rows.len()
    );
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Mine(a) => mine(a),
        Command::Train(a) => train(a),
        Command::Eval(a) => eval(a),
        Command::Oracle(a) => oracle(a),
        Command::PrepPropublica(a) => prep(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
