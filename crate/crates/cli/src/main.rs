use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use rough_reduct::bench::{self, BenchConfig, ReportFormat};
use rough_reduct::discern::{self, DiscernMatrix};
use rough_reduct::oracle::{self, DEFAULT_ORACLE_LIMIT};
use rough_reduct::reducers::{self, TraceStep};
use rough_reduct::rules;
use rough_reduct::{
    load_csv, Algorithm, ColumnRef, DecisionTable, InconsistencyPolicy, LoadOptions, ReduceOptions,
    ReductResult, SpsParams,
};

/// `println!` that reports a closed stdout as an error instead of panicking.
macro_rules! outln {
    ($($arg:tt)*) => {
        writeln!(io::stdout(), $($arg)*)?
    };
}

/// Rough-set attribute reduction.
#[derive(Parser)]
#[command(name = "rough-reduct", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce one CSV decision table.
    Reduce(ReduceArgs),
    /// Run the reducers over a dataset manifest and write a report.
    Bench(BenchArgs),
}

#[derive(Parser)]
struct ReduceArgs {
    file: PathBuf,
    #[arg(long, default_value = "srs")]
    algo: Algorithm,
    /// SRS weight on spatial similarity; the dependency weight is 1 - alpha.
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Decision column, by name or zero-based index. Defaults to the last column.
    #[arg(long)]
    decision: Option<ColumnRef>,
    /// Column of object labels, excluded from the condition attributes.
    #[arg(long)]
    id_column: Option<ColumnRef>,
    /// How to treat conflicting objects: reject, match-full-set or require-universe.
    #[arg(long, default_value = "reject")]
    policy: InconsistencyPolicy,
    /// Remove redundant greedy picks afterwards.
    #[arg(long)]
    prune: bool,
    /// Write the decision rules of the (first) reduct to this file.
    #[arg(long)]
    emit_rules: Option<PathBuf>,
    /// Cross-check the result against the brute-force oracle.
    #[arg(long)]
    verify: bool,
    /// Print the non-zero discernibility matrix entries.
    #[arg(long)]
    dump_matrix: bool,
    /// Attribute limit for exhaustive reduct enumeration.
    #[arg(long, default_value_t = discern::DEFAULT_REDUCT_LIMIT)]
    limit: usize,
    /// Print the greedy trace.
    #[arg(long)]
    trace: bool,
}

#[derive(Parser)]
struct BenchArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Comma-separated alpha grid for SRS, or `default` for 0, 0.1, ..., 1.
    #[arg(long)]
    sweep_alpha: Option<String>,
    #[arg(long, default_value = "csv")]
    format: ReportFormat,
    /// Run only these datasets (repeatable).
    #[arg(long = "dataset")]
    datasets: Vec<String>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<io::Error>()
        .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Reduce(args) => reduce(args),
        Command::Bench(args) => bench(args),
    }
}

fn load(args: &ReduceArgs) -> Result<DecisionTable> {
    let options = LoadOptions {
        decision: args.decision.clone(),
        id_column: args.id_column.clone(),
    };
    Ok(load_csv(&args.file, &options)?)
}

fn print_trace(table: &DecisionTable, trace: &[TraceStep]) -> Result<()> {
    for step in trace {
        let name = &table.condition_names()[step.chosen];
        let scores = step
            .scores
            .iter()
            .map(|s| format!("{}={:.6}", table.condition_names()[s.attr], s.score))
            .collect::<Vec<_>>()
            .join(" ");
        outln!("  step {} [{}] +{name}  {scores}", step.step, step.branch);
    }
    Ok(())
}

fn print_result(table: &DecisionTable, r: &ReductResult) -> Result<()> {
    outln!(
        "reduct ({} of {}): {}",
        r.reduct.len(),
        table.n_conditions(),
        r.names(table).join(", ")
    );
    outln!("dependency: {:.4}", r.stats.dependency);
    outln!("spatial similarity: {:.4}", r.stats.spatial_similarity);
    outln!("rules: {}", r.stats.rule_count);
    if !r.pruned.is_empty() {
        outln!(
            "pruned: {}",
            table.attr_names(r.pruned.iter().copied()).join(", ")
        );
    }
    if !r.target_reached {
        outln!("note: table is inconsistent; the full condition set was reached without POS = U");
    }
    Ok(())
}

fn reduce(args: ReduceArgs) -> Result<ExitCode> {
    let table = load(&args)?;
    outln!(
        "{}: {} objects, {} condition attributes, decision `{}`",
        args.file.display(),
        table.n_objects(),
        table.n_conditions(),
        table.decision_name()
    );

    if args.dump_matrix {
        let matrix = match args.policy {
            InconsistencyPolicy::Reject => DiscernMatrix::build(&table)?,
            _ => DiscernMatrix::build_skipping_conflicts(&table),
        };
        write!(io::stdout(), "{}", matrix.dump(&table))?;
        outln!(
            "core: {{{}}}",
            table.attr_names(discern::core(&matrix).iter()).join(", ")
        );
    }

    let results = match args.algo {
        Algorithm::Discern => reducers::reduce_discern_with(&table, args.limit, args.policy)?,
        algo => {
            let options = ReduceOptions {
                params: SpsParams::with_alpha(args.alpha)?,
                policy: args.policy,
                prune: args.prune,
            };
            vec![reducers::reduce_greedy(&table, algo, &options)?]
        }
    };

    for (k, r) in results.iter().enumerate() {
        if results.len() > 1 {
            outln!("# reduct {}", k + 1);
        }
        print_result(&table, r)?;
        if args.trace {
            print_trace(&table, &r.trace)?;
        }
    }

    let first = &results[0];
    if let Some(path) = &args.emit_rules {
        write_rules(&table, first, path)?;
    }

    if args.verify {
        let mut failed = false;
        for r in &results {
            for c in oracle::cross_check(&table, &r.attr_set(), DEFAULT_ORACLE_LIMIT)? {
                let status = if c.passed { "ok" } else { "FAIL" };
                outln!("verify {status}: {} ({})", c.name, c.detail);
                failed |= !c.passed;
            }
        }
        if failed {
            eprintln!("error: oracle verification failed");
            return Ok(ExitCode::FAILURE);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_rules(table: &DecisionTable, r: &ReductResult, path: &Path) -> Result<()> {
    let extracted = rules::extract_rules(table, &r.attr_set())
        .context("cannot extract exact rules from this reduct")?;
    fs::write(path, rules::render_rules(table, &extracted))
        .with_context(|| format!("cannot write {}", path.display()))?;
    outln!("wrote {} rules to {}", extracted.len(), path.display());
    Ok(())
}

fn parse_grid(text: &str) -> Result<Vec<f64>> {
    if text == "default" {
        return Ok(bench::default_alpha_grid());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .with_context(|| format!("bad alpha `{s}`"))
        })
        .collect()
}

fn bench(args: BenchArgs) -> Result<ExitCode> {
    let mut config = BenchConfig::load(&args.config)?;
    if !args.datasets.is_empty() {
        config = config.select(&args.datasets)?;
    }
    let report = match &args.sweep_alpha {
        Some(grid) => bench::sweep_alpha(&config, &parse_grid(grid)?)?,
        None => bench::run_bench(&config)?,
    };
    if args.out.exists() && !args.out.is_dir() {
        bail!("{} is not a directory", args.out.display());
    }
    fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;
    let path = args.out.join(format!("report.{}", args.format.extension()));
    bench::emit_report(&report, args.format, &path)?;
    outln!("wrote {} rows to {}", report.rows.len(), path.display());
    for o in &report.outcomes {
        outln!("{}", o.note());
    }
    for n in &report.notes {
        outln!("{n}");
    }
    Ok(ExitCode::SUCCESS)
}
