use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};

use hsplit_core::experiment::{run_experiment, synthetic_authors, write_csv, ExperimentConfig};
use hsplit_core::profile_gen::{merge_by_titles, parse_titles, synthetic_author, CompatibilityThreshold};
use hsplit_core::reductions::{reduce_3sat, reduce_binpacking, reduce_clique, BinPacking, CliqueOptions, CnfFormula};
use hsplit_core::{
    h_index, oracle_solve, parse_instance, parse_profile, solve, Error, Evaluator, Limits, Measure, Operation,
    ProblemInstance, SolveResult, UndirectedGraph, Variant,
};

#[derive(Parser, Debug)]
#[command(name = "hsplit", version, about = "Raise an h-index by splitting merged articles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance with the dedicated algorithm for its variant.
    Solve(SolveArgs),
    /// Solve an instance by exhaustive enumeration.
    Oracle(SolveArgs),
    /// Encode a source problem as a splitting instance.
    Reduce {
        #[command(subcommand)]
        source: Source,
    },
    /// Write a merged-profile instance built from article titles.
    Gen(GenArgs),
    /// Sweep thresholds and budgets over synthetic authors, writing CSV.
    Experiment(ExperimentArgs),
}

/// Overrides for the problem directives of an instance file.
#[derive(Args, Debug, Default)]
struct ProblemArgs {
    #[arg(long)]
    problem: Option<Operation>,
    #[arg(long)]
    variant: Option<Variant>,
    #[arg(long)]
    measure: Option<Measure>,
    #[arg(long)]
    h: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    problem: ProblemArgs,
    /// Exit with status 1 when the instance is infeasible.
    #[arg(long)]
    expect_feasible: bool,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// Largest part handed to set-partition enumeration.
    #[arg(long, default_value_t = Limits::default().max_partition_elements)]
    max_partition: usize,
    /// Largest number of refinements the oracle may visit.
    #[arg(long, default_value_t = Limits::default().max_refinements)]
    max_refinements: u128,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_partition_elements: self.max_partition,
            max_refinements: self.max_refinements,
            ..Limits::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum Source {
    /// Unary bin packing → cautious dividing under the sum measure.
    Binpacking {
        /// File with `sizes`, `bins` and `capacity` lines.
        #[arg(long = "in", conflicts_with_all = ["sizes", "bins", "capacity"])]
        input: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long)]
        bins: Option<usize>,
        #[arg(long)]
        capacity: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// DIMACS 3-CNF → atomizing under the fusion measure.
    #[command(name = "3sat")]
    Sat {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Edge list and clique size → conservative atomizing under fusion.
    Clique {
        #[arg(long = "in")]
        input: PathBuf,
        /// Clique size.
        #[arg(long)]
        k: usize,
        /// Target operation; extracting and dividing use the cautious budget.
        #[arg(long, default_value = "atomizing")]
        problem: Operation,
        /// Pad clique sizes below 4 with universal vertices.
        #[arg(long)]
        pad: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Instance file supplying citations and the owned articles.
    #[arg(long = "in", requires = "titles")]
    input: Option<PathBuf>,
    /// `<id>\t<title>` per owned article.
    #[arg(long, requires = "input")]
    titles: Option<PathBuf>,
    /// Seed of the synthetic author used when no input is given.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of works of the synthetic author.
    #[arg(long, default_value_t = 15)]
    works: usize,
    #[arg(long, default_value = "0.4")]
    threshold: CompatibilityThreshold,
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of synthetic authors.
    #[arg(long, default_value_t = 20)]
    profiles: usize,
    #[arg(long, default_value_t = 15)]
    works: usize,
    #[arg(long, value_delimiter = ',', default_value = "0.4,0.6,0.8")]
    sweep_t: Vec<CompatibilityThreshold>,
    /// Budget range `lo..hi`, both ends included.
    #[arg(long, default_value = "0..10", value_parser = parse_range)]
    sweep_k: (usize, usize),
    #[arg(long, value_delimiter = ',', default_value = "sum,union")]
    measure: Vec<Measure>,
    #[arg(long, value_delimiter = ',', default_value = "atomizing,extracting,dividing")]
    problem: Vec<Operation>,
    #[arg(long, value_delimiter = ',', default_value = "conservative")]
    variant: Vec<Variant>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    limits: LimitArgs,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s.split_once("..").ok_or("expected lo..hi")?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: usize = lo.parse().map_err(|e| format!("{lo:?}: {e}"))?;
    let hi: usize = hi.parse().map_err(|e| format!("{hi:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn apply(instance: ProblemInstance, args: &ProblemArgs) -> anyhow::Result<ProblemInstance> {
    let operation = args.problem.unwrap_or(instance.operation);
    let variant = args.variant.unwrap_or(instance.variant);
    let k = match (args.k, variant) {
        (Some(k), _) => Some(k),
        (None, Variant::Plain) => None,
        (None, _) => instance.k,
    };
    Ok(instance.with_problem(
        operation,
        variant,
        args.measure.unwrap_or(instance.measure),
        args.h.unwrap_or(instance.h),
        k,
    )?)
}

fn report(instance: &ProblemInstance, result: &SolveResult) -> String {
    let g = &instance.graph;
    let hindex = match &result.refinement {
        Some(r) => Evaluator::new(g).h_index(r.parts(), instance.measure),
        None => h_index(g, &instance.profile, instance.measure),
    };
    let mut out = format!(
        "feasible {}\nmethod {}\nachieved_h {}\noperations_used {}\nparts_changed {}\nhindex {hindex}\n",
        result.feasible,
        result.method.as_str(),
        result.achieved_h,
        result.operations_used,
        result.parts_changed,
    );
    if let Some(r) = &result.refinement {
        for part in r.parts() {
            let ids: Vec<&str> = part.iter().map(|&v| g.id(v).as_str()).collect();
            out.push_str(&format!("part {}\n", ids.join(" ")));
        }
    }
    out
}

fn run_solve(args: &SolveArgs, exhaustive: bool) -> anyhow::Result<ExitCode> {
    let instance = apply(parse_instance(&read(&args.input)?)?, &args.problem)?;
    let limits = args.limits.limits();
    let result = if exhaustive {
        oracle_solve(&instance, &limits)?
    } else {
        solve(&instance, &limits)?
    };
    emit(args.out.as_deref(), &report(&instance, &result))?;
    if args.expect_feasible && !result.feasible {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn warn(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn run_reduce(source: &Source) -> anyhow::Result<ExitCode> {
    let (reduced, out) = match source {
        Source::Binpacking {
            input,
            sizes,
            bins,
            capacity,
            out,
        } => {
            let bp = match input {
                Some(path) => read(path)?.parse::<BinPacking>()?,
                None => BinPacking::new(
                    sizes
                        .clone()
                        .ok_or_else(|| anyhow!("--sizes is required without --in"))?,
                    bins.ok_or_else(|| anyhow!("--bins is required without --in"))?,
                    capacity.ok_or_else(|| anyhow!("--capacity is required without --in"))?,
                )?,
            };
            (reduce_binpacking(&bp)?, out)
        }
        Source::Sat { input, out } => (reduce_3sat(&read(input)?.parse::<CnfFormula>()?)?, out),
        Source::Clique {
            input,
            k,
            problem,
            pad,
            out,
        } => {
            let g = UndirectedGraph::parse_edge_list(&read(input)?)?;
            let options = CliqueOptions {
                operation: *problem,
                pad_small_k: *pad,
            };
            (reduce_clique(&g, *k, options)?, out)
        }
    };
    warn(&reduced.warnings);
    emit(out.as_deref(), &reduced.instance.to_text())?;
    Ok(ExitCode::SUCCESS)
}

fn run_gen(args: &GenArgs) -> anyhow::Result<ExitCode> {
    let (graph, profile) = match (&args.input, &args.titles) {
        (Some(input), Some(titles)) => {
            let (graph, _) = parse_profile(&read(input)?)?;
            let titles = parse_titles(&read(titles)?)?;
            let profile = merge_by_titles(&graph, &titles, args.threshold)?;
            (graph, profile)
        }
        _ => {
            let author = synthetic_author(args.works, args.seed);
            let profile = author.profile(args.threshold)?;
            (author.graph, profile)
        }
    };
    let p = &args.problem;
    let measure = p.measure.unwrap_or(Measure::Union);
    let h = p.h.unwrap_or_else(|| h_index(&graph, &profile, measure) + 1);
    let instance = ProblemInstance::new(
        graph,
        profile,
        p.problem.unwrap_or(Operation::Atomizing),
        p.variant.unwrap_or(Variant::Plain),
        measure,
        h,
        p.k,
    )?;
    emit(args.out.as_deref(), &instance.to_text())?;
    Ok(ExitCode::SUCCESS)
}

fn run_experiment_cmd(args: &ExperimentArgs) -> anyhow::Result<ExitCode> {
    let config = ExperimentConfig {
        thresholds: args.sweep_t.clone(),
        measures: args.measure.clone(),
        operations: args.problem.clone(),
        variants: args.variant.clone(),
        budgets: args.sweep_k.0..=args.sweep_k.1,
        limits: args.limits.limits(),
    };
    if args.profiles == 0 {
        bail!("--profiles must be positive");
    }
    let authors = synthetic_authors(args.profiles, args.works, args.seed);
    let rows = run_experiment(&authors, &config)?;
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf)?;
    emit(args.out.as_deref(), std::str::from_utf8(&buf)?)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Solve(args) => run_solve(args, false),
        Command::Oracle(args) => run_solve(args, true),
        Command::Reduce { source } => run_reduce(source),
        Command::Gen(args) => run_gen(args),
        Command::Experiment(args) => run_experiment_cmd(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::BoundExceeded { .. }) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
