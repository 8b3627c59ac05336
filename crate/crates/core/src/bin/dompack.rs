use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use dompack::harness::{self, CorpusItem, EvalOptions, GraphClass, InputFormat, ScanSpec, ScanStatus};
use dompack::io::write_edge_list_with_orderings;
use dompack::solvers::DEFAULT_BUDGET;

/// Exact domination and packing numbers, class certificates and conjecture scans.
#[derive(Parser)]
#[command(name = "dompack", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// γ and ρ with witnesses for every input graph.
    Compute(InputArgs),
    /// Run the class pipeline and verify every certificate it emits.
    Certify(InputArgs),
    /// Print the structural decomposition of each input graph as JSON.
    Decompose(InputArgs),
    /// Write seeded graphs of a family.
    Generate(GenerateArgs),
    /// Evaluate the predicate registry over a generated or supplied corpus.
    Scan(ScanArgs),
    /// Run a named experiment: bicubic-small, tight-family, mop-bound, biconvex-bound.
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct Common {
    /// Node budget for each exact solve.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads (defaults to available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Evaluate conjectures on every connected graph, not only their stated classes.
    #[arg(long)]
    unrestricted: bool,
    /// Comma-separated predicate names (default: all registered).
    #[arg(long, value_delimiter = ',')]
    predicates: Option<Vec<String>>,
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "graph6")]
    format: InputFormat,
    #[arg(long, default_value = "any")]
    class: GraphClass,
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    eval: EvalArgs,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    class: GraphClass,
    /// Order of each graph (k for tight, side length for rook).
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    samples: usize,
    #[arg(long, default_value = "graph6")]
    format: InputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    /// Scan graphs from a file instead of generating them.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value = "graph6")]
    format: InputFormat,
    #[arg(long, default_value = "any")]
    class: GraphClass,
    /// Size range `LO..HI` (inclusive) or a single size.
    #[arg(long)]
    n: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, conflicts_with = "exhaustive")]
    samples: Option<usize>,
    /// Enumerate every graph of the class in the size range.
    #[arg(long)]
    exhaustive: bool,
    /// Directory for counterexample dumps.
    #[arg(long, default_value = "counterexamples")]
    dump: PathBuf,
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    eval: EvalArgs,
}

#[derive(Args)]
struct ReproduceArgs {
    name: String,
    /// Extra graph6 corpus (the n = 14 bicubic graphs for bicubic-small).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value = "counterexamples")]
    dump: PathBuf,
    #[command(flatten)]
    common: Common,
}

impl Common {
    fn jobs(&self) -> usize {
        self.jobs.unwrap_or_else(harness::default_jobs)
    }

    fn sink(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => Box::new(io::BufWriter::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?)),
            None => Box::new(io::stdout().lock()),
        })
    }
}

impl EvalArgs {
    fn options(&self, budget: u64) -> Result<EvalOptions> {
        if let Some(names) = &self.predicates {
            harness::validate_predicates(names)?;
        }
        Ok(EvalOptions { budget, unrestricted: self.unrestricted, predicates: self.predicates.clone() })
    }
}

fn read_items(path: &Path, format: InputFormat, class: GraphClass) -> Result<Vec<CorpusItem>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let label = path.file_stem().map_or("input".into(), |s| s.to_string_lossy().into_owned());
    Ok(harness::read_corpus(&text, format, class, &label)?)
}

fn parse_sizes(text: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let parse = |s: &str| s.trim().parse::<usize>().with_context(|| format!("bad size `{s}`"));
    match text.split_once("..") {
        Some((lo, hi)) => Ok(parse(lo)?..=parse(hi.trim_start_matches('='))?),
        None => {
            let n = parse(text)?;
            Ok(n..=n)
        }
    }
}

fn report_status(status: ScanStatus, summary: &dompack::io::ScanSummary, dumps: usize) -> ExitCode {
    eprintln!(
        "{} records, {} solved, {} inconclusive, {} theorem failures, {} conjecture violations, {} dumps",
        summary.records, summary.solved, summary.inconclusive, summary.theorem_failures, summary.conjecture_violations, dumps
    );
    ExitCode::from(status.exit_code() as u8)
}

fn compute(a: InputArgs) -> Result<ExitCode> {
    let items = read_items(&a.input, a.format, a.class)?;
    let opts = a.eval.options(a.common.budget)?;
    let out = harness::run_scan(&items, &opts, a.common.jobs(), a.common.sink()?, None)?;
    Ok(report_status(out.status(), &out.summary, 0))
}

fn certify(a: InputArgs) -> Result<ExitCode> {
    let items = read_items(&a.input, a.format, a.class)?;
    let mut sink = a.common.sink()?;
    let mut failed = false;
    for it in &items {
        let rep = harness::certify(&it.graph, a.class, it.ordering.as_ref(), a.common.budget).with_context(|| format!("graph {}", it.id))?;
        failed |= !rep.passed();
        serde_json::to_writer(&mut sink, &serde_json::json!({"graph_id": it.id, "passed": rep.passed(), "report": rep}))?;
        writeln!(sink)?;
    }
    sink.flush()?;
    Ok(if failed { ExitCode::from(ScanStatus::TheoremFailure.exit_code() as u8) } else { ExitCode::SUCCESS })
}

fn decompose(a: InputArgs) -> Result<ExitCode> {
    let items = read_items(&a.input, a.format, a.class)?;
    let mut sink = a.common.sink()?;
    for it in &items {
        let mut v = harness::decompose(&it.graph, a.class, it.ordering.as_ref()).with_context(|| format!("graph {}", it.id))?;
        v["graph_id"] = it.id.clone().into();
        serde_json::to_writer(&mut sink, &v)?;
        writeln!(sink)?;
    }
    sink.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn generate(a: GenerateArgs) -> Result<ExitCode> {
    let items = harness::generate(a.class, a.n, a.seed, a.samples)?;
    let mut text = String::new();
    match a.format {
        InputFormat::Graph6 => {
            for it in &items {
                text.push_str(&harness::write_graph6_item(it)?);
            }
        }
        InputFormat::EdgeList => {
            let [it] = &items[..] else {
                bail!("an edge-list file holds one graph; got {} (use --samples 1)", items.len());
            };
            text = write_edge_list_with_orderings(&it.graph, it.ordering.as_ref().map(Into::into).as_ref());
        }
    }
    match &a.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn scan(a: ScanArgs) -> Result<ExitCode> {
    let opts = a.eval.options(a.common.budget)?;
    let jobs = a.common.jobs();
    let items = match &a.input {
        Some(path) => read_items(path, a.format, a.class)?,
        None => {
            let mut spec = ScanSpec::for_class(a.class);
            if let Some(n) = &a.n {
                spec.sizes = parse_sizes(n)?;
            }
            spec.seed = a.seed;
            spec.jobs = jobs;
            if a.exhaustive {
                spec.samples = None;
            } else if a.samples.is_some() {
                spec.samples = a.samples;
            }
            spec.options = opts.clone();
            harness::build_corpus(&spec)?
        }
    };
    let out = harness::run_scan(&items, &opts, jobs, a.common.sink()?, Some(&a.dump))?;
    for d in &out.dumps {
        eprintln!("counterexample dump: {}", d.display());
    }
    Ok(report_status(out.status(), &out.summary, out.dumps.len()))
}

fn reproduce(a: ReproduceArgs) -> Result<ExitCode> {
    let extra = match &a.input {
        Some(p) => Some(fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?),
        None => None,
    };
    let out = harness::reproduce(&a.name, extra.as_deref(), a.common.jobs(), a.common.budget, a.common.sink()?, Some(&a.dump))?;
    Ok(report_status(out.status(), &out.summary, out.dumps.len()))
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
        Command::Compute(a) => compute(a),
        Command::Certify(a) => certify(a),
        Command::Decompose(a) => decompose(a),
        Command::Generate(a) => generate(a),
        Command::Scan(a) => scan(a),
        Command::Reproduce(a) => reproduce(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(1)
    })
}
