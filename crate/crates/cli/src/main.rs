//! Batch front end: graph generation, parking-function checks, oracle
//! counts, preference flips, formula evaluation, verification suites, and
//! the star crossover scan.
//!
//! Exit codes: 0 success/pass, 1 verdict fail, 2 usage error, 3 budget
//! exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use parklot::counting::{
    count_by_root_preference, count_case3a, count_first_pair, count_pf, Count, CountError,
    CountOptions, CountRecord, PairMode,
};
use parklot::digraph::{build_star, build_tree, DiGraph, Orientation, VertexId};
use parklot::flip::flip_star;
use parklot::formulas::{
    binomial, bounds, classical_count, falling, lemma_precise_holds, lemma_premaxbound_holds,
    rising, sink_star_count, source_star_count, star_pair_partition, thm_star_comparison,
    Comparison, FormulaValue,
};
use parklot::parking::{is_parking_function, PrefSeq};
use parklot::samples;
use parklot::verify::{
    find_crossover, generate_crudebound_instances, suite_crudebounds, suite_full_capacity,
    suite_partition_identities, suite_sparse_tree, suite_star_exact, SuiteReport,
};

#[derive(Parser)]
#[command(name = "parklot", version, about = "Exact parking-function toolkit for directed trees and stars")]
struct Cli {
    /// Worker threads for counting (also: PARKLOT_THREADS). Default: all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output format for results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Omit timing fields so identical runs are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a graph file for a star, path, spider, or explicit tree.
    Gen(GenArgs),
    /// Decide whether a sequence is a parking function; prints a witness.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        seq: String,
    },
    /// Count parking functions, optionally under a filter.
    Count {
        #[arg(long)]
        graph: PathBuf,
        #[arg(short)]
        m: usize,
        /// One of: root-prefs=K | first-pair=I,J | case3a
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value_t = parklot::counting::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Apply the tree's flip involution to a preference sequence.
    Flip {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        seq: String,
    },
    /// Evaluate a named closed form or inequality.
    Formula {
        /// falling | rising | binomial | classical | sink-star | source-star |
        /// bounds | star-pair | lemma-precise | lemma-premaxbound | thm-star
        #[arg(long)]
        name: String,
        /// Comma-separated arguments, e.g. `7,4,2` or `7,4,2,sink`.
        #[arg(long)]
        args: String,
    },
    /// Run a verification suite and print its report.
    Verify {
        /// star-exact | full-capacity | sparse-tree | partition-identities |
        /// crudebounds
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        max_m: Option<usize>,
        /// Star size for partition-identities.
        #[arg(long)]
        n: Option<usize>,
        /// Car count for partition-identities.
        #[arg(short)]
        m: Option<usize>,
        /// Also probe the looser starlike bound on spiders (informational).
        #[arg(long)]
        starlike: bool,
        #[arg(long, default_value_t = parklot::counting::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Scan for the smallest m where the source star overtakes the sink star.
    Crossover {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = parklot::counting::DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Args)]
struct GenArgs {
    /// star | path | spider | tree
    #[arg(long)]
    shape: String,
    #[arg(long)]
    n: Option<usize>,
    /// Spider leg lengths, e.g. `2,2,3`.
    #[arg(long)]
    legs: Option<String>,
    /// Undirected tree edges, e.g. `1-2,2-3`.
    #[arg(long)]
    edges: Option<String>,
    #[arg(long, default_value_t = 1)]
    root: VertexId,
    #[arg(long)]
    orient: String,
    /// Output path; stdout when omitted.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli
        .threads
        .or_else(|| std::env::var("PARKLOT_THREADS").ok().and_then(|s| s.parse().ok()))
    {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("parklot: could not configure {threads} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("parklot: {err:#}");
            if is_budget_error(&err) {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn is_budget_error(err: &anyhow::Error) -> bool {
    err.chain().any(|cause| {
        matches!(
            cause.downcast_ref::<CountError>(),
            Some(CountError::BudgetExceeded { .. })
        )
    })
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.cmd {
        Cmd::Gen(args) => gen(args),
        Cmd::Check { graph, seq } => check(cli, graph, seq),
        Cmd::Count {
            graph,
            m,
            filter,
            budget,
        } => count(cli, graph, *m, filter.as_deref(), *budget),
        Cmd::Flip { graph, seq } => flip(cli, graph, seq),
        Cmd::Formula { name, args } => formula(cli, name, args),
        Cmd::Verify {
            suite,
            max_n,
            max_m,
            n,
            m,
            starlike,
            budget,
        } => verify(cli, suite, *max_n, *max_m, *n, *m, *starlike, *budget),
        Cmd::Crossover { n, budget } => crossover(cli, *n, *budget),
    }
}

fn load_graph(path: &PathBuf) -> Result<DiGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    DiGraph::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn parse_seq(s: &str) -> Result<PrefSeq> {
    PrefSeq::from_str(s).map_err(|e| anyhow!("{e}"))
}

fn gen(args: &GenArgs) -> Result<u8> {
    let orient: Orientation = args
        .orient
        .parse()
        .map_err(|e: String| anyhow!("--orient: {e}"))?;
    let g = match args.shape.as_str() {
        "star" => {
            let n = args.n.context("--shape star needs --n")?;
            build_star(n, orient)?
        }
        "path" => {
            let n = args.n.context("--shape path needs --n")?;
            samples::path(n, orient)
        }
        "spider" => {
            let legs: Vec<usize> = args
                .legs
                .as_deref()
                .context("--shape spider needs --legs")?
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| anyhow!("bad leg length `{t}`")))
                .collect::<Result<_>>()?;
            if legs.is_empty() || legs.contains(&0) {
                bail!("leg lengths must be positive");
            }
            samples::spider(&legs, orient)
        }
        "tree" => {
            let n = args.n.context("--shape tree needs --n")?;
            let edges = parse_edges(args.edges.as_deref().context("--shape tree needs --edges")?)?;
            build_tree(n, &edges, args.root, orient)?
        }
        other => bail!("unknown shape `{other}` (star | path | spider | tree)"),
    };
    let text = g.to_text()?;
    match &args.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn parse_edges(s: &str) -> Result<Vec<(VertexId, VertexId)>> {
    s.split(',')
        .map(|tok| {
            let (a, b) = tok
                .trim()
                .split_once('-')
                .with_context(|| format!("edge `{tok}` is not `u-v`"))?;
            Ok((
                a.trim().parse().map_err(|_| anyhow!("bad vertex `{a}`"))?,
                b.trim().parse().map_err(|_| anyhow!("bad vertex `{b}`"))?,
            ))
        })
        .collect()
}

fn check(cli: &Cli, graph: &PathBuf, seq: &str) -> Result<u8> {
    let g = load_graph(graph)?;
    let s = parse_seq(seq)?;
    let witness = is_parking_function(&g, &s)?;
    match cli.format {
        Format::Json => {
            let out = serde_json::json!({
                "graph_hash": parklot::counting::graph_hash(&g),
                "seq": s.to_string(),
                "parking_function": witness.is_some(),
                "witness": witness.as_ref().map(|w| w.parked_at().to_vec()),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        _ => match &witness {
            Some(w) => {
                println!("true");
                let spots: Vec<String> =
                    w.parked_at().iter().map(|v| v.to_string()).collect();
                println!("witness: {}", spots.join(","));
            }
            None => println!("false"),
        },
    }
    Ok(if witness.is_some() { 0 } else { 1 })
}

fn count(cli: &Cli, graph: &PathBuf, m: usize, filter: Option<&str>, budget: u64) -> Result<u8> {
    let g = load_graph(graph)?;
    let opts = CountOptions { budget };
    let (label, value): (String, Count) = match filter {
        None => ("all".into(), count_pf(&g, m, &opts)?),
        Some(f) => {
            if f == "case3a" {
                ("case3a".into(), count_case3a(&g, m, &opts)?)
            } else if let Some(k) = f.strip_prefix("root-prefs=") {
                let k: usize = k.parse().with_context(|| format!("bad filter `{f}`"))?;
                let counts = count_by_root_preference(&g, m, &opts)?;
                let value = counts
                    .get(k)
                    .cloned()
                    .with_context(|| format!("k={k} exceeds m={m}"))?;
                (format!("root-prefs={k}"), value)
            } else if let Some(pair) = f.strip_prefix("first-pair=") {
                let (i, j) = pair
                    .split_once(',')
                    .with_context(|| format!("bad filter `{f}`"))?;
                let i: usize = i.trim().parse().with_context(|| format!("bad car `{i}`"))?;
                let j: usize = j.trim().parse().with_context(|| format!("bad car `{j}`"))?;
                let mode = match g.orientation() {
                    Some(Orientation::Source) => PairMode::RootPair,
                    Some(Orientation::Sink) => PairMode::LeafCollision,
                    None => bail!("first-pair needs an orientation-tagged tree"),
                };
                let label = format!(
                    "first-pair={i},{j} ({})",
                    match mode {
                        PairMode::RootPair => "root-pair",
                        PairMode::LeafCollision => "leaf-collision",
                    }
                );
                (label, count_first_pair(&g, m, i, j, mode, &opts)?)
            } else {
                bail!("unknown filter `{f}` (root-prefs=K | first-pair=I,J | case3a)");
            }
        }
    };
    match cli.format {
        Format::Json => {
            let rec = CountRecord::new(&g, m, label, &value);
            println!("{}", serde_json::to_string_pretty(&rec)?);
        }
        Format::Csv => {
            println!("graph_hash,m,filter,count");
            println!("{},{m},{label},{value}", parklot::counting::graph_hash(&g));
        }
        Format::Table => println!("{value}"),
    }
    Ok(0)
}

fn flip(cli: &Cli, graph: &PathBuf, seq: &str) -> Result<u8> {
    let g = load_graph(graph)?;
    let s = parse_seq(seq)?;
    let flipped = flip_star(&g, &s)?;
    match cli.format {
        Format::Json => {
            let out = serde_json::json!({
                "graph_hash": parklot::counting::graph_hash(&g),
                "seq": s.to_string(),
                "flipped": flipped.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        _ => println!("{flipped}"),
    }
    Ok(0)
}

fn formula(cli: &Cli, name: &str, args: &str) -> Result<u8> {
    let parts: Vec<&str> = args.split(',').map(str::trim).collect();
    let num = |idx: usize| -> Result<u64> {
        parts
            .get(idx)
            .with_context(|| format!("`{name}` needs more arguments"))?
            .parse()
            .map_err(|_| anyhow!("bad integer `{}`", parts[idx]))
    };
    enum Out {
        Value(Count),
        Triple(Count, Count, Count),
        Cmp(Comparison),
    }
    let out = match name {
        "falling" => Out::Value(falling(num(0)?, num(1)?)),
        "rising" => Out::Value(rising(num(0)?, num(1)?)),
        "binomial" => Out::Value(binomial(num(0)?, num(1)?)),
        "classical" => Out::Value(classical_count(num(0)?, num(1)?)?),
        "sink-star" => Out::Value(sink_star_count(num(0)?, num(1)?)?),
        "source-star" => Out::Value(source_star_count(num(0)?, num(1)?)?),
        "bounds" => {
            let (lp, ky, up) = bounds(num(0)?, num(1)?)?;
            Out::Triple(lp, ky, up)
        }
        "star-pair" => {
            let side: Orientation = parts
                .get(3)
                .context("star-pair needs n,m,j,side")?
                .parse()
                .map_err(|e: String| anyhow!(e))?;
            Out::Value(star_pair_partition(num(0)?, num(1)?, num(2)?, side)?)
        }
        "lemma-precise" => Out::Cmp(lemma_precise_holds(num(0)?, num(1)?, num(2)?)),
        "lemma-premaxbound" => Out::Cmp(lemma_premaxbound_holds(num(0)?, num(1)?)),
        "thm-star" => {
            let r = if parts.len() > 2 { Some(num(2)?) } else { None };
            Out::Cmp(thm_star_comparison(num(0)?, num(1)?, r))
        }
        other => bail!("unknown formula `{other}`"),
    };
    let provenance = format!("{name}({args})");
    match (cli.format, out) {
        (Format::Json, Out::Value(v)) => {
            let fv = FormulaValue {
                value: v,
                provenance,
            };
            println!(
                "{}",
                serde_json::json!({"formula": fv.provenance, "value": fv.value.to_string()})
            );
        }
        (_, Out::Value(v)) => println!("{v}"),
        (Format::Json, Out::Triple(lp, ky, up)) => println!(
            "{}",
            serde_json::json!({
                "formula": provenance,
                "sink_lower": lp.to_string(),
                "source_lower": ky.to_string(),
                "upper": up.to_string(),
            })
        ),
        (_, Out::Triple(lp, ky, up)) => {
            println!("sink_lower={lp} source_lower={ky} upper={up}")
        }
        (Format::Json, Out::Cmp(c)) => println!(
            "{}",
            serde_json::json!({
                "formula": provenance,
                "lhs": c.lhs.to_string(),
                "rhs": c.rhs.to_string(),
                "holds": c.holds,
                "in_hypothesis": c.in_hypothesis,
            })
        ),
        (_, Out::Cmp(c)) => println!(
            "lhs={} rhs={} holds={} in_hypothesis={}",
            c.lhs, c.rhs, c.holds, c.in_hypothesis
        ),
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    cli: &Cli,
    suite: &str,
    max_n: Option<usize>,
    max_m: Option<usize>,
    n: Option<usize>,
    m: Option<usize>,
    starlike: bool,
    budget: u64,
) -> Result<u8> {
    let opts = CountOptions { budget };
    let report = match suite {
        "star-exact" => suite_star_exact(max_n.unwrap_or(6), &opts)?,
        "full-capacity" => suite_full_capacity(max_n.unwrap_or(6), &opts)?,
        "sparse-tree" => {
            suite_sparse_tree(max_n.unwrap_or(7), max_m.unwrap_or(3), starlike, &opts)?
        }
        "partition-identities" => {
            suite_partition_identities(n.unwrap_or(5), m.unwrap_or(3), &opts)?
        }
        "crudebounds" => {
            let instances = generate_crudebound_instances(max_n.unwrap_or(7))?;
            suite_crudebounds(&instances, &opts)?
        }
        other => bail!(
            "unknown suite `{other}` (star-exact | full-capacity | sparse-tree | \
             partition-identities | crudebounds)"
        ),
    };
    let report = if cli.no_timing {
        SuiteReport {
            elapsed_ms: None,
            ..report
        }
    } else {
        report
    };
    match cli.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Csv => print!("{}", report.render_csv()),
        Format::Table => print!("{}", report.render_table()),
    }
    Ok(if report.passed { 0 } else { 1 })
}

fn crossover(cli: &Cli, n: u64, budget: u64) -> Result<u8> {
    let opts = CountOptions { budget };
    let scan = find_crossover(n, &opts)?;
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&scan)?),
        Format::Csv => {
            println!("m,sink,source");
            for row in &scan.rows {
                println!("{},{},{}", row.m, row.sink, row.source);
            }
        }
        Format::Table => {
            println!("{:>4} {:>24} {:>24}", "m", "sink", "source");
            for row in &scan.rows {
                println!("{:>4} {:>24} {:>24}", row.m, row.sink, row.source);
            }
            match scan.crossover_m {
                Some(m) => println!(
                    "crossover at m = {m}{}",
                    if scan.oracle_confirmed {
                        " (oracle-confirmed)"
                    } else {
                        ""
                    }
                ),
                None => println!("no crossover for n = {n}"),
            }
        }
    }
    Ok(0)
}
