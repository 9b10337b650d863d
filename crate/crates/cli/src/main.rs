use std::fs::File;
use std::io::{BufWriter, Write};
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use tenpoints::bench::{parse_suite, run_suite, CSV_HEADER};
use tenpoints::chirotope::{parse_points, valid_quads, Chirotope, OrderTypeDb};
use tenpoints::engines::{search, Algorithm};
use tenpoints::geomoracle::{crosscheck, sample_config};
use tenpoints::randgen::{gen_grunert, gen_rare, GrunertParams, RareAttractionParams};
use tenpoints::tverberg::{build_h, verify_chirotope, VerifyOutcome, VerifyReport};
use tenpoints::KPartiteGraph;

const EXIT_OK: u8 = 0;
const EXIT_NONE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;

/// k-partite clique search and the ten-point colored Tverberg check.
///
/// Exit status: 0 success, 1 no clique where one was requested (or a failed
/// check), 2 usage or input error, 3 timeout.
#[derive(Parser)]
#[command(name = "tenpoints", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random k-partite graph in KPG format.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Search a KPG graph for k-cliques.
    Solve(SolveArgs),
    /// Run a benchmark suite and emit CSV.
    Bench {
        #[arg(long)]
        suite: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Build or verify the graph H of a ten-point chirotope.
    Tverberg {
        #[command(subcommand)]
        action: TverbergAction,
    },
    /// Compare the chirotope pipeline against exact geometry.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
    /// Inspect a chirotope file.
    Chirotope {
        #[command(subcommand)]
        action: ChirotopeAction,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    Grunert {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        min_p: usize,
        #[arg(long)]
        max_p: usize,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    Rare {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_p: usize,
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ModeFlags {
    /// Print the first clique found.
    #[arg(long)]
    first: bool,
    /// Print every clique and their count.
    #[arg(long)]
    all: bool,
    /// Only report whether a clique exists.
    #[arg(long)]
    any: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, default_value = "kpkc")]
    alg: Algorithm,
    #[command(flatten)]
    mode: ModeFlags,
    /// Search time limit, e.g. `500ms` or `1000s`.
    #[arg(long, value_parser = humantime::parse_duration)]
    timeout: Option<Duration>,
    file: PathBuf,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputFlags {
    /// Ten integer points, one `x y` per line.
    #[arg(long)]
    points: Option<PathBuf>,
    /// A chirotope in text form.
    #[arg(long)]
    chirotope: Option<PathBuf>,
    /// An order-type database of 40-byte records; needs --index or --range.
    #[arg(long)]
    b16: Option<PathBuf>,
    /// The chirotope of ten points in convex position.
    #[arg(long)]
    convex10: bool,
}

#[derive(Args)]
struct Selection {
    #[command(flatten)]
    input: InputFlags,
    #[arg(long, requires = "b16", conflicts_with = "range")]
    index: Option<u64>,
    /// Half-open record range `A..B`.
    #[arg(long, requires = "b16", value_parser = parse_range)]
    range: Option<Range<u64>>,
}

#[derive(Subcommand)]
enum TverbergAction {
    /// Build H and print its statistics.
    Build {
        #[command(flatten)]
        selection: Selection,
        /// Also write H in KPG format (single chirotope only).
        #[arg(long)]
        kpg: Option<PathBuf>,
    },
    /// Build H and search it for a clique with one vertex per part.
    Verify {
        #[command(flatten)]
        selection: Selection,
        #[arg(long, default_value = "kpkc")]
        alg: Algorithm,
        #[arg(long, value_parser = humantime::parse_duration)]
        timeout: Option<Duration>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Report build and search times on standard error.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Subcommand)]
enum OracleAction {
    /// Run the soundness harness on sampled configurations.
    Crosscheck {
        /// Half-open seed range `A..B`.
        #[arg(long, value_parser = parse_range)]
        seeds: Range<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Subcommand)]
enum ChirotopeAction {
    /// Check the axioms and acyclicity of a chirotope file.
    Check { file: PathBuf },
}

fn parse_range(s: &str) -> Result<Range<u64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: u64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..b)
}

fn read_graph(path: &Path) -> Result<KPartiteGraph> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    KPartiteGraph::read_kpg(file).with_context(|| format!("reading {}", path.display()))
}

fn write_graph(g: &KPartiteGraph, path: &Path) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    g.write_kpg_to(file).with_context(|| format!("writing {}", path.display()))
}

fn cmd_gen(family: GenFamily) -> Result<u8> {
    let (g, output) = match family {
        GenFamily::Grunert { k, min_p, max_p, a, b, seed, output } => {
            (gen_grunert(&GrunertParams { k, min_p, max_p, a, b, seed })?, output)
        }
        GenFamily::Rare { k, max_p, a, seed, output } => (gen_rare(&RareAttractionParams { k, max_p, a, seed })?, output),
    };
    write_graph(&g, &output)?;
    eprintln!("wrote {} vertices, {} edges, {} parts", g.n(), g.edge_count(), g.k());
    Ok(EXIT_OK)
}

fn cmd_solve(args: SolveArgs) -> Result<u8> {
    let g = read_graph(&args.file)?;
    let started = Instant::now();
    let mut it = search(&g, args.alg, args.timeout.map(|t| started + t))?;
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let found = if args.mode.all {
        let mut count = 0u64;
        for c in it.by_ref() {
            writeln!(out, "{c}")?;
            count += 1;
        }
        writeln!(out, "cliques {count}")?;
        count > 0
    } else {
        match it.next() {
            Some(c) if args.mode.first => {
                writeln!(out, "{c}")?;
                true
            }
            Some(_) => {
                writeln!(out, "yes")?;
                true
            }
            None if it.timed_out() => false,
            None => {
                writeln!(out, "{}", if args.mode.any { "no" } else { "none" })?;
                false
            }
        }
    };
    out.flush()?;
    eprintln!("{} ms", started.elapsed().as_millis());
    if it.timed_out() {
        eprintln!("timeout");
        return Ok(EXIT_TIMEOUT);
    }
    Ok(if found { EXIT_OK } else { EXIT_NONE })
}

fn cmd_bench(suite: &Path, jobs: usize, csv: Option<PathBuf>) -> Result<u8> {
    let text = std::fs::read_to_string(suite).with_context(|| format!("reading {}", suite.display()))?;
    let suite = parse_suite(&text)?;
    let records = run_suite(&suite, jobs)?;
    let mut out: Box<dyn Write> = match csv {
        Some(path) => Box::new(BufWriter::new(File::create(&path).with_context(|| format!("creating {}", path.display()))?)),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    };
    writeln!(out, "{CSV_HEADER}")?;
    for r in &records {
        writeln!(out, "{}", r.csv_row())?;
    }
    out.flush()?;
    Ok(EXIT_OK)
}

/// A labelled chirotope source.
enum Source {
    Single(String, Chirotope),
    Db(PathBuf, Vec<u64>),
}

fn select(selection: &Selection) -> Result<Source> {
    let input = &selection.input;
    // clap counts a conflicting group member as meeting `requires`
    if input.b16.is_none() && (selection.index.is_some() || selection.range.is_some()) {
        bail!("--index and --range need --b16");
    }
    if input.convex10 {
        return Ok(Source::Single("0".into(), Chirotope::convex(10)));
    }
    if let Some(path) = &input.points {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let pts = parse_points(&text)?;
        return Ok(Source::Single("-".into(), Chirotope::from_points(&pts)?));
    }
    if let Some(path) = &input.chirotope {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(Source::Single("-".into(), Chirotope::parse_text(&text)?));
    }
    let path = input.b16.clone().expect("one input flag is required");
    let indices: Vec<u64> = match (selection.index, &selection.range) {
        (Some(i), None) => vec![i],
        (None, Some(r)) => r.clone().collect(),
        _ => bail!("--b16 needs --index N or --range A..B"),
    };
    Ok(Source::Db(path, indices))
}

fn for_each_chirotope<T: Send>(
    source: Source,
    jobs: usize,
    f: impl Fn(&str, &Chirotope) -> Result<T> + Sync,
) -> Result<Vec<(String, T)>> {
    match source {
        Source::Single(label, chi) => Ok(vec![(label.clone(), f(&label, &chi)?)]),
        Source::Db(path, indices) => {
            OrderTypeDb::open(&path).with_context(|| format!("opening {}", path.display()))?;
            let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
            pool.install(|| {
                indices
                    .par_iter()
                    .map_init(
                        || OrderTypeDb::open(&path),
                        |db, &i| {
                            let db = db.as_mut().map_err(|e| anyhow::anyhow!("{e}"))?;
                            let chi = db.chirotope(i)?;
                            let label = i.to_string();
                            let value = f(&label, &chi)?;
                            Ok((label, value))
                        },
                    )
                    .collect()
            })
        }
    }
}

fn cmd_build(selection: Selection, kpg: Option<PathBuf>) -> Result<u8> {
    let source = select(&selection)?;
    if kpg.is_some() && matches!(&source, Source::Db(_, ids) if ids.len() != 1) {
        bail!("--kpg needs a single chirotope");
    }
    let rows = for_each_chirotope(source, 1, |_, chi| {
        let h = build_h(chi)?;
        if let Some(path) = &kpg {
            write_graph(h.graph(), path)?;
        }
        let g = h.graph();
        let empty = h.empty_quads().len();
        Ok(format!(
            "parts={} vertices={} edges={} color={} empty_quads={empty}",
            g.k(),
            g.n(),
            g.edge_count(),
            h.color_part_size()
        ))
    })?;
    for (label, line) in rows {
        println!("{label} {line}");
    }
    Ok(EXIT_OK)
}

fn cmd_verify(selection: Selection, alg: Algorithm, timeout: Option<Duration>, jobs: usize, verbose: bool) -> Result<u8> {
    let source = select(&selection)?;
    let single = matches!(source, Source::Single(..));
    let reports: Vec<(String, VerifyReport)> =
        for_each_chirotope(source, jobs, |_, chi| Ok(verify_chirotope(chi, alg, timeout)?))?;
    let mut status = EXIT_OK;
    for (label, r) in &reports {
        println!("{}", r.line(label));
        if verbose {
            eprintln!(
                "{label}: build {} ms, search {} ms, empty quads {}",
                r.build_time.as_millis(),
                r.search_time.as_millis(),
                r.empty_quads.len()
            );
        }
        match &r.outcome {
            VerifyOutcome::Counterexample(c) => {
                eprintln!("{label}: clique {c}");
                status = EXIT_NONE;
            }
            VerifyOutcome::Timeout if status == EXIT_OK => status = EXIT_TIMEOUT,
            _ => {}
        }
    }
    if single {
        let r = &reports[0].1;
        println!("parts={} vertices={} edges={}", r.parts, r.vertices, r.edges);
    }
    Ok(status)
}

fn cmd_crosscheck(seeds: Range<u64>, jobs: usize) -> Result<u8> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    let results: Vec<Result<_>> = pool.install(|| {
        seeds
            .clone()
            .into_par_iter()
            .map(|seed| {
                let pts = sample_config(seed)?;
                Ok((seed, crosscheck(&pts, true)?))
            })
            .collect()
    });
    let mut status = EXIT_OK;
    for result in results {
        let (seed, report) = result?;
        let verdict = if report.is_ok() { "ok" } else { "FAIL" };
        println!(
            "{seed} {verdict} quads={} vertices={} partitions={} signs={}",
            report.valid_quads, report.graph_vertices, report.partitions, report.signs_checked
        );
        for failure in &report.failures {
            eprintln!("{seed}: {failure}");
        }
        if !report.is_ok() {
            status = EXIT_NONE;
        }
    }
    Ok(status)
}

fn cmd_chirotope_check(path: &Path) -> Result<u8> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let chi = Chirotope::parse_text(&text)?;
    let axioms = chi.check_axioms();
    let acyclic = axioms.is_ok() && chi.is_acyclic();
    println!("n {}", chi.n());
    println!("axioms {axioms}");
    println!("acyclic {acyclic}");
    if axioms.is_ok() {
        println!("convex {}", chi.is_convex_position());
        if chi.n() == 10 {
            println!("valid_quads {}", valid_quads(&chi).len());
        }
    }
    Ok(if acyclic { EXIT_OK } else { EXIT_NONE })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gen { family } => cmd_gen(family),
        Command::Solve(args) => cmd_solve(args),
        Command::Bench { suite, jobs, csv } => cmd_bench(&suite, jobs, csv),
        Command::Tverberg { action: TverbergAction::Build { selection, kpg } } => cmd_build(selection, kpg),
        Command::Tverberg { action: TverbergAction::Verify { selection, alg, timeout, jobs, verbose } } => {
            cmd_verify(selection, alg, timeout, jobs, verbose)
        }
        Command::Oracle { action: OracleAction::Crosscheck { seeds, jobs } } => cmd_crosscheck(seeds, jobs),
        Command::Chirotope { action: ChirotopeAction::Check { file } } => cmd_chirotope_check(&file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
