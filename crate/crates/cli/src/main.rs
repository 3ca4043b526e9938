// SPDX-License-Identifier: Apache-2.0

//! `la-sssp`: load a graph, run delta-stepping, print distances.
//!
//! Exit codes: 0 success, 1 load or parse error, 2 verification failure,
//! 3 bad flags.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use la_sssp::io::{GraphFile, GraphFormat};
use la_sssp::selftest::{run_oracle_suite, SuiteConfig, REAL_TOLERANCE};
use la_sssp::sssp::compare_distances;
use la_sssp::{dijkstra_oracle, BackendChoice, DeltaStepping, SparseVector};

const EXIT_LOAD: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "la-sssp", version, about = "Linear-algebraic delta-stepping shortest paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute shortest distances from one source vertex.
    Run(RunArgs),
    /// Check delta-stepping against Dijkstra on random graphs.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    /// Matrix Market coordinate file
    Mtx,
    /// Whitespace-separated `u v [w]` lines
    Edges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Unfused,
    Fused,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Graph file, or `-` for standard input.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "mtx")]
    format: Format,
    /// Edge lists only: keep edges one-way instead of adding the reverse.
    #[arg(long)]
    directed: bool,
    /// Source vertex, as labelled in the file (Matrix Market ids start at 0).
    #[arg(long)]
    source: u64,
    /// Bucket width.
    #[arg(long, default_value_t = 1.0, value_parser = positive_f64)]
    delta: f64,
    #[arg(long, value_enum, default_value = "unfused")]
    backend: Backend,
    /// Worker threads for the fused backend.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    workers: u32,
    /// Index ranges per worker for the fused backend.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    chunks_per_worker: u32,
    /// Compare against Dijkstra and fail on any deviation.
    #[arg(long)]
    verify: bool,
    /// Timed repetitions; the median is reported.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    repeat: u32,
    #[arg(long)]
    skip_empty_buckets: bool,
    /// Write distances here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Perturb one computed distance before verification.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    cases: usize,
    /// Perturb every computed result, so the suite must fail.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(format!("{s} must be positive and finite"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let code = match cli.command {
        Command::Run(args) => run(&args),
        Command::Selftest(args) => selftest(&args),
    };
    match code {
        0 => ExitCode::SUCCESS,
        c => ExitCode::from(c),
    }
}

fn run(args: &RunArgs) -> u8 {
    let format = match args.format {
        Format::Mtx => GraphFormat::MatrixMarket,
        Format::Edges => GraphFormat::EdgeList,
    };
    let mut file = GraphFile::new(&args.graph, format);
    file.directed = args.directed;
    let graph = match file.load() {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {}: {e}", args.graph.display());
            return EXIT_LOAD;
        }
    };
    if graph.self_loops > 0 {
        eprintln!("warning: dropped {} self-loop(s)", graph.self_loops);
    }
    let Some(source) = graph.labels.internal(args.source) else {
        eprintln!("error: source vertex {} does not appear in the graph", args.source);
        return EXIT_USAGE;
    };

    let backend = match args.backend {
        Backend::Unfused => {
            if args.workers > 1 || args.chunks_per_worker > 1 {
                eprintln!("warning: the unfused backend is sequential; --workers and --chunks-per-worker are ignored");
            }
            BackendChoice::unfused()
        }
        Backend::Fused => BackendChoice::fused(args.workers as usize)
            .and_then(|b| b.with_chunks_per_worker(args.chunks_per_worker as usize))
            .expect("flags are validated as positive"),
    };
    let solver = DeltaStepping::new(args.delta)
        .backend(backend)
        .skip_empty_buckets(args.skip_empty_buckets);

    let mut times = Vec::with_capacity(args.repeat as usize);
    let mut last = None;
    for _ in 0..args.repeat {
        match solver.run(&graph.matrix, source) {
            Ok(r) => {
                times.push(r.elapsed);
                last = Some(r);
            }
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        }
    }
    let result = last.expect("repeat is at least 1");
    let distances = if args.inject_fault {
        perturb(&result.distances)
    } else {
        result.distances
    };

    let n = graph.matrix.n();
    let mut summary = vec![
        format!("n: {n}"),
        format!("m: {}", graph.matrix.nnz()),
        format!("delta: {}", args.delta),
        format!("backend: {}", backend.kind),
        format!("workers: {}", backend.workers()),
        format!("outer_iterations: {}", result.outer_iterations),
        format!("inner_phases: {}", result.inner_phases),
        format!("median_wall_time: {:.6}s", median(&mut times).as_secs_f64()),
        format!("repeats: {}", args.repeat),
    ];
    if graph.duplicates > 0 {
        summary.push(format!("duplicates_combined: {}", graph.duplicates));
    }

    let mut verify_failed = false;
    if args.verify {
        let expected = dijkstra_oracle(&graph.matrix, source).expect("source was resolved");
        let cmp = compare_distances(&expected, &distances, REAL_TOLERANCE);
        summary.push(format!("verify_max_abs_deviation: {:e}", cmp.max_abs_deviation));
        summary.push(format!("verify: {}", if cmp.passed() { "ok" } else { "MISMATCH" }));
        for m in cmp.mismatches.iter().take(10) {
            eprintln!("mismatch: {m}");
        }
        verify_failed = !cmp.passed();
    }

    let mut lines: Vec<(u64, f64)> = distances.iter().map(|(i, d)| (graph.labels.external(i), d)).collect();
    lines.sort_by_key(|&(label, _)| label);
    if let Err(e) = write_distances(args.output.as_ref(), &lines) {
        eprintln!("error: writing distances: {e}");
        return EXIT_LOAD;
    }
    for line in summary {
        eprintln!("{line}");
    }
    if verify_failed {
        EXIT_VERIFY
    } else {
        0
    }
}

fn write_distances(path: Option<&PathBuf>, lines: &[(u64, f64)]) -> io::Result<()> {
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut out = BufWriter::new(sink);
    for (label, d) in lines {
        writeln!(out, "{label}\t{d}")?;
    }
    out.flush()
}

fn median(times: &mut [Duration]) -> Duration {
    times.sort();
    times[times.len() / 2]
}

/// Adds one to the last stored distance.
fn perturb(v: &SparseVector) -> SparseVector {
    let mut pairs: Vec<(usize, f64)> = v.iter().collect();
    if let Some(last) = pairs.last_mut() {
        last.1 += 1.0;
    }
    SparseVector::from_pairs(v.len(), pairs).expect("same length")
}

fn selftest(args: &SelftestArgs) -> u8 {
    if args.cases == 0 {
        eprintln!("warning: --cases 0 runs nothing; passing vacuously");
    }
    let mut config = SuiteConfig::new(args.seed, args.cases);
    config.inject_fault = args.inject_fault;
    let report = run_oracle_suite(&config);
    println!(
        "selftest: seed {} cases {} runs {} failures {}",
        args.seed,
        report.cases,
        report.runs,
        report.failures.len()
    );
    for f in report.failures.iter().take(20) {
        println!("FAIL {f}");
    }
    if report.passed() {
        if report.cases > 0 {
            println!("selftest: ok (case seeds {}..{})", args.seed, args.seed.wrapping_add(report.cases as u64));
        }
        0
    } else {
        EXIT_VERIFY
    }
}
