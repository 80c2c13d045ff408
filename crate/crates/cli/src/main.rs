use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, ValueEnum};
use serde::Serialize;

use lhcds::bounds::{to_f64, Rational};
use lhcds::clique::{enumerate_cliques, InstanceSet};
use lhcds::graph::{parse_edge_list_with_stats, Graph};
use lhcds::oracle::oracle_lhcds_of;
use lhcds::pattern::{enumerate_patterns, PatternId};
use lhcds::pipeline::{run_instances, PipelineConfig, RunStats, VerifyMode};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Verify {
    Basic,
    Fast,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Output {
    Json,
    Tsv,
}

/// Top-k locally densest subgraphs by h-clique or 4-vertex pattern density.
#[derive(Debug, Parser)]
#[command(name = "lhcds", version)]
struct Args {
    /// Edge list, one "u v" pair per line; '#' and '%' start comments.
    #[arg(long)]
    input: PathBuf,
    /// Clique size.
    #[arg(long, default_value_t = 3)]
    h: usize,
    /// Number of subgraphs to report.
    #[arg(long, default_value_t = 5)]
    k: usize,
    /// Convex-program rounds per proposal.
    #[arg(long, default_value_t = 20)]
    iterations: usize,
    #[arg(long, value_enum, default_value_t = Verify::Fast)]
    verify: Verify,
    /// Count a 4-vertex pattern instead of h-cliques: 3star, 4path,
    /// tailed-triangle, 4loop, diamond or 4clique.
    #[arg(long)]
    pattern: Option<PatternId>,
    #[arg(long, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Answer by exhaustive search instead (at most 12 vertices).
    #[arg(long)]
    oracle: bool,
    /// Print run counters to stderr.
    #[arg(long)]
    stats: bool,
    /// Report every locally densest subgraph, ignoring --k.
    #[arg(long)]
    all: bool,
}

#[derive(Debug, Serialize)]
struct Record {
    rank: usize,
    vertices: Vec<u64>,
    count: u64,
    density: String,
    density_decimal: f64,
}

impl Record {
    fn new(rank: usize, vertices: Vec<u64>, count: u64) -> Record {
        let size = vertices.len();
        Record {
            rank,
            density: format!("{count}/{size}"),
            density_decimal: to_f64(&Rational::new(count as i128, size as i128)),
            vertices,
            count,
        }
    }
}

fn oracle_records(g: &Graph, cs: &InstanceSet, limit: Option<usize>) -> Result<Vec<Record>> {
    let found = oracle_lhcds_of(g, cs)?;
    let limit = limit.unwrap_or(found.len());
    Ok(found
        .into_iter()
        .take(limit)
        .enumerate()
        .map(|(i, (s, _))| {
            let labels = s.iter().map(|v| g.label(v)).collect();
            Record::new(i + 1, labels, cs.count_in_set(&s))
        })
        .collect())
}

fn write_records(out: &mut impl Write, records: &[Record], format: Output) -> Result<()> {
    match format {
        Output::Json => {
            serde_json::to_writer_pretty(&mut *out, records)?;
            writeln!(out)?;
        }
        Output::Tsv => {
            writeln!(out, "rank\tvertices\tcount\tdensity\tdensity_decimal")?;
            for r in records {
                let vertices: Vec<String> = r.vertices.iter().map(u64::to_string).collect();
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}",
                    r.rank,
                    vertices.join(","),
                    r.count,
                    r.density,
                    r.density_decimal
                )?;
            }
        }
    }
    Ok(())
}

fn report_stats(stats: &RunStats, g: &Graph, started: Instant) {
    let wall = started.elapsed().as_secs_f64();
    eprintln!("vertices\t{}", g.n());
    eprintln!("edges\t{}", g.m());
    eprintln!("instances\t{}", stats.instances);
    eprintln!("rounds\t{}", stats.rounds);
    eprintln!("candidates_popped\t{}", stats.candidates_popped);
    eprintln!("densest_checks\t{}", stats.densest_checks);
    eprintln!("splits\t{}", stats.splits);
    eprintln!("verify_calls\t{}", stats.verify_calls);
    eprintln!("flow_calls\t{}", stats.flow_calls);
    eprintln!("verify_flow_nodes\t{}", stats.verify_flow_nodes);
    eprintln!("verify_seconds\t{:.6}", stats.verify_time.as_secs_f64());
    eprintln!("wall_seconds\t{wall:.6}");
}

fn run(args: &Args) -> Result<()> {
    let started = Instant::now();
    let file =
        File::open(&args.input).with_context(|| format!("cannot open {}", args.input.display()))?;
    let (g, ingest) = parse_edge_list_with_stats(BufReader::new(file))
        .with_context(|| format!("cannot parse {}", args.input.display()))?;

    let cfg = PipelineConfig {
        h: if args.pattern.is_some() { 4 } else { args.h },
        k: args.k,
        iterations: args.iterations,
        verify: match args.verify {
            Verify::Basic => VerifyMode::Basic,
            Verify::Fast => VerifyMode::Fast,
        },
        emit_all: args.all,
    };
    cfg.validate()?;
    let cs = match args.pattern {
        Some(p) => enumerate_patterns(&g, p)?.instances,
        None => enumerate_cliques(&g, cfg.h)?,
    };

    let records = if args.oracle {
        let limit = (!args.all).then_some(args.k);
        let records = oracle_records(&g, &cs, limit)?;
        if args.stats {
            let stats = RunStats {
                instances: cs.len(),
                ..RunStats::default()
            };
            report_stats(&stats, &g, started);
        }
        records
    } else {
        let (found, stats) = run_instances(&g, &cs, &cfg, &mut ())?;
        if args.stats {
            report_stats(&stats, &g, started);
        }
        found
            .into_iter()
            .map(|r| Record::new(r.rank, r.labels, r.count))
            .collect()
    };
    if args.stats {
        eprintln!("self_loops_dropped\t{}", ingest.self_loops);
        eprintln!("duplicate_edges_dropped\t{}", ingest.duplicate_edges);
    }

    let stdout = io::stdout();
    let mut out = stdout.lock();
    write_records(&mut out, &records, args.output)?;
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    match run(&Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
