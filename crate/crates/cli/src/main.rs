//! `spantree`: solve, verify, and benchmark spanning-tree maximization.
//!
//! Exit codes: 0 on success, 1 when a verification suite fails, 2 on usage
//! or parse errors.

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use spantree::verify;
use spantree_cli::bench::{rows_to_csv, run_bench};
use spantree_cli::format::InstanceFile;
use spantree_cli::run::{build_report, oracle_compare, solve_instance, Algo};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "spantree", version, about = "Maximize spanning tree counts by edge addition")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a selection algorithm on an instance file and report the result
    Solve {
        /// Instance file (see README for the format)
        #[arg(long)]
        instance: PathBuf,
        /// Algorithm: exact, greedy-th, or nstm
        #[arg(long, default_value = "nstm")]
        algo: String,
        /// Accuracy parameter in (0, 1/2] for greedy-th and nstm
        #[arg(long)]
        eps: Option<f64>,
        /// Budget override (defaults to the instance file's k)
        #[arg(long)]
        k: Option<usize>,
        /// Seed for randomized components
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Compare against the exhaustive oracle when feasible
        #[arg(long)]
        oracle: bool,
        /// Also write the report to a file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format: json or csv
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Run verification suites: formulas, lemmas, approx, schur, resistance
    Verify {
        /// Suites to run (all when omitted)
        suites: Vec<String>,
    },
    /// Measure wall times across sizes and budgets; emits CSV
    Bench {
        /// Comma-separated vertex counts, e.g. 1000,10000
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Comma-separated budgets
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000")]
        ks: Vec<usize>,
        /// Comma-separated algorithms
        #[arg(long, value_delimiter = ',', default_value = "exact,nstm")]
        algos: Vec<String>,
        #[arg(long, default_value_t = 0.3)]
        eps: f64,
        /// Repetitions per configuration
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the CSV to a file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate an instance file
    Gen {
        /// Family: star-plus-path, star-plus-cycle, or random
        #[arg(long)]
        family: String,
        /// Leaf count (reduction families) or vertex count (random)
        #[arg(long)]
        n: usize,
        /// Extra base edges beyond the spanning tree (random only)
        #[arg(long, default_value_t = 0)]
        m_extra: usize,
        /// Candidate count (random only; defaults to n)
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<u8> {
    match cli.cmd {
        Cmd::Solve { instance, algo, eps, k, seed, oracle, out, format } => {
            cmd_solve(instance, algo, eps, k, seed, oracle, out, format)
        }
        Cmd::Verify { suites } => cmd_verify(suites),
        Cmd::Bench { sizes, ks, algos, eps, reps, seed, out } => {
            let algos = algos
                .iter()
                .map(|s| Algo::parse(s))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let rows = run_bench(&sizes, &ks, &algos, eps, reps, seed)?;
            let csv = rows_to_csv(&rows);
            print!("{csv}");
            if let Some(path) = out {
                std::fs::write(path, csv)?;
            }
            Ok(EXIT_OK)
        }
        Cmd::Gen { family, n, m_extra, q, seed, out } => cmd_gen(family, n, m_extra, q, seed, out),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    instance: PathBuf,
    algo: String,
    eps: Option<f64>,
    k: Option<usize>,
    seed: u64,
    oracle: bool,
    out: Option<PathBuf>,
    format: String,
) -> anyhow::Result<u8> {
    let algo = Algo::parse(&algo)?;
    if !matches!(format.as_str(), "json" | "csv") {
        anyhow::bail!("unknown output format `{format}` (expected json or csv)");
    }
    let text = std::fs::read_to_string(&instance)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", instance.display()))?;
    let file = InstanceFile::parse(&text)?;
    let label = instance
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into());
    let mut spec = file.to_spec(&label)?;
    if let Some(k) = k {
        spec = spec.with_k(k)?;
    }
    if let Some(eps) = eps {
        spec = spec.with_eps(eps)?;
    }
    spec = spec.with_seed(seed);

    let (sel, wall_ms) = solve_instance(&spec, algo)?;
    let oracle_report = oracle.then(|| oracle_compare(&spec, &sel));
    let report = build_report(
        &spec,
        Some(instance.display().to_string()),
        algo,
        &sel,
        wall_ms,
        oracle_report,
    );
    let rendered = match format.as_str() {
        "json" => report.to_json(),
        _ => report.to_csv(),
    };
    println!("{rendered}");
    if let Some(path) = out {
        std::fs::write(path, rendered)?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(suites: Vec<String>) -> anyhow::Result<u8> {
    let names: Vec<String> = if suites.is_empty() {
        verify::SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        suites
    };
    for name in &names {
        if verify::suite(name).is_none() {
            anyhow::bail!(
                "unknown suite `{name}` (expected one of: {})",
                verify::SUITES.join(", ")
            );
        }
    }

    let pool = thread_pool()?;
    let outcomes: Vec<(String, Vec<verify::CheckOutcome>)> = pool.install(|| {
        names
            .par_iter()
            .map(|name| (name.clone(), verify::suite(name).unwrap()))
            .collect()
    });

    let mut all_passed = true;
    for (suite_name, checks) in &outcomes {
        for c in checks {
            all_passed &= c.passed;
            println!(
                "[{}] {:<55} {:>7.1} ms  {}",
                if c.passed { "PASS" } else { "FAIL" },
                format!("{suite_name}: {}", c.name),
                c.millis,
                c.details
            );
        }
    }
    Ok(if all_passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_gen(
    family: String,
    n: usize,
    m_extra: usize,
    q: Option<usize>,
    seed: u64,
    out: Option<PathBuf>,
) -> anyhow::Result<u8> {
    use spantree::instances::{gen_random, gen_star_plus};
    let spec = match family.as_str() {
        "star-plus-path" => {
            let path: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
            gen_star_plus(n, &path)?
        }
        "star-plus-cycle" => {
            let mut cyc: Vec<(usize, usize)> =
                (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
            if n >= 3 {
                cyc.push((0, n - 1));
            }
            gen_star_plus(n, &cyc)?
        }
        "random" => gen_random(n, m_extra, q.unwrap_or(n), (1.0, 1.0), seed)?,
        other => anyhow::bail!(
            "unknown family `{other}` (expected star-plus-path, star-plus-cycle, random)"
        ),
    };
    let text = InstanceFile::from_spec(&spec).serialize();
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

/// Worker pool for verification trials, capped by SPANTREE_MAX_THREADS.
fn thread_pool() -> anyhow::Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("SPANTREE_MAX_THREADS") {
        let threads: usize = v
            .parse()
            .map_err(|_| anyhow::anyhow!("SPANTREE_MAX_THREADS must be a positive integer"))?;
        if threads == 0 {
            anyhow::bail!("SPANTREE_MAX_THREADS must be a positive integer");
        }
        builder = builder.num_threads(threads);
    }
    Ok(builder.build()?)
}
