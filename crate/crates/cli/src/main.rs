use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mpemc_core::bench::{run_bench, BenchConfig};
use mpemc_core::exact::{exact_mpemc, DEFAULT_EDGE_LIMIT};
use mpemc_core::io::{emit, parse, read_instance, Format};
use mpemc_core::logk::{solve_logk, Gamma, ReduceParams};
use mpemc_core::{gen_random, solve_khalf, verify, BpbmemMode, GenParams, Instance, Solution};

#[derive(Parser)]
#[command(name = "mpemc", version, about = "Minimum-power edge multi-cover solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print the solution as JSON.
    Solve {
        #[arg(long, short, value_enum, default_value_t = SolveAlgorithm::Khalf)]
        algorithm: SolveAlgorithm,
        /// Parameter of the log-k solver, e.g. 2, 1.5 or 3/2.
        #[arg(long, default_value = "2")]
        gamma: Gamma,
        /// Use plain density greedy inside the log-k solver.
        #[arg(long)]
        greedy_only: bool,
        /// Edge cap for the exact solver.
        #[arg(long, default_value_t = DEFAULT_EDGE_LIMIT)]
        limit: usize,
        /// Print the log-k search and iteration trace to stderr.
        #[arg(long, short)]
        verbose: bool,
        #[arg(long, value_enum)]
        format: Option<FileFormat>,
        file: PathBuf,
    },
    /// Print a seeded random instance.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short, default_value_t = 6)]
        nodes: usize,
        #[arg(long, short = 'p', default_value_t = 0.5)]
        edge_probability: f64,
        #[arg(long, default_value_t = 10)]
        max_cost: u64,
        #[arg(long, short, default_value_t = 2)]
        k: u32,
        #[arg(long, value_enum, default_value_t = FileFormat::Text)]
        format: FileFormat,
    },
    /// Check a solution file against an instance.
    Verify {
        instance: PathBuf,
        /// JSON with `chosen`, `power` and `total_power`, as printed by `solve`.
        solution: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FileFormat>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run a benchmark config and print one JSON row per line.
    Bench {
        #[arg(long, short)]
        config: PathBuf,
        /// Leave out elapsed times so reports compare byte for byte.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveAlgorithm {
    Trivial,
    Logk,
    Khalf,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum FileFormat {
    Text,
    Json,
}

impl From<FileFormat> for Format {
    fn from(f: FileFormat) -> Format {
        match f {
            FileFormat::Text => Format::Text,
            FileFormat::Json => Format::Json,
        }
    }
}

type CliResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn load(path: &Path, format: Option<FileFormat>) -> Result<Instance, Box<dyn std::error::Error>> {
    Ok(match format {
        Some(f) => parse(&std::fs::read_to_string(path)?, f.into())?,
        None => read_instance(path)?,
    })
}

fn print_solution(solution: &Solution, extra: &[(&str, serde_json::Value)]) {
    let mut doc = serde_json::to_value(solution).expect("solutions serialize");
    for (key, value) in extra {
        doc[*key] = value.clone();
    }
    println!("{doc}");
}

fn solve(
    algorithm: SolveAlgorithm,
    gamma: Gamma,
    greedy_only: bool,
    limit: usize,
    verbose: bool,
    inst: &Instance,
) -> CliResult {
    match algorithm {
        SolveAlgorithm::Trivial => print_solution(&inst.trivial_cover(), &[]),
        SolveAlgorithm::Exact => print_solution(&exact_mpemc(inst, limit)?, &[]),
        SolveAlgorithm::Khalf => {
            let r = solve_khalf(inst)?;
            if verbose {
                eprintln!(
                    "restricted powers {:?}, cover cost {}, induced {:?}, top-up {:?}",
                    r.restricted.assignment.power, r.restricted.cover_cost, r.induced, r.top_up
                );
            }
            print_solution(&r.solution, &[])
        }
        SolveAlgorithm::Logk => {
            let mode = if greedy_only { BpbmemMode::GreedyOnly } else { BpbmemMode::PartialEnumeration };
            let params = ReduceParams::new(gamma).with_mode(mode);
            let r = solve_logk(inst, &params)?;
            if verbose {
                eprintln!("gamma {gamma}, theta {}, iterations {}", params.theta(), r.iterations);
                for p in &r.probes {
                    eprintln!("probe tau={} {}", p.tau, if p.success { "ok" } else { "too small" });
                }
                for s in &r.trace {
                    eprintln!(
                        "step {} tau={} R={} -> {}",
                        s.step, s.tau, s.potential_before, s.potential_after
                    );
                }
                eprintln!("tau={} bipartite power={}", r.tau, r.bipartite_power);
            }
            print_solution(
                &r.solution,
                &[("tau", r.tau.into()), ("iterations", r.iterations.into())],
            )
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Solve { algorithm, gamma, greedy_only, limit, verbose, format, file } => {
            let inst = load(&file, format)?;
            solve(algorithm, gamma, greedy_only, limit, verbose, &inst)
        }
        Command::Gen { seed, nodes, edge_probability, max_cost, k, format } => {
            let params = GenParams { nodes, edge_probability, max_cost, k };
            print!("{}", emit(&gen_random(seed, &params)?, format.into()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { instance, solution, format, json } => {
            let inst = load(&instance, format)?;
            let sol: Solution = serde_json::from_str(&std::fs::read_to_string(solution)?)?;
            let report = verify(&inst, &sol);
            if json {
                println!("{}", serde_json::to_string(&report)?);
            } else {
                for n in &report.nodes {
                    println!(
                        "node {}: r={} degree={} power={}",
                        n.node, n.requirement, n.degree, n.power
                    );
                }
                println!("total power {}", report.total_power);
                for issue in &report.issues {
                    println!("violation: {issue}");
                }
                println!("{}", if report.is_ok() { "ok" } else { "FAILED" });
            }
            Ok(if report.is_ok() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Bench { config, no_timing } => {
            let config: BenchConfig = serde_json::from_str(&std::fs::read_to_string(config)?)?;
            let report = run_bench(&config)?;
            let report = if no_timing { report.without_timing() } else { report };
            print!("{}", report.to_json_lines());
            let failures = report.failures().count();
            eprintln!("{} rows, {failures} failures", report.rows.len());
            Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
