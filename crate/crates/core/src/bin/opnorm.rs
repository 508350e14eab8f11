use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use opnorm::bench::{fit_growth, run_bench, write_csv, BenchConfig, BenchEntry, RowRule};
use opnorm::cli::{check_report, closed_form, hardness_report, norm_report, PairSelection};
use opnorm::io::{format_g17, parse_graph, parse_matrix_csv};
use opnorm::{Error, NormOptions, NormPair};

/// Induced matrix norms for p, q in {1, 2, inf}.
#[derive(Debug, Parser)]
#[command(name = "opnorm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute one induced norm, or the full 3x3 table.
    Norm {
        /// Matrix CSV file.
        #[arg(long)]
        input: PathBuf,
        /// `p,q` with p, q in {1, 2, inf}, or `all`.
        #[arg(long)]
        pq: PairSelection,
        /// Also print the witness vector.
        #[arg(long)]
        witness: bool,
        /// Allow sign enumerations beyond 2^30 vectors.
        #[arg(long)]
        force: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Compare every closed-form norm with a sampling lower bound.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Decide a max-cut threshold through the (inf,2)-norm.
    Hardness {
        /// Graph file: vertex count, then one `i j` edge per line.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        threshold: u64,
        /// Confirm by enumerating the quadratic form directly.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Time one norm over a range of sizes and write CSV.
    Bench {
        #[arg(long)]
        pq: NormPair,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Row count: `square` or a fixed number.
        #[arg(long, default_value = "square")]
        m_rule: RowRule,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

/// Failure carrying the process exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.exit_code() as u8,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Norm {
            input,
            pq,
            witness,
            force,
            threads,
        } => {
            let a = parse_matrix_csv(&read(&input)?)?;
            let opts = NormOptions { force, threads };
            print!("{}", norm_report(&a, pq, witness, &opts)?);
        }
        Command::Check {
            input,
            samples,
            seed,
        } => {
            let a = parse_matrix_csv(&read(&input)?)?;
            let report = check_report(&a, samples, seed, closed_form(NormOptions::default()))?;
            print!("{}", report.text);
            if !report.ok() {
                return Err(Failure {
                    code: 4,
                    message: "oracle lower bound exceeds a closed-form value".into(),
                });
            }
        }
        Command::Hardness {
            graph,
            threshold,
            bruteforce,
        } => {
            let g = parse_graph(&read(&graph)?)?;
            let report = hardness_report(&g, threshold, bruteforce, &NormOptions::default())?;
            print!("{}", report.text);
            if report.agree() == Some(false) {
                return Err(Failure {
                    code: 4,
                    message: "norm-based decision disagrees with brute force".into(),
                });
            }
        }
        Command::Bench {
            pq,
            n_min,
            n_max,
            reps,
            seed,
            out,
            m_rule,
            threads,
        } => {
            if reps < opnorm::bench::MIN_REPS {
                return Err(Failure {
                    code: 2,
                    message: format!("--reps must be at least {}", opnorm::bench::MIN_REPS),
                });
            }
            let mut cfg = BenchConfig::new(pq, n_min, n_max, reps, seed);
            cfg.rows = m_rule;
            cfg.threads = threads;
            let mut records = Vec::new();
            for entry in run_bench(&cfg)? {
                match entry {
                    BenchEntry::Record(r) => records.push(r),
                    BenchEntry::Skipped { n, m, reason } => {
                        eprintln!("warning: skipped n={n} m={m}: {reason}")
                    }
                }
            }
            let file = fs::File::create(&out).map_err(|e| Failure {
                code: 2,
                message: format!("{}: {e}", out.display()),
            })?;
            write_csv(&records, file).map_err(|e| Failure {
                code: 2,
                message: format!("{}: {e}", out.display()),
            })?;
            if let Ok(fit) = fit_growth(&records) {
                eprintln!(
                    "fit ({}): {:?} slope {} r^2 {}",
                    fit.pair,
                    fit.model,
                    format_g17(fit.slope),
                    format_g17(fit.r_squared)
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
