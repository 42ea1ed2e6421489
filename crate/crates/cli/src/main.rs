use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use submon::closed_forms::poly_bernoulli;
use submon::notation::parse_monoid;
use submon::spectral::{ogf, Spectrum};
use submon::transfer_systems::{enumerate_saturated_transfer_systems, st_count_sequence, FiniteLattice};
use submon::{CayleyMonoid, CountSequence, Error, Limits, TransferMatrix};

mod verify;

#[derive(Parser, Debug)]
#[command(name = "submon", version, about = "Count submonoids of M x [n] and related objects")]
struct Cli {
    /// Worker threads for matrix builds and brute-force sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Largest monoid whose submonoids may be enumerated.
    #[arg(long, global = true, default_value_t = Limits::default().max_monoid_size)]
    max_monoid_size: usize,

    /// Largest product M x [n] the brute-force oracle may enumerate.
    #[arg(long, global = true, default_value_t = Limits::default().max_oracle_size)]
    max_oracle_size: usize,

    /// Largest lattice on which transfer systems are enumerated.
    #[arg(long, global = true, default_value_t = Limits::default().max_st_lattice_size)]
    max_st_lattice_size: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print S_0..S_n, the number of submonoids of M x [k] for each k.
    Count {
        #[arg(long)]
        monoid: String,
        #[arg(long)]
        n: usize,
        /// Cross-check every value the brute-force oracle can reach.
        #[arg(long)]
        oracle: bool,
    },
    /// Eigenvalues, coefficients and normalized coefficients of an idempotent monoid.
    Spectrum {
        #[arg(long)]
        monoid: String,
    },
    /// Dump the transfer matrix in canonical order.
    Matrix {
        #[arg(long)]
        monoid: String,
    },
    /// Rational generating function of the counts.
    Ogf {
        #[arg(long)]
        monoid: String,
    },
    /// Poly-Bernoulli number B(m, n).
    Polybernoulli {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Saturated transfer systems on P x [k] for k = 0..n, P given by an idempotent monoid.
    Sattr {
        #[arg(long)]
        monoid: String,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// List the systems on P instead of counting.
        #[arg(long)]
        list: bool,
    },
    /// Run a named verification sweep.
    Verify {
        /// triangular, recurrence, oracle, transfer-iso, closed-forms or appendix.
        suite: String,
        #[arg(long)]
        monoid: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Include the large table entries.
        #[arg(long)]
        slow: bool,
    },
}

/// Failure of a command, mapped to an exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Core(Error::Parse(_) | Error::Io(_) | Error::MalformedTable(_)) => 2,
            Failure::Core(Error::SizeLimitExceeded { .. }) => 3,
            Failure::Core(Error::NotIdempotent { .. }) => 4,
            Failure::Core(_) | Failure::Verification(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(s) => write!(f, "usage error: {s}"),
            Failure::Core(e) => write!(f, "error: {e}"),
            Failure::Verification(s) => write!(f, "verification failed: {s}"),
        }
    }
}

pub fn load(spec: &str) -> Result<CayleyMonoid, Failure> {
    Ok(parse_monoid(spec)?)
}

fn sequence_output(label: &str, seq: &CountSequence, format: Format) -> String {
    match format {
        Format::Csv => seq.to_csv(),
        Format::Json => {
            let values: Vec<String> = seq.values.iter().map(|v| v.to_string()).collect();
            format!("{}\n", json!({ label: values }))
        }
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let limits = Limits {
        max_monoid_size: cli.max_monoid_size,
        max_oracle_size: cli.max_oracle_size,
        max_st_lattice_size: cli.max_st_lattice_size,
        ..Limits::default()
    };
    match &cli.command {
        Command::Count { monoid, n, oracle } => {
            let m = load(monoid)?;
            let seq = TransferMatrix::build_with_limits(&m, &limits)?.count_sequence(*n);
            if *oracle {
                verify::oracle_cross_check(&m, &seq, &limits)?;
            }
            Ok(sequence_output("counts", &seq, cli.format))
        }
        Command::Spectrum { monoid } => {
            let w = TransferMatrix::build_with_limits(&load(monoid)?, &limits)?;
            let rows = Spectrum::compute(&w)?.rows();
            Ok(match cli.format {
                Format::Csv => {
                    let mut out = String::from("lambda,b,normalized\n");
                    for r in rows {
                        let _ = writeln!(out, "{},{},{}", r.lambda, r.b, r.normalized);
                    }
                    out
                }
                Format::Json => format!("{}\n", serde_json::to_string(&rows).expect("serializable")),
            })
        }
        Command::Matrix { monoid } => {
            let w = TransferMatrix::build_with_limits(&load(monoid)?, &limits)?;
            Ok(match cli.format {
                Format::Csv => {
                    let legend = w.lattice().hex_members();
                    let mut out = format!("submonoid,{}\n", legend.join(","));
                    for (label, row) in legend.iter().zip(w.entries()) {
                        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                        let _ = writeln!(out, "{label},{}", cells.join(","));
                    }
                    out
                }
                Format::Json => format!("{}\n", w.to_json()),
            })
        }
        Command::Ogf { monoid } => {
            let w = TransferMatrix::build_with_limits(&load(monoid)?, &limits)?;
            let spectrum = Spectrum::compute(&w)?;
            let f = ogf(&w, &spectrum, &[])?;
            Ok(match cli.format {
                Format::Csv => format!("{f}\n"),
                Format::Json => {
                    let numerator: Vec<String> = f.numerator.iter().map(|c| c.to_string()).collect();
                    format!(
                        "{}\n",
                        json!({
                            "numerator": numerator,
                            "denominator_roots": f.denominator_roots,
                            "display": f.to_string(),
                        })
                    )
                }
            })
        }
        Command::Polybernoulli { m, n } => {
            let b = poly_bernoulli(*m, *n)?;
            Ok(match cli.format {
                Format::Csv => format!("m,n,B\n{m},{n},{b}\n"),
                Format::Json => format!("{}\n", json!({ "m": m, "n": n, "B": b.to_string() })),
            })
        }
        Command::Sattr { monoid, n, list } => {
            let lattice = FiniteLattice::from_monoid(&load(monoid)?)?;
            if *list {
                let systems = enumerate_saturated_transfer_systems(&lattice, &limits)?;
                let json: Vec<_> = systems.iter().map(|s| s.to_json()).collect();
                return Ok(format!("{}\n", serde_json::to_string(&json).expect("serializable")));
            }
            let seq = st_count_sequence(&lattice, *n, &limits)?;
            Ok(sequence_output("counts", &seq, cli.format))
        }
        Command::Verify { suite, monoid, n, slow } => {
            verify::run_suite(suite, monoid.as_deref(), *n, *slow, &limits)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.exit_code())
        }
    }
}
