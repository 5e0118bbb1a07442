//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and maps failures onto exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | I/O or other runtime failure |
//! | 2 | bad flags |
//! | 3 | a configured cap was exceeded |
//! | 4 | insufficient bits |
//! | 5 | malformed or schema-violating input |
//! | 6 | verification failure |

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{RunConfig, CONFIG_ENV};
use crate::error::{Error, Result};
use crate::instance::{build_instance, ChaitinInstance};
use crate::machine::{Dovetailer, OmegaApproximation};
use crate::omega::{self, extract_bits, load_bits_file};
use crate::partitions::{enumerate_partitions_capped, growth_table, CoefficientPolicy};
use crate::quantum::{self, StateDocument};
use crate::solver::{self, BenchSource, EqualityOracle, SearchOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_FLAGS: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INSUFFICIENT_BITS: i32 = 4;
pub const EXIT_SCHEMA: i32 = 5;
pub const EXIT_VERIFY: i32 = 6;

#[derive(Debug, Parser)]
#[command(name = "omega-disentangle", version, about)]
struct Cli {
    /// Optional `key = value` config file; flags override it.
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Halting-probability approximation and bit extraction.
    #[command(subcommand)]
    Omega(OmegaCmd),
    /// Decomposition term censuses.
    #[command(subcommand)]
    Structures(StructuresCmd),
    /// Coefficient instance generation and verification.
    #[command(subcommand)]
    Instance(InstanceCmd),
    /// Brute-force solving and growth reports.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Quantum state assembly and checking.
    #[command(subcommand)]
    State(StateCmd),
}

#[derive(Debug, Subcommand)]
enum OmegaCmd {
    /// Dovetail every program up to a level and step budget.
    Approximate {
        #[arg(long)]
        max_level: u32,
        #[arg(long)]
        max_steps: u64,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Write the first bits of an approximation's lower bound.
    Bits {
        #[arg(long)]
        approx: PathBuf,
        #[arg(long)]
        count: usize,
        /// Fail unless every requested bit is certified.
        #[arg(long)]
        certified_only: bool,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

#[derive(Debug, Subcommand)]
enum StructuresCmd {
    /// Growth table of term and coefficient counts for n = 2..=n-max.
    Count {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Canonical partition catalog as JSON.
    Partitions {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolicyArg {
    TermsOnly,
    UniformCaratheodory,
}

impl From<PolicyArg> for CoefficientPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::TermsOnly => CoefficientPolicy::TermsOnly,
            PolicyArg::UniformCaratheodory => CoefficientPolicy::UniformCaratheodory,
        }
    }
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct BitSourceArgs {
    /// ASCII 0/1 bit file.
    #[arg(long)]
    bits: Option<PathBuf>,
    /// Approximation JSON whose lower bound supplies the bits.
    #[arg(long)]
    approx: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum InstanceCmd {
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        policy: PolicyArg,
        #[command(flatten)]
        source: BitSourceArgs,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Validate an instance document, and optionally a candidate B vector.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        /// Comma-separated coefficients, e.g. `0,0,3,2`.
        #[arg(long)]
        candidate: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum SolveCmd {
    Brute {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        no_early_exit: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    Growth {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum)]
        policy: PolicyArg,
        #[command(flatten)]
        source: BitSourceArgs,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

#[derive(Debug, Subcommand)]
enum StateCmd {
    Assemble {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value = "-")]
        out: String,
    },
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::InsufficientBits { .. } => EXIT_INSUFFICIENT_BITS,
        Error::SchemaViolation { .. }
        | Error::Json(_)
        | Error::Csv(_)
        | Error::MalformedCharacter { .. }
        | Error::EmptyBitFile
        | Error::AllZeroCoefficients
        | Error::InvalidPartition(_)
        | Error::InvalidState(_)
        | Error::DimensionMismatch(_) => EXIT_SCHEMA,
        Error::InvalidArgument(_) | Error::InvalidSubsystem(_) | Error::PolicyUnsupported(_) => {
            EXIT_FLAGS
        }
        Error::Io(_) | Error::EigenNoConvergence { .. } => EXIT_RUNTIME,
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn write_out(target: &str, content: &str) -> Result<()> {
    if target == "-" {
        let mut out = io::stdout().lock();
        out.write_all(content.as_bytes())?;
        out.flush()?;
    } else {
        fs::write(target, content)?;
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn load_source(args: &BitSourceArgs) -> Result<Option<BenchSource>> {
    Ok(match (&args.bits, &args.approx) {
        (Some(b), _) => Some(BenchSource::Bits(load_bits_file(b)?)),
        (None, Some(a)) => Some(BenchSource::Approx(OmegaApproximation::from_json(&read(
            a,
        )?)?)),
        (None, None) => None,
    })
}

fn dispatch(cli: Cli) -> Result<i32> {
    let config = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    match cli.command {
        Command::Omega(cmd) => omega_cmd(cmd, &config),
        Command::Structures(cmd) => structures_cmd(cmd, &config),
        Command::Instance(cmd) => instance_cmd(cmd),
        Command::Solve(cmd) => solve_cmd(cmd, &config),
        Command::State(cmd) => state_cmd(cmd, &config),
    }
}

fn omega_cmd(cmd: OmegaCmd, config: &RunConfig) -> Result<i32> {
    match cmd {
        OmegaCmd::Approximate {
            max_level,
            max_steps,
            workers,
            out,
        } => {
            let approx = Dovetailer::new(max_level, max_steps)
                .workers(workers.unwrap_or(config.workers))
                .limits(config.machine_limits())
                .run()?;
            write_out(&out, &(approx.to_json()? + "\n"))?;
        }
        OmegaCmd::Bits {
            approx,
            count,
            certified_only,
            out,
        } => {
            let approx = OmegaApproximation::from_json(&read(&approx)?)?;
            let bits = extract_bits(&approx, count)?;
            if certified_only && count > bits.stable_prefix_len {
                return Err(Error::InsufficientBits {
                    have: bits.stable_prefix_len,
                    need: count,
                });
            }
            write_out(&out, &format!("{}\n", bits.bits))?;
            if out == "-" {
                eprintln!("stable_prefix_len={} of {count}", bits.stable_prefix_len);
            } else {
                fs::write(format!("{out}.stability.json"), bits.to_json()? + "\n")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn structures_cmd(cmd: StructuresCmd, config: &RunConfig) -> Result<i32> {
    match cmd {
        StructuresCmd::Count { n_max, out } => {
            let report = growth_table(n_max, config.partition_cap)?;
            write_out(&out, &report.to_csv_string()?)?;
        }
        StructuresCmd::Partitions { n, out } => {
            let catalog = enumerate_partitions_capped(n, config.partition_cap)?;
            write_out(&out, &(catalog.to_json()? + "\n"))?;
        }
    }
    Ok(EXIT_OK)
}

fn parse_candidate(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad candidate value `{v}`")))
        })
        .collect()
}

fn instance_cmd(cmd: InstanceCmd) -> Result<i32> {
    match cmd {
        InstanceCmd::Generate {
            n,
            policy,
            source,
            out,
        } => {
            let policy = CoefficientPolicy::from(policy);
            let bits = match load_source(&source)? {
                Some(BenchSource::Bits(b)) => b,
                Some(BenchSource::Approx(a)) => {
                    let (s, t) = crate::instance::instance_shape(n, policy)?;
                    extract_bits(&a, s * t as usize)?
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "one of --bits or --approx is required".into(),
                    ))
                }
            };
            let inst = build_instance(n, policy, &bits)?;
            write_out(&out, &(inst.to_json()? + "\n"))?;
        }
        InstanceCmd::Verify {
            instance,
            candidate,
        } => {
            let inst = ChaitinInstance::from_json(&read(&instance)?)?;
            if let Some(c) = candidate {
                let ok = solver::verify_candidate(&parse_candidate(&c)?, &inst.bits, inst.t)?;
                println!("{}", if ok { "match" } else { "mismatch" });
                if !ok {
                    return Ok(EXIT_VERIFY);
                }
            } else {
                println!("valid");
            }
        }
    }
    Ok(EXIT_OK)
}

fn solve_cmd(cmd: SolveCmd, config: &RunConfig) -> Result<i32> {
    match cmd {
        SolveCmd::Brute {
            instance,
            no_early_exit,
            workers,
        } => {
            let inst = ChaitinInstance::from_json(&read(&instance)?)?;
            let oracle = EqualityOracle::new(inst.coefficients.clone());
            let opts = SearchOptions {
                early_exit: !no_early_exit,
                workers: workers.unwrap_or(config.workers),
                candidate_cap: config.candidate_cap,
            };
            let sol = solver::brute_force(inst.s, inst.t, &oracle, &opts)?;
            let verified = match &sol.coefficients {
                Some(c) => solver::verify_candidate(c, &inst.bits, inst.t)?,
                None => false,
            };
            let summary = serde_json::json!({
                "solution": sol.coefficients,
                "candidates_tested": sol.stats.candidates_tested,
                "accepted": sol.stats.accepted,
                "space_size": sol.stats.space_size,
                "found": sol.stats.found,
                "verified": verified,
                "wall_ms": sol.stats.wall_time.as_secs_f64() * 1e3,
            });
            println!("{}", serde_json::to_string_pretty(&summary)?);
            if !verified {
                return Ok(EXIT_VERIFY);
            }
        }
        SolveCmd::Growth {
            n_min,
            n_max,
            policy,
            source,
            out,
        } => {
            if n_max > config.partition_cap {
                return Err(Error::cap("n_max", n_max, config.partition_cap));
            }
            let source = load_source(&source)?.unwrap_or(BenchSource::None);
            let opts = SearchOptions {
                early_exit: true,
                workers: config.workers,
                candidate_cap: config.candidate_cap,
            };
            let rows = solver::growth_benchmark(n_min, n_max, policy.into(), &source, &opts)?;
            let mut buf = Vec::new();
            solver::write_growth_csv(&rows, &mut buf)?;
            write_out(&out, &String::from_utf8_lossy(&buf))?;
        }
    }
    Ok(EXIT_OK)
}

fn state_cmd(cmd: StateCmd, config: &RunConfig) -> Result<i32> {
    match cmd {
        StateCmd::Assemble { instance, out } => {
            let inst = ChaitinInstance::from_json(&read(&instance)?)?;
            if inst.n > config.qubit_cap {
                return Err(Error::cap("qubits", inst.n, config.qubit_cap));
            }
            let catalog = enumerate_partitions_capped(inst.n, config.partition_cap)?;
            let assembled = quantum::assemble_state(&inst, &catalog)?;
            write_out(&out, &(assembled.gamma.to_document().to_json()? + "\n"))?;
        }
        StateCmd::Check { input, out } => {
            let doc = StateDocument::from_json(&read(&input)?)?;
            let report = quantum::check_state(&doc)?;
            write_out(&out, &(serde_json::to_string_pretty(&report)? + "\n"))?;
            if !report.pass {
                return Ok(EXIT_VERIFY);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Used by `omega bits` consumers that want the stability sidecar back.
pub fn load_stability_sidecar(bits_path: &Path) -> Result<omega::CertifiedBits> {
    let mut p = bits_path.as_os_str().to_owned();
    p.push(".stability.json");
    omega::CertifiedBits::from_json(&read(Path::new(&p))?)
}
