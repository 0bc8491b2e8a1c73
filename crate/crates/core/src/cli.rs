//! Command-line front end. Exit status: 0 on success, 1 on I/O failure,
//! 2 on invalid input, 3 when a solver stops at a limit without proof.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::bench::{error_experiment, gap_experiment, timing_experiment, ExperimentTable};
use crate::bounds::upper_bound;
use crate::error::Error;
use crate::instance::{Instance, InstanceFile};
use crate::solvers::{
    branch_and_bound_with, brute_force_caterpillars, greedy_caterpillar, BnbOptions, SolveReport,
};
use crate::tree::{vwwi_tree, TreeFile, WeightedTree};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "wiener-max",
    version,
    about = "Largest vertex-weighted Wiener index over trees"
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Seconds.
    #[arg(long, global = true)]
    pub time_limit: Option<f64>,
    #[arg(long, global = true)]
    pub node_limit: Option<u64>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the canonical instance and its monotone flag.
    Validate { instance: PathBuf },
    /// Print the index of a tree file.
    Vwwi { tree: PathBuf },
    /// Print an upper bound on the optimum.
    Ub { instance: PathBuf },
    /// Greedy caterpillar.
    Greedy { instance: PathBuf },
    /// Branch and bound.
    Solve { instance: PathBuf },
    /// Enumerate every caterpillar.
    Brute { instance: PathBuf },
    /// Bound against greedy on random instances.
    BenchError(BenchArgs),
    /// Branch and bound timings on random instances.
    BenchTime(BenchArgs),
    /// Bound and greedy against the optimum on random instances.
    BenchGap(BenchArgs),
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated orders.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    #[arg(long)]
    pub instances: Option<usize>,
    /// Leave the seconds column empty so output is reproducible byte for byte.
    #[arg(long)]
    pub omit_timing: bool,
}

enum Failure {
    Io(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit
/// status. Results go to `stdout` unless `--out` is given.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&config) {
        Ok((text, code)) => {
            let written = match &config.out {
                Some(path) => {
                    fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))
                }
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => code,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    EXIT_IO
                }
            }
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_IO
        }
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INVALID
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let mut de = serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let field = e.path().to_string();
        Failure::Invalid(format!(
            "{}: field `{field}`: {}",
            path.display(),
            e.inner()
        ))
    })
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let file: InstanceFile = read_json(path)?;
    Ok(Instance::from_file(&file)?)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string(value).expect("serializable");
    text.push('\n');
    text
}

fn csv_lines(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut text = format!("{header}\n");
    for row in rows {
        text.push_str(&row);
        text.push('\n');
    }
    text
}

#[derive(Serialize)]
struct ValidateOutput<'a> {
    weights: &'a [f64],
    degrees: &'a [usize],
    original_index: &'a [usize],
    q: usize,
    monotone: bool,
}

#[derive(Serialize)]
struct VwwiOutput {
    vwwi: f64,
}

fn execute(config: &CliConfig) -> Result<(String, i32), Failure> {
    let format = config.format;
    match &config.command {
        Command::Validate { instance } => {
            let inst = read_instance(instance)?;
            let text = match format.unwrap_or(Format::Json) {
                Format::Json => json(&ValidateOutput {
                    weights: inst.weights(),
                    degrees: inst.degrees(),
                    original_index: inst.original_index(),
                    q: inst.q(),
                    monotone: inst.is_monotone(),
                }),
                Format::Csv => csv_lines(
                    "index,original_index,weight,degree,monotone",
                    (0..inst.n()).map(|i| {
                        format!(
                            "{i},{},{},{},{}",
                            inst.original_index()[i],
                            inst.weight(i),
                            inst.degree(i),
                            inst.is_monotone()
                        )
                    }),
                ),
            };
            Ok((text, EXIT_OK))
        }
        Command::Vwwi { tree } => {
            let file: TreeFile = read_json(tree)?;
            let value = vwwi_tree(&WeightedTree::from_file(&file)?);
            let text = match format {
                None => format!("{value}\n"),
                Some(Format::Json) => json(&VwwiOutput { vwwi: value }),
                Some(Format::Csv) => csv_lines("vwwi", [format!("{value}")]),
            };
            Ok((text, EXIT_OK))
        }
        Command::Ub { instance } => {
            let inst = read_instance(instance)?;
            let report = upper_bound(&inst)?.to_file();
            let text = match format.unwrap_or(Format::Json) {
                Format::Json => json(&report),
                Format::Csv => csv_lines(
                    "value,method,gap",
                    [format!(
                        "{},{},{}",
                        report.value,
                        serde_json::to_value(report.method)
                            .expect("serializable")
                            .as_str()
                            .unwrap_or(""),
                        report.gap
                    )],
                ),
            };
            Ok((text, EXIT_OK))
        }
        Command::Greedy { instance } => {
            let inst = read_instance(instance)?;
            solve_output(&inst, &greedy_caterpillar(&inst)?, format, false)
        }
        Command::Solve { instance } => {
            let inst = read_instance(instance)?;
            let options = BnbOptions {
                time_limit: config.time_limit,
                node_limit: config.node_limit,
                threads: config.threads.unwrap_or(1),
                ..BnbOptions::default()
            };
            let report = branch_and_bound_with(&inst, &options)?;
            solve_output(&inst, &report, format, true)
        }
        Command::Brute { instance } => {
            let inst = read_instance(instance)?;
            solve_output(&inst, &brute_force_caterpillars(&inst)?, format, false)
        }
        Command::BenchError(args) => bench(config, args, &[10, 20, 50], 200, |ns, k, seed| {
            error_experiment(ns, k, seed)
        }),
        Command::BenchTime(args) => bench(config, args, &[10, 15, 20], 20, |ns, k, seed| {
            timing_experiment(ns, k, seed, config.time_limit)
        }),
        Command::BenchGap(args) => bench(config, args, &[10, 15, 20], 20, |ns, k, seed| {
            gap_experiment(ns, k, seed)
        }),
    }
}

fn solve_output(
    inst: &Instance,
    report: &SolveReport,
    format: Option<Format>,
    limit_matters: bool,
) -> Result<(String, i32), Failure> {
    let file = report.to_file(inst)?;
    let text = match format.unwrap_or(Format::Json) {
        Format::Json => json(&file),
        Format::Csv => csv_lines(
            "value,nodes,pruned,seconds,optimal",
            [format!(
                "{},{},{},{},{}",
                file.value, file.nodes, file.pruned, file.seconds, file.optimal
            )],
        ),
    };
    let code = if limit_matters && !report.proven_optimal {
        EXIT_LIMIT
    } else {
        EXIT_OK
    };
    Ok((text, code))
}

fn bench(
    config: &CliConfig,
    args: &BenchArgs,
    default_ns: &[usize],
    default_count: usize,
    experiment: impl Fn(&[usize], usize, u64) -> crate::error::Result<ExperimentTable> + Send + Sync,
) -> Result<(String, i32), Failure> {
    let ns = args.n.clone().unwrap_or_else(|| default_ns.to_vec());
    let count = args.instances.unwrap_or(default_count);
    let table = match config.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Failure::Io(format!("thread pool: {e}")))?
            .install(|| experiment(&ns, count, config.seed))?,
        None => experiment(&ns, count, config.seed)?,
    };
    let text = match config.format.unwrap_or(Format::Csv) {
        Format::Csv => table.to_csv_string(!args.omit_timing)?,
        Format::Json => {
            let mut rows = table.rows.clone();
            if args.omit_timing {
                rows.iter_mut().for_each(|r| r.seconds = None);
            }
            json(&rows)
        }
    };
    Ok((text, EXIT_OK))
}
