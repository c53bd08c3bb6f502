use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use warpq::bench::{self, BenchConfig, StatsScope, StdDevMode};
use warpq::datasets::{self, DatasetSplit, Delimiter};
use warpq::demo;
use warpq::{Distance, Error, TimeSeries};

const DEFAULT_SEED: u64 = 20_190_101;

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "warpq",
    version,
    about = "Dynamic time warping and its warping-invariant quotient"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = DelimiterArg::Auto)]
    delimiter: DelimiterArg,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distance between the series stored in two files
    Dist {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long, value_enum, default_value_t = DistanceArg::Dtw)]
        distance: DistanceArg,
        /// Minimize over all warping paths instead of running the DP
        #[arg(long)]
        bruteforce: bool,
    },
    /// Condensed form of every series in a file
    Condense { file: PathBuf },
    /// Condensation statistics and 1-NN classification over UCR datasets
    Bench(BenchArgs),
    /// Separation table of the two-cluster k-means example
    KmeansDemo {
        #[arg(long, default_value_t = 20)]
        max_r: usize,
        /// Also write the table to DIR/kmeans_demo.csv
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Dataset names, or `all` for every dataset under the data directory
    datasets: Vec<String>,

    #[arg(long, env = "WARPQ_DATA_DIR")]
    data_dir: Option<PathBuf>,

    /// Run on COUNT generated datasets instead of archive files
    #[arg(long, value_name = "COUNT", conflicts_with = "datasets")]
    synthetic: Option<usize>,

    #[arg(long, default_value = "bench-out")]
    out: PathBuf,

    #[arg(long, value_enum, default_value_t = StdDevArg::Population)]
    stddev: StdDevArg,

    /// Z-normalize every series before anything else
    #[arg(long)]
    normalize: bool,

    #[arg(long, value_name = "K")]
    quantize_decimals: Option<u32>,

    /// Compute condensation statistics on the training parts only
    #[arg(long)]
    train_only: bool,

    /// Skip the nearest-neighbor experiment
    #[arg(long)]
    no_classify: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DistanceArg {
    Dtw,
    DtwStar,
}

impl From<DistanceArg> for Distance {
    fn from(d: DistanceArg) -> Self {
        match d {
            DistanceArg::Dtw => Distance::Dtw,
            DistanceArg::DtwStar => Distance::DtwStar,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DelimiterArg {
    Auto,
    Comma,
    Tab,
}

impl From<DelimiterArg> for Delimiter {
    fn from(d: DelimiterArg) -> Self {
        match d {
            DelimiterArg::Auto => Delimiter::Auto,
            DelimiterArg::Comma => Delimiter::Comma,
            DelimiterArg::Tab => Delimiter::Tab,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StdDevArg {
    Population,
    Sample,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
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
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::ResourceLimit { .. }) => EXIT_RESOURCE,
        Some(Error::InvalidArgument(_)) => EXIT_USAGE,
        Some(_) => EXIT_DATA,
        None if e.downcast_ref::<UsageError>().is_some() => EXIT_USAGE,
        None => EXIT_DATA,
    }
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn run(cli: Cli) -> anyhow::Result<()> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.global.threads {
        if n == 0 {
            return Err(UsageError("--threads must be at least 1".into()).into());
        }
        pool = pool.num_threads(n);
    }
    pool.build_global().context("cannot start thread pool")?;

    let delimiter = Delimiter::from(cli.global.delimiter);
    match cli.command {
        Command::Dist {
            file_a,
            file_b,
            distance,
            bruteforce,
        } => cmd_dist(&file_a, &file_b, distance.into(), bruteforce, delimiter),
        Command::Condense { file } => cmd_condense(&file, delimiter),
        Command::Bench(args) => cmd_bench(&args, delimiter, cli.global.seed),
        Command::KmeansDemo { max_r, out } => cmd_kmeans_demo(max_r, out.as_deref()),
    }
}

fn single_series(path: &Path, delimiter: Delimiter) -> anyhow::Result<TimeSeries> {
    let mut all = datasets::read_series(path, delimiter)?;
    if all.len() != 1 {
        return Err(Error::InvalidInput(format!(
            "{} holds {} series, expected exactly one",
            path.display(),
            all.len()
        ))
        .into());
    }
    Ok(all.remove(0))
}

fn cmd_dist(
    a: &Path,
    b: &Path,
    distance: Distance,
    bruteforce: bool,
    delimiter: Delimiter,
) -> anyhow::Result<()> {
    let x = single_series(a, delimiter)?;
    let y = single_series(b, delimiter)?;
    let value = if bruteforce {
        let (x, y) = (distance.prepare(&x), distance.prepare(&y));
        warpq::dtw_bruteforce(&x, &y)?.distance
    } else {
        distance.eval(&x, &y)
    };
    println!("{value}");
    Ok(())
}

fn cmd_condense(path: &Path, delimiter: Delimiter) -> anyhow::Result<()> {
    let out_delim = match delimiter {
        Delimiter::Tab => "\t",
        _ => ",",
    };
    for x in datasets::read_series(path, delimiter)? {
        let c = x.condense();
        let values: Vec<String> = c.as_slice().iter().map(f64::to_string).collect();
        println!("{}", values.join(out_delim));
        println!(
            "length={} condensed={} deleted={}",
            x.len(),
            c.len(),
            x.len() - c.len()
        );
    }
    Ok(())
}

fn load_splits(
    args: &BenchArgs,
    delimiter: Delimiter,
    seed: u64,
) -> anyhow::Result<Vec<DatasetSplit>> {
    if let Some(count) = args.synthetic {
        return Ok(datasets::synth_benchmark(seed, count)?);
    }
    let root = args.data_dir.as_deref().ok_or_else(|| {
        UsageError("no data directory: pass --data-dir or set WARPQ_DATA_DIR".into())
    })?;
    let names = if args.datasets.is_empty() || args.datasets.iter().any(|d| d == "all") {
        discover_datasets(root)?
    } else {
        args.datasets.clone()
    };
    if names.is_empty() {
        bail!(Error::InvalidInput(format!(
            "no datasets found under {}",
            root.display()
        )));
    }
    names
        .iter()
        .map(|name| datasets::load_ucr_by_name(root, name, delimiter).map_err(anyhow::Error::from))
        .collect()
}

/// Subdirectories of `root` that contain a `<name>_TRAIN` file, sorted.
fn discover_datasets(root: &Path) -> anyhow::Result<Vec<String>> {
    let entries = fs::read_dir(root).map_err(|e| Error::Io {
        path: root.to_path_buf(),
        source: e,
    })?;
    let mut names = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::Io {
            path: root.to_path_buf(),
            source: e,
        })?;
        let Some(name) = entry.file_name().to_str().map(str::to_owned) else {
            continue;
        };
        if entry.path().is_dir() && datasets::find_ucr_files(root, &name).is_some() {
            names.push(name);
        }
    }
    names.sort();
    Ok(names)
}

fn cmd_bench(args: &BenchArgs, delimiter: Delimiter, seed: u64) -> anyhow::Result<()> {
    let splits = load_splits(args, delimiter, seed)?;
    let config = BenchConfig {
        stddev: match args.stddev {
            StdDevArg::Population => StdDevMode::Population,
            StdDevArg::Sample => StdDevMode::Sample,
        },
        scope: if args.train_only {
            StatsScope::TrainOnly
        } else {
            StatsScope::TrainAndTest
        },
        normalize: args.normalize,
        quantize_decimals: args.quantize_decimals,
        classify: !args.no_classify,
    };
    let report = bench::run_benchmark(&splits, &config);
    bench::write_report(&report, &args.out)?;
    let s = &report.reducibility_summary;
    println!(
        "{} datasets, weighted p_red {:.1}%, wrote {}",
        s.datasets,
        s.weighted.p_red,
        args.out.display()
    );
    if let Some(c) = &report.classification_summary {
        println!(
            "1-NN: {} wins, {} ties, {} losses for dtw-star, mean err {}",
            c.wins,
            c.ties,
            c.losses,
            c.mean_err.map_or("n/a".to_string(), |e| format!("{e:.2}"))
        );
    }
    Ok(())
}

fn cmd_kmeans_demo(max_r: usize, out: Option<&Path>) -> anyhow::Result<()> {
    if max_r == 0 {
        return Err(anyhow!(UsageError("--max-r must be at least 1".into())));
    }
    let csv = demo::separation_table_csv(&demo::separation_table(max_r));
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Error::Io {
            path: dir.to_path_buf(),
            source: e,
        })?;
        let path = dir.join("kmeans_demo.csv");
        fs::write(&path, &csv).map_err(|e| Error::Io { path, source: e })?;
    }
    print!("{csv}");
    Ok(())
}
