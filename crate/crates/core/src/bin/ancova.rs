use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use robust_ancova::report::{self, exit, RunConfig};
use robust_ancova::sim::{Association, GhParams, ScenarioSpec, StudyConfig, TestMethod};
use robust_ancova::{with_threads, EstimatorSpec, Error, SmootherConfig};

#[derive(Parser)]
#[command(name = "ancova", version, about = "Robust nonparametric ANCOVA")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Global test at all design points
    Ancglob(Common),
    /// Pointwise tests with Hochberg control
    Ancw(Common),
    /// Calibrate the critical p-value for two sample sizes
    Calibrate {
        #[command(flatten)]
        common: Common,
        /// Group 1 size (defaults to the size of --data1)
        #[arg(long)]
        n1: Option<usize>,
        /// Group 2 size (defaults to the size of --data2)
        #[arg(long)]
        n2: Option<usize>,
    },
    /// Monte Carlo rejection rate on generated data
    Simulate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// SVG of both smoothers with the design points marked
    Plot(Common),
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    data1: Option<PathBuf>,
    #[arg(long)]
    data2: Option<PathBuf>,
    /// First row of each CSV file is a header
    #[arg(long)]
    header: bool,
    /// trimmed:<gamma> or quantile:<q>
    #[arg(long, default_value = "trimmed:0.2")]
    estimator: EstimatorSpec,
    #[arg(long, default_value_t = 1.0)]
    span: f64,
    #[arg(long, default_value_t = 12)]
    min_neighbors: usize,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Bootstrap samples (B)
    #[arg(long, default_value_t = 500)]
    nboot: usize,
    /// Calibration datasets (A)
    #[arg(long, default_value_t = 1000)]
    ncrit: usize,
    /// Generated and recorded in the report when absent
    #[arg(long)]
    seed: Option<u64>,
    /// Worker cap; results do not depend on it
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Calibration cache file
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    drop_x_outliers: bool,
    /// Compare at the covariate quartiles instead of five scanned points
    #[arg(long)]
    quartile_points: bool,
    /// Reuse the observed MADN inside bootstrap samples
    #[arg(long)]
    freeze_madn: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum AssocArg {
    S1,
    S2,
    S3,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Global,
    Pointwise,
}

#[derive(Args, Clone)]
struct SimArgs {
    #[arg(long, value_enum, default_value = "s1")]
    scenario: AssocArg,
    #[arg(long, default_value_t = 0.0)]
    g: f64,
    #[arg(long, default_value_t = 0.0)]
    h: f64,
    #[arg(long, default_value_t = 30)]
    n1: usize,
    #[arg(long, default_value_t = 30)]
    n2: usize,
    #[arg(long, value_enum, default_value = "global")]
    method: MethodArg,
    #[arg(long, default_value_t = 1000)]
    reps: usize,
    /// Group 2 follows Y = b X^d + c + e instead of the null scenario
    #[arg(long, num_args = 3, value_names = ["B", "D", "C"])]
    shifted: Option<Vec<f64>>,
    /// Skip calibration and use this critical p-value
    #[arg(long)]
    critical_p: Option<f64>,
}

impl Common {
    fn config(&self) -> RunConfig {
        let mut smoother = SmootherConfig::default()
            .with_span(self.span)
            .with_min_neighbors(self.min_neighbors);
        if self.quartile_points {
            smoother = smoother.with_quartile_points();
        }
        let (seed, seed_generated) = match self.seed {
            Some(s) => (s, false),
            None => (generated_seed(), true),
        };
        RunConfig {
            estimator: self.estimator,
            smoother,
            alpha: self.alpha,
            nboot: self.nboot,
            ncrit: self.ncrit,
            seed,
            seed_generated,
            freeze_madn: self.freeze_madn,
            data1: self.data1.clone(),
            data2: self.data2.clone(),
            ingest: report::IngestOptions { has_header: self.header, drop_x_outliers: self.drop_x_outliers },
            cache: self.cache.clone(),
            out: self.out.clone(),
            threads: self.threads,
        }
    }
}

fn generated_seed() -> u64 {
    use std::time::{SystemTime, UNIX_EPOCH};
    let t = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_nanos()).unwrap_or(0);
    (t as u64) ^ ((std::process::id() as u64) << 32)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Ancglob(c) => {
            let cfg = c.config();
            let doc = with_threads(cfg.threads, || report::cmd_ancglob(&cfg))?;
            report::emit(cfg.out.as_deref(), &doc.to_json())
        }
        Command::Ancw(c) => {
            let cfg = c.config();
            let doc = with_threads(cfg.threads, || report::cmd_ancw(&cfg))?;
            report::emit(cfg.out.as_deref(), &doc.to_json())
        }
        Command::Calibrate { common, n1, n2 } => {
            let cfg = common.config();
            let size = |n: Option<usize>, p: &Option<PathBuf>, flag: &str| -> Result<usize, Error> {
                match (n, p) {
                    (Some(n), _) => Ok(n),
                    (None, Some(p)) => Ok(report::ingest_csv(p, cfg.ingest)?.n),
                    (None, None) => Err(Error::InvalidArgument(format!("--{flag} or --data{} is required", &flag[1..]))),
                }
            };
            let n1 = size(n1, &cfg.data1, "n1")?;
            let n2 = size(n2, &cfg.data2, "n2")?;
            let doc = with_threads(cfg.threads, || report::cmd_calibrate(&cfg, n1, n2))?;
            report::emit(cfg.out.as_deref(), &doc.to_json())
        }
        Command::Simulate { common, sim } => {
            let cfg = common.config();
            let base = match sim.scenario {
                AssocArg::S1 => Association::S1,
                AssocArg::S2 => Association::S2,
                AssocArg::S3 => Association::S3,
            };
            let error = GhParams::new(sim.g, sim.h)?;
            let scenario = match &sim.shifted {
                Some(v) => {
                    let degree = v[1];
                    if degree < 0.0 || degree.fract() != 0.0 {
                        return Err(Error::InvalidArgument("shift degree must be a nonnegative integer".into()));
                    }
                    ScenarioSpec::alternative(
                        base,
                        Association::Shifted { slope: v[0], degree: degree as u32, shift: v[2] },
                        error,
                        sim.n1,
                        sim.n2,
                    )
                }
                None => ScenarioSpec::null(base, error, sim.n1, sim.n2),
            };
            let study = StudyConfig {
                method: match sim.method {
                    MethodArg::Global => TestMethod::Global,
                    MethodArg::Pointwise => TestMethod::Pointwise,
                },
                estimator: cfg.estimator,
                smoother: cfg.smoother,
                replications: sim.reps,
                nboot: cfg.nboot,
                ncrit: cfg.ncrit,
                alpha: cfg.alpha,
                seed: cfg.seed,
                freeze_madn: cfg.freeze_madn,
                critical_p: sim.critical_p,
            };
            let doc = with_threads(cfg.threads, || report::cmd_simulate(&cfg, &scenario, &study))?;
            report::emit(cfg.out.as_deref(), &doc.to_json())
        }
        Command::Plot(c) => {
            let cfg = c.config();
            let svg = report::cmd_plot(&cfg)?;
            report::emit(cfg.out.as_deref(), &svg)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(report::exit_code(&e) as u8)
        }
    }
}
