use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use moment_verify::harness::{run_experiment, selftest, ExperimentConfig, Family, DEFAULT_DELTA};
use moment_verify::moments::Approach;
use moment_verify::Error;

const EXIT_CONFIG: u8 = 3;

#[derive(Parser)]
#[command(name = "moment-verify", version, about = "Verified eigenpairs of Hermitian pencils inside an interval")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify the eigenvalues of a pencil read from Matrix Market files.
    Solve(SolveArgs),
    /// Run one of the built-in problem sweeps.
    #[command(subcommand)]
    Bench(Bench),
    /// Run the built-in invariant checks.
    Selftest,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    matrix_a: PathBuf,
    /// Defaults to the identity.
    #[arg(long)]
    matrix_b: Option<PathBuf>,
    /// Interval endpoints as `a,b`.
    #[arg(long, value_parser = parse_interval, allow_hyphen_values = true)]
    interval: (f64, f64),
    #[arg(long)]
    m: usize,
    #[arg(long = "L")]
    l: usize,
    #[arg(long = "M")]
    mm: usize,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    #[arg(long, default_value = "rr", value_delimiter = ',')]
    approach: Vec<String>,
    /// Also enclose eigenvectors.
    #[arg(long)]
    vectors: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Bench {
    /// Oscillator pencils of size 2^l for l in lmin..=lmax.
    Tridiag {
        #[arg(long, default_value_t = 5)]
        lmin: u32,
        #[arg(long, default_value_t = 10)]
        lmax: u32,
        #[command(flatten)]
        common: BenchCommon,
    },
    /// Pentadiagonal pencils for each value of the last mass entry.
    Pentadiag {
        #[arg(long, value_delimiter = ',', default_value = "0,1e-16,1e-12,1e-8,1e-4,1e-2,1")]
        b100: Vec<f64>,
        #[command(flatten)]
        common: BenchCommon,
    },
}

#[derive(Args)]
struct BenchCommon {
    #[arg(long, default_value = "rr,hankel", value_delimiter = ',')]
    approach: Vec<String>,
    #[arg(long)]
    vectors: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    /// Run problems concurrently.
    #[arg(long)]
    parallel: bool,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

fn parse_interval(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected a,b")?;
    let a: f64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((a, b))
}

fn approaches(names: &[String]) -> Result<Vec<Approach>, Error> {
    names.iter().map(|s| s.parse()).collect()
}

fn bench_config(problems: Vec<Family>, c: BenchCommon) -> Result<ExperimentConfig, Error> {
    let mut cfg = ExperimentConfig::new(problems, approaches(&c.approach)?, c.out);
    cfg.want_vectors = c.vectors;
    cfg.seed = c.seed;
    cfg.delta = c.delta;
    cfg.parallel = c.parallel;
    Ok(cfg)
}

fn build_config(cmd: Cmd) -> Result<Option<ExperimentConfig>, Error> {
    Ok(Some(match cmd {
        Cmd::Selftest => return Ok(None),
        Cmd::Solve(s) => {
            let family = Family::File {
                a: s.matrix_a,
                b: s.matrix_b,
                lo: s.interval.0,
                hi: s.interval.1,
                m: s.m,
                l: s.l,
                mm: s.mm,
            };
            let mut cfg = ExperimentConfig::new(vec![family], approaches(&s.approach)?, s.out);
            cfg.want_vectors = s.vectors;
            cfg.seed = s.seed;
            cfg.delta = s.delta;
            cfg
        }
        Cmd::Bench(Bench::Tridiag { lmin, lmax, common }) => {
            if lmin > lmax {
                return Err(Error::InvalidSpec(format!("lmin {lmin} exceeds lmax {lmax}")));
            }
            bench_config((lmin..=lmax).map(|ell| Family::Tridiag { ell }).collect(), common)?
        }
        Cmd::Bench(Bench::Pentadiag { b100, common }) => {
            bench_config(b100.into_iter().map(|b100| Family::Pentadiag { b100 }).collect(), common)?
        }
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(cli.cmd) {
        Ok(Some(cfg)) => cfg,
        Ok(None) => return if selftest() { ExitCode::SUCCESS } else { ExitCode::from(4) },
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    match run_experiment(&cfg) {
        Ok(summary) => {
            for r in &summary.rows {
                let lam = match (&r.lambda_inf, &r.lambda_sup) {
                    (Some(a), Some(b)) => format!("[{a}, {b}]"),
                    _ => "-".into(),
                };
                println!(
                    "{} {} #{} {} {}",
                    r.problem,
                    r.approach,
                    r.index.map_or("-".into(), |i| i.to_string()),
                    r.status,
                    lam
                );
            }
            println!("results written to {}", cfg.out.display());
            ExitCode::from(summary.outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
