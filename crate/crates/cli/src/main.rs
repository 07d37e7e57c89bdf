use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use choquet_dist::asymptotic::{
    alpha, beta2, mixture_approx, power_weight_game, QuadOptions, WeightFunction,
};
use choquet_dist::capacity::{subset_key, DEFAULT_N_MAX};
use choquet_dist::exponential::ExponentialChoquetDist;
use choquet_dist::montecarlo::sample;
use choquet_dist::{
    check_capacity, moments_report, orness, ChoquetError, Law, Limits, SeriesOrder, SetFunction,
    UniformChoquetDist,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "choquet-dist", version, about = "Distribution of the discrete Choquet integral of i.i.d. inputs")]
struct Cli {
    /// Largest n for permutation enumeration
    #[arg(long, global = true, env = "CHOQUET_NMAX", default_value_t = DEFAULT_N_MAX)]
    n_max: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check monotonicity and normalization of a capacity file
    Validate {
        #[arg(long)]
        capacity: PathBuf,
    },
    /// Mean and standard deviation as JSON
    Moments {
        #[command(flatten)]
        input: LawInput,
        /// David–Johnson series order for the normal law
        #[arg(long, default_value_t = 2)]
        dj_order: usize,
    },
    /// Exact density and distribution function on a grid, CSV `y,pdf,cdf`
    Pdf(GridCommand),
    /// Same output as `pdf`
    Cdf(GridCommand),
    /// Mixture-of-normals density on a grid, CSV `y,mixture_pdf`
    Mixture {
        #[command(flatten)]
        grid: GridCommand,
        #[arg(long, default_value_t = 2)]
        dj_order: usize,
    },
    /// Stigler functionals for the power-weight game, JSON
    Stigler {
        /// Exponent of J(u) = u^a
        #[arg(long)]
        a: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "uniform", value_parser = parse_law)]
        law: Law,
        #[arg(long, default_value_t = 2)]
        dj_order: usize,
    },
    /// Monte Carlo draws; CSV column `y`
    Sample {
        #[command(flatten)]
        input: LawInput,
        /// Number of draws
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write draws here and the summary to stdout; otherwise draws go to
        /// stdout and the summary to stderr
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct LawInput {
    #[arg(long, value_parser = parse_law)]
    law: Law,
    #[arg(long)]
    capacity: PathBuf,
}

#[derive(Args)]
struct GridCommand {
    #[command(flatten)]
    input: LawInput,
    /// start:end:steps, with `steps` evenly spaced points including both ends
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    grid: Grid,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Debug)]
struct Grid(Vec<f64>);

fn parse_law(s: &str) -> Result<Law, String> {
    Law::from_str(s).map_err(|e| e.to_string())
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected start:end:steps, got {s:?}"));
    }
    let start: f64 = parts[0].parse().map_err(|_| format!("bad start {:?}", parts[0]))?;
    let end: f64 = parts[1].parse().map_err(|_| format!("bad end {:?}", parts[1]))?;
    let steps: usize = parts[2].parse().map_err(|_| format!("bad steps {:?}", parts[2]))?;
    if steps < 2 {
        return Err("grid needs at least 2 steps".into());
    }
    if !start.is_finite() || !end.is_finite() || end <= start {
        return Err(format!("grid needs finite start < end, got {start}:{end}"));
    }
    let h = (end - start) / (steps - 1) as f64;
    Ok(Grid((0..steps).map(|k| start + k as f64 * h).collect()))
}

enum Failure {
    Invalid(String),
    Io(String),
}

impl From<ChoquetError> for Failure {
    fn from(e: ChoquetError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

/// Rounds to 12 significant digits.
fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// CSV field with 12 significant digits.
fn cell(x: f64) -> String {
    let v = sig12(x);
    if v != 0.0 && !(1e-4..1e15).contains(&v.abs()) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

fn num(x: f64) -> Value {
    json!(sig12(x))
}

fn load_game(path: &Path, limits: &Limits) -> Result<SetFunction, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(SetFunction::from_json(&text, limits)?)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let limits = Limits::with_n_max(cli.n_max);
    match cli.command {
        Command::Validate { capacity } => {
            let g = load_game(&capacity, &limits)?;
            let check = check_capacity(&g);
            let pair = check
                .violating_pair
                .map(|(s, t)| json!([subset_key(s), subset_key(t)]));
            let report = json!({
                "n": g.n(),
                "is_monotone": check.is_monotone,
                "is_normalized": check.is_normalized,
                "violating_pair": pair,
            });
            println!("{}", serde_json::to_string_pretty(&report).expect("json"));
            if let Some((s, t)) = check.violating_pair {
                return Err(Failure::Invalid(format!(
                    "not monotone: ν({{{}}}) = {} > ν({{{}}}) = {}",
                    subset_key(s),
                    g.value(s),
                    subset_key(t),
                    g.value(t)
                )));
            }
            if !check.is_normalized {
                return Err(Failure::Invalid(format!(
                    "not normalized: ν(N) = {}",
                    g.total()
                )));
            }
            Ok(())
        }
        Command::Moments { input, dj_order } => {
            let g = load_game(&input.capacity, &limits)?;
            let order = SeriesOrder::from_order(dj_order)?;
            let provider = input.law.provider(g.n(), order)?;
            let r = moments_report(&g, provider.as_ref())?;
            let report = json!({ "mean": num(r.mean), "sd": num(r.sd) });
            println!("{report}");
            Ok(())
        }
        Command::Pdf(cmd) | Command::Cdf(cmd) => {
            let g = load_game(&cmd.input.capacity, &limits)?;
            let ys = &cmd.grid.0;
            let (pdf, cdf): (Vec<f64>, Vec<f64>) = match cmd.input.law {
                Law::Uniform => {
                    let d = UniformChoquetDist::new(g, &limits)?;
                    if d.game().n() == 1 {
                        eprintln!("note: the density jumps at the knots {:?}", d.knot_locations());
                    }
                    (d.pdf_grid(ys), d.cdf_grid(ys))
                }
                Law::Exponential => {
                    let d = ExponentialChoquetDist::new(&g, &limits)?;
                    (ys.iter().map(|&y| d.pdf(y)).collect(), ys.iter().map(|&y| d.cdf(y)).collect())
                }
                Law::Normal => {
                    return Err(Failure::Invalid(
                        "no exact density for the normal law; use `mixture` or `sample`".into(),
                    ))
                }
            };
            let mut csv = String::from("y,pdf,cdf\n");
            for ((y, p), c) in ys.iter().zip(&pdf).zip(&cdf) {
                writeln!(csv, "{},{},{}", cell(*y), cell(*p), cell(*c)).expect("string write");
            }
            emit(&csv, cmd.out.as_deref())
        }
        Command::Mixture { grid, dj_order } => {
            let g = load_game(&grid.input.capacity, &limits)?;
            let order = SeriesOrder::from_order(dj_order)?;
            let provider = grid.input.law.provider(g.n(), order)?;
            if let Ok(o) = orness(&g) {
                eprintln!(
                    "advisory: orness {:.4}; the normal mixture is a large-n approximation whose conditions are not checked",
                    o
                );
            }
            let m = mixture_approx(&g, provider.as_ref(), &limits)?;
            let mut csv = String::from("y,mixture_pdf\n");
            for &y in &grid.grid.0 {
                writeln!(csv, "{},{}", cell(y), cell(m.pdf(y)?)).expect("string write");
            }
            emit(&csv, grid.out.as_deref())
        }
        Command::Stigler { a, n, law, dj_order } => {
            let g = power_weight_game(n, a)?;
            let j = WeightFunction::Power(a);
            let qm = law.quantile_model();
            let opts = QuadOptions::for_law(law);
            let al = alpha(&j, qm.as_ref(), opts)?;
            let b2 = beta2(&j, qm.as_ref(), opts)?;
            let provider = law.provider(n, SeriesOrder::from_order(dj_order)?)?;
            let m = mixture_approx(&g, provider.as_ref(), &limits)?;
            let c = m.components[0];
            let report = json!({
                "alpha": num(al),
                "beta2": num(b2),
                "component_mean": num(c.mean),
                "n_times_variance": num(n as f64 * c.variance),
            });
            println!("{report}");
            Ok(())
        }
        Command::Sample {
            input,
            n,
            seed,
            out,
        } => {
            let g = load_game(&input.capacity, &limits)?;
            let r = sample(&g, input.law, n, seed)?;
            let mut csv = String::with_capacity(n * 16);
            csv.push_str("y\n");
            for y in &r.samples {
                writeln!(csv, "{}", cell(*y)).expect("string write");
            }
            let summary = json!({
                "n_samples": r.n_samples,
                "mean": num(r.mean),
                "sd": num(r.sd),
                "standard_error": num(r.standard_error),
            });
            match out {
                Some(p) => {
                    emit(&csv, Some(&p))?;
                    println!("{summary}");
                }
                None => {
                    emit(&csv, None)?;
                    eprintln!("{summary}");
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
