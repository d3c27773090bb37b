use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use offcenter::scenario::{
    checks, run_scenario, write_atomic, Format, InitialConfig, OrbitConfig, OutputConfig,
    PotentialConfig, ScenarioConfig, ScenarioError, Task, VerificationReport,
};

/// Zero-energy off-center circular orbits: simulation, exact solutions,
/// dual pictures and verification.
#[derive(Parser)]
#[command(name = "offcenter", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario config (JSON, schema 1).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory; overrides output.directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Random seed; overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate Hamilton's equations and write trajectory.csv.
    Simulate(Common),
    /// Sample the exact zero-energy trajectory and write analytic.csv.
    Analytic(Common),
    /// Map free motion on the dual sphere to the plane and write dual.csv.
    Dual(Common),
    /// Run a scenario's tasks, or the built-in acceptance suite without --config.
    Check(Common),
    /// Write the four figure presets as SVG.
    Figures(Common),
}

fn load(common: &Common, task: Option<Task>) -> Result<ScenarioConfig, ScenarioError> {
    let path = common
        .config
        .as_ref()
        .ok_or_else(|| ScenarioError::Config("--config <path> is required".into()))?;
    let mut config = ScenarioConfig::load(path)?;
    if let Some(task) = task {
        config.tasks = vec![task];
    }
    Ok(config)
}

fn figures_default() -> ScenarioConfig {
    ScenarioConfig {
        schema: 1,
        potential: PotentialConfig {
            alpha: 1.0,
            sigma: 3.0,
            mass: 1.0,
        },
        initial: InitialConfig {
            orbit: Some(OrbitConfig {
                radius: 2.0,
                offset: 1.0,
                n_angle: 0.0,
                sense: Default::default(),
            }),
            state: None,
        },
        integration: Default::default(),
        tasks: vec![Task::Figures],
        output: OutputConfig {
            formats: vec![Format::Svg],
            ..Default::default()
        },
        seed: checks::DEFAULT_SEED,
    }
}

fn print_report(report: &VerificationReport) {
    for r in &report.records {
        println!("{r}");
    }
    println!(
        "{}",
        if report.pass {
            "overall: PASS"
        } else {
            "overall: FAIL"
        }
    );
}

fn run(cli: Cli) -> Result<bool, ScenarioError> {
    let (common, config) = match cli.command {
        Command::Simulate(c) => {
            let cfg = load(&c, Some(Task::Simulate))?;
            (c, cfg)
        }
        Command::Analytic(c) => {
            let cfg = load(&c, Some(Task::Analytic))?;
            (c, cfg)
        }
        Command::Dual(c) => {
            let cfg = load(&c, Some(Task::Duality))?;
            (c, cfg)
        }
        Command::Figures(c) => {
            let cfg = match c.config {
                Some(_) => load(&c, Some(Task::Figures))?,
                None => figures_default(),
            };
            (c, cfg)
        }
        Command::Check(c) if c.config.is_none() => {
            let report = checks::run_acceptance(c.seed.unwrap_or(checks::DEFAULT_SEED));
            let dir = c.out.unwrap_or_else(|| OutputConfig::default().directory);
            let path = dir.join("acceptance_report.json");
            write_atomic(&path, &report.to_json())?;
            print_report(&report);
            println!("report: {}", path.display());
            return Ok(report.pass);
        }
        Command::Check(c) => {
            let cfg = load(&c, None)?;
            (c, cfg)
        }
    };
    let mut config = config;
    if let Some(out) = common.out {
        config.output.directory = out;
    }
    if let Some(seed) = common.seed {
        config.seed = seed;
    }
    let outcome = run_scenario(&config)?;
    print_report(&outcome.report);
    for f in &outcome.files {
        println!("wrote {}", f.display());
    }
    Ok(outcome.report.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
