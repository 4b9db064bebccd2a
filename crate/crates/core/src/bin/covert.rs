use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use covert_core::cli::{
    cmd_analyze, cmd_optimize, cmd_simulate, cmd_sweep, parse_metrics, CliError, CliResult,
    Experiment, SweepSpec, SweepVar,
};
use covert_core::{CovertnessMetric, QuadratureConfig, Scenario, SimMode};

#[derive(Parser)]
#[command(name = "covert", version, about = "Covert short-packet link analysis")]
struct Cli {
    /// Scenario file (flat JSON object); defaults apply to absent fields.
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Quadrature nodes for the fading average.
    #[arg(long, global = true, default_value_t = 100)]
    quad_nodes: usize,
    /// Covertness metric used by the optimizer: exact or approx.
    #[arg(long, global = true, default_value = "exact")]
    covert_metric: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct PointArgs {
    /// Transmit power in W (overrides the scenario).
    #[arg(long = "P_a", alias = "pa")]
    p_a: Option<f64>,
    /// Rate in bits per channel use.
    #[arg(long = "R", alias = "rate")]
    rate: Option<f64>,
    /// Blocklength in channel uses.
    #[arg(long)]
    n: Option<u32>,
    /// Jamming power in W.
    #[arg(long = "P_w", alias = "pw")]
    p_w: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Every analytic metric at one operating point.
    Analyze {
        #[command(flatten)]
        point: PointArgs,
    },
    /// Tabulate metrics over a one-dimensional grid as CSV.
    Sweep {
        #[command(flatten)]
        point: PointArgs,
        /// P_a, P_w, n, epsilon or kappa.
        #[arg(long)]
        var: String,
        #[arg(long)]
        start: f64,
        #[arg(long)]
        stop: f64,
        #[arg(long)]
        points: usize,
        /// Logarithmic spacing.
        #[arg(long)]
        log: bool,
        #[arg(long, default_value = "xi_exact,xi_approx,xi_kl,delta,eta")]
        metrics: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
    /// Jointly optimize power, rate and blocklength.
    Optimize,
    /// Seeded Monte Carlo estimate.
    Simulate {
        #[command(flatten)]
        point: PointArgs,
        /// detection_signal_level, detection_analytic_avg or decoding_avg.
        #[arg(long, default_value = "detection_signal_level")]
        mode: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
}

fn load(cli: &Cli) -> CliResult<Experiment> {
    let scenario = match &cli.scenario {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            Scenario::from_json_str(&text)?
        }
        None => Scenario::default(),
    };
    let metric = match cli.covert_metric.as_str() {
        "exact" => CovertnessMetric::Exact,
        "approx" => CovertnessMetric::Approx,
        other => {
            return Err(CliError::Usage(format!(
                "unknown covertness metric `{other}`"
            )))
        }
    };
    Ok(Experiment {
        scenario,
        quad: QuadratureConfig::new(cli.quad_nodes)?,
        metric,
        ..Experiment::default()
    })
}

fn apply(exp: &mut Experiment, p: &PointArgs) {
    let s = &mut exp.scenario;
    if let Some(v) = p.p_a {
        s.transmission.p_a = v;
    }
    if let Some(v) = p.rate {
        s.transmission.rate = v;
    }
    if let Some(v) = p.n {
        s.transmission.n = v;
    }
    if let Some(v) = p.p_w {
        s.params.p_w = v;
    }
}

fn run(cli: &Cli) -> CliResult<String> {
    let mut exp = load(cli)?;
    match &cli.command {
        Command::Analyze { point } => {
            apply(&mut exp, point);
            cmd_analyze(&exp)
        }
        Command::Sweep {
            point,
            var,
            start,
            stop,
            points,
            log,
            metrics,
            seed,
            trials,
        } => {
            apply(&mut exp, point);
            exp.seed = *seed;
            exp.trials = *trials;
            let spec = SweepSpec {
                var: var.parse::<SweepVar>()?,
                start: *start,
                stop: *stop,
                points: *points,
                log: *log,
            };
            cmd_sweep(&exp, &spec, &parse_metrics(metrics)?)
        }
        Command::Optimize => cmd_optimize(&exp),
        Command::Simulate {
            point,
            mode,
            seed,
            trials,
        } => {
            apply(&mut exp, point);
            exp.seed = *seed;
            exp.trials = *trials;
            let mode: SimMode = mode.parse()?;
            cmd_simulate(&exp, mode)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|text| match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(CliError::from),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
