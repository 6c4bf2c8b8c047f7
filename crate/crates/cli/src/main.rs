use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use a1kit_cli::campaign::{run_campaign, Campaign, CampaignConfig};
use a1kit_cli::error::HarnessError;
use a1kit_cli::report::{
    self, a1_report, omega_report, render_campaign, sharp_report, weight_report, ReportFormat,
};
use a1kit_core::{
    a1_constant, json, moment_ratio, moment_ratio_inverse, sharp_bound, StepWeight,
};

/// Exact A₁ constants for step weights and verification campaigns for the
/// sharp reverse power-mean bounds.
#[derive(Parser)]
#[command(name = "a1kit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputOpts {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: csv or json.
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the exact A₁ constant of a weight file, with witness.
    A1 {
        /// Weight JSON: {"breakpoints": [...], "values": [...]}.
        #[arg(long)]
        weight: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Emit the non-increasing rearrangement of a weight file.
    Rearrange {
        #[arg(long)]
        weight: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Evaluate the critical exponent and sharp constant for (c, p).
    Sharp {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Invert the moment-ratio function: the z with H_p(z) = y.
    Omega {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        y: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run a verification campaign: thm1, thm2, sharpness, majorization,
    /// cover, or divergence.
    Verify {
        campaign: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Master seed; trials derive their own seeds from it.
        #[arg(long, env = "A1KIT_SEED", default_value_t = 0xA1C0_FFEE)]
        seed: u64,
        /// Largest generated piece count.
        #[arg(long)]
        pieces: Option<usize>,
        /// thm2: exponent as a fraction of the critical exponent (0 = p 1).
        #[arg(long)]
        p_frac: Option<f64>,
        /// Generator kind: uniform, power-discretized, shuffled-power,
        /// multiplicative-walk.
        #[arg(long)]
        kind: Option<String>,
        /// Power-weight parameter for the power generator kinds.
        #[arg(long)]
        tau: Option<f64>,
        /// thm2: random candidate intervals per trial.
        #[arg(long)]
        random_intervals: Option<usize>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Parameter sweeps.
    Sweep {
        #[command(subcommand)]
        sweep: SweepCommand,
    },
}

#[derive(Subcommand)]
enum SweepCommand {
    /// Truncated moment at the critical exponent across eps = 10^-1..10^-K.
    Divergence {
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 12)]
        eps_decades: u32,
        #[arg(long, env = "A1KIT_SEED", default_value_t = 0xA1C0_FFEE)]
        seed: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn load_weight(path: &PathBuf) -> Result<StepWeight, HarnessError> {
    let doc = std::fs::read_to_string(path)?;
    Ok(json::weight_from_json(&doc)?)
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::A1 { weight, output } => {
            let format: ReportFormat = output.format.parse()?;
            let w = load_weight(&weight)?;
            let rendered = a1_report(&a1_constant(&w), format);
            report::emit(&rendered, output.out.as_deref())
        }
        Command::Rearrange { weight, output } => {
            let format: ReportFormat = output.format.parse()?;
            let w = load_weight(&weight)?;
            let rendered = weight_report(&w.rearrange(), format);
            report::emit(&rendered, output.out.as_deref())
        }
        Command::Sharp { c, p, output } => {
            let format: ReportFormat = output.format.parse()?;
            let bound = sharp_bound(c, p)?;
            report::emit(&sharp_report(&bound, format), output.out.as_deref())
        }
        Command::Omega { p, y, output } => {
            let format: ReportFormat = output.format.parse()?;
            let omega = moment_ratio_inverse(p, y)?;
            let residual = (moment_ratio(p, omega)? - y).abs();
            report::emit(
                &omega_report(p, y, omega, residual, format),
                output.out.as_deref(),
            )
        }
        Command::Verify {
            campaign,
            trials,
            seed,
            pieces,
            p_frac,
            kind,
            tau,
            random_intervals,
            output,
        } => {
            let format: ReportFormat = output.format.parse()?;
            let campaign: Campaign = campaign.parse()?;
            let mut config = CampaignConfig {
                trials,
                seed,
                ..CampaignConfig::default()
            };
            if let Some(pieces) = pieces {
                config.max_pieces = pieces;
            }
            if let Some(p_frac) = p_frac {
                config.p_frac = p_frac;
            }
            if let Some(kind) = kind {
                config.kind = kind.parse()?;
            }
            if let Some(tau) = tau {
                config.tau = tau;
            }
            if let Some(n) = random_intervals {
                config.random_intervals = n;
            }
            let result = run_campaign(campaign, &config)?;
            eprintln!(
                "campaign {}: {}/{} passed in {:.2}s",
                result.campaign, result.passes, result.trials, result.wall_time_secs
            );
            report::emit(&render_campaign(&result, format), output.out.as_deref())
        }
        Command::Sweep { sweep } => match sweep {
            SweepCommand::Divergence {
                c,
                eps_decades,
                seed,
                output,
            } => {
                let format: ReportFormat = output.format.parse()?;
                let config = CampaignConfig {
                    c,
                    eps_decades,
                    seed,
                    ..CampaignConfig::default()
                };
                let result = run_campaign(Campaign::Divergence, &config)?;
                eprintln!(
                    "campaign {}: {}/{} passed in {:.2}s",
                    result.campaign, result.passes, result.trials, result.wall_time_secs
                );
                report::emit(&render_campaign(&result, format), output.out.as_deref())
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
