use std::path::PathBuf;
use std::process::ExitCode;

use awgris::commands::{self, SweepOptions};
use awgris::{run_scenario, CliError, Task};
use clap::{Args, Parser, Subcommand};

/// Simulate surfaces that shape both the beam and the baseband waveform of
/// a reflected carrier.
#[derive(Parser, Debug)]
#[command(name = "awgris", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Scenario file (JSON).
    #[arg(long, short)]
    config: Option<PathBuf>,
    /// Output directory; overrides the scenario's `output_dir`.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Noise seed; overrides `link.seed`.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sweep the diode bias and write |Γ| and ∠Γ of one unit.
    UnitRc {
        #[command(flatten)]
        common: Common,
        /// Number of bias points.
        #[arg(long, default_value_t = 201)]
        points: usize,
        /// Upper end of the sweep in volts (default: the diode's reference bias).
        #[arg(long)]
        v_max: Option<f64>,
    },
    /// Compute the beam pattern of a scenario's codebook.
    BeamPattern {
        #[command(flatten)]
        common: Common,
    },
    /// Run a scenario end to end.
    Simulate {
        #[command(flatten)]
        common: Common,
    },
    /// Design one DAC input for a target waveform and simulate it.
    SynthSingle {
        #[command(flatten)]
        common: Common,
    },
    /// Split a target across frequency bands, one input per band.
    SynthMulti {
        #[command(flatten)]
        common: Common,
    },
    /// Turn a PGM image into a control signal whose spectrogram draws it.
    SynthImage {
        #[command(flatten)]
        common: Common,
    },
    /// Amplitude spectrum and peaks of a `time_s,value` CSV signal.
    Spectrum {
        #[command(flatten)]
        common: Common,
        /// Signal to analyse.
        #[arg(long, short)]
        input: PathBuf,
    },
}

fn scenario(common: Common, task: Task) -> Result<(), CliError> {
    let config = common
        .config
        .ok_or_else(|| CliError::Usage("--config is required for this subcommand".into()))?;
    let report = run_scenario(&config, common.out.as_deref(), common.seed, task)?;
    for run in &report.runs {
        let label = run.variant.as_deref().unwrap_or(&run.name);
        let mut line = format!("{label}:");
        if let Some(a) = &run.pattern_argmax {
            line += &format!(" argmax θ={:.1}° φ={:.1}°", a.theta_deg, a.phi_deg);
        }
        if let Some(eta) = run.modulation_efficiency {
            line += &format!(" η={eta:.4}");
        }
        if let Some(p) = &run.peaks {
            line += &format!(" peaks={}", p.len());
        }
        if let Some(r) = run.image_correlation {
            line += &format!(" image_corr={r:.4}");
        }
        println!("{line}");
        for w in &run.warnings {
            eprintln!("warning: {label}: {w}");
        }
    }
    println!(
        "wrote {} files to {}",
        report.manifest.files.len(),
        report.out_dir.display()
    );
    Ok(())
}

fn out_dir(common: &Common) -> Result<PathBuf, CliError> {
    common
        .out
        .clone()
        .ok_or_else(|| CliError::Usage("--out is required for this subcommand".into()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::UnitRc {
            common,
            points,
            v_max,
        } => {
            let out = out_dir(&common)?;
            commands::unit_rc(common.config.as_deref(), &out, SweepOptions { points, v_max })?;
            println!("wrote {}", out.join("unit_rc.csv").display());
            Ok(())
        }
        Command::BeamPattern { common } => scenario(common, Task::BeamPattern),
        Command::Simulate { common } => scenario(common, Task::Simulate),
        Command::SynthSingle { common } => scenario(common, Task::SynthSingle),
        Command::SynthMulti { common } => scenario(common, Task::SynthMulti),
        Command::SynthImage { common } => scenario(common, Task::SynthImage),
        Command::Spectrum { common, input } => {
            let out = out_dir(&common)?;
            let (_, summary) = commands::spectrum(&input, common.config.as_deref(), &out)?;
            for p in &summary.peaks {
                println!(
                    "{:.3} Hz  {:.2} dB  ({:.1} dB above floor)",
                    p.freq_hz, p.magnitude_db, p.above_floor_db
                );
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
