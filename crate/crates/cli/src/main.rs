use std::io::{self, BufRead, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use nafl_cli::{Outcome, Session, SimOptions, EXIT_INPUT};
use photon_sim::{Envelope, Mode, SimConfig};

#[derive(Parser)]
#[command(
    name = "nafl",
    version,
    about = "Theories, observer timelines and two-slit simulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a theory file: consistency, atom statuses, query legality.
    Check { file: PathBuf },
    /// Replay a scenario and print its timeline report.
    Run(ScenarioArg),
    /// Print the duality audit of a scenario.
    Duality(ScenarioArg),
    /// Run the photon simulator.
    Sim(SimArgs),
    /// Interactive session over a scenario's base theory.
    Repl(ScenarioArg),
    /// List the built-in scenarios.
    Scenarios,
}

#[derive(clap::Args)]
struct ScenarioArg {
    /// Built-in scenario name or path to a scenario file.
    #[arg(long, short)]
    scenario: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Quantum,
    Classical,
    SingleSlit,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnvelopeArg {
    Flat,
    Gaussian,
}

#[derive(clap::Args)]
struct SimArgs {
    /// key = value config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Start from the 6.6% calibration preset.
    #[arg(long)]
    calibrated: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    photons: Option<u64>,
    #[arg(long)]
    wire_width: Option<f64>,
    #[arg(long)]
    period: Option<f64>,
    #[arg(long)]
    half_extent: Option<u32>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, value_enum)]
    envelope: Option<EnvelopeArg>,
    #[arg(long)]
    envelope_width: Option<f64>,
    /// Remove the wire grid.
    #[arg(long)]
    no_grid: bool,
    #[arg(long)]
    bins: Option<usize>,
    /// Parallel chunks (default: one per thread).
    #[arg(long)]
    chunks: Option<usize>,
    /// Write the histogram as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SimArgs {
    fn options(&self) -> anyhow::Result<SimOptions> {
        let mut cfg = match &self.config {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("reading {}", p.display()))?;
                SimConfig::parse(&text)?
            }
            None if self.calibrated => SimConfig::calibrated(),
            None => SimConfig::default(),
        };
        if self.calibrated {
            cfg.wire_width = SimConfig::CALIBRATED_WIRE_RATIO * cfg.period;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.photons {
            cfg.photons = v;
        }
        if let Some(v) = self.period {
            cfg.period = v;
        }
        if let Some(v) = self.wire_width {
            cfg.wire_width = v;
        }
        if let Some(v) = self.half_extent {
            cfg.half_extent = v;
        }
        if let Some(v) = self.bins {
            cfg.bins = v;
        }
        if let Some(m) = self.mode {
            cfg.mode = match m {
                ModeArg::Quantum => Mode::Quantum,
                ModeArg::Classical => Mode::Classical,
                ModeArg::SingleSlit => Mode::SingleSlit,
            };
        }
        match (self.envelope, self.envelope_width) {
            (Some(EnvelopeArg::Flat), None) => cfg.envelope = Envelope::Flat,
            (Some(EnvelopeArg::Gaussian), Some(sigma)) | (None, Some(sigma)) => {
                cfg.envelope = Envelope::Gaussian { sigma }
            }
            (Some(EnvelopeArg::Gaussian), None) => {
                anyhow::bail!("--envelope gaussian needs --envelope-width")
            }
            (Some(EnvelopeArg::Flat), Some(_)) => {
                anyhow::bail!("--envelope-width only applies to the gaussian envelope")
            }
            (None, None) => {}
        }
        if self.no_grid {
            cfg.grid = false;
        }
        cfg.validate()?;
        Ok(SimOptions {
            config: cfg,
            chunks: self.chunks.unwrap_or_else(rayon_threads),
            calibrated: self.calibrated,
        })
    }
}

fn rayon_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn emit(o: &Outcome) -> ExitCode {
    print!("{}", o.stdout);
    eprint!("{}", o.stderr);
    ExitCode::from(o.code as u8)
}

fn repl(scenario: &str) -> anyhow::Result<()> {
    let s = nafl_core::scenarios::resolve(scenario)?;
    let mut session = Session::new(s);
    let interactive = io::stdin().is_terminal();
    let mut out = io::stdout().lock();
    writeln!(out, "{}", session.banner())?;
    let stdin = io::stdin();
    let mut lines = stdin.lock().lines();
    loop {
        if interactive {
            write!(out, "> ")?;
            out.flush()?;
        }
        let Some(line) = lines.next() else { break };
        let reply = session.handle(&line?);
        if !reply.text.is_empty() {
            writeln!(out, "{}", reply.text)?;
        }
        if reply.quit {
            break;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { file } => match std::fs::read_to_string(&file) {
            Ok(text) => emit(&nafl_cli::check(&text)),
            Err(e) => {
                eprintln!("error: {}: {e}", file.display());
                ExitCode::from(EXIT_INPUT as u8)
            }
        },
        Command::Run(a) => emit(&nafl_cli::run(&a.scenario)),
        Command::Duality(a) => emit(&nafl_cli::duality(&a.scenario)),
        Command::Sim(args) => {
            let opts = match args.options() {
                Ok(o) => o,
                Err(e) => {
                    eprintln!("error: {e:#}");
                    return ExitCode::from(EXIT_INPUT as u8);
                }
            };
            let (outcome, csv) = nafl_cli::sim(&opts);
            if let (Some(path), Some(csv)) = (&args.out, csv) {
                if let Err(e) = std::fs::write(path, csv) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(EXIT_INPUT as u8);
                }
            }
            emit(&outcome)
        }
        Command::Repl(a) => match repl(&a.scenario) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(EXIT_INPUT as u8)
            }
        },
        Command::Scenarios => {
            for name in nafl_core::scenarios::BUILTIN_NAMES {
                println!("{name}");
            }
            ExitCode::SUCCESS
        }
    }
}
