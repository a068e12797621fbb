use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use ranklab::game::{play, ClassSpec, Transcript};
use ranklab::oracles::{online_rank_value, SolveError, DEFAULT_BUDGET};
use ranklab::registry::{presenter_from_spec, ranker_from_spec, PresenterDefaults};
use ranklab::verify::verify_transcript;

mod experiment;

const EXIT_VERIFY: u8 = 1;
const EXIT_STRATEGY: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_SCENARIO: u8 = 4;

#[derive(Parser)]
#[command(name = "ranklab", version, about = "On-line vertex ranking games on trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one game and write its transcript.
    Play {
        #[arg(long)]
        class: String,
        #[arg(long)]
        presenter: String,
        #[arg(long)]
        ranker: String,
        /// Seed for presenters that take one and leave it unset.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Vertex limit for presenters that take one and leave it unset.
        #[arg(long, default_value_t = 64)]
        n_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact on-line ranking number of a capped class.
    Solve {
        #[arg(long)]
        class: String,
        #[arg(long)]
        n_cap: usize,
        #[arg(long, default_value_t = 8)]
        b_max: u32,
        /// Node budget; falls back to RANKLAB_BUDGET, then 10^8.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a transcript and check it.
    Verify { transcript: PathBuf },
    /// Run the scenarios of a JSON config and write a CSV report.
    Experiment {
        config: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_STRATEGY)
        }
    }
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Play { class, presenter, ranker, seed, n_max, out } => {
            let class = ClassSpec::parse(&class)?;
            let mut r = ranker_from_spec(&ranker)?;
            let mut p = presenter_from_spec(&presenter, r.as_ref(), PresenterDefaults { seed, n_max })?;
            let (t, code) = match play(&class, p.as_mut(), r.as_mut(), None) {
                Ok(t) => (t, ExitCode::SUCCESS),
                Err(e) => {
                    eprintln!("strategy error in round {}: {}", e.round, e.source);
                    (*e.transcript, ExitCode::from(EXIT_STRATEGY))
                }
            };
            if let Some(path) = out {
                fs::write(&path, t.to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
            let max = t.max_label().map_or(0, |l| l.get());
            println!("max_label={max} rounds={}", t.rounds());
            Ok(code)
        }
        Command::Solve { class, n_cap, b_max, budget, out } => {
            let class = ClassSpec::parse(&class)?;
            let budget = match budget {
                Some(b) => b,
                None => budget_from_env()?,
            };
            match online_rank_value(&class, n_cap, b_max, budget) {
                Ok(res) => {
                    let json = serde_json::to_string_pretty(&res.to_json())?;
                    if let Some(path) = out {
                        fs::write(&path, &json).with_context(|| format!("writing {}", path.display()))?;
                    }
                    println!("{json}");
                    Ok(ExitCode::SUCCESS)
                }
                Err(e @ SolveError::Budget { .. }) => {
                    eprintln!("{e}");
                    Ok(ExitCode::from(EXIT_BUDGET))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Verify { transcript } => {
            let text = fs::read_to_string(&transcript).with_context(|| format!("reading {}", transcript.display()))?;
            let t = match Transcript::from_json(&text) {
                Ok(t) => t,
                Err(e) => {
                    println!("fail: transcript does not parse: {e}");
                    return Ok(ExitCode::from(EXIT_VERIFY));
                }
            };
            match verify_transcript(&t) {
                Ok(r) => {
                    let reproduced = match r.reproduced {
                        Some(true) => "yes",
                        Some(false) => "no",
                        None => "n/a",
                    };
                    println!(
                        "pass rounds={} max_label={} reproduced={reproduced} audits={}",
                        r.rounds,
                        r.max_label.unwrap_or(0),
                        if r.audits.is_empty() { "none".to_string() } else { r.audits.join("+") }
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Err(f) => {
                    println!("fail {f}");
                    Ok(ExitCode::from(EXIT_VERIFY))
                }
            }
        }
        Command::Experiment { config, out_dir } => {
            let text = fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            let cfg: experiment::ExperimentConfig =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", config.display()))?;
            cfg.validate()?;
            fs::create_dir_all(&out_dir)?;
            let path = out_dir.join(&cfg.output);
            let summary = experiment::run(&cfg, &path, budget_from_env()?)?;
            println!("{} rows, {} failed, written to {}", summary.rows, summary.failed, path.display());
            if let Some(e) = &summary.error {
                eprintln!("scenario aborted: {e}");
            }
            Ok(if summary.ok() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_SCENARIO) })
        }
    }
}

fn budget_from_env() -> Result<u64> {
    match std::env::var("RANKLAB_BUDGET") {
        Ok(v) => v.trim().parse().with_context(|| format!("RANKLAB_BUDGET={v:?} is not a node count")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}
