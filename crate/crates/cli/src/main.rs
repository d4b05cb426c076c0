mod args;
mod commands;
mod config;
mod error;
mod manifest;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{Context, Outcome};
use error::{CliError, CliResult};
use manifest::{RunManifest, MANIFEST_NAME};
use output::{write_all, Artifact};

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

fn load_manifest(path: &std::path::Path) -> CliResult<RunManifest> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn execute(cli: &Cli) -> CliResult<Outcome> {
    let started_at = now();
    let (command, ctx) = match &cli.command {
        Command::Replay(r) => {
            let m = load_manifest(&r.manifest)?;
            (m.params, Context { seed: m.seed, bins: m.bins })
        }
        other => (other.clone(), Context { seed: cli.seed, bins: cli.bins }),
    };
    let mut outcome = commands::run(&command, ctx)?;
    let manifest = RunManifest {
        command: outcome.resolved.name().to_string(),
        params: outcome.resolved.clone(),
        seed: ctx.seed,
        bins: ctx.bins,
        version: env!("CARGO_PKG_VERSION").to_string(),
        started_at,
        finished_at: now(),
        outputs: outcome.artifacts.iter().map(|a| a.name.clone()).collect(),
    };
    outcome.artifacts.push(Artifact::json(MANIFEST_NAME, &manifest)?);
    write_all(&cli.out, &outcome.artifacts)?;
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match execute(&cli) {
        Ok(outcome) => {
            for a in &outcome.artifacts {
                println!("wrote {}", cli.out.join(&a.name).display());
            }
            let mut failed = false;
            for f in &outcome.fits {
                let r = &f.report;
                let verdict = match (r.passed, f.enforced) {
                    (true, _) => "PASS",
                    (false, true) => "FAIL",
                    (false, false) => "DEVIATES (reference only)",
                };
                println!("{}: ks = {:.5} (n = {}, threshold {}) {verdict}", f.label, r.ks_distance, r.n, r.pass_threshold);
                failed |= f.enforced && !r.passed;
            }
            if failed && cli.assert_fit {
                eprintln!("error: goodness-of-fit threshold exceeded");
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
