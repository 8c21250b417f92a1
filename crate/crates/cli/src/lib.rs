pub mod args;
pub mod chow_expr;
pub mod commands;
pub mod config;
pub mod report;
pub mod schema;
mod selftest;

use std::io::Write;

use anyhow::{Context, Result};

pub use args::Cli;
pub use config::RunConfig;

/// Run a parsed command line, writing the report. Returns whether every
/// check passed.
pub fn run(cli: &Cli) -> Result<bool> {
    let cfg = RunConfig::resolve(cli)?;
    let report = commands::dispatch(&cli.command, &cfg)?;
    let text = report.render(cfg.format)?;
    match &cfg.output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(report.ok)
}
