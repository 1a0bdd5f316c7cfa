//! `tangle-lab`: named-state measures, reference tables, family scans and
//! convex roofs from the command line.
//!
//! Exit status is 0 on success, 1 when a table cell or a decomposition check
//! misses its tolerance, and 2 for usage errors.

mod cli;
mod commands;
mod format;
mod measures;
mod tables;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use tangle_core::Tolerances;

use cli::{Cli, Command};
use commands::{Context, Outcome};

const TOL_ENV: &str = "TANGLE_LAB_TOL";

fn tolerances() -> anyhow::Result<Tolerances> {
    match std::env::var(TOL_ENV) {
        Ok(text) => Ok(Tolerances::default().with_override(&text)?),
        Err(std::env::VarError::NotPresent) => Ok(Tolerances::default()),
        Err(e) => Err(anyhow::anyhow!("{TOL_ENV}: {e}")),
    }
}

fn run(cli: Cli) -> anyhow::Result<(Outcome, Option<PathBuf>)> {
    let tol = tolerances()?;
    let ctx = |common| Context { tol, common };
    Ok(match cli.command {
        Command::State { name, common } => {
            let c = ctx(common);
            (commands::state(&c, name)?, c.common.out)
        }
        Command::Measure { measure, common } => {
            let c = ctx(common);
            (commands::measure(&c, measure)?, c.common.out)
        }
        Command::Table { which, common } => {
            let c = ctx(common);
            (commands::table(&c, which)?, c.common.out)
        }
        Command::Scan {
            family,
            measure,
            common,
        } => {
            let c = ctx(common);
            (commands::scan(&c, family, measure)?, c.common.out)
        }
        Command::Roof {
            scenario,
            nu,
            common,
        } => {
            let c = ctx(common);
            (commands::roof(&c, scenario, nu)?, c.common.out)
        }
        Command::Verify {
            scenario,
            nu,
            common,
        } => {
            let c = ctx(common);
            (commands::verify(&c, scenario, nu)?, c.common.out)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, out)) => {
            let written = match out {
                Some(path) => std::fs::write(&path, &outcome.text)
                    .map_err(|e| format!("writing {}: {e}", path.display())),
                None => {
                    print!("{}", outcome.text);
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(outcome.status),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
