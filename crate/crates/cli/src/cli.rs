use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tangle_core::monogamy::{nu_star, Power};
use tangle_core::named::StateName;

#[derive(Debug, Parser)]
#[command(
    name = "tangle-lab",
    version,
    about = "Entanglement measures, monogamy tables and convex roofs of small qubit systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the amplitudes of a named state.
    State {
        #[arg(id = "state_name", value_name = "STATE")]
        name: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate one measure (or every applicable one) on a named state.
    Measure {
        #[arg(id = "measure_name", value_name = "MEASURE")]
        measure: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Reproduce a reference table with expected values and deviations.
    Table {
        which: TableId,
        #[command(flatten)]
        common: Common,
    },
    /// Sample a measure over a (p, phi) grid of a superposition family.
    Scan {
        #[arg(id = "family_name", value_name = "FAMILY")]
        family: Option<String>,
        #[arg(id = "measure_name", value_name = "MEASURE")]
        measure: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Solve the convex roof of a mixture family.
    Roof {
        scenario: RoofKind,
        /// Power for the scenario's three-party terms; shorthand for --nu1 or --nu2.
        #[arg(long)]
        nu: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Check a roof decomposition against its target mixture.
    Verify {
        scenario: RoofKind,
        #[arg(long)]
        nu: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableId {
    #[value(name = "I", alias = "1")]
    One,
    #[value(name = "II", alias = "2")]
    Two,
    #[value(name = "III", alias = "3")]
    Three,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RoofKind {
    T1,
    N1,
    N2,
    /// Conjectured three-tangle envelope of the appendix mixture.
    Tau3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long)]
    pub state: Option<String>,
    #[arg(long, value_parser = parse_p)]
    pub p: Option<f64>,
    #[arg(long, value_parser = parse_phi)]
    pub phi: Option<f64>,
    #[arg(long)]
    pub measure: Option<String>,
    /// `star`, `inf` or a positive number.
    #[arg(long)]
    pub nu1: Option<String>,
    #[arg(long)]
    pub nu2: Option<String>,
    #[arg(long, value_parser = parse_positive)]
    pub mu3: Option<f64>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub grid_p: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub grid_phi: Option<u32>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_p(s: &str) -> Result<f64, String> {
    let p: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(format!("p = {p} is outside [0, 1]"))
    }
}

fn parse_phi(s: &str) -> Result<f64, String> {
    let phi: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if phi.is_finite() {
        Ok(phi)
    } else {
        Err(format!("phi = {phi} is not finite"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(format!("{x} is not a positive number"))
    }
}

/// Parses `star`, `inf` or a number; `star` resolves to the critical power of
/// the first (`which = 1`) or second three-party term.
pub fn parse_power(s: &str, which: u8) -> anyhow::Result<Power> {
    if s.trim().eq_ignore_ascii_case("star") {
        let (a, b) = nu_star();
        return Ok(Power::Finite(if which == 1 { a } else { b }));
    }
    Ok(s.parse::<Power>()?)
}

pub fn parse_state(s: &str) -> anyhow::Result<StateName> {
    Ok(s.parse::<StateName>()?)
}
