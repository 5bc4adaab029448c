//! Command-line front end for the `z4trace` library.

pub mod commands;
pub mod config;
pub mod funcspec;
pub mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{resolve_budget, CliError, CliResult, Format, Kind, RunConfig};
use funcspec::FunctionSpec;
use verify::{MRange, Target};

#[derive(Debug, Parser)]
#[command(
    name = "z4trace",
    version,
    about = "Build and verify trace codes over Z4"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the field and Galois ring data for one m.
    RingInfo {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=12))]
        m: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also list the Teichmüller set.
        #[arg(long)]
        teichmuller: bool,
    },
    /// Construct a trace code and report its weights and binary codes.
    Build(BuildArgs),
    /// Check a group of claims; exits 1 if any fails.
    Verify {
        #[arg(value_enum)]
        target: Target,
        /// Range of m, `lo..hi` (inclusive) or a single value.
        #[arg(long)]
        m: Option<MRange>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Uniform enumeration cap, overriding Z4TRACE_MAX_M.
        #[arg(long)]
        max_m: Option<u32>,
    },
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=12), required_unless_present = "config")]
    pub m: Option<u32>,
    #[arg(long, value_enum, required_unless_present = "config")]
    pub kind: Option<Kind>,
    /// Boolean function, e.g. `affine:a=1,b=1`, `gold:alpha=1,i=1`,
    /// `mm:identity`, `hex:6996`, `bent:auto`, `semibent:auto`.
    #[arg(long = "f")]
    pub function: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Draw a random skew set from this seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Uniform enumeration cap, overriding Z4TRACE_MAX_M.
    #[arg(long)]
    pub max_m: Option<u32>,
    /// List every codeword as CSV (m <= 3).
    #[arg(long)]
    pub codewords: bool,
    /// Read the whole configuration from a JSON file.
    #[arg(long, conflicts_with_all = ["m", "kind", "function", "seed", "max_m", "codewords"])]
    pub config: Option<PathBuf>,
    /// Print the resolved configuration as JSON instead of running it.
    #[arg(long)]
    pub dump_config: bool,
}

impl BuildArgs {
    pub fn to_config(&self) -> CliResult<RunConfig> {
        if let Some(path) = &self.config {
            let mut c = commands::load_config(path)?;
            if let Some(f) = self.format {
                c.format = f;
            }
            return Ok(c);
        }
        let function = self
            .function
            .as_deref()
            .map(|s| s.parse::<FunctionSpec>())
            .transpose()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let config = RunConfig {
            m: self.m.expect("required by clap"),
            kind: self.kind.expect("required by clap"),
            function,
            format: self.format.unwrap_or_default(),
            seed: self.seed,
            budget: resolve_budget(self.max_m)?,
            codewords: self.codewords,
        };
        config.validate()?;
        Ok(config)
    }
}

/// Runs a parsed command. `Ok((output, passed))`; `passed` is false only when
/// a verification claim failed.
pub fn execute(cli: &Cli) -> CliResult<(String, bool)> {
    match &cli.command {
        Command::RingInfo {
            m,
            format,
            teichmuller,
        } => Ok((commands::ring_info(*m, *format, *teichmuller)?, true)),
        Command::Build(args) => {
            let config = args.to_config()?;
            if args.dump_config {
                let mut s = serde_json::to_string_pretty(&config)?;
                s.push('\n');
                return Ok((s, true));
            }
            Ok((commands::build(&config)?, true))
        }
        Command::Verify {
            target,
            m,
            format,
            max_m,
        } => {
            let budget = resolve_budget(*max_m)?;
            let report = verify::verify(*target, *m, budget)?;
            Ok((verify::render(&report, *format)?, report.pass))
        }
    }
}
