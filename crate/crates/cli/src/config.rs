use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use z4trace::trace_codes::{Budget, DefiningSetKind};

use crate::funcspec::FunctionSpec;

/// Version tag written at the head of every report.
pub const SCHEMA: &str = "z4trace.report/1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] z4trace::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 1 for a failed claim, 2 for usage, budget and input problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(z4trace::Error::VerificationFailed { .. }) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Support,
    SupportPlus,
    Skew,
}

impl From<Kind> for DefiningSetKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Support => DefiningSetKind::Support,
            Kind::SupportPlus => DefiningSetKind::SupportPlus,
            Kind::Skew => DefiningSetKind::Skew,
        }
    }
}

/// Everything `build` needs. Defaults: text output, canonical skew set, the
/// library's enumeration caps unless `Z4TRACE_MAX_M` or `--max-m` is set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub m: u32,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<FunctionSpec>,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub budget: Budget,
    #[serde(default)]
    pub codewords: bool,
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        if !(1..=z4trace::gf2m::MAX_DEGREE).contains(&self.m) {
            return Err(CliError::Usage(format!(
                "m must lie in 1..=12, got {}",
                self.m
            )));
        }
        match (self.kind, &self.function, self.seed) {
            (Kind::Skew, Some(_), _) => Err(CliError::Usage("skew codes take no --f".into())),
            (Kind::Support | Kind::SupportPlus, None, _) => {
                Err(CliError::Usage("support constructions need --f".into()))
            }
            (Kind::Support | Kind::SupportPlus, _, Some(_)) => {
                Err(CliError::Usage("--seed only applies to skew codes".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)?;
        let config: RunConfig = serde_json::from_str(&text)?;
        config.validate()?;
        Ok(config)
    }
}

/// The budget in force: `--max-m` beats the environment, which beats the
/// library defaults.
pub fn resolve_budget(max_m: Option<u32>) -> CliResult<Budget> {
    match max_m {
        Some(m) => Ok(Budget::uniform(m)),
        None => Ok(Budget::from_env()?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunConfig {
        RunConfig {
            m: 4,
            kind: Kind::SupportPlus,
            function: Some("bent:auto".parse().unwrap()),
            format: Format::Json,
            seed: None,
            budget: Budget::default(),
            codewords: false,
        }
    }

    #[test]
    fn round_trips_through_json() {
        let c = sample();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&json).unwrap(), c);
        let skew = RunConfig {
            kind: Kind::Skew,
            function: None,
            seed: Some(9),
            ..c
        };
        let json = serde_json::to_string(&skew).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&json).unwrap(), skew);
    }

    #[test]
    fn defaults_fill_in() {
        let c: RunConfig = serde_json::from_str(r#"{"m": 2, "kind": "skew"}"#).unwrap();
        assert_eq!(c.format, Format::Text);
        assert_eq!(c.budget, Budget::default());
        assert!(c.validate().is_ok());
        assert!(serde_json::from_str::<RunConfig>(r#"{"m": 2, "kind": "skew", "x": 1}"#).is_err());
    }

    #[test]
    fn validation() {
        assert!(sample().validate().is_ok());
        assert!(RunConfig { m: 0, ..sample() }.validate().is_err());
        assert!(RunConfig {
            function: None,
            ..sample()
        }
        .validate()
        .is_err());
        assert!(RunConfig {
            seed: Some(1),
            ..sample()
        }
        .validate()
        .is_err());
        assert!(RunConfig {
            kind: Kind::Skew,
            ..sample()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn exit_codes() {
        let fail = CliError::Core(z4trace::Error::VerificationFailed {
            witness: "w".into(),
        });
        assert_eq!(fail.exit_code(), 1);
        let budget = CliError::Core(z4trace::Error::BudgetExceeded {
            kind: "skew".into(),
            m: 9,
            max_m: 6,
        });
        assert_eq!(budget.exit_code(), 2);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
    }
}
