//! Validated requests. Every check that can be made without computing runs here.

use std::path::PathBuf;

use qdvol_core::analytics::check_stratum;

use crate::args::{Cli, Command, OutputFormat};
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone)]
pub struct QueryRequest {
    pub command: Command,
    pub format: OutputFormat,
    pub cache_dir: Option<PathBuf>,
    pub truncation_margin: u32,
    pub workers: Option<u32>,
    pub stats: bool,
}

impl QueryRequest {
    pub fn from_cli(cli: Cli) -> CliResult<Self> {
        let req = QueryRequest {
            command: cli.command,
            format: cli.format,
            cache_dir: cli.cache_dir,
            truncation_margin: cli.truncation_margin,
            workers: cli.workers,
            stats: cli.stats,
        };
        req.validate()?;
        Ok(req)
    }

    /// Command-specific preconditions.
    pub fn validate(&self) -> CliResult<()> {
        match &self.command {
            Command::Volume { genus, poles } | Command::Constants { genus, poles } => check_stratum(*genus, *poles)?,
            Command::Fcoeff { genus, npoints, indices } => check_fcoeff(*genus, *npoints, indices.as_deref())?,
            Command::Poly { genus } => {
                if *genus < 1 {
                    return invalid("poly needs genus >= 1");
                }
            }
            Command::Table { genus, poles_from, poles_to, quantity, .. } => {
                if poles_from > poles_to {
                    return invalid(format!("empty range: poles-from {poles_from} exceeds poles-to {poles_to}"));
                }
                if !(*poles_from..=*poles_to).any(|n| check_stratum(*genus, n).is_ok()) {
                    return invalid(format!(
                        "no {} is defined for genus {genus} and poles {poles_from}..={poles_to}",
                        quantity.name()
                    ));
                }
            }
            Command::Asym { genus, poles } => {
                if *genus < 1 || *poles < 1 || 2 * *genus + *poles < 4 {
                    return invalid("asym needs genus >= 1, poles >= 1 and 2g - 3 + n >= 1");
                }
            }
            Command::Precompute { max_chi } => {
                if *max_chi < 1 {
                    return invalid("precompute needs max-chi >= 1");
                }
            }
            Command::Selftest { .. } => {}
        }
        Ok(())
    }
}

fn invalid<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::InvalidRequest(msg.into()))
}

fn check_fcoeff(g: u32, n: u32, indices: Option<&[u32]>) -> CliResult<()> {
    if 2 * g as i64 - 2 + n as i64 <= 0 {
        return invalid(format!("F_{{{g},{n}}} is not defined for unstable (g, n)"));
    }
    if let Some(k) = indices {
        if k.len() != n as usize {
            return invalid(format!("expected {n} indices, got {}", k.len()));
        }
        if k.iter().any(|&i| i > u8::MAX as u32) {
            return invalid("indices must be at most 255");
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn parse(args: &[&str]) -> CliResult<QueryRequest> {
        QueryRequest::from_cli(Cli::try_parse_from(std::iter::once("qdvol").chain(args.iter().copied())).unwrap())
    }

    #[test]
    fn rejects_before_computing() {
        assert!(parse(&["volume", "--genus", "1", "--poles", "1"]).unwrap_err().to_string().contains("empty stratum"));
        assert!(parse(&["fcoeff", "--genus", "2", "--npoints", "2", "--indices", "1"]).is_err());
        assert!(parse(&["table", "--genus", "2", "--poles-from", "3", "--poles-to", "1"])
            .unwrap_err()
            .to_string()
            .contains("empty range"));
        assert!(parse(&["table", "--genus", "1", "--poles-from", "0", "--poles-to", "1"]).is_err());
        assert!(parse(&["asym", "--genus", "1", "--poles", "1"]).is_err());
    }

    #[test]
    fn accepts_partial_ranges() {
        assert!(parse(&["table", "--genus", "1", "--poles-from", "0", "--poles-to", "3"]).is_ok());
        assert!(parse(&["fcoeff", "--genus", "2", "--npoints", "0"]).is_ok());
    }

    #[test]
    fn workers_must_be_positive() {
        assert!(Cli::try_parse_from(["qdvol", "--workers", "0", "poly", "--genus", "2"]).is_err());
    }
}
