//! Command-line front end: exact queries, batch tables, the F-table cache and
//! the built-in acceptance checks.

pub mod args;
pub mod cache;
pub mod error;
pub mod format;
pub mod query;
pub mod request;
pub mod selftest;

use qdvol_core::spectral::{set_truncation_margin, tables_computed};

pub use args::Cli;
pub use error::{CliError, CliResult};
pub use request::QueryRequest;

use args::Command;

/// What a command produced: stdout text, stderr notes, and whether the run succeeded.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub stdout: String,
    pub notes: Vec<String>,
    pub success: bool,
}

/// Validates, configures the engine, answers the request and maintains the cache.
pub fn execute(cli: Cli) -> CliResult<Outcome> {
    let req = QueryRequest::from_cli(cli)?;
    if let Some(w) = req.workers {
        // Fails only if a pool already exists in this process; the existing pool is kept.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w as usize).build_global();
    }
    set_truncation_margin(req.truncation_margin as i64);
    let mut notes = Vec::new();

    if let Command::Selftest { level } = req.command {
        let ctx = selftest::SelftestContext { qdvol: std::env::current_exe().ok() };
        let results = selftest::run(level, &ctx);
        let mut stdout: String = results.iter().map(|r| r.line() + "\n").collect();
        let (summary, ok) = selftest::summarize(&results);
        stdout += &format!("summary: {summary}\n");
        return Ok(Outcome { stdout, notes, success: ok });
    }

    if let Some(dir) = &req.cache_dir {
        let status = cache::load(dir);
        notes.extend(status.warning());
        if req.stats {
            notes.push(format!("cache: {status:?}"));
        }
    }
    let stdout = query::run_query(&req)?;
    let computed = tables_computed();
    if let Some(dir) = &req.cache_dir {
        if computed > 0 {
            match cache::store(dir) {
                Ok(n) if req.stats => notes.push(format!("cache: stored {n} tables")),
                Ok(_) => {}
                Err(e) => notes.push(format!("warning: cache not written: {e}")),
            }
        }
    }
    if req.stats {
        notes.push(format!("tables computed: {computed}"));
    }
    Ok(Outcome { stdout, notes, success: true })
}
