//! Command-line driver for `bandlim-core`: function-spec files, builtin
//! counterexample families and CSV/JSON result tables.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod error;
pub mod spec;
pub mod table;

use std::io::Write;

pub use args::{Cli, Command, Opts};
pub use error::CliError;
pub use spec::{validate_spec, SpecJson};
pub use table::{Format, Row, Table};

/// Worker threads for the rayon pool from `BANDLIM_THREADS`.
pub fn thread_limit() -> Option<usize> {
    std::env::var("BANDLIM_THREADS").ok().and_then(|v| v.trim().parse().ok()).filter(|n| *n > 0)
}

/// Runs a parsed command line and returns the process exit code: 0 on
/// success, 2 when a PASS/FAIL table contains failures, 1 on errors.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(table) => i32::from(table.has_failures()) * 2,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli) -> Result<Table, CliError> {
    let table = match thread_limit() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Argument(format!("BANDLIM_THREADS: {e}")))?
            .install(|| commands::run_command(&cli.command, &cli.opts))?,
        None => commands::run_command(&cli.command, &cli.opts)?,
    };
    let text = table.render(cli.opts.format);
    match &cli.opts.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?,
    }
    Ok(table)
}
