//! `dcsl` — collapse-model coefficients, noise spectra, stochastic
//! validation and experimental exclusion bounds from the command line.
//!
//! Exit codes: 0 success; 2 configuration/usage error; 3 numerical or
//! statistical failure; 4 no exclusion below the rate cap (bound and
//! exclusion subcommands). Non-zero exits print a one-line JSON object to
//! stderr; tables go to stdout or, with `--out`, atomically to a file.

mod args;
mod commands;
mod output;

use clap::Parser;
use dcsl::DcslError;

use crate::output::emit_error;

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return 0;
            }
            emit_error(2, "usage", &err.to_string());
            return 2;
        }
    };

    match thread_count(cli.threads) {
        Ok(None) => {}
        Ok(Some(n)) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                emit_error(2, "config", &format!("could not size the thread pool: {e}"));
                return 2;
            }
        }
        Err(message) => {
            emit_error(2, "config", &message);
            return 2;
        }
    }

    match commands::dispatch(cli.cmd) {
        Ok((outcome, out_args)) => {
            if let Err(e) =
                output::write_table(&outcome.table, out_args.format.table_format(), out_args.out.as_deref())
            {
                emit_error(3, "io", &format!("could not write output: {e}"));
                return 3;
            }
            if let Some((kind, message)) = outcome.note {
                emit_error(outcome.exit, kind, &message);
            }
            outcome.exit
        }
        Err(err) => {
            let (code, kind) = classify(&err);
            emit_error(code, kind, &err.to_string());
            code
        }
    }
}

/// Worker-thread override: `--threads` wins, then `DCSL_THREADS`, then the
/// library default (one worker per logical CPU).
fn thread_count(flag: Option<usize>) -> Result<Option<usize>, String> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var("DCSL_THREADS") {
            Ok(raw) => Some(
                raw.parse::<usize>()
                    .map_err(|_| format!("DCSL_THREADS must be a positive integer, got `{raw}`"))?,
            ),
            Err(_) => None,
        },
    };
    if n == Some(0) {
        return Err("worker thread count must be at least 1".into());
    }
    Ok(n)
}

fn classify(err: &DcslError) -> (i32, &'static str) {
    if err.is_config_error() {
        (2, "config")
    } else {
        (3, "numerical")
    }
}
