//! Command-line front end, network files and result formats for
//! `invertcert-core`.

pub mod bench;
pub mod certjson;
pub mod clock;
pub mod commands;
pub mod error;
pub mod lpdump;
pub mod netfile;
pub mod oracle_check;
pub mod plot;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use error::{CliError, Result};

/// Parses `args` (program name first), runs the command and returns the
/// process exit code: 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match commands::Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::execute(&cli).and_then(|o| {
        emit(cli.out.as_deref(), &o.text)?;
        o.failure.map_or(Ok(()), Err)
    }) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(out: Option<&std::path::Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
