//! Command-line front end. [`run`] maps an argument vector to an exit status
//! and the exact bytes to print, so the binary and the tests share one path.

mod args;
mod commands;
pub mod schema;

use std::ffi::OsString;

use clap::Parser;

pub use args::Cli;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// 0 on success, 1 for domain errors, 2 for usage errors.
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let result = match cli.threads {
        None => commands::dispatch(&cli.command),
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k as usize).build() {
            Ok(pool) => pool.install(|| commands::dispatch(&cli.command)),
            Err(e) => return Outcome { code: 1, stdout: format!("ThreadPool\n{e}\n"), stderr: String::new() },
        },
    };
    match result {
        Ok(report) if cli.json => Outcome { code: 0, stdout: report.json + "\n", stderr: String::new() },
        Ok(report) => Outcome { code: 0, stdout: report.text, stderr: String::new() },
        Err(e) => {
            let stdout = if cli.json {
                let doc = schema::ErrorDoc { error: e.name().into(), message: e.to_string() };
                serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n"
            } else {
                format!("{}\n{e}\n", e.name())
            };
            Outcome { code: 1, stdout, stderr: String::new() }
        }
    }
}
