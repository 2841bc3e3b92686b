//! Command-line front end for the `kumfib` library.

pub mod commands;
pub mod document;
pub mod verify;

pub use commands::Outcome;
pub use document::OutputFormat;

/// `kumfib verify-paper`; exit code 1 if any check fails.
pub fn verify_paper(format: OutputFormat) -> Outcome {
    let checks = verify::run_all();
    let code = if checks.iter().all(|c| c.pass) { commands::EXIT_OK } else { commands::EXIT_CHECK_FAILED };
    Outcome { stdout: verify::render(&checks, format), stderr: String::new(), code }
}
