use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use kumfib_cli::commands::{self, EXIT_INVALID};
use kumfib_cli::{verify_paper, Outcome, OutputFormat};

#[derive(Parser)]
#[command(name = "kumfib", version, about = "Kummer-fibred Calabi-Yau threefolds from covers of the modular line")]
struct Cli {
    /// Output format; `report` falls back to the document's own setting.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse a cover given as branch data or an explicit monodromy tuple.
    Report { file: PathBuf },
    /// List admissible branch data up to a degree.
    Enumerate {
        #[arg(long)]
        max_degree: usize,
        /// Skip the tuple search (no Hodge numbers).
        #[arg(long)]
        no_search: bool,
    },
    /// Track the six fibre roots around 0, 1/256 and infinity.
    Monodromy {
        #[arg(long, default_value_t = kumfib::monodromy::DEFAULT_PRECISION)]
        precision: u32,
        #[arg(long, default_value_t = kumfib::monodromy::DEFAULT_STEPS)]
        steps: usize,
    },
    /// Special fibres of the two elliptic surfaces over the nu-line.
    Fibers,
    /// Recompute every reference value.
    VerifyPaper,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fmt = cli.format.unwrap_or_default();
    let outcome = match cli.command {
        Command::Report { file } => match std::fs::read_to_string(&file) {
            Ok(text) => commands::report(&text, cli.format),
            Err(e) => Outcome { stdout: String::new(), stderr: format!("{}: {}\n", file.display(), e), code: EXIT_INVALID },
        },
        Command::Enumerate { max_degree, no_search } => {
            if max_degree > 12 {
                Outcome { stdout: String::new(), stderr: "max-degree is limited to 12\n".into(), code: EXIT_INVALID }
            } else {
                commands::enumerate(max_degree, !no_search, fmt)
            }
        }
        Command::Monodromy { precision, steps } => commands::monodromy(precision, steps, fmt),
        Command::Fibers => commands::fibers(fmt),
        Command::VerifyPaper => verify_paper(fmt),
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
