//! `subtyper`: build, compare and query interval subtyping graphs from class
//! declaration files.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use subtyper::{ArgumentMode, EmitFormat};

#[derive(Parser)]
#[command(
    name = "subtyper",
    version,
    about = "Generic subtyping with interval type arguments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Interval,
    Wildcard,
}

impl From<Mode> for ArgumentMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Interval => ArgumentMode::Interval,
            Mode::Wildcard => ArgumentMode::Wildcard,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Graphml,
    Json,
}

impl From<Format> for EmitFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Dot => EmitFormat::Dot,
            Format::Graphml => EmitFormat::GraphMl,
            Format::Json => EmitFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Construct S_k and write it out.
    Build {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        iterations: usize,
        #[arg(long, value_enum, default_value = "interval")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "json")]
        emit: Format,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Color DOT edges whose endpoints already exist in S_{k-1}.
        #[arg(long)]
        highlight: bool,
    },
    /// Tabulate graph sizes for interval and wildcard arguments side by side.
    Compare {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        iterations: usize,
    },
    /// Answer `T1 <: T2` in S_k. Exit status 0 = true, 4 = false, 5 = unknown.
    Query {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        iterations: usize,
        #[arg(long, value_enum, default_value = "interval")]
        mode: Mode,
        query: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(commands::EXIT_PARSE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let code = match cli.command {
        Command::Build {
            input,
            iterations,
            mode,
            emit,
            out,
            highlight,
        } => commands::build(
            &input,
            iterations,
            mode.into(),
            emit.into(),
            out.as_deref(),
            highlight,
        ),
        Command::Compare { input, iterations } => commands::compare(&input, iterations),
        Command::Query {
            input,
            iterations,
            mode,
            query,
        } => commands::query(&input, iterations, mode.into(), &query),
    };
    ExitCode::from(code)
}
