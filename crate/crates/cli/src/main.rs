use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fole_cli::commands::{self, Direction, GrothConvention, Which};
use fole_cli::{parse_workspace, CmdError, Report};

/// Exit codes: 0 every check passed, 1 a check failed, 2 bad input.
#[derive(Parser)]
#[command(name = "fole", version, about = "Joins, sums and universal constructions over databases of tables")]
struct Cli {
    /// Workspace document (JSON).
    #[arg(long)]
    workspace: PathBuf,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    /// Result table only; for `join` and `sum`.
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Join (limit) of a database.
    Join { database: String },
    /// Sum (colimit) of a database.
    Sum { database: String },
    /// Schema, key or data part of a database.
    Project {
        database: String,
        #[arg(value_enum)]
        which: Which,
    },
    /// Limit of a set-valued diagram.
    Limit { diagram: String },
    /// Colimit of a set-valued diagram.
    Colimit { diagram: String },
    /// Left or right Kan extension of a diagram along a passage.
    Kan {
        #[arg(value_enum)]
        direction: Direction,
        passage: String,
        diagram: String,
    },
    /// Check a database morphism.
    Check { morphism: String },
    /// Total category of an indexed category.
    Groth {
        indexed: String,
        #[arg(long, value_enum)]
        convention: Option<GrothConvention>,
    },
    /// Re-run the checks of one named entity.
    Validate { entity: String },
}

fn run(cli: &Cli) -> Result<Report, String> {
    let ws = parse_workspace(&cli.workspace).map_err(|e| e.to_string())?;
    let r = match &cli.command {
        Command::Join { database } => commands::cmd_join(&ws, database),
        Command::Sum { database } => commands::cmd_sum(&ws, database),
        Command::Project { database, which } => commands::cmd_project(&ws, database, *which),
        Command::Limit { diagram } => commands::cmd_limit(&ws, diagram),
        Command::Colimit { diagram } => commands::cmd_colimit(&ws, diagram),
        Command::Kan { direction, passage, diagram } => commands::cmd_kan(&ws, *direction, passage, diagram),
        Command::Check { morphism } => commands::cmd_check(&ws, morphism),
        Command::Groth { indexed, convention } => commands::cmd_groth(&ws, indexed, *convention),
        Command::Validate { entity } => commands::cmd_validate(&ws, entity),
    };
    r.map_err(|e: CmdError| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => match &report.table {
            Some(t) => commands::table_csv(t),
            None => {
                eprintln!("error: --format csv needs a command with a table result");
                return ExitCode::from(2);
            }
        },
    };
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    for v in report.verdicts.iter().filter(|v| !v.pass) {
        eprintln!("failed: {}{}", v.check, v.detail.as_ref().map(|d| format!(": {d}")).unwrap_or_default());
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
