use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tvcat_core::Side;

use tvcat_cli::commands::{self, CheckFlags, ConstructKind};
use tvcat_cli::error::{CliError, Result};
use tvcat_cli::report::Report;
use tvcat_cli::schema::{parse_definition, Resolved};

/// Checker and constructor for quantale-valued spaces on finite carriers.
#[derive(Debug, Parser)]
#[command(name = "tvcat", version, max_term_width = 100)]
struct Cli {
    /// Definition file (JSON) declaring the quantale, theory, spaces,
    /// maps, and distributors.
    #[arg(short, long, global = true)]
    file: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Check laws of a space; with no flags, checks the structure axioms.
    Check {
        /// Space name from the definition file.
        space: String,
        /// Check reflexivity and transitivity of the structure matrix.
        #[arg(long)]
        axioms: bool,
        /// Check the mapping-space characterisation of core-compactness.
        #[arg(long)]
        core_compact: bool,
        /// Check that every structure row is represented by a point.
        #[arg(long)]
        repr: bool,
        /// Check the lattice-duality conditions for the induced algebra.
        #[arg(long)]
        esakia: bool,
        /// Check that no two distinct points are isomorphic.
        #[arg(long)]
        separated: bool,
    },
    /// Check that a map preserves the structure.
    CheckMap {
        /// Map name from the definition file.
        map: String,
    },
    /// Build a derived space and re-emit it as a definition file.
    Construct {
        /// What to build: P (presheaves), V (up-sets), dual, tensor, exp,
        /// or lift-T (free word structure).
        kind: ConstructKind,
        /// Input space name(s): one for P/V/dual/lift-T, two for tensor/exp.
        spaces: Vec<String>,
        /// Write the constructed definition to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for an adjoint to a map by exhausting candidate maps.
    Adjoint {
        /// Map name from the definition file.
        map: String,
        /// Which side the given map sits on.
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Split an idempotent endo-relation through its core.
    Split {
        /// Distributor name from the definition file.
        relation: String,
    },
    /// Check that every weight on the points has a weighted limit.
    Limits { space: String },
    /// Check that every weight on the rows has a weighted colimit.
    Colimits { space: String },
    /// Check the conjugation adjunction, its idempotency, and limit transfer.
    Isbell { space: String },
    /// Round-trip every distributive lattice up to the bound through
    /// its irreducibles.
    DualitySuite {
        #[arg(long, default_value_t = 8)]
        max_size: usize,
    },
    /// Run the standing checks over every labelled carrier up to the bound.
    CorpusSuite {
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

fn need_file(cli: &Cli) -> Result<Resolved> {
    let path = cli
        .file
        .as_deref()
        .ok_or_else(|| CliError::Usage("this command needs --file <definition.json>".into()))?;
    parse_definition(path)
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.cmd {
        Cmd::Check { space, axioms, core_compact, repr, esakia, separated } => {
            let flags = CheckFlags {
                axioms: *axioms,
                core_compact: *core_compact,
                repr: *repr,
                esakia: *esakia,
                separated: *separated,
            };
            commands::check_space(&need_file(cli)?, space, flags)
        }
        Cmd::CheckMap { map } => commands::check_map(&need_file(cli)?, map),
        Cmd::Construct { kind, spaces, out } => {
            let report = commands::construct(&need_file(cli)?, *kind, spaces)?;
            if let Some(path) = out {
                let def = report
                    .construction
                    .as_ref()
                    .expect("construct always attaches a definition");
                let body = serde_json::to_string_pretty(def)
                    .map_err(|e| CliError::Invalid(e.to_string()))?;
                std::fs::write(path, body + "\n").map_err(|e| CliError::Io {
                    path: path.display().to_string(),
                    source: e,
                })?;
            }
            Ok(report)
        }
        Cmd::Adjoint { map, side } => commands::adjoint(&need_file(cli)?, map, (*side).into()),
        Cmd::Split { relation } => commands::split(&need_file(cli)?, relation),
        Cmd::Limits { space } => commands::limits(&need_file(cli)?, space),
        Cmd::Colimits { space } => commands::colimits(&need_file(cli)?, space),
        Cmd::Isbell { space } => commands::isbell(&need_file(cli)?, space),
        Cmd::DualitySuite { max_size } => commands::duality_suite(*max_size),
        Cmd::CorpusSuite { max_size } => commands::corpus_suite(*max_size),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.render_text()),
                Format::Json => print!("{}", report.render_json()),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("tvcat: {e}");
            ExitCode::from(2)
        }
    }
}
