//! Command-line driver for orbit enumeration, weak order graphs, atom sets,
//! closed-form verification, classification and symmetric-function reports.
//!
//! Exit status is 0 on success, 1 when a verification finds a disagreement,
//! and 2 on usage errors or invalid parameters. `BRION_THREADS` sets the
//! number of worker threads.

mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Output encodings accepted by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Tab-separated rows with a header line.
    Tsv,
    /// A single JSON document.
    Json,
    /// Graphviz, for the `graph` verb only.
    Dot,
}

/// Which statement `verify` checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    /// Path-based atoms against the closed-form cells and generators.
    Main,
    /// Involution Stanley functions of longest elements against Schur functions.
    Symfunc,
}

/// Parameters shared by every verb that works on a symmetric space.
#[derive(Debug, Clone, clap::Args)]
pub struct SpaceArgs {
    /// Symmetric space: AI, AII, AIII, BI, CI, CII, DI, DII, DIII or DIV.
    #[arg(long)]
    pub space: Option<String>,
    /// Rank parameter for single-parameter spaces, or the rank bound when no space is given.
    #[arg(long)]
    pub n: Option<usize>,
    /// First signature parameter.
    #[arg(long)]
    pub p: Option<usize>,
    /// Second signature parameter.
    #[arg(long)]
    pub q: Option<usize>,
    /// Allow ranks 5 and 6.
    #[arg(long)]
    pub big: bool,
}

#[derive(Debug, Parser)]
#[command(name = "brion", version, about = "Atom sets of symmetric-subgroup orbit closures")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "tsv")]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// List the orbit indices of a space with their twisted involutions.
    Clans(SpaceArgs),
    /// Export the weak order graph.
    Graph(SpaceArgs),
    /// Print the path-based atom sets with multiplicity exponents.
    Atoms(SpaceArgs),
    /// Compare path-based atoms with the closed-form description.
    Verify {
        #[command(flatten)]
        space: SpaceArgs,
        /// Statement to check.
        #[arg(long, value_enum, default_value = "main")]
        theorem: Theorem,
        /// Stop at the first disagreeing twisted involution.
        #[arg(long)]
        fail_fast: bool,
        /// Number of variables for the symmetric-function checks.
        #[arg(long = "vars", default_value_t = 5)]
        vars: usize,
    },
    /// Classify orbit closures as multiplicity-free, uniform or alternating.
    Classify(SpaceArgs),
    /// Evaluate a Schur, Stanley or involution symmetric function.
    Symfunc(commands::SymfuncArgs),
    /// Evaluate conjectural identities and report whether they hold.
    Conjectures {
        /// Identity to evaluate; all of them when omitted.
        #[arg(long)]
        id: Option<String>,
        /// Parameter of the statement; 1 through 5 when omitted.
        #[arg(long)]
        n: Option<usize>,
        /// Number of variables.
        #[arg(long = "vars", default_value_t = 4)]
        vars: usize,
    },
}

fn configure_threads() -> Result<(), commands::CliError> {
    if let Ok(value) = std::env::var("BRION_THREADS") {
        let threads: usize = value.parse().map_err(|_| {
            commands::CliError::Usage(format!("BRION_THREADS must be a positive integer, got {value:?}"))
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| commands::CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.verb {
        Verb::Clans(args) => commands::clans(&args, cli.format),
        Verb::Graph(args) => commands::graph(&args, cli.format),
        Verb::Atoms(args) => commands::atoms(&args, cli.format),
        Verb::Verify {
            space,
            theorem,
            fail_fast,
            vars,
        } => commands::verify(&space, theorem, fail_fast, vars, cli.format),
        Verb::Classify(args) => commands::classify(&args, cli.format),
        Verb::Symfunc(args) => commands::symfunc(&args, cli.format),
        Verb::Conjectures { id, n, vars } => commands::conjectures(id.as_deref(), n, vars, cli.format),
    });
    match result {
        Ok(output) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(output.text.as_bytes());
            if output.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("usage: brion <clans|graph|atoms|verify|classify|symfunc|conjectures> [--space S] [--n N | --p P --q Q] [--format tsv|json|dot]");
            ExitCode::from(2)
        }
    }
}
