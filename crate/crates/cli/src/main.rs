use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lenscape::{Error, Limits};

mod commands;

/// Exact invariants of tight contact structures on lens spaces, their
/// covers and fillings, and planar open books.
///
/// Rotation vectors are given in expansion order: the first entry belongs to
/// the first coefficient of the negative continued fraction of p/q.
#[derive(Parser)]
#[command(name = "lenscape", version)]
struct Cli {
    /// Emit `{"command": ..., "result": ...}` JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
pub struct LensArgs {
    /// Order of the fundamental group.
    pub p: String,
    /// Gluing parameter, reduced modulo p.
    pub q: String,
}

#[derive(clap::Args, Clone)]
pub struct RotArg {
    /// Comma-separated rotation numbers in expansion order, e.g. `1,-2`.
    #[arg(long, allow_hyphen_values = true)]
    pub rot: String,
}

#[derive(Subcommand)]
enum Command {
    /// Expansion, dual, number of tight structures and the chi bound.
    Info(LensArgs),
    /// Every tight structure with its class, Euler class and d3.
    Tight(LensArgs),
    /// d3 invariant of one tight structure.
    D3 {
        #[command(flatten)]
        lens: LensArgs,
        #[command(flatten)]
        rot: RotArg,
    },
    /// Poincare dual of the Euler class of one tight structure.
    Euler {
        #[command(flatten)]
        lens: LensArgs,
        #[command(flatten)]
        rot: RotArg,
    },
    /// Overtwistedness criteria and compatible lifts for a cyclic cover.
    Cover {
        #[command(flatten)]
        lens: LensArgs,
        /// Degree of the cover; must divide p.
        #[arg(long)]
        deg: String,
        /// Optional structure to lift.
        #[arg(long, allow_hyphen_values = true)]
        rot: Option<String>,
    },
    /// Which fundamental-group orders a Stein filling may have.
    Pi1 {
        #[command(flatten)]
        lens: LensArgs,
        #[command(flatten)]
        rot: RotArg,
    },
    /// Maximal embedding of the dual plumbing into a diagonal lattice.
    Embed {
        #[command(flatten)]
        lens: LensArgs,
        /// Also run the exhaustive oracle at this ambient rank.
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Milnor fiber obstruction for one tight structure.
    Milnor {
        #[command(flatten)]
        lens: LensArgs,
        #[command(flatten)]
        rot: RotArg,
    },
    /// Check the Artin condition; PRESENTATION is JSON or @file.
    ArtinValidate { presentation: String },
    /// Product of two Artin presentations of equal rank.
    ArtinProduct { first: String, second: String },
    /// Relation matrix and the quasi-positivity screen.
    ArtinMatrix { presentation: String },
    /// Multiplicity matrix and handle counts of a twist factorization.
    McgMult { factorization: String },
    /// Curve configurations realizing a multiplicity matrix.
    McgConfigs {
        /// A symmetric matrix or a factorization (JSON or @file).
        target: String,
        #[arg(long, default_value_t = 20)]
        max_curves: usize,
        /// Blocks of interchangeable holes, e.g. `[["n1","n2"]]`.
        #[arg(long)]
        symmetry: Option<String>,
    },
    /// Apply a lantern rewrite to a positive factorization.
    McgLantern {
        factorization: String,
        /// Three disjoint hole lists, e.g. `[["n1"],["n2"],["s","p1"]]`.
        #[arg(long)]
        pick: String,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit(_) => 3,
        Error::Inconsistency(_) => 1,
        _ => 2,
    }
}

fn run(cli: Cli) -> lenscape::Result<commands::Report> {
    let limits = Limits::from_env()?;
    use commands as c;
    match cli.command {
        Command::Info(l) => c::info(&l, &limits),
        Command::Tight(l) => c::tight(&l, &limits),
        Command::D3 { lens, rot } => c::d3(&lens, &rot.rot, &limits),
        Command::Euler { lens, rot } => c::euler(&lens, &rot.rot, &limits),
        Command::Cover { lens, deg, rot } => c::cover(&lens, &deg, rot.as_deref(), &limits),
        Command::Pi1 { lens, rot } => c::pi1(&lens, &rot.rot, &limits),
        Command::Embed { lens, rank } => c::embed(&lens, rank, &limits),
        Command::Milnor { lens, rot } => c::milnor(&lens, &rot.rot, &limits),
        Command::ArtinValidate { presentation } => c::artin_validate(&presentation),
        Command::ArtinProduct { first, second } => c::artin_product(&first, &second),
        Command::ArtinMatrix { presentation } => c::artin_matrix(&presentation),
        Command::McgMult { factorization } => c::mcg_mult(&factorization),
        Command::McgConfigs { target, max_curves, symmetry } => {
            c::mcg_configs(&target, max_curves, symmetry.as_deref(), &limits)
        }
        Command::McgLantern { factorization, pick } => c::mcg_lantern(&factorization, &pick),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            let out = if json { report.to_json() + "\n" } else { report.text };
            // a closed pipe (e.g. `| head`) is not an error worth a panic
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
