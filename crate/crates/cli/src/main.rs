use std::path::PathBuf;
use std::process::ExitCode;

use catrep_core::category::{Group, Kind};
use catrep_core::exactfield::FieldSpec;
use catrep_core::report::Format;
use clap::{Parser, Subcommand};

mod commands;

use commands::{Job, Outcome};

/// Exact computations with truncated FI, OI, FI_G and OI_G modules.
#[derive(Parser, Debug)]
#[command(name = "catrep", version)]
struct Cli {
    /// Category kind: fi, oi, fi_g, oi_g. Overrides the file header.
    #[arg(long = "cat", global = true)]
    cat: Option<String>,
    /// Group for decorated kinds: none, z/<m>. Overrides the file header.
    #[arg(long, global = true)]
    group: Option<String>,
    /// Ground field: q or fp:<prime>. Overrides the file header.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Truncation degree. Overrides the file header.
    #[arg(long, global = true)]
    horizon: Option<usize>,
    /// text or json.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Largest homological index.
    #[arg(long, global = true, default_value_t = 2)]
    depth: usize,
    /// Largest chain index for decompose and oracle.
    #[arg(long = "max-steps", global = true, default_value_t = 4)]
    max_steps: usize,
    /// Seed for fuzz.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions and generating degree.
    Info {
        file: PathBuf,
        /// Print the normalized presentation instead.
        #[arg(long)]
        emit_normalized: bool,
    },
    /// Polynomial fit of the dimensions.
    Hilbert { file: PathBuf },
    /// Tor dimensions, homological degrees, regularity.
    Homology { file: PathBuf },
    /// The U^n chain and the singular/regular decomposition.
    Decompose { file: PathBuf },
    /// Dimensions of S, K, D and exactness of the key sequence.
    Shift { file: PathBuf },
    /// Compares SDV and DSV.
    ProbeSd { file: PathBuf },
    /// Instantiates the homological-degree and regularity inequalities.
    Verify {
        file: PathBuf,
        /// Regularity offset N in reg(SM(s)) <= s + N.
        #[arg(long, default_value_t = 0)]
        offset: usize,
        /// Largest s for which reg(SM(s)) is computed.
        #[arg(long, default_value_t = 3)]
        hypothesis_bound: usize,
    },
    /// Random presentations through the invariant battery.
    Fuzz {
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// U^n from the chain against the annihilator of I^n.
    Oracle { file: PathBuf },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Some(format) = Format::parse(&cli.format) else {
        return usage(format!("unknown format `{}`", cli.format));
    };
    let kind = match cli.cat.as_deref().map(|c| Kind::parse(c).ok_or(c)) {
        None => None,
        Some(Ok(k)) => Some(k),
        Some(Err(c)) => return usage(format!("unknown category `{c}`")),
    };
    let group = match cli.group.as_deref() {
        None => None,
        Some("none") => Some(None),
        Some(g) => match g.strip_prefix("z/").and_then(|m| m.parse().ok()).map(Group::cyclic) {
            Some(Ok(g)) => Some(Some(g)),
            Some(Err(e)) => return usage(e),
            None => return usage(format!("unknown group `{g}`")),
        },
    };
    let field = match cli.field.as_deref().map(FieldSpec::parse) {
        None => None,
        Some(Ok(f)) => Some(f),
        Some(Err(e)) => return usage(e),
    };
    let job = Job {
        kind,
        group,
        field,
        horizon: cli.horizon,
        depth: cli.depth,
        max_steps: cli.max_steps,
        seed: cli.seed,
    };
    let result = match &cli.command {
        Command::Info { file, emit_normalized } => job.info(file, *emit_normalized),
        Command::Hilbert { file } => job.hilbert(file),
        Command::Homology { file } => job.homology(file),
        Command::Decompose { file } => job.decompose(file),
        Command::Shift { file } => job.shift(file),
        Command::ProbeSd { file } => job.probe_sd(file),
        Command::Verify { file, offset, hypothesis_bound } => job.verify(file, *offset, *hypothesis_bound),
        Command::Fuzz { count } => job.fuzz(*count),
        Command::Oracle { file } => job.oracle(file),
    };
    match result {
        Ok(Outcome::Text(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Report(report, code)) => {
            print!("{}", report.render(format));
            ExitCode::from(code)
        }
        Err(e) => usage(e),
    }
}
