use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dcoset::commands;
use dcoset::group::GroupSpec;
use dcoset::{Error, Instance, Report};

const DEFAULT_DATA_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

/// Double-coset decompositions and Clifford-theory checks for fusion data.
#[derive(Parser)]
#[command(name = "dcoset", version)]
struct Cli {
    /// Emit the report as JSON on standard output.
    #[arg(long, global = true)]
    json: bool,

    /// Directory searched for FILE when it is not found as given.
    #[arg(long, global = true, value_name = "DIR")]
    data_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the fusion-ring axioms and the named subalgebras.
    Validate { file: PathBuf },
    /// Classes of the relation r_{LEFT,RIGHT} and the eigenvalue checks.
    Cosets {
        file: PathBuf,
        /// Left subalgebra; `trivial` is {unit}.
        #[arg(long, default_value = "trivial")]
        left: String,
        /// Right subalgebra; `trivial` is {unit}.
        #[arg(long)]
        right: String,
    },
    /// Restriction/induction checks on the clifford block.
    Clifford { file: PathBuf },
    /// Conjugation checks on the conjugation block.
    Conjugate { file: PathBuf },
    /// Build an instance from a group-spec file.
    Group {
        file: PathBuf,
        /// Output instance path.
        #[arg(long, value_name = "OUT")]
        emit: PathBuf,
        /// Normal subgroup for the clifford and conjugation blocks.
        #[arg(long, value_name = "NAME")]
        normal: Option<String>,
    },
    /// Run every suite that applies to the instance.
    CheckAll { file: PathBuf },
}

/// `file` as given, else under the data directory; group specs live in its
/// `groups/` subdirectory and are looked up there first.
fn resolve(file: &Path, data_dir: &Path, group_spec: bool) -> PathBuf {
    if file.exists() {
        return file.to_path_buf();
    }
    let mut candidates = [data_dir.join(file), data_dir.join("groups").join(file)];
    if group_spec {
        candidates.swap(0, 1);
    }
    for candidate in candidates {
        if candidate.exists() {
            return candidate;
        }
    }
    file.to_path_buf()
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let data_dir = cli.data_dir.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_DATA_DIR));
    let load = |file: &Path| Instance::load(resolve(file, &data_dir, false));
    match &cli.command {
        Command::Validate { file } => Ok(commands::cmd_validate(&load(file)?)),
        Command::Cosets { file, left, right } => commands::cmd_cosets(&load(file)?, left, right),
        Command::Clifford { file } => Ok(commands::cmd_clifford(&load(file)?)),
        Command::Conjugate { file } => commands::cmd_conjugate(&load(file)?),
        Command::CheckAll { file } => commands::cmd_check_all(&load(file)?),
        Command::Group { file, emit, normal } => {
            let spec = GroupSpec::load(resolve(file, &data_dir, true))?;
            commands::cmd_group(&spec, emit, normal.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                println!("{report}");
            }
            ExitCode::from(report.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
