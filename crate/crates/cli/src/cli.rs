//! Argument parsing and exit codes.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use pseudoalg::rational::{parse_rational, Q};

use crate::commands::{execute, resolve_construction, resolve_kind, run_tasks, Outcome, Settings, UsageError};
use crate::model::{parse_file, Task};

pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pseudoalg", version, about = "Checks Hopf algebras, H-pseudoalgebras and operators on them")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Definition file.
    pub file: PathBuf,
    /// Degree bound for checks and for the rank-one search.
    #[arg(long)]
    pub cap: Option<u32>,
    /// Truncation degree of the dual of an enveloping algebra.
    #[arg(long)]
    pub truncation: Option<u32>,
    /// Weight `p/q` for reynolds, rota-baxter and reynolds-double.
    #[arg(long, value_parser = parse_weight)]
    pub weight: Option<Q>,
    /// Number of worker threads.
    #[arg(long)]
    pub parallel: Option<usize>,
    /// Also write the report to this path.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hopf axioms, pseudoalgebra axioms and every claimed operator identity.
    Check(Common),
    /// Builds a new structure from an operator and checks it.
    Derive {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        op: String,
        /// lie-from-averaging, assoc-twist-right, assoc-twist-left, ns-from-nijenhuis,
        /// lie-deform-nijenhuis or reynolds-double.
        #[arg(long)]
        kind: String,
    },
    /// Finds all operators `e -> h e` of a kind on a rank-one pseudoalgebra.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        kind: String,
    },
    /// Lifts an operator to the annihilation algebra and checks the lifted identity.
    Annihilate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        op: String,
        #[arg(long)]
        kind: String,
    },
    /// Conformal axioms of the induced algebra, and operator identities on it.
    Conformal {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        op: Option<String>,
        /// Overrides the operator's claimed kinds.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Runs the tasks listed in the file.
    Run(Common),
}

fn parse_weight(s: &str) -> Result<Q, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational literal p/q"))
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Check(c) | Command::Run(c) => c,
            Command::Derive { common, .. }
            | Command::Classify { common, .. }
            | Command::Annihilate { common, .. }
            | Command::Conformal { common, .. } => common,
        }
    }
}

fn dispatch(cmd: &Command) -> Result<Outcome, UsageError> {
    let c = cmd.common();
    let def = parse_file(&c.file)?;
    let w = c.weight.as_ref();
    let mut settings = Settings { cap: c.cap, truncation: c.truncation, kind: None };
    let task = match cmd {
        Command::Check(_) => Task::Check,
        Command::Run(_) => return run_tasks(&def, &settings),
        Command::Derive { op, kind, .. } => Task::Derive { op: op.clone(), construction: resolve_construction(kind, w)? },
        Command::Classify { kind, .. } => Task::Classify { kind: resolve_kind(kind, w)? },
        Command::Annihilate { op, kind, .. } => Task::Annihilate { op: op.clone(), kind: resolve_kind(kind, w)? },
        Command::Conformal { op, kind, .. } => {
            settings.kind = kind.as_deref().map(|k| resolve_kind(k, w)).transpose()?;
            if settings.kind.is_some() && op.is_none() {
                return Err(UsageError::Invalid("--kind needs --op".into()));
            }
            Task::Conformal { op: op.clone() }
        }
    };
    execute(&task, &def, &settings)
}

/// Parses `args` (program name first), runs the command and returns the exit code:
/// 0 pass, 1 a check failed, 2 usage or parse error, 3 undecided.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let common = cli.command.common();
    if let Some(n) = common.parallel {
        if n == 0 {
            eprintln!("error: --parallel must be positive");
            return EXIT_USAGE;
        }
        // A second call in the same process keeps the first pool, which only affects speed.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(&cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            let _ = std::io::stdout().flush();
            if let Some(path) = &common.report {
                if let Err(e) = std::fs::write(path, &out.text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            }
            out.status.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
