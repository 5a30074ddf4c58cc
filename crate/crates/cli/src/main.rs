//! Command-line front end: poset exports, generator listings, tableau and
//! Hilbert counts, and the full verification sweep.

mod commands;
mod docs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toricgrass::{Exec, Limits, Shape};

/// Environment variable holding the enumeration cap.
pub const MAX_ITEMS_VAR: &str = "TORICGRASS_MAX_ITEMS";

#[derive(Parser, Debug)]
#[command(name = "toricgrass", version, about = "Toric degenerations of (semi-infinite) Grassmannians, checked exactly")]
struct Cli {
    /// Regenerate the worked-example golden files into DIR.
    #[arg(long, value_name = "DIR", num_args = 0..=1, default_missing_value = "docs/examples")]
    seed_docs: Option<PathBuf>,

    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hasse diagram and order ideals of Q(p,n) or a window of Q~(p,n).
    Poset(PosetArgs),
    /// Run every check on a sweep of components and report as JSON.
    Verify(VerifyArgs),
    /// List generator indices, optionally with their initial terms.
    Gens(GensArgs),
    /// Enumerate (PBW-)semistandard semi-infinite tableaux.
    Tableaux(TableauxArgs),
    /// Count weakly increasing generator chains in one bidegree.
    Hilbert(HilbertArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ShapeArgs {
    #[arg(long, default_value_t = 2)]
    p: u32,
    #[arg(long, default_value_t = 4)]
    n: u32,
}

impl ShapeArgs {
    fn shape(&self) -> Result<Shape, CliError> {
        Shape::new(self.p, self.n).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosetChoice {
    Q,
    Qtilde,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyChoice {
    Ss,
    Pbw,
    Both,
}

impl FamilyChoice {
    fn families(self) -> Vec<toricgrass::pluecker::Family> {
        use toricgrass::pluecker::Family;
        match self {
            FamilyChoice::Ss => vec![Family::Ss],
            FamilyChoice::Pbw => vec![Family::Pbw],
            FamilyChoice::Both => Family::BOTH.to_vec(),
        }
    }
}

#[derive(Args, Debug)]
pub struct PosetArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long, value_enum, default_value_t = PosetChoice::Q)]
    kind: PosetChoice,
    /// Highest level of the Q~ window.
    #[arg(long, default_value_t = 1)]
    kmax: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include every order ideal of the window (JSON only).
    #[arg(long)]
    ideals: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long, value_enum, default_value_t = FamilyChoice::Both)]
    family: FamilyChoice,
    #[arg(long, default_value_t = 2)]
    m_max: usize,
    #[arg(long, default_value_t = 1)]
    e_max: u32,
    /// Truncation degree; defaults to e-max and may not be smaller.
    #[arg(long)]
    d: Option<u32>,
    /// Highest shift for the bijection, order and sign checks.
    #[arg(long, default_value_t = 2)]
    kmax: u32,
}

#[derive(Args, Debug)]
pub struct GensArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long, value_enum, default_value_t = FamilyChoice::Both)]
    family: FamilyChoice,
    #[arg(long, default_value_t = 0)]
    kmax: u32,
    /// Include the computed and closed-form initial terms.
    #[arg(long)]
    initial: bool,
}

#[derive(Args, Debug)]
pub struct TableauxArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long, value_enum, default_value_t = FamilyChoice::Ss)]
    kind: FamilyChoice,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    e: u32,
    /// Print only the number of tableaux.
    #[arg(long)]
    count: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
pub struct HilbertArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long, value_enum, default_value_t = FamilyChoice::Both)]
    family: FamilyChoice,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    e: u32,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(toricgrass::Error),
    Io(std::io::Error),
}

impl From<toricgrass::Error> for CliError {
    fn from(e: toricgrass::Error) -> Self {
        match e {
            toricgrass::Error::Params(_)
            | toricgrass::Error::Coordinate(_)
            | toricgrass::Error::Domain(_)
            | toricgrass::Error::Partition(_) => CliError::Usage(e.to_string()),
            other => CliError::Lib(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(toricgrass::Error::ResourceCap { .. }) => 3,
            CliError::Lib(_) | CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

/// What a command produced: text for stdout and whether its checks passed.
pub struct Outcome {
    pub output: String,
    pub ok: bool,
}

impl Outcome {
    pub fn ok(output: String) -> Self {
        Outcome { output, ok: true }
    }
}

/// Shared settings for one run.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub limits: Limits,
    pub exec: Exec,
}

fn limits_from_env() -> Result<Limits, CliError> {
    match std::env::var(MAX_ITEMS_VAR) {
        Err(_) => Ok(Limits::default()),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(cap) if cap > 0 => Ok(Limits::new(cap)),
            _ => Err(CliError::Usage(format!("{MAX_ITEMS_VAR} must be a positive integer, got {raw:?}"))),
        },
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let ctx = Ctx {
        limits: limits_from_env()?,
        exec: if cli.sequential { Exec::Sequential } else { Exec::Parallel },
    };
    let mut outputs = Vec::new();
    let mut ok = true;
    if let Some(dir) = &cli.seed_docs {
        let written = docs::seed(dir, &ctx)?;
        outputs.push(format!("wrote {} files to {}\n", written.len(), dir.display()));
    }
    let outcome = match cli.command {
        Some(Command::Poset(a)) => Some(commands::poset(&a, &ctx)?),
        Some(Command::Verify(a)) => Some(commands::verify(&a, &ctx)?),
        Some(Command::Gens(a)) => Some(commands::gens(&a, &ctx)?),
        Some(Command::Tableaux(a)) => Some(commands::tableaux(&a, &ctx)?),
        Some(Command::Hilbert(a)) => Some(commands::hilbert(&a, &ctx)?),
        None if cli.seed_docs.is_some() => None,
        None => return Err(CliError::Usage("no command given; see --help".into())),
    };
    if let Some(o) = outcome {
        ok &= o.ok;
        outputs.push(o.output);
    }
    Ok(Outcome { output: outputs.concat(), ok })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) => {
            print!("{}", o.output);
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("toricgrass: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
