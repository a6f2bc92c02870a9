use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use groupoid_burnside::burnside::BurnsideError;
use groupoid_burnside::generator::{self, GeneratorError};
use groupoid_burnside::ghost::GhostError;
use groupoid_burnside::groupoid::ParseError;
use groupoid_burnside::subconj::{SubconjError, DEFAULT_SEARCH_CAP};
use groupoid_burnside::{FiniteGroupoid, GSetError, GroupoidError, TableOptions};

mod commands;
mod report;

use report::{Format, Report};

#[derive(Debug, Parser)]
#[command(
    name = "burnside",
    version,
    about = "Tables of marks, Burnside rings and groupoid-sets of finite groupoids"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// groupoid description (JSON groupoid, or {"gen": "<spec>"})
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// generator spec such as trg:C3:2, pair:4 or coprod:trg:S3:1,pair:2
    #[arg(long, global = true)]
    gen: Option<String>,
    /// write the result here instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// largest isotropy order whose subgroups are enumerated
    #[arg(long, global = true, default_value_t = 24)]
    subgroup_cap: usize,
    /// node budget of the conjugacy search
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_CAP)]
    search_cap: usize,
    /// worker threads; 1 disables parallelism
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// read the groupoid from stdin and report everything, errors included, as JSON on stdout
    #[arg(long, global = true)]
    stdio: bool,
    /// seed for randomized fixtures
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the groupoid axioms and summarize
    Validate,
    /// Connected components
    Components,
    /// Isotropy group of every object
    Isotropy,
    /// Representatives of one-object subgroupoids up to conjugacy
    Subgroupoids,
    /// Decide conjugal equivalence of two subgroupoids
    Conjugate { h: PathBuf, k: PathBuf },
    /// Table of marks
    Marks,
    /// Structure constants of the Burnside ring
    Ring,
    /// Product decomposition over connected components
    DecomposeRing,
    /// Operations on groupoid-sets
    Gset {
        #[command(subcommand)]
        command: GsetCommand,
    },
    /// Ghost matrix and its determinant, or the ghost vector of a groupoid-set
    Ghost {
        #[arg(long)]
        gset: Option<PathBuf>,
    },
    /// Primitive idempotents of the rational Burnside algebra
    Idempotents,
    /// Check the Grothendieck construction over the naturals against integer arithmetic
    GrothendieckDemo {
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Emit seeded random groupoids (and groupoid-sets) as JSON fixtures
    Fuzz {
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 200)]
        max_arrows: usize,
        #[arg(long, default_value_t = 12)]
        max_isotropy: usize,
        /// also emit a random groupoid-set of at most this size per groupoid
        #[arg(long)]
        gset_size: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum GsetCommand {
    Validate { x: PathBuf },
    Orbits { x: PathBuf },
    Decompose { x: PathBuf },
    Isomorphic { x: PathBuf, y: PathBuf },
    Fixed { x: PathBuf, h: PathBuf },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain { kind: &'static str, detail: String },
}

impl CliError {
    pub fn domain(kind: &'static str, detail: impl Into<String>) -> Self {
        CliError::Domain {
            kind,
            detail: detail.into(),
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain { kind: e.kind(), detail: e.to_string() }
            }
        }
    )*};
}

domain_from!(
    GroupoidError,
    ParseError,
    GSetError,
    SubconjError,
    BurnsideError,
    GhostError,
    GeneratorError
);

pub struct Context {
    pub options: TableOptions,
    pub search_cap: usize,
    pub seed: u64,
    groupoid: Option<Arc<FiniteGroupoid>>,
}

impl Context {
    pub fn groupoid(&self) -> Result<&Arc<FiniteGroupoid>, CliError> {
        self.groupoid.as_ref().ok_or_else(|| {
            CliError::Usage("a groupoid is required: pass --input <file> or --gen <spec>".into())
        })
    }
}

pub fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::domain("Io", format!("cannot read {}: {e}", path.display())))
}

fn parse_groupoid(text: &str) -> Result<FiniteGroupoid, CliError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::domain("MalformedJson", e.to_string()))?;
    if value.get("gen").is_some() {
        Ok(generator::generate_from_text(text)?)
    } else {
        Ok(FiniteGroupoid::from_json(text)?)
    }
}

fn load_groupoid(global: &Global) -> Result<Option<FiniteGroupoid>, CliError> {
    match (&global.input, &global.gen) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "pass exactly one of --input and --gen".into(),
        )),
        (Some(path), None) => parse_groupoid(&read_file(path)?).map(Some),
        (None, Some(spec)) => match generator::generate(spec) {
            Err(e @ GeneratorError::Syntax { .. }) => Err(CliError::Usage(e.to_string())),
            other => Ok(Some(other?)),
        },
        (None, None) if global.stdio => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::domain("Io", format!("cannot read stdin: {e}")))?;
            parse_groupoid(&text).map(Some)
        }
        (None, None) => Ok(None),
    }
}

fn needs_groupoid(c: &Command) -> bool {
    !matches!(c, Command::GrothendieckDemo { .. } | Command::Fuzz { .. })
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    if let Some(jobs) = cli.global.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let groupoid = load_groupoid(&cli.global)?.map(Arc::new);
    let ctx = Context {
        options: TableOptions {
            subgroup_cap: cli.global.subgroup_cap,
            parallel: cli.global.jobs != Some(1),
        },
        search_cap: cli.global.search_cap,
        seed: cli.global.seed,
        groupoid,
    };
    if needs_groupoid(&cli.command) {
        ctx.groupoid()?;
    }
    match &cli.command {
        Command::Validate => commands::validate(&ctx),
        Command::Components => commands::components(&ctx),
        Command::Isotropy => commands::isotropy(&ctx),
        Command::Subgroupoids => commands::subgroupoids(&ctx),
        Command::Conjugate { h, k } => commands::conjugate(&ctx, h, k),
        Command::Marks => commands::marks(&ctx),
        Command::Ring => commands::ring(&ctx),
        Command::DecomposeRing => commands::decompose_ring(&ctx),
        Command::Gset { command } => match command {
            GsetCommand::Validate { x } => commands::gset_validate(&ctx, x),
            GsetCommand::Orbits { x } => commands::gset_orbits(&ctx, x),
            GsetCommand::Decompose { x } => commands::gset_decompose(&ctx, x),
            GsetCommand::Isomorphic { x, y } => commands::gset_isomorphic(&ctx, x, y),
            GsetCommand::Fixed { x, h } => commands::gset_fixed(&ctx, x, h),
        },
        Command::Ghost { gset } => commands::ghost(&ctx, gset.as_ref()),
        Command::Idempotents => commands::idempotents(&ctx),
        Command::GrothendieckDemo { count } => commands::grothendieck_demo(&ctx, *count),
        Command::Fuzz {
            count,
            max_arrows,
            max_isotropy,
            gset_size,
        } => commands::fuzz(&ctx, *count, *max_arrows, *max_isotropy, *gset_size),
    }
}

fn emit(global: &Global, text: &str) -> Result<(), CliError> {
    match &global.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::domain("Io", format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::domain("Io", e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli).and_then(|report| {
        let format = cli.global.format.unwrap_or(if cli.global.stdio {
            Format::Json
        } else {
            report.default
        });
        let text = report.render(format).map_err(CliError::Usage)?;
        emit(&cli.global, &text)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain { kind, detail }) => {
            let record = json!({ "error": kind, "detail": detail }).to_string();
            if cli.global.stdio {
                println!("{record}");
            } else {
                eprintln!("{record}");
            }
            ExitCode::from(1)
        }
    }
}
