use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zext_core::verify::{cayley_table, exit_code, run_suites, CayleyError};

use zext_cli::config::{parse_u, CarrierConfig, ConfigError, ConfigInt, RunConfig};
use zext_cli::plan;

const USAGE_EXIT: u8 = 3;

#[derive(Parser)]
#[command(name = "zext", version, about = "Check extensions of the bicyclic monoid and their topologies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run builtin suites or a suite built from the construction settings.
    Verify(VerifyArgs),
    /// Print the multiplication table of a window, one product per line.
    Cayley(CayleyArgs),
}

#[derive(Args)]
struct Common {
    /// TOML file with the same keys as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// ext-bicyclic, zbr, zbruck or warne.
    #[arg(long)]
    construction: Option<String>,
    /// Builtin carrier name, e.g. c6, semilattice2, int-group, nplus.
    #[arg(long)]
    carrier: Option<String>,
    /// annihilating, identity, table(a,b,...) or scale(c).
    #[arg(long)]
    theta: Option<String>,
    /// Nontrivial u_n for warne, as n:element,n:element.
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    /// Index window LO HI for i, j, m, n.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    window: Option<Vec<String>>,
    /// Bound on carrier codes for infinite carriers.
    #[arg(long)]
    gbound: Option<String>,
    /// Largest number of products a run may enumerate.
    #[arg(long)]
    max_products: Option<String>,
    /// Write the output here as well as to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// direct-sum, coarsened, example-2.7, example-2.8, example-3.7 or example-3.9.
    #[arg(long)]
    topology: Option<String>,
    /// Bound for the default neighbourhood schedule.
    #[arg(long)]
    schedule: Option<String>,
    /// A builtin suite name, or `all`.
    #[arg(long)]
    suite: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CayleyArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

fn int(field: &'static str, s: Option<&String>) -> Result<Option<ConfigInt>, ConfigError> {
    s.map(|s| s.parse().map_err(|e| ConfigError::field(field, e))).transpose()
}

impl Common {
    fn config(&self) -> Result<RunConfig, ConfigError> {
        let file = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        let window = match &self.window {
            Some(w) => Some([int("window", w.first())?.unwrap(), int("window", w.get(1))?.unwrap()]),
            None => None,
        };
        let flags = RunConfig {
            construction: self.construction.clone(),
            carrier: self.carrier.clone().map(CarrierConfig::Named),
            theta: self.theta.clone(),
            u: self.u.as_deref().map(parse_u).transpose()?,
            window,
            gbound: int("gbound", self.gbound.as_ref())?,
            max_products: int("max-products", self.max_products.as_ref())?,
            ..Default::default()
        };
        Ok(file.overlay(flags))
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), ConfigError> {
    print!("{text}");
    std::io::stdout().flush().ok();
    if let Some(p) = out {
        fs::write(p, text).map_err(|source| ConfigError::Io { path: p.display().to_string(), source })?;
    }
    Ok(())
}

fn verify(args: &VerifyArgs) -> Result<u8, ConfigError> {
    let over = RunConfig {
        topology: args.topology.clone(),
        schedule: int("schedule", args.schedule.as_ref())?,
        suite: args.suite.clone(),
        ..Default::default()
    };
    let cfg = args.common.config()?.overlay(over);
    let suites = plan::verify_suites(&cfg)?;
    let reports = run_suites(&suites);
    let text: String = reports
        .iter()
        .map(|r| match args.format {
            Format::Text => r.text(),
            Format::Machine => r.machine(),
        })
        .collect();
    emit(&args.common.out, &text)?;
    Ok(exit_code(&reports))
}

fn cayley(args: &CayleyArgs) -> Result<u8, ConfigError> {
    let cfg = args.common.config()?;
    if cfg.topology.is_some() || cfg.suite.is_some() || cfg.schedule.is_some() {
        return Err(ConfigError::Usage("topology, schedule and suite do not apply to cayley".into()));
    }
    let recipe = plan::recipe(&cfg)?;
    let (lo, hi) = plan::window(&cfg)?;
    let lines = cayley_table(&recipe, lo, hi, plan::gbound(&cfg)?, plan::max_products(&cfg)?).map_err(|e| match e {
        CayleyError::TooLarge { .. } => ConfigError::Usage(format!("{e}; raise --max-products")),
        e => ConfigError::Usage(e.to_string()),
    })?;
    let text: String = lines.into_iter().map(|l| l + "\n").collect();
    emit(&args.common.out, &text)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_EXIT } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Cayley(a) => cayley(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("zext: {e}");
            ExitCode::from(USAGE_EXIT)
        }
    }
}
