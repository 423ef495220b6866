//! Command-line front end: parses flags, runs one report, prints JSON.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::base_rings::Params;
use crate::building::SimplexType;
use crate::error::{Error, Result};
use crate::report::{self, Outcome};

#[derive(Debug, Parser)]
#[command(name = "drinfeld-cover", version, about = "Exact computations on the first Drinfeld covering")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub f: u32,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    /// Level of the residue ring; the default depends on the command.
    #[arg(long)]
    pub level: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn params(&self) -> Result<Params> {
        Params::new(self.p, self.f, self.e, self.d)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate H_n = P^d(O/ϖ^n)^∨.
    Hyperplanes(RunConfig),
    /// Presentation of the tube over a standard simplex.
    Simplex {
        #[command(flatten)]
        config: RunConfig,
        /// Comma-separated type (d_1,...,d_r); maximal by default.
        #[arg(long = "type")]
        simplex_type: Option<String>,
    },
    /// Raynaud presentation of the first covering over a maximal simplex.
    #[command(name = "xpid")]
    Covering(RunConfig),
    /// Kummer class of the first covering on the level-n tube.
    KummerClass(RunConfig),
    /// Exhaust invariant constant-coefficient classes (level = n_max, default 2).
    Invariants(RunConfig),
    /// Number of geometric components over C and over K̆.
    Pi0(RunConfig),
    /// Generic-fiber class against ϖ·Ṽ(u) modulo N.
    #[command(name = "verify-lemeqsigsig")]
    GenericFiberCongruence(RunConfig),
    /// Restriction of ϖ·Ṽ(u) to the adjacent vertex.
    VertexConsistency(RunConfig),
    /// Norm and valuation checks on the special-fiber cover ring.
    NormLemma {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Lagrange idempotents and canonical forms of units.
    Idempotents(RunConfig),
    /// Run all acceptance criteria.
    Acceptance(RunConfig),
}

impl Command {
    pub fn config(&self) -> &RunConfig {
        match self {
            Command::Hyperplanes(c)
            | Command::Covering(c)
            | Command::KummerClass(c)
            | Command::Invariants(c)
            | Command::Pi0(c)
            | Command::GenericFiberCongruence(c)
            | Command::VertexConsistency(c)
            | Command::Idempotents(c)
            | Command::Acceptance(c) => c,
            Command::Simplex { config, .. } | Command::NormLemma { config, .. } => config,
        }
    }
}

fn parse_type(d: u32, s: &str) -> Result<SimplexType> {
    let parts = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Error::InvalidParams(format!("bad simplex type {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    SimplexType::new(d, parts)
}

pub fn execute(command: &Command) -> Result<Outcome> {
    let config = command.config();
    let params = config.params()?;
    match command {
        Command::Hyperplanes(_) => report::hyperplanes(params, config.level.unwrap_or(1)),
        Command::Simplex { simplex_type, .. } => {
            let t = match simplex_type {
                Some(s) => parse_type(params.d, s)?,
                None => SimplexType::maximal(params.d),
            };
            report::simplex(params, &t)
        }
        Command::Covering(_) => report::covering(params),
        Command::KummerClass(_) => report::kummer_class(params, config.level.unwrap_or(0)),
        Command::Invariants(_) => report::invariants(params, config.level.unwrap_or(2)),
        Command::Pi0(_) => report::pi0_report(params, config.level.unwrap_or(0)),
        Command::GenericFiberCongruence(_) => report::generic_fiber_congruence(params),
        Command::VertexConsistency(_) => report::vertex_consistency(params),
        Command::NormLemma { samples, .. } => report::norm_lemma(params, *samples, config.seed),
        Command::Idempotents(_) => report::idempotents(params),
        Command::Acceptance(_) => report::acceptance_report(config.seed),
    }
}

/// Exit code and JSON for `args` (program name first). Writes to `--out`
/// when given and returns the same JSON.
pub fn run<I, T>(args: I) -> (i32, Value)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (0, Value::String(e.to_string()));
            }
            return (2, serde_json::json!({ "error": e.to_string() }));
        }
    };
    let (code, value) = match execute(&cli.command) {
        Ok(outcome) => (if outcome.ok { 0 } else { 1 }, outcome.value),
        Err(e) => (2, serde_json::json!({ "error": e.to_string() })),
    };
    if let Some(path) = &cli.command.config().out {
        let text = serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            return (2, serde_json::json!({ "error": format!("cannot write {}: {e}", path.display()) }));
        }
    }
    (code, value)
}

/// Entry point for the binary.
pub fn main_with_args(args: Vec<String>) -> i32 {
    let writes_file = args.iter().any(|a| a == "--out" || a.starts_with("--out="));
    let (code, value) = run(args);
    match &value {
        Value::String(help) => print!("{help}"),
        v if code == 2 => eprintln!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize")),
        v if !writes_file => println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize")),
        _ => {}
    }
    code
}
