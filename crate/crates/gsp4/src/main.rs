use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::bail;
use clap::{Args, Parser, Subcommand, ValueEnum};
use gsp4::config::{default_threads, parse_bytes, parse_prime_power, DEFAULT_MEM_BUDGET};
use gsp4::{Command, Format, Model, RunConfig, Suite};

/// Character tables and Bessel-model dimensions of GSp(4, q).
///
/// Every flag can also be set through an environment variable with the
/// GSP4_ prefix, e.g. GSP4_Q=3 or GSP4_THREADS=4.
#[derive(Parser)]
#[command(name = "gsp4", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build (or load) the character table and print a summary.
    Chartab(Common),
    /// Print the Hom_N table (--model N) or Hom_R tables (--model R).
    Table {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "N", env = "GSP4_MODEL")]
        model: ModelArg,
        /// Datum (a, b, c) as element indices; --model R sweeps every
        /// nondegenerate datum when omitted.
        #[arg(long, requires_all = ["b", "c"])]
        a: Option<u32>,
        #[arg(long, requires_all = ["a", "c"])]
        b: Option<u32>,
        #[arg(long, requires_all = ["a", "b"])]
        c: Option<u32>,
        /// Restrict --model R output to one character: split:i:j,
        /// nonsplit:i or even:k:j.
        #[arg(long)]
        chi: Option<String>,
    },
    /// Run a verification suite; exits with status 1 if any check fails.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "all", env = "GSP4_SUITE")]
        suite: SuiteArg,
    },
}

#[derive(Args)]
struct Common {
    /// Field order q; alternatively give --p and --n.
    #[arg(long, env = "GSP4_Q", conflicts_with_all = ["p", "n"])]
    q: Option<u64>,
    #[arg(long, env = "GSP4_P")]
    p: Option<u32>,
    #[arg(long, env = "GSP4_N", default_value_t = 1)]
    n: u32,
    #[arg(long, value_enum, default_value = "text", env = "GSP4_FORMAT")]
    format: FormatArg,
    /// Output file; stdout when omitted.
    #[arg(long, env = "GSP4_OUT")]
    out: Option<PathBuf>,
    /// Character-table cache directory; no cache when omitted.
    #[arg(long, env = "GSP4_CACHE")]
    cache: Option<PathBuf>,
    /// Worker threads [default: available parallelism].
    #[arg(long, env = "GSP4_THREADS")]
    threads: Option<usize>,
    /// Seed of the sampled conjugation check.
    #[arg(long, env = "GSP4_SEED", default_value_t = 0)]
    seed: u64,
    /// Memory budget in bytes, with optional K/M/G/T suffix [default: 8G].
    #[arg(long, env = "GSP4_MEM_BUDGET")]
    mem_budget: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    #[value(name = "N", alias = "n")]
    N,
    #[value(name = "R", alias = "r")]
    R,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Lemmas,
    CanonicalForms,
    Group,
    Types,
    TableN,
    TableR,
    Corollary,
    All,
}

fn config(common: Common, command: Command) -> anyhow::Result<RunConfig> {
    let (p, n) = match (common.q, common.p) {
        (Some(q), _) => parse_prime_power(q)?,
        (None, Some(p)) => (p, common.n),
        (None, None) => bail!("give the field order with --q or --p/--n"),
    };
    let mut cfg = RunConfig::new(p, n, command);
    cfg.format = match common.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
        FormatArg::Text => Format::Text,
    };
    cfg.out = common.out;
    cfg.cache = common.cache;
    cfg.threads = common.threads.unwrap_or_else(default_threads);
    cfg.seed = common.seed;
    cfg.mem_budget = common.mem_budget.as_deref().map(parse_bytes).transpose()?.unwrap_or(DEFAULT_MEM_BUDGET);
    Ok(cfg)
}

fn parse() -> anyhow::Result<RunConfig> {
    match Cli::parse().command {
        Cmd::Chartab(common) => config(common, Command::Chartab),
        Cmd::Table { common, model, a, b, c, chi } => {
            let model = match model {
                ModelArg::N => Model::N,
                ModelArg::R => Model::R,
            };
            let datum = match (a, b, c) {
                (Some(a), Some(b), Some(c)) => Some([a, b, c]),
                _ => None,
            };
            config(common, Command::Table { model, datum, chi })
        }
        Cmd::Verify { common, suite } => {
            let suite = match suite {
                SuiteArg::Lemmas => Suite::Lemmas,
                SuiteArg::CanonicalForms => Suite::CanonicalForms,
                SuiteArg::Group => Suite::Group,
                SuiteArg::Types => Suite::Types,
                SuiteArg::TableN => Suite::TableN,
                SuiteArg::TableR => Suite::TableR,
                SuiteArg::Corollary => Suite::Corollary,
                SuiteArg::All => Suite::All,
            };
            config(common, Command::Verify { suite })
        }
    }
}

fn main() -> ExitCode {
    let result = parse().and_then(|cfg| {
        let outcome = gsp4::run(&cfg)?;
        for note in &outcome.notes {
            eprintln!("{note}");
        }
        match &cfg.out {
            Some(path) => std::fs::write(path, &outcome.output)?,
            None => std::io::stdout().write_all(outcome.output.as_bytes())?,
        }
        Ok(outcome)
    });
    match result {
        Ok(o) if o.success => ExitCode::SUCCESS,
        Ok(o) => {
            eprintln!("verification failed:");
            eprintln!("{}", o.counterexample.unwrap_or_default());
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
