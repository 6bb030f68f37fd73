//! `azeta`: describe quotients, print counts and zetas, verify identities.
//!
//! Exit codes: 0 success, 1 an identity failed, 2 parse, validation or order error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use apartment_zeta::census::rep_counts;
use apartment_zeta::corpus::{self, CorpusConfig};
use apartment_zeta::specfile::QuotientSpecFile;
use apartment_zeta::zeta::resolve_order;
use apartment_zeta::{verify, QuotientGroup, ZetaBundle};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(
    name = "azeta",
    version,
    about = "Exact zeta functions of rank-two apartment quotients"
)]
struct Cli {
    /// Quotient description file (key = value).
    #[arg(long, short, global = true)]
    input: Option<PathBuf>,

    /// Series order in u; overrides the file's `order`.
    #[arg(long, global = true)]
    order: Option<usize>,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print group invariants.
    Describe,
    /// Brute-force count tables N, N_tilde, semi and gallery.
    Counts {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
    /// Walk, semi and gallery zetas and the L-function of every representation.
    Zeta,
    /// Check every applicable identity; exit 1 if any fails.
    Verify,
    /// Generate a seeded random corpus and verify every member.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        tori: usize,
        #[arg(long, default_value_t = 3)]
        kleins_per_cell: usize,
        #[arg(long, default_value_t = 60)]
        max_vertices: usize,
    },
}

enum Failure {
    Usage(String),
    Identities(String),
}

impl From<apartment_zeta::Error> for Failure {
    fn from(e: apartment_zeta::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load(cli: &Cli) -> Result<(QuotientGroup, Option<usize>), Failure> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| Failure::Usage("--input FILE is required".into()))?;
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let spec = QuotientSpecFile::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let q = spec.build()?;
    Ok((q, cli.order.or(spec.order)))
}

fn emit(format: Format, key: &str, value: Value, text: String) {
    match format {
        Format::Json => {
            let mut m = Map::new();
            m.insert(key.into(), value);
            println!(
                "{}",
                serde_json::to_string_pretty(&Value::Object(m)).expect("serializable")
            );
        }
        Format::Text if text.ends_with('\n') => print!("{text}"),
        Format::Text => println!("{text}"),
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Describe => {
            let (q, _) = load(cli)?;
            let report = q.invariants_report()?;
            let value = serde_json::to_value(&report).expect("serializable");
            emit(cli.format, "invariants", value, report.to_string());
        }
        Command::Counts { max_n } => {
            let (q, _) = load(cli)?;
            let mut value = Map::new();
            let mut text = String::new();
            for rep in q.kind().reps() {
                let c = rep_counts(&q, rep, *max_n)?;
                text += &format!(
                    "{rep}\n  N        {}\n  N_tilde  {}\n  semi     {}\n  gallery  {}\n",
                    join(&c.closed),
                    join(&c.geodesic),
                    join(&c.semi),
                    join(&c.galleries)
                );
                value.insert(rep.to_string(), serde_json::to_value(&c).expect("serializable"));
            }
            emit(cli.format, "counts", Value::Object(value), text);
        }
        Command::Zeta => {
            let (q, order) = load(cli)?;
            let order = resolve_order(&q, order)?;
            let bundle = ZetaBundle::compute(&q, order)?;
            let mut text = format!("order {order} (u)\n");
            for r in &bundle.reps {
                text += &format!(
                    "{}\n  Z      = {}\n  Z_semi = {}\n  Z2     = {}\n  L      = {}\n",
                    r.rep, r.z, r.z_semi, r.z2, r.l.l
                );
            }
            emit(cli.format, "zeta", bundle.to_json(), text);
        }
        Command::Verify => {
            let (q, order) = load(cli)?;
            let report = verify(&q, order)?;
            let value = serde_json::to_value(&report.records).expect("serializable");
            emit(cli.format, "verify", value, report.to_string());
            if !report.all_hold() {
                let n = report.failures().count();
                return Err(Failure::Identities(format!("{n} identities failed")));
            }
        }
        Command::Corpus {
            seed,
            tori,
            kleins_per_cell,
            max_vertices,
        } => {
            let cfg = CorpusConfig {
                seed: *seed,
                tori_per_kind: *tori,
                kleins_per_cell: *kleins_per_cell,
                max_vertices: *max_vertices,
                ..CorpusConfig::default()
            };
            let report = corpus::run(&cfg, cli.order);
            let value = json!(report);
            emit(cli.format, "corpus", value, report.to_string());
            if !report.all_hold() {
                let n = report.failures().count();
                return Err(Failure::Identities(format!("{n} corpus members failed")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identities(msg)) => {
            eprintln!("azeta: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
