use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use lnd::derivation::{Nilpotency, DEFAULT_NILPOTENCY_CAP};
use lnd::dixmier::dixmier_map;
use lnd::groebner::{buchberger, Budget, MonomialOrder};
use lnd::job::{self, JobError, JobSetup, RawJob, RawRing, Report, RunOptions};
use lnd::Polynomial;

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "lnd", version, about = "Exact computations with locally nilpotent derivations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks of a job file.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Default nilpotency cap.
        #[arg(long, default_value_t = DEFAULT_NILPOTENCY_CAP)]
        cap: u32,
        /// Reduction step budget (default: $LND_BUDGET or 1000000).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run the built-in example corpus.
    Examples {
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Reduced Groebner basis of the `generators` listed in a file.
    Groebner {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Order::Grevlex)]
        order: Order,
        #[arg(long)]
        json: bool,
    },
    /// Dixmier map of a target with respect to a local slice.
    Dixmier {
        file: PathBuf,
        #[arg(long)]
        slice: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = DEFAULT_NILPOTENCY_CAP)]
        cap: u32,
    },
    /// Nilpotency index of every variable under the job derivation.
    Nilpotency {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NILPOTENCY_CAP)]
        cap: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Lex,
    Grevlex,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroebnerFile {
    ring: RawRing,
    #[serde(default)]
    definitions: serde_json::Map<String, serde_json::Value>,
    generators: Vec<String>,
}

enum Failure {
    Input(String),
    Math(String),
}

impl From<JobError> for Failure {
    fn from(e: JobError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<lnd::Error> for Failure {
    fn from(e: lnd::Error) -> Self {
        match e {
            lnd::Error::CapExceeded { .. } | lnd::Error::BudgetExhausted(_) => Failure::Math(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Failure::Math(m)) => {
            eprintln!("lnd: {m}");
            ExitCode::from(EXIT_FAIL)
        }
        Err(Failure::Input(m)) => {
            eprintln!("lnd: {m}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn print_report(report: &Report, as_json: bool) {
    if as_json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
}

fn setup(path: &Path) -> Result<JobSetup, Failure> {
    Ok(job::parse_setup(&job::read_file(path)?)?)
}

fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Check { file, json, cap, budget } => {
            let spec = job::load_spec(&file)?;
            let budget = budget.filter(|&b| b > 0).map(Budget).unwrap_or_else(Budget::from_env);
            let report = job::run_job(&spec, RunOptions { cap, budget });
            print_report(&report, json);
            Ok(report.overall)
        }
        Command::Examples { only, json } => {
            let opts = RunOptions { budget: Budget::from_env(), ..RunOptions::default() };
            let report = job::run_corpus(only.as_deref(), opts)?;
            print_report(&report, json);
            Ok(report.overall)
        }
        Command::Groebner { file, order, json } => {
            let text = job::read_file(&file)?;
            let de = &mut serde_json::Deserializer::from_str(&text);
            let gf: GroebnerFile = serde_path_to_error::deserialize(de)
                .map_err(|e| Failure::Input(format!("schema violation at `{}`: {}", e.path(), e.inner())))?;
            let raw = RawJob {
                name: None,
                ring: gf.ring,
                definitions: gf.definitions,
                derivation: Default::default(),
                checks: Vec::new(),
            };
            let setup = JobSetup::from_raw(&raw)?;
            let gens = gf
                .generators
                .iter()
                .enumerate()
                .map(|(i, g)| setup.parse(g).map_err(|e| Failure::Input(format!("generators[{i}]: {e}"))))
                .collect::<Result<Vec<Polynomial>, _>>()?;
            if gens.is_empty() {
                return Err(Failure::Input("generators: at least one generator is required".into()));
            }
            let n = setup.context.len();
            let ord = match order {
                Order::Lex => MonomialOrder::lex(n),
                Order::Grevlex => MonomialOrder::grevlex(n),
            };
            let gb = buchberger(&gens, &ord, Budget::from_env())?;
            let basis: Vec<String> = gb.basis().iter().map(|p| p.to_string()).collect();
            if json {
                println!("{}", serde_json::to_string_pretty(&json!({ "basis": basis })).expect("serializes"));
            } else {
                for b in basis {
                    println!("{b}");
                }
            }
            Ok(true)
        }
        Command::Dixmier { file, slice, target, cap } => {
            let s = setup(&file)?;
            let r = s.parse(&slice).map_err(|e| Failure::Input(format!("--slice: {e}")))?;
            let f = s.parse(&target).map_err(|e| Failure::Input(format!("--target: {e}")))?;
            let pi = dixmier_map(&s.derivation, &r, &f, cap)?;
            println!("{pi}");
            Ok(true)
        }
        Command::Nilpotency { file, cap } => {
            let s = setup(&file)?;
            let mut all = true;
            for v in s.context.ring_names() {
                let x = Polynomial::var(&s.context, v)?;
                match s.derivation.nilpotency_index(&x, cap)? {
                    Nilpotency::Index(n) => println!("{v}: {n}"),
                    Nilpotency::ExceededCap => {
                        all = false;
                        println!("{v}: > {cap}");
                    }
                }
            }
            Ok(all)
        }
    }
}
