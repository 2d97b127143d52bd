//! `ylab`: build Yangian modules, intertwiners and Drinfeld data from the
//! command line. Every result is a single line of JSON with sorted keys.
//!
//! Exit codes: 0 success, 1 a checked identity failed, 2 invalid input,
//! 3 non-dominant weight, 4 forbidden weight difference.

mod cache;
mod commands;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cache::{Cache, Entry};
use commands::{Failure, Outcome, Suite};
use ylab_core::drinfeld::DrinfeldData;
use ylab_core::intertwiner::ReducedWord;
use ylab_core::yangian::ModuleSpec;

#[derive(Parser)]
#[command(name = "ylab", version, about = "Exact computations with standard modules of the Yangian Y(gl_n)")]
struct Cli {
    /// Directory for cached results; YLAB_CACHE takes precedence.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SpecArgs {
    /// JSON module spec file, `-` for stdin. Replaces the other spec flags.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Comma-separated rationals, e.g. `0,1/2`. Defaults to zeros.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Comma-separated integers, e.g. `1,-2`.
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, weights and dominance of a standard module.
    Build(SpecArgs),
    /// The intertwiner to the reversed module.
    Intertwine {
        #[command(flatten)]
        spec: SpecArgs,
        /// Reduced word of the longest permutation, e.g. `1,2,1`.
        #[arg(long)]
        word: Option<String>,
    },
    /// Drinfeld data of a module.
    Drinfeld(SpecArgs),
    /// A standard module with the given Drinfeld data (JSON via --input).
    Realize {
        #[arg(long)]
        input: PathBuf,
    },
    /// Merge tensor factors into a minimal module with the same data.
    Reduce(SpecArgs),
    /// Run a verification suite on a module.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Sample points per axis for the RTT suite.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        word: Option<String>,
    },
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Invalid(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
    }
}

fn load_spec(args: &SpecArgs) -> Result<ModuleSpec, Failure> {
    if let Some(path) = &args.input {
        let text = read_input(path)?;
        return serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("module spec: {e}")));
    }
    let (Some(n), Some(nu)) = (args.n, args.nu.as_deref()) else {
        return Err(Failure::Invalid("give --input or both --n and --nu".into()));
    };
    commands::spec_from_flags(n, args.m, args.mu.as_deref(), nu)
}

fn load_word(text: Option<&str>, m: usize) -> Result<ReducedWord, Failure> {
    match text {
        Some(t) => commands::parse_word(t, m),
        None => Ok(ReducedWord::default_for(m)),
    }
}

/// The canonical description of a job, hashed for the cache, and the
/// closure computing it.
type Job = (Value, Box<dyn FnOnce() -> Result<Outcome, Failure>>);

fn plan(command: Command) -> Result<Job, Failure> {
    Ok(match command {
        Command::Build(args) => {
            let spec = load_spec(&args)?;
            (json!({"command": "build", "spec": spec}), Box::new(move || commands::build(&spec)))
        }
        Command::Intertwine { spec, word } => {
            let spec = load_spec(&spec)?;
            let word = load_word(word.as_deref(), spec.m())?;
            (
                json!({"command": "intertwine", "spec": spec, "word": word.letters()}),
                Box::new(move || commands::intertwine(&spec, &word)),
            )
        }
        Command::Drinfeld(args) => {
            let spec = load_spec(&args)?;
            (json!({"command": "drinfeld", "spec": spec}), Box::new(move || commands::drinfeld(&spec)))
        }
        Command::Realize { input } => {
            let text = read_input(&input)?;
            let data: DrinfeldData =
                serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("Drinfeld data: {e}")))?;
            (
                json!({"command": "realize", "data": data}),
                Box::new(move || commands::realize_data(&data)),
            )
        }
        Command::Reduce(args) => {
            let spec = load_spec(&args)?;
            (json!({"command": "reduce", "spec": spec}), Box::new(move || commands::reduce(&spec)))
        }
        Command::Verify {
            spec,
            suite,
            samples,
            word,
        } => {
            let spec = load_spec(&spec)?;
            let word = load_word(word.as_deref(), spec.m())?;
            (
                json!({
                    "command": "verify",
                    "spec": spec,
                    "suite": suite.name(),
                    "samples": samples,
                    "word": word.letters(),
                }),
                Box::new(move || commands::verify(&spec, suite, samples, &word)),
            )
        }
    })
}

fn emit(value: &Value, out: Option<&PathBuf>) -> Result<(), Failure> {
    let text = format!("{}\n", serde_json::to_string(value).expect("json value serializes"));
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Internal(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, Failure> {
    let cache_dir = std::env::var_os("YLAB_CACHE").map(PathBuf::from).or(cli.cache_dir);
    let (mut job, compute) = plan(cli.command)?;
    job["version"] = json!(env!("CARGO_PKG_VERSION"));

    let cache = match &cache_dir {
        Some(dir) => Some(Cache::open(dir).map_err(|e| Failure::Internal(format!("{}: {e}", dir.display())))?),
        None => None,
    };
    let key = Cache::key(&job);
    if let Some(entry) = cache.as_ref().and_then(|c| c.get(&key)) {
        emit(&entry.result, cli.out.as_ref())?;
        return Ok(entry.exit);
    }
    let outcome = compute()?;
    let exit = if outcome.passed { 0 } else { 1 };
    if let Some(c) = &cache {
        let entry = Entry {
            exit,
            result: outcome.result.clone(),
        };
        c.put(&key, &entry).map_err(|e| Failure::Internal(format!("cache write: {e}")))?;
    }
    emit(&outcome.result, cli.out.as_ref())?;
    Ok(exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(failure) => {
            eprintln!("{}", serde_json::to_string(&failure.to_json()).expect("json value serializes"));
            ExitCode::from(failure.exit_code() as u8)
        }
    }
}
