mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "fo2", version, about = "Two-variable logic on finite words")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args)]
pub struct AlphabetArg {
    /// Alphabet letters, e.g. `abc`; inferred from the operands when omitted.
    #[arg(long, short = 'a')]
    alphabet: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Position reached by a ranker, or UNDEFINED.
    EvalRanker {
        ranker: String,
        word: String,
        #[command(flatten)]
        alphabet: AlphabetArg,
    },
    /// Rankers defined on a word, with their positions.
    Rankers {
        word: String,
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'm')]
        m: Option<usize>,
        #[arg(long)]
        suc: bool,
        #[command(flatten)]
        alphabet: AlphabetArg,
    },
    /// Decide whether two words agree on FO² sentences of depth n.
    Equiv {
        u: String,
        v: String,
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'm')]
        m: Option<usize>,
        #[arg(long)]
        suc: bool,
        /// A registered decider, or `both` to cross-check all of them.
        #[arg(long, default_value = "ranker")]
        method: String,
        #[command(flatten)]
        alphabet: AlphabetArg,
    },
    /// Model-check a formula on a word.
    Check {
        formula_file: String,
        word: String,
        #[arg(short = 'x')]
        x: Option<usize>,
        #[arg(short = 'y')]
        y: Option<usize>,
        #[arg(long)]
        suc: bool,
        #[command(flatten)]
        alphabet: AlphabetArg,
    },
    /// Quantifier and alternation depth of a formula.
    Metrics {
        formula_file: String,
        #[arg(long)]
        suc: bool,
    },
    /// Formula for a ranker's definedness or position.
    Synth {
        ranker: String,
        #[arg(long, conflicts_with_all = ["position", "comparison"])]
        definedness: bool,
        #[arg(long, conflicts_with = "comparison")]
        position: bool,
        /// Positions x with x lt|le|gt|ge the ranker's position.
        #[arg(long)]
        comparison: Option<String>,
    },
    /// The alternation-hierarchy witness words.
    Witness {
        #[arg(short = 'm')]
        m: usize,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        suc: bool,
    },
    /// Check one level of the alternation hierarchy.
    VerifyHierarchy {
        #[arg(short = 'm')]
        m: usize,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        suc: bool,
    },
    /// Search for a model of a sentence.
    Sat {
        formula_file: String,
        #[arg(long, short = 'a')]
        alphabet: String,
        #[arg(long)]
        max_len: Option<u64>,
        #[arg(long)]
        exact_len: Option<usize>,
        /// Word-search strategy.
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Shrink a word to an equivalent word of bounded length.
    Shrink {
        word: String,
        #[arg(short = 'n')]
        n: usize,
        #[command(flatten)]
        alphabet: AlphabetArg,
    },
    /// Translate a DIMACS CNF into an FO² sentence over {0,1}.
    ReduceCnf {
        dimacs_file: String,
        /// Also search for a model and compare with brute force.
        #[arg(long)]
        solve: bool,
    },
    /// Compare all deciders on seeded random word pairs.
    Crosscheck {
        #[arg(long, default_value_t = commands::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        pairs: usize,
        #[arg(long, default_value = "ab")]
        letters: String,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
        #[arg(short = 'm')]
        m: Option<usize>,
        #[arg(long)]
        suc: bool,
    },
}

/// Why a command stopped without a normal result.
pub enum Failure {
    Usage(String),
    Lib(fo2::Error),
    /// Deciders disagreed; the report was already printed.
    Disagreement,
}

impl From<fo2::Error> for Failure {
    fn from(e: fo2::Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<input::InputError> for Failure {
    fn from(e: input::InputError) -> Self {
        Failure::Usage(e.0)
    }
}

const EXIT_USAGE: u8 = 1;
const EXIT_RESOURCE: u8 = 2;
const EXIT_DISAGREEMENT: u8 = 3;

fn report(format: Format, code: &str, message: &str) {
    let mut err = std::io::stderr().lock();
    let _ = match format {
        Format::Text => writeln!(err, "error[{code}]: {message}"),
        Format::Json => writeln!(err, "{}", json!({ "error": { "code": code, "message": message } })),
    };
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let format = cli.format;
    match commands::run(cli.command, format) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(message)) => {
            report(format, "usage", &message);
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            report(format, e.code(), &e.to_string());
            ExitCode::from(if e.is_resource() { EXIT_RESOURCE } else { EXIT_USAGE })
        }
        Err(Failure::Disagreement) => ExitCode::from(EXIT_DISAGREEMENT),
    }
}
