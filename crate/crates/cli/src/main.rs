use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dualmin::exec::Execution;
use dualmin::semiring::SemiringKind;

mod verbs;

/// Duality-based minimisation of Moore, weighted and alternating automata and
/// deterministic Kripke models.
#[derive(Debug, Parser)]
#[command(name = "dualmin", version)]
struct Cli {
    /// Abort constructions that would build more than this many states.
    #[arg(long, global = true, env = "DUALMIN_MAX_STATES", default_value_t = dualmin::DEFAULT_MAX_STATES)]
    max_states: usize,

    /// Read weighted files over this semiring (bool, int, rational, tropical).
    #[arg(long, global = true, value_parser = parse_semiring)]
    semiring: Option<SemiringKind>,

    /// Seed for randomised suites.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a word: output label, acceptance, series value or reached state.
    #[command(visible_alias = "eval")]
    Run {
        file: PathBuf,
        /// Letters concatenated (`aba`) or comma separated (`a,b,a`).
        #[arg(short, long, allow_hyphen_values = true)]
        word: String,
    },
    /// Reverse the language: reversed NFA, dual automaton or reverse DFA.
    Reverse { file: PathBuf },
    /// Subset construction for NFAs and Boolean weighted automata.
    Determinize { file: PathBuf },
    /// Restrict to the reachable part.
    Reach { file: PathBuf },
    /// Minimise an automaton.
    Minimize {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Dual automaton, dual weighted automaton, reverse DFA or definable subsets.
    Dual { file: PathBuf },
    /// Compare the behaviour of two automata.
    Equiv {
        left: PathBuf,
        right: PathBuf,
        /// Word length bound for weighted and alternating automata.
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// States of a Kripke model (or DFA, observation `accept`) satisfying a trace formula.
    TraceEval {
        file: PathBuf,
        /// Formula such as `<a><b>p`.
        #[arg(short, long)]
        formula: String,
    },
    /// All definable subsets of a Kripke model or DFA.
    Closure { file: PathBuf },
    /// Rank of the Hankel block over words of length at most L.
    Hankel {
        file: PathBuf,
        #[arg(short = 'L', long = "max-len")]
        max_len: usize,
    },
    /// Plain summary of an automaton.
    Stats { file: PathBuf },
    /// Run the differential property suites.
    Selftest {
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Evaluate cases on the current thread only.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brzozowski,
    Refine,
    Duality,
}

fn parse_semiring(s: &str) -> Result<SemiringKind, String> {
    s.parse().map_err(|e: dualmin::Error| e.to_string())
}

/// Exit codes.
pub const NEGATIVE: u8 = 1;
pub const INVALID: u8 = 2;
pub const GUARD: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = verbs::Context {
        max_states: cli.max_states,
        semiring: cli.semiring,
    };
    let result = match cli.command {
        Command::Run { file, word } => verbs::run(&ctx, &file, &word),
        Command::Reverse { file } => verbs::reverse(&ctx, &file),
        Command::Determinize { file } => verbs::determinize(&ctx, &file),
        Command::Reach { file } => verbs::reach(&ctx, &file),
        Command::Minimize { file, method } => verbs::minimize(&ctx, &file, method),
        Command::Dual { file } => verbs::dual(&ctx, &file),
        Command::Equiv {
            left,
            right,
            max_len,
        } => verbs::equiv(&ctx, &left, &right, max_len),
        Command::TraceEval { file, formula } => verbs::trace_eval(&ctx, &file, &formula),
        Command::Closure { file } => verbs::closure(&ctx, &file),
        Command::Hankel { file, max_len } => verbs::hankel(&ctx, &file, max_len),
        Command::Stats { file } => verbs::stats(&ctx, &file),
        Command::Selftest { cases, sequential } => {
            let mode = if sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            verbs::selftest(cli.seed, cases, mode)
        }
    };
    match result {
        Ok(verbs::Outcome::Output(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(verbs::Outcome::Verdict { text, positive }) => {
            print!("{text}");
            if positive {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(NEGATIVE)
            }
        }
        Err(e) => {
            eprintln!("dualmin: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
