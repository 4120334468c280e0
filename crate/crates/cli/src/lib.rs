//! Command-line front end.
//!
//! [`run`] parses arguments and executes one command, returning the text for
//! standard output and standard error together with the exit status. The
//! binary only prints those and exits.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use distack::combinatorics::{self, Method};
use distack::{
    catalan, di_sort, diagnose_stuck, empty_stack_visits, oracle_witness, schroder_large,
    schroder_small, CountRow, CountTable, Error, MachineConfig, PatternSet, Permutation,
    SortOutcome, StackRestriction,
};

/// Exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    /// A well-formed query whose answer is no, unsortable or a mismatch.
    Negative = 1,
    Usage = 2,
    Limit = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub status: Status,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn answer(yes: bool, stdout: String) -> Self {
        CommandResult {
            status: if yes {
                Status::Success
            } else {
                Status::Negative
            },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        CommandResult {
            status: Status::Usage,
            stdout: String::new(),
            stderr: message.into(),
        }
    }
}

impl From<Error> for CommandResult {
    fn from(err: Error) -> Self {
        let status = if err.is_limit() {
            Status::Limit
        } else {
            Status::Usage
        };
        CommandResult {
            status,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "distack",
    version,
    about = "Sorting permutations with stacks in series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sort a permutation and report the run.
    Sort {
        /// One-line notation: `24513`, `2 4 5 1 3` or `2,4,5,1,3`.
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
        /// Stack kinds from the input side, over D, I and U.
        #[arg(long, default_value = "DI")]
        machine: String,
        /// Print the move sequence.
        #[arg(long)]
        trace: bool,
        /// Disable the bulk-transfer rule of the DI algorithm.
        #[arg(long)]
        no_step2: bool,
        /// Report how many states along the run have every stack empty.
        #[arg(long)]
        stat: bool,
    },
    /// Decide sortability with one or all methods.
    Check {
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
        #[arg(long, default_value = "DI")]
        machine: String,
        /// Defaults to `algorithm` on DI and `oracle` elsewhere.
        #[arg(long, value_enum)]
        method: Option<CheckMethod>,
    },
    /// Count sortable permutations by length.
    Enumerate {
        #[arg(long, default_value = "DI")]
        machine: String,
        #[arg(long)]
        max_n: usize,
        /// Defaults to `algorithm` on DI and `oracle` elsewhere.
        #[arg(long, value_enum)]
        method: Option<CountMethod>,
        #[arg(long, value_enum, default_value_t = Reference::None)]
        reference: Reference,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the minimal unsortable permutations up to a length.
    Basis {
        #[arg(long, default_value = "DI")]
        machine: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Print the first terms of a reference sequence.
    Sequence {
        #[arg(long, value_enum)]
        name: SequenceName,
        #[arg(long)]
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckMethod {
    Algorithm,
    Oracle,
    Avoidance,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountMethod {
    Algorithm,
    Oracle,
    Avoidance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Reference {
    Schroder,
    Catalan,
    Av1342,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SequenceName {
    LargeSchroder,
    SmallSchroder,
    Catalan,
}

/// Terms available from `sequence`: indices 0..=30 for large Schröder and
/// Catalan, 1..=30 for small Schröder.
const MAX_TERMS: usize = combinatorics::SEQUENCE_CAP + 1;

pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.render().to_string();
            return if err.use_stderr() {
                CommandResult::usage(rendered)
            } else {
                CommandResult::answer(true, rendered)
            };
        }
    };
    let outcome = match cli.command {
        Command::Sort {
            perm,
            machine,
            trace,
            no_step2,
            stat,
        } => cmd_sort(&perm, &machine, trace, no_step2, stat),
        Command::Check {
            perm,
            machine,
            method,
        } => cmd_check(&perm, &machine, method),
        Command::Enumerate {
            machine,
            max_n,
            method,
            reference,
            format,
        } => cmd_enumerate(&machine, max_n, method, reference, format),
        Command::Basis { machine, max_len } => cmd_basis(&machine, max_len),
        Command::Sequence { name, count } => cmd_sequence(name, count),
    };
    outcome.unwrap_or_else(CommandResult::from)
}

fn parse_perm(words: &[String]) -> Result<Permutation, Error> {
    words.join(" ").parse()
}

/// The known basis of the class sorted by `config`, if there is one.
fn known_basis(config: &MachineConfig) -> Option<PatternSet> {
    if config.is_di() {
        Some(PatternSet::di_basis())
    } else if *config == MachineConfig::single(StackRestriction::Unrestricted) {
        Some(PatternSet::stack_basis())
    } else {
        None
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_sort(
    words: &[String],
    machine: &str,
    show_trace: bool,
    no_step2: bool,
    stat: bool,
) -> Result<CommandResult, Error> {
    let perm = parse_perm(words)?;
    let config: MachineConfig = machine.parse()?;
    let mut out = String::new();

    if config.is_di() {
        let outcome = di_sort(&perm, !no_step2);
        match &outcome {
            SortOutcome::Sorted(trace) => {
                out.push_str("SORTED\n");
                if show_trace {
                    writeln!(out, "{}", trace.to_text(&config)).unwrap();
                }
                if stat {
                    let visits = empty_stack_visits(&perm, trace, &config)?;
                    writeln!(out, "empty-stack states: {visits}").unwrap();
                }
            }
            SortOutcome::Stuck { trace, .. } => {
                let diag = diagnose_stuck(&outcome).expect("stuck runs have a diagnosis");
                writeln!(
                    out,
                    "STUCK top of I = {}, next input = {}, next output = {}",
                    diag.top_of_i, diag.next_input, diag.next_output
                )
                .unwrap();
                if show_trace {
                    writeln!(out, "{}", trace.to_text(&config)).unwrap();
                }
                if stat {
                    out.push_str("empty-stack states: undefined\n");
                }
            }
        }
        return Ok(CommandResult::answer(outcome.is_sorted(), out));
    }

    if no_step2 {
        return Ok(CommandResult::usage(
            "error: --no-step2 only applies to the DI algorithm\n",
        ));
    }
    let witness = oracle_witness(&perm, &config)?;
    match &witness {
        Some(trace) => {
            out.push_str("SORTED\n");
            if show_trace {
                writeln!(out, "{}", trace.to_text(&config)).unwrap();
            }
            if stat {
                let visits = empty_stack_visits(&perm, trace, &config)?;
                writeln!(out, "empty-stack states: {visits}").unwrap();
            }
        }
        None => {
            writeln!(
                out,
                "STUCK no move sequence sorts this permutation on {config}"
            )
            .unwrap();
            if stat {
                out.push_str("empty-stack states: undefined\n");
            }
        }
    }
    Ok(CommandResult::answer(witness.is_some(), out))
}

fn cmd_check(
    words: &[String],
    machine: &str,
    method: Option<CheckMethod>,
) -> Result<CommandResult, Error> {
    let perm = parse_perm(words)?;
    let config: MachineConfig = machine.parse()?;
    let method = method.unwrap_or(if config.is_di() {
        CheckMethod::Algorithm
    } else {
        CheckMethod::Oracle
    });

    let algorithm = || di_sort(&perm, true).is_sorted();
    let oracle = || distack::oracle_sortable(&perm, &config);
    let avoidance = |basis: &PatternSet| perm.avoids_all(basis);

    let single = |answer: bool| CommandResult::answer(answer, format!("{}\n", yes_no(answer)));
    match method {
        CheckMethod::Algorithm => {
            if !config.is_di() {
                return Ok(CommandResult::usage(format!(
                    "error: the algorithm method only applies to DI, not {config}\n"
                )));
            }
            Ok(single(algorithm()))
        }
        CheckMethod::Oracle => Ok(single(oracle()?)),
        CheckMethod::Avoidance => match known_basis(&config) {
            Some(basis) => Ok(single(avoidance(&basis))),
            None => Ok(CommandResult::usage(format!(
                "error: no known basis for machine {config}\n"
            ))),
        },
        CheckMethod::All => {
            let mut answers: Vec<(&str, bool)> = Vec::new();
            if config.is_di() {
                answers.push(("algorithm", algorithm()));
            }
            answers.push(("oracle", oracle()?));
            if let Some(basis) = known_basis(&config) {
                answers.push(("avoidance", avoidance(&basis)));
            }
            let mut out = String::new();
            for (name, answer) in &answers {
                writeln!(out, "{name}: {}", yes_no(*answer)).unwrap();
            }
            let first = answers[0].1;
            if answers.iter().all(|&(_, a)| a == first) {
                out.push_str("agree\n");
                Ok(CommandResult::answer(first, out))
            } else {
                out.push_str("disagree\n");
                Ok(CommandResult {
                    status: Status::Usage,
                    stdout: out,
                    stderr: format!("internal inconsistency: methods disagree on {perm}\n"),
                })
            }
        }
    }
}

fn cmd_enumerate(
    machine: &str,
    max_n: usize,
    method: Option<CountMethod>,
    reference: Reference,
    format: Format,
) -> Result<CommandResult, Error> {
    let config: MachineConfig = machine.parse()?;
    let method = match method {
        Some(CountMethod::Algorithm) => Method::Algorithm,
        Some(CountMethod::Oracle) => Method::Oracle,
        Some(CountMethod::Avoidance) => match known_basis(&config) {
            Some(basis) => Method::Avoidance(basis),
            None => {
                return Ok(CommandResult::usage(format!(
                    "error: no known basis for machine {config}\n"
                )))
            }
        },
        None if config.is_di() => Method::Algorithm,
        None => Method::Oracle,
    };
    if max_n > method.cap() {
        return Err(Error::Limit {
            what: "enumeration length",
            requested: max_n,
            cap: method.cap(),
        });
    }

    let av1342 = Method::Avoidance(std::iter::once(Permutation::new(vec![1, 3, 4, 2])?).collect());
    let mut counts = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        counts.push((n, combinatorics::enumerate_sortable(n, &config, &method)?));
    }

    if reference == Reference::None {
        let table: Vec<[String; 2]> = counts
            .iter()
            .map(|(n, c)| [n.to_string(), c.to_string()])
            .collect();
        return Ok(CommandResult::answer(true, render_counts(&table, format)));
    }

    let rows = counts
        .into_iter()
        .map(|(n, count)| {
            let expected = match reference {
                Reference::Schroder => schroder_large(n - 1)?,
                Reference::Catalan => catalan(n)?,
                Reference::Av1342 => {
                    u128::from(combinatorics::enumerate_sortable(n, &config, &av1342)?)
                }
                Reference::None => unreachable!(),
            };
            Ok(CountRow::new(n, count, expected))
        })
        .collect::<Result<_, Error>>()?;
    let table = CountTable { rows };
    let text = match format {
        Format::Text => table.to_text(),
        Format::Records => table.to_records(),
    };
    Ok(CommandResult::answer(table.all_match(), text))
}

fn render_counts(rows: &[[String; 2]], format: Format) -> String {
    let header = ["n".to_string(), "count".to_string()];
    let mut out = String::new();
    match format {
        Format::Records => {
            for row in std::iter::once(&header).chain(rows) {
                writeln!(out, "{}\t{}", row[0], row[1]).unwrap();
            }
        }
        Format::Text => {
            let w0 = rows.iter().map(|r| r[0].len()).chain([1]).max().unwrap();
            let w1 = rows.iter().map(|r| r[1].len()).chain([5]).max().unwrap();
            for row in std::iter::once(&header).chain(rows) {
                writeln!(out, "{:>w0$}  {:>w1$}", row[0], row[1]).unwrap();
            }
        }
    }
    out
}

fn cmd_basis(machine: &str, max_len: usize) -> Result<CommandResult, Error> {
    let config: MachineConfig = machine.parse()?;
    let basis = combinatorics::basis_search(max_len, &config)?;
    let mut out = String::new();
    for perm in &basis {
        let text = perm.to_compact_string().unwrap_or_else(|| perm.to_string());
        writeln!(out, "{text}").unwrap();
    }
    Ok(CommandResult::answer(true, out))
}

fn cmd_sequence(name: SequenceName, count: usize) -> Result<CommandResult, Error> {
    let cap = match name {
        SequenceName::SmallSchroder => MAX_TERMS - 1,
        _ => MAX_TERMS,
    };
    if count > cap {
        return Err(Error::Limit {
            what: "term count",
            requested: count,
            cap,
        });
    }
    let mut out = String::new();
    for i in 0..count {
        let term = match name {
            SequenceName::LargeSchroder => schroder_large(i)?,
            SequenceName::SmallSchroder => schroder_small(i + 1)?,
            SequenceName::Catalan => catalan(i)?,
        };
        writeln!(out, "{term}").unwrap();
    }
    Ok(CommandResult::answer(true, out))
}
