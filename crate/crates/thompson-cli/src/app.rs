//! Command-line parsing and the commands themselves. Commands return their
//! report as text together with an exit code so they can be tested without
//! spawning a process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thompson::circuits::{compile, compile_strong, Circuit};
use thompson::genwords::{eval, materialize, GenWord};
use thompson::presentation::{enumerate_generators, factor_traced, GeneratorSet, PresError};
use thompson::wordproblem::{
    circuit_equiv, wp_bounded_witness, wp_normal_form_is_identity, wp_table, witness_bound, EquivMode, Verdict,
    WitnessConfig, WpError,
};
use thompson::{GenKind, GroupTag, Letter, Word};

use crate::acceptance;
use crate::formats::{self, FormatError};

/// Exit code for a successful command with a positive answer.
pub const EXIT_OK: i32 = 0;
/// Exit code for a negative answer: inequivalent, not the identity,
/// undefined, not in the group, or a failed self-test.
pub const EXIT_FALSE: i32 = 1;
/// Exit code for usage, input and parse errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "thompson", version, about = "Circuits, generator words and tables in the Thompson-Higman group G_{3,1}")]
pub struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = acceptance::DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply a generator word to a word over {0,1,#}.
    Apply {
        /// Generator word file (.gw).
        word: PathBuf,
        /// Input word, `@` for the empty word.
        input: String,
    },
    /// Compile a circuit into a generator word.
    Compile {
        /// Circuit file (.ckt).
        circuit: PathBuf,
        /// Emit the strong simulation, which also behaves uniformly on short inputs.
        #[arg(long)]
        strong: bool,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether two circuits compute the same function.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Decide whether a generator word is the identity.
    Wp {
        /// Generator word file (.gw).
        word: PathBuf,
        /// Decision method. `auto` uses the normal form when the only kappa
        /// token is K and the witness search otherwise.
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Longest probe for the witness search.
        #[arg(long, default_value_t = WitnessConfig::DEFAULT_CAP)]
        cap: usize,
    },
    /// Factor a table over the generators of bounded table-size.
    Factor {
        /// Table file with one `dom -> img` row per line.
        table: PathBuf,
        #[arg(long, default_value = "G31_01_SHARP")]
        tag: String,
        #[arg(long, default_value_t = 7)]
        bound: usize,
        /// Elements below this table-size count as generators (mod 3 tag only).
        #[arg(long)]
        threshold: Option<usize>,
        /// Read the generator set from this file instead of enumerating it.
        #[arg(long)]
        gens: Option<PathBuf>,
        /// Write the generator set used, including generators added on demand.
        #[arg(long)]
        write_gens: Option<PathBuf>,
    },
    /// Report size measures of a compiled circuit (.ckt) or a generator word (.gw).
    Metrics {
        file: PathBuf,
        /// Compile with the strong simulation.
        #[arg(long)]
        strong: bool,
        /// Also report the length with tau indices written in unary.
        #[arg(long)]
        unary: bool,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Run only this criterion (1-based).
        #[arg(long)]
        only: Option<u8>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Oracle,
    Group,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Table,
    NormalForm,
    Witness,
}

/// Text written by a command and its exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Report {
    fn ok(stdout: String) -> Report {
        Report { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn answer(yes: bool, stdout: String) -> Report {
        Report { code: if yes { EXIT_OK } else { EXIT_FALSE }, stdout, stderr: String::new() }
    }

    fn usage(msg: impl std::fmt::Display) -> Report {
        Report { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Report { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Report::ok(text)
            }
        }
    }
}

pub fn run(cli: &Cli) -> Report {
    let result = match &cli.command {
        Command::Apply { word, input } => apply(word, input),
        Command::Compile { circuit, strong, output } => compile_cmd(circuit, *strong, output.as_deref()),
        Command::Equiv { first, second, mode } => equiv(first, second, *mode),
        Command::Wp { word, method, cap } => wp(word, *method, *cap),
        Command::Factor { table, tag, bound, threshold, gens, write_gens } => {
            factor_cmd(table, tag, *bound, *threshold, gens.as_deref(), write_gens.as_deref())
        }
        Command::Metrics { file, strong, unary } => metrics(file, *strong, *unary),
        Command::Selftest { only } => Ok(selftest(cli.seed, *only)),
    };
    result.unwrap_or_else(Report::usage)
}

/// Errors that end a command with the usage exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error(transparent)]
    Wp(#[from] WpError),
    #[error("{0}")]
    Invalid(String),
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load<T>(path: &Path, parse: fn(&str) -> Result<T, FormatError>) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|source| CliError::Format { path: path.display().to_string(), source })
}

fn apply(path: &Path, input: &str) -> Result<Report, CliError> {
    let w = load(path, formats::parse_genword)?;
    let x = Word::parse(input).map_err(|e| CliError::Invalid(format!("input word: {e}")))?;
    Ok(match eval(&w, &x) {
        Some(y) => Report::ok(format!("{y}\n")),
        None => Report::answer(false, "undefined\n".into()),
    })
}

fn compile_circuit(c: &Circuit, strong: bool) -> GenWord {
    if strong {
        compile_strong(c)
    } else {
        compile(c)
    }
}

fn compile_cmd(path: &Path, strong: bool, output: Option<&Path>) -> Result<Report, CliError> {
    let c = load(path, formats::parse_circuit)?;
    let w = compile_circuit(&c, strong);
    let kind = if strong { "strong simulation" } else { "simulation" };
    let text = format!(
        "# {kind} of a circuit with {} inputs and {} outputs\n{}",
        c.inputs(),
        c.output_count(),
        formats::write_genword(&w)
    );
    match output {
        Some(p) => {
            write(p, &text)?;
            Ok(Report::ok(format!("wrote {} tokens to {}\n", w.len(), p.display())))
        }
        None => Ok(Report::ok(text)),
    }
}

fn bits_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn equiv(first: &Path, second: &Path, mode: Mode) -> Result<Report, CliError> {
    let c1 = load(first, formats::parse_circuit)?;
    let c2 = load(second, formats::parse_circuit)?;
    let mode = match mode {
        Mode::Oracle => EquivMode::Oracle,
        Mode::Group => EquivMode::Group,
        Mode::Both => EquivMode::Both,
    };
    let r = circuit_equiv(&c1, &c2, mode)?;
    let mut out = String::from(if r.equivalent { "equivalent\n" } else { "inequivalent\n" });
    if let Some(x) = &r.input {
        let y1 = c1.eval(x).map_err(WpError::from)?;
        let y2 = c2.eval(x).map_err(WpError::from)?;
        writeln!(out, "input {} gives {} and {}", bits_string(x), bits_string(&y1), bits_string(&y2)).unwrap();
    }
    if let Some((x, y)) = &r.moved {
        writeln!(out, "moved {x} -> {y}").unwrap();
    }
    Ok(Report::answer(r.equivalent, out))
}

/// A short probe `x#` moved by `w`, for deciders that answer yes or no.
fn find_witness(w: &GenWord) -> Option<Word> {
    let cfg = WitnessConfig::for_word(w, 0);
    let cfg = WitnessConfig { cap: witness_bound(w, cfg.ell), ..cfg };
    match wp_bounded_witness(w, cfg) {
        Verdict::NotIdentity(x) => Some(x),
        _ => None,
    }
}

fn table_witness(w: &GenWord) -> Result<Word, CliError> {
    let t = materialize(w).map_err(WpError::from)?;
    let (x, _) = t
        .entries()
        .iter()
        .find(|(x, y)| x != y)
        .ok_or_else(|| CliError::Invalid("table is the identity".into()))?;
    let mut probe = x.clone();
    if probe.is_bits() {
        probe.push(Letter::Hash);
    }
    Ok(probe)
}

fn wp(path: &Path, method: Method, cap: usize) -> Result<Report, CliError> {
    let w = load(path, formats::parse_genword)?;
    let only_k321 = w.tokens().iter().all(|t| !matches!(t.kind, GenKind::K(_)));
    let method = match method {
        Method::Auto if only_k321 => Method::NormalForm,
        Method::Auto => Method::Witness,
        m => m,
    };
    let verdict = match method {
        Method::Table => {
            if wp_table(&w)? {
                Verdict::IdentityProven
            } else {
                Verdict::NotIdentity(table_witness(&w)?)
            }
        }
        Method::NormalForm => {
            if wp_normal_form_is_identity(&w)? {
                Verdict::IdentityProven
            } else {
                let x = find_witness(&w)
                    .ok_or_else(|| CliError::Invalid("normal form and witness search disagree".into()))?;
                Verdict::NotIdentity(x)
            }
        }
        Method::Witness | Method::Auto => wp_bounded_witness(&w, WitnessConfig::for_word(&w, cap)),
    };
    let yes = !matches!(verdict, Verdict::NotIdentity(_));
    Ok(Report::answer(yes, formats::write_verdict(&verdict)))
}

fn factor_cmd(
    path: &Path,
    tag: &str,
    bound: usize,
    threshold: Option<usize>,
    gens_path: Option<&Path>,
    write_gens: Option<&Path>,
) -> Result<Report, CliError> {
    let phi = load(path, formats::parse_table)?;
    let tag: GroupTag = tag.parse().map_err(|_| CliError::Invalid(format!("unknown group tag `{tag}`")))?;
    let mut gens: GeneratorSet = match gens_path {
        Some(p) => load(p, formats::parse_generator_set)?,
        None => enumerate_generators(tag, bound).map_err(|e| CliError::Invalid(e.to_string()))?,
    };
    if gens.tag != tag {
        return Err(CliError::Invalid(format!("generator set is for {}, not {tag}", gens.tag)));
    }
    if let Some(t) = threshold {
        gens = gens.with_threshold(t);
    }
    let report = match factor_traced(&phi, &mut gens) {
        Ok((ids, largest)) => {
            let mut out = formats::write_factorization(&ids);
            writeln!(out, "# {} factors, largest intermediate table-size {largest}", ids.len()).unwrap();
            Report::ok(out)
        }
        Err(PresError::NotInGroup(g)) => Report::answer(false, format!("not in {g}\n")),
        Err(e) => return Err(CliError::Invalid(e.to_string())),
    };
    if let Some(p) = write_gens {
        write(p, &formats::write_generator_set(&gens))?;
    }
    Ok(report)
}

fn metrics(path: &Path, strong: bool, unary: bool) -> Result<Report, CliError> {
    let is_circuit = path.extension().is_some_and(|e| e == "ckt");
    let mut out = String::new();
    let w = if is_circuit {
        let c = load(path, formats::parse_circuit)?;
        writeln!(out, "circuit-size {}", c.size()).unwrap();
        compile_circuit(&c, strong)
    } else {
        load(path, formats::parse_genword)?
    };
    writeln!(out, "tokens {}", w.len()).unwrap();
    match w.max_tau_index() {
        Some(i) => writeln!(out, "max-tau {i}").unwrap(),
        None => writeln!(out, "max-tau none").unwrap(),
    }
    if unary {
        writeln!(out, "unary-length {}", w.unary_length()).unwrap();
    }
    match materialize(&w) {
        Ok(t) => writeln!(out, "table-size {}", t.size()).unwrap(),
        Err(_) => writeln!(out, "table-size unavailable").unwrap(),
    }
    Ok(Report::ok(out))
}

fn selftest(seed: u64, only: Option<u8>) -> Report {
    let ids: Vec<u8> = match only {
        Some(id) if id >= 1 && usize::from(id) <= acceptance::criterion_count() => vec![id],
        Some(id) => return Report::usage(format!("no criterion {id}")),
        None => (1..=acceptance::criterion_count() as u8).collect(),
    };
    let mut out = String::new();
    let mut all = true;
    for id in ids {
        let o = acceptance::run_one(id, seed);
        all &= o.passed();
        writeln!(out, "{o}").unwrap();
    }
    Report::answer(all, out)
}
