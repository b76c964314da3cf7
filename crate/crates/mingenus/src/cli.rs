//! Command dispatch, output rendering and batch processing.

use std::ffi::OsString;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mingenus_core::autgroup::{bounded_word_search, exotic_phi, CandidateAutomorphism, SearchConfig};
use mingenus_core::genus::{
    adjunction_bound, complexity_x, complexity_xc, decompose_tensor, minimal_genus, thurston_norm_pushforward,
};
use mingenus_core::normalform::{full_normalize, reduce_handles};
use mingenus_core::surfcalc::replay_construction;
use mingenus_core::twisted::{twisted_decompose, twisted_minimal_genus, twisted_self_intersection};
use mingenus_core::GenusContext;
use serde_json::{json, Map, Value};

use crate::literal::{
    class_to_value, int_value, parse_class, parse_twisted, parse_word, twisted_to_value, word_to_value, ParseError,
};
use crate::selftest;

pub const NODE_BUDGET_ENV: &str = "MINGENUS_NODE_BUDGET";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Domain(#[from] mingenus_core::Error),
    #[error("{0}")]
    Failed(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io { .. } => 2,
            CliError::Domain(_) | CliError::Failed(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) | CliError::Io { .. } => "parse",
            CliError::Domain(_) | CliError::Failed(_) => "domain",
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "mingenus", version, about = "Minimal genus of second homology classes of Σ_g × T²")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// A class literal.
    #[arg(long)]
    pub class: Option<String>,
    /// A file of newline-delimited class literals, one output record per line.
    #[arg(long)]
    pub batch: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    /// Handles 2..g cleared.
    Handles,
    /// Handles cleared and handle 1 diagonalized.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Exotic,
    MoveWord,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimal genus and which case of the formula applies.
    Genus(Input),
    /// The adjunction lower bound.
    Bound(Input),
    /// Complexity functions x, x_c and the pushed-forward Thurston norm (g ≥ 2).
    Complexity(Input),
    /// Reduce to normal form, printing the certifying move word.
    Normalize {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "full")]
        form: FormArg,
    },
    /// Apply a move word, given as a JSON array of move literals.
    Act {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        word: String,
    },
    /// Normalize, then replay the surface construction realizing the minimal genus.
    Replay(Input),
    /// Minimal genus over a nontrivial circle bundle; literals carry "m" and "fiber".
    TwistedGenus(Input),
    /// Bounded search for a generator word realizing a target automorphism.
    Orbit {
        #[arg(long, value_enum)]
        target: Target,
        /// Base genus of the target.
        #[arg(long, default_value_t = 2)]
        g: usize,
        /// Word defining the target when `--target move-word`.
        #[arg(long)]
        word: Option<String>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, env = NODE_BUDGET_ENV, default_value_t = 1_000_000)]
        node_budget: u64,
    },
    /// Run the seeded invariant suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },
}

fn obj(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_owned(), v)).collect::<Map<_, _>>())
}

fn genus_record(literal: &str) -> Result<Value, CliError> {
    let sigma = parse_class(literal)?;
    let r = minimal_genus(&sigma);
    let mut pairs = vec![("class", class_to_value(&sigma)), ("genus", int_value(&r.value)), ("case", json!(r.case.name()))];
    if let Some(t) = decompose_tensor(&sigma) {
        pairs.push((
            "factorization",
            json!({
                "u": t.u.iter().map(int_value).collect::<Vec<_>>(),
                "v": [int_value(&t.v.0), int_value(&t.v.1)],
                "n": int_value(&t.n),
            }),
        ));
    }
    Ok(obj(pairs))
}

fn bound_record(literal: &str) -> Result<Value, CliError> {
    let sigma = parse_class(literal)?;
    let bound = adjunction_bound(&sigma)?;
    let genus = minimal_genus(&sigma).value;
    Ok(obj(vec![
        ("class", class_to_value(&sigma)),
        ("bound", int_value(&bound)),
        ("genus", int_value(&genus)),
        ("gap", int_value(&(genus - &bound))),
    ]))
}

fn complexity_record(literal: &str) -> Result<Value, CliError> {
    let sigma = parse_class(literal)?;
    Ok(obj(vec![
        ("class", class_to_value(&sigma)),
        ("x", int_value(&complexity_x(&sigma)?)),
        ("x_c", int_value(&complexity_xc(&sigma)?)),
        ("thurston_norm", int_value(&thurston_norm_pushforward(&sigma)?)),
        ("case", json!(minimal_genus(&sigma).case.name())),
    ]))
}

fn normalize_record(literal: &str, form: FormArg) -> Result<Value, CliError> {
    let sigma = parse_class(literal)?;
    let r = match form {
        FormArg::Full => full_normalize(&sigma),
        FormArg::Handles => reduce_handles(&sigma),
    };
    let phases: Vec<Value> = r.phase_log.iter().map(|(label, c)| json!({"phase": label, "class": class_to_value(c)})).collect();
    Ok(obj(vec![
        ("input", class_to_value(&sigma)),
        ("normal", class_to_value(&r.normal)),
        ("word", word_to_value(&r.word)),
        ("phases", Value::Array(phases)),
    ]))
}

fn act_record(literal: &str, word: &str) -> Result<Value, CliError> {
    let sigma = parse_class(literal)?;
    let w = parse_word(word)?;
    let out = w.apply(&sigma)?;
    Ok(obj(vec![("input", class_to_value(&sigma)), ("word", word_to_value(&w)), ("output", class_to_value(&out))]))
}

fn replay_record(literal: &str) -> Result<Value, CliError> {
    let sigma = parse_class(literal)?;
    let norm = full_normalize(&sigma);
    let r = replay_construction(&norm.normal)?;
    let transcript: Vec<Value> = r.transcript.iter().map(|t| json!(t.to_string())).collect();
    Ok(obj(vec![
        ("input", class_to_value(&sigma)),
        ("normal", class_to_value(&norm.normal)),
        ("word", word_to_value(&norm.word)),
        ("script", json!(r.script.to_string())),
        ("genus", int_value(&r.genus)),
        ("minimal_genus", int_value(&minimal_genus(&sigma).value)),
        ("transcript", Value::Array(transcript)),
    ]))
}

fn twisted_record(literal: &str) -> Result<Value, CliError> {
    let sigma = parse_twisted(literal)?;
    let r = twisted_minimal_genus(&sigma);
    let mut pairs = vec![
        ("class", twisted_to_value(&sigma)),
        ("self_intersection", int_value(&twisted_self_intersection(&sigma))),
        ("genus", int_value(&r.value)),
        ("case", json!(r.case.name())),
    ];
    if let Some(t) = twisted_decompose(&sigma) {
        pairs.push((
            "factorization",
            json!({
                "u": t.u.iter().map(int_value).collect::<Vec<_>>(),
                "v": [int_value(&t.v.0), int_value(&t.v.1)],
                "n": int_value(&t.n),
            }),
        ));
    }
    Ok(obj(pairs))
}

fn orbit_record(target: Target, g: usize, word: Option<&str>, depth: usize, node_budget: u64) -> Result<Value, CliError> {
    let ctx = GenusContext::new(g)?;
    let candidate = match target {
        Target::Exotic => exotic_phi(ctx)?,
        Target::MoveWord => {
            let Some(w) = word else {
                return Err(ParseError("--target move-word needs --word".into()).into());
            };
            CandidateAutomorphism::from_word(&parse_word(w)?, ctx)?
        }
    };
    let outcome = bounded_word_search(&candidate, SearchConfig { depth, node_budget })?;
    let mut pairs = vec![
        ("target", json!(candidate.provenance)),
        ("g", json!(g)),
        ("depth", json!(outcome.depth_searched)),
        ("generators", json!(outcome.generators)),
        ("nodes", json!(outcome.nodes)),
        ("found", json!(outcome.word.is_some())),
    ];
    match &outcome.word {
        Some(w) => pairs.push(("word", word_to_value(w))),
        None => pairs.push((
            "note",
            json!(format!("no word of length <= {} over the finite generator set; this is not a proof", outcome.depth_searched)),
        )),
    }
    Ok(obj(pairs))
}

fn render_text(v: &Value, out: &mut dyn Write) -> std::io::Result<()> {
    let Value::Object(map) = v else {
        return writeln!(out, "{v}");
    };
    for (k, v) in map {
        match v {
            Value::String(s) => writeln!(out, "{k}: {s}")?,
            Value::Array(items) if !items.is_empty() && items.iter().all(|i| i.is_string() || i.is_object()) && k != "word" => {
                writeln!(out, "{k}:")?;
                for item in items {
                    match item {
                        Value::String(s) => writeln!(out, "  {s}")?,
                        Value::Object(m) if m.contains_key("phase") => {
                            writeln!(out, "  {}: {}", m["phase"].as_str().unwrap_or_default(), m["class"])?
                        }
                        Value::Object(m) if m.contains_key("suite") => {
                            let name = m["suite"].as_str().unwrap_or_default();
                            match m["failure"].as_str() {
                                None => writeln!(out, "  {name}: PASS ({} checks)", m["checks"])?,
                                Some(why) => writeln!(out, "  {name}: FAIL {why}")?,
                            }
                        }
                        other => writeln!(out, "  {other}")?,
                    }
                }
            }
            other => writeln!(out, "{k}: {other}")?,
        }
    }
    Ok(())
}

fn emit(format: Format, v: &Value, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{v}"),
        Format::Text => render_text(v, out),
    }
}

fn error_value(e: &CliError, line: Option<usize>) -> Value {
    let mut pairs = Vec::new();
    if let Some(n) = line {
        pairs.push(("line", json!(n)));
    }
    pairs.push(("ok", json!(false)));
    pairs.push(("kind", json!(e.kind())));
    pairs.push(("error", json!(e.to_string())));
    obj(pairs)
}

/// One record per input line, in order; errors become records and make the exit code 1.
fn run_batch(
    path: &PathBuf,
    format: Format,
    eval: &dyn Fn(&str) -> Result<Value, CliError>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let file = std::fs::File::open(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
    let mut failed = false;
    for (k, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|source| CliError::Io { path: path.clone(), source })?;
        let n = k + 1;
        let record = match eval(&line) {
            Ok(v) => obj(vec![("line", json!(n)), ("ok", json!(true)), ("result", v)]),
            Err(e) => {
                failed = true;
                error_value(&e, Some(n))
            }
        };
        match format {
            Format::Json => writeln!(out, "{record}"),
            Format::Text => match &record["result"] {
                Value::Null => writeln!(out, "line {n}: error: {}", record["error"].as_str().unwrap_or_default()),
                v => writeln!(out, "line {n}: {v}"),
            },
        }
        .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })?;
    }
    Ok(i32::from(failed))
}

fn single_or_batch(
    input: &Input,
    format: Format,
    eval: &dyn Fn(&str) -> Result<Value, CliError>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    match (&input.class, &input.batch) {
        (_, Some(path)) => run_batch(path, format, eval, out),
        (Some(literal), None) => {
            let v = eval(literal)?;
            emit(format, &v, out).map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })?;
            Ok(0)
        }
        (None, None) => Err(ParseError("one of --class or --batch is required".into()).into()),
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let f = cli.format;
    match &cli.command {
        Command::Genus(input) => single_or_batch(input, f, &genus_record, out),
        Command::Bound(input) => single_or_batch(input, f, &bound_record, out),
        Command::Complexity(input) => single_or_batch(input, f, &complexity_record, out),
        Command::Normalize { input, form } => single_or_batch(input, f, &|l| normalize_record(l, *form), out),
        Command::Act { input, word } => {
            parse_word(word)?;
            single_or_batch(input, f, &|l| act_record(l, word), out)
        }
        Command::Replay(input) => single_or_batch(input, f, &replay_record, out),
        Command::TwistedGenus(input) => single_or_batch(input, f, &twisted_record, out),
        Command::Orbit { target, g, word, depth, node_budget } => {
            let v = orbit_record(*target, *g, word.as_deref(), *depth, *node_budget)?;
            emit(f, &v, out).map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })?;
            Ok(0)
        }
        Command::Selftest { seed, samples } => {
            let report = selftest::run(*seed, *samples);
            emit(f, &report.to_value(), out).map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })?;
            if report.passed() {
                Ok(0)
            } else {
                Err(CliError::Failed("selftest failed".into()))
            }
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
/// Results go to `out`; diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            if cli.format == Format::Json {
                let _ = writeln!(out, "{}", error_value(&e, None));
            }
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
