//! Command-line front end: code analysis, distance bounds, per-length
//! tabulation, decoding and brute-force distances.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use cycbound::bounds::BoundsReport;
use cycbound::code::{CodeSpec, CyclicCode, Reversibility};
use cycbound::decoder::DecoderContext;
use cycbound::harness::{self, Codewords, FamilyRule, DEFAULT_BUDGET};
use cycbound::series::{PreparedRegistry, Registry};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DECODING_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] cycbound::Error),
    #[error("cannot read registry {path}: {source}")]
    Registry { path: PathBuf, source: std::io::Error },
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "cycbound", version, about = "Distance bounds and decoding for cyclic codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; `csv` applies to `tabulate` only.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Maximum number of codewords to enumerate, e.g. `16777216` or `2^24`.
    #[arg(long, global = true, value_parser = parse_budget)]
    pub budget: Option<u128>,
    /// Candidate fractions file, one `q=.. f=.. h=..` per line.
    #[arg(long, global = true)]
    pub registry: Option<PathBuf>,
    /// Seed for sampled decoder tests.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parameters, cosets and reversibility of a code.
    Analyze {
        /// `q=<int> n=<int> cosets=<r1,r2,...>`
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// BCH, Hartmann-Tzeng, rational and Boston bounds with witnesses.
    Bounds {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Per-length statistics over all cyclic codes.
    Tabulate {
        /// Lengths, e.g. `15,17,21`.
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<u64>,
        /// Alphabet size.
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// Use every registry family instead of the first valid one.
        #[arg(long)]
        all_families: bool,
    },
    /// Decode `word=<s0,s1,...>`, or without a word run the decoder over
    /// every error pattern up to its radius.
    Decode {
        /// Code spec tokens plus an optional `word=<symbols mod q>`.
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        /// Without a word: number of random codewords (0 = all, within budget).
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Brute-force minimum distance.
    Distance {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
}

fn parse_budget(s: &str) -> Result<u128, String> {
    let bad = || format!("malformed budget `{s}`");
    match s.split_once('^') {
        Some((b, e)) => {
            let b: u128 = b.trim().parse().map_err(|_| bad())?;
            let e: u32 = e.trim().parse().map_err(|_| bad())?;
            b.checked_pow(e).ok_or_else(bad)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

/// Parses argv (program name first), runs the subcommand and writes the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    match &cli.command {
        Command::Analyze { spec } => {
            let code = build_code(spec)?;
            emit(cli, out, &AnalyzeReport::new(&code), |o, r| r.write_text(o))?;
        }
        Command::Bounds { spec } => {
            let code = build_code(spec)?;
            let reg = prepare_registry(cli, &code, err)?;
            let report = BoundsReport::compute(code.defining_set(), &reg);
            emit(cli, out, &report, |o, r| {
                for c in r.certificates() {
                    writeln!(o, "{c}")?;
                }
                match r.boston_question {
                    Some(v) => writeln!(o, "BOSTON-QUESTION {v}"),
                    None => writeln!(o, "BOSTON-QUESTION n/a"),
                }
            })?;
        }
        Command::Tabulate { lengths, q, all_families } => {
            let registry = load_registry(cli, err)?;
            let rule = if *all_families { FamilyRule::All } else { FamilyRule::FirstValid };
            let format = cli.format.unwrap_or(Format::Csv);
            if format == Format::Csv {
                writeln!(out, "{}", harness::CSV_HEADER)?;
            }
            let mut rows = Vec::new();
            for &n in lengths {
                let row = harness::tabulate_length(n, *q, &registry, rule, budget)?;
                match format {
                    Format::Csv => writeln!(out, "{}", row.csv_record())?,
                    Format::Text => write_row_text(out, &row)?,
                    Format::Json => {}
                }
                out.flush()?;
                rows.push(row);
            }
            if format == Format::Json {
                writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
            }
        }
        Command::Decode { spec, samples } => {
            let (tokens, word) = split_word(spec)?;
            let code = build_code(&tokens)?;
            let reg = prepare_registry(cli, &code, err)?;
            let ctx = DecoderContext::best(&code, &reg)?;
            match word {
                Some(w) => {
                    let w = parse_word(&w, &code)?;
                    let res = ctx.decode(&w)?;
                    emit(cli, out, &res, |o, r| {
                        writeln!(o, "status: {}", if r.is_ok() { "ok" } else { "decoding-failure" })?;
                        if let Some(reason) = &r.reason {
                            writeln!(o, "reason: {reason}")?;
                        }
                        writeln!(o, "positions: {}", join(&r.positions))?;
                        writeln!(o, "values: {}", join(&r.values))?;
                        if let Some(c) = &r.corrected {
                            writeln!(o, "corrected: {}", join(c))?;
                        }
                        Ok(())
                    })?;
                    return Ok(if res.is_ok() { EXIT_OK } else { EXIT_DECODING_FAILURE });
                }
                None => {
                    let sel = if *samples == 0 {
                        Codewords::All { budget }
                    } else {
                        Codewords::Sample { count: *samples, seed: cli.seed }
                    };
                    let rep = harness::exhaustive_decode_test(&ctx, sel, None)?;
                    emit(cli, out, &rep, |o, r| {
                        writeln!(
                            o,
                            "decoder {} b={} z1={} d_f={} radius={}",
                            ctx.candidate().label,
                            ctx.b(),
                            ctx.z1(),
                            ctx.d_f(),
                            r.max_weight
                        )?;
                        writeln!(o, "codewords: {}  patterns: {}  trials: {}", r.codewords, r.patterns, r.trials)?;
                        writeln!(o, "failures: {}  elapsed: {:.3}s", r.failures, r.elapsed.as_secs_f64())
                    })?;
                    return Ok(if rep.failures == 0 { EXIT_OK } else { EXIT_DECODING_FAILURE });
                }
            }
        }
        Command::Distance { spec } => {
            let code = build_code(spec)?;
            let d = harness::true_distance(&code, budget)?;
            emit(cli, out, &d, |o, d| match d {
                harness::Distance::Exact { d } => writeln!(o, "d = {d}"),
                harness::Distance::OverBudget { codewords } => match codewords {
                    Some(c) => writeln!(o, "over budget: {c} codewords > {budget}"),
                    None => writeln!(o, "over budget: q^k overflows"),
                },
            })?;
        }
    }
    Ok(EXIT_OK)
}

fn emit<T: Serialize>(
    cli: &Cli,
    out: &mut dyn Write,
    value: &T,
    text: impl FnOnce(&mut dyn Write, &T) -> std::io::Result<()>,
) -> Result<(), CliError> {
    match cli.format.unwrap_or(Format::Text) {
        Format::Text => text(out, value)?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(value)?)?,
        Format::Csv => return Err(CliError::Invalid("`--format csv` is only available for tabulate".into())),
    }
    Ok(())
}

fn build_code(tokens: &[String]) -> Result<CyclicCode, CliError> {
    let spec = CodeSpec::from_tokens(tokens.iter().map(String::as_str))?;
    Ok(CyclicCode::from_spec(&spec)?)
}

fn split_word(tokens: &[String]) -> Result<(Vec<String>, Option<String>), CliError> {
    let mut rest = Vec::new();
    let mut word = None;
    for t in tokens {
        match t.strip_prefix("word=") {
            Some(w) if word.is_none() => word = Some(w.to_string()),
            Some(_) => return Err(CliError::Invalid(format!("repeated word in `{t}`"))),
            None => rest.push(t.clone()),
        }
    }
    Ok((rest, word))
}

fn parse_word(w: &str, code: &CyclicCode) -> Result<Vec<u64>, CliError> {
    let q = code.q();
    let prime = code.base().degree() == 1;
    let syms = w
        .split(',')
        .map(|s| {
            let bad = || CliError::Invalid(format!("malformed symbol `{s}` in word"));
            let v = s.trim().parse::<i64>().map_err(|_| bad())?;
            // extension alphabets take element indices, not residues
            if !prime && !(0..q as i64).contains(&v) {
                return Err(bad());
            }
            Ok(v.rem_euclid(q as i64) as u64)
        })
        .collect::<Result<Vec<_>, _>>()?;
    if syms.len() as u64 != code.n() {
        return Err(CliError::Invalid(format!("word has {} symbols, expected n = {}", syms.len(), code.n())));
    }
    Ok(syms)
}

fn load_registry(cli: &Cli, err: &mut dyn Write) -> Result<Registry, CliError> {
    let Some(path) = &cli.registry else {
        return Ok(match &cli.command {
            Command::Tabulate { .. } => Registry::tabulation(),
            _ => Registry::builtin(),
        });
    };
    let text =
        std::fs::read_to_string(path).map_err(|source| CliError::Registry { path: path.clone(), source })?;
    let (reg, rejected) = Registry::parse(&text);
    for r in rejected {
        writeln!(err, "warning: {}: {r}", path.display())?;
    }
    Ok(reg)
}

fn prepare_registry(cli: &Cli, code: &CyclicCode, err: &mut dyn Write) -> Result<PreparedRegistry, CliError> {
    Ok(load_registry(cli, err)?.prepare(code.family())?)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn write_row_text(out: &mut dyn Write, row: &harness::TableRow) -> std::io::Result<()> {
    let star = if row.symmetric_reversible { "*" } else { "" };
    let cell = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
    let d = row.distance;
    write!(
        out,
        "{:>4}{:<1} {:>6} {:>6} {:>6} {:>6}",
        row.n,
        star,
        row.codes,
        cell(d.map(|c| c.bch_lt_d)),
        row.df_gt_bch,
        cell(d.map(|c| c.df_lt_d))
    )?;
    if row.skipped() {
        write!(out, "  (distances over {}/{} codes)", row.feasible, row.nontrivial)?;
    }
    writeln!(out)
}

#[derive(Debug, Serialize)]
struct AnalyzeReport {
    spec: String,
    q: u64,
    n: u64,
    k: u64,
    /// Degree of the splitting field of `x^n - 1`.
    s: u32,
    cosets: Vec<Vec<u64>>,
    defining_set: Vec<u64>,
    /// Coefficients as GF(q) indices, constant term first.
    generator: Vec<u64>,
    #[serde(skip)]
    generator_text: String,
    reversibility: Reversibility,
}

impl AnalyzeReport {
    fn new(code: &CyclicCode) -> Self {
        let fam = code.family();
        let d = code.defining_set();
        let cosets = fam
            .cosets()
            .iter()
            .filter(|c| d.contains(c.rep as i64))
            .map(|c| c.members.clone())
            .collect();
        AnalyzeReport {
            spec: code.spec().to_string(),
            q: code.q(),
            n: code.n(),
            k: code.k(),
            s: fam.s(),
            cosets,
            defining_set: d.residues(),
            generator: code.generator().indices(),
            generator_text: code.generator().pretty(),
            reversibility: code.classify_reversible(),
        }
    }

    fn write_text(&self, o: &mut dyn Write) -> std::io::Result<()> {
        writeln!(o, "code: {}", self.spec)?;
        writeln!(o, "n = {}, k = {}, q = {}, s = {}", self.n, self.k, self.q, self.s)?;
        for c in &self.cosets {
            writeln!(o, "coset: {{{}}}", join(c))?;
        }
        writeln!(o, "defining set: {{{}}}", join(&self.defining_set))?;
        writeln!(o, "generator: {}", self.generator_text)?;
        let star = if self.reversibility == Reversibility::SymmetricReversibleLength { " *" } else { "" };
        writeln!(o, "reversibility: {}{star}", self.reversibility)
    }
}
