use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use derlie_core::classify::{build_solv2_instance, canonical_nilpotent, classify_rank1};
use derlie_core::corpus::{self, Params};
use derlie_core::{analyze, nilbasis_chain, LieAlgebra};

use crate::datafile::load_solv2;
use crate::error::{CliError, Result};
use crate::parse::parse_session;
use crate::report::{canonical_witness, chain_witness, solv2_witness, Batch, ReportDoc};
use crate::session::Session;

/// Fuzz seeds included in whole-corpus verification by default.
pub const DEFAULT_FUZZ_SEEDS: u64 = 10;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "derlie", version, about = "Exact analysis of Lie algebras of rational vector fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Seed for random corpus draws (first seed for verify-all).
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure report for a session algebra.
    Analyze { file: PathBuf, algebra: String },
    /// Adapted basis and ideal chain of a nilpotent session algebra.
    Chain { file: PathBuf, algebra: String },
    /// Canonical form of a nilpotent algebra of rank 1 or 2.
    Canonical { file: PathBuf, algebra: String },
    /// Canonical form of a solvable algebra of rank 1.
    Classify1 { file: PathBuf, algebra: String },
    /// Report for a built-in corpus algebra; parameters as `key=value`.
    Corpus { name: String, params: Vec<String> },
    /// Build and verify a solvable rank-two instance from a TOML data file.
    Solv2 {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        kind: u8,
        file: PathBuf,
    },
    /// Analyze every session algebra and the built-in corpus.
    VerifyAll {
        file: Option<PathBuf>,
        /// Number of fuzz seeds drawn for the built-in corpus.
        #[arg(long, default_value_t = DEFAULT_FUZZ_SEEDS)]
        fuzz_seeds: u64,
    },
    /// Parse a session file and print it in canonical form.
    Print { file: PathBuf },
    /// Print the built-in corpus as a session file.
    CorpusSession {
        #[arg(long, default_value_t = DEFAULT_FUZZ_SEEDS)]
        fuzz_seeds: u64,
    },
}

/// Rendered output and the process exit status it implies.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub exit_code: i32,
}

impl Output {
    fn report(doc: &ReportDoc, format: Format) -> Self {
        Output {
            text: match format {
                Format::Text => doc.to_text(),
                Format::Structured => doc.to_json(),
            },
            exit_code: if doc.all_pass() { 0 } else { 3 },
        }
    }

    fn plain(text: String) -> Self {
        Output { text, exit_code: 0 }
    }
}

pub fn load_session(path: &Path) -> Result<Session> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_session(&text)
}

fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn parse_params(params: &[String], seed: Option<u64>) -> Result<Params> {
    let mut out = Params::new();
    for p in params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("parameter `{p}` is not of the form key=value")))?;
        let v: u64 = v
            .parse()
            .map_err(|_| CliError::Usage(format!("parameter `{k}` needs a non-negative integer, got `{v}`")))?;
        out.insert(k.to_string(), v);
    }
    if let Some(s) = seed {
        out.insert("seed".into(), s);
    }
    Ok(out)
}

fn corpus_label(name: &str, params: &Params) -> String {
    if params.is_empty() {
        return name.to_string();
    }
    let args: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{name}({})", args.join(","))
}

/// Report for `l`, with a chain certificate attached when it is nilpotent.
fn full_report(name: &str, vars: &[String], l: &LieAlgebra) -> Result<ReportDoc> {
    let mut doc = ReportDoc::new(name, vars, l, &analyze(l));
    if l.is_nilpotent() {
        doc.witnesses.push(chain_witness(&nilbasis_chain(l)?, vars));
    }
    Ok(doc)
}

/// Built-in corpus as one session over `x1, x2, x3`.
pub fn corpus_session(fuzz_seeds: u64) -> Result<Session> {
    let mut session = Session::with_variables(default_names(3));
    for (label, l) in corpus::standard_corpus(0..fuzz_seeds) {
        let names = default_names(l.nvars());
        let mut members = Vec::new();
        for (i, d) in l.basis().basis().iter().enumerate() {
            let member = format!("{label}_b{}", i + 1);
            session.define_text(&member, &d.display(&names).to_string())?;
            members.push(member);
        }
        session.add_algebra(&label, members)?;
    }
    Ok(session)
}

pub fn run(cli: &Cli) -> Result<Output> {
    let format = cli.format;
    match &cli.command {
        Command::Analyze { file, algebra } => {
            let s = load_session(file)?;
            let l = s.algebra(algebra)?;
            let doc = ReportDoc::new(algebra, s.variables(), &l, &analyze(&l));
            Ok(Output::report(&doc, format))
        }
        Command::Chain { file, algebra } => {
            let s = load_session(file)?;
            let l = s.algebra(algebra)?;
            let cert = nilbasis_chain(&l)?;
            let mut doc = ReportDoc::new(algebra, s.variables(), &l, &analyze(&l));
            doc.witnesses.push(chain_witness(&cert, s.variables()));
            Ok(Output::report(&doc, format))
        }
        Command::Canonical { file, algebra } | Command::Classify1 { file, algebra } => {
            let s = load_session(file)?;
            let l = s.algebra(algebra)?;
            let form = match cli.command {
                Command::Canonical { .. } => canonical_nilpotent(&l)?,
                _ => classify_rank1(&l)?,
            };
            let mut doc = ReportDoc::new(algebra, s.variables(), &l, &analyze(&l));
            doc.witnesses.push(canonical_witness(&form, s.variables()));
            Ok(Output::report(&doc, format))
        }
        Command::Corpus { name, params } => {
            let params = parse_params(params, cli.seed)?;
            let l = corpus::generate(name, &params)?;
            let doc = full_report(&corpus_label(name, &params), &default_names(l.nvars()), &l)?;
            Ok(Output::report(&doc, format))
        }
        Command::Solv2 { kind, file } => {
            let text = fs::read_to_string(file).map_err(|source| CliError::Io {
                path: file.display().to_string(),
                source,
            })?;
            let (vars, data) = load_solv2(&text)?;
            let inst = build_solv2_instance(*kind, &data)?;
            let name = format!("solv2-type-{kind}");
            let mut doc = ReportDoc::new(&name, &vars, &inst.algebra, &inst.report);
            doc.witnesses.push(solv2_witness(&inst, &vars));
            Ok(Output::report(&doc, format))
        }
        Command::VerifyAll { file, fuzz_seeds } => {
            let mut reports = Vec::new();
            if let Some(file) = file {
                let s = load_session(file)?;
                for name in s.algebras().keys() {
                    reports.push(full_report(name, s.variables(), &s.algebra(name)?)?);
                }
            }
            let first = cli.seed.unwrap_or(0);
            for (label, l) in corpus::standard_corpus(first..first + fuzz_seeds) {
                reports.push(full_report(&label, &default_names(l.nvars()), &l)?);
            }
            let batch = Batch::new(reports);
            Ok(Output {
                text: match format {
                    Format::Text => batch.to_text(),
                    Format::Structured => batch.to_json(),
                },
                exit_code: if batch.all_pass { 0 } else { 3 },
            })
        }
        Command::Print { file } => Ok(Output::plain(load_session(file)?.to_text())),
        Command::CorpusSession { fuzz_seeds } => Ok(Output::plain(corpus_session(*fuzz_seeds)?.to_text())),
    }
}
