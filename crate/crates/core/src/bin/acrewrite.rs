//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on a domain failure (reported on stderr as a
//! JSON object with a machine-readable `code`), 2 on a usage error.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use acrewrite::composition::{compose, enumerate_rule_overlaps};
use acrewrite::condition::simplify;
use acrewrite::io::{self, Document, IoError};
use acrewrite::laws::{run_suite, SuiteConfig};
use acrewrite::rule::{apply, enumerate_matches, trans, Semantics};
use acrewrite::shift::shift;

#[derive(Parser)]
#[command(name = "acrewrite", version, about = "DPO/SqPO graph rewriting with nested application conditions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sem {
    Dpo,
    Sqpo,
}

impl From<Sem> for Semantics {
    fn from(s: Sem) -> Self {
        match s {
            Sem::Dpo => Semantics::Dpo,
            Sem::Sqpo => Semantics::Sqpo,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// List the admissible matches of a rule in a host graph, one per line.
    Matches {
        rule: PathBuf,
        host: PathBuf,
        #[arg(long, value_enum, default_value = "dpo")]
        semantics: Sem,
    },
    /// Apply a rule once and write the resulting graph.
    Apply {
        rule: PathBuf,
        host: PathBuf,
        #[arg(long, value_enum, default_value = "dpo")]
        semantics: Sem,
        /// Which admissible match to use, in enumeration order.
        #[arg(long, default_value_t = 0)]
        match_index: usize,
        /// Result graph file (stdout when absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the rewriting trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Also write the result in Graphviz format here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compose R2 after R1 along every rule overlap (or a selected one).
    Compose {
        r2: PathBuf,
        r1: PathBuf,
        #[arg(long, value_enum, default_value = "dpo")]
        semantics: Sem,
        #[arg(long)]
        overlap_index: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Shift a condition along a monomorphism.
    Shift {
        condition: PathBuf,
        #[arg(long)]
        along: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Transport a condition over a rule's output graph to its input graph.
    Trans {
        rule: PathBuf,
        condition: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Simplify a condition.
    Simplify {
        condition: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the law suite; one report record per line.
    Check {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Corpus hosts: every graph with at most this many vertices and edges.
        #[arg(long, default_value_t = 3)]
        corpus_size: usize,
        /// Multiply every instance count by this factor.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Only run laws whose name contains this string (repeatable).
        #[arg(long)]
        only: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// A failure with its machine-readable code and exit status.
struct Failure {
    code: &'static str,
    message: String,
    status: u8,
}

impl Failure {
    fn domain(code: &'static str, message: impl Into<String>) -> Self {
        Failure { code, message: message.into(), status: 1 }
    }
}

impl From<acrewrite::Error> for Failure {
    fn from(e: acrewrite::Error) -> Self {
        Failure::domain(e.code(), e.to_string())
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        let status = if matches!(e, IoError::WrongKind { .. }) { 2 } else { 1 };
        Failure { code: e.code(), message: e.to_string(), status }
    }
}

type Outcome = Result<(), Failure>;

fn emit(text: &str, path: Option<&Path>) -> Outcome {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|source| IoError::Io { path: p.display().to_string(), source }.into()),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Failure::domain("Io", e.to_string()))
        }
    }
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Matches { rule, host, semantics } => {
            let r = io::load(rule)?.into_rulewc()?;
            let x = io::load(host)?.into_graph()?;
            let mut text = String::new();
            for m in enumerate_matches(&r, &x, semantics.into())? {
                text += &io::serialize_line(&Document::Morphism(m));
                text.push('\n');
            }
            emit(&text, None)
        }
        Cmd::Apply { rule, host, semantics, match_index, output, trace, dot } => {
            let sem = semantics.into();
            let r = io::load(rule)?.into_rulewc()?;
            let x = io::load(host)?.into_graph()?;
            let ms = enumerate_matches(&r, &x, sem)?;
            if ms.is_empty() {
                return Err(Failure::domain("NoAdmissibleMatch", format!("the rule has no {sem}-admissible match")));
            }
            let m = ms.get(match_index).ok_or_else(|| {
                Failure::domain("MatchIndexOutOfRange", format!("{} admissible matches, index {match_index}", ms.len()))
            })?;
            let step = apply(&r, &x, m, sem)?;
            if let Some(t) = trace {
                io::save(&Document::Trace(io::trace_doc(&step)), t)?;
            }
            if let Some(d) = dot {
                emit(&io::to_dot(&step.result, "result"), Some(&d))?;
            }
            emit(&io::serialize(&Document::Graph((*step.result).clone())), output.as_deref())
        }
        Cmd::Compose { r2, r1, semantics, overlap_index, output } => {
            let sem = semantics.into();
            let r2 = io::load(r2)?.into_rulewc()?;
            let r1 = io::load(r1)?.into_rulewc()?;
            let overlaps = enumerate_rule_overlaps(&r2, &r1)?;
            match overlap_index {
                Some(k) => {
                    let mu = overlaps.get(k).ok_or_else(|| {
                        Failure::domain("OverlapIndexOutOfRange", format!("{} overlaps, index {k}", overlaps.len()))
                    })?;
                    let d = compose(&r2, mu, &r1, sem)?.ok_or_else(|| {
                        Failure::domain("UnsatisfiableComposite", "the composite condition is false")
                    })?;
                    emit(&io::serialize(&Document::RuleWC(d.composite)), output.as_deref())
                }
                None => {
                    let mut text = String::new();
                    for mu in &overlaps {
                        if let Some(d) = compose(&r2, mu, &r1, sem)? {
                            text += &io::serialize_line(&Document::RuleWC(d.composite));
                            text.push('\n');
                        }
                    }
                    emit(&text, output.as_deref())
                }
            }
        }
        Cmd::Shift { condition, along, output } => {
            let c = io::load(condition)?.into_condition()?;
            let p = io::load(along)?.into_morphism()?;
            if **p.dom() != **c.root() {
                return Err(acrewrite::Error::RootMismatch.into());
            }
            let p = p.with_dom(c.root().clone());
            emit(&io::serialize(&Document::Condition(shift(&p, &c)?)), output.as_deref())
        }
        Cmd::Trans { rule, condition, output } => {
            let r = io::load(rule)?.into_rulewc()?.rule;
            let c = io::load(condition)?.into_condition()?;
            if **c.root() != **r.output() {
                return Err(acrewrite::Error::RootMismatch.into());
            }
            emit(&io::serialize(&Document::Condition(trans(&r, &c)?)), output.as_deref())
        }
        Cmd::Simplify { condition, output } => {
            let c = io::load(condition)?.into_condition()?;
            emit(&io::serialize(&Document::Condition(simplify(&c))), output.as_deref())
        }
        Cmd::Check { seed, corpus_size, scale, only, output } => {
            if !(scale.is_finite() && scale > 0.0) {
                return Err(Failure { code: "ConfigInvalid", message: "--scale must be positive".into(), status: 2 });
            }
            let mut cfg = SuiteConfig { seed, only, ..Default::default() };
            cfg.counts = cfg.counts.scaled(scale);
            cfg.corpus.max_vertices = corpus_size;
            cfg.corpus.max_edges = corpus_size;
            let reports = run_suite(&cfg)?;
            let mut text = String::new();
            for r in &reports {
                text += &serde_json::to_string(r).expect("reports serialize");
                text.push('\n');
            }
            emit(&text, output.as_deref())?;
            let failing: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.law.as_str()).collect();
            if failing.is_empty() {
                Ok(())
            } else {
                Err(Failure::domain("LawFailed", failing.join(", ")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(status);
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let record = serde_json::json!({ "code": f.code, "message": f.message });
            eprintln!("{record}");
            ExitCode::from(f.status)
        }
    }
}
