//! The `lmu` command line.
//!
//! Exit status: 0 on success or a confirmed probe, 1 on a type error, parse
//! error, refutation or property failure, 2 when a fuel or node cap stopped
//! the run, 64 on usage errors.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::behavior::{self, Law, ProbeOptions, Verdict, DEFAULT_MAX_M, DEFAULT_PROBE_CAP};
use crate::metatheory::{self, enumerate_with, EnumConfig, PropertyReport, DEFAULT_FORMULA_SIZE, DEFAULT_MAX_SIZE};
use crate::reduction::{normalize, reduction_graph, ReductionError, DEFAULT_FUEL, DEFAULT_NODE_CAP};
use crate::syntax::{parse_formula, parse_term, print_term, substitute, Term};
use crate::typing::{infer, Context, NameContext};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INCOMPLETE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "lmu", version, about = "Parse, type, reduce and probe λμ-terms with pairs and injections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the term in concrete syntax
    Parse(Input),
    /// Infer the type of a closed term
    Check {
        #[command(flatten)]
        input: Input,
        /// Print the whole derivation tree
        #[arg(long)]
        derivation: bool,
        /// Print the derivation as JSON
        #[arg(long)]
        json: bool,
    },
    /// Reduce to normal form, leftmost-outermost
    Reduce {
        #[command(flatten)]
        input: Input,
        /// Also print each step as a JSON line
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
    },
    /// Build the full reduction graph
    Graph {
        #[command(flatten)]
        input: Input,
        /// Graphviz output
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        cap: usize,
    },
    /// Run a behavior probe on a closed term
    Probe {
        #[command(flatten)]
        input: Input,
        /// efq, peirce or lem
        #[arg(long)]
        law: Law,
        /// Number of fresh arguments, or length of each fresh sequence
        #[arg(long, default_value_t = 1)]
        args: usize,
        #[arg(long, default_value_t = DEFAULT_PROBE_CAP)]
        cap: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_M)]
        max_m: usize,
        /// Offset for fresh-name numbering
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check subject reduction, confluence and strong normalization on the
    /// enumerated corpus
    Suite {
        #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
        /// Bound on the size of cut formulas
        #[arg(long, default_value_t = DEFAULT_FORMULA_SIZE)]
        formula_size: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        cap: usize,
        /// Accepted for symmetry with `probe`; the suite is deterministic
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// List the enumerated closed typed terms
    Corpus {
        #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
        #[arg(long, default_value_t = DEFAULT_FORMULA_SIZE)]
        formula_size: usize,
        /// Only terms of this type
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Term source, or one of T, C1, C2, W, Wprime, Tmu
    #[arg(long, conflicts_with = "file")]
    pub term: Option<String>,
    /// File holding the term
    pub file: Option<PathBuf>,
    /// Free λ-variables or μ-names the term may contain
    #[arg(long, value_delimiter = ',')]
    pub open: Vec<String>,
}

enum Failure {
    Usage(String),
    Error(String),
}

impl Input {
    fn source(&self) -> Result<String, Failure> {
        match (&self.term, &self.file) {
            (Some(t), _) => Ok(t.clone()),
            (None, Some(p)) => {
                std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))
            }
            (None, None) => Err(Failure::Usage("no input: give --term TEXT or a FILE".into())),
        }
    }

    /// Parses the input, replaces free canonical names by their terms, and
    /// rejects free names not listed in `--open`.
    fn load(&self) -> Result<Term, Failure> {
        let src = self.source()?;
        let open: BTreeSet<&str> = self.open.iter().map(String::as_str).collect();
        if let Some(c) = behavior::lookup(src.trim()) {
            if !open.contains(c.name) {
                return Ok(c.term);
            }
        }
        let mut t = parse_term(&src).map_err(|e| Failure::Error(format!("parse error: {e}")))?;
        for c in behavior::canonical_terms() {
            if !open.contains(c.name) && t.has_free_lambda(c.name) {
                t = substitute(&t, c.name, &c.term);
            }
        }
        let fv = t.free_variables();
        let stray: Vec<&String> = fv.lambda.iter().chain(&fv.mu).filter(|x| !open.contains(x.as_str())).collect();
        if !stray.is_empty() {
            let names: Vec<&str> = stray.iter().map(|s| s.as_str()).collect();
            return Err(Failure::Error(format!("free names {} (declare them with --open)", names.join(", "))));
        }
        Ok(t)
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Error(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn emit(out: &mut dyn Write, text: impl AsRef<str>) -> Result<(), Failure> {
    writeln!(out, "{}", text.as_ref()).map_err(|e| Failure::Error(e.to_string()))
}

fn closed_context() -> (Context, NameContext) {
    (Context::new(), NameContext::new())
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Parse(input) => {
            let t = input.load()?;
            emit(out, print_term(&t))?;
            Ok(EXIT_OK)
        }
        Command::Check { input, derivation, json } => {
            let t = input.load()?;
            let (gamma, delta) = closed_context();
            let d = infer(&gamma, &delta, &t).map_err(|e| Failure::Error(format!("type error: {e}")))?;
            if json {
                emit(out, d.to_json().to_string())?;
            } else if derivation {
                write!(out, "{d}").map_err(|e| Failure::Error(e.to_string()))?;
            } else {
                emit(out, d.formula().to_string())?;
            }
            Ok(EXIT_OK)
        }
        Command::Reduce { input, trace, fuel } => {
            let t = input.load()?;
            match normalize(&t, fuel) {
                Ok((nf, tr)) => {
                    if trace {
                        write!(out, "{}", tr.to_json_lines()).map_err(|e| Failure::Error(e.to_string()))?;
                    }
                    emit(out, print_term(&nf))?;
                    Ok(EXIT_OK)
                }
                Err(ReductionError::FuelExhausted(tr)) => {
                    if trace {
                        write!(out, "{}", tr.to_json_lines()).map_err(|e| Failure::Error(e.to_string()))?;
                    }
                    emit(out, format!("fuel exhausted after {} steps; last term: {}", tr.len(), print_term(tr.last())))?;
                    Ok(EXIT_INCOMPLETE)
                }
                Err(e) => Err(Failure::Error(e.to_string())),
            }
        }
        Command::Graph { input, dot, json, cap } => {
            let t = input.load()?;
            let (g, code) = match reduction_graph(&t, cap) {
                Ok(g) => (g, EXIT_OK),
                Err(e) => (*e.partial, EXIT_INCOMPLETE),
            };
            if dot {
                write!(out, "{}", g.to_dot()).map_err(|e| Failure::Error(e.to_string()))?;
            } else if json {
                emit(out, g.to_json().to_string())?;
            } else {
                emit(out, format!("nodes: {}", g.len()))?;
                emit(out, format!("edges: {}", g.edges.len()))?;
                emit(out, format!("complete: {}", g.complete))?;
                match g.longest_path() {
                    Some(n) if g.complete => emit(out, format!("longest reduction: {n}"))?,
                    Some(_) => {}
                    None => emit(out, "cyclic: true")?,
                }
                for s in g.sinks() {
                    emit(out, format!("normal form: {}", print_term(&g.nodes[s])))?;
                }
            }
            Ok(code)
        }
        Command::Probe { input, law, args, cap, max_m, seed, json } => {
            if !input.open.is_empty() {
                return Err(Failure::Usage("probe subjects must be closed; --open is not accepted".into()));
            }
            let subject = input.load()?;
            let opts = ProbeOptions { args, node_cap: cap, max_m, seed, tail: None };
            let report = behavior::probe(law, &subject, &opts).map_err(|e| Failure::Error(e.to_string()))?;
            if json {
                emit(out, report.to_json().to_string())?;
            } else {
                write!(out, "{report}").map_err(|e| Failure::Error(e.to_string()))?;
            }
            Ok(match report.verdict {
                Verdict::Confirmed => EXIT_OK,
                Verdict::Refuted { .. } => EXIT_FAILURE,
                Verdict::Inconclusive { .. } => EXIT_INCOMPLETE,
            })
        }
        Command::Suite { max_size, formula_size, cap, seed: _, json } => {
            let corpus = enumerate_with(&EnumConfig::new(max_size).with_formula_size(formula_size), None);
            let mut reports = metatheory::check_all(&corpus, cap).to_vec();
            let control = metatheory::strong_normalization_of_terms(&metatheory::negative_controls(), cap);
            let control_flagged = !control.failures.is_empty();
            if json {
                let body = json!({
                    "corpus": corpus.len(),
                    "reports": reports.iter().map(PropertyReport::to_json).collect::<Vec<_>>(),
                    "negative_control": control.to_json(),
                });
                emit(out, body.to_string())?;
            } else {
                emit(out, format!("corpus: {} terms up to size {max_size}", corpus.len()))?;
                for r in &reports {
                    emit(
                        out,
                        format!(
                            "{}: checked {}, failures {}, incomplete {}",
                            serde_json::to_value(r.property).expect("property serializes").as_str().unwrap_or_default(),
                            r.checked,
                            r.failures.len(),
                            r.incomplete.len()
                        ),
                    )?;
                    for f in &r.failures {
                        emit(out, format!("  {}: {}", f.term, f.evidence))?;
                    }
                }
                if let Some(sn) = reports.get(2) {
                    emit(out, format!("longest reduction: {}", sn.longest_paths.iter().max().copied().unwrap_or(0)))?;
                }
                emit(out, format!("negative control flagged: {control_flagged}"))?;
            }
            reports.push(control.clone());
            let failed = reports[..3].iter().any(|r| !r.passed()) || !control_flagged;
            let incomplete = reports[..3].iter().any(|r| !r.incomplete.is_empty());
            Ok(if failed {
                EXIT_FAILURE
            } else if incomplete {
                EXIT_INCOMPLETE
            } else {
                EXIT_OK
            })
        }
        Command::Corpus { max_size, formula_size, target, json } => {
            let target = match target {
                Some(src) => Some(parse_formula(&src).map_err(|e| Failure::Error(format!("parse error: {e}")))?),
                None => None,
            };
            let corpus = enumerate_with(&EnumConfig::new(max_size).with_formula_size(formula_size), target.as_ref());
            if json {
                emit(out, corpus.to_json().to_string())?;
            } else {
                for e in &corpus.entries {
                    emit(out, format!("{}\t{}\t{}", e.term.size(), e.formula, print_term(&e.term)))?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("lmu").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn cli_examples() {
        assert_eq!(run_str(&["check", "--term", "T"]), (0, "_|_ -> P\n".into(), String::new()));
        assert_eq!(run_str(&["reduce", "--term", "((T t) u)", "--open", "t,u"]).1, "mu a. t\n");
        let (code, out, _) = run_str(&["probe", "--law", "peirce", "--term", "C1"]);
        assert_eq!(code, 0);
        assert!(out.contains("verdict: confirmed") && out.contains("m: 1"), "{out}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["check"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["check", "--term", "(x"]).0, EXIT_FAILURE);
        assert_eq!(run_str(&["check", "--term", "\\x:P. (x x)"]).0, EXIT_FAILURE);
        assert_eq!(run_str(&["reduce", "--term", "(t u)"]).0, EXIT_FAILURE);
        assert_eq!(run_str(&["probe", "--law", "efq", "--term", "C1"]).0, EXIT_FAILURE);
        assert_eq!(run_str(&["reduce", "--term", "(\\x. (x x) \\x. (x x))", "--fuel", "10"]).0, EXIT_INCOMPLETE);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
    }
}
