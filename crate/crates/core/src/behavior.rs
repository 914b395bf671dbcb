//! μ̄-spines and operational probes for closed terms of type `_|_ -> P`,
//! `(~P -> P) -> P` and `~P \/ P`.
//!
//! A probe applies the subject to fresh, inert λ-variables and searches the
//! reduction graph breadth-first for a μ̄-spine over an expected leaf. The
//! staged probes extract the intermediate terms θ from the leaves they find
//! and feed them fresh arguments in turn.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::reduction::{explore, Scope, Trace};
use crate::syntax::{alpha_equal, alpha_equal_eterm, is_keyword, parse_term, print_term, Branch, ESequence, ETerm, Formula, Side, Term};
use crate::typing::{infer, Context, NameContext, TypeError};

pub const DEFAULT_PROBE_CAP: usize = 5_000;
pub const DEFAULT_MAX_M: usize = 4;

/// One layer of a μ̄-spine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Wrapper {
    Mu(String, Option<Formula>),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpineWitness {
    /// Outermost first.
    pub wrappers: Vec<Wrapper>,
    pub leaf: Term,
}

impl SpineWitness {
    pub fn rebuild(&self) -> Term {
        self.wrappers.iter().rev().fold(self.leaf.clone(), |t, w| match w {
            Wrapper::Mu(a, ann) => Term::mu(a.clone(), ann.clone(), t),
            Wrapper::Named(a) => Term::named(a.clone(), t),
        })
    }

    pub fn depth(&self) -> usize {
        self.wrappers.len()
    }
}

impl fmt::Display for SpineWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.wrappers {
            match w {
                Wrapper::Mu(a, _) => write!(f, "mu {a}. ")?,
                Wrapper::Named(a) => write!(f, "[{a}] ")?,
            }
        }
        f.write_str(&print_term(&self.leaf))
    }
}

/// Leaf shapes. `AnyOf` reports which alternative matched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeafPattern {
    ExactLeaf(Term),
    /// `((head slot) tail)`
    HeadApplied { head: String, tail: ESequence },
    /// `(probe slot)`
    ProbeApplied { probe: String },
    /// `(slot tail)`
    AppliedTo { tail: ESequence },
    AnyOf(Vec<LeafPattern>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafMatch {
    pub alternative: usize,
    pub slot: Option<Term>,
}

fn strip_tail<'t>(t: &'t Term, tail: &ESequence) -> Option<&'t Term> {
    let mut cur = t;
    for e in tail.0.iter().rev() {
        match cur {
            Term::App(f, got) if alpha_equal_eterm(got, e) => cur = f,
            _ => return None,
        }
    }
    Some(cur)
}

fn applied_var<'t>(t: &'t Term, head: &str) -> Option<&'t Term> {
    match t {
        Term::App(f, e) => match (&**f, &**e) {
            (Term::Var(x), ETerm::Arg(slot)) if x == head => Some(slot),
            _ => None,
        },
        _ => None,
    }
}

impl LeafPattern {
    pub fn matches(&self, t: &Term) -> Option<LeafMatch> {
        let simple = |slot: Option<Term>| Some(LeafMatch { alternative: 0, slot });
        match self {
            LeafPattern::ExactLeaf(leaf) => alpha_equal(t, leaf).then_some(LeafMatch { alternative: 0, slot: None }),
            LeafPattern::HeadApplied { head, tail } => {
                let inner = strip_tail(t, tail)?;
                simple(Some(applied_var(inner, head)?.clone()))
            }
            LeafPattern::ProbeApplied { probe } => simple(Some(applied_var(t, probe)?.clone())),
            LeafPattern::AppliedTo { tail } => simple(Some(strip_tail(t, tail)?.clone())),
            LeafPattern::AnyOf(alts) => alts.iter().enumerate().find_map(|(i, p)| {
                p.matches(t).map(|m| LeafMatch { alternative: i, slot: m.slot })
            }),
        }
    }
}

/// Peels μ-binders and named terms off `s` until the rest matches `pattern`.
pub fn match_spine(s: &Term, pattern: &LeafPattern) -> Option<(SpineWitness, LeafMatch)> {
    let mut wrappers = Vec::new();
    let mut cur = s;
    loop {
        if let Some(m) = pattern.matches(cur) {
            return Some((SpineWitness { wrappers, leaf: cur.clone() }, m));
        }
        match cur {
            Term::Mu(a, ann, body) => {
                wrappers.push(Wrapper::Mu(a.clone(), ann.clone()));
                cur = body;
            }
            Term::Named(a, body) => {
                wrappers.push(Wrapper::Named(a.clone()));
                cur = body;
            }
            _ => return None,
        }
    }
}

/// Whether `s` is in M_leaf.
pub fn is_mu_spine(s: &Term, leaf: &Term) -> Option<SpineWitness> {
    match_spine(s, &LeafPattern::ExactLeaf(leaf.clone())).map(|(w, _)| w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpineFound {
    pub witness: SpineWitness,
    pub matched: LeafMatch,
    pub trace: Trace,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchFailure {
    #[error("no matching reduct in the complete reduction graph ({0} nodes)")]
    NotFound(usize),
    #[error("node cap {0} reached")]
    CapExceeded(usize),
}

/// Breadth-first search for the first reduct of `t` that is a μ̄-spine over
/// a leaf matching `pattern`.
pub fn find_spine_reduct(t: &Term, pattern: &LeafPattern, node_cap: usize) -> Result<SpineFound, SearchFailure> {
    find_spine_reduct_in(&Scope::default(), t, pattern, node_cap)
}

pub fn find_spine_reduct_in(scope: &Scope, t: &Term, pattern: &LeafPattern, node_cap: usize) -> Result<SpineFound, SearchFailure> {
    let (g, hit) = explore(scope, t, node_cap, |_, node| match_spine(node, pattern).is_some());
    match hit {
        Some(i) => {
            let (witness, matched) = match_spine(&g.nodes[i], pattern).expect("visitor matched this node");
            Ok(SpineFound { witness, matched, trace: g.trace_to(i) })
        }
        None if g.complete => Err(SearchFailure::NotFound(g.len())),
        None => Err(SearchFailure::CapExceeded(node_cap)),
    }
}

/// Per-probe fresh λ-variables `{base}{n}`, numbered from `seed + 1`.
#[derive(Clone, Debug)]
pub struct FreshSupply {
    avoid: BTreeSet<String>,
    counters: BTreeMap<String, u64>,
    seed: u64,
    issued: Vec<String>,
}

impl FreshSupply {
    pub fn new(seed: u64, avoid: BTreeSet<String>) -> FreshSupply {
        FreshSupply { avoid, counters: BTreeMap::new(), seed, issued: Vec::new() }
    }

    /// Every name handed out so far, in order.
    pub fn issued(&self) -> &[String] {
        &self.issued
    }

    pub fn next(&mut self, base: &str) -> String {
        let seed = self.seed;
        let n = self.counters.entry(base.to_string()).or_insert(seed);
        loop {
            *n += 1;
            let name = format!("{base}{n}");
            if !self.avoid.contains(&name) && !is_keyword(&name) {
                self.avoid.insert(name.clone());
                self.issued.push(name.clone());
                return name;
            }
        }
    }

    pub fn var(&mut self, base: &str) -> Term {
        Term::var(self.next(base))
    }

    pub fn sequence(&mut self, base: &str, len: usize) -> ESequence {
        ESequence::of_terms((0..len).map(|_| self.var(base)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Law {
    Exfalso,
    Peirce,
    Tertium,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::Exfalso => "exfalso",
            Law::Peirce => "peirce",
            Law::Tertium => "tertium",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Law {
    type Err = String;

    fn from_str(s: &str) -> Result<Law, String> {
        match s.to_ascii_lowercase().as_str() {
            "efq" | "exfalso" => Ok(Law::Exfalso),
            "peirce" | "pierce" | "callcc" => Ok(Law::Peirce),
            "lem" | "tertium" | "tnd" => Ok(Law::Tertium),
            other => Err(format!("unknown law `{other}` (expected efq, peirce or lem)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Confirmed,
    Refuted { stage: usize, reason: String },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn is_confirmed(&self) -> bool {
        matches!(self, Verdict::Confirmed)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Confirmed => f.write_str("confirmed"),
            Verdict::Refuted { stage, reason } => write!(f, "refuted at stage {stage}: {reason}"),
            Verdict::Inconclusive { reason } => write!(f, "inconclusive: {reason}"),
        }
    }
}

/// One search: the probe term, what was looked for, and what was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub input: Term,
    pub pattern: LeafPattern,
    pub found: SpineFound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BehaviorReport {
    pub law: Law,
    pub subject: Term,
    pub verdict: Verdict,
    pub m: usize,
    pub thetas: Vec<Term>,
    pub stages: Vec<Stage>,
    /// Fresh E-sequences issued, in order.
    pub tails: Vec<ESequence>,
    /// Fresh values issued to θs, in order.
    pub values: Vec<String>,
    /// Every fresh name the probe introduced, in order.
    pub fresh: Vec<String>,
}

impl BehaviorReport {
    fn new(law: Law, subject: &Term) -> BehaviorReport {
        BehaviorReport {
            law,
            subject: subject.clone(),
            verdict: Verdict::Inconclusive { reason: "not run".into() },
            m: 0,
            thetas: Vec::new(),
            stages: Vec::new(),
            tails: Vec::new(),
            values: Vec::new(),
            fresh: Vec::new(),
        }
    }

    pub fn traces(&self) -> Vec<&Trace> {
        self.stages.iter().map(|s| &s.found.trace).collect()
    }

    /// Re-checks every trace step and every claimed leaf match.
    pub fn revalidate(&self) -> Result<(), String> {
        for (i, st) in self.stages.iter().enumerate() {
            let trace = &st.found.trace;
            if !alpha_equal(&trace.initial, &st.input) {
                return Err(format!("stage {i}: trace does not start at the probe term"));
            }
            trace.validate().map_err(|e| format!("stage {i}: {e}"))?;
            if !alpha_equal(&st.found.witness.rebuild(), trace.last()) {
                return Err(format!("stage {i}: witness does not rebuild the final reduct"));
            }
            let (_, m) = match_spine(trace.last(), &st.pattern).ok_or(format!("stage {i}: leaf no longer matches"))?;
            let same_slot = match (&m.slot, &st.found.matched.slot) {
                (Some(a), Some(b)) => alpha_equal(a, b),
                (None, None) => true,
                _ => false,
            };
            if m.alternative != st.found.matched.alternative || !same_slot {
                return Err(format!("stage {i}: leaf matches differently"));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let verdict = serde_json::to_value(&self.verdict).expect("verdict serializes");
        json!({
            "law": self.law,
            "subject": print_term(&self.subject),
            "verdict": verdict,
            "m": self.m,
            "thetas": self.thetas.iter().map(print_term).collect::<Vec<_>>(),
            "traces": self.stages.iter().map(|s| json!({
                "input": print_term(&s.input),
                "spine": s.found.witness.to_string(),
                "steps": s.found.trace.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for BehaviorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "law: {}", self.law)?;
        writeln!(f, "subject: {}", print_term(&self.subject))?;
        writeln!(f, "verdict: {}", self.verdict)?;
        writeln!(f, "m: {}", self.m)?;
        for (i, th) in self.thetas.iter().enumerate() {
            writeln!(f, "theta{}: {}", i + 1, print_term(th))?;
        }
        for (i, st) in self.stages.iter().enumerate() {
            writeln!(f, "stage {i}: {} ->* {} (steps: {})", print_term(&st.input), st.found.witness, st.found.trace.len())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ProbeError {
    #[error("subject is not closed")]
    NotClosed,
    #[error("type error: {0}")]
    Type(#[from] TypeError),
    #[error("subject has type {found}, expected a formula of the form {expected}")]
    WrongType { expected: &'static str, found: Formula },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeOptions {
    /// Number of fresh arguments (or length of each fresh E-sequence).
    pub args: usize,
    pub node_cap: usize,
    pub max_m: usize,
    pub seed: u64,
    /// Used instead of fresh variables for the argument sequence.
    pub tail: Option<ESequence>,
}

impl Default for ProbeOptions {
    fn default() -> ProbeOptions {
        ProbeOptions { args: 1, node_cap: DEFAULT_PROBE_CAP, max_m: DEFAULT_MAX_M, seed: 0, tail: None }
    }
}

fn closed_type(subject: &Term) -> Result<Formula, ProbeError> {
    if !subject.is_closed() {
        return Err(ProbeError::NotClosed);
    }
    Ok(infer(&Context::new(), &NameContext::new(), subject)?.formula().clone())
}

fn is_atom(f: &Formula) -> bool {
    matches!(f, Formula::Var(_))
}

fn supply_for(subject: &Term, opts: &ProbeOptions) -> FreshSupply {
    let mut avoid = subject.all_names();
    if let Some(tail) = &opts.tail {
        for e in tail.iter() {
            avoid.extend(e.all_names());
        }
    }
    FreshSupply::new(opts.seed, avoid)
}

fn tail_for(supply: &mut FreshSupply, opts: &ProbeOptions) -> ESequence {
    opts.tail.clone().unwrap_or_else(|| supply.sequence("t", opts.args))
}

fn inconclusive(reason: impl Into<String>) -> Verdict {
    Verdict::Inconclusive { reason: reason.into() }
}

fn failure_verdict(stage: usize, f: SearchFailure) -> Verdict {
    match f {
        SearchFailure::NotFound(_) => Verdict::Refuted { stage, reason: f.to_string() },
        SearchFailure::CapExceeded(_) => inconclusive(f.to_string()),
    }
}

/// `((T t) u1 ... un) ->* mu.t`
pub fn probe_exfalso(subject: &Term, n_args: usize, node_cap: usize) -> Result<BehaviorReport, ProbeError> {
    probe_exfalso_with(subject, &ProbeOptions { args: n_args, node_cap, ..ProbeOptions::default() })
}

pub fn probe_exfalso_with(subject: &Term, opts: &ProbeOptions) -> Result<BehaviorReport, ProbeError> {
    let mut supply = supply_for(subject, opts);
    let mut report = run_exfalso(subject, opts, &mut supply)?;
    report.fresh = supply.issued().to_vec();
    Ok(report)
}

fn run_exfalso(subject: &Term, opts: &ProbeOptions, supply: &mut FreshSupply) -> Result<BehaviorReport, ProbeError> {
    match closed_type(subject)? {
        Formula::Arrow(a, b) if *a == Formula::Bottom && is_atom(&b) => {}
        found => return Err(ProbeError::WrongType { expected: "_|_ -> P", found }),
    }
    let t = supply.var("t");
    let us = opts.tail.clone().unwrap_or_else(|| supply.sequence("u", opts.args));
    let input = us.apply_to(Term::apply(subject.clone(), t.clone()));
    let pattern = LeafPattern::ExactLeaf(t);
    let mut report = BehaviorReport::new(Law::Exfalso, subject);
    report.tails.push(us);
    report.verdict = match find_spine_reduct(&input, &pattern, opts.node_cap) {
        Ok(found) => {
            report.stages.push(Stage { input, pattern, found });
            Verdict::Confirmed
        }
        Err(f) => failure_verdict(0, f),
    };
    Ok(report)
}

/// Stage 0 finds `mu.((u θ1) t)`; stage i reduces `(θi vi)` to either
/// `mu.((u θ(i+1)) t)` or the terminal `mu.(vj t)`.
pub fn probe_peirce(subject: &Term, n_args: usize, node_cap: usize, max_m: usize) -> Result<BehaviorReport, ProbeError> {
    probe_peirce_with(subject, &ProbeOptions { args: n_args, node_cap, max_m, ..ProbeOptions::default() })
}

pub fn probe_peirce_with(subject: &Term, opts: &ProbeOptions) -> Result<BehaviorReport, ProbeError> {
    let mut supply = supply_for(subject, opts);
    let mut report = run_peirce(subject, opts, &mut supply)?;
    report.fresh = supply.issued().to_vec();
    Ok(report)
}

fn run_peirce(subject: &Term, opts: &ProbeOptions, supply: &mut FreshSupply) -> Result<BehaviorReport, ProbeError> {
    match closed_type(subject)? {
        Formula::Arrow(h, p) if is_atom(&p) && *h == Formula::arrow(Formula::neg((*p).clone()), (*p).clone()) => {}
        found => return Err(ProbeError::WrongType { expected: "(~P -> P) -> P", found }),
    }
    let u = supply.next("u");
    let tail = tail_for(supply, opts);
    let mut report = BehaviorReport::new(Law::Peirce, subject);
    report.tails.push(tail.clone());
    let next_theta = LeafPattern::HeadApplied { head: u.clone(), tail: tail.clone() };
    let mut input = tail.apply_to(Term::apply(subject.clone(), Term::var(u)));
    let mut stage = 0;
    loop {
        let mut alts = vec![next_theta.clone()];
        alts.extend(report.values.iter().map(|v| LeafPattern::ExactLeaf(tail.apply_to(Term::var(v.clone())))));
        let pattern = LeafPattern::AnyOf(alts);
        let found = match find_spine_reduct(&input, &pattern, opts.node_cap) {
            Ok(found) => found,
            Err(f) => {
                report.verdict = failure_verdict(stage, f);
                return Ok(report);
            }
        };
        let matched = found.matched.clone();
        report.stages.push(Stage { input, pattern, found });
        if matched.alternative > 0 {
            report.m = report.thetas.len();
            report.verdict = Verdict::Confirmed;
            return Ok(report);
        }
        let theta = matched.slot.expect("head pattern binds its slot");
        report.thetas.push(theta.clone());
        if report.thetas.len() > opts.max_m {
            report.m = report.thetas.len();
            report.verdict = inconclusive(format!("no terminal leaf within {} stages", opts.max_m));
            return Ok(report);
        }
        let v = supply.next("v");
        report.values.push(v.clone());
        input = Term::apply(theta, Term::var(v));
        stage += 1;
    }
}

/// Stage 0 reduces `(T [x1. (c1 x1), x2. (c2 x2)])` to `mu.(ci θ)`. A θ from
/// the branch of type P is fed a fresh sequence, one from the branch of type
/// ~P a fresh value, until a terminal `mu.(vp tq)` appears.
pub fn probe_tertium(subject: &Term, seq_len: usize, node_cap: usize, max_m: usize) -> Result<BehaviorReport, ProbeError> {
    probe_tertium_with(subject, &ProbeOptions { args: seq_len, node_cap, max_m, ..ProbeOptions::default() })
}

pub fn probe_tertium_with(subject: &Term, opts: &ProbeOptions) -> Result<BehaviorReport, ProbeError> {
    let mut supply = supply_for(subject, opts);
    let mut report = run_tertium(subject, opts, &mut supply)?;
    report.fresh = supply.issued().to_vec();
    Ok(report)
}

fn run_tertium(subject: &Term, opts: &ProbeOptions, supply: &mut FreshSupply) -> Result<BehaviorReport, ProbeError> {
    let negation_side = match closed_type(subject)? {
        Formula::Or(l, r) if is_atom(&r) && *l == Formula::neg((*r).clone()) => Side::Left,
        Formula::Or(l, r) if is_atom(&l) && *r == Formula::neg((*l).clone()) => Side::Right,
        found => return Err(ProbeError::WrongType { expected: "~P \\/ P", found }),
    };
    let c = [supply.next("c"), supply.next("c")];
    let x = [supply.next("x"), supply.next("x")];
    let branch = |i: usize| Branch::new(x[i].clone(), Term::apply(Term::var(c[i].clone()), Term::var(x[i].clone())));
    let case = ETerm::Case(branch(0), branch(1));
    let mut report = BehaviorReport::new(Law::Tertium, subject);
    let mut input = Term::app(subject.clone(), case);
    let mut stage = 0;
    loop {
        let mut alts = vec![
            LeafPattern::ProbeApplied { probe: c[0].clone() },
            LeafPattern::ProbeApplied { probe: c[1].clone() },
        ];
        for v in &report.values {
            for t in &report.tails {
                alts.push(LeafPattern::ExactLeaf(t.apply_to(Term::var(v.clone()))));
            }
        }
        let pattern = LeafPattern::AnyOf(alts);
        let found = match find_spine_reduct(&input, &pattern, opts.node_cap) {
            Ok(found) => found,
            Err(f) => {
                report.verdict = failure_verdict(stage, f);
                return Ok(report);
            }
        };
        let matched = found.matched.clone();
        report.stages.push(Stage { input, pattern, found });
        if matched.alternative > 1 {
            report.m = report.thetas.len();
            report.verdict = Verdict::Confirmed;
            return Ok(report);
        }
        let theta = matched.slot.expect("probe pattern binds its slot");
        report.thetas.push(theta.clone());
        if report.thetas.len() > opts.max_m {
            report.m = report.thetas.len();
            report.verdict = inconclusive(format!("no terminal leaf within {} stages", opts.max_m));
            return Ok(report);
        }
        let side = if matched.alternative == 0 { Side::Left } else { Side::Right };
        input = if side == negation_side {
            let v = supply.next("v");
            report.values.push(v.clone());
            Term::apply(theta, Term::var(v))
        } else {
            let t = tail_for(supply, opts);
            report.tails.push(t.clone());
            t.apply_to(theta)
        };
        stage += 1;
    }
}

/// Runs the probe matching `law`.
pub fn probe(law: Law, subject: &Term, opts: &ProbeOptions) -> Result<BehaviorReport, ProbeError> {
    match law {
        Law::Exfalso => probe_exfalso_with(subject, opts),
        Law::Peirce => probe_peirce_with(subject, opts),
        Law::Tertium => probe_tertium_with(subject, opts),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalTerm {
    pub name: &'static str,
    pub term: Term,
    pub formula: Formula,
}

const CANONICAL: [(&str, &str); 6] = [
    ("T", "\\z:_|_. mu a:P. z"),
    ("C1", "\\z:(~P -> P). mu a:P. [a] (z \\y:P. [a] y)"),
    ("C2", "\\z:(~P -> P). mu a:P. [a] (z \\x:P. [a] (z \\y:P. [a] x))"),
    ("W", "mu b:(P \\/ ~P). [b] in1{~P} mu a:P. [b] in2{P} \\y:P. [a] y"),
    ("Wprime", "mu b:(~P \\/ P). [b] in2{~P} mu a:P. [b] in1{P} \\y:P. [a] y"),
    ("Tmu", "\\z:_|_. mu a:P. mu b:_|_. z"),
];

/// The named example terms with their inferred types.
pub fn canonical_terms() -> Vec<CanonicalTerm> {
    CANONICAL
        .iter()
        .map(|(name, src)| {
            let term = parse_term(src).expect("canonical term parses");
            let formula = infer(&Context::new(), &NameContext::new(), &term).expect("canonical term is typed").formula().clone();
            CanonicalTerm { name, term, formula }
        })
        .collect()
}

pub fn lookup(name: &str) -> Option<CanonicalTerm> {
    let name = match name {
        "W'" => "Wprime",
        other => other,
    };
    canonical_terms().into_iter().find(|c| c.name.eq_ignore_ascii_case(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn t(src: &str) -> Term {
        parse_term(src).unwrap()
    }

    fn named(name: &str) -> Term {
        lookup(name).unwrap().term
    }

    #[test]
    fn canonical_types() {
        let f = |s: &str| parse_formula(s).unwrap();
        assert_eq!(lookup("T").unwrap().formula, f("_|_ -> P"));
        assert_eq!(lookup("C1").unwrap().formula, f("(~P -> P) -> P"));
        assert_eq!(lookup("C2").unwrap().formula, f("(~P -> P) -> P"));
        assert_eq!(lookup("W").unwrap().formula, f("P \\/ ~P"));
        assert_eq!(lookup("Wprime").unwrap().formula, f("~P \\/ P"));
        assert_eq!(lookup("Tmu").unwrap().formula, f("_|_ -> P"));
        assert!(lookup("nope").is_none());
    }

    #[test]
    fn spine_examples() {
        let leaf = t("t");
        assert_eq!(is_mu_spine(&leaf, &leaf).unwrap().depth(), 0);
        let s = t("mu a. mu b. [a] [b] mu c. [a] mu d. t");
        let w = is_mu_spine(&s, &leaf).unwrap();
        assert_eq!(w.depth(), 7);
        assert_eq!(w.rebuild(), s);
        assert!(is_mu_spine(&t("(x t)"), &leaf).is_none());
    }

    #[test]
    fn search_examples() {
        let input = t("(((\\z:_|_. mu a:P. z) t) u)");
        let found = find_spine_reduct(&input, &LeafPattern::ExactLeaf(t("t")), 100).unwrap();
        assert_eq!(found.trace.len(), 2);
        assert!(alpha_equal(&found.witness.rebuild(), &t("mu a. t")));

        let found = find_spine_reduct(&t("t"), &LeafPattern::ExactLeaf(t("t")), 10).unwrap();
        assert!(found.trace.is_empty());
        assert_eq!(found.witness.depth(), 0);

        let input = Term::apply(Term::apply(named("C1"), t("u")), t("s"));
        let pattern = LeafPattern::HeadApplied { head: "u".into(), tail: ESequence::of_terms([t("s")]) };
        let found = find_spine_reduct(&input, &pattern, 500).unwrap();
        let theta = found.matched.slot.unwrap();
        assert!(alpha_equal(&theta, &t("\\y:P. [a] (y s)")), "{}", print_term(&theta));
    }

    #[test]
    fn exfalso_examples() {
        let r = probe_exfalso(&named("T"), 2, 500).unwrap();
        assert!(r.verdict.is_confirmed());
        assert_eq!(r.stages[0].found.witness.depth(), 1);
        r.revalidate().unwrap();

        let r = probe_exfalso(&named("Tmu"), 2, 500).unwrap();
        assert!(r.verdict.is_confirmed());
        assert_eq!(r.stages[0].found.witness.depth(), 2);

        assert!(matches!(probe_exfalso(&t("\\x:P. x"), 1, 500), Err(ProbeError::WrongType { .. })));
    }

    #[test]
    fn peirce_examples() {
        let r = probe_peirce(&named("C1"), 1, 2000, 4).unwrap();
        assert!(r.verdict.is_confirmed());
        assert_eq!(r.m, 1);
        let tail = &r.tails[0];
        let expected = Term::abs("y", None, Term::named("a", tail.apply_to(Term::var("y"))));
        assert!(alpha_equal(&crate::typing::erase(&r.thetas[0]), &expected));
        r.revalidate().unwrap();

        let r = probe_peirce(&named("C2"), 1, 2000, 4).unwrap();
        assert!(r.verdict.is_confirmed());
        assert_eq!(r.m, 2);
        r.revalidate().unwrap();

        assert!(matches!(probe_peirce(&named("T"), 1, 100, 4), Err(ProbeError::WrongType { .. })));
    }

    #[test]
    fn tertium_examples() {
        for name in ["W", "Wprime"] {
            let r = probe_tertium(&named(name), 1, 5000, 4).unwrap();
            assert!(r.verdict.is_confirmed(), "{name}: {}", r.verdict);
            assert_eq!(r.m, 2);
            assert!(matches!(r.thetas[0], Term::Mu(..)));
            let expected = Term::abs("y", None, Term::named("a", r.tails[0].apply_to(Term::var("y"))));
            assert!(alpha_equal(&crate::typing::erase(&r.thetas[1]), &expected), "{}", print_term(&r.thetas[1]));
            r.revalidate().unwrap();
        }
        assert!(matches!(probe_tertium(&named("C1"), 1, 100, 4), Err(ProbeError::WrongType { .. })));
    }

    #[test]
    fn fresh_names_follow_the_seed() {
        let mut s = FreshSupply::new(0, ["t1".to_string()].into_iter().collect());
        assert_eq!(s.next("t"), "t2");
        assert_eq!(s.next("v"), "v1");
        let mut s = FreshSupply::new(10, BTreeSet::new());
        assert_eq!(s.next("t"), "t11");
    }

    #[test]
    fn law_names() {
        assert_eq!("efq".parse::<Law>().unwrap(), Law::Exfalso);
        assert_eq!("LEM".parse::<Law>().unwrap(), Law::Tertium);
        assert!("modus".parse::<Law>().is_err());
    }
}
