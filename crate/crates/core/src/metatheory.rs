//! Corpus generation and executable oracles for subject reduction,
//! confluence and strong normalization.
//!
//! Enumeration is type-directed. Terms are built in checking mode against a
//! target formula, so every annotation is forced by the target except the
//! type of an eliminated head (the cut formula), which ranges over a fixed
//! finite universe: all formulas over `{P, _|_}` with at most
//! [`DEFAULT_FORMULA_SIZE`] nodes, plus the subformulas of `_|_ -> P`,
//! `(~P -> P) -> P`, `~P \/ P`, `P \/ ~P` and of the target. A term is produced iff it is closed,
//! well typed, and every formula in its derivation lies in the universe.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::reduction::{explore, ReductionGraph, Scope, DEFAULT_NODE_CAP};
use crate::syntax::{print_term, Branch, ETerm, Formula, Side, Term};
use crate::typing::{check, infer, Context, Derivation, NameContext};

/// Default bound on the size of cut formulas.
pub const DEFAULT_FORMULA_SIZE: usize = 3;

/// Default term size for the suite.
pub const DEFAULT_MAX_SIZE: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    pub max_size: usize,
    pub formula_size: usize,
    pub atoms: Vec<Formula>,
    /// Always in the universe together with their subformulas.
    pub seeds: Vec<Formula>,
}

impl EnumConfig {
    pub fn new(max_size: usize) -> EnumConfig {
        let p = Formula::var("P");
        let np = Formula::neg(p.clone());
        let seeds = vec![
            Formula::arrow(Formula::Bottom, p.clone()),
            Formula::arrow(Formula::arrow(np.clone(), p.clone()), p.clone()),
            Formula::or(np.clone(), p.clone()),
            Formula::or(p.clone(), np),
        ];
        EnumConfig { max_size, formula_size: DEFAULT_FORMULA_SIZE, atoms: vec![p, Formula::Bottom], seeds }
    }

    pub fn without_seeds(mut self) -> EnumConfig {
        self.seeds.clear();
        self
    }

    pub fn with_formula_size(mut self, k: usize) -> EnumConfig {
        self.formula_size = k;
        self
    }

    /// The subformula-closed formula universe, extended by `target`.
    pub fn universe(&self, target: Option<&Formula>) -> Vec<Formula> {
        let mut u: BTreeSet<Formula> = Formula::all_up_to(&self.atoms, self.formula_size).into_iter().collect();
        for s in &self.seeds {
            u.extend(s.subformulas());
        }
        if let Some(t) = target {
            u.extend(t.subformulas());
        }
        let mut v: Vec<Formula> = u.into_iter().collect();
        v.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusSource {
    Enumerated,
    Curated,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub term: Term,
    pub formula: Formula,
    pub derivation: Derivation,
    pub gamma: Context,
    pub delta: NameContext,
}

impl CorpusEntry {
    pub fn scope(&self) -> Scope {
        Scope::new(self.gamma.clone(), self.delta.clone())
    }
}

/// Candidate that failed the typing precondition.
#[derive(Clone, Debug)]
pub struct Rejected {
    pub term: Term,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    pub source: CorpusSource,
    pub rejected: Vec<Rejected>,
}

impl Corpus {
    /// Keeps the candidates that check at their stated type.
    pub fn from_candidates(source: CorpusSource, candidates: Vec<(Context, NameContext, Term, Formula)>) -> Corpus {
        let mut entries = Vec::new();
        let mut rejected = Vec::new();
        for (gamma, delta, term, formula) in candidates {
            match check(&gamma, &delta, &term, &formula) {
                Ok(derivation) => entries.push(CorpusEntry { term, formula, derivation, gamma, delta }),
                Err(e) => rejected.push(Rejected { term, reason: e.to_string() }),
            }
        }
        Corpus { entries, source, rejected }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.entries.iter().map(|e| &e.term)
    }

    /// Re-checks every entry.
    pub fn revalidate(&self) -> Result<(), String> {
        for e in &self.entries {
            check(&e.gamma, &e.delta, &e.term, &e.formula).map_err(|err| format!("{}: {err}", print_term(&e.term)))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "source": self.source,
            "entries": self.entries.iter().map(|e| serde_json::json!({
                "term": print_term(&e.term),
                "formula": e.formula.to_string(),
                "size": e.term.size(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// All closed well-typed terms up to `max_size` nodes, at `target` or at
/// every formula of the universe, in a deterministic order.
pub fn enumerate_typed_terms(max_size: usize, target: Option<&Formula>) -> Corpus {
    enumerate_with(&EnumConfig::new(max_size), target)
}

pub fn enumerate_with(config: &EnumConfig, target: Option<&Formula>) -> Corpus {
    let universe = config.universe(target);
    let targets: Vec<Formula> = match target {
        Some(t) => vec![t.clone()],
        None => universe.clone(),
    };
    let mut g = Generator { universe, memo: HashMap::new() };
    let ctx = GenCtx::default();
    let mut candidates = Vec::new();
    for a in &targets {
        for n in 1..=config.max_size {
            for t in g.gen(&ctx, a, n).iter() {
                candidates.push((Context::new(), NameContext::new(), t.clone(), a.clone()));
            }
        }
    }
    Corpus::from_candidates(CorpusSource::Enumerated, candidates)
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
struct GenCtx {
    lambda: Vec<Formula>,
    mu: Vec<Formula>,
}

impl GenCtx {
    fn next_lambda(&self) -> String {
        format!("x{}", self.lambda.len() + 1)
    }

    fn next_mu(&self) -> String {
        format!("a{}", self.mu.len() + 1)
    }

    fn push_lambda(&self, f: &Formula) -> GenCtx {
        let mut c = self.clone();
        c.lambda.push(f.clone());
        c
    }

    fn push_mu(&self, f: &Formula) -> GenCtx {
        let mut c = self.clone();
        c.mu.push(f.clone());
        c
    }
}

type Key = (GenCtx, Formula, usize);

struct Generator {
    universe: Vec<Formula>,
    memo: HashMap<Key, Rc<Vec<Term>>>,
}

impl Generator {
    /// Terms of exactly `n` nodes checking at `a` in `ctx`.
    fn gen(&mut self, ctx: &GenCtx, a: &Formula, n: usize) -> Rc<Vec<Term>> {
        let key = (ctx.clone(), a.clone(), n);
        if let Some(v) = self.memo.get(&key) {
            return Rc::clone(v);
        }
        let v = Rc::new(self.build(ctx, a, n));
        self.memo.insert(key, Rc::clone(&v));
        v
    }

    fn build(&mut self, ctx: &GenCtx, a: &Formula, n: usize) -> Vec<Term> {
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        if n == 1 {
            for (i, ty) in ctx.lambda.iter().enumerate() {
                if ty == a {
                    out.push(Term::var(format!("x{}", i + 1)));
                }
            }
            return out;
        }
        // introductions
        match a {
            Formula::Arrow(b, c) => {
                let x = ctx.next_lambda();
                let inner = ctx.push_lambda(b);
                for body in self.gen(&inner, c, n - 1).iter() {
                    out.push(Term::abs(x.clone(), Some((**b).clone()), body.clone()));
                }
            }
            Formula::And(b, c) => {
                for k in 1..n - 1 {
                    let ls = self.gen(ctx, b, k);
                    let rs = self.gen(ctx, c, n - 1 - k);
                    for l in ls.iter() {
                        for r in rs.iter() {
                            out.push(Term::pair(l.clone(), r.clone()));
                        }
                    }
                }
            }
            Formula::Or(b, c) => {
                for u in self.gen(ctx, b, n - 1).iter() {
                    out.push(Term::inj(Side::Left, u.clone(), Some((**c).clone())));
                }
                for u in self.gen(ctx, c, n - 1).iter() {
                    out.push(Term::inj(Side::Right, u.clone(), Some((**b).clone())));
                }
            }
            Formula::Bottom => {
                for (j, ty) in ctx.mu.clone().iter().enumerate() {
                    for u in self.gen(ctx, ty, n - 1).iter() {
                        out.push(Term::named(format!("a{}", j + 1), u.clone()));
                    }
                }
            }
            Formula::Var(_) => {}
        }
        // abs-e at any type; its body is judged at _|_
        if !self.universe.contains(&Formula::Bottom) {
            return self.eliminations(ctx, a, n, out);
        }
        let name = ctx.next_mu();
        let inner = ctx.push_mu(a);
        for body in self.gen(&inner, &Formula::Bottom, n - 1).iter() {
            out.push(Term::mu(name.clone(), Some(a.clone()), body.clone()));
        }
        self.eliminations(ctx, a, n, out)
    }

    /// `(f e)` with `f` of any universe type.
    fn eliminations(&mut self, ctx: &GenCtx, a: &Formula, n: usize, mut out: Vec<Term>) -> Vec<Term> {
        if n >= 3 {
            for head_ty in self.universe.clone() {
                for k in 1..=n - 2 {
                    let rest = n - 1 - k;
                    let args: Vec<ETerm> = match &head_ty {
                        Formula::Arrow(c, r) if **r == *a => {
                            self.gen(ctx, c, rest).iter().map(|u| ETerm::Arg(u.clone())).collect()
                        }
                        Formula::And(l, r) if rest == 1 => {
                            let mut v = Vec::new();
                            if **l == *a {
                                v.push(ETerm::Proj(Side::Left));
                            }
                            if **r == *a {
                                v.push(ETerm::Proj(Side::Right));
                            }
                            v
                        }
                        Formula::Or(l, r) if rest >= 3 => {
                            let x = ctx.next_lambda();
                            let cl = ctx.push_lambda(l);
                            let cr = ctx.push_lambda(r);
                            let mut v = Vec::new();
                            for k2 in 1..rest - 1 {
                                let us = self.gen(&cl, a, k2);
                                let vs = self.gen(&cr, a, rest - 1 - k2);
                                for u in us.iter() {
                                    for w in vs.iter() {
                                        v.push(ETerm::Case(Branch::new(x.clone(), u.clone()), Branch::new(x.clone(), w.clone())));
                                    }
                                }
                            }
                            v
                        }
                        _ => Vec::new(),
                    };
                    if args.is_empty() {
                        continue;
                    }
                    let heads = self.gen(ctx, &head_ty, k);
                    for f in heads.iter() {
                        for e in &args {
                            out.push(Term::app(f.clone(), e.clone()));
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    SubjectReduction,
    Confluence,
    StrongNormalization,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub term: String,
    pub evidence: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Incomplete {
    pub term: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: Property,
    pub checked: usize,
    pub failures: Vec<Counterexample>,
    pub incomplete: Vec<Incomplete>,
    /// Longest reduction path per checked entry (strong normalization only).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub longest_paths: Vec<usize>,
}

impl PropertyReport {
    fn new(property: Property) -> PropertyReport {
        PropertyReport { property, checked: 0, failures: Vec::new(), incomplete: Vec::new(), longest_paths: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

enum Outcome {
    Checked { failure: Option<String>, longest: Option<usize> },
    Incomplete(String),
}

fn graph_of(scope: &Scope, t: &Term, node_cap: usize) -> ReductionGraph {
    explore(scope, t, node_cap, |_, _| false).0
}

fn subject_reduction(entry: &CorpusEntry, g: &ReductionGraph) -> Option<String> {
    for (i, node) in g.nodes.iter().enumerate() {
        if let Err(e) = check(&entry.gamma, &entry.delta, node, &entry.formula) {
            let trace = g.trace_to(i);
            let step = trace.steps.last().map(|s| {
                format!("{} @ {}: {} ▷ {}", s.rule, s.position, print_term(&s.before), print_term(&s.after))
            });
            return Some(format!("{} ({e})", step.unwrap_or_default()));
        }
    }
    None
}

fn confluence(g: &ReductionGraph) -> Option<String> {
    let sinks = g.sinks();
    if sinks.len() > 1 {
        let shown: Vec<String> = sinks.iter().map(|&i| print_term(&g.nodes[i])).collect();
        return Some(format!("distinct normal forms: {}", shown.join(" | ")));
    }
    let reach = g.reachability();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if !reach[i].intersects(&reach[j]) {
                return Some(format!(
                    "no common reduct of {} and {}",
                    print_term(&g.nodes[i]),
                    print_term(&g.nodes[j])
                ));
            }
        }
    }
    None
}

fn strong_normalization(g: &ReductionGraph) -> (Option<String>, Option<usize>) {
    match g.longest_path() {
        Some(n) => (None, Some(n)),
        None => (Some(format!("reduction graph of {} nodes has a cycle", g.len())), None),
    }
}

fn run_property<F>(corpus: &Corpus, property: Property, node_cap: usize, analyse: F) -> PropertyReport
where
    F: Fn(&CorpusEntry, &ReductionGraph) -> (Option<String>, Option<usize>) + Sync,
{
    let outcomes: Vec<Outcome> = corpus
        .entries
        .par_iter()
        .map(|entry| {
            let g = graph_of(&entry.scope(), &entry.term, node_cap);
            if !g.complete {
                return Outcome::Incomplete(format!("node cap {node_cap} reached"));
            }
            let (failure, longest) = analyse(entry, &g);
            Outcome::Checked { failure, longest }
        })
        .collect();
    let mut report = PropertyReport::new(property);
    for r in &corpus.rejected {
        report.incomplete.push(Incomplete { term: print_term(&r.term), reason: format!("excluded: {}", r.reason) });
    }
    for (entry, outcome) in corpus.entries.iter().zip(outcomes) {
        match outcome {
            Outcome::Incomplete(reason) => report.incomplete.push(Incomplete { term: print_term(&entry.term), reason }),
            Outcome::Checked { failure, longest } => {
                report.checked += 1;
                if let Some(evidence) = failure {
                    report.failures.push(Counterexample { term: print_term(&entry.term), evidence });
                }
                if property == Property::StrongNormalization {
                    report.longest_paths.push(longest.unwrap_or(0));
                }
            }
        }
    }
    report
}

/// Every node of every complete reduction graph re-checks at the entry's type.
pub fn check_subject_reduction(c: &Corpus) -> PropertyReport {
    check_subject_reduction_capped(c, DEFAULT_NODE_CAP)
}

pub fn check_subject_reduction_capped(c: &Corpus, node_cap: usize) -> PropertyReport {
    run_property(c, Property::SubjectReduction, node_cap, |e, g| (subject_reduction(e, g), None))
}

/// Every complete reduction graph has at most one normal form and every two
/// of its nodes have a common reduct.
pub fn check_confluence(c: &Corpus) -> PropertyReport {
    check_confluence_capped(c, DEFAULT_NODE_CAP)
}

pub fn check_confluence_capped(c: &Corpus, node_cap: usize) -> PropertyReport {
    run_property(c, Property::Confluence, node_cap, |_, g| (confluence(g), None))
}

/// Every reduction graph is complete under the cap and acyclic.
pub fn check_strong_normalization(c: &Corpus) -> PropertyReport {
    check_strong_normalization_capped(c, DEFAULT_NODE_CAP)
}

pub fn check_strong_normalization_capped(c: &Corpus, node_cap: usize) -> PropertyReport {
    run_property(c, Property::StrongNormalization, node_cap, |_, g| strong_normalization(g))
}

/// Strong-normalization detector on arbitrary (possibly untyped) terms.
pub fn strong_normalization_of_terms(terms: &[Term], node_cap: usize) -> PropertyReport {
    let mut report = PropertyReport::new(Property::StrongNormalization);
    for t in terms {
        let g = graph_of(&Scope::default(), t, node_cap);
        if !g.complete {
            report.incomplete.push(Incomplete { term: print_term(t), reason: format!("node cap {node_cap} reached") });
            continue;
        }
        report.checked += 1;
        let (failure, longest) = strong_normalization(&g);
        report.longest_paths.push(longest.unwrap_or(0));
        if let Some(evidence) = failure {
            report.failures.push(Counterexample { term: print_term(t), evidence });
        }
    }
    report
}

/// The three checks from one reduction graph per entry.
pub fn check_all(c: &Corpus, node_cap: usize) -> [PropertyReport; 3] {
    let graphs: Vec<ReductionGraph> = c.entries.par_iter().map(|e| graph_of(&e.scope(), &e.term, node_cap)).collect();
    let mut reports = [
        PropertyReport::new(Property::SubjectReduction),
        PropertyReport::new(Property::Confluence),
        PropertyReport::new(Property::StrongNormalization),
    ];
    for r in &c.rejected {
        for rep in reports.iter_mut() {
            rep.incomplete.push(Incomplete { term: print_term(&r.term), reason: format!("excluded: {}", r.reason) });
        }
    }
    let results: Vec<[Option<String>; 3]> = c
        .entries
        .par_iter()
        .zip(graphs.par_iter())
        .map(|(e, g)| {
            if !g.complete {
                return [None, None, None];
            }
            [subject_reduction(e, g), confluence(g), strong_normalization(g).0]
        })
        .collect();
    for ((e, g), res) in c.entries.iter().zip(&graphs).zip(results) {
        let term = print_term(&e.term);
        if !g.complete {
            for rep in reports.iter_mut() {
                rep.incomplete.push(Incomplete { term: term.clone(), reason: format!("node cap {node_cap} reached") });
            }
            continue;
        }
        for (rep, failure) in reports.iter_mut().zip(res) {
            rep.checked += 1;
            if let Some(evidence) = failure {
                rep.failures.push(Counterexample { term: term.clone(), evidence });
            }
        }
        reports[2].longest_paths.push(g.longest_path().unwrap_or(0));
    }
    reports
}

/// Hand-picked entries, some with free variables, covering every rule.
pub fn curated_corpus() -> Corpus {
    use crate::syntax::{parse_formula, parse_term};
    let f = |s: &str| parse_formula(s).expect("curated formula parses");
    let t = |s: &str| parse_term(s).expect("curated term parses");
    let ctx = |decls: &[(&str, &str)]| -> Context { decls.iter().map(|(x, a)| (*x, f(a))).collect() };
    let names = |decls: &[(&str, &str)]| -> NameContext { decls.iter().map(|(x, a)| (*x, f(a))).collect() };
    let mut candidates = vec![
        (ctx(&[("y", "P")]), names(&[]), t("(\\x:P. x y)"), f("P")),
        (ctx(&[("a", "P"), ("b", "P")]), names(&[]), t("(<(\\x:P. x a), b> p1)"), f("P")),
        (ctx(&[("s", "P \\/ P"), ("g", "P -> _|_")]), names(&[]), t("(mu k:(P \\/ P). [k] s [x. g, y. g])"), f("P -> _|_")),
        (ctx(&[("s", "P \\/ P"), ("z", "P")]), names(&[]), t("((s [x. \\w:P. x, y. \\w:P. w]) z)"), f("P")),
        (ctx(&[("z", "P")]), names(&[("k", "P")]), t("[k] (in2{_|_} z [x. mu c:P. x, y. y])"), f("_|_")),
        (ctx(&[]), names(&[]), t("(<\\x:P. x, \\x:_|_. x> p2)"), f("_|_ -> _|_")),
        (ctx(&[("u", "~P -> P")]), names(&[]), t("(\\z:(~P -> P). mu a:P. [a] (z \\y:P. [a] y) u)"), f("P")),
    ];
    for entry in crate::behavior::canonical_terms() {
        candidates.push((Context::new(), NameContext::new(), entry.term, entry.formula));
    }
    Corpus::from_candidates(CorpusSource::Curated, candidates)
}

/// Untyped terms whose reduction graphs are cyclic.
pub fn negative_controls() -> Vec<Term> {
    use crate::syntax::parse_term;
    vec![parse_term("(\\x. (x x) \\x. (x x))").expect("omega parses")]
}

/// Infers the type of a closed term.
pub fn closed_type(t: &Term) -> Option<Formula> {
    infer(&Context::new(), &NameContext::new(), t).ok().map(|d| d.formula().clone())
}
