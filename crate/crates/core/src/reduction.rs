//! The five reduction rules, closed under every term and E-term context.
//!
//! | rule        | redex                           | contractum                          |
//! |-------------|---------------------------------|-------------------------------------|
//! | `beta`      | `(\x.u v)`                      | `u[x:=v]`                           |
//! | `proj`      | `(<t1,t2> pi)`                  | `ti`                                |
//! | `case-inj`  | `(ini t [x1.u1, x2.u2])`        | `ui[xi:=t]`                         |
//! | `case-perm` | `((t [x1.u1, x2.u2]) e)`        | `(t [x1.(u1 e), x2.(u2 e)])`        |
//! | `mu-struct` | `(mu a.t e)`                    | `mu a.t[a:=* e]`                    |
//!
//! Reduction ignores annotations except for one repair: after `mu-struct`
//! the binder annotation of `mu a:A` is replaced by the type of `(_ e)` at
//! `A` when it can be computed (for a case bracket this needs the branch
//! types, hence the optional [`Scope`] of the surrounding declarations).
//! When it cannot, the annotation is dropped.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::syntax::{
    alpha_equal, canonical_key, fresh_name, mu_substitute, print_term, rename_lambda, rename_mu, substitute, Branch,
    ESequence, ETerm, Formula, Side, Term,
};
use crate::typing::{infer, Context, NameContext};

pub const DEFAULT_FUEL: usize = 10_000;
pub const DEFAULT_NODE_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleId {
    Beta,
    Proj,
    CaseInj,
    CasePerm,
    MuStruct,
}

impl RuleId {
    pub const ALL: [RuleId; 5] = [RuleId::Beta, RuleId::Proj, RuleId::CaseInj, RuleId::CasePerm, RuleId::MuStruct];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Beta => "beta",
            RuleId::Proj => "proj",
            RuleId::CaseInj => "case-inj",
            RuleId::CasePerm => "case-perm",
            RuleId::MuStruct => "mu-struct",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Path of child indices from the root.
///
/// Children: the body of `\x.`, `mu a.`, `[a]` and `ini` is 0; a pair has
/// 0 and 1; an application has its function at 0, and either its term
/// argument at 1 or its two case branches at 1 and 2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Position {
        Position(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    fn child(&self, i: usize) -> Position {
        let mut p = self.0.clone();
        p.push(i);
        Position(p)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

/// Declarations in force around a term, used only for annotation repair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Scope {
    pub gamma: Context,
    pub delta: NameContext,
}

impl Scope {
    pub fn new(gamma: Context, delta: NameContext) -> Scope {
        Scope { gamma, delta }
    }

    fn bind_lambda(&self, x: &str, ty: Option<&Formula>) -> Scope {
        let mut s = self.clone();
        match ty {
            Some(f) => s.gamma.insert(x, f.clone()),
            None => s.gamma.remove(x),
        }
        s
    }

    fn bind_mu(&self, a: &str, ty: Option<&Formula>) -> Scope {
        let mut s = self.clone();
        match ty {
            Some(f) => s.delta.insert(a, f.clone()),
            None => s.delta.remove(a),
        }
        s
    }

    fn type_of(&self, t: &Term) -> Option<Formula> {
        infer(&self.gamma, &self.delta, t).ok().map(|d| d.formula().clone())
    }

    fn case_scopes(&self, scrutinee: &Term, l: &Branch, r: &Branch) -> (Scope, Scope) {
        match self.type_of(scrutinee) {
            Some(Formula::Or(a, b)) => (self.bind_lambda(&l.var, Some(&a)), self.bind_lambda(&r.var, Some(&b))),
            _ => (self.bind_lambda(&l.var, None), self.bind_lambda(&r.var, None)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub before: Term,
    pub position: Position,
    pub rule: RuleId,
    pub after: Term,
}

impl ReductionStep {
    pub fn to_json(&self, index: usize) -> Value {
        json!({
            "index": index,
            "rule": self.rule.name(),
            "position": self.position.0,
            "before": print_term(&self.before),
            "after": print_term(&self.after),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub initial: Term,
    pub steps: Vec<ReductionStep>,
}

impl Trace {
    pub fn new(initial: Term) -> Trace {
        Trace { initial, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The last term of the trace.
    pub fn last(&self) -> &Term {
        self.steps.last().map(|s| &s.after).unwrap_or(&self.initial)
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            out.push_str(&s.to_json(i).to_string());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.steps.iter().enumerate().map(|(i, s)| s.to_json(i)).collect())
    }

    pub fn validate(&self) -> Result<(), String> {
        self.validate_in(&Scope::default())
    }

    /// Checks that steps chain and that each one is a genuine contraction.
    pub fn validate_in(&self, scope: &Scope) -> Result<(), String> {
        let mut current = &self.initial;
        for (i, s) in self.steps.iter().enumerate() {
            if !alpha_equal(current, &s.before) {
                return Err(format!("step {i}: does not start where the previous step ended"));
            }
            match subterm(&s.before, &s.position).and_then(redex_rule) {
                Some(r) if r == s.rule => {}
                _ => return Err(format!("step {i}: no {} redex at {}", s.rule, s.position)),
            }
            let after = contract_in(scope, &s.before, &s.position).map_err(|e| format!("step {i}: {e}"))?;
            if !alpha_equal(&after, &s.after) {
                return Err(format!("step {i}: contractum differs"));
            }
            current = &s.after;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("no redex at position {0}")]
    InvalidPosition(Position),
    #[error("fuel exhausted after {} steps", .0.len())]
    FuelExhausted(Trace),
}

/// Which rule, if any, has its left-hand side at the root of `t`.
pub fn redex_rule(t: &Term) -> Option<RuleId> {
    let Term::App(f, e) = t else { return None };
    match (&**f, &**e) {
        (Term::Abs(..), ETerm::Arg(_)) => Some(RuleId::Beta),
        (Term::Pair(..), ETerm::Proj(_)) => Some(RuleId::Proj),
        (Term::Inj(..), ETerm::Case(..)) => Some(RuleId::CaseInj),
        (Term::App(_, inner), _) if matches!(**inner, ETerm::Case(..)) => Some(RuleId::CasePerm),
        (Term::Mu(..), _) => Some(RuleId::MuStruct),
        _ => None,
    }
}

pub fn subterm<'t>(t: &'t Term, p: &Position) -> Option<&'t Term> {
    let mut cur = t;
    for &i in &p.0 {
        cur = match (cur, i) {
            (Term::Abs(_, _, b) | Term::Mu(_, _, b) | Term::Named(_, b) | Term::Inj(_, b, _), 0) => b,
            (Term::Pair(a, _), 0) => a,
            (Term::Pair(_, b), 1) => b,
            (Term::App(f, _), 0) => f,
            (Term::App(_, e), 1) => match &**e {
                ETerm::Arg(u) => u,
                ETerm::Case(l, _) => &l.body,
                ETerm::Proj(_) => return None,
            },
            (Term::App(_, e), 2) => match &**e {
                ETerm::Case(_, r) => &r.body,
                _ => return None,
            },
            _ => return None,
        };
    }
    Some(cur)
}

/// Every redex, in leftmost-outermost (pre-)order.
pub fn redexes(t: &Term) -> Vec<(Position, RuleId)> {
    let mut out = Vec::new();
    collect_redexes(t, Position::root(), &mut out);
    out
}

fn collect_redexes(t: &Term, here: Position, out: &mut Vec<(Position, RuleId)>) {
    if let Some(r) = redex_rule(t) {
        out.push((here.clone(), r));
    }
    match t {
        Term::Var(_) => {}
        Term::Abs(_, _, b) | Term::Mu(_, _, b) | Term::Named(_, b) | Term::Inj(_, b, _) => {
            collect_redexes(b, here.child(0), out)
        }
        Term::Pair(a, b) => {
            collect_redexes(a, here.child(0), out);
            collect_redexes(b, here.child(1), out);
        }
        Term::App(f, e) => {
            collect_redexes(f, here.child(0), out);
            match &**e {
                ETerm::Arg(u) => collect_redexes(u, here.child(1), out),
                ETerm::Proj(_) => {}
                ETerm::Case(l, r) => {
                    collect_redexes(&l.body, here.child(1), out);
                    collect_redexes(&r.body, here.child(2), out);
                }
            }
        }
    }
}

fn first_redex(t: &Term) -> Option<Position> {
    fn go(t: &Term, here: &mut Vec<usize>) -> bool {
        if redex_rule(t).is_some() {
            return true;
        }
        let children: Vec<(usize, &Term)> = match t {
            Term::Var(_) => vec![],
            Term::Abs(_, _, b) | Term::Mu(_, _, b) | Term::Named(_, b) | Term::Inj(_, b, _) => vec![(0, b)],
            Term::Pair(a, b) => vec![(0, a), (1, b)],
            Term::App(f, e) => {
                let mut c = vec![(0, &**f)];
                match &**e {
                    ETerm::Arg(u) => c.push((1, u)),
                    ETerm::Proj(_) => {}
                    ETerm::Case(l, r) => {
                        c.push((1, &l.body));
                        c.push((2, &r.body));
                    }
                }
                c
            }
        };
        for (i, c) in children {
            here.push(i);
            if go(c, here) {
                return true;
            }
            here.pop();
        }
        false
    }
    let mut path = Vec::new();
    go(t, &mut path).then_some(Position(path))
}

/// Contracts the redex at `p`.
pub fn contract(t: &Term, p: &Position) -> Result<Term, ReductionError> {
    contract_in(&Scope::default(), t, p)
}

/// As [`contract`], with the declarations for the free variables of `t`.
pub fn contract_in(scope: &Scope, t: &Term, p: &Position) -> Result<Term, ReductionError> {
    contract_at(scope, t, &p.0).ok_or_else(|| ReductionError::InvalidPosition(p.clone()))
}

fn contract_at(scope: &Scope, t: &Term, path: &[usize]) -> Option<Term> {
    let Some((&i, rest)) = path.split_first() else {
        return contract_root(scope, t);
    };
    Some(match (t, i) {
        (Term::Abs(x, ann, b), 0) => Term::abs(x.clone(), ann.clone(), contract_at(&scope.bind_lambda(x, ann.as_ref()), b, rest)?),
        (Term::Mu(a, ann, b), 0) => Term::mu(a.clone(), ann.clone(), contract_at(&scope.bind_mu(a, ann.as_ref()), b, rest)?),
        (Term::Named(a, b), 0) => Term::named(a.clone(), contract_at(scope, b, rest)?),
        (Term::Inj(s, b, ann), 0) => Term::inj(*s, contract_at(scope, b, rest)?, ann.clone()),
        (Term::Pair(a, b), 0) => Term::pair(contract_at(scope, a, rest)?, (**b).clone()),
        (Term::Pair(a, b), 1) => Term::pair((**a).clone(), contract_at(scope, b, rest)?),
        (Term::App(f, e), 0) => Term::app(contract_at(scope, f, rest)?, (**e).clone()),
        (Term::App(f, e), 1 | 2) => match &**e {
            ETerm::Arg(u) if i == 1 => Term::apply((**f).clone(), contract_at(scope, u, rest)?),
            ETerm::Case(l, r) => {
                let (sl, sr) = scope.case_scopes(f, l, r);
                let (l, r) = if i == 1 {
                    (Branch::new(l.var.clone(), contract_at(&sl, &l.body, rest)?), r.clone())
                } else {
                    (l.clone(), Branch::new(r.var.clone(), contract_at(&sr, &r.body, rest)?))
                };
                Term::app((**f).clone(), ETerm::Case(l, r))
            }
            _ => return None,
        },
        _ => return None,
    })
}

fn contract_root(scope: &Scope, t: &Term) -> Option<Term> {
    let Term::App(f, e) = t else { return None };
    match (&**f, &**e) {
        (Term::Abs(x, _, body), ETerm::Arg(v)) => Some(substitute(body, x, v)),
        (Term::Pair(a, b), ETerm::Proj(side)) => Some(match side {
            Side::Left => (**a).clone(),
            Side::Right => (**b).clone(),
        }),
        (Term::Inj(side, u, _), ETerm::Case(l, r)) => {
            let br = if *side == Side::Left { l } else { r };
            Some(substitute(&br.body, &br.var, u))
        }
        (Term::App(scrutinee, inner), eps) => {
            let ETerm::Case(l, r) = &**inner else { return None };
            let push = |br: &Branch| {
                let (var, body) = if eps.has_free_lambda(&br.var) {
                    let mut avoid = br.body.all_names();
                    avoid.extend(eps.all_names());
                    let v2 = fresh_name(&br.var, &avoid);
                    let body = rename_lambda(&br.body, &br.var, &v2);
                    (v2, body)
                } else {
                    (br.var.clone(), br.body.clone())
                };
                Branch::new(var, Term::app(body, eps.clone()))
            };
            Some(Term::app((**scrutinee).clone(), ETerm::Case(push(l), push(r))))
        }
        (Term::Mu(a, ann, body), eps) => {
            let new_ann = ann.as_ref().and_then(|ty| eliminated_type(scope, ty, eps));
            let (a, body) = if eps.has_free_mu(a) {
                let mut avoid = body.all_names();
                avoid.extend(eps.all_names());
                let a2 = fresh_name(a, &avoid);
                let body = rename_mu(body, a, &a2);
                (a2, body)
            } else {
                (a.clone(), (**body).clone())
            };
            let body = mu_substitute(&body, &a, &ESequence::single(eps.clone()));
            Some(Term::mu(a, new_ann, body))
        }
        _ => None,
    }
}

/// The type of `(s e)` when `s : ty`.
fn eliminated_type(scope: &Scope, ty: &Formula, e: &ETerm) -> Option<Formula> {
    match (ty, e) {
        (Formula::Arrow(_, b), ETerm::Arg(_)) => Some((**b).clone()),
        (Formula::And(a, _), ETerm::Proj(Side::Left)) => Some((**a).clone()),
        (Formula::And(_, b), ETerm::Proj(Side::Right)) => Some((**b).clone()),
        (Formula::Or(a, b), ETerm::Case(l, r)) => scope
            .bind_lambda(&l.var, Some(a))
            .type_of(&l.body)
            .or_else(|| scope.bind_lambda(&r.var, Some(b)).type_of(&r.body)),
        _ => None,
    }
}

/// One-step reducts, one per redex, in leftmost-outermost order.
pub fn successors(t: &Term) -> Vec<Term> {
    successors_in(&Scope::default(), t)
}

pub fn successors_in(scope: &Scope, t: &Term) -> Vec<Term> {
    steps_in(scope, t).into_iter().map(|s| s.after).collect()
}

/// All one-step reductions of `t`.
pub fn steps_in(scope: &Scope, t: &Term) -> Vec<ReductionStep> {
    redexes(t)
        .into_iter()
        .map(|(position, rule)| {
            let after = contract_in(scope, t, &position).expect("redexes() reports contractible positions");
            ReductionStep { before: t.clone(), position, rule, after }
        })
        .collect()
}

/// Leftmost-outermost normalization with a step budget.
pub fn normalize(t: &Term, fuel: usize) -> Result<(Term, Trace), ReductionError> {
    normalize_in(&Scope::default(), t, fuel)
}

pub fn normalize_in(scope: &Scope, t: &Term, fuel: usize) -> Result<(Term, Trace), ReductionError> {
    let mut trace = Trace::new(t.clone());
    let mut current = t.clone();
    while let Some(position) = first_redex(&current) {
        if trace.steps.len() == fuel {
            return Err(ReductionError::FuelExhausted(trace));
        }
        let rule = subterm(&current, &position).and_then(redex_rule).expect("first_redex points at a redex");
        let after = contract_in(scope, &current, &position)?;
        trace.steps.push(ReductionStep { before: current, position, rule, after: after.clone() });
        current = after;
    }
    Ok((current, trace))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub position: Position,
    pub rule: RuleId,
}

/// Reduction graph over alpha-canonical nodes, built breadth-first.
#[derive(Clone, Debug)]
pub struct ReductionGraph {
    pub nodes: Vec<Term>,
    pub edges: Vec<Edge>,
    /// True iff every node was expanded and none was dropped by the cap.
    pub complete: bool,
    /// Edge through which each node was first discovered.
    parent: Vec<Option<usize>>,
    index: HashMap<String, usize>,
}

#[derive(Clone, Debug, Error)]
#[error("node cap exceeded after {} nodes", .partial.nodes.len())]
pub struct CapExceeded {
    pub partial: Box<ReductionGraph>,
}

/// Levels at least this wide are expanded in parallel.
const PARALLEL_LEVEL: usize = 16;

impl ReductionGraph {
    fn empty() -> ReductionGraph {
        ReductionGraph { nodes: Vec::new(), edges: Vec::new(), complete: false, parent: Vec::new(), index: HashMap::new() }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> &Term {
        &self.nodes[0]
    }

    pub fn find(&self, t: &Term) -> Option<usize> {
        self.index.get(&canonical_key(t)).copied()
    }

    pub fn step(&self, edge: &Edge) -> ReductionStep {
        ReductionStep {
            before: self.nodes[edge.source].clone(),
            position: edge.position.clone(),
            rule: edge.rule,
            after: self.nodes[edge.target].clone(),
        }
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.source].push(e.target);
        }
        adj
    }

    /// Nodes without outgoing edges.
    pub fn sinks(&self) -> Vec<usize> {
        let adj = self.adjacency();
        (0..self.nodes.len()).filter(|&i| adj[i].is_empty()).collect()
    }

    /// The breadth-first discovery path from the root to `node`.
    pub fn trace_to(&self, node: usize) -> Trace {
        let mut steps = Vec::new();
        let mut cur = node;
        while let Some(e) = self.parent[cur] {
            steps.push(self.step(&self.edges[e]));
            cur = self.edges[e].source;
        }
        steps.reverse();
        Trace { initial: self.nodes[0].clone(), steps }
    }

    /// A topological order, or `None` if the graph has a cycle (self-loops
    /// included).
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.nodes.len();
        let adj = self.adjacency();
        let mut indegree = vec![0usize; n];
        for e in &self.edges {
            indegree[e.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for &j in &adj[i] {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    queue.push_back(j);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Length of the longest reduction path from the root; `None` on a
    /// cyclic graph.
    pub fn longest_path(&self) -> Option<usize> {
        let order = self.topological_order()?;
        let adj = self.adjacency();
        let mut longest = vec![0usize; self.nodes.len()];
        for &i in order.iter().rev() {
            longest[i] = adj[i].iter().map(|&j| longest[j] + 1).max().unwrap_or(0);
        }
        Some(longest[0])
    }

    /// For every node, the set of nodes reachable from it (itself included).
    pub fn reachability(&self) -> Vec<BitSet> {
        let n = self.nodes.len();
        let adj = self.adjacency();
        if let Some(order) = self.topological_order() {
            let mut reach = vec![BitSet::new(n); n];
            for &i in order.iter().rev() {
                let mut r = BitSet::new(n);
                r.insert(i);
                for &j in &adj[i] {
                    r.union_with(&reach[j]);
                }
                reach[i] = r;
            }
            reach
        } else {
            (0..n)
                .map(|start| {
                    let mut r = BitSet::new(n);
                    let mut stack = vec![start];
                    r.insert(start);
                    while let Some(i) = stack.pop() {
                        for &j in &adj[i] {
                            if r.insert(j) {
                                stack.push(j);
                            }
                        }
                    }
                    r
                })
                .collect()
        }
    }

    /// `{nodes: [{id, term}], edges: [{source, target, rule, position}], complete}`
    pub fn to_json(&self) -> Value {
        json!({
            "nodes": self.nodes.iter().enumerate().map(|(i, t)| json!({"id": i, "term": print_term(t)})).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "source": e.source,
                "target": e.target,
                "rule": e.rule.name(),
                "position": e.position.0,
            })).collect::<Vec<_>>(),
            "complete": self.complete,
        })
    }

    /// Graphviz rendering.
    pub fn to_dot(&self) -> String {
        let esc = |s: String| s.replace('\\', "\\\\").replace('"', "\\\"");
        let mut out = String::from("digraph reduction {\n  node [shape=box, fontname=\"monospace\"];\n");
        for (i, t) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", esc(print_term(t))));
        }
        for e in &self.edges {
            out.push_str(&format!("  n{} -> n{} [label=\"{} @ {}\"];\n", e.source, e.target, e.rule, e.position));
        }
        out.push_str("}\n");
        out
    }
}

/// Fixed-size bit set over node indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSet(Vec<u64>);

impl BitSet {
    pub fn new(n: usize) -> BitSet {
        BitSet(vec![0; n.div_ceil(64)])
    }

    /// Returns true if `i` was not already present.
    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.0[w] & b == 0;
        self.0[w] |= b;
        fresh
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }
}

/// Breadth-first exploration. `visit` sees every newly discovered node in
/// discovery order and may stop the search by returning true; the index of
/// that node is returned alongside the (then incomplete) graph.
pub fn explore<F>(scope: &Scope, t: &Term, node_cap: usize, mut visit: F) -> (ReductionGraph, Option<usize>)
where
    F: FnMut(usize, &Term) -> bool,
{
    let mut g = ReductionGraph::empty();
    let cap = node_cap.max(1);
    g.index.insert(canonical_key(t), 0);
    g.nodes.push(t.clone());
    g.parent.push(None);
    if visit(0, t) {
        return (g, Some(0));
    }
    let mut level = vec![0usize];
    while !level.is_empty() {
        let expand = |&i: &usize| steps_in(scope, &g.nodes[i]);
        let expanded: Vec<Vec<ReductionStep>> = if level.len() >= PARALLEL_LEVEL {
            level.par_iter().map(expand).collect()
        } else {
            level.iter().map(expand).collect()
        };
        let mut next = Vec::new();
        for (&source, steps) in level.iter().zip(expanded) {
            for s in steps {
                let key = canonical_key(&s.after);
                let target = match g.index.get(&key) {
                    Some(&j) => j,
                    None => {
                        if g.nodes.len() >= cap {
                            g.complete = false;
                            return (g, None);
                        }
                        let j = g.nodes.len();
                        g.index.insert(key, j);
                        g.nodes.push(s.after.clone());
                        g.parent.push(Some(g.edges.len()));
                        next.push(j);
                        g.edges.push(Edge { source, target: j, position: s.position, rule: s.rule });
                        if visit(j, &g.nodes[j]) {
                            return (g, Some(j));
                        }
                        continue;
                    }
                };
                g.edges.push(Edge { source, target, position: s.position, rule: s.rule });
            }
        }
        level = next;
    }
    g.complete = true;
    (g, None)
}

/// The full reduction graph of `t`, or the partial graph if more than
/// `node_cap` distinct terms are reachable.
pub fn reduction_graph(t: &Term, node_cap: usize) -> Result<ReductionGraph, CapExceeded> {
    reduction_graph_in(&Scope::default(), t, node_cap)
}

pub fn reduction_graph_in(scope: &Scope, t: &Term, node_cap: usize) -> Result<ReductionGraph, CapExceeded> {
    let (g, _) = explore(scope, t, node_cap, |_, _| false);
    if g.complete {
        Ok(g)
    } else {
        Err(CapExceeded { partial: Box::new(g) })
    }
}
