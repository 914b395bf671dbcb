//! Proof terms and E-terms.
//!
//! λ-variables and μ-variables live in separate namespaces: a λ-variable
//! only ever appears in `Var`, `Abs` and case branches, a μ-variable only in
//! `Mu` and `Named`.

use std::collections::BTreeSet;

use super::formula::Formula;

/// Selects the first or second component of a pair, injection or case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn index(self) -> usize {
        match self {
            Side::Left => 1,
            Side::Right => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    /// `\x:A. t`; the annotation is the argument type.
    Abs(String, Option<Formula>, Box<Term>),
    App(Box<Term>, Box<ETerm>),
    Pair(Box<Term>, Box<Term>),
    /// `in1{B} t` / `in2{A} t`; the annotation is the other disjunct.
    Inj(Side, Box<Term>, Option<Formula>),
    /// `mu a:A. t`; the annotation is the type of `a` and of the whole term.
    Mu(String, Option<Formula>, Box<Term>),
    /// `[a] t`, the named term `(a t)`.
    Named(String, Box<Term>),
}

/// One arm `x.u` of a case bracket.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Branch {
    pub var: String,
    pub body: Term,
}

impl Branch {
    pub fn new(var: impl Into<String>, body: Term) -> Branch {
        Branch { var: var.into(), body }
    }
}

/// The things a term can be applied to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ETerm {
    Arg(Term),
    Proj(Side),
    Case(Branch, Branch),
}

/// A finite sequence of E-terms, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ESequence(pub Vec<ETerm>);

impl ESequence {
    pub fn new(items: Vec<ETerm>) -> ESequence {
        ESequence(items)
    }

    pub fn empty() -> ESequence {
        ESequence(Vec::new())
    }

    /// A sequence of plain term arguments.
    pub fn of_terms(terms: impl IntoIterator<Item = Term>) -> ESequence {
        ESequence(terms.into_iter().map(ETerm::Arg).collect())
    }

    pub fn single(e: ETerm) -> ESequence {
        ESequence(vec![e])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ETerm> {
        self.0.iter()
    }

    /// `(t w1 ... wn)`; the identity when empty.
    pub fn apply_to(&self, t: Term) -> Term {
        self.0.iter().fold(t, |acc, e| Term::app(acc, e.clone()))
    }

    pub fn free_variables(&self) -> FreeVars {
        let mut fv = FreeVars::default();
        for e in &self.0 {
            e.collect_free(&mut Scope::default(), &mut fv);
        }
        fv
    }
}

/// Free λ-variables and free μ-variables of a term.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeVars {
    pub lambda: BTreeSet<String>,
    pub mu: BTreeSet<String>,
}

impl FreeVars {
    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty() && self.mu.is_empty()
    }

    pub fn extend(&mut self, other: FreeVars) {
        self.lambda.extend(other.lambda);
        self.mu.extend(other.mu);
    }
}

#[derive(Default)]
struct Scope {
    lambda: Vec<String>,
    mu: Vec<String>,
}

impl Term {
    pub fn var(x: impl Into<String>) -> Term {
        Term::Var(x.into())
    }

    pub fn abs(x: impl Into<String>, ann: Option<Formula>, body: Term) -> Term {
        Term::Abs(x.into(), ann, Box::new(body))
    }

    pub fn app(f: Term, e: ETerm) -> Term {
        Term::App(Box::new(f), Box::new(e))
    }

    /// Application to a plain term argument.
    pub fn apply(f: Term, arg: Term) -> Term {
        Term::app(f, ETerm::Arg(arg))
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Box::new(a), Box::new(b))
    }

    pub fn inj(side: Side, t: Term, ann: Option<Formula>) -> Term {
        Term::Inj(side, Box::new(t), ann)
    }

    pub fn mu(a: impl Into<String>, ann: Option<Formula>, body: Term) -> Term {
        Term::Mu(a.into(), ann, Box::new(body))
    }

    pub fn named(a: impl Into<String>, t: Term) -> Term {
        Term::Named(a.into(), Box::new(t))
    }

    pub fn case(self, x1: impl Into<String>, u1: Term, x2: impl Into<String>, u2: Term) -> Term {
        Term::app(self, ETerm::Case(Branch::new(x1, u1), Branch::new(x2, u2)))
    }

    /// Number of term and E-term constructor nodes; annotations are not
    /// counted and `Arg` is transparent.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Abs(_, _, b) | Term::Mu(_, _, b) | Term::Named(_, b) | Term::Inj(_, b, _) => 1 + b.size(),
            Term::App(f, e) => 1 + f.size() + e.size(),
            Term::Pair(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn free_variables(&self) -> FreeVars {
        let mut fv = FreeVars::default();
        self.collect_free(&mut Scope::default(), &mut fv);
        fv
    }

    pub fn is_closed(&self) -> bool {
        self.free_variables().is_empty()
    }

    fn collect_free(&self, scope: &mut Scope, fv: &mut FreeVars) {
        match self {
            Term::Var(x) => {
                if !scope.lambda.contains(x) {
                    fv.lambda.insert(x.clone());
                }
            }
            Term::Abs(x, _, body) => {
                scope.lambda.push(x.clone());
                body.collect_free(scope, fv);
                scope.lambda.pop();
            }
            Term::App(f, e) => {
                f.collect_free(scope, fv);
                e.collect_free(scope, fv);
            }
            Term::Pair(a, b) => {
                a.collect_free(scope, fv);
                b.collect_free(scope, fv);
            }
            Term::Inj(_, t, _) => t.collect_free(scope, fv),
            Term::Mu(a, _, body) => {
                scope.mu.push(a.clone());
                body.collect_free(scope, fv);
                scope.mu.pop();
            }
            Term::Named(a, t) => {
                if !scope.mu.contains(a) {
                    fv.mu.insert(a.clone());
                }
                t.collect_free(scope, fv);
            }
        }
    }

    pub fn has_free_lambda(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => y == x,
            Term::Abs(y, _, body) => y != x && body.has_free_lambda(x),
            Term::App(f, e) => f.has_free_lambda(x) || e.has_free_lambda(x),
            Term::Pair(a, b) => a.has_free_lambda(x) || b.has_free_lambda(x),
            Term::Inj(_, t, _) | Term::Mu(_, _, t) | Term::Named(_, t) => t.has_free_lambda(x),
        }
    }

    pub fn has_free_mu(&self, a: &str) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Abs(_, _, t) | Term::Inj(_, t, _) => t.has_free_mu(a),
            Term::App(f, e) => f.has_free_mu(a) || e.has_free_mu(a),
            Term::Pair(l, r) => l.has_free_mu(a) || r.has_free_mu(a),
            Term::Mu(b, _, body) => b != a && body.has_free_mu(a),
            Term::Named(b, t) => b == a || t.has_free_mu(a),
        }
    }

    /// Every identifier occurring anywhere in the term, bound or free, in
    /// either namespace.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    pub(crate) fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Abs(x, _, t) | Term::Mu(x, _, t) | Term::Named(x, t) => {
                out.insert(x.clone());
                t.collect_names(out);
            }
            Term::App(f, e) => {
                f.collect_names(out);
                e.collect_names(out);
            }
            Term::Pair(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Term::Inj(_, t, _) => t.collect_names(out),
        }
    }

    /// Splits `(((h e1) e2) ... en)` into `h` and `[e1, ..., en]`.
    pub fn spine(&self) -> (&Term, Vec<&ETerm>) {
        let mut head = self;
        let mut args = Vec::new();
        while let Term::App(f, e) = head {
            args.push(&**e);
            head = f;
        }
        args.reverse();
        (head, args)
    }
}

impl ETerm {
    pub fn size(&self) -> usize {
        match self {
            ETerm::Arg(t) => t.size(),
            ETerm::Proj(_) => 1,
            ETerm::Case(l, r) => 1 + l.body.size() + r.body.size(),
        }
    }

    fn collect_free(&self, scope: &mut Scope, fv: &mut FreeVars) {
        match self {
            ETerm::Arg(t) => t.collect_free(scope, fv),
            ETerm::Proj(_) => {}
            ETerm::Case(l, r) => {
                for br in [l, r] {
                    scope.lambda.push(br.var.clone());
                    br.body.collect_free(scope, fv);
                    scope.lambda.pop();
                }
            }
        }
    }

    pub fn free_variables(&self) -> FreeVars {
        let mut fv = FreeVars::default();
        self.collect_free(&mut Scope::default(), &mut fv);
        fv
    }

    pub fn has_free_lambda(&self, x: &str) -> bool {
        match self {
            ETerm::Arg(t) => t.has_free_lambda(x),
            ETerm::Proj(_) => false,
            ETerm::Case(l, r) => {
                (l.var != x && l.body.has_free_lambda(x)) || (r.var != x && r.body.has_free_lambda(x))
            }
        }
    }

    pub fn has_free_mu(&self, a: &str) -> bool {
        match self {
            ETerm::Arg(t) => t.has_free_mu(a),
            ETerm::Proj(_) => false,
            ETerm::Case(l, r) => l.body.has_free_mu(a) || r.body.has_free_mu(a),
        }
    }

    pub(crate) fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            ETerm::Arg(t) => t.collect_names(out),
            ETerm::Proj(_) => {}
            ETerm::Case(l, r) => {
                for br in [l, r] {
                    out.insert(br.var.clone());
                    br.body.collect_names(out);
                }
            }
        }
    }

    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }
}
