//! Contexts, judgments and a syntax-directed checker for the eleven typing
//! rules. Binders carry Church-style annotations: `\x:A.` gives the argument
//! type, `mu a:A.` the type of `a`, and `in1{B}`/`in2{A}` the other disjunct.
//! Case branches are unannotated; their binder types come from the
//! scrutinee.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::syntax::{print_term, Branch, ETerm, Formula, Side, Term};

macro_rules! declarations {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
        pub struct $name(BTreeMap<String, Formula>);

        impl $name {
            pub fn new() -> Self {
                Self::default()
            }

            pub fn get(&self, name: &str) -> Option<&Formula> {
                self.0.get(name)
            }

            /// Binds `name`, replacing any earlier binding.
            pub fn insert(&mut self, name: impl Into<String>, f: Formula) {
                self.0.insert(name.into(), f);
            }

            pub fn remove(&mut self, name: &str) {
                self.0.remove(name);
            }

            pub fn with(&self, name: impl Into<String>, f: Formula) -> Self {
                let mut c = self.clone();
                c.insert(name, f);
                c
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn iter(&self) -> impl Iterator<Item = (&String, &Formula)> {
                self.0.iter()
            }

            fn to_json(&self) -> Value {
                Value::Object(self.0.iter().map(|(k, v)| (k.clone(), Value::String(v.to_string()))).collect())
            }
        }

        impl<S: Into<String>> FromIterator<(S, Formula)> for $name {
            fn from_iter<I: IntoIterator<Item = (S, Formula)>>(iter: I) -> Self {
                $name(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for (i, (k, v)) in self.0.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{k}:{v}")?;
                }
                Ok(())
            }
        }
    };
}

declarations!(
    /// Declarations `x : A` of λ-variables.
    Context
);
declarations!(
    /// Declarations `a : A` of μ-variables.
    NameContext
);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Ax,
    ArrowI,
    ArrowE,
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    OrE,
    AbsI,
    AbsE,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Ax => "ax",
            Rule::ArrowI => "arrow-i",
            Rule::ArrowE => "arrow-e",
            Rule::AndI => "and-i",
            Rule::AndE1 => "and-e1",
            Rule::AndE2 => "and-e2",
            Rule::OrI1 => "or-i1",
            Rule::OrI2 => "or-i2",
            Rule::OrE => "or-e",
            Rule::AbsI => "abs-i",
            Rule::AbsE => "abs-e",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `gamma |- term : formula ; delta`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgment {
    pub gamma: Context,
    pub term: Term,
    pub formula: Formula,
    pub delta: NameContext,
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.gamma.is_empty() {
            write!(f, "{} ", self.gamma)?;
        }
        write!(f, "|- {} : {}", print_term(&self.term), self.formula)?;
        if !self.delta.is_empty() {
            write!(f, " ; {}", self.delta)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: Rule,
    pub conclusion: Judgment,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn formula(&self) -> &Formula {
        &self.conclusion.formula
    }

    /// Number of rule instances in the tree.
    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(Derivation::node_count).sum::<usize>()
    }

    /// Every judgment in the tree, root first.
    pub fn judgments(&self) -> Vec<&Judgment> {
        let mut out = vec![&self.conclusion];
        for p in &self.premises {
            out.extend(p.judgments());
        }
        out
    }

    /// `{rule, judgment: {gamma, term, formula, delta}, premises: [...]}`
    pub fn to_json(&self) -> Value {
        let j = &self.conclusion;
        json!({
            "rule": self.rule.name(),
            "judgment": {
                "gamma": j.gamma.to_json(),
                "term": print_term(&j.term),
                "formula": j.formula.to_string(),
                "delta": j.delta.to_json(),
            },
            "premises": self.premises.iter().map(Derivation::to_json).collect::<Vec<_>>(),
        })
    }

    fn write_tree(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        writeln!(f, "{:indent$}[{}] {}", "", self.rule, self.conclusion, indent = depth * 2)?;
        for p in &self.premises {
            p.write_tree(f, depth + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_tree(f, 0)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TypeError {
    #[error("unbound λ-variable `{0}`")]
    UnboundVariable(String),
    #[error("unbound μ-variable `{0}`")]
    UnboundName(String),
    #[error("missing annotation on `{}`", print_term(.0))]
    MissingAnnotation(Term),
    #[error("{rule}: `{}` has type {found}, expected {expected}", print_term(term))]
    Mismatch { term: Term, rule: Rule, expected: Formula, found: Formula },
    #[error("{rule}: `{}` has type {found}, expected {shape}", print_term(term))]
    WrongShape { term: Term, rule: Rule, shape: &'static str, found: Formula },
    #[error("expected type {expected}, found {found}")]
    Expected { expected: Formula, found: Formula },
}

fn judgment(gamma: &Context, delta: &NameContext, t: &Term, a: Formula) -> Judgment {
    Judgment { gamma: gamma.clone(), term: t.clone(), formula: a, delta: delta.clone() }
}

/// Infers the unique type of `t` and returns its derivation.
pub fn infer(gamma: &Context, delta: &NameContext, t: &Term) -> Result<Derivation, TypeError> {
    let node = |rule, a: Formula, premises| Derivation { rule, conclusion: judgment(gamma, delta, t, a), premises };
    match t {
        Term::Var(x) => {
            let a = gamma.get(x).ok_or_else(|| TypeError::UnboundVariable(x.clone()))?;
            Ok(node(Rule::Ax, a.clone(), vec![]))
        }
        Term::Abs(x, ann, body) => {
            let a = ann.as_ref().ok_or_else(|| TypeError::MissingAnnotation(t.clone()))?;
            let d = infer(&gamma.with(x.clone(), a.clone()), delta, body)?;
            Ok(node(Rule::ArrowI, Formula::arrow(a.clone(), d.formula().clone()), vec![d]))
        }
        Term::App(f, e) => {
            let df = infer(gamma, delta, f)?;
            match &**e {
                ETerm::Arg(u) => {
                    let Formula::Arrow(a, b) = df.formula().clone() else {
                        return Err(wrong_shape(f, Rule::ArrowE, "an implication", df.formula()));
                    };
                    let du = infer(gamma, delta, u)?;
                    expect_formula(u, Rule::ArrowE, &a, du.formula())?;
                    Ok(node(Rule::ArrowE, *b, vec![df, du]))
                }
                ETerm::Proj(side) => {
                    let Formula::And(a, b) = df.formula().clone() else {
                        return Err(wrong_shape(f, Rule::AndE1, "a conjunction", df.formula()));
                    };
                    match side {
                        Side::Left => Ok(node(Rule::AndE1, *a, vec![df])),
                        Side::Right => Ok(node(Rule::AndE2, *b, vec![df])),
                    }
                }
                ETerm::Case(l, r) => {
                    let Formula::Or(a, b) = df.formula().clone() else {
                        return Err(wrong_shape(f, Rule::OrE, "a disjunction", df.formula()));
                    };
                    let dl = infer(&gamma.with(l.var.clone(), *a), delta, &l.body)?;
                    let dr = infer(&gamma.with(r.var.clone(), *b), delta, &r.body)?;
                    expect_formula(&r.body, Rule::OrE, dl.formula(), dr.formula())?;
                    let c = dl.formula().clone();
                    Ok(node(Rule::OrE, c, vec![df, dl, dr]))
                }
            }
        }
        Term::Pair(l, r) => {
            let dl = infer(gamma, delta, l)?;
            let dr = infer(gamma, delta, r)?;
            let a = Formula::and(dl.formula().clone(), dr.formula().clone());
            Ok(node(Rule::AndI, a, vec![dl, dr]))
        }
        Term::Inj(side, u, ann) => {
            let other = ann.as_ref().ok_or_else(|| TypeError::MissingAnnotation(t.clone()))?;
            let du = infer(gamma, delta, u)?;
            let (rule, a) = match side {
                Side::Left => (Rule::OrI1, Formula::or(du.formula().clone(), other.clone())),
                Side::Right => (Rule::OrI2, Formula::or(other.clone(), du.formula().clone())),
            };
            Ok(node(rule, a, vec![du]))
        }
        Term::Mu(a, ann, body) => {
            let ty = ann.as_ref().ok_or_else(|| TypeError::MissingAnnotation(t.clone()))?;
            let d = infer(gamma, &delta.with(a.clone(), ty.clone()), body)?;
            expect_formula(body, Rule::AbsE, &Formula::Bottom, d.formula())?;
            Ok(node(Rule::AbsE, ty.clone(), vec![d]))
        }
        Term::Named(a, u) => {
            let ty = delta.get(a).ok_or_else(|| TypeError::UnboundName(a.clone()))?;
            let d = infer(gamma, delta, u)?;
            expect_formula(u, Rule::AbsI, ty, d.formula())?;
            Ok(node(Rule::AbsI, Formula::Bottom, vec![d]))
        }
    }
}

fn wrong_shape(t: &Term, rule: Rule, shape: &'static str, found: &Formula) -> TypeError {
    TypeError::WrongShape { term: t.clone(), rule, shape, found: found.clone() }
}

fn expect_formula(t: &Term, rule: Rule, expected: &Formula, found: &Formula) -> Result<(), TypeError> {
    if expected == found {
        Ok(())
    } else {
        Err(TypeError::Mismatch { term: t.clone(), rule, expected: expected.clone(), found: found.clone() })
    }
}

/// Succeeds iff `infer` succeeds with exactly `a`.
pub fn check(gamma: &Context, delta: &NameContext, t: &Term, a: &Formula) -> Result<Derivation, TypeError> {
    let d = infer(gamma, delta, t)?;
    if d.formula() == a {
        Ok(d)
    } else {
        Err(TypeError::Expected { expected: a.clone(), found: d.formula().clone() })
    }
}

/// Strips every annotation.
pub fn erase(t: &Term) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Abs(x, _, body) => Term::abs(x.clone(), None, erase(body)),
        Term::App(f, e) => Term::app(erase(f), erase_eterm(e)),
        Term::Pair(a, b) => Term::pair(erase(a), erase(b)),
        Term::Inj(side, u, _) => Term::inj(*side, erase(u), None),
        Term::Mu(a, _, body) => Term::mu(a.clone(), None, erase(body)),
        Term::Named(a, u) => Term::named(a.clone(), erase(u)),
    }
}

pub fn erase_eterm(e: &ETerm) -> ETerm {
    match e {
        ETerm::Arg(t) => ETerm::Arg(erase(t)),
        ETerm::Proj(s) => ETerm::Proj(*s),
        ETerm::Case(l, r) => ETerm::Case(Branch::new(l.var.clone(), erase(&l.body)), Branch::new(r.var.clone(), erase(&r.body))),
    }
}

/// Re-checks every node of a derivation against its rule schema, looking
/// only at the node and its immediate premises.
pub fn validate(d: &Derivation) -> Result<(), String> {
    let j = &d.conclusion;
    let fail = |why: &str| Err(format!("{} at `{}`: {why}", d.rule, print_term(&j.term)));
    let arity = match d.rule {
        Rule::Ax => 0,
        Rule::ArrowE | Rule::AndI => 2,
        Rule::OrE => 3,
        _ => 1,
    };
    if d.premises.len() != arity {
        return fail("wrong number of premises");
    }
    let p = |i: usize| &d.premises[i].conclusion;
    let same_ctx = |q: &Judgment| q.gamma == j.gamma && q.delta == j.delta;
    let ok = match (d.rule, &j.term) {
        (Rule::Ax, Term::Var(x)) => j.gamma.get(x) == Some(&j.formula),
        (Rule::ArrowI, Term::Abs(x, _, body)) => match &j.formula {
            Formula::Arrow(a, b) => {
                p(0).term == **body && p(0).formula == **b && p(0).delta == j.delta && p(0).gamma == j.gamma.with(x.clone(), (**a).clone())
            }
            _ => false,
        },
        (Rule::ArrowE, Term::App(f, e)) => match &**e {
            ETerm::Arg(u) => {
                same_ctx(p(0))
                    && same_ctx(p(1))
                    && p(0).term == **f
                    && p(1).term == *u
                    && p(0).formula == Formula::arrow(p(1).formula.clone(), j.formula.clone())
            }
            _ => false,
        },
        (Rule::AndI, Term::Pair(a, b)) => {
            same_ctx(p(0))
                && same_ctx(p(1))
                && p(0).term == **a
                && p(1).term == **b
                && j.formula == Formula::and(p(0).formula.clone(), p(1).formula.clone())
        }
        (Rule::AndE1 | Rule::AndE2, Term::App(f, e)) => {
            let side = if d.rule == Rule::AndE1 { Side::Left } else { Side::Right };
            match (&**e, &p(0).formula) {
                (ETerm::Proj(s), Formula::And(a, b)) if *s == side => {
                    let want = if side == Side::Left { a } else { b };
                    same_ctx(p(0)) && p(0).term == **f && j.formula == **want
                }
                _ => false,
            }
        }
        (Rule::OrI1 | Rule::OrI2, Term::Inj(s, u, _)) => {
            let side = if d.rule == Rule::OrI1 { Side::Left } else { Side::Right };
            match &j.formula {
                Formula::Or(a, b) => {
                    let want = if side == Side::Left { a } else { b };
                    *s == side && same_ctx(p(0)) && p(0).term == **u && p(0).formula == **want
                }
                _ => false,
            }
        }
        (Rule::OrE, Term::App(f, e)) => match (&**e, &p(0).formula) {
            (ETerm::Case(l, r), Formula::Or(a, b)) => {
                same_ctx(p(0))
                    && p(0).term == **f
                    && p(1).term == l.body
                    && p(2).term == r.body
                    && p(1).gamma == j.gamma.with(l.var.clone(), (**a).clone())
                    && p(2).gamma == j.gamma.with(r.var.clone(), (**b).clone())
                    && p(1).delta == j.delta
                    && p(2).delta == j.delta
                    && p(1).formula == j.formula
                    && p(2).formula == j.formula
            }
            _ => false,
        },
        (Rule::AbsI, Term::Named(a, u)) => {
            j.formula == Formula::Bottom && same_ctx(p(0)) && p(0).term == **u && j.delta.get(a) == Some(&p(0).formula)
        }
        (Rule::AbsE, Term::Mu(a, _, body)) => {
            p(0).term == **body
                && p(0).formula == Formula::Bottom
                && p(0).gamma == j.gamma
                && p(0).delta == j.delta.with(a.clone(), j.formula.clone())
        }
        _ => false,
    };
    if !ok {
        return fail("premises do not instantiate the rule schema");
    }
    d.premises.iter().try_for_each(validate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{alpha_equal, parse_formula, parse_term};

    fn closed(src: &str) -> Result<Derivation, TypeError> {
        infer(&Context::new(), &NameContext::new(), &parse_term(src).unwrap())
    }

    fn f(src: &str) -> Formula {
        parse_formula(src).unwrap()
    }

    #[test]
    fn ex_falso_witness() {
        let d = closed("\\z:_|_. mu a:P. z").unwrap();
        assert_eq!(d.formula(), &f("_|_ -> P"));
        assert_eq!(d.rule, Rule::ArrowI);
        validate(&d).unwrap();
    }

    #[test]
    fn peirce_witnesses() {
        let c1 = closed("\\z:(~P -> P). mu a:P. [a] (z \\y:P. [a] y)").unwrap();
        assert_eq!(c1.formula(), &f("(~P -> P) -> P"));
        let c2 = parse_term("\\z:(~P -> P). mu a:P. [a] (z \\x:P. [a] (z \\y:P. [a] x))").unwrap();
        let d = check(&Context::new(), &NameContext::new(), &c2, &f("(~P -> P) -> P")).unwrap();
        validate(&d).unwrap();
        validate(&c1).unwrap();
    }

    #[test]
    fn excluded_middle_witnesses() {
        // injections swapped relative to the textbook term: types at ~P \/ P
        let w_prime = parse_term("mu b:(~P \\/ P). [b] in2{~P} mu a:P. [b] in1{P} \\y:P. [a] y").unwrap();
        let d = check(&Context::new(), &NameContext::new(), &w_prime, &f("~P \\/ P")).unwrap();
        assert_eq!(d.rule, Rule::AbsE);
        validate(&d).unwrap();

        let w = parse_term("mu b:(P \\/ ~P). [b] in1{~P} mu a:P. [b] in2{P} \\y:P. [a] y").unwrap();
        let d = infer(&Context::new(), &NameContext::new(), &w).unwrap();
        assert_eq!(d.formula(), &f("P \\/ ~P"));
    }

    #[test]
    fn mismatch_is_reported() {
        let t = parse_term("\\z:_|_. mu a:P. z").unwrap();
        let e = check(&Context::new(), &NameContext::new(), &t, &f("P -> P")).unwrap_err();
        assert_eq!(e, TypeError::Expected { expected: f("P -> P"), found: f("_|_ -> P") });
    }

    #[test]
    fn axiom_rule() {
        let gamma: Context = [("x", f("A"))].into_iter().collect();
        let d = infer(&gamma, &NameContext::new(), &Term::var("x")).unwrap();
        assert_eq!(d.rule, Rule::Ax);
        assert_eq!(d.formula(), &f("A"));
        assert!(d.premises.is_empty());
    }

    #[test]
    fn error_kinds() {
        assert_eq!(closed("x").unwrap_err(), TypeError::UnboundVariable("x".into()));
        assert!(matches!(closed("\\x. x").unwrap_err(), TypeError::MissingAnnotation(_)));
        assert!(matches!(closed("\\x:P. [a] x").unwrap_err(), TypeError::UnboundName(_)));
        assert!(matches!(closed("\\x:P. (x x)").unwrap_err(), TypeError::WrongShape { rule: Rule::ArrowE, .. }));
        assert!(matches!(closed("\\x:P. (x p1)").unwrap_err(), TypeError::WrongShape { rule: Rule::AndE1, .. }));
        assert!(matches!(
            closed("\\x:(P \\/ P). (x [y. y, z. \\w:P. w])").unwrap_err(),
            TypeError::Mismatch { rule: Rule::OrE, .. }
        ));
        assert!(matches!(closed("mu a:P. \\x:P. x").unwrap_err(), TypeError::Mismatch { rule: Rule::AbsE, .. }));
        assert!(matches!(closed("\\x:P. mu a:(P -> P). [a] x").unwrap_err(), TypeError::Mismatch { rule: Rule::AbsI, .. }));
    }

    #[test]
    fn projections_and_cases() {
        let d = closed("\\p:(P /\\ _|_). (p p2)").unwrap();
        assert_eq!(d.formula(), &f("P /\\ _|_ -> _|_"));
        let d = closed("\\s:(P \\/ P). (s [x. x, y. y])").unwrap();
        assert_eq!(d.formula(), &f("P \\/ P -> P"));
        assert_eq!(d.premises[0].rule, Rule::OrE);
        validate(&d).unwrap();
    }

    #[test]
    fn validator_rejects_tampering() {
        let mut d = closed("\\z:_|_. mu a:P. z").unwrap();
        d.conclusion.formula = f("_|_ -> _|_");
        assert!(validate(&d).is_err());
    }

    #[test]
    fn erase_strips_and_is_idempotent() {
        let t = parse_term("\\z:_|_. mu a:P. z").unwrap();
        let e = erase(&t);
        assert!(alpha_equal(&e, &parse_term("\\z. mu a. z").unwrap()));
        assert_eq!(erase(&e), e);
        assert_eq!(erase(&Term::abs("x", Some(f("A")), Term::var("x"))), Term::abs("x", None, Term::var("x")));
    }

    #[test]
    fn json_shape() {
        let d = closed("\\z:_|_. mu a:P. z").unwrap();
        let v = d.to_json();
        assert_eq!(v["rule"], "arrow-i");
        assert_eq!(v["judgment"]["formula"], "_|_ -> P");
        assert_eq!(v["premises"][0]["judgment"]["gamma"]["z"], "_|_");
        assert_eq!(v["premises"][0]["premises"][0]["judgment"]["delta"]["a"], "P");
    }
}
