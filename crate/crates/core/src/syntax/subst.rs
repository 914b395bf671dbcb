//! Capture-avoiding substitution, structural (μ) substitution and fresh
//! name generation.

use std::collections::BTreeSet;

use super::term::{Branch, ESequence, ETerm, FreeVars, Term};

pub(crate) const KEYWORDS: [&str; 5] = ["mu", "p1", "p2", "in1", "in2"];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

/// Returns `base` with a numeric suffix so that the result is not in
/// `avoid` and is not a keyword. Trailing digits of `base` are replaced.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1usize..)
        .map(|i| format!("{stem}{i}"))
        .find(|n| !avoid.contains(n) && !is_keyword(n))
        .expect("unbounded suffix search")
}

/// Replaces free occurrences of the λ-variable `old` by `new`. `new` must
/// not occur in `t`.
pub fn rename_lambda(t: &Term, old: &str, new: &str) -> Term {
    substitute(t, old, &Term::var(new))
}

/// Replaces free occurrences of the μ-variable `old` by `new`. `new` must
/// not occur in `t`.
pub fn rename_mu(t: &Term, old: &str, new: &str) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Abs(x, ann, body) => Term::abs(x.clone(), ann.clone(), rename_mu(body, old, new)),
        Term::App(f, e) => Term::app(rename_mu(f, old, new), rename_mu_e(e, old, new)),
        Term::Pair(a, b) => Term::pair(rename_mu(a, old, new), rename_mu(b, old, new)),
        Term::Inj(side, u, ann) => Term::inj(*side, rename_mu(u, old, new), ann.clone()),
        Term::Mu(b, _, _) if b == old => t.clone(),
        Term::Mu(b, ann, body) => Term::mu(b.clone(), ann.clone(), rename_mu(body, old, new)),
        Term::Named(b, u) => {
            let b = if b == old { new.to_string() } else { b.clone() };
            Term::named(b, rename_mu(u, old, new))
        }
    }
}

fn rename_mu_e(e: &ETerm, old: &str, new: &str) -> ETerm {
    match e {
        ETerm::Arg(t) => ETerm::Arg(rename_mu(t, old, new)),
        ETerm::Proj(s) => ETerm::Proj(*s),
        ETerm::Case(l, r) => ETerm::Case(
            Branch::new(l.var.clone(), rename_mu(&l.body, old, new)),
            Branch::new(r.var.clone(), rename_mu(&r.body, old, new)),
        ),
    }
}

fn avoid_set(body: &Term, extra: &BTreeSet<String>) -> BTreeSet<String> {
    let mut avoid = body.all_names();
    avoid.extend(extra.iter().cloned());
    avoid
}

/// Capture-avoiding `t[x := v]`.
pub fn substitute(t: &Term, x: &str, v: &Term) -> Term {
    let fv = v.free_variables();
    let mut danger = v.all_names();
    danger.insert(x.to_string());
    Subst { x, v, fv: &fv, danger: &danger }.term(t)
}

struct Subst<'a> {
    x: &'a str,
    v: &'a Term,
    fv: &'a FreeVars,
    /// names a renamed binder must avoid besides those of its body
    danger: &'a BTreeSet<String>,
}

impl Subst<'_> {
    fn term(&self, t: &Term) -> Term {
        if !t.has_free_lambda(self.x) {
            return t.clone();
        }
        match t {
            Term::Var(_) => self.v.clone(),
            Term::Abs(y, ann, body) => {
                let (y, body) = self.binder(y, body);
                Term::abs(y, ann.clone(), self.term(&body))
            }
            Term::App(f, e) => Term::app(self.term(f), self.eterm(e)),
            Term::Pair(a, b) => Term::pair(self.term(a), self.term(b)),
            Term::Inj(side, u, ann) => Term::inj(*side, self.term(u), ann.clone()),
            Term::Mu(b, ann, body) => {
                if self.fv.mu.contains(b) {
                    let b2 = fresh_name(b, &avoid_set(body, self.danger));
                    Term::mu(b2.clone(), ann.clone(), self.term(&rename_mu(body, b, &b2)))
                } else {
                    Term::mu(b.clone(), ann.clone(), self.term(body))
                }
            }
            Term::Named(b, u) => Term::named(b.clone(), self.term(u)),
        }
    }

    /// Renames the λ-binder `y` when it would capture a free variable of `v`.
    fn binder(&self, y: &str, body: &Term) -> (String, Term) {
        if self.fv.lambda.contains(y) {
            let y2 = fresh_name(y, &avoid_set(body, self.danger));
            let body = rename_lambda(body, y, &y2);
            (y2, body)
        } else {
            (y.to_string(), body.clone())
        }
    }

    fn branch(&self, br: &Branch) -> Branch {
        if br.var == self.x || !br.body.has_free_lambda(self.x) {
            return br.clone();
        }
        let (var, body) = self.binder(&br.var, &br.body);
        Branch { var, body: self.term(&body) }
    }

    fn eterm(&self, e: &ETerm) -> ETerm {
        match e {
            ETerm::Arg(t) => ETerm::Arg(self.term(t)),
            ETerm::Proj(s) => ETerm::Proj(*s),
            ETerm::Case(l, r) => ETerm::Case(self.branch(l), self.branch(r)),
        }
    }
}

/// Capture-avoiding substitution of a term for a λ-variable inside an E-term.
pub fn substitute_eterm(e: &ETerm, x: &str, v: &Term) -> ETerm {
    let fv = v.free_variables();
    let mut danger = v.all_names();
    danger.insert(x.to_string());
    Subst { x, v, fv: &fv, danger: &danger }.eterm(e)
}

/// Structural substitution `t[a :=* w1 ... wn]`: every subterm `[a] v` becomes
/// `[a] (v' w1 ... wn)` where `v'` is `v` with the same substitution applied.
/// Occurrences of `a` under an inner `mu a` are left alone.
pub fn mu_substitute(t: &Term, a: &str, es: &ESequence) -> Term {
    if es.is_empty() {
        return t.clone();
    }
    let fv = es.free_variables();
    let mut danger = BTreeSet::new();
    for e in es.iter() {
        e.collect_names(&mut danger);
    }
    danger.insert(a.to_string());
    MuSubst { a, es, fv: &fv, danger: &danger }.term(t)
}

struct MuSubst<'a> {
    a: &'a str,
    es: &'a ESequence,
    fv: &'a FreeVars,
    danger: &'a BTreeSet<String>,
}

impl MuSubst<'_> {
    fn term(&self, t: &Term) -> Term {
        if !t.has_free_mu(self.a) {
            return t.clone();
        }
        match t {
            Term::Var(_) => t.clone(),
            Term::Abs(y, ann, body) => {
                let (y, body) = self.lambda_binder(y, body);
                Term::abs(y, ann.clone(), self.term(&body))
            }
            Term::App(f, e) => Term::app(self.term(f), self.eterm(e)),
            Term::Pair(l, r) => Term::pair(self.term(l), self.term(r)),
            Term::Inj(side, u, ann) => Term::inj(*side, self.term(u), ann.clone()),
            Term::Mu(b, ann, body) => {
                if self.fv.mu.contains(b) {
                    let b2 = fresh_name(b, &avoid_set(body, self.danger));
                    Term::mu(b2.clone(), ann.clone(), self.term(&rename_mu(body, b, &b2)))
                } else {
                    Term::mu(b.clone(), ann.clone(), self.term(body))
                }
            }
            Term::Named(b, u) => {
                let inner = self.term(u);
                if b == self.a {
                    Term::named(b.clone(), self.es.apply_to(inner))
                } else {
                    Term::named(b.clone(), inner)
                }
            }
        }
    }

    fn lambda_binder(&self, y: &str, body: &Term) -> (String, Term) {
        if self.fv.lambda.contains(y) {
            let y2 = fresh_name(y, &avoid_set(body, self.danger));
            let body = rename_lambda(body, y, &y2);
            (y2, body)
        } else {
            (y.to_string(), body.clone())
        }
    }

    fn eterm(&self, e: &ETerm) -> ETerm {
        match e {
            ETerm::Arg(t) => ETerm::Arg(self.term(t)),
            ETerm::Proj(s) => ETerm::Proj(*s),
            ETerm::Case(l, r) => {
                let branch = |br: &Branch| {
                    if !br.body.has_free_mu(self.a) {
                        return br.clone();
                    }
                    let (var, body) = self.lambda_binder(&br.var, &br.body);
                    Branch { var, body: self.term(&body) }
                };
                ETerm::Case(branch(l), branch(r))
            }
        }
    }
}
