//! Alpha-equivalence and alpha-canonical renaming.

use std::collections::BTreeSet;

use super::subst::fresh_name;
use super::term::{Branch, ETerm, Term};

#[derive(Default)]
struct Env<'a> {
    lambda: Vec<(&'a str, &'a str)>,
    mu: Vec<(&'a str, &'a str)>,
}

/// Looks up the innermost binding of `x` on the left and `y` on the right;
/// they match if bound by the same binder or both free with equal names.
fn same_var(stack: &[(&str, &str)], x: &str, y: &str) -> bool {
    for (l, r) in stack.iter().rev() {
        match (*l == x, *r == y) {
            (true, true) => return true,
            (false, false) => continue,
            _ => return false,
        }
    }
    x == y
}

/// True iff the terms are equal up to consistent renaming of bound λ- and
/// μ-variables. Annotations are compared structurally.
pub fn alpha_equal(t: &Term, u: &Term) -> bool {
    eq_term(&mut Env::default(), t, u)
}

pub fn alpha_equal_eterm(e: &ETerm, f: &ETerm) -> bool {
    eq_eterm(&mut Env::default(), e, f)
}

fn eq_term<'a>(env: &mut Env<'a>, t: &'a Term, u: &'a Term) -> bool {
    match (t, u) {
        (Term::Var(x), Term::Var(y)) => same_var(&env.lambda, x, y),
        (Term::Abs(x, ax, bx), Term::Abs(y, ay, by)) => {
            if ax != ay {
                return false;
            }
            env.lambda.push((x, y));
            let r = eq_term(env, bx, by);
            env.lambda.pop();
            r
        }
        (Term::App(f, e), Term::App(g, h)) => eq_term(env, f, g) && eq_eterm(env, e, h),
        (Term::Pair(a, b), Term::Pair(c, d)) => eq_term(env, a, c) && eq_term(env, b, d),
        (Term::Inj(s, a, x), Term::Inj(r, b, y)) => s == r && x == y && eq_term(env, a, b),
        (Term::Mu(a, ax, bx), Term::Mu(b, ay, by)) => {
            if ax != ay {
                return false;
            }
            env.mu.push((a, b));
            let r = eq_term(env, bx, by);
            env.mu.pop();
            r
        }
        (Term::Named(a, x), Term::Named(b, y)) => same_var(&env.mu, a, b) && eq_term(env, x, y),
        _ => false,
    }
}

fn eq_branch<'a>(env: &mut Env<'a>, l: &'a Branch, r: &'a Branch) -> bool {
    env.lambda.push((&l.var, &r.var));
    let ok = eq_term(env, &l.body, &r.body);
    env.lambda.pop();
    ok
}

fn eq_eterm<'a>(env: &mut Env<'a>, e: &'a ETerm, f: &'a ETerm) -> bool {
    match (e, f) {
        (ETerm::Arg(t), ETerm::Arg(u)) => eq_term(env, t, u),
        (ETerm::Proj(a), ETerm::Proj(b)) => a == b,
        (ETerm::Case(l1, r1), ETerm::Case(l2, r2)) => eq_branch(env, l1, l2) && eq_branch(env, r1, r2),
        _ => false,
    }
}

/// Renames every bound variable to a name determined only by the term's
/// shape and its free variables: λ-binders become `x1, x2, ...` and
/// μ-binders `a1, a2, ...` in binding order, skipping free names.
/// Alpha-equal inputs give identical outputs.
pub fn canonical(t: &Term) -> Term {
    let fv = t.free_variables();
    let mut taken: BTreeSet<String> = fv.lambda;
    taken.extend(fv.mu);
    let mut c = Canon { taken, lambda: Vec::new(), mu: Vec::new() };
    c.term(t)
}

struct Canon {
    taken: BTreeSet<String>,
    lambda: Vec<(String, String)>,
    mu: Vec<(String, String)>,
}

impl Canon {
    fn next(&mut self, base: &str) -> String {
        let n = fresh_name(base, &self.taken);
        self.taken.insert(n.clone());
        n
    }

    fn lookup(stack: &[(String, String)], x: &str) -> Option<String> {
        stack.iter().rev().find(|(old, _)| old == x).map(|(_, new)| new.clone())
    }

    fn term(&mut self, t: &Term) -> Term {
        match t {
            Term::Var(x) => Term::Var(Self::lookup(&self.lambda, x).unwrap_or_else(|| x.clone())),
            Term::Abs(x, ann, body) => {
                let n = self.next("x");
                self.lambda.push((x.clone(), n.clone()));
                let body = self.term(body);
                self.lambda.pop();
                Term::abs(n, ann.clone(), body)
            }
            Term::App(f, e) => {
                let f = self.term(f);
                Term::app(f, self.eterm(e))
            }
            Term::Pair(a, b) => {
                let a = self.term(a);
                Term::pair(a, self.term(b))
            }
            Term::Inj(s, u, ann) => Term::inj(*s, self.term(u), ann.clone()),
            Term::Mu(a, ann, body) => {
                let n = self.next("a");
                self.mu.push((a.clone(), n.clone()));
                let body = self.term(body);
                self.mu.pop();
                Term::mu(n, ann.clone(), body)
            }
            Term::Named(a, u) => {
                let a = Self::lookup(&self.mu, a).unwrap_or_else(|| a.clone());
                Term::named(a, self.term(u))
            }
        }
    }

    fn branch(&mut self, br: &Branch) -> Branch {
        let n = self.next("x");
        self.lambda.push((br.var.clone(), n.clone()));
        let body = self.term(&br.body);
        self.lambda.pop();
        Branch { var: n, body }
    }

    fn eterm(&mut self, e: &ETerm) -> ETerm {
        match e {
            ETerm::Arg(t) => ETerm::Arg(self.term(t)),
            ETerm::Proj(s) => ETerm::Proj(*s),
            ETerm::Case(l, r) => {
                let l = self.branch(l);
                ETerm::Case(l, self.branch(r))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Formula;

    #[test]
    fn alpha_examples() {
        let a = Term::abs("x", None, Term::var("x"));
        let b = Term::abs("y", None, Term::var("y"));
        assert!(alpha_equal(&a, &b));

        let m1 = Term::mu("a", None, Term::named("a", Term::var("z")));
        let m2 = Term::mu("b", None, Term::named("b", Term::var("z")));
        assert!(alpha_equal(&m1, &m2));

        let f1 = Term::abs("x", None, Term::var("z"));
        let f2 = Term::abs("x", None, Term::var("w"));
        assert!(!alpha_equal(&f1, &f2));
    }

    #[test]
    fn bound_versus_free() {
        // \x. y  vs  \y. y
        let a = Term::abs("x", None, Term::var("y"));
        let b = Term::abs("y", None, Term::var("y"));
        assert!(!alpha_equal(&a, &b));
        // \x.\y. x vs \y.\x. y
        let c = Term::abs("x", None, Term::abs("y", None, Term::var("x")));
        let d = Term::abs("y", None, Term::abs("x", None, Term::var("y")));
        assert!(alpha_equal(&c, &d));
    }

    #[test]
    fn annotations_matter() {
        let a = Term::abs("x", Some(Formula::var("P")), Term::var("x"));
        let b = Term::abs("x", None, Term::var("x"));
        assert!(!alpha_equal(&a, &b));
    }

    #[test]
    fn canonical_identifies_alpha_classes() {
        let a = Term::abs("q", None, Term::mu("k", None, Term::named("k", Term::apply(Term::var("q"), Term::var("x1")))));
        let b = Term::abs("r", None, Term::mu("j", None, Term::named("j", Term::apply(Term::var("r"), Term::var("x1")))));
        assert_eq!(canonical(&a), canonical(&b));
        assert!(alpha_equal(&canonical(&a), &a));
        // the free x1 is not reused for a binder
        match canonical(&a) {
            Term::Abs(x, _, _) => assert_eq!(x, "x2"),
            _ => unreachable!(),
        }
    }
}
