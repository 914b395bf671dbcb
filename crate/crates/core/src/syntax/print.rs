//! Concrete-syntax printer.
//!
//! Output always re-parses: a binder that would shadow an enclosing binder
//! of the same name is printed under a fresh name.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::alpha::canonical;
use super::formula::Formula;
use super::subst::fresh_name;
use super::term::{Branch, ETerm, Side, Term};

pub fn print_term(t: &Term) -> String {
    let mut p = Printer::new(t.all_names());
    p.term(t);
    p.out
}

pub fn print_eterm(e: &ETerm) -> String {
    let mut p = Printer::new(e.all_names());
    p.eterm(e);
    p.out
}

/// Printed form of the alpha-canonical representative; equal strings iff
/// the terms are alpha-equal.
pub fn canonical_key(t: &Term) -> String {
    print_term(&canonical(t))
}

fn print_annotation(f: &Formula, out: &mut String) {
    match f {
        Formula::Arrow(..) if f.negated().is_none() => write!(out, "({f})"),
        Formula::And(..) | Formula::Or(..) => write!(out, "({f})"),
        _ => write!(out, "{f}"),
    }
    .expect("writing to a String");
}

struct Printer {
    out: String,
    used: BTreeSet<String>,
    lambda: Vec<(String, String)>,
    mu: Vec<(String, String)>,
}

impl Printer {
    fn new(used: BTreeSet<String>) -> Printer {
        Printer { out: String::new(), used, lambda: Vec::new(), mu: Vec::new() }
    }

    fn lookup(stack: &[(String, String)], x: &str) -> String {
        stack
            .iter()
            .rev()
            .find(|(old, _)| old == x)
            .map(|(_, new)| new.clone())
            .unwrap_or_else(|| x.to_string())
    }

    fn bind(&mut self, name: &str, lambda: bool) -> String {
        let in_scope = self.lambda.iter().chain(self.mu.iter()).any(|(_, shown)| shown == name);
        let shown = if in_scope {
            let n = fresh_name(name, &self.used);
            self.used.insert(n.clone());
            n
        } else {
            name.to_string()
        };
        let stack = if lambda { &mut self.lambda } else { &mut self.mu };
        stack.push((name.to_string(), shown.clone()));
        shown
    }

    fn term(&mut self, t: &Term) {
        match t {
            Term::Var(x) => {
                let shown = Self::lookup(&self.lambda, x);
                self.out.push_str(&shown);
            }
            Term::Abs(x, ann, body) => {
                let shown = self.bind(x, true);
                self.out.push('\\');
                self.out.push_str(&shown);
                if let Some(f) = ann {
                    self.out.push(':');
                    print_annotation(f, &mut self.out);
                }
                self.out.push_str(". ");
                self.term(body);
                self.lambda.pop();
            }
            Term::Mu(a, ann, body) => {
                let shown = self.bind(a, false);
                self.out.push_str("mu ");
                self.out.push_str(&shown);
                if let Some(f) = ann {
                    self.out.push(':');
                    print_annotation(f, &mut self.out);
                }
                self.out.push_str(". ");
                self.term(body);
                self.mu.pop();
            }
            Term::Named(a, u) => {
                let shown = Self::lookup(&self.mu, a);
                write!(self.out, "[{shown}] ").expect("writing to a String");
                self.term(u);
            }
            Term::App(f, e) => {
                self.out.push('(');
                self.term(f);
                self.out.push(' ');
                self.eterm(e);
                self.out.push(')');
            }
            Term::Pair(a, b) => {
                self.out.push('<');
                self.term(a);
                self.out.push_str(", ");
                self.term(b);
                self.out.push('>');
            }
            Term::Inj(side, u, ann) => {
                self.out.push_str(match side {
                    Side::Left => "in1",
                    Side::Right => "in2",
                });
                match ann {
                    Some(f) => write!(self.out, "{{{f}}} ").expect("writing to a String"),
                    None => self.out.push(' '),
                }
                self.term(u);
            }
        }
    }

    fn branch(&mut self, br: &Branch) {
        let shown = self.bind(&br.var, true);
        self.out.push_str(&shown);
        self.out.push_str(". ");
        self.term(&br.body);
        self.lambda.pop();
    }

    fn eterm(&mut self, e: &ETerm) {
        match e {
            ETerm::Arg(t) => self.term(t),
            ETerm::Proj(Side::Left) => self.out.push_str("p1"),
            ETerm::Proj(Side::Right) => self.out.push_str("p2"),
            ETerm::Case(l, r) => {
                self.out.push('[');
                self.branch(l);
                self.out.push_str(", ");
                self.branch(r);
                self.out.push(']');
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn print_examples() {
        let t = Term::abs("z", Some(Formula::Bottom), Term::mu("a", Some(Formula::var("P")), Term::var("z")));
        assert_eq!(print_term(&t), "\\z:_|_. mu a:P. z");
        assert_eq!(print_term(&Term::var("x")), "x");
        assert_eq!(print_term(&Term::named("a", Term::var("y"))), "[a] y");
        let c = Term::var("w").case("x", Term::var("u"), "y", Term::var("v"));
        assert_eq!(print_term(&c), "(w [x. u, y. v])");
        let p = Term::app(Term::pair(Term::var("a"), Term::var("b")), ETerm::Proj(Side::Left));
        assert_eq!(print_term(&p), "(<a, b> p1)");
        let i = Term::inj(Side::Right, Term::var("y"), Some(Formula::neg(Formula::var("P"))));
        assert_eq!(print_term(&i), "in2{~P} y");
        let f = Term::abs("x", Some(Formula::arrow(Formula::var("P"), Formula::var("P"))), Term::var("x"));
        assert_eq!(print_term(&f), "\\x:(P -> P). x");
    }

    #[test]
    fn shadowing_binders_are_renamed() {
        let t = Term::abs("y", None, Term::abs("y", None, Term::var("y")));
        assert_eq!(print_term(&t), "\\y. \\y1. y1");
    }
}
