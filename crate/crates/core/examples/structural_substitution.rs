//! Ordinary and structural substitution.
//!
//! `t[a:=*w]` replaces every `[a] u` inside `t` by `[a] (u w)`, working from
//! the inside out.

use lambdamu::syntax::{mu_substitute, parse_term, print_term, substitute, ESequence, Term};

fn main() {
    let t = parse_term("\\y. (x y)").unwrap();
    let v = parse_term("\\z. (y z)").unwrap();
    println!("{}  [x := {}]  =  {}", print_term(&t), print_term(&v), print_term(&substitute(&t, "x", &v)));

    let body = parse_term("[a] (z \\y. [a] y)").unwrap();
    let w = ESequence::of_terms([Term::var("s"), Term::var("r")]);
    println!("{}  [a :=* s r]  =  {}", print_term(&body), print_term(&mu_substitute(&body, "a", &w)));

    let nested = parse_term("[a] [a] y").unwrap();
    println!("{}  [a :=* s]  =  {}", print_term(&nested), print_term(&mu_substitute(&nested, "a", &ESequence::of_terms([Term::var("s")]))));

    let shadowed = parse_term("[a] mu a. [a] y").unwrap();
    println!("{}  [a :=* s]  =  {}", print_term(&shadowed), print_term(&mu_substitute(&shadowed, "a", &ESequence::of_terms([Term::var("s")]))));

    let capture = parse_term("mu b. [a] x").unwrap();
    let w = ESequence::of_terms([parse_term("\\q. [b] q").unwrap()]);
    println!("{}  [a :=* \\q. [b] q]  =  {}", print_term(&capture), print_term(&mu_substitute(&capture, "a", &w)));
}
