//! Closed terms of type `_|_ -> P` applied to `t` and further arguments
//! reduce to a μ-spine over `t`.

use lambdamu::behavior::{is_mu_spine, lookup, probe_exfalso};
use lambdamu::metatheory::enumerate_typed_terms;
use lambdamu::syntax::{parse_formula, parse_term};

fn main() {
    let spine = parse_term("mu a. mu b. [a] [b] mu c. [a] mu d. t").unwrap();
    let w = is_mu_spine(&spine, &parse_term("t").unwrap()).unwrap();
    println!("{w}  ({} wrappers)\n", w.depth());

    for name in ["T", "Tmu"] {
        let r = probe_exfalso(&lookup(name).unwrap().term, 2, 500).unwrap();
        println!("{r}");
    }

    let corpus = enumerate_typed_terms(8, Some(&parse_formula("_|_ -> P").unwrap()));
    let confirmed = corpus.terms().filter(|t| probe_exfalso(t, 2, 5000).map(|r| r.verdict.is_confirmed()).unwrap_or(false)).count();
    println!("{confirmed} of {} enumerated terms of size <= 8 confirmed", corpus.len());
}
