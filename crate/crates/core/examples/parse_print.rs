//! Parse terms and formulas, print them back, and compare up to renaming.
//!
//! cargo run --example parse_print -- '\x:P. mu a:P. [a] x'

use lambdamu::syntax::{alpha_equal, canonical, canonical_key, parse_formula, parse_term, print_term};

fn main() {
    let src = std::env::args().nth(1).unwrap_or_else(|| "\\z:(~P -> P). mu a:P. [a] (z \\y:P. [a] y)".into());
    let t = match parse_term(&src) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    println!("term:      {}", print_term(&t));
    println!("canonical: {}", print_term(&canonical(&t)));
    println!("size:      {}", t.size());

    let back = parse_term(&print_term(&t)).expect("printed terms re-parse");
    println!("round-trip alpha-equal: {}", alpha_equal(&t, &back));

    let renamed = parse_term("\\w:(~P -> P). mu k:P. [k] (w \\v:P. [k] v)").unwrap();
    println!("same key as a renamed copy: {}", canonical_key(&renamed) == canonical_key(&t));

    for f in ["(~P -> P) -> P", "~P \\/ P", "P /\\ Q -> Q /\\ P", "(P -> _|_) -> _|_"] {
        println!("formula {f:<22} prints as {}", parse_formula(f).unwrap());
    }

    for bad in ["\\x. \\x. x", "(x", "\\x. [x] x"] {
        println!("{bad:<12} -> {}", parse_term(bad).unwrap_err());
    }
}
