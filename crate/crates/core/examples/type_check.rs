//! Type inference and derivation trees.
//!
//! cargo run --example type_check -- C2

use lambdamu::behavior::{canonical_terms, lookup};
use lambdamu::syntax::{parse_term, print_term};
use lambdamu::typing::{infer, validate, Context, NameContext};

fn main() {
    let (gamma, delta) = (Context::new(), NameContext::new());
    for c in canonical_terms() {
        println!("{:<7} {}  :  {}", c.name, print_term(&c.term), c.formula);
    }

    let name = std::env::args().nth(1).unwrap_or_else(|| "C1".into());
    let t = lookup(&name).map(|c| c.term).unwrap_or_else(|| parse_term(&name).expect("a canonical name or a term"));
    match infer(&gamma, &delta, &t) {
        Ok(d) => {
            println!("\n{d}");
            println!("{} nodes, validates: {:?}", d.node_count(), validate(&d));
        }
        Err(e) => println!("\n{e}"),
    }

    let bad = parse_term("\\x:P. (x x)").unwrap();
    println!("\n{}: {}", print_term(&bad), infer(&gamma, &delta, &bad).unwrap_err());
}
