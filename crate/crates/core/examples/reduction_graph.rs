//! The full reduction graph of a term: every redex contracted at every node.
//!
//! cargo run --example reduction_graph -- --dot

use lambdamu::reduction::{reduction_graph, DEFAULT_NODE_CAP};
use lambdamu::syntax::{parse_term, print_term};

fn main() {
    let dot = std::env::args().any(|a| a == "--dot");
    let t = parse_term("(<(\\x:P. x a), b> p1)").unwrap();
    let g = reduction_graph(&t, DEFAULT_NODE_CAP).expect("small graph");
    if dot {
        print!("{}", g.to_dot());
        return;
    }
    for (i, n) in g.nodes.iter().enumerate() {
        println!("{i}: {}", print_term(n));
    }
    for e in &g.edges {
        println!("{} -> {}  {} @ {}", e.source, e.target, e.rule, e.position);
    }
    println!("normal forms: {:?}", g.sinks());
    println!("longest reduction: {:?}", g.longest_path());

    let omega = parse_term("(\\x. (x x) \\x. (x x))").unwrap();
    let g = reduction_graph(&omega, 10).expect("one node");
    println!("omega: {} node(s), acyclic: {}", g.len(), g.is_acyclic());
}
