//! Enumerates closed well-typed terms and reports how many there are per type.
//!
//! cargo run --example enumerate_corpus -- [MAX_SIZE] [FORMULA_SIZE]

use std::collections::BTreeMap;
use std::time::Instant;

use lambdamu::metatheory::{check_all, enumerate_with, EnumConfig, DEFAULT_FORMULA_SIZE, DEFAULT_MAX_SIZE};
use lambdamu::reduction::{redexes, DEFAULT_NODE_CAP};

fn main() {
    let mut args = std::env::args().skip(1);
    let max_size = args.next().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_MAX_SIZE);
    let k = args.next().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_FORMULA_SIZE);

    let start = Instant::now();
    let corpus = enumerate_with(&EnumConfig::new(max_size).with_formula_size(k), None);
    println!("{} terms up to size {max_size} (cut formulas up to size {k}) in {:?}", corpus.len(), start.elapsed());

    let mut by_type: BTreeMap<String, usize> = BTreeMap::new();
    for e in &corpus.entries {
        *by_type.entry(e.formula.to_string()).or_default() += 1;
    }
    for (f, n) in &by_type {
        println!("{n:>8}  {f}");
    }

    let reducible = corpus.terms().filter(|t| !redexes(t).is_empty()).count();
    println!("{reducible} terms contain a redex");

    let start = Instant::now();
    for r in check_all(&corpus, DEFAULT_NODE_CAP) {
        println!("{:?}: checked {}, failures {}, incomplete {}", r.property, r.checked, r.failures.len(), r.incomplete.len());
        if let Some(longest) = r.longest_paths.iter().max() {
            println!("  longest reduction: {longest}");
        }
    }
    println!("checks took {:?}", start.elapsed());
}
