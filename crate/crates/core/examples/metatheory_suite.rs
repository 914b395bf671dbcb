//! Subject reduction, confluence and strong normalization checked on every
//! enumerated term and on a hand-picked corpus with free variables.
//!
//! cargo run --release --example metatheory_suite -- 10

use lambdamu::metatheory::{
    check_all, curated_corpus, enumerate_typed_terms, negative_controls, strong_normalization_of_terms,
};
use lambdamu::reduction::DEFAULT_NODE_CAP;

fn main() {
    let max_size = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    for (label, corpus) in [("enumerated", enumerate_typed_terms(max_size, None)), ("curated", curated_corpus())] {
        println!("{label}: {} terms", corpus.len());
        for r in check_all(&corpus, DEFAULT_NODE_CAP) {
            println!("  {:?}: checked {}, failures {}, incomplete {}", r.property, r.checked, r.failures.len(), r.incomplete.len());
        }
    }
    let control = strong_normalization_of_terms(&negative_controls(), DEFAULT_NODE_CAP);
    for f in &control.failures {
        println!("negative control {}: {}", f.term, f.evidence);
    }
}
