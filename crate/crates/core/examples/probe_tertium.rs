//! Staged probe for closed terms of type `~P \/ P` (either disjunct order).

use lambdamu::behavior::{lookup, probe_tertium_with, ProbeOptions};

fn main() {
    for name in ["W", "Wprime"] {
        let c = lookup(name).unwrap();
        println!("{name} : {}", c.formula);
        let r = probe_tertium_with(&c.term, &ProbeOptions::default()).unwrap();
        print!("{r}");
        r.revalidate().expect("stages re-check");
        println!();
    }
    let r = probe_tertium_with(&lookup("W").unwrap().term, &ProbeOptions { args: 0, ..ProbeOptions::default() }).unwrap();
    println!("with empty sequences: {} (m = {})", r.verdict, r.m);
}
