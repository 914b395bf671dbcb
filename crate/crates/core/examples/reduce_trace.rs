//! Leftmost-outermost normalization with a step-by-step trace.

use lambdamu::behavior::lookup;
use lambdamu::reduction::{normalize, redexes, DEFAULT_FUEL};
use lambdamu::syntax::{print_term, Term};

fn main() {
    let t = lookup("T").unwrap().term;
    let input = Term::apply(Term::apply(t, Term::var("t")), Term::var("u"));
    println!("input: {}", print_term(&input));
    println!("redexes: {:?}", redexes(&input).iter().map(|(p, r)| format!("{r} @ {p}")).collect::<Vec<_>>());

    let (nf, trace) = normalize(&input, DEFAULT_FUEL).expect("terminates");
    for (i, s) in trace.steps.iter().enumerate() {
        println!("{i}: {:<10} @ {:<6} {}", s.rule.name(), s.position.to_string(), print_term(&s.after));
    }
    println!("normal form: {}", print_term(&nf));
    print!("{}", trace.to_json_lines());
    trace.validate().expect("every step re-contracts");
}
