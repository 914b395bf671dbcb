//! Staged probe for closed terms of type `(~P -> P) -> P`.
//!
//! cargo run --example probe_peirce -- C2 --json

use lambdamu::behavior::{lookup, probe_peirce};
use lambdamu::syntax::parse_term;

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "C1".into());
    let json = args.any(|a| a == "--json");
    let subject = lookup(&name).map(|c| c.term).unwrap_or_else(|| parse_term(&name).expect("a canonical name or a term"));
    match probe_peirce(&subject, 1, 2000, 4) {
        Ok(r) if json => println!("{}", serde_json::to_string_pretty(&r.to_json()).unwrap()),
        Ok(r) => print!("{r}"),
        Err(e) => eprintln!("{e}"),
    }
}
