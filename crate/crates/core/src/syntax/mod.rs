//! Abstract syntax of proof terms and formulas, binding, substitutions, and
//! the concrete syntax (parser and printer).

mod alpha;
mod formula;
mod parse;
mod print;
mod subst;
mod term;

pub use alpha::{alpha_equal, alpha_equal_eterm, canonical};
pub use formula::Formula;
pub use parse::{parse_eterm, parse_formula, parse_term, ParseError, Pos};
pub use print::{canonical_key, print_eterm, print_term};
pub use subst::{fresh_name, is_keyword, mu_substitute, rename_lambda, rename_mu, substitute, substitute_eterm};
pub use term::{Branch, ESequence, ETerm, FreeVars, Side, Term};
