//! A workbench for classical propositional natural deduction, presented as
//! the λμ-calculus with pairs and injections.
//!
//! - [`syntax`]: terms, formulas, substitution, parser and printer
//! - [`typing`]: the eleven typing rules and derivation trees
//! - [`reduction`]: the five reduction rules, normalization and reduction graphs
//! - [`metatheory`]: typed-term enumeration and executable checks of subject
//!   reduction, confluence and strong normalization
//! - [`behavior`]: μ-spine matching and operational probes for closed
//!   inhabitants of `_|_ -> P`, `(~P -> P) -> P` and `~P \/ P`
//! - [`cli`]: the `lmu` command-line front end

pub mod syntax;
pub mod typing;
pub mod reduction;
pub mod metatheory;
pub mod behavior;
pub mod cli;
