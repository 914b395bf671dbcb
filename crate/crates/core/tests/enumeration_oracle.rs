//! The typed enumerator against brute force: every raw term over a small
//! name pool, kept iff closed, typable, and all derivation formulas lie in
//! the universe.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use lambdamu::metatheory::{enumerate_with, EnumConfig};
use lambdamu::syntax::{canonical_key, parse_formula, Branch, ETerm, Formula, Side, Term};
use lambdamu::typing::{infer, Context, NameContext};

/// Raw terms whose free names all lie in the given scope (bitmasks over the
/// name pools). Annotations range over the whole universe.
struct Raw {
    lambda_pool: Vec<String>,
    mu_pool: Vec<String>,
    annotations: Vec<Formula>,
    memo: HashMap<(u32, u32, usize), Rc<Vec<Term>>>,
}

impl Raw {
    fn of_size(&mut self, lam: u32, mu: u32, n: usize) -> Rc<Vec<Term>> {
        if let Some(v) = self.memo.get(&(lam, mu, n)) {
            return Rc::clone(v);
        }
        let mut out = Vec::new();
        let lambda_pool = self.lambda_pool.clone();
        let mu_pool = self.mu_pool.clone();
        let annotations = self.annotations.clone();
        if n == 1 {
            for (i, x) in lambda_pool.iter().enumerate() {
                if lam & (1 << i) != 0 {
                    out.push(Term::var(x.as_str()));
                }
            }
        }
        if n >= 2 {
            for (i, x) in lambda_pool.iter().enumerate() {
                for body in self.of_size(lam | (1 << i), mu, n - 1).iter() {
                    for a in &annotations {
                        out.push(Term::abs(x.as_str(), Some(a.clone()), body.clone()));
                    }
                }
            }
            for (i, m) in mu_pool.iter().enumerate() {
                for body in self.of_size(lam, mu | (1 << i), n - 1).iter() {
                    for a in &annotations {
                        out.push(Term::mu(m.as_str(), Some(a.clone()), body.clone()));
                    }
                }
                if mu & (1 << i) != 0 {
                    for body in self.of_size(lam, mu, n - 1).iter() {
                        out.push(Term::named(m.as_str(), body.clone()));
                    }
                }
            }
            for body in self.of_size(lam, mu, n - 1).iter() {
                for a in &annotations {
                    out.push(Term::inj(Side::Left, body.clone(), Some(a.clone())));
                    out.push(Term::inj(Side::Right, body.clone(), Some(a.clone())));
                }
            }
        }
        if n >= 3 {
            for head in self.of_size(lam, mu, n - 2).iter() {
                out.push(Term::app(head.clone(), ETerm::Proj(Side::Left)));
                out.push(Term::app(head.clone(), ETerm::Proj(Side::Right)));
            }
        }
        for k in 1..n.saturating_sub(1) {
            let fs = self.of_size(lam, mu, k);
            let us = self.of_size(lam, mu, n - 1 - k);
            for f in fs.iter() {
                for u in us.iter() {
                    out.push(Term::pair(f.clone(), u.clone()));
                    out.push(Term::apply(f.clone(), u.clone()));
                }
            }
        }
        // (f [x. u, y. v]) has 2 + |f| + |u| + |v| nodes
        for kf in 1..=n.saturating_sub(4) {
            for ku in 1..=n.saturating_sub(kf + 3) {
                let kv = n - 2 - kf - ku;
                let fs = self.of_size(lam, mu, kf);
                for (i, x) in lambda_pool.iter().enumerate() {
                    let us = self.of_size(lam | (1 << i), mu, ku);
                    for (j, y) in lambda_pool.iter().enumerate() {
                        let vs = self.of_size(lam | (1 << j), mu, kv);
                        for f in fs.iter() {
                            for u in us.iter() {
                                for v in vs.iter() {
                                    let case = ETerm::Case(Branch::new(x.as_str(), u.clone()), Branch::new(y.as_str(), v.clone()));
                                    out.push(Term::app(f.clone(), case));
                                }
                            }
                        }
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.memo.insert((lam, mu, n), Rc::clone(&out));
        out
    }
}

fn brute_force(config: &EnumConfig, lambdas: usize, mus: usize) -> BTreeSet<String> {
    let universe: BTreeSet<Formula> = config.universe(None).into_iter().collect();
    let mut raw = Raw {
        lambda_pool: (1..=lambdas).map(|i| format!("v{i}")).collect(),
        mu_pool: (1..=mus).map(|i| format!("k{i}")).collect(),
        annotations: universe.iter().cloned().collect(),
        memo: HashMap::new(),
    };
    let mut keys = BTreeSet::new();
    for n in 1..=config.max_size {
        for t in raw.of_size(0, 0, n).iter() {
            assert_eq!(t.size(), n);
            assert!(t.is_closed());
            let Ok(d) = infer(&Context::new(), &NameContext::new(), t) else { continue };
            if d.judgments().iter().all(|j| universe.contains(&j.formula)) {
                keys.insert(canonical_key(t));
            }
        }
    }
    keys
}

fn compare(config: EnumConfig, lambdas: usize, mus: usize) {
    let corpus = enumerate_with(&config, None);
    let typed: Vec<String> = corpus.terms().map(canonical_key).collect();
    let typed_set: BTreeSet<String> = typed.iter().cloned().collect();
    assert_eq!(typed.len(), typed_set.len(), "enumerator produced alpha-duplicates");
    let naive = brute_force(&config, lambdas, mus);
    let missing: Vec<_> = naive.difference(&typed_set).take(5).collect();
    let extra: Vec<_> = typed_set.difference(&naive).take(5).collect();
    assert!(missing.is_empty() && extra.is_empty(), "missing {missing:?}, extra {extra:?}");
    assert!(!naive.is_empty());
}

fn config(max_size: usize, seeds: &[&str]) -> EnumConfig {
    let mut c = EnumConfig::new(max_size).with_formula_size(1).without_seeds();
    c.seeds = seeds.iter().map(|s| parse_formula(s).unwrap()).collect();
    c
}

// The pools are large enough for every closed term of the given size. At
// size 6, two μ-names can both be referenced (`\x:_|_. mu a. mu b. [a] [b] x`)
// but three λ-variables cannot. The product and coproduct universes lack
// `_|_`, so they contain no μ-terms.

fn without_bottom(mut c: EnumConfig) -> EnumConfig {
    c.atoms = vec![Formula::var("P")];
    c
}

#[test]
fn implications_and_bottom() {
    compare(config(5, &["_|_ -> P", "P -> P"]), 2, 2);
}

#[test]
fn products() {
    compare(without_bottom(config(6, &["P /\\ P -> P"])), 2, 0);
}

#[test]
fn coproducts() {
    compare(without_bottom(config(6, &["P \\/ P -> P"])), 2, 0);
}
