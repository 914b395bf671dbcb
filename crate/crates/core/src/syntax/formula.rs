//! Propositional formulas: variables, absurdity, implication, conjunction
//! and disjunction. Negation is sugar for `A -> _|_`.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Bottom,
    Arrow(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    pub fn arrow(a: Formula, b: Formula) -> Formula {
        Formula::Arrow(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// `~A`, stored as `A -> _|_`.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula) -> Formula {
        Formula::arrow(a, Formula::Bottom)
    }

    /// If this is `A -> _|_`, returns `A`.
    pub fn negated(&self) -> Option<&Formula> {
        match self {
            Formula::Arrow(a, b) if **b == Formula::Bottom => Some(a),
            _ => None,
        }
    }

    /// Number of formula nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Bottom => 1,
            Formula::Arrow(a, b) | Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Var(_) | Formula::Bottom)
    }

    /// All subformulas, including `self`.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if !out.insert(self.clone()) {
            return;
        }
        if let Formula::Arrow(a, b) | Formula::And(a, b) | Formula::Or(a, b) = self {
            a.collect_subformulas(out);
            b.collect_subformulas(out);
        }
    }

    /// Every formula over the given atoms with at most `max_size` nodes,
    /// ordered by size and then structurally.
    pub fn all_up_to(atoms: &[Formula], max_size: usize) -> Vec<Formula> {
        let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); max_size + 1];
        if max_size >= 1 {
            by_size[1] = atoms.to_vec();
            by_size[1].sort();
            by_size[1].dedup();
        }
        for n in 3..=max_size {
            let mut level = Vec::new();
            for left in 1..n - 1 {
                let right = n - 1 - left;
                for a in &by_size[left] {
                    for b in &by_size[right] {
                        level.push(Formula::arrow(a.clone(), b.clone()));
                        level.push(Formula::and(a.clone(), b.clone()));
                        level.push(Formula::or(a.clone(), b.clone()));
                    }
                }
            }
            level.sort();
            by_size[n] = level;
        }
        by_size.into_iter().flatten().collect()
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        // 0: ->, 1: \/, 2: /\, 3: ~ and atoms
        let (own, text): (u8, _) = match self {
            Formula::Var(name) => return f.write_str(name),
            Formula::Bottom => return f.write_str("_|_"),
            Formula::Arrow(a, _) if self.negated().is_some() => (3, (a, None, "~")),
            Formula::Arrow(a, b) => (0, (a, Some(b), " -> ")),
            Formula::Or(a, b) => (1, (a, Some(b), " \\/ ")),
            Formula::And(a, b) => (2, (a, Some(b), " /\\ ")),
        };
        let paren = own < prec;
        if paren {
            f.write_str("(")?;
        }
        match text {
            (a, None, op) => {
                f.write_str(op)?;
                a.fmt_prec(f, 3)?;
            }
            (a, Some(b), op) => {
                // right-associative: the left operand binds tighter
                a.fmt_prec(f, own + 1)?;
                f.write_str(op)?;
                b.fmt_prec(f, own)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
