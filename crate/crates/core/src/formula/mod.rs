//! Terms over `·`, `∧`, `∨`, `→` and the constants `1`, `⊥`.

mod eval;
mod parse;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

pub use eval::{eval, find_counterexample, holds, sub_values, Program, Valuation};
pub use parse::parse;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    One,
    Bot,
    Fuse(Box<Formula>, Box<Formula>),
    Meet(Box<Formula>, Box<Formula>),
    Join(Box<Formula>, Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    pub fn fuse(l: Formula, r: Formula) -> Self {
        Formula::Fuse(Box::new(l), Box::new(r))
    }

    pub fn meet(l: Formula, r: Formula) -> Self {
        Formula::Meet(Box::new(l), Box::new(r))
    }

    pub fn join(l: Formula, r: Formula) -> Self {
        Formula::Join(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Self {
        Formula::Impl(Box::new(l), Box::new(r))
    }

    /// `(l → r) ∧ (r → l)`.
    pub fn iff(l: Formula, r: Formula) -> Self {
        Formula::meet(Formula::imp(l.clone(), r.clone()), Formula::imp(r, l))
    }

    /// Left-nested `n`-fold fusion; `n` must be positive.
    pub fn power(base: Formula, n: u32) -> Self {
        assert!(n >= 1, "power exponent must be positive");
        (1..n).fold(base.clone(), |acc, _| Formula::fuse(acc, base.clone()))
    }

    /// Left-nested conjunction; `1` when empty.
    pub fn meet_all(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Formula::meet).unwrap_or(Formula::One)
    }

    /// Left-nested disjunction; `⊥` when empty.
    pub fn join_all(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Formula::join).unwrap_or(Formula::Bot)
    }

    pub fn children(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Fuse(l, r) | Formula::Meet(l, r) | Formula::Join(l, r) | Formula::Impl(l, r) => {
                Some((l, r))
            }
            _ => None,
        }
    }

    /// Variable names, sorted.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::One | Formula::Bot => {}
            _ => {
                let (l, r) = self.children().unwrap();
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    /// Distinct subformulas, children before parents, in order of first
    /// occurrence.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        self.collect_subformulas(&mut seen, &mut out);
        out
    }

    fn collect_subformulas<'a>(&'a self, seen: &mut HashSet<&'a Formula>, out: &mut Vec<Formula>) {
        if seen.contains(self) {
            return;
        }
        if let Some((l, r)) = self.children() {
            l.collect_subformulas(seen, out);
            r.collect_subformulas(seen, out);
        }
        seen.insert(self);
        out.push(self.clone());
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self.children() {
            Some((l, r)) => 1 + l.size() + r.size(),
            None => 1,
        }
    }

    /// Renames variables; names without an entry are left unchanged.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Formula {
        match self {
            Formula::Var(v) => Formula::Var(map.get(v).cloned().unwrap_or_else(|| v.clone())),
            Formula::One => Formula::One,
            Formula::Bot => Formula::Bot,
            Formula::Fuse(l, r) => Formula::fuse(l.rename(map), r.rename(map)),
            Formula::Meet(l, r) => Formula::meet(l.rename(map), r.rename(map)),
            Formula::Join(l, r) => Formula::join(l.rename(map), r.rename(map)),
            Formula::Impl(l, r) => Formula::imp(l.rename(map), r.rename(map)),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Impl(..) => 1,
            Formula::Join(..) => 2,
            Formula::Meet(..) => 3,
            Formula::Fuse(..) => 4,
            _ => 5,
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let p = self.precedence();
        if p < min {
            f.write_str("(")?;
        }
        match self {
            Formula::Var(v) => f.write_str(v)?,
            Formula::One => f.write_str("1")?,
            Formula::Bot => f.write_str("0")?,
            Formula::Impl(l, r) => {
                l.write_prec(f, p + 1)?;
                f.write_str(" -> ")?;
                r.write_prec(f, p)?;
            }
            _ => {
                let (l, r) = self.children().unwrap();
                let op = match self {
                    Formula::Fuse(..) => "*",
                    Formula::Meet(..) => " & ",
                    _ => " | ",
                };
                l.write_prec(f, p)?;
                f.write_str(op)?;
                r.write_prec(f, p + 1)?;
            }
        }
        if p < min {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Formula {
        Formula::var(s)
    }

    #[test]
    fn subformulas_of_prelinearity() {
        let phi = Formula::join(Formula::imp(v("x"), v("y")), Formula::imp(v("y"), v("x")));
        assert_eq!(phi.subformulas().len(), 5);
        assert_eq!(v("x").subformulas(), vec![v("x")]);
    }

    #[test]
    fn printing_uses_minimal_parentheses() {
        let phi = Formula::join(Formula::imp(v("x"), v("y")), Formula::imp(v("y"), v("x")));
        assert_eq!(phi.to_string(), "(x -> y) | (y -> x)");
        let right = Formula::imp(v("a"), Formula::imp(v("b"), v("c")));
        assert_eq!(right.to_string(), "a -> b -> c");
        let left = Formula::imp(Formula::imp(v("a"), v("b")), v("c"));
        assert_eq!(left.to_string(), "(a -> b) -> c");
        let fuse = Formula::fuse(v("a"), Formula::fuse(v("b"), v("c")));
        assert_eq!(fuse.to_string(), "a*(b*c)");
        assert_eq!(Formula::meet(Formula::Bot, Formula::One).to_string(), "0 & 1");
    }

    #[test]
    fn power_and_folds() {
        assert_eq!(Formula::power(v("x"), 3).to_string(), "x*x*x");
        assert_eq!(Formula::meet_all(Vec::new()), Formula::One);
        assert_eq!(Formula::join_all(Vec::new()), Formula::Bot);
    }
}
