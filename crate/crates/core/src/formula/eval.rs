//! Evaluation of formulas in finite algebras.
//!
//! Exhaustive searches compile formulas into a shared DAG (structurally
//! equal subtrees become one node) and walk the valuation space in
//! lexicographic order, re-evaluating only nodes that depend on the
//! variables that changed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::Formula;
use crate::algebra::FiniteRl;
use crate::error::{Error, Result};

/// An assignment of algebra elements to variable names.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation(pub BTreeMap<String, usize>);

impl Valuation {
    pub fn get(&self, var: &str) -> Option<usize> {
        self.0.get(var).copied()
    }

    pub fn insert(&mut self, var: impl Into<String>, value: usize) {
        self.0.insert(var.into(), value);
    }

    /// Composes with an element map, e.g. an embedding or a quotient map.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Valuation {
        Valuation(self.0.iter().map(|(k, &v)| (k.clone(), f(v))).collect())
    }
}

impl FromIterator<(String, usize)> for Valuation {
    fn from_iter<I: IntoIterator<Item = (String, usize)>>(iter: I) -> Self {
        Valuation(iter.into_iter().collect())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{k}:{v}")?;
        }
        Ok(())
    }
}

/// Evaluates `phi` under `v` by structural recursion.
pub fn eval(phi: &Formula, a: &FiniteRl, v: &Valuation) -> Result<usize> {
    Ok(match phi {
        Formula::Var(x) => v.get(x).ok_or_else(|| Error::UnboundVariable(x.clone()))?,
        Formula::One => a.one(),
        Formula::Bot => a.bottom(),
        Formula::Fuse(l, r) => a.mult(eval(l, a, v)?, eval(r, a, v)?),
        Formula::Meet(l, r) => a.meet(eval(l, a, v)?, eval(r, a, v)?),
        Formula::Join(l, r) => a.join(eval(l, a, v)?, eval(r, a, v)?),
        Formula::Impl(l, r) => a.imp(eval(l, a, v)?, eval(r, a, v)?),
    })
}

/// `{v(ψ) | ψ ∈ Sub(φ)}`, sorted.
pub fn sub_values(phi: &Formula, a: &FiniteRl, v: &Valuation) -> Result<Vec<usize>> {
    let mut out = phi.subformulas().iter().map(|s| eval(s, a, v)).collect::<Result<Vec<_>>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    Fuse,
    Meet,
    Join,
    Impl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    Var(usize),
    One,
    Bot,
    Bin(Op, usize, usize),
}

/// Orders variable names with numeric suffixes compared as numbers, so
/// `X2` sorts before `X10`.
fn var_key(name: &str) -> (String, u64, String) {
    let split = name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (stem, digits) = name.split_at(split);
    (stem.to_owned(), digits.parse().unwrap_or(0), name.to_owned())
}

/// Several formulas compiled into one DAG over a common variable list.
#[derive(Clone, Debug)]
pub struct Program {
    nodes: Vec<Node>,
    vars: Vec<String>,
    roots: Vec<usize>,
    /// `schedule[j]`: nodes depending on some variable with index `>= j`,
    /// in topological order.
    schedule: Vec<Vec<usize>>,
}

impl Program {
    pub fn compile(formulas: &[&Formula]) -> Program {
        let mut vars: Vec<String> = formulas.iter().flat_map(|f| f.vars()).collect();
        vars.sort_by_key(|v| var_key(v));
        vars.dedup();
        let var_idx: HashMap<&str, usize> =
            vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();

        let mut nodes = Vec::new();
        let mut memo: HashMap<Node, usize> = HashMap::new();
        let mut by_formula: HashMap<*const Formula, usize> = HashMap::new();
        let roots = formulas
            .iter()
            .map(|f| intern(f, &var_idx, &mut nodes, &mut memo, &mut by_formula))
            .collect();

        let mut max_var: Vec<Option<usize>> = Vec::with_capacity(nodes.len());
        for node in &nodes {
            let mv = match *node {
                Node::Var(i) => Some(i),
                Node::One | Node::Bot => None,
                Node::Bin(_, l, r) => max_var[l].max(max_var[r]),
            };
            max_var.push(mv);
        }
        let schedule = (0..vars.len())
            .map(|j| (0..nodes.len()).filter(|&i| max_var[i].is_some_and(|m| m >= j)).collect())
            .collect();
        Program { nodes, vars, roots, schedule }
    }

    /// Variable names in valuation order.
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    fn eval_node(&self, a: &FiniteRl, vals: &[usize], assign: &[usize], i: usize) -> usize {
        match self.nodes[i] {
            Node::Var(v) => assign[v],
            Node::One => a.one(),
            Node::Bot => a.bottom(),
            Node::Bin(op, l, r) => {
                let (x, y) = (vals[l], vals[r]);
                match op {
                    Op::Fuse => a.mult(x, y),
                    Op::Meet => a.meet(x, y),
                    Op::Join => a.join(x, y),
                    Op::Impl => a.imp(x, y),
                }
            }
        }
    }

    /// Walks all `|A|^vars` assignments in lexicographic order, calling
    /// `visit(assignment, root_values)` until it returns `false`. Returns
    /// the assignment at which the walk stopped, if any.
    pub fn search(
        &self,
        a: &FiniteRl,
        mut visit: impl FnMut(&[usize], &[usize]) -> bool,
    ) -> Option<Vec<usize>> {
        let n = a.size();
        let m = self.vars.len();
        let mut assign = vec![0usize; m];
        let mut vals = vec![0usize; self.nodes.len()];
        for i in 0..self.nodes.len() {
            vals[i] = self.eval_node(a, &vals, &assign, i);
        }
        let mut roots = vec![0usize; self.roots.len()];
        loop {
            for (slot, &r) in roots.iter_mut().zip(&self.roots) {
                *slot = vals[r];
            }
            if !visit(&assign, &roots) {
                return Some(assign);
            }
            // odometer: the last variable moves fastest
            let mut j = m;
            loop {
                if j == 0 {
                    return None;
                }
                j -= 1;
                assign[j] += 1;
                if assign[j] < n {
                    break;
                }
                assign[j] = 0;
            }
            for &i in &self.schedule[j] {
                vals[i] = self.eval_node(a, &vals, &assign, i);
            }
        }
    }

    pub fn valuation(&self, assign: &[usize]) -> Valuation {
        self.vars.iter().cloned().zip(assign.iter().copied()).collect()
    }
}

fn intern(
    f: &Formula,
    var_idx: &HashMap<&str, usize>,
    nodes: &mut Vec<Node>,
    memo: &mut HashMap<Node, usize>,
    by_formula: &mut HashMap<*const Formula, usize>,
) -> usize {
    if let Some(&i) = by_formula.get(&(f as *const Formula)) {
        return i;
    }
    let node = match f {
        Formula::Var(v) => Node::Var(var_idx[v.as_str()]),
        Formula::One => Node::One,
        Formula::Bot => Node::Bot,
        _ => {
            let (l, r) = f.children().unwrap();
            let op = match f {
                Formula::Fuse(..) => Op::Fuse,
                Formula::Meet(..) => Op::Meet,
                Formula::Join(..) => Op::Join,
                _ => Op::Impl,
            };
            let li = intern(l, var_idx, nodes, memo, by_formula);
            let ri = intern(r, var_idx, nodes, memo, by_formula);
            Node::Bin(op, li, ri)
        }
    };
    let idx = *memo.entry(node).or_insert_with(|| {
        nodes.push(node);
        nodes.len() - 1
    });
    by_formula.insert(f as *const Formula, idx);
    idx
}

/// The lexicographically least valuation refuting `phi`, if any.
pub fn find_counterexample(a: &FiniteRl, phi: &Formula) -> Option<Valuation> {
    let prog = Program::compile(&[phi]);
    let one = a.one();
    prog.search(a, |_, roots| roots[0] == one).map(|assign| prog.valuation(&assign))
}

pub fn holds(a: &FiniteRl, phi: &Formula) -> bool {
    find_counterexample(a, phi).is_none()
}
