//! Countermodel search specialised to `Γ^k → Δ`.
//!
//! Variables are assigned in the order `X0, X1, ...`. After each step the
//! conjuncts of `Γ` and disjuncts of `Δ` whose variables are all assigned
//! give `v(Γ) ≤ u` and `v(Δ) ≥ l`; when `u^k ≤ l` no completion refutes
//! the formula and the branch is skipped. The first counterexample met is
//! the lexicographically least one.

use super::CanonicalFormula;
use crate::algebra::FiniteRl;
use crate::formula::Valuation;

#[derive(Clone, Copy)]
enum Term {
    Bot,
    One,
    Mult(usize, usize),
    Join(usize, usize),
    Imp(usize, usize),
    Meet(usize, usize),
}

impl Term {
    fn vars(self) -> Vec<usize> {
        match self {
            Term::Bot | Term::One => vec![],
            Term::Mult(p, q) | Term::Join(p, q) | Term::Imp(p, q) | Term::Meet(p, q) => vec![p, q],
        }
    }

    fn value(self, b: &FiniteRl, v: &[usize]) -> usize {
        match self {
            Term::Bot => b.bottom(),
            Term::One => b.one(),
            Term::Mult(p, q) => b.mult(v[p], v[q]),
            Term::Join(p, q) => b.join(v[p], v[q]),
            Term::Imp(p, q) => b.imp(v[p], v[q]),
            Term::Meet(p, q) => b.meet(v[p], v[q]),
        }
    }
}

struct Plan {
    n: usize,
    /// `(r, t)` standing for `X_r ↔ t`, grouped by largest variable.
    conjuncts: Vec<Vec<(usize, Term)>>,
    /// `(p, q)` standing for `X_p → X_q`, grouped by largest variable.
    disjuncts: Vec<Vec<(usize, usize)>>,
}

impl Plan {
    fn new(c: &CanonicalFormula) -> Plan {
        let a = &c.algebra;
        let n = a.size();
        let pairs = || (0..n).flat_map(|p| (0..n).map(move |q| (p, q)));
        let mut all = vec![(a.bottom(), Term::Bot), (a.one(), Term::One)];
        all.extend(pairs().map(|(p, q)| (a.mult(p, q), Term::Mult(p, q))));
        all.extend(pairs().map(|(p, q)| (a.join(p, q), Term::Join(p, q))));
        all.extend(c.dspec.dto.iter().map(|&(p, q)| (a.imp(p, q), Term::Imp(p, q))));
        all.extend(c.dspec.dwedge.iter().map(|&(p, q)| (a.meet(p, q), Term::Meet(p, q))));
        let mut conjuncts = vec![Vec::new(); n];
        for (r, t) in all {
            let level = t.vars().into_iter().fold(r, usize::max);
            conjuncts[level].push((r, t));
        }
        let mut disjuncts = vec![Vec::new(); n];
        for (p, q) in pairs().filter(|&(p, q)| !a.le(p, q)) {
            disjuncts[p.max(q)].push((p, q));
        }
        Plan { n, conjuncts, disjuncts }
    }
}

fn iff(b: &FiniteRl, x: usize, y: usize) -> usize {
    b.meet(b.imp(x, y), b.imp(y, x))
}

impl CanonicalFormula {
    /// The lexicographically least valuation refuting `γ` in `b`, if any.
    /// Agrees with a plain search over all valuations.
    pub fn counterexample_in(&self, b: &FiniteRl) -> Option<Valuation> {
        let plan = Plan::new(self);
        let k = self.algebra.k();
        let n = plan.n;
        let m = b.size();
        let mut v = vec![0usize; n];
        // upper[j], lower[j]: bounds after assigning variables 0..j
        let mut upper = vec![b.one(); n + 1];
        let mut lower = vec![b.bottom(); n + 1];
        let mut j = 0;
        loop {
            let mut u = upper[j];
            for &(r, t) in &plan.conjuncts[j] {
                u = b.meet(u, iff(b, v[r], t.value(b, &v)));
            }
            let mut l = lower[j];
            for &(p, q) in &plan.disjuncts[j] {
                l = b.join(l, b.imp(v[p], v[q]));
            }
            let settled = b.le(b.power(u, k), l);
            if !settled && j + 1 == n {
                return Some(self.algebra.elements().map(|x| (super::var_name(x), v[x])).collect());
            }
            if !settled {
                upper[j + 1] = u;
                lower[j + 1] = l;
                j += 1;
                v[j] = 0;
                continue;
            }
            // advance to the next branch
            loop {
                v[j] += 1;
                if v[j] < m {
                    break;
                }
                if j == 0 {
                    return None;
                }
                j -= 1;
            }
        }
    }

    pub fn holds_in(&self, b: &FiniteRl) -> bool {
        self.counterexample_in(b).is_none()
    }
}

#[cfg(test)]
mod tests {
    use crate::algebra::{boolean2, diamond, godel_chain, lukasiewicz3};
    use crate::canonical::{build_canonical, DSpec};
    use crate::enumeration::{enumerate_kcirl, Filter};
    use crate::formula::find_counterexample;

    #[test]
    fn agrees_with_plain_search() {
        let hosts = enumerate_kcirl(2, 4, &Filter::All).entries;
        for a in enumerate_kcirl(2, 4, &Filter::Si).entries {
            for d in [DSpec::stable(), DSpec::splitting(a.size()), DSpec::random(a.size(), 3)] {
                let g = build_canonical(&a, &d).unwrap();
                for b in &hosts {
                    assert_eq!(g.counterexample_in(b), find_counterexample(b, &g.gamma));
                }
            }
        }
    }

    #[test]
    fn boolean_refutes_itself() {
        let g = build_canonical(&boolean2(), &DSpec::stable()).unwrap();
        assert!(!g.holds_in(&boolean2()));
        assert!(!g.holds_in(&godel_chain(3)));
        assert!(!g.holds_in(&diamond()));
        let l3 = build_canonical(&lukasiewicz3(), &DSpec::stable()).unwrap();
        assert!(l3.holds_in(&boolean2()));
    }
}
