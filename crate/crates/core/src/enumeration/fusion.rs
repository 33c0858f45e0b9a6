//! Backtracking over fusion tables on a fixed, naturally labeled lattice.
//!
//! With bottom `0` and top `n-1`, the cells `0·x = 0` and `(n-1)·x = x` are
//! forced, so only `a·b` with `1 ≤ b ≤ a ≤ n-2` is searched. Cells are
//! filled with `a` descending, then `b` descending; in that order the
//! products of the upper covers of `a` and `b` are already known and bound
//! the candidates from above.

use std::collections::BTreeMap;

use crate::algebra::{canonical_form, FiniteRl, Lattice};

const UNKNOWN: usize = usize::MAX;

struct Search<'l> {
    l: &'l Lattice,
    n: usize,
    k: u32,
    mult: Vec<usize>,
    cells: Vec<(usize, usize)>,
    covers: Vec<Vec<usize>>,
    out: BTreeMap<Vec<u8>, FiniteRl>,
}

impl Search<'_> {
    #[inline]
    fn m(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.n + b]
    }

    fn set(&mut self, a: usize, b: usize, v: usize) {
        let n = self.n;
        self.mult[a * n + b] = v;
        self.mult[b * n + a] = v;
    }

    fn candidates(&self, a: usize, b: usize) -> Vec<usize> {
        let l = self.l;
        let mut bounds = vec![l.meet(a, b)];
        bounds.extend(self.covers[a].iter().map(|&x| self.m(x, b)));
        bounds.extend(self.covers[b].iter().map(|&y| self.m(a, y)));
        debug_assert!(bounds.iter().all(|&x| x != UNKNOWN));
        (0..self.n).filter(|&c| bounds.iter().all(|&u| l.le(c, u))).collect()
    }

    /// Distributivity, associativity and potency on the known cells.
    fn partial_ok(&self) -> bool {
        let (n, l) = (self.n, self.l);
        let inner = 1..n - 1;
        for x in inner.clone() {
            for y in inner.clone() {
                for z in y + 1..n - 1 {
                    let (lhs, p, q) = (self.m(x, l.join(y, z)), self.m(x, y), self.m(x, z));
                    if lhs != UNKNOWN && p != UNKNOWN && q != UNKNOWN && lhs != l.join(p, q) {
                        return false;
                    }
                }
            }
        }
        for x in inner.clone() {
            for y in inner.clone() {
                let xy = self.m(x, y);
                if xy == UNKNOWN {
                    continue;
                }
                for z in inner.clone() {
                    let yz = self.m(y, z);
                    if yz == UNKNOWN {
                        continue;
                    }
                    let (lhs, rhs) = (self.m(xy, z), self.m(x, yz));
                    if lhs != UNKNOWN && rhs != UNKNOWN && lhs != rhs {
                        return false;
                    }
                }
            }
        }
        for x in inner {
            let mut p = x;
            let mut known = true;
            for _ in 1..self.k {
                p = self.m(p, x);
                if p == UNKNOWN {
                    known = false;
                    break;
                }
            }
            if known {
                let next = self.m(p, x);
                if next != UNKNOWN && next != p {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, i: usize) {
        if i == self.cells.len() {
            let join = self.l.join_table().to_vec();
            if let Ok(a) = FiniteRl::validate(self.n, self.k, self.n - 1, join, self.mult.clone()) {
                self.out.entry(canonical_form(&a)).or_insert(a);
            }
            return;
        }
        let (a, b) = self.cells[i];
        for c in self.candidates(a, b) {
            self.set(a, b, c);
            if self.partial_ok() {
                self.run(i + 1);
            }
        }
        self.set(a, b, UNKNOWN);
    }
}

/// Every k-CIRL on `l` up to isomorphism, keyed by canonical form. The
/// lattice must be naturally labeled with bottom `0` and top `n-1`.
pub fn fusions_on(l: &Lattice, k: u32) -> BTreeMap<Vec<u8>, FiniteRl> {
    let n = l.size();
    assert!(l.bottom() == 0 && l.top() == n - 1, "lattice must be naturally labeled");
    if n == 1 {
        let a = FiniteRl::validate(1, k, 0, vec![0], vec![0]).expect("trivial algebra");
        return BTreeMap::from([(canonical_form(&a), a)]);
    }
    let mut mult = vec![UNKNOWN; n * n];
    for x in 0..n {
        mult[x] = 0;
        mult[x * n] = 0;
        mult[(n - 1) * n + x] = x;
        mult[x * n + n - 1] = x;
    }
    let cells = (1..n - 1).rev().flat_map(|a| (1..=a).rev().map(move |b| (a, b))).collect();
    let covers = (0..n).map(|x| l.upper_covers(x)).collect();
    let mut s = Search { l, n, k, mult, cells, covers, out: BTreeMap::new() };
    s.run(0);
    s.out
}
