//! Unpruned reference generators, usable up to about four elements.
//!
//! They share nothing with the pruned search beyond [`FiniteRl::validate`]:
//! orders are found by trying every relation, fusion tables by trying
//! every commutative table with the top as unit, and isomorphic copies are
//! rejected by trying every permutation.

use crate::algebra::{FiniteRl, Lattice};

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    heap(n, &mut p, &mut out);
    out
}

fn lattice_iso(a: &Lattice, b: &Lattice, perms: &[Vec<usize>]) -> bool {
    let n = a.size();
    n == b.size() && perms.iter().any(|p| (0..n).all(|x| (0..n).all(|y| a.le(x, y) == b.le(p[x], p[y]))))
}

fn algebra_iso(a: &FiniteRl, b: &FiniteRl, perms: &[Vec<usize>]) -> bool {
    let n = a.size();
    n == b.size()
        && perms.iter().any(|p| {
            (0..n).all(|x| {
                (0..n).all(|y| p[a.join(x, y)] == b.join(p[x], p[y]) && p[a.mult(x, y)] == b.mult(p[x], p[y]))
            })
        })
}

/// Lattices of exactly `n` elements up to isomorphism, found among all
/// `2^(n(n-1))` relations.
pub fn naive_lattices(n: usize) -> Vec<Lattice> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    let perms = all_permutations(n);
    let mut out: Vec<Lattice> = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut le = vec![false; n * n];
        for a in 0..n {
            le[a * n + a] = true;
        }
        for (i, &(a, b)) in pairs.iter().enumerate() {
            le[a * n + b] = mask >> i & 1 == 1;
        }
        let antisymmetric = (0..n).all(|a| (0..n).all(|b| a == b || !(le[a * n + b] && le[b * n + a])));
        let transitive = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| !(le[a * n + b] && le[b * n + c]) || le[a * n + c]))
        });
        if !antisymmetric || !transitive {
            continue;
        }
        if let Some(l) = Lattice::from_order(n, |a, b| le[a * n + b]) {
            if !out.iter().any(|m| lattice_iso(m, &l, &perms)) {
                out.push(l);
            }
        }
    }
    out
}

/// k-CIRL algebras of exactly `n` elements up to isomorphism: every
/// lattice from [`naive_lattices`] with every commutative fusion table
/// whose unit is the top.
pub fn naive_kcirl(k: u32, n: usize) -> Vec<FiniteRl> {
    let perms = all_permutations(n);
    let mut out: Vec<FiniteRl> = Vec::new();
    for l in naive_lattices(n) {
        let top = l.top();
        let cells: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).filter(|&(a, b)| a != top && b != top).collect();
        let total = n.pow(cells.len() as u32);
        for code in 0..total {
            let mut mult = vec![0; n * n];
            for x in 0..n {
                mult[top * n + x] = x;
                mult[x * n + top] = x;
            }
            let mut rest = code;
            for &(a, b) in &cells {
                let v = rest % n;
                rest /= n;
                mult[a * n + b] = v;
                mult[b * n + a] = v;
            }
            if let Ok(a) = FiniteRl::validate(n, k, top, l.join_table().to_vec(), mult) {
                if !out.iter().any(|b| algebra_iso(b, &a, &perms)) {
                    out.push(a);
                }
            }
        }
    }
    out
}
