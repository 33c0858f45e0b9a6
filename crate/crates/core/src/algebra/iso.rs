//! Canonical labeling by permutation search restricted to iso-invariant
//! element classes.
//!
//! Elements are first colored by order-theoretic invariants (height first,
//! so every admissible labeling is a linear extension of the order), the
//! coloring is refined against the operation tables, and the
//! lexicographically least table encoding is taken over all labelings that
//! list color classes in increasing order.

use std::collections::BTreeMap;

use super::{FiniteRl, Lattice};

fn rank<K: Ord + Clone>(sigs: &[K]) -> Vec<usize> {
    let mut distinct: Vec<K> = sigs.to_vec();
    distinct.sort();
    distinct.dedup();
    let ids: BTreeMap<K, usize> = distinct.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    sigs.iter().map(|k| ids[k]).collect()
}

fn refine(colors: Vec<usize>, n: usize, ops: &[&[usize]]) -> Vec<usize> {
    let mut colors = colors;
    loop {
        let sigs: Vec<(usize, Vec<Vec<usize>>)> = (0..n)
            .map(|x| {
                let mut row: Vec<Vec<usize>> = (0..n)
                    .map(|y| {
                        let mut v = vec![colors[y]];
                        v.extend(ops.iter().map(|t| colors[t[x * n + y]]));
                        v
                    })
                    .collect();
                row.sort();
                (colors[x], row)
            })
            .collect();
        let next = rank(&sigs);
        let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&colors) {
            return next;
        }
        colors = next;
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Returns the labeling (new index → old element) with the least encoding.
fn best_labeling(colors: &[usize], encode: impl Fn(&[usize]) -> Vec<u8>) -> (Vec<usize>, Vec<u8>) {
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (x, &c) in colors.iter().enumerate() {
        classes.entry(c).or_default().push(x);
    }
    let block_perms: Vec<Vec<Vec<usize>>> = classes.values().map(|b| permutations(b)).collect();
    let mut best: Option<(Vec<usize>, Vec<u8>)> = None;
    let mut idx = vec![0usize; block_perms.len()];
    loop {
        let perm: Vec<usize> =
            idx.iter().zip(&block_perms).flat_map(|(&i, ps)| ps[i].iter().copied()).collect();
        let code = encode(&perm);
        if best.as_ref().is_none_or(|(_, b)| code < *b) {
            best = Some((perm, code));
        }
        // odometer over the blocks' permutation lists
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return best.expect("at least one labeling");
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < block_perms[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn encode_tables(n: usize, tables: &[&[usize]], perm: &[usize]) -> Vec<u8> {
    let mut inv = vec![0usize; n];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    let mut code = Vec::with_capacity(1 + tables.len() * n * n);
    code.push(n as u8);
    for t in tables {
        for a in 0..n {
            for b in 0..n {
                code.push(inv[t[perm[a] * n + perm[b]]] as u8);
            }
        }
    }
    code
}

fn order_colors(l: &Lattice, extra: impl Fn(usize) -> usize) -> Vec<usize> {
    let n = l.size();
    let h = l.heights();
    let keys: Vec<(usize, usize, usize, usize)> = (0..n)
        .map(|x| {
            let below = (0..n).filter(|&y| l.le(y, x)).count();
            let above = (0..n).filter(|&y| l.le(x, y)).count();
            (h[x], below, above, extra(x))
        })
        .collect();
    rank(&keys)
}

/// Canonical labeling of an algebra: new element `i` is old element `perm[i]`.
pub fn canonical_labeling(a: &FiniteRl) -> Vec<usize> {
    let n = a.size();
    let l = a.lattice();
    let colors = order_colors(l, |x| a.is_idempotent(x) as usize);
    let tables: [&[usize]; 2] = [a.join_table(), a.mult_table()];
    let colors = refine(colors, n, &tables);
    best_labeling(&colors, |p| encode_tables(n, &tables, p)).0
}

/// Byte string equal for two algebras exactly when they are isomorphic
/// (the potency bound `k` is not part of the structure).
pub fn canonical_form(a: &FiniteRl) -> Vec<u8> {
    let perm = canonical_labeling(a);
    encode_tables(a.size(), &[a.join_table(), a.mult_table()], &perm)
}

/// Canonical form of a lattice alone, with its canonical labeling.
pub fn lattice_canonical_form(l: &Lattice) -> (Vec<u8>, Vec<usize>) {
    let n = l.size();
    let colors = order_colors(l, |_| 0);
    let tables: [&[usize]; 1] = [l.join_table()];
    let colors = refine(colors, n, &tables);
    let (perm, code) = best_labeling(&colors, |p| encode_tables(n, &tables, p));
    (code, perm)
}

pub fn is_isomorphic(a: &FiniteRl, b: &FiniteRl) -> bool {
    a.size() == b.size() && canonical_form(a) == canonical_form(b)
}
