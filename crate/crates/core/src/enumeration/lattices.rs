use std::collections::BTreeMap;

use crate::algebra::{lattice_canonical_form, Lattice};

/// Calls `visit` with the strict down-sets of every naturally labeled poset
/// on `m` points: point `j` may only lie above points `< j`, and its strict
/// down-set is an order ideal of the points before it.
fn natural_posets(m: usize, visit: &mut dyn FnMut(&[Vec<bool>])) {
    fn go(m: usize, below: &mut Vec<Vec<bool>>, visit: &mut dyn FnMut(&[Vec<bool>])) {
        let j = below.len();
        if j == m {
            visit(below);
            return;
        }
        for mask in 0u32..(1 << j) {
            let set: Vec<bool> = (0..j).map(|i| mask >> i & 1 == 1).collect();
            let is_ideal = (0..j).all(|i| !set[i] || (0..i).all(|l| !below[i][l] || set[l]));
            if is_ideal {
                let mut row = set;
                row.resize(m, false);
                below.push(row);
                go(m, below, visit);
                below.pop();
            }
        }
    }
    go(m, &mut Vec::with_capacity(m), visit);
}

/// All lattices with exactly `n` elements up to isomorphism, canonically
/// labeled (bottom `0`, top `n-1`, labels extend the order), sorted by
/// canonical form.
pub fn lattices_of_size(n: usize) -> Vec<Lattice> {
    if n <= 2 {
        return if n == 0 { Vec::new() } else { vec![Lattice::chain(n)] };
    }
    let m = n - 2;
    let mut found: BTreeMap<Vec<u8>, Lattice> = BTreeMap::new();
    natural_posets(m, &mut |below| {
        // inner point j becomes element j + 1
        let le = |a: usize, b: usize| {
            a == b || a == 0 || b == n - 1 || (a > 0 && b > 0 && a < n - 1 && b < n - 1 && below[b - 1][a - 1])
        };
        if let Some(l) = Lattice::from_order(n, le) {
            let (code, perm) = lattice_canonical_form(&l);
            found.entry(code).or_insert_with(|| l.permuted(&perm));
        }
    });
    found.into_values().collect()
}

/// All lattices with at most `n` elements, by size then canonical form.
pub fn enumerate_lattices(n: usize) -> Vec<Lattice> {
    (1..=n).flat_map(lattices_of_size).collect()
}

/// The lattice `A_i`: a chain of `i` elements below the bottom of a
/// four-element diamond, with a new top above the diamond. Elements
/// `0..i` form the chain, then come the diamond's bottom `i`, its
/// incomparable pair `i+1`, `i+2`, their join `i+3`, and the top `i+4`.
pub fn lattice_family_ai(i: usize) -> Lattice {
    let n = i + 5;
    let (c, d) = (i + 1, i + 2);
    Lattice::from_order(n, |a, b| a == b || a < b && !(a == c && b == d))
        .expect("A_i is a lattice")
}
