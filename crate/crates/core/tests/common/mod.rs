//! Brute-force reference implementations used as oracles. They read only
//! the raw join and fusion tables.
#![allow(dead_code)]

use kcirl::canonical::DSpec;
use kcirl::formula::eval;
use kcirl::{FiniteRl, Formula, Valuation};

pub fn le(a: &FiniteRl, x: usize, y: usize) -> bool {
    a.join_table()[x * a.size() + y] == y
}

fn mult(a: &FiniteRl, x: usize, y: usize) -> usize {
    a.mult_table()[x * a.size() + y]
}

fn join(a: &FiniteRl, x: usize, y: usize) -> usize {
    a.join_table()[x * a.size() + y]
}

fn greatest(a: &FiniteRl, pred: impl Fn(usize) -> bool) -> Option<usize> {
    let cands: Vec<usize> = (0..a.size()).filter(|&z| pred(z)).collect();
    cands.iter().copied().find(|&z| cands.iter().all(|&w| le(a, w, z)))
}

pub fn meet(a: &FiniteRl, x: usize, y: usize) -> Option<usize> {
    greatest(a, |z| le(a, z, x) && le(a, z, y))
}

pub fn imp(a: &FiniteRl, x: usize, y: usize) -> Option<usize> {
    greatest(a, |c| le(a, mult(a, x, c), y))
}

/// Every law a k-CIRL algebra must satisfy, checked from the tables.
pub fn law_violations(a: &FiniteRl) -> Vec<String> {
    let n = a.size();
    let e = 0..n;
    let mut v = Vec::new();
    let one = a.one();
    for x in e.clone() {
        if join(a, x, x) != x {
            v.push(format!("join idempotent at {x}"));
        }
        if mult(a, one, x) != x {
            v.push(format!("unit at {x}"));
        }
        if !le(a, x, one) {
            v.push(format!("integrality at {x}"));
        }
        let mut p = x;
        for _ in 1..a.k() {
            p = mult(a, p, x);
        }
        if mult(a, p, x) != p {
            v.push(format!("{}-potency at {x}", a.k()));
        }
        for y in e.clone() {
            if join(a, x, y) != join(a, y, x) || mult(a, x, y) != mult(a, y, x) {
                v.push(format!("commutativity at {x},{y}"));
            }
            match (meet(a, x, y), imp(a, x, y)) {
                (Some(m), Some(i)) => {
                    if m != a.meet(x, y) {
                        v.push(format!("meet at {x},{y}"));
                    }
                    if i != a.imp(x, y) {
                        v.push(format!("residual at {x},{y}"));
                    }
                }
                _ => v.push(format!("no meet or residual at {x},{y}")),
            }
            for z in e.clone() {
                if join(a, join(a, x, y), z) != join(a, x, join(a, y, z)) {
                    v.push(format!("join associativity at {x},{y},{z}"));
                }
                if mult(a, mult(a, x, y), z) != mult(a, x, mult(a, y, z)) {
                    v.push(format!("fusion associativity at {x},{y},{z}"));
                }
                if mult(a, x, join(a, y, z)) != join(a, mult(a, x, y), mult(a, x, z)) {
                    v.push(format!("distributivity at {x},{y},{z}"));
                }
                if le(a, mult(a, x, z), y) != le(a, z, a.imp(x, y)) {
                    v.push(format!("residuation at {x},{y},{z}"));
                }
            }
        }
    }
    v
}

pub fn is_linear(a: &FiniteRl) -> bool {
    (0..a.size()).all(|x| (0..a.size()).all(|y| le(a, x, y) || le(a, y, x)))
}

/// Deductive filters: up-sets containing 1 closed under fusion, found
/// among all subsets.
pub fn filters(a: &FiniteRl) -> Vec<Vec<usize>> {
    let n = a.size();
    (0u32..1 << n)
        .map(|m| (0..n).filter(|&x| m >> x & 1 == 1).collect::<Vec<_>>())
        .filter(|f| {
            f.contains(&a.one())
                && f.iter().all(|&x| (0..n).all(|y| !le(a, x, y) || f.contains(&y)))
                && f.iter().all(|&x| f.iter().all(|&y| f.contains(&mult(a, x, y))))
        })
        .collect()
}

/// Exactly one minimal filter other than `{1}`.
pub fn is_si(a: &FiniteRl) -> bool {
    let nontrivial: Vec<Vec<usize>> = filters(a).into_iter().filter(|f| f.len() > 1).collect();
    let minimal = nontrivial
        .iter()
        .filter(|f| !nontrivial.iter().any(|g| g.len() < f.len() && g.iter().all(|x| f.contains(x))))
        .count();
    minimal == 1
}

/// Calls `visit` on every map `0..n -> 0..m`.
pub fn for_each_map(n: usize, m: usize, mut visit: impl FnMut(&[usize])) {
    if m == 0 && n > 0 {
        return;
    }
    let mut h = vec![0usize; n];
    loop {
        visit(&h);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            h[i] += 1;
            if h[i] < m {
                break;
            }
            h[i] = 0;
        }
    }
}

/// Injective maps preserving `·`, `∨` and `1`; with `d`, also `⊥`, meets
/// on `D∧` and residuals on `D→`.
pub fn embeddings(a: &FiniteRl, b: &FiniteRl, d: Option<&DSpec>) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = a.size();
    for_each_map(n, b.size(), |h| {
        let injective = (0..n).all(|x| (0..x).all(|y| h[x] != h[y]));
        let ok = injective
            && h[a.one()] == b.one()
            && (0..n).all(|x| {
                (0..n).all(|y| h[mult(a, x, y)] == mult(b, h[x], h[y]) && h[join(a, x, y)] == join(b, h[x], h[y]))
            })
            && d.is_none_or(|d| {
                h[a.bottom()] == b.bottom()
                    && d.dwedge.iter().all(|&(x, y)| h[a.meet(x, y)] == b.meet(h[x], h[y]))
                    && d.dto.iter().all(|&(x, y)| h[a.imp(x, y)] == b.imp(h[x], h[y]))
            });
        if ok {
            out.push(h.to_vec());
        }
    });
    out
}

/// Every valuation of `vars` into an algebra of `n` elements.
pub fn valuations(vars: &[String], n: usize) -> Vec<Valuation> {
    let mut out = Vec::new();
    for_each_map(vars.len(), n, |h| out.push(vars.iter().cloned().zip(h.iter().copied()).collect()));
    out
}

/// Validity by evaluating the syntax tree under every valuation.
pub fn holds(a: &FiniteRl, phi: &Formula) -> bool {
    let vars: Vec<String> = phi.vars().into_iter().collect();
    valuations(&vars, a.size()).iter().all(|v| eval(phi, a, v).unwrap() == a.one())
}
